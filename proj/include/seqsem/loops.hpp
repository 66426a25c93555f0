#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seqsem/structure.hpp"

namespace seqsem {

enum class LoopKind { Hairpin, Helix, Bulge, Interior, Multi, Exterior };

constexpr std::string_view to_string(LoopKind k) noexcept {
    switch (k) {
        case LoopKind::Hairpin: return "hairpin";
        case LoopKind::Helix: return "helix";
        case LoopKind::Bulge: return "bulge";
        case LoopKind::Interior: return "interior";
        case LoopKind::Multi: return "multi";
        case LoopKind::Exterior: return "exterior";
    }
    return "?";
}

/// Run of unpaired positions [first, last]; empty when last == first - 1.
struct Interval {
    int first = 0;
    int last = -1;

    int size() const noexcept { return last - first + 1; }
    bool empty() const noexcept { return size() == 0; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// One face of the structure diagram.
///
/// A loop closed by (i,j) with branches (p1,q1)..(pk,qk) has the k+1 intervals
/// [i+1,p1-1], [q1+1,p2-1], ..., [qk+1,j-1]; the exterior loop uses 1 and n
/// as outer bounds instead. A hairpin with 3 or 4 unpaired bases is treated as
/// a "tetra-loop" whose energy reads the whole loop sequence.
struct Loop {
    LoopKind kind = LoopKind::Exterior;
    std::optional<Arc> closing;
    std::vector<Arc> branches;
    std::vector<Interval> intervals;
    int unpaired = 0;

    friend bool operator==(const Loop&, const Loop&) = default;
};

/// All loops of a structure in top-down order: the exterior loop first and
/// every loop after the loop holding its closing arc as a branch.
class LoopDecomposition {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    LoopDecomposition() = default;

    int size() const noexcept { return n_; }
    std::span<const Loop> loops() const noexcept { return loops_; }
    const Loop& loop(std::size_t idx) const { return loops_[idx]; }
    const Loop& exterior() const { return loops_.front(); }

    /// Loop in which `a` is the closing (maximal) arc.
    std::size_t closing_loop(Arc a) const { return lookup(closing_by_left_, a); }
    /// Loop holding `a` as a branch (the exterior loop for outermost arcs).
    std::size_t parent_loop(Arc a) const { return lookup(parent_by_left_, a); }

    friend LoopDecomposition decompose(const SecondaryStructure& s);

private:
    std::size_t lookup(const std::vector<std::size_t>& table, Arc a) const {
        if (a.i < 1 || a.i > n_ || right_[static_cast<std::size_t>(a.i)] != a.j) return npos;
        return table[static_cast<std::size_t>(a.i)];
    }

    int n_ = 0;
    std::vector<Loop> loops_;
    std::vector<int> right_;
    std::vector<std::size_t> closing_by_left_;
    std::vector<std::size_t> parent_by_left_;
};

inline LoopDecomposition decompose(const SecondaryStructure& s) {
    LoopDecomposition d;
    const int n = s.size();
    d.n_ = n;
    d.right_.assign(static_cast<std::size_t>(n) + 1, 0);
    d.closing_by_left_.assign(static_cast<std::size_t>(n) + 1, LoopDecomposition::npos);
    d.parent_by_left_.assign(static_cast<std::size_t>(n) + 1, LoopDecomposition::npos);
    for (const Arc& a : s.arcs()) d.right_[static_cast<std::size_t>(a.i)] = a.j;

    // Builds the loop spanning (lo, hi) exclusive of its bounds; branches are
    // the outermost arcs strictly inside.
    auto build = [&](std::optional<Arc> closing, int lo, int hi) {
        Loop L;
        L.closing = closing;
        int start = lo;
        int pos = lo;
        while (pos <= hi) {
            const int q = s.partner(pos);
            if (q > pos) {
                L.branches.push_back({pos, q});
                L.intervals.push_back({start, pos - 1});
                start = q + 1;
                pos = q + 1;
            } else {
                ++pos;
            }
        }
        L.intervals.push_back({start, hi});
        for (const Interval& iv : L.intervals) L.unpaired += iv.size();
        if (!closing) {
            L.kind = LoopKind::Exterior;
        } else if (L.branches.empty()) {
            L.kind = LoopKind::Hairpin;
        } else if (L.branches.size() == 1) {
            const int empties = (L.intervals[0].empty() ? 1 : 0) + (L.intervals[1].empty() ? 1 : 0);
            L.kind = empties == 2 ? LoopKind::Helix : empties == 1 ? LoopKind::Bulge : LoopKind::Interior;
        } else {
            L.kind = LoopKind::Multi;
        }
        return L;
    };

    std::vector<std::optional<Arc>> stack{std::nullopt};
    while (!stack.empty()) {
        const auto closing = stack.back();
        stack.pop_back();
        const std::size_t idx = d.loops_.size();
        if (closing) {
            d.loops_.push_back(build(closing, closing->i + 1, closing->j - 1));
            d.closing_by_left_[static_cast<std::size_t>(closing->i)] = idx;
        } else {
            d.loops_.push_back(build(std::nullopt, 1, n));
        }
        const auto& branches = d.loops_.back().branches;
        for (const Arc& b : branches) d.parent_by_left_[static_cast<std::size_t>(b.i)] = idx;
        for (auto it = branches.rbegin(); it != branches.rend(); ++it) stack.push_back(*it);
    }
    return d;
}

}  // namespace seqsem
