#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "seqsem/energy_params.hpp"
#include "seqsem/loops.hpp"
#include "seqsem/nucleotide.hpp"

namespace seqsem {

namespace detail {

inline int terminal_penalty(const EnergyParams& p, PairType t) noexcept {
    return (t == PairType::CG || t == PairType::GC) ? 0 : p.terminal_au;
}

}  // namespace detail

/// Hairpin closed by (i,j), 1-based. Reads the closing pair and both
/// terminal mismatches; with 3 or 4 unpaired bases the whole loop sequence
/// also selects a special-loop bonus.
inline Energy hairpin_energy(const EnergyParams& p, const Sequence& seq, int i, int j) {
    const Nucleotide a = at(seq, i), b = at(seq, j);
    const PairType t = pair_type(a, b);
    if (t == PairType::Inadmissible) return Energy::infinite();
    const int k = j - i - 1;
    int e = p.hairpin_initiation(k) +
            p.mismatch_hairpin[static_cast<std::size_t>(index(t))][static_cast<std::size_t>(index(at(seq, i + 1)))]
                              [static_cast<std::size_t>(index(at(seq, j - 1)))];
    if (k <= 4) {
        unsigned code = 0;
        for (int pos = i; pos <= j; ++pos) code = code * 4 + static_cast<unsigned>(index(at(seq, pos)));
        e += p.special_hairpin[static_cast<std::size_t>(k - 3)][code];
    }
    return Energy::from_dcal(e);
}

/// Loop closed by (i,j) with the single branch (r,s): a helix (stack), bulge
/// or interior loop depending on the unpaired counts on each side.
inline Energy two_pair_loop_energy(const EnergyParams& p, const Sequence& seq, int i, int j, int r, int s) {
    const PairType outer = pair_type(at(seq, i), at(seq, j));
    const PairType inner = pair_type(at(seq, r), at(seq, s));
    if (outer == PairType::Inadmissible || inner == PairType::Inadmissible) return Energy::infinite();
    const auto o = static_cast<std::size_t>(index(outer));
    const int left = r - i - 1;
    const int right = j - s - 1;
    if (left == 0 && right == 0) return Energy::from_dcal(p.stack[o][static_cast<std::size_t>(index(inner))]);
    if (left == 0 || right == 0) {
        const int k = left + right;
        const int extra = k == 1 ? p.stack[o][static_cast<std::size_t>(index(inner))]
                                 : detail::terminal_penalty(p, outer) + detail::terminal_penalty(p, inner);
        return Energy::from_dcal(p.bulge_initiation(k) + extra);
    }
    // Inner pair seen from inside the loop: (s, r) with mismatches s+1, r-1.
    const auto in = static_cast<std::size_t>(index(pair_type(at(seq, s), at(seq, r))));
    const int asym = std::min(p.interior_asymmetry_max, p.interior_asymmetry * std::abs(left - right));
    const int e = p.interior_initiation(left + right) + asym +
                  p.mismatch_interior[o][static_cast<std::size_t>(index(at(seq, i + 1)))]
                                     [static_cast<std::size_t>(index(at(seq, j - 1)))] +
                  p.mismatch_interior[in][static_cast<std::size_t>(index(at(seq, s + 1)))]
                                     [static_cast<std::size_t>(index(at(seq, r - 1)))];
    return Energy::from_dcal(e);
}

/// alpha + pairs * beta + unpaired * gamma; admissibility is checked by the caller.
inline Energy multi_loop_energy(const EnergyParams& p, int pairs, int unpaired) noexcept {
    return Energy::from_dcal(p.multi_alpha + pairs * p.multi_beta + unpaired * p.multi_gamma);
}

namespace detail {

inline int max_position(const Loop& L) {
    int m = 0;
    if (L.closing) m = L.closing->j;
    for (const Interval& iv : L.intervals) m = std::max(m, iv.last);
    for (const Arc& b : L.branches) m = std::max(m, b.j);
    return m;
}

}  // namespace detail

/// Energy of one loop on `seq`; +infinity when a pair of the loop cannot form.
/// The exterior loop is 0.
inline Energy loop_energy(const EnergyParams& p, const Sequence& seq, const Loop& L) {
    if (detail::max_position(L) > static_cast<int>(seq.size()))
        throw std::invalid_argument("loop extends beyond the sequence");
    switch (L.kind) {
        case LoopKind::Exterior:
            return Energy::from_dcal(0);
        case LoopKind::Hairpin:
            return hairpin_energy(p, seq, L.closing->i, L.closing->j);
        case LoopKind::Helix:
        case LoopKind::Bulge:
        case LoopKind::Interior:
            return two_pair_loop_energy(p, seq, L.closing->i, L.closing->j, L.branches[0].i, L.branches[0].j);
        case LoopKind::Multi: {
            if (!admissible(at(seq, L.closing->i), at(seq, L.closing->j))) return Energy::infinite();
            for (const Arc& b : L.branches)
                if (!admissible(at(seq, b.i), at(seq, b.j))) return Energy::infinite();
            return multi_loop_energy(p, static_cast<int>(L.branches.size()) + 1, L.unpaired);
        }
    }
    return Energy::infinite();
}

/// Positions other than the closing pair that `loop_energy` may read.
/// Every other position can change without changing the loop's energy.
inline std::vector<int> energy_relevant_positions(const Loop& L) {
    std::vector<int> pos;
    switch (L.kind) {
        case LoopKind::Exterior:
            break;
        case LoopKind::Hairpin: {
            const int i = L.closing->i, j = L.closing->j;
            if (j - i - 1 <= 4) {
                for (int q = i + 1; q < j; ++q) pos.push_back(q);
            } else {
                pos = {i + 1, j - 1};
            }
            break;
        }
        case LoopKind::Helix:
        case LoopKind::Bulge:
            pos = {L.branches[0].i, L.branches[0].j};
            break;
        case LoopKind::Interior: {
            const int i = L.closing->i, j = L.closing->j, r = L.branches[0].i, s = L.branches[0].j;
            pos = {i + 1, r - 1, r, s, s + 1, j - 1};
            break;
        }
        case LoopKind::Multi:
            for (const Arc& b : L.branches) {
                pos.push_back(b.i);
                pos.push_back(b.j);
            }
            break;
    }
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    return pos;
}

inline Energy structure_energy(const EnergyParams& p, const Sequence& seq, const LoopDecomposition& d) {
    if (static_cast<int>(seq.size()) != d.size())
        throw std::invalid_argument("sequence length " + std::to_string(seq.size()) +
                                    " does not match structure length " + std::to_string(d.size()));
    Energy total = Energy::from_dcal(0);
    for (const Loop& L : d.loops()) {
        total += loop_energy(p, seq, L);
        if (total.is_infinite()) break;
    }
    return total;
}

inline Energy structure_energy(const EnergyParams& p, const Sequence& seq, const SecondaryStructure& s) {
    if (static_cast<int>(seq.size()) != s.size())
        throw std::invalid_argument("sequence length " + std::to_string(seq.size()) +
                                    " does not match structure length " + std::to_string(s.size()));
    return structure_energy(p, seq, decompose(s));
}

}  // namespace seqsem
