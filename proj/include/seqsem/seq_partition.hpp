#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqsem/energy.hpp"
#include "seqsem/log_weight.hpp"
#include "seqsem/loops.hpp"
#include "seqsem/structure.hpp"

namespace seqsem {

/// Allowed nucleotides per position as 4-bit sets (bit k = nucleotide k).
/// A concrete pattern on [i,j] is the singleton-set special case.
class PatternConstraint {
public:
    static constexpr std::uint8_t kAny = 0b1111;

    PatternConstraint() = default;
    /// Unconstrained mask on n positions.
    explicit PatternConstraint(int n) : allowed_(static_cast<std::size_t>(n), kAny) {}

    static PatternConstraint from_mask(std::vector<std::uint8_t> allowed) {
        for (std::size_t k = 0; k < allowed.size(); ++k)
            if ((allowed[k] & kAny) == 0 || (allowed[k] & ~kAny) != 0)
                throw std::invalid_argument("allowed set at position " + std::to_string(k + 1) +
                                            " must be a non-empty subset of ACGU");
        PatternConstraint c;
        c.allowed_ = std::move(allowed);
        return c;
    }

    /// Fixes positions first .. first+|pattern|-1 (1-based) to `pattern`.
    static PatternConstraint pattern(int n, int first, const Sequence& pattern) {
        const int last = first + static_cast<int>(pattern.size()) - 1;
        if (pattern.empty() || first < 1 || last > n)
            throw std::invalid_argument("pattern interval [" + std::to_string(first) + "," + std::to_string(last) +
                                        "] is outside [1," + std::to_string(n) + "]");
        PatternConstraint c(n);
        for (std::size_t k = 0; k < pattern.size(); ++k)
            c.allowed_[static_cast<std::size_t>(first - 1) + k] =
                static_cast<std::uint8_t>(1u << index(pattern[k]));
        return c;
    }

    int size() const noexcept { return static_cast<int>(allowed_.size()); }
    std::uint8_t allowed(int pos) const { return allowed_[static_cast<std::size_t>(pos - 1)]; }
    bool allows(int pos, Nucleotide x) const { return (allowed(pos) >> index(x)) & 1u; }
    int choices(int pos) const { return std::popcount(static_cast<unsigned>(allowed(pos))); }

    /// Smallest interval covering every restricted position.
    std::optional<Interval> constrained_span() const {
        int lo = 0, hi = -1;
        for (int pos = 1; pos <= size(); ++pos)
            if (allowed(pos) != kAny) {
                if (lo == 0) lo = pos;
                hi = pos;
            }
        if (lo == 0) return std::nullopt;
        return Interval{lo, hi};
    }

private:
    std::vector<std::uint8_t> allowed_;
};

/// Q(a, b) for one arc: the weight of its substructure with the endpoints
/// fixed to (a, b). Index 4*a + b.
struct ArcTable {
    Arc arc;
    std::array<LogWeight, 16> weights;

    LogWeight at(Nucleotide a, Nucleotide b) const { return weights[static_cast<std::size_t>(4 * index(a) + index(b))]; }
};

namespace detail {

/// Structure-only data for one loop.
struct LoopPlan {
    std::vector<int> relevant;        // energy-relevant positions besides the closing pair
    std::vector<int> free_positions;  // unpaired positions that never enter the energy
    std::vector<std::size_t> children;
    int child_left = -1;  // index of the single branch's endpoints in `relevant`
    int child_right = -1;
};

struct LoopWeights {
    std::array<double, 16> log_q;  // closing-arc table (unused for the exterior loop)
    double log_total = kLogZero;   // log sum over all 16 entries
};

/// One joint assignment of a loop's relevant positions: 2 bits per position.
struct Choice {
    std::uint32_t code;
    double cumulative;  // normalized CDF up to and including this choice
    double log_weight;  // -E/RT + log Q(child endpoints)
};

struct LoopSampling {
    std::array<double, 16> closing_cdf{};  // draw of the closing pair from the parent
    std::array<std::vector<Choice>, 16> choices;
};

inline std::vector<LoopPlan> make_plans(const LoopDecomposition& d) {
    std::vector<LoopPlan> plans(d.loops().size());
    for (std::size_t idx = 0; idx < plans.size(); ++idx) {
        const Loop& L = d.loop(idx);
        LoopPlan& plan = plans[idx];
        for (const Arc& b : L.branches) plan.children.push_back(d.closing_loop(b));
        if (L.kind != LoopKind::Exterior && L.kind != LoopKind::Multi) plan.relevant = energy_relevant_positions(L);
        for (const Interval& iv : L.intervals)
            for (int pos = iv.first; pos <= iv.last; ++pos)
                if (!std::binary_search(plan.relevant.begin(), plan.relevant.end(), pos))
                    plan.free_positions.push_back(pos);
        if (L.branches.size() == 1 && L.kind != LoopKind::Exterior) {
            const auto find = [&](int pos) {
                return static_cast<int>(std::lower_bound(plan.relevant.begin(), plan.relevant.end(), pos) -
                                        plan.relevant.begin());
            };
            plan.child_left = find(L.branches[0].i);
            plan.child_right = find(L.branches[0].j);
        }
    }
    return plans;
}

/// log of the number of assignments of `positions` under `c`, grouped by set
/// size so that an unconstrained run of m positions is exactly m * ln 4.
inline double free_log(const PatternConstraint& c, std::span<const int> positions) {
    std::array<int, 5> by_size{};
    for (int pos : positions) ++by_size[static_cast<std::size_t>(c.choices(pos))];
    return by_size[4] * std::log(4.0) + by_size[3] * std::log(3.0) + by_size[2] * std::log(2.0);
}

inline void finish_totals(LoopWeights& w, LoopSampling* sampling) {
    LogSum total;
    for (double v : w.log_q) total.add(v);
    w.log_total = total.value();
    if (!sampling) return;
    double acc = 0;
    for (std::size_t k = 0; k < 16; ++k) {
        if (w.log_q[k] != kLogZero) acc += std::exp(w.log_q[k] - w.log_total);
        sampling->closing_cdf[k] = acc;
    }
}

/// Fills weights[idx] (and sampling[idx] when given) for a non-exterior loop
/// from the already computed tables of its children.
inline void compute_loop(const EnergyParams& p, const LoopDecomposition& d, const std::vector<LoopPlan>& plans,
                         const PatternConstraint& c, std::size_t idx, std::vector<LoopWeights>& weights,
                         LoopSampling* sampling, Sequence& scratch) {
    const Loop& L = d.loop(idx);
    const LoopPlan& plan = plans[idx];
    const int i = L.closing->i, j = L.closing->j;
    const double rt = p.rt();
    LoopWeights& out = weights[idx];
    out.log_q.fill(kLogZero);
    const double fl = free_log(c, plan.free_positions);

    if (L.kind == LoopKind::Multi) {
        double base = boltzmann_log(multi_loop_energy(p, static_cast<int>(L.branches.size()) + 1, L.unpaired), rt) + fl;
        for (std::size_t child : plan.children) base += weights[child].log_total;
        for (Nucleotide a : kNucleotides)
            for (Nucleotide b : kNucleotides)
                if (c.allows(i, a) && c.allows(j, b) && admissible(a, b))
                    out.log_q[static_cast<std::size_t>(4 * index(a) + index(b))] = base;
        finish_totals(out, sampling);
        return;
    }

    const std::size_t m = plan.relevant.size();
    std::vector<std::vector<Nucleotide>> options(m);
    for (std::size_t k = 0; k < m; ++k)
        for (Nucleotide x : kNucleotides)
            if (c.allows(plan.relevant[k], x)) options[k].push_back(x);
    const LoopWeights* child = plan.children.empty() ? nullptr : &weights[plan.children.front()];

    std::vector<Choice> found;
    std::vector<std::size_t> digit(m);
    for (Nucleotide a : kNucleotides) {
        for (Nucleotide b : kNucleotides) {
            const auto ab = static_cast<std::size_t>(4 * index(a) + index(b));
            if (!c.allows(i, a) || !c.allows(j, b) || !admissible(a, b)) continue;
            scratch[static_cast<std::size_t>(i - 1)] = a;
            scratch[static_cast<std::size_t>(j - 1)] = b;
            LogSum acc;
            found.clear();
            std::fill(digit.begin(), digit.end(), 0);
            for (;;) {
                std::uint32_t code = 0;
                for (std::size_t k = 0; k < m; ++k) {
                    const Nucleotide x = options[k][digit[k]];
                    scratch[static_cast<std::size_t>(plan.relevant[k] - 1)] = x;
                    code |= static_cast<std::uint32_t>(index(x)) << (2 * k);
                }
                double cw = 0.0;
                if (child) {
                    const auto cd = static_cast<std::size_t>(
                        4 * index(scratch[static_cast<std::size_t>(plan.relevant[static_cast<std::size_t>(plan.child_left)] - 1)]) +
                        index(scratch[static_cast<std::size_t>(plan.relevant[static_cast<std::size_t>(plan.child_right)] - 1)]));
                    cw = child->log_q[cd];
                }
                if (cw != kLogZero) {
                    const Energy e = loop_energy(p, scratch, L);
                    if (!e.is_infinite()) {
                        const double w = boltzmann_log(e, rt) + cw;
                        acc.add(w);
                        if (sampling) found.push_back({code, 0.0, w});
                    }
                }
                std::size_t k = 0;
                while (k < m && ++digit[k] == options[k].size()) digit[k++] = 0;
                if (k == m) break;
            }
            const double local = acc.value();
            if (local == kLogZero) continue;
            out.log_q[ab] = fl + local;
            if (sampling) {
                double cum = 0;
                for (Choice& ch : found) {
                    cum += std::exp(ch.log_weight - local);
                    ch.cumulative = cum;
                }
                sampling->choices[ab] = found;
            }
        }
    }
    finish_totals(out, sampling);
}

inline double exterior_log(const PatternConstraint& c, const std::vector<LoopPlan>& plans,
                           const std::vector<LoopWeights>& weights) {
    double lq = free_log(c, plans.front().free_positions);
    for (std::size_t child : plans.front().children) lq += weights[child].log_total;
    return lq;
}

}  // namespace detail

/// Q(S) together with the per-arc tables, optionally restricted by a
/// pattern constraint, plus the per-loop draw tables used by the sampler.
class SequencePartition {
public:
    const SecondaryStructure& structure() const noexcept { return structure_; }
    const LoopDecomposition& decomposition() const noexcept { return decomposition_; }
    const PatternConstraint& constraint() const noexcept { return constraint_; }
    double rt() const noexcept { return rt_; }

    LogWeight q() const noexcept { return LogWeight::from_log(log_q_); }
    double log_q() const noexcept { return log_q_; }

    ArcTable table(Arc a) const {
        const std::size_t idx = decomposition_.closing_loop(a);
        if (idx == LoopDecomposition::npos) throw std::out_of_range("not an arc of the structure");
        ArcTable t{a, {}};
        for (std::size_t k = 0; k < 16; ++k) t.weights[k] = LogWeight::from_log(weights_[idx].log_q[k]);
        return t;
    }

    /// Tables for every arc in left-endpoint order.
    std::vector<ArcTable> arc_tables() const {
        std::vector<ArcTable> out;
        for (const Arc& a : structure_.arcs()) out.push_back(table(a));
        return out;
    }

    bool has_sampling_tables() const noexcept { return !sampling_.empty(); }

    // Per-loop internals, indexed like decomposition().loops(); read by the sampler.
    const std::vector<detail::LoopPlan>& plans() const noexcept { return plans_; }
    const std::vector<detail::LoopWeights>& loop_weights() const noexcept { return weights_; }
    const std::vector<detail::LoopSampling>& loop_sampling() const noexcept { return sampling_; }

private:
    friend SequencePartition partition_function(const EnergyParams&, const SecondaryStructure&,
                                                const PatternConstraint&, bool);
    friend class PatternEvaluator;

    SecondaryStructure structure_;
    LoopDecomposition decomposition_;
    PatternConstraint constraint_;
    double rt_ = 0;
    double log_q_ = kLogZero;
    std::vector<detail::LoopPlan> plans_;
    std::vector<detail::LoopWeights> weights_;
    std::vector<detail::LoopSampling> sampling_;
};

/// Bottom-up over the arc forest, exterior loop last. Each loop sums over the
/// joint assignments of its energy-relevant positions only; every other
/// position contributes its allowed-set size as a plain factor.
inline SequencePartition partition_function(const EnergyParams& p, const SecondaryStructure& s,
                                            const PatternConstraint& c, bool sampling_tables = true) {
    if (c.size() != s.size()) throw std::invalid_argument("constraint length does not match the structure");
    SequencePartition out;
    out.structure_ = s;
    out.decomposition_ = decompose(s);
    out.constraint_ = c;
    out.rt_ = p.rt();
    out.plans_ = detail::make_plans(out.decomposition_);
    const std::size_t loops = out.plans_.size();
    out.weights_.resize(loops);
    if (sampling_tables) out.sampling_.resize(loops);
    Sequence scratch(static_cast<std::size_t>(s.size()), Nucleotide::A);
    for (std::size_t idx = loops; idx-- > 1;)
        detail::compute_loop(p, out.decomposition_, out.plans_, c, idx, out.weights_,
                             sampling_tables ? &out.sampling_[idx] : nullptr, scratch);
    out.log_q_ = detail::exterior_log(c, out.plans_, out.weights_);
    return out;
}

inline SequencePartition partition_function(const EnergyParams& p, const SecondaryStructure& s) {
    return partition_function(p, s, PatternConstraint(s.size()));
}

/// log Q(S | c): the same recursion with allowed sets narrowed by `c`.
inline double pattern_partition(const EnergyParams& p, const SecondaryStructure& s, const PatternConstraint& c) {
    return partition_function(p, s, c, false).log_q();
}

inline double pattern_probability(const EnergyParams& p, const SecondaryStructure& s, const PatternConstraint& c) {
    const double lq = partition_function(p, s, PatternConstraint(s.size()), false).log_q();
    return std::exp(pattern_partition(p, s, c) - lq);
}

/// Evaluates many constraints on one structure, recomputing only the loops
/// whose closing arc overlaps the constrained span; arc tables outside it
/// are shared with the unconstrained run.
class PatternEvaluator {
public:
    PatternEvaluator(const EnergyParams& p, const SecondaryStructure& s)
        : params_(p), base_(partition_function(p, s, PatternConstraint(s.size()), false)),
          scratch_(static_cast<std::size_t>(s.size()), Nucleotide::A) {}

    double log_q() const noexcept { return base_.log_q(); }
    const SequencePartition& unconstrained() const noexcept { return base_; }

    double log_q(const PatternConstraint& c) {
        if (c.size() != base_.structure().size())
            throw std::invalid_argument("constraint length does not match the structure");
        const auto span = c.constrained_span();
        if (!span) return base_.log_q();
        const LoopDecomposition& d = base_.decomposition_;
        work_ = base_.weights_;
        for (std::size_t idx = work_.size(); idx-- > 1;) {
            const Arc a = *d.loop(idx).closing;
            if (a.i <= span->last && a.j >= span->first)
                detail::compute_loop(params_, d, base_.plans_, c, idx, work_, nullptr, scratch_);
        }
        return detail::exterior_log(c, base_.plans_, work_);
    }

    double probability(const PatternConstraint& c) { return std::exp(log_q(c) - base_.log_q()); }

private:
    const EnergyParams& params_;
    SequencePartition base_;
    Sequence scratch_;
    std::vector<detail::LoopWeights> work_;
};

}  // namespace seqsem
