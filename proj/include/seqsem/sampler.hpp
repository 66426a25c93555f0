#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "seqsem/energy.hpp"
#include "seqsem/random.hpp"
#include "seqsem/seq_partition.hpp"

namespace seqsem {

struct SampledSequence {
    Sequence sequence;
    Energy energy;
    /// log P(sequence | S) as accumulated along the draw.
    double log_prob = 0;
    /// One entry per loop (decomposition order): log-probability of the
    /// loop's own positions given its closing pair. Sums to log_prob.
    std::vector<double> stepwise_logs;
};

namespace detail {

inline Nucleotide draw_allowed(Rng& rng, std::uint8_t allowed) {
    if (allowed == PatternConstraint::kAny) return nucleotide_at(static_cast<int>(rng() >> 62));
    unsigned pick = uniform_below(rng, static_cast<unsigned>(std::popcount(static_cast<unsigned>(allowed))));
    for (int x = 0; x < 4; ++x)
        if ((allowed >> x) & 1u) {
            if (pick == 0) return nucleotide_at(x);
            --pick;
        }
    return Nucleotide::A;
}

inline std::size_t draw_cdf(Rng& rng, std::span<const double> cdf) {
    const double u = uniform01(rng) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::size_t>(std::min(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size() - 1)));
}

}  // namespace detail

/// Draws one sequence with probability exp(-E(seq,S)/RT) / Q(S), top-down
/// from the exterior loop. Each loop's energy-relevant positions are drawn
/// jointly given its (already fixed) closing pair; other positions are
/// uniform over their allowed sets. Linear in n for a fixed loop-size bound.
inline SampledSequence sample(const EnergyParams& p, const SequencePartition& pf, Rng& rng) {
    if (!pf.has_sampling_tables()) throw std::logic_error("partition was computed without sampling tables");
    if (pf.log_q() == kLogZero) throw std::logic_error("no sequence is compatible with the structure");
    const LoopDecomposition& d = pf.decomposition();
    const PatternConstraint& c = pf.constraint();
    const auto& plans = pf.plans();
    const auto& weights = pf.loop_weights();
    const auto& sampling = pf.loop_sampling();

    SampledSequence out;
    out.sequence.assign(static_cast<std::size_t>(d.size()), Nucleotide::A);
    out.stepwise_logs.assign(d.loops().size(), 0.0);
    Sequence& seq = out.sequence;
    auto set = [&](int pos, Nucleotide x) { seq[static_cast<std::size_t>(pos - 1)] = x; };

    // Branches of exterior and multi loops are independent draws from their
    // own closing-pair tables.
    auto draw_branches = [&](std::size_t idx) {
        double step = 0;
        const Loop& L = d.loop(idx);
        for (std::size_t t = 0; t < L.branches.size(); ++t) {
            const std::size_t child = plans[idx].children[t];
            const std::size_t ab = detail::draw_cdf(rng, sampling[child].closing_cdf);
            set(L.branches[t].i, nucleotide_at(static_cast<int>(ab >> 2)));
            set(L.branches[t].j, nucleotide_at(static_cast<int>(ab & 3)));
            step += weights[child].log_q[ab] - weights[child].log_total;
        }
        return step;
    };
    auto draw_free = [&](std::size_t idx) {
        for (int pos : plans[idx].free_positions) set(pos, detail::draw_allowed(rng, c.allowed(pos)));
        return -detail::free_log(c, plans[idx].free_positions);
    };

    for (std::size_t idx = 0; idx < d.loops().size(); ++idx) {
        const Loop& L = d.loop(idx);
        if (L.kind == LoopKind::Exterior || L.kind == LoopKind::Multi) {
            out.stepwise_logs[idx] = draw_branches(idx) + draw_free(idx);
            continue;
        }
        const auto ab = static_cast<std::size_t>(4 * index(at(seq, L.closing->i)) + index(at(seq, L.closing->j)));
        const auto& choices = sampling[idx].choices[ab];
        if (choices.empty()) throw std::logic_error("closing pair drawn with zero weight");
        const double u = uniform01(rng) * choices.back().cumulative;
        auto it = std::upper_bound(choices.begin(), choices.end(), u,
                                   [](double v, const detail::Choice& ch) { return v < ch.cumulative; });
        if (it == choices.end()) --it;
        const auto& relevant = plans[idx].relevant;
        for (std::size_t k = 0; k < relevant.size(); ++k)
            set(relevant[k], nucleotide_at(static_cast<int>((it->code >> (2 * k)) & 3u)));
        draw_free(idx);
        out.stepwise_logs[idx] = it->log_weight - weights[idx].log_q[ab];
    }

    out.energy = structure_energy(p, seq, d);
    for (double s : out.stepwise_logs) out.log_prob += s;
    return out;
}

/// `count` independent draws; draw k uses substream(seed, k), so the result
/// does not depend on `threads`.
inline std::vector<SampledSequence> sample_ensemble(const EnergyParams& p, const SequencePartition& pf,
                                                    std::size_t count, std::uint64_t seed, unsigned threads = 1) {
    std::vector<SampledSequence> out(count);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            Rng rng = substream(seed, k);
            out[k] = sample(p, pf, rng);
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        work(0, count);
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(count, t * chunk), end = std::min(count, begin + chunk);
        pool.emplace_back(work, begin, end);
    }
    pool.clear();
    return out;
}

}  // namespace seqsem
