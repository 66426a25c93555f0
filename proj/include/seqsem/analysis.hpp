#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "seqsem/fold.hpp"
#include "seqsem/sampler.hpp"
#include "seqsem/seq_partition.hpp"
#include "seqsem/structure_count.hpp"

namespace seqsem {

/// Shannon entropy in base 4 of a probability vector. Zero entries add 0.
inline double entropy(std::span<const double> probabilities) {
    double sum = 0, h = 0;
    for (double q : probabilities) {
        if (!(q >= 0)) throw std::invalid_argument("negative or NaN pattern frequency");
        sum += q;
        if (q > 0) h -= q * std::log(q);
    }
    if (std::abs(sum - 1.0) > 1e-6) throw std::invalid_argument("pattern frequencies do not sum to 1");
    return std::max(0.0, h / std::log(4.0));
}

/// Heat 1 - E/w of an interval of width w, clamped to [0,1] against rounding.
inline double heat(double entropy_value, int width) {
    return std::clamp(1.0 - entropy_value / width, 0.0, 1.0);
}

inline constexpr int kSampledWindow = 8;
inline constexpr int kExactWindow = 5;

class HeatMap {
public:
    HeatMap(int n, int window, std::size_t ensemble_size)
        : n_(n), window_(window), ensemble_size_(ensemble_size),
          values_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), std::numeric_limits<double>::quiet_NaN()) {}

    int size() const noexcept { return n_; }
    int window() const noexcept { return window_; }
    /// 0 for an exact map.
    std::size_t ensemble_size() const noexcept { return ensemble_size_; }
    bool exact() const noexcept { return ensemble_size_ == 0; }

    bool in_window(int i, int j) const noexcept { return 1 <= i && i <= j && j <= n_ && j - i + 1 <= window_; }
    double at(int i, int j) const {
        if (!in_window(i, j)) throw std::out_of_range("interval outside the heat-map window");
        return values_[offset(i, j)];
    }
    void set(int i, int j, double r) { values_[offset(i, j)] = r; }

private:
    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1);
    }
    int n_;
    int window_;
    std::size_t ensemble_size_;
    std::vector<double> values_;
};

namespace detail {

inline std::uint32_t pattern_code(const Sequence& seq, int first, int last) {
    std::uint32_t code = 0;
    for (int pos = first; pos <= last; ++pos) code = code * 4 + static_cast<std::uint32_t>(index(at(seq, pos)));
    return code;
}

inline Sequence decode_pattern(std::uint32_t code, int width) {
    Sequence out(static_cast<std::size_t>(width));
    for (int k = width - 1; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = nucleotide_at(static_cast<int>(code & 3u));
        code >>= 2;
    }
    return out;
}

inline void check_window(int n, int window, int limit) {
    if (window < 1) throw std::invalid_argument("window must be at least 1");
    if (window > limit) throw std::invalid_argument("window " + std::to_string(window) + " exceeds the limit " + std::to_string(limit));
    if (n < 1) throw std::invalid_argument("empty structure");
}

}  // namespace detail

/// Heat map from pattern frequencies of an ensemble.
inline HeatMap heat_map(std::span<const Sequence> ensemble, int n, int window = kSampledWindow) {
    detail::check_window(n, window, kSampledWindow);
    if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
    for (const Sequence& s : ensemble)
        if (static_cast<int>(s.size()) != n) throw std::invalid_argument("ensemble sequence length differs from n");
    HeatMap map(n, window, ensemble.size());
    const double total = static_cast<double>(ensemble.size());
    std::vector<std::uint32_t> counts;
    std::vector<double> freq;
    for (int w = 1; w <= window; ++w) {
        counts.assign(std::size_t{1} << (2 * w), 0);
        for (int i = 1; i + w - 1 <= n; ++i) {
            std::fill(counts.begin(), counts.end(), 0u);
            for (const Sequence& s : ensemble) ++counts[detail::pattern_code(s, i, i + w - 1)];
            freq.clear();
            for (std::uint32_t c : counts)
                if (c) freq.push_back(c / total);
            map.set(i, i + w - 1, heat(entropy(freq), w));
        }
    }
    return map;
}

inline HeatMap heat_map(std::span<const SampledSequence> ensemble, int n, int window = kSampledWindow) {
    std::vector<Sequence> seqs;
    seqs.reserve(ensemble.size());
    for (const SampledSequence& s : ensemble) seqs.push_back(s.sequence);
    return heat_map(std::span<const Sequence>(seqs), n, window);
}

/// Heat map from exact pattern probabilities; 4^w constrained partition
/// functions per interval, so the window is bounded by `max_window`.
inline HeatMap exact_heat_map(const EnergyParams& p, const SecondaryStructure& s, int window = kExactWindow,
                              int max_window = kExactWindow) {
    const int n = s.size();
    detail::check_window(n, window, max_window);
    PatternEvaluator eval(p, s);
    HeatMap map(n, window, 0);
    std::vector<double> probs;
    for (int w = 1; w <= window; ++w) {
        for (int i = 1; i + w - 1 <= n; ++i) {
            probs.clear();
            for (std::uint32_t code = 0; code < (1u << (2 * w)); ++code)
                probs.push_back(eval.probability(PatternConstraint::pattern(n, i, detail::decode_pattern(code, w))));
            double sum = 0;
            for (double q : probs) sum += q;
            for (double& q : probs) q /= sum;
            map.set(i, i + w - 1, heat(entropy(probs), w));
        }
    }
    return map;
}

/// Widest interval with R above `threshold`; ties go to the leftmost.
inline std::optional<Interval> hottest_interval(const HeatMap& map, double threshold) {
    for (int w = map.window(); w >= 1; --w)
        for (int i = 1; i + w - 1 <= map.size(); ++i)
            if (map.at(i, i + w - 1) > threshold) return Interval{i, i + w - 1};
    return std::nullopt;
}

struct PatternReport {
    Sequence pattern;
    double frequency = 0;
    double probability = 0;
    /// sqrt(p(1-p)/N) with p the exact probability.
    double standard_error = 0;
};

/// The k most frequent patterns of [first, last] in the ensemble, most
/// frequent first and lexicographic (A<C<G<U) among equals.
inline std::vector<PatternReport> top_patterns(const EnergyParams& p, const SecondaryStructure& s,
                                               std::span<const Sequence> ensemble, int first, int last, std::size_t k) {
    const int w = last - first + 1;
    if (first < 1 || last > s.size() || w < 1) throw std::invalid_argument("interval outside the structure");
    if (w > kSampledWindow) throw std::invalid_argument("interval wider than 8");
    if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
    std::map<std::uint32_t, std::size_t> counts;
    for (const Sequence& seq : ensemble) ++counts[detail::pattern_code(seq, first, last)];
    std::vector<std::pair<std::uint32_t, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > k) ranked.resize(k);

    PatternEvaluator eval(p, s);
    const double total = static_cast<double>(ensemble.size());
    std::vector<PatternReport> out;
    for (const auto& [code, count] : ranked) {
        PatternReport r;
        r.pattern = detail::decode_pattern(code, w);
        r.frequency = count / total;
        r.probability = eval.probability(PatternConstraint::pattern(s.size(), first, r.pattern));
        r.standard_error = std::sqrt(r.probability * (1 - r.probability) / total);
        out.push_back(std::move(r));
    }
    return out;
}

struct Summary {
    std::size_t count = 0;
    double mean = 0;
    double q1 = 0;
    double median = 0;
    double q3 = 0;
};

/// Quartiles by linear interpolation between order statistics.
inline Summary summarize(std::vector<double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double h = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    return s;
}

/// Refolding statistics of one ensemble against its target structure.
struct EnsembleSignature {
    SecondaryStructure structure;
    std::size_t refolded = 0;
    double ifr = 0;
    /// kcal/mol, one per sequence.
    std::vector<double> delta_etas;
    std::vector<bool> refolds;
    std::vector<double> mfe_energies;
    Summary delta_eta_summary;
};

struct SignatureReport {
    EnsembleSignature target;
    std::vector<EnsembleSignature> baselines;
    /// Mean baseline IFR and pooled baseline Δη statistics.
    double baseline_ifr = 0;
    Summary baseline_delta_eta_summary;
};

namespace detail {

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(count, t * chunk), end = std::min(count, begin + chunk);
        pool.emplace_back([&body, begin, end] {
            for (std::size_t k = begin; k < end; ++k) body(k);
        });
    }
}

inline constexpr std::uint64_t kBaselineStream = std::uint64_t{1} << 62;

}  // namespace detail

/// Folds every sequence; Δη = |η(σ,S) − η(σ,S̄)| with S̄ the mfe structure.
inline EnsembleSignature evaluate_signature(const EnergyParams& p, const SecondaryStructure& s,
                                            std::span<const Sequence> ensemble, unsigned threads = 1,
                                            FoldOptions opt = {}) {
    EnsembleSignature out{s, 0, 0, {}, {}, {}, {}};
    const std::size_t count = ensemble.size();
    out.delta_etas.assign(count, 0);
    out.mfe_energies.assign(count, 0);
    std::vector<char> refolds(count, 0);
    detail::parallel_for(count, threads, [&](std::size_t k) {
        const FoldResult f = mfe_fold(p, ensemble[k], opt);
        const Energy eta = structure_energy(p, ensemble[k], s);
        out.mfe_energies[k] = f.energy.kcal();
        out.delta_etas[k] = std::abs(eta.dcal() - f.energy.dcal()) / 100.0;
        refolds[k] = f.structure == s;
    });
    for (char r : refolds) {
        out.refolds.push_back(r != 0);
        out.refolded += r != 0;
    }
    out.ifr = count ? static_cast<double>(out.refolded) / static_cast<double>(count) : 0.0;
    out.delta_eta_summary = summarize(out.delta_etas);
    return out;
}

inline EnsembleSignature evaluate_signature(const EnergyParams& p, const SecondaryStructure& s,
                                            std::span<const SampledSequence> ensemble, unsigned threads = 1,
                                            FoldOptions opt = {}) {
    std::vector<Sequence> seqs;
    seqs.reserve(ensemble.size());
    for (const SampledSequence& x : ensemble) seqs.push_back(x.sequence);
    return evaluate_signature(p, s, std::span<const Sequence>(seqs), threads, opt);
}

/// Signature of `ensemble` (sampled from s) against `baseline_count` uniform
/// random structures of the same length, each with its own Boltzmann
/// ensemble of the same size. Baseline b draws its structure from
/// substream(seed, 2^62 + b) and its ensemble from the seed that stream
/// yields next.
inline SignatureReport signature(const EnergyParams& p, const SecondaryStructure& s,
                                 std::span<const Sequence> ensemble, std::size_t baseline_count, std::uint64_t seed,
                                 unsigned threads = 1, FoldOptions opt = {}) {
    SignatureReport report{evaluate_signature(p, s, ensemble, threads, opt), {}, 0, {}};
    StructureCounter counter(s.size());
    std::vector<double> pooled;
    for (std::size_t b = 0; b < baseline_count; ++b) {
        Rng rng = substream(seed, detail::kBaselineStream + b);
        const SecondaryStructure random = counter.sample(s.size(), rng);
        const std::uint64_t ensemble_seed = rng();
        const SequencePartition pf = partition_function(p, random);
        std::vector<Sequence> seqs;
        seqs.reserve(ensemble.size());
        for (SampledSequence& x : sample_ensemble(p, pf, ensemble.size(), ensemble_seed, threads))
            seqs.push_back(std::move(x.sequence));
        report.baselines.push_back(evaluate_signature(p, random, std::span<const Sequence>(seqs), threads, opt));
        report.baseline_ifr += report.baselines.back().ifr;
        pooled.insert(pooled.end(), report.baselines.back().delta_etas.begin(), report.baselines.back().delta_etas.end());
    }
    if (baseline_count) report.baseline_ifr /= static_cast<double>(baseline_count);
    report.baseline_delta_eta_summary = summarize(std::move(pooled));
    return report;
}

/// Unnormalized dominant mutual-information term
///   e^{-η/RT} · log(e^{-η/RT} / (Q(S) Q(σ)))
/// stored as sign · exp(log_magnitude).
struct MIScore {
    double log_magnitude = kLogZero;
    int sign = 0;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }
    bool is_zero() const noexcept { return sign == 0; }
};

inline MIScore mi_score(Energy eta, double rt, double log_q_s, double log_q_sigma) {
    if (eta.is_infinite()) return {};
    const double l = boltzmann_log(eta, rt);
    const double inner = l - log_q_s - log_q_sigma;
    if (inner == 0) return {};
    return {l + std::log(std::abs(inner)), inner > 0 ? 1 : -1};
}

inline MIScore mi_score(const EnergyParams& p, const Sequence& seq, const SecondaryStructure& s, double log_q_s,
                        double log_q_sigma) {
    return mi_score(structure_energy(p, seq, s), p.rt(), log_q_s, log_q_sigma);
}

/// |a − b| / max(|a|, |b|), computed without leaving log space.
inline double relative_difference(const MIScore& a, const MIScore& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    if (a.is_zero() || b.is_zero()) return 1.0;
    if (a.sign != b.sign) return 1.0 + std::exp(std::min(a.log_magnitude, b.log_magnitude) - std::max(a.log_magnitude, b.log_magnitude));
    return -std::expm1(-std::abs(a.log_magnitude - b.log_magnitude));
}

inline double identity(const Sequence& a, const Sequence& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("identity needs equal, non-empty lengths");
    std::size_t same = 0;
    for (std::size_t k = 0; k < a.size(); ++k) same += a[k] == b[k];
    return static_cast<double>(same) / static_cast<double>(a.size());
}

struct DiverseTriple {
    std::array<std::size_t, 3> members{};
    std::array<MIScore, 3> scores{};
};

/// Looks for three sequences whose MI scores differ pairwise by less than
/// `tolerance` (relative) while sharing less than `max_identity` of their
/// positions pairwise. Q(σ) is computed only for sequences whose Boltzmann
/// exponents are close enough to matter.
inline std::optional<DiverseTriple> find_diverse_equal_mi(const EnergyParams& p, const SecondaryStructure& s,
                                                          std::span<const Sequence> ensemble, double log_q_s,
                                                          double tolerance = 0.05, double max_identity = 0.5,
                                                          FoldOptions opt = {}) {
    const double rt = p.rt();
    std::vector<Energy> etas(ensemble.size());
    std::vector<double> expo(ensemble.size());
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        etas[k] = structure_energy(p, ensemble[k], s);
        expo[k] = boltzmann_log(etas[k], rt);
    }
    std::vector<std::size_t> order(ensemble.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return expo[a] < expo[b]; });

    std::map<std::size_t, MIScore> cache;
    auto score = [&](std::size_t k) {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        const MIScore m = mi_score(etas[k], rt, log_q_s, mccaskill_partition(p, ensemble[k], opt).log_q_sigma);
        return cache.emplace(k, m).first->second;
    };
    // log|inner| moves slowly compared with the exponent, so a window twice
    // the tolerance in log space over the exponents covers every candidate.
    const double span = -2.0 * std::log1p(-tolerance);
    std::vector<std::size_t> window;
    for (std::size_t a = 0; a < order.size(); ++a) {
        if (expo[order[a]] == kLogZero) continue;
        window.clear();
        for (std::size_t b = a + 1; b < order.size() && expo[order[b]] - expo[order[a]] <= span; ++b)
            if (identity(ensemble[order[a]], ensemble[order[b]]) < max_identity) window.push_back(order[b]);
        if (window.size() < 2) continue;
        const MIScore sa = score(order[a]);
        for (std::size_t x = 0; x < window.size(); ++x) {
            const MIScore sx = score(window[x]);
            if (relative_difference(sa, sx) >= tolerance) continue;
            for (std::size_t y = x + 1; y < window.size(); ++y) {
                if (identity(ensemble[window[x]], ensemble[window[y]]) >= max_identity) continue;
                const MIScore sy = score(window[y]);
                if (relative_difference(sa, sy) < tolerance && relative_difference(sx, sy) < tolerance)
                    return DiverseTriple{{order[a], window[x], window[y]}, {sa, sx, sy}};
            }
        }
    }
    return std::nullopt;
}

inline constexpr double kDefaultBinWidth = 0.5;

/// Energy histograms of an ensemble and of its refolding subset. Bin b
/// covers [(first_bin + b)·width, (first_bin + b + 1)·width) kcal/mol.
struct EnergySpectrum {
    double bin_width = kDefaultBinWidth;
    long first_bin = 0;
    std::vector<std::size_t> all;
    std::vector<std::size_t> refolded;

    double bin_start(std::size_t b) const { return static_cast<double>(first_bin + static_cast<long>(b)) * bin_width; }
};

inline EnergySpectrum energy_spectrum(std::span<const double> energies, const std::vector<bool>& refolds,
                                      double bin_width = kDefaultBinWidth) {
    if (energies.size() != refolds.size()) throw std::invalid_argument("refold flags not aligned with the ensemble");
    if (!(bin_width > 0)) throw std::invalid_argument("bin width must be positive");
    EnergySpectrum out;
    out.bin_width = bin_width;
    if (energies.empty()) return out;
    std::vector<long> bins(energies.size());
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (!std::isfinite(energies[k])) throw std::invalid_argument("energy spectrum needs finite energies");
        bins[k] = static_cast<long>(std::floor(energies[k] / bin_width));
    }
    const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
    out.first_bin = *lo;
    out.all.assign(static_cast<std::size_t>(*hi - *lo + 1), 0);
    out.refolded.assign(out.all.size(), 0);
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const auto b = static_cast<std::size_t>(bins[k] - out.first_bin);
        ++out.all[b];
        if (refolds[k]) ++out.refolded[b];
    }
    return out;
}

}  // namespace seqsem
