// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, sizes and
// time limits are fixed below. Exit status is the number of failures, not
// counting parts that are marked unattainable and still printed as FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace seqsem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kLogQTolerance = 1e-9;
constexpr double kTelescopeRelTolerance = 1e-9;
constexpr double kPatternSumTolerance = 1e-9;
constexpr double kTvLimit = 0.02;
constexpr double kSignificance = 0.01;
constexpr double kHeatLimit = 0.02;
constexpr double kScalingLow = 0.8, kScalingHigh = 1.3;
constexpr double kMiTolerance = 0.05, kMiMaxIdentity = 0.5;

int failures = 0, unattainable = 0;

void report(const char* id, bool pass, const std::string& detail) {
    std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

/// `required` gates the exit status; `limit` failing alone is reported as an
/// unattainable bound.
void report(const char* id, bool required, bool limit, const std::string& detail, const std::string& why) {
    if (required && !limit) {
        std::printf("[FAIL] %s %s; unattainable: %s\n", id, detail.c_str(), why.c_str());
        std::fflush(stdout);
        ++unattainable;
        return;
    }
    report(id, required && limit, detail);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const EnergyParams& P() { return default_energy_params(); }

/// Structures of the oracle corpus. A multiloop needs at least 12 positions,
/// so that one member exceeds n = 10.
const std::vector<std::string>& corpus() { return testing_support::small_corpus(); }

void ac1() {
    const auto t0 = Clock::now();
    double worst = 0;
    int small = 0;
    bool kinds[6] = {};
    for (const std::string& db : corpus()) {
        const auto s = parse_dot_bracket(db);
        const auto d = decompose(s);
        for (const Loop& L : d.loops()) kinds[static_cast<int>(L.kind)] = true;
        small += s.size() <= 10;
        const double dp = partition_function(P(), s).log_q();
        worst = std::max(worst, std::abs(dp - oracle::log_q(P(), db)));
    }
    const double t = seconds_since(t0);
    bool all_kinds = true;
    for (bool k : kinds) all_kinds &= k;
    report("AC1", worst < kLogQTolerance && small >= 20 && all_kinds && t < 60.0,
           fmt("partition function vs 4^n brute force: %zu structures (%d with n<=10, all loop kinds=%s), "
               "max |dlogQ| = %.3g (tol %.0e), %.1f s (limit 60 s)",
               corpus().size(), small, all_kinds ? "yes" : "no", worst, kLogQTolerance, t));
}

void ac2() {
    bool exact = true;
    for (int n = 1; n <= 30; ++n)
        exact &= partition_function(P(), SecondaryStructure(n, {})).log_q() == n * std::log(4.0);
    report("AC2", exact, fmt("empty structure log Q == n ln 4 bit-exactly for n = 1..30: %s", exact ? "yes" : "no"));
}

void ac3() {
    const std::string db = "((....))";
    const std::size_t draws = 100000;
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<double> probs;
    const double lq = oracle::log_q(P(), db);
    oracle::for_each_sequence(P(), db, [&](const Sequence& q, int e) {
        slot[testing_support::encode(q)] = probs.size();
        probs.push_back(std::exp(oracle::boltzmann_exponent(P(), e) - lq));
    });
    const auto t0 = Clock::now();
    const auto pf = partition_function(P(), parse_dot_bracket(db));
    std::vector<std::size_t> counts(probs.size(), 0);
    for (const auto& x : sample_ensemble(P(), pf, draws, 20240601)) ++counts[slot.at(testing_support::encode(x.sequence))];
    const double t = seconds_since(t0);
    const double tv = testing_support::total_variation(probs, counts);
    const auto gof = testing_support::chi_square(probs, counts);
    const double floor = testing_support::expected_total_variation(probs, draws);
    report("AC3", gof.p_value > kSignificance && t < 30.0, tv < kTvLimit,
           fmt("sampler on %s, %zu draws over %zu outcomes: TV = %.4f (limit %.2f; a perfect sampler averages %.4f), "
               "chi-square p = %.3f (dof %d, need > %.2f), %.2f s (limit 30 s)",
               db.c_str(), draws, probs.size(), tv, kTvLimit, floor, gof.p_value, gof.dof, kSignificance, t),
           fmt("an exact sampler has expected TV %.4f at this draw count, reaching %.2f needs about %.0f draws", floor, kTvLimit,
               static_cast<double>(draws) * (floor / kTvLimit) * (floor / kTvLimit)));
}

void ac4() {
    double worst = 0;
    std::size_t checked = 0;
    for (const std::string& db : corpus()) {
        const auto pf = partition_function(P(), parse_dot_bracket(db));
        for (const auto& x : sample_ensemble(P(), pf, 2000, 4)) {
            double sum = 0;
            for (double s : x.stepwise_logs) sum += s;
            const double expected = boltzmann_log(x.energy, P().rt()) - pf.log_q();
            worst = std::max(worst, std::abs(sum - expected) / std::max(1.0, std::abs(expected)));
            ++checked;
        }
    }
    report("AC4", worst < kTelescopeRelTolerance,
           fmt("stepwise log-probabilities telescope to -E/RT - log Q over %zu draws: max rel err %.3g (tol %.0e)", checked,
               worst, kTelescopeRelTolerance));
}

void ac5() {
    double worst = 0;
    std::size_t intervals = 0;
    for (const std::string& db : corpus()) {
        const auto s = parse_dot_bracket(db);
        PatternEvaluator eval(P(), s);
        for (int w = 1; w <= 3; ++w)
            for (int i = 1; i + w - 1 <= s.size(); ++i) {
                double total = 0;
                for (std::uint32_t c = 0; c < (1u << (2 * w)); ++c)
                    total += eval.probability(PatternConstraint::pattern(s.size(), i, detail::decode_pattern(c, w)));
                worst = std::max(worst, std::abs(total - 1.0));
                ++intervals;
            }
    }
    report("AC5", worst < kPatternSumTolerance,
           fmt("pattern probabilities sum to 1 on %zu intervals of width <= 3: max |sum - 1| = %.3g (tol %.0e)", intervals,
               worst, kPatternSumTolerance));
}

void ac6() {
    std::mt19937_64 rng(6);
    int mismatched = 0;
    double worst = 0;
    const int count = 60;
    for (int k = 0; k < count; ++k) {
        const int n = 5 + k % 10;
        Sequence seq(static_cast<std::size_t>(n));
        for (auto& x : seq)
            x = (k % 2 && rng() % 3) ? ((rng() & 1) ? Nucleotide::G : Nucleotide::C) : nucleotide_at(static_cast<int>(rng() & 3));
        const auto truth = oracle::fold(P(), seq);
        mismatched += mfe_fold(P(), seq).energy.dcal() != truth.mfe;
        worst = std::max(worst, std::abs(mccaskill_partition(P(), seq).log_q_sigma - truth.log_q_sigma));
    }
    report("AC6", mismatched == 0 && worst < kLogQTolerance,
           fmt("%d random sequences n = 5..14 vs structure enumeration: mfe mismatches %d, max |dlogQ(sigma)| = %.3g (tol %.0e)",
               count, mismatched, worst, kLogQTolerance));
}

/// Least-squares slope of log t against log n.
double fit_exponent(const std::vector<double>& n, const std::vector<double>& t) {
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        mx += std::log(n[k]);
        my += std::log(t[k]);
    }
    mx /= static_cast<double>(n.size());
    my /= static_cast<double>(n.size());
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        sxy += (std::log(n[k]) - mx) * (std::log(t[k]) - my);
        sxx += (std::log(n[k]) - mx) * (std::log(n[k]) - mx);
    }
    return sxy / sxx;
}

/// Minimum over trials of the mean time per call, each trial lasting at
/// least `budget` seconds.
double time_per_call(const std::function<void()>& f, double budget = 0.05, int trials = 5) {
    double best = 1e300;
    for (int t = 0; t < trials; ++t) {
        std::size_t calls = 0;
        const auto t0 = Clock::now();
        do {
            f();
            ++calls;
        } while (seconds_since(t0) < budget);
        best = std::min(best, seconds_since(t0) / static_cast<double>(calls));
    }
    return best;
}

void ac7() {
    std::vector<double> ns, pf_times, sample_times;
    for (int n : {50, 100, 200, 400}) {
        std::string db;
        while (static_cast<int>(db.size()) < n) db += "(((....)))";
        const auto s = parse_dot_bracket(db);
        ns.push_back(n);
        pf_times.push_back(time_per_call([&] { (void)partition_function(P(), s); }));
        const auto pf = partition_function(P(), s);
        Rng rng = substream(7, 0);
        sample_times.push_back(time_per_call([&] { (void)sample(P(), pf, rng); }));
    }
    const double e_pf = fit_exponent(ns, pf_times), e_s = fit_exponent(ns, sample_times);
    auto ok = [](double e) { return e >= kScalingLow && e <= kScalingHigh; };
    report("AC7", ok(e_pf) && ok(e_s),
           fmt("power-law exponents over concatenated hairpins n = 50..400: partition %.3f, per-sample %.3f (need [%.1f, %.1f]); "
               "partition %.3g s and sample %.3g s at n = 400",
               e_pf, e_s, kScalingLow, kScalingHigh, pf_times.back(), sample_times.back()));
}

void ac8() {
    const int n = 10;
    const auto all = oracle::all_structures(n);
    std::unordered_map<std::string, std::size_t> slot;
    for (std::size_t k = 0; k < all.size(); ++k) slot[all[k]] = k;
    std::vector<std::size_t> counts(all.size(), 0);
    StructureCounter counter(n);
    Rng rng = substream(8, 0);
    for (int k = 0; k < 100000; ++k) ++counts[slot.at(to_dot_bracket(counter.sample(n, rng)))];
    const std::vector<double> uniform(all.size(), 1.0 / static_cast<double>(all.size()));
    const auto gof = testing_support::chi_square(uniform, counts);
    report("AC8", gof.p_value > kSignificance,
           fmt("uniform structures n = 10 (%zu structures), 1e5 draws: chi-square p = %.3f (need > %.2f)", all.size(),
               gof.p_value, kSignificance));
}

void ac9() {
    const auto t0 = Clock::now();
    const std::size_t ensemble = 10000;
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    // (a) helix-rich structure.
    const auto helix = parse_dot_bracket("((((((((....))))))))..((((((((....))))))))");
    std::size_t cg = 0, paired = 0;
    for (const auto& x : sample_ensemble(P(), partition_function(P(), helix), ensemble, 91, threads))
        for (const Arc& a : helix.arcs()) {
            const PairType t = pair_type(at(x.sequence, a.i), at(x.sequence, a.j));
            cg += t == PairType::CG || t == PairType::GC;
            ++paired;
        }
    const double cg_fraction = static_cast<double>(cg) / static_cast<double>(paired);

    // (b), (c) clean hairpin against 5 uniformly random structures.
    const auto hairpin = parse_dot_bracket("((((((((((..........))))))))))");
    std::vector<Sequence> seqs;
    for (auto& x : sample_ensemble(P(), partition_function(P(), hairpin), ensemble, 92, threads))
        seqs.push_back(std::move(x.sequence));
    const auto sig = signature(P(), hairpin, seqs, 5, 93, threads);
    const double t = seconds_since(t0);
    const bool a = cg_fraction > 0.5;
    const bool b = sig.target.ifr > sig.baseline_ifr;
    const bool c = sig.target.delta_eta_summary.median < sig.baseline_delta_eta_summary.median;
    report("AC9", a && b && c && t < 600.0,
           fmt("directional: (a) paired CG fraction %.3f > 0.5 %s; (b) hairpin IFR %.4f vs mean random IFR %.4f %s; "
               "(c) median delta-eta %.3f vs random %.3f kcal/mol %s; ensembles of %zu, %.1f s (limit 600 s)",
               cg_fraction, a ? "ok" : "no", sig.target.ifr, sig.baseline_ifr, b ? "ok" : "no",
               sig.target.delta_eta_summary.median, sig.baseline_delta_eta_summary.median, c ? "ok" : "no", ensemble, t));
}

void ac10() {
    const auto s = parse_dot_bracket("((....))");
    const auto exact = exact_heat_map(P(), s, 4);
    std::vector<Sequence> seqs;
    for (auto& x : sample_ensemble(P(), partition_function(P(), s), 100000, 10)) seqs.push_back(std::move(x.sequence));
    const auto sampled = heat_map(std::span<const Sequence>(seqs), s.size(), 4);
    double worst = 0;
    bool bounded = true;
    for (int i = 1; i <= s.size(); ++i)
        for (int j = i; j <= std::min(s.size(), i + 3); ++j) {
            worst = std::max(worst, std::abs(sampled.at(i, j) - exact.at(i, j)));
            for (const HeatMap* m : {&sampled, &exact}) bounded &= m->at(i, j) >= 0.0 && m->at(i, j) <= 1.0;
        }
    report("AC10", worst < kHeatLimit && bounded,
           fmt("heat map ((....)) W = 4, 1e5 draws vs exact: max |dR| = %.4f (limit %.2f), all entries in [0,1]: %s", worst,
               kHeatLimit, bounded ? "yes" : "no"));
}

void ac11() {
    const auto s = parse_dot_bracket("..((((((..((((....))))..((((....))))..((((....))))..))))))..");
    const auto pf = partition_function(P(), s);
    std::vector<Sequence> seqs;
    for (auto& x : sample_ensemble(P(), pf, 10000, 11)) seqs.push_back(std::move(x.sequence));
    const auto t = find_diverse_equal_mi(P(), s, seqs, pf.log_q(), kMiTolerance, kMiMaxIdentity);
    std::string detail = fmt("multiloop with 3 branches, n = %d, 1e4 draws: ", s.size());
    if (t) {
        double worst_rel = 0, worst_id = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                worst_rel = std::max(worst_rel, relative_difference(t->scores[static_cast<std::size_t>(a)], t->scores[static_cast<std::size_t>(b)]));
                worst_id = std::max(worst_id, identity(seqs[t->members[static_cast<std::size_t>(a)]], seqs[t->members[static_cast<std::size_t>(b)]]));
            }
        detail += fmt("found draws #%zu, #%zu, #%zu with max pairwise score difference %.4f (< %.2f) and identity %.3f (< %.2f)",
                      t->members[0], t->members[1], t->members[2], worst_rel, kMiTolerance, worst_id, kMiMaxIdentity);
    } else {
        detail += "no qualifying triple";
    }
    report("AC11", t.has_value(), detail);
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    ac10();
    ac11();
    std::printf("%d of 11 criteria failed, %d unattainable as stated, %.1f s total\n", failures, unattainable,
                seconds_since(t0));
    return failures;
}
