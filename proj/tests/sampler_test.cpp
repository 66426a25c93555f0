#include <gtest/gtest.h>

#include <cmath>
#include <unordered_map>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace seqsem;
using testing_support::params;

TEST(Sampler, TelescopingIdentityPerSample) {
    for (const std::string& db : testing_support::small_corpus()) {
        const auto pf = partition_function(params(), parse_dot_bracket(db));
        for (const auto& x : sample_ensemble(params(), pf, 300, 77)) {
            const double expected = boltzmann_log(x.energy, params().rt()) - pf.log_q();
            double sum = 0;
            for (double s : x.stepwise_logs) sum += s;
            EXPECT_NEAR(sum, expected, 1e-9 * std::max(1.0, std::abs(expected))) << db;
            EXPECT_EQ(sum, x.log_prob);
        }
    }
}

TEST(Sampler, ReportedEnergyIsTheStructureEnergy) {
    const auto s = parse_dot_bracket("((..((....))..((...))..)).(...)..");
    const auto pf = partition_function(params(), s);
    for (const auto& x : sample_ensemble(params(), pf, 500, 5)) {
        EXPECT_EQ(x.energy, structure_energy(params(), x.sequence, s));
        EXPECT_FALSE(x.energy.is_infinite());
    }
}

TEST(Sampler, SameSeedSameEnsembleRegardlessOfThreads) {
    const auto pf = partition_function(params(), parse_dot_bracket("((((....))))..((...))"));
    const auto a = sample_ensemble(params(), pf, 10000, 123, 1);
    const auto b = sample_ensemble(params(), pf, 10000, 123, 1);
    const auto c = sample_ensemble(params(), pf, 10000, 123, 3);
    const auto d = sample_ensemble(params(), pf, 10000, 124, 1);
    std::size_t differ = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].sequence, b[k].sequence);
        EXPECT_EQ(a[k].sequence, c[k].sequence);
        EXPECT_EQ(a[k].log_prob, c[k].log_prob);
        differ += a[k].sequence != d[k].sequence;
    }
    EXPECT_GT(differ, 5000u);
}

TEST(Sampler, EmptyStructureIsUniformPerPosition) {
    const auto pf = partition_function(params(), SecondaryStructure(8, {}));
    const auto draws = sample_ensemble(params(), pf, 10000, 9);
    for (int pos = 1; pos <= 8; ++pos) {
        std::array<int, 4> counts{};
        for (const auto& x : draws) ++counts[static_cast<std::size_t>(index(at(x.sequence, pos)))];
        for (int c : counts) EXPECT_NEAR(c / 10000.0, 0.25, 0.01);
    }
}

TEST(Sampler, HelixRichStructuresPreferCG) {
    const auto s = parse_dot_bracket("((((((....))))))..((((((....))))))");
    const auto pf = partition_function(params(), s);
    std::size_t cg = 0, paired = 0;
    for (const auto& x : sample_ensemble(params(), pf, 10000, 31)) {
        for (const Arc& a : s.arcs()) {
            const PairType t = pair_type(at(x.sequence, a.i), at(x.sequence, a.j));
            cg += t == PairType::CG || t == PairType::GC;
            ++paired;
        }
    }
    EXPECT_GT(static_cast<double>(cg) / static_cast<double>(paired), 0.5);
}

TEST(Sampler, ChiSquareAgainstExactDistribution) {
    for (const std::string& db : testing_support::small_corpus()) {
        if (db.size() > 9) continue;
        std::unordered_map<std::uint64_t, std::size_t> slot;
        std::vector<double> probs;
        const double lq = oracle::log_q(params(), db);
        oracle::for_each_sequence(params(), db, [&](const Sequence& q, int e) {
            slot[testing_support::encode(q)] = probs.size();
            probs.push_back(std::exp(oracle::boltzmann_exponent(params(), e) - lq));
        });
        const auto pf = partition_function(params(), parse_dot_bracket(db));
        std::vector<std::size_t> counts(probs.size(), 0);
        const std::size_t draws = 200000;
        for (const auto& x : sample_ensemble(params(), pf, draws, 2718)) ++counts[slot.at(testing_support::encode(x.sequence))];
        const auto gof = testing_support::chi_square(probs, counts);
        EXPECT_GT(gof.p_value, 0.01) << db << " chi2=" << gof.statistic << " dof=" << gof.dof;
        const double tv = testing_support::total_variation(probs, counts);
        EXPECT_LT(tv, 1.5 * testing_support::expected_total_variation(probs, draws) + 0.005) << db;
    }
}

TEST(Sampler, PatternMarginalsWithinThreeStandardErrors) {
    const auto s = parse_dot_bracket("..((..((....))..((...))..)).(...)..");
    const auto pf = partition_function(params(), s);
    const std::size_t n = 20000;
    const auto draws = sample_ensemble(params(), pf, n, 55);
    PatternEvaluator eval(params(), s);
    int checked = 0;
    for (int i : {1, 3, 7, 9, 15, 24, 30}) {
        for (const char* pat : {"G", "C", "GC", "AA", "GAA"}) {
            const Sequence p = parse_sequence(pat);
            if (i + static_cast<int>(p.size()) - 1 > s.size()) continue;
            const double prob = eval.probability(PatternConstraint::pattern(s.size(), i, p));
            std::size_t hits = 0;
            for (const auto& x : draws) hits += std::equal(p.begin(), p.end(), x.sequence.begin() + (i - 1));
            const double se = std::sqrt(prob * (1 - prob) / static_cast<double>(n));
            EXPECT_NEAR(hits / static_cast<double>(n), prob, 3 * se + 1e-12) << i << " " << pat;
            ++checked;
        }
    }
    EXPECT_GT(checked, 30);
}

TEST(Sampler, RejectsPartitionWithoutTables) {
    const auto s = parse_dot_bracket("((....))");
    const auto pf = partition_function(params(), s, PatternConstraint(s.size()), false);
    Rng rng = substream(1, 0);
    EXPECT_THROW(sample(params(), pf, rng), std::logic_error);
}

TEST(Sampler, ConstrainedSamplingHonoursTheMask) {
    const auto s = parse_dot_bracket("((....))..");
    const auto c = PatternConstraint::pattern(10, 3, parse_sequence("GAAA"));
    const auto pf = partition_function(params(), s, c);
    for (const auto& x : sample_ensemble(params(), pf, 200, 3)) {
        EXPECT_EQ(to_string(x.sequence).substr(2, 4), "GAAA");
        EXPECT_NEAR(x.log_prob, boltzmann_log(x.energy, params().rt()) - pf.log_q(), 1e-9);
    }
}
