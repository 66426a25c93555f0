#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace seqsem;
using testing_support::params;

namespace {

Sequence random_sequence(std::mt19937_64& rng, int n) {
    Sequence s(static_cast<std::size_t>(n));
    for (auto& x : s) x = nucleotide_at(static_cast<int>(rng() & 3));
    return s;
}

/// Random sequence that satisfies every pair of `s`.
Sequence compatible_sequence(std::mt19937_64& rng, const SecondaryStructure& s) {
    static const char* pairs[] = {"AU", "CG", "GC", "GU", "UA", "UG"};
    Sequence seq = random_sequence(rng, s.size());
    for (const Arc& a : s.arcs()) {
        const char* p = pairs[rng() % 6];
        seq[static_cast<std::size_t>(a.i - 1)] = *nucleotide_from_char(p[0]);
        seq[static_cast<std::size_t>(a.j - 1)] = *nucleotide_from_char(p[1]);
    }
    return seq;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(PairType, Classification) {
    EXPECT_EQ(pair_type(Nucleotide::G, Nucleotide::C), PairType::GC);
    EXPECT_EQ(pair_type(Nucleotide::G, Nucleotide::U), PairType::GU);
    EXPECT_EQ(pair_type(Nucleotide::U, Nucleotide::G), PairType::UG);
    EXPECT_EQ(pair_type(Nucleotide::A, Nucleotide::G), PairType::Inadmissible);
    int admissible_count = 0;
    for (Nucleotide a : kNucleotides)
        for (Nucleotide b : kNucleotides) admissible_count += admissible(a, b);
    EXPECT_EQ(admissible_count, 6);
}

TEST(Params, DefaultsAreTheShippedFile) {
    EXPECT_EQ(std::string(kDefaultParameterText), read_file(std::string(SEQSEM_SOURCE_DIR) + "/params/default.par"));
    const EnergyParams& p = params();
    EXPECT_EQ(p.multi_alpha, 340);
    EXPECT_EQ(p.multi_beta, 40);
    EXPECT_EQ(p.multi_gamma, 0);
    EXPECT_NEAR(p.rt(), 0.6163, 1e-4);
    EXPECT_EQ(p.checksum, fnv1a64(kDefaultParameterText));
    EXPECT_EQ(p.checksum.rfind("fnv1a64:", 0), 0u);
}

TEST(Params, MissingUnknownAndDuplicateKeysAreErrors) {
    const std::string text(kDefaultParameterText);
    auto without = [&](const std::string& line) {
        std::string t = text;
        t.erase(t.find(line), line.size() + 1);
        return t;
    };
    EXPECT_THROW(parse_energy_params(without("multi_beta 0.4")), InputError);
    EXPECT_THROW(parse_energy_params(without("format seqsem-params 1")), InputError);
    EXPECT_NO_THROW(parse_energy_params(without("GGGGAC -3.00")));
}

TEST(Params, ReportsTheOffendingLine) {
    std::string text(kDefaultParameterText);
    text.insert(text.find("multi_alpha"), "bogus_key 1.0\n");
    try {
        parse_energy_params(text);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_GT(e.line(), 0);
        EXPECT_NE(std::string(e.what()).find("bogus_key"), std::string::npos);
    }
    std::string dup(kDefaultParameterText);
    dup.insert(dup.find("multi_alpha"), "multi_gamma 0.1\n");
    EXPECT_THROW(parse_energy_params(dup), InputError);
}

TEST(Params, ExtrapolatesBeyondTheTable) {
    const EnergyParams& p = params();
    EXPECT_EQ(p.hairpin_initiation(30), p.hairpin[30]);
    EXPECT_EQ(p.hairpin_initiation(60), p.hairpin[30] + static_cast<int>(std::lround(107.856 * std::log(2.0))));
    EXPECT_GT(p.interior_initiation(45), p.interior_initiation(30));
}

TEST(LoopEnergy, MultiloopFormula) {
    const EnergyParams& p = params();
    EXPECT_DOUBLE_EQ(multi_loop_energy(p, 3, 2).kcal(), 4.6);
}

TEST(LoopEnergy, ExteriorIsZero) {
    const auto d = decompose(parse_dot_bracket("..(...)..(....)"));
    for (const char* s : {"AAAAAAAAAAAAAAA", "GCGCGUAUAUGCGCG", "UUUUUUUUUUUUUUU"})
        EXPECT_EQ(loop_energy(params(), parse_sequence(s), d.exterior()).dcal(), 0);
}

TEST(LoopEnergy, HelixReadsTheStackTable) {
    const EnergyParams& p = params();
    const auto d = decompose(parse_dot_bracket("((....))"));
    const auto seq = parse_sequence("GGAAAACC");
    EXPECT_EQ(loop_energy(p, seq, d.loop(1)).dcal(), p.stack[index(PairType::GC)][index(PairType::GC)]);
    EXPECT_DOUBLE_EQ(loop_energy(p, seq, d.loop(1)).kcal(), -3.3);
}

TEST(StructureEnergy, HandSumOfTwoLoops) {
    const EnergyParams& p = params();
    const auto s = parse_dot_bracket("((....))");
    const auto seq = parse_sequence("GGGAAACC");
    // Stack G1-C8 on G2-C7; hairpin G2..C7 = GGAAAC, which is a listed special loop.
    const int stack = p.stack[index(PairType::GC)][index(PairType::GC)];
    const int hairpin = p.hairpin[4] + p.mismatch_hairpin[index(PairType::GC)][index(Nucleotide::G)][index(Nucleotide::A)] +
                        p.special_hairpin_entries.at("GGAAAC");
    EXPECT_EQ(structure_energy(p, seq, s).dcal(), stack + hairpin);
    EXPECT_EQ(structure_energy(p, seq, s).dcal(), oracle::energy(p, seq, "((....))"));
}

TEST(StructureEnergy, InadmissiblePairIsInfinite) {
    EXPECT_TRUE(structure_energy(params(), parse_sequence("GAGAAACC"), parse_dot_bracket("((....))")).is_infinite());
    EXPECT_EQ(structure_energy(params(), parse_sequence("GAGAAACC"), parse_dot_bracket("........")).dcal(), 0);
}

TEST(StructureEnergy, LengthMismatchThrows) {
    EXPECT_THROW(structure_energy(params(), parse_sequence("GGGAAACCC"), parse_dot_bracket("((....))")),
                 std::invalid_argument);
}

TEST(StructureEnergy, AdditiveAndEqualToIndependentEvaluator) {
    const EnergyParams& p = params();
    std::mt19937_64 rng(5);
    for (int n = 5; n <= 12; ++n) {
        for (const std::string& db : oracle::all_structures(n)) {
            const auto s = parse_dot_bracket(db);
            const auto d = decompose(s);
            for (int k = 0; k < 4; ++k) {
                const Sequence seq = k == 0 ? random_sequence(rng, n) : compatible_sequence(rng, s);
                Energy sum = Energy::from_dcal(0);
                for (const Loop& L : d.loops()) sum += loop_energy(p, seq, L);
                const Energy total = structure_energy(p, seq, d);
                EXPECT_EQ(total, sum) << db;
                const int o = oracle::energy(p, seq, db);
                if (o >= oracle::kInf) {
                    EXPECT_TRUE(total.is_infinite()) << db << " " << to_string(seq);
                } else {
                    EXPECT_EQ(total.dcal(), o) << db << " " << to_string(seq);
                }
            }
        }
    }
}

TEST(StructureEnergy, LongLoopsMatchIndependentEvaluator) {
    const EnergyParams& p = params();
    std::mt19937_64 rng(17);
    for (const char* db : {"(" "....................................." ")",
                           "((" "......................................" "(....)" "..)" ")",
                           "(((....).........................................((....)).))"}) {
        const auto s = parse_dot_bracket(db);
        for (int k = 0; k < 20; ++k) {
            const Sequence seq = compatible_sequence(rng, s);
            EXPECT_EQ(structure_energy(p, seq, s).dcal(), oracle::energy(p, seq, db)) << db;
        }
    }
}

TEST(LoopEnergy, DependsOnlyOnRelevantPositions) {
    const EnergyParams& p = params();
    std::mt19937_64 rng(99);
    for (const char* db : {"(...)", "(....)", "(.........)", "((....))", "(.(....)...)", "(..(....))", "(...(....)..(....).)",
                           "((....)(....))"}) {
        const auto s = parse_dot_bracket(db);
        const auto d = decompose(s);
        for (const Loop& L : d.loops()) {
            if (!L.closing) continue;
            std::vector<bool> relevant(static_cast<std::size_t>(s.size()) + 1, false);
            relevant[static_cast<std::size_t>(L.closing->i)] = relevant[static_cast<std::size_t>(L.closing->j)] = true;
            for (int pos : energy_relevant_positions(L)) relevant[static_cast<std::size_t>(pos)] = true;
            for (int trial = 0; trial < 50; ++trial) {
                Sequence a = compatible_sequence(rng, s);
                Sequence b = a;
                for (int pos = 1; pos <= s.size(); ++pos)
                    if (!relevant[static_cast<std::size_t>(pos)]) b[static_cast<std::size_t>(pos - 1)] = nucleotide_at(static_cast<int>(rng() & 3));
                EXPECT_EQ(loop_energy(p, a, L), loop_energy(p, b, L)) << db;
            }
        }
    }
}

TEST(LoopEnergy, RelevantPositionCounts) {
    auto count = [](const char* db, std::size_t loop) {
        return energy_relevant_positions(decompose(parse_dot_bracket(db)).loop(loop)).size();
    };
    EXPECT_EQ(count("(...)", 1), 3u);
    EXPECT_EQ(count("(....)", 1), 4u);
    EXPECT_EQ(count("(.......)", 1), 2u);
    EXPECT_EQ(count("((....))", 1), 2u);
    EXPECT_EQ(count("(..(....)..)", 1), 6u);
    EXPECT_EQ(count("(.(....)..)", 1), 5u);
    EXPECT_EQ(count("(.(....).)", 1), 4u);  // 1x1: mismatches coincide
    EXPECT_EQ(count("((....)(....))", 1), 4u);
}

TEST(LoopEnergy, SwappingGCForCGCanChangeTheEnergy) {
    const EnergyParams& p = params();
    const auto s = parse_dot_bracket("(((....)))");
    bool differs = false;
    for (const char* inner : {"GAAAAC", "GUUCGC", "GCAAAC"}) {
        std::string a = std::string("GG") + inner + "CC", b = std::string("GC") + inner + "GC";
        differs |= structure_energy(p, parse_sequence(a), s) != structure_energy(p, parse_sequence(b), s);
    }
    EXPECT_TRUE(differs);
}
