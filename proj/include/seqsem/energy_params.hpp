#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "seqsem/error.hpp"
#include "seqsem/nucleotide.hpp"

namespace seqsem {

/// Ordered base pair (5' base, 3' base).
enum class PairType : std::uint8_t { AU, CG, GC, GU, UA, UG, Inadmissible };

inline constexpr int kPairTypes = 6;
inline constexpr std::array<std::string_view, kPairTypes> kPairNames = {"AU", "CG", "GC", "GU", "UA", "UG"};

constexpr int index(PairType p) noexcept { return static_cast<int>(p); }

constexpr PairType pair_type(Nucleotide a, Nucleotide b) noexcept {
    constexpr PairType X = PairType::Inadmissible;
    // rows: 5' base A C G U; columns: 3' base A C G U
    constexpr PairType table[4][4] = {
        {X, X, X, PairType::AU},
        {X, X, PairType::CG, X},
        {X, PairType::GC, X, PairType::GU},
        {PairType::UA, X, PairType::UG, X},
    };
    return table[index(a)][index(b)];
}

constexpr bool admissible(Nucleotide a, Nucleotide b) noexcept {
    return pair_type(a, b) != PairType::Inadmissible;
}

/// Free energy in units of 0.01 kcal/mol. Integer units keep loop sums
/// exact, so additivity and mfe comparisons never depend on summation order.
class Energy {
public:
    static constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

    constexpr Energy() = default;
    static constexpr Energy from_dcal(int dcal) noexcept { return Energy(dcal); }
    static constexpr Energy infinite() noexcept { return Energy(kInfinite); }

    constexpr int dcal() const noexcept { return value_; }
    constexpr bool is_infinite() const noexcept { return value_ >= kInfinite; }
    constexpr double kcal() const noexcept {
        return is_infinite() ? std::numeric_limits<double>::infinity() : value_ / 100.0;
    }

    friend constexpr Energy operator+(Energy a, Energy b) noexcept {
        if (a.is_infinite() || b.is_infinite()) return infinite();
        return Energy(a.value_ + b.value_);
    }
    Energy& operator+=(Energy o) noexcept { return *this = *this + o; }
    friend constexpr auto operator<=>(Energy, Energy) = default;

private:
    constexpr explicit Energy(int v) : value_(v) {}
    int value_ = 0;
};

/// kcal/(mol K)
inline constexpr double kGasConstant = 1.98717e-3;

/// Nearest-neighbor tables. Loaded from the text format documented in
/// docs/parameter-format.md; every key is mandatory.
struct EnergyParams {
    static constexpr int kMaxTabulatedLoop = 30;

    double temperature_kelvin = 310.15;
    int multi_alpha = 0;
    int multi_beta = 0;
    int multi_gamma = 0;
    int terminal_au = 0;
    double loop_extrapolation = 0;
    int interior_asymmetry = 0;
    int interior_asymmetry_max = 0;

    std::array<std::array<int, kPairTypes>, kPairTypes> stack{};
    std::array<int, kMaxTabulatedLoop + 1> hairpin{};
    std::array<int, kMaxTabulatedLoop + 1> bulge{};
    std::array<int, kMaxTabulatedLoop + 1> interior{};
    std::array<std::array<std::array<int, 4>, 4>, kPairTypes> mismatch_hairpin{};
    std::array<std::array<std::array<int, 4>, 4>, kPairTypes> mismatch_interior{};
    /// Bonus for hairpins of 3 (index 0) or 4 (index 1) unpaired bases keyed
    /// by the base-4 code of closing base, loop bases, closing base.
    std::array<std::vector<int>, 2> special_hairpin{std::vector<int>(1 << 10, 0), std::vector<int>(1 << 12, 0)};
    std::map<std::string, int> special_hairpin_entries;

    /// FNV-1a 64 of the source text, "fnv1a64:<hex>".
    std::string checksum;

    double rt() const noexcept { return kGasConstant * temperature_kelvin; }

    int hairpin_initiation(int k) const { return extrapolated(hairpin, k); }
    int bulge_initiation(int k) const { return extrapolated(bulge, k); }
    int interior_initiation(int k) const { return extrapolated(interior, k); }

private:
    int extrapolated(const std::array<int, kMaxTabulatedLoop + 1>& table, int k) const {
        if (k <= kMaxTabulatedLoop) return table[static_cast<std::size_t>(k)];
        return table[kMaxTabulatedLoop] +
               static_cast<int>(std::lround(100.0 * loop_extrapolation * std::log(double(k) / kMaxTabulatedLoop)));
    }
};

/// Boltzmann exponent -E/RT of a finite energy.
inline double boltzmann_log(Energy e, double rt) noexcept {
    if (e.is_infinite()) return -std::numeric_limits<double>::infinity();
    return -(e.dcal() / 100.0) / rt;
}

inline std::string fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline int to_dcal(const std::string& token, int line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) throw InputError("not a number: '" + token + "'", line);
    return static_cast<int>(std::lround(v * 100.0));
}

inline double to_double(const std::string& token, int line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) throw InputError("not a number: '" + token + "'", line);
    return v;
}

inline int pair_index(const std::string& token, int line) {
    for (int p = 0; p < kPairTypes; ++p)
        if (kPairNames[static_cast<std::size_t>(p)] == token) return p;
    throw InputError("unknown pair type '" + token + "'", line);
}

inline int nucleotide_index(const std::string& token, int line) {
    if (token.size() == 1)
        if (auto x = nucleotide_from_char(token[0]); x && token[0] != 'T' && token[0] != 't')
            return index(*x);
    throw InputError("unknown nucleotide '" + token + "'", line);
}

}  // namespace detail

/// Parses a parameter file. Missing, duplicate or unknown entries are errors.
inline EnergyParams parse_energy_params(std::string_view text) {
    using detail::to_dcal;
    EnergyParams p;
    p.checksum = fnv1a64(text);

    std::istringstream in{std::string(text)};
    std::string raw;
    std::string section;
    int line_no = 0;
    bool have_format = false;
    std::map<std::string, bool> scalars = {
        {"temperature_kelvin", false}, {"multi_alpha", false},        {"multi_beta", false},
        {"multi_gamma", false},        {"terminal_au", false},        {"loop_extrapolation", false},
        {"interior_asymmetry", false}, {"interior_asymmetry_max", false}};
    std::array<bool, kPairTypes> stack_rows{};
    std::array<bool, EnergyParams::kMaxTabulatedLoop + 1> hairpin_rows{}, bulge_rows{}, interior_rows{};
    std::array<std::array<bool, 4>, kPairTypes> mh_rows{}, mi_rows{};
    std::map<std::string, bool> seen_sections;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok[0].front() == '[') {
            if (tok.size() != 1 || tok[0].back() != ']') throw InputError("malformed section header", line_no);
            section = tok[0].substr(1, tok[0].size() - 2);
            static const std::array<std::string_view, 7> known = {
                "stack", "hairpin", "bulge", "interior", "mismatch_hairpin", "mismatch_interior", "special_hairpin"};
            if (std::find(known.begin(), known.end(), section) == known.end())
                throw InputError("unknown section [" + section + "]", line_no);
            if (seen_sections[section]) throw InputError("duplicate section [" + section + "]", line_no);
            seen_sections[section] = true;
            continue;
        }

        if (section.empty()) {
            if (tok[0] == "format") {
                if (tok.size() != 3 || tok[1] != "seqsem-params" || tok[2] != "1")
                    throw InputError("unsupported format line (expected 'format seqsem-params 1')", line_no);
                have_format = true;
                continue;
            }
            if (tok.size() != 2) throw InputError("expected 'key value'", line_no);
            auto it = scalars.find(tok[0]);
            if (it == scalars.end()) throw InputError("unknown key '" + tok[0] + "'", line_no);
            if (it->second) throw InputError("duplicate key '" + tok[0] + "'", line_no);
            it->second = true;
            const std::string& key = tok[0];
            if (key == "temperature_kelvin") p.temperature_kelvin = detail::to_double(tok[1], line_no);
            else if (key == "multi_alpha") p.multi_alpha = to_dcal(tok[1], line_no);
            else if (key == "multi_beta") p.multi_beta = to_dcal(tok[1], line_no);
            else if (key == "multi_gamma") p.multi_gamma = to_dcal(tok[1], line_no);
            else if (key == "terminal_au") p.terminal_au = to_dcal(tok[1], line_no);
            else if (key == "loop_extrapolation") p.loop_extrapolation = detail::to_double(tok[1], line_no);
            else if (key == "interior_asymmetry") p.interior_asymmetry = to_dcal(tok[1], line_no);
            else if (key == "interior_asymmetry_max") p.interior_asymmetry_max = to_dcal(tok[1], line_no);
            continue;
        }

        if (section == "stack") {
            if (tok.size() != 1 + kPairTypes) throw InputError("stack row needs a pair and 6 values", line_no);
            const int row = detail::pair_index(tok[0], line_no);
            if (stack_rows[static_cast<std::size_t>(row)]) throw InputError("duplicate stack row", line_no);
            stack_rows[static_cast<std::size_t>(row)] = true;
            for (int c = 0; c < kPairTypes; ++c)
                p.stack[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] =
                    to_dcal(tok[static_cast<std::size_t>(c) + 1], line_no);
        } else if (section == "hairpin" || section == "bulge" || section == "interior") {
            if (tok.size() != 2) throw InputError("expected 'size value'", line_no);
            int k = 0;
            try {
                k = std::stoi(tok[0]);
            } catch (const std::exception&) {
                throw InputError("bad loop size '" + tok[0] + "'", line_no);
            }
            const int lo = section == "hairpin" ? 3 : section == "bulge" ? 1 : 2;
            if (k < lo || k > EnergyParams::kMaxTabulatedLoop)
                throw InputError("loop size out of range [" + std::to_string(lo) + ",30]", line_no);
            auto& seen = section == "hairpin" ? hairpin_rows : section == "bulge" ? bulge_rows : interior_rows;
            auto& table = section == "hairpin" ? p.hairpin : section == "bulge" ? p.bulge : p.interior;
            if (seen[static_cast<std::size_t>(k)]) throw InputError("duplicate loop size", line_no);
            seen[static_cast<std::size_t>(k)] = true;
            table[static_cast<std::size_t>(k)] = to_dcal(tok[1], line_no);
        } else if (section == "mismatch_hairpin" || section == "mismatch_interior") {
            if (tok.size() != 6) throw InputError("mismatch row needs pair, base and 4 values", line_no);
            const int pt = detail::pair_index(tok[0], line_no);
            const int x = detail::nucleotide_index(tok[1], line_no);
            auto& seen = section == "mismatch_hairpin" ? mh_rows : mi_rows;
            auto& table = section == "mismatch_hairpin" ? p.mismatch_hairpin : p.mismatch_interior;
            if (seen[static_cast<std::size_t>(pt)][static_cast<std::size_t>(x)])
                throw InputError("duplicate mismatch row", line_no);
            seen[static_cast<std::size_t>(pt)][static_cast<std::size_t>(x)] = true;
            for (int y = 0; y < 4; ++y)
                table[static_cast<std::size_t>(pt)][static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                    to_dcal(tok[static_cast<std::size_t>(y) + 2], line_no);
        } else if (section == "special_hairpin") {
            if (tok.size() != 2) throw InputError("expected 'SEQUENCE value'", line_no);
            const std::string& loop = tok[0];
            if (loop.size() != 5 && loop.size() != 6)
                throw InputError("special hairpin must list closing pair plus 3 or 4 bases", line_no);
            unsigned code = 0;
            std::string canonical;
            for (char c : loop) {
                auto x = nucleotide_from_char(c);
                if (!x || c == 'T' || c == 't') throw InputError("bad base in special hairpin", line_no);
                code = code * 4 + static_cast<unsigned>(index(*x));
                canonical.push_back(to_char(*x));
            }
            if (!admissible(*nucleotide_from_char(loop.front()), *nucleotide_from_char(loop.back())))
                throw InputError("special hairpin closing pair is not a base pair", line_no);
            if (p.special_hairpin_entries.count(canonical)) throw InputError("duplicate special hairpin", line_no);
            const int bonus = to_dcal(tok[1], line_no);
            p.special_hairpin_entries[canonical] = bonus;
            p.special_hairpin[loop.size() - 5][code] = bonus;
        }
    }

    if (!have_format) throw InputError("missing 'format seqsem-params 1' line");
    for (const auto& [key, seen] : scalars)
        if (!seen) throw InputError("missing key '" + key + "'");
    for (std::string_view s : {"stack", "hairpin", "bulge", "interior", "mismatch_hairpin", "mismatch_interior",
                               "special_hairpin"})
        if (!seen_sections[std::string(s)]) throw InputError("missing section [" + std::string(s) + "]");
    for (int r = 0; r < kPairTypes; ++r)
        if (!stack_rows[static_cast<std::size_t>(r)])
            throw InputError("missing stack row " + std::string(kPairNames[static_cast<std::size_t>(r)]));
    for (int k = 3; k <= EnergyParams::kMaxTabulatedLoop; ++k)
        if (!hairpin_rows[static_cast<std::size_t>(k)]) throw InputError("missing hairpin size " + std::to_string(k));
    for (int k = 1; k <= EnergyParams::kMaxTabulatedLoop; ++k)
        if (!bulge_rows[static_cast<std::size_t>(k)]) throw InputError("missing bulge size " + std::to_string(k));
    for (int k = 2; k <= EnergyParams::kMaxTabulatedLoop; ++k)
        if (!interior_rows[static_cast<std::size_t>(k)]) throw InputError("missing interior size " + std::to_string(k));
    for (int pt = 0; pt < kPairTypes; ++pt)
        for (int x = 0; x < 4; ++x) {
            if (!mh_rows[static_cast<std::size_t>(pt)][static_cast<std::size_t>(x)])
                throw InputError("missing mismatch_hairpin row");
            if (!mi_rows[static_cast<std::size_t>(pt)][static_cast<std::size_t>(x)])
                throw InputError("missing mismatch_interior row");
        }
    if (!(p.temperature_kelvin > 0)) throw InputError("temperature_kelvin must be positive");
    return p;
}

inline EnergyParams load_energy_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open parameter file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_energy_params(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace seqsem
