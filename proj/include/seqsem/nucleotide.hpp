#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqsem/error.hpp"

namespace seqsem {

/// RNA base. The numeric encoding is part of the public contract: pattern
/// codes, table indices and allowed-set bitmasks all use it.
enum class Nucleotide : std::uint8_t { A = 0, C = 1, G = 2, U = 3 };

inline constexpr std::array<Nucleotide, 4> kNucleotides = {Nucleotide::A, Nucleotide::C,
                                                           Nucleotide::G, Nucleotide::U};

constexpr int index(Nucleotide x) noexcept { return static_cast<int>(x); }
constexpr Nucleotide nucleotide_at(int code) noexcept { return static_cast<Nucleotide>(code & 3); }

constexpr char to_char(Nucleotide x) noexcept { return "ACGU"[index(x)]; }

/// Accepts upper or lower case; T is read as U.
constexpr std::optional<Nucleotide> nucleotide_from_char(char c) noexcept {
    switch (c) {
        case 'A': case 'a': return Nucleotide::A;
        case 'C': case 'c': return Nucleotide::C;
        case 'G': case 'g': return Nucleotide::G;
        case 'U': case 'u': case 'T': case 't': return Nucleotide::U;
        default: return std::nullopt;
    }
}

using Sequence = std::vector<Nucleotide>;

/// 1-based access.
inline Nucleotide at(const Sequence& seq, int pos) { return seq[static_cast<std::size_t>(pos - 1)]; }

inline Sequence parse_sequence(std::string_view text) {
    Sequence seq;
    seq.reserve(text.size());
    int column = 0;
    for (char c : text) {
        ++column;
        auto x = nucleotide_from_char(c);
        if (!x) throw InputError(std::string("illegal nucleotide '") + c + "'", 0, column);
        seq.push_back(*x);
    }
    if (seq.empty()) throw InputError("empty sequence");
    return seq;
}

inline std::string to_string(const Sequence& seq) {
    std::string s;
    s.reserve(seq.size());
    for (auto x : seq) s.push_back(to_char(x));
    return s;
}

}  // namespace seqsem
