#pragma once

#include <algorithm>
#include <compare>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "seqsem/error.hpp"

namespace seqsem {

/// Base pair between 1-based positions i < j.
struct Arc {
    int i = 0;
    int j = 0;

    friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

/// Smallest admissible j - i is kMinArcSpan (a hairpin needs three unpaired bases).
inline constexpr int kMinArcSpan = 4;

/// A pseudoknot-free structure on n backbone positions.
///
/// Always valid: every position pairs at most once, arcs do not cross and
/// satisfy j - i > 3. Arcs are kept sorted by left endpoint.
class SecondaryStructure {
public:
    SecondaryStructure() = default;

    explicit SecondaryStructure(int n) : n_(n), partner_(static_cast<std::size_t>(n) + 1, 0) {
        if (n < 0) throw InputError("structure length must be non-negative");
    }

    SecondaryStructure(int n, std::vector<Arc> arcs) : SecondaryStructure(n) {
        std::sort(arcs.begin(), arcs.end());
        for (const Arc& a : arcs) {
            if (a.i < 1 || a.j > n || a.i >= a.j)
                throw InputError("arc (" + std::to_string(a.i) + "," + std::to_string(a.j) +
                                 ") is out of range for length " + std::to_string(n));
            if (a.j - a.i < kMinArcSpan)
                throw InputError("arc (" + std::to_string(a.i) + "," + std::to_string(a.j) +
                                 ") encloses fewer than 3 unpaired bases");
            if (partner_[a.i] != 0 || partner_[a.j] != 0)
                throw InputError("position paired twice in arc (" + std::to_string(a.i) + "," +
                                 std::to_string(a.j) + ")");
            partner_[a.i] = a.j;
            partner_[a.j] = a.i;
        }
        // Non-crossing iff the arcs nest like parentheses.
        std::vector<int> open;
        for (int pos = 1; pos <= n; ++pos) {
            const int q = partner_[pos];
            if (q > pos) {
                open.push_back(pos);
            } else if (q != 0) {
                if (open.empty() || open.back() != q)
                    throw InputError("arcs cross at position " + std::to_string(pos));
                open.pop_back();
            }
        }
        arcs_ = std::move(arcs);
    }

    int size() const noexcept { return n_; }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    /// Partner of a 1-based position, or 0 when unpaired.
    int partner(int pos) const { return partner_[static_cast<std::size_t>(pos)]; }
    bool paired(int pos) const { return partner(pos) != 0; }

    friend bool operator==(const SecondaryStructure& a, const SecondaryStructure& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<int> partner_ = {0};
};

/// Parses '.', '(' and ')'. Errors carry the offending column.
inline SecondaryStructure parse_dot_bracket(std::string_view text) {
    std::vector<Arc> arcs;
    std::vector<int> open;
    const int n = static_cast<int>(text.size());
    for (int pos = 1; pos <= n; ++pos) {
        const char c = text[static_cast<std::size_t>(pos - 1)];
        switch (c) {
            case '.': break;
            case '(': open.push_back(pos); break;
            case ')': {
                if (open.empty()) throw InputError("unmatched ')'", 0, pos);
                const int i = open.back();
                open.pop_back();
                if (pos - i < kMinArcSpan)
                    throw InputError("hairpin too short: pair (" + std::to_string(i) + "," +
                                         std::to_string(pos) + ") needs j - i > 3",
                                     0, pos);
                arcs.push_back({i, pos});
                break;
            }
            default:
                throw InputError(std::string("illegal character '") + c + "' in dot-bracket", 0, pos);
        }
    }
    if (!open.empty()) throw InputError("unmatched '('", 0, open.back());
    return SecondaryStructure(n, std::move(arcs));
}

inline std::string to_dot_bracket(const SecondaryStructure& s) {
    std::string out(static_cast<std::size_t>(s.size()), '.');
    for (const Arc& a : s.arcs()) {
        out[static_cast<std::size_t>(a.i - 1)] = '(';
        out[static_cast<std::size_t>(a.j - 1)] = ')';
    }
    return out;
}

/// Pair-list form: a `length N` line followed by one `i j` line per arc.
/// Blank lines and lines starting with '#' are ignored.
inline SecondaryStructure parse_pair_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<Arc> arcs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (n < 0) {
            std::string key;
            if (!(fields >> key >> n) || key != "length" || n < 0)
                throw InputError("expected 'length N' header", line_no);
            continue;
        }
        Arc a;
        std::string rest;
        if (!(fields >> a.i >> a.j) || (fields >> rest))
            throw InputError("expected two integers 'i j'", line_no);
        arcs.push_back(a);
    }
    if (n < 0) throw InputError("missing 'length N' header");
    return SecondaryStructure(n, std::move(arcs));
}

inline std::string to_pair_list(const SecondaryStructure& s) {
    std::string out = "length " + std::to_string(s.size()) + "\n";
    for (const Arc& a : s.arcs()) out += std::to_string(a.i) + " " + std::to_string(a.j) + "\n";
    return out;
}

}  // namespace seqsem
