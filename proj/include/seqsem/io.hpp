#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "seqsem/error.hpp"
#include "seqsem/nucleotide.hpp"
#include "seqsem/structure.hpp"

namespace seqsem {

namespace detail {

inline std::string strip(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = line.find_last_not_of(" \t");
    return line.substr(b, e - b + 1);
}

/// Rethrows a column-only error with the line it came from.
template <class F>
auto with_line(int line, std::size_t offset, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        if (e.line() != 0) throw;
        std::string what = e.what();
        if (const auto colon = what.find(": "); e.column() > 0 && colon != std::string::npos) what = what.substr(colon + 2);
        throw InputError(what, line, e.column() > 0 ? e.column() + static_cast<int>(offset) : 0);
    }
}

}  // namespace detail

/// One structure: either the first dot-bracket line, or a pair list
/// starting with `length N`. Blank lines and '#' comments are skipped.
inline SecondaryStructure read_structure(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string s = detail::strip(raw);
        if (s.empty() || s[0] == '#' || s[0] == '>') continue;
        if (s.rfind("length", 0) == 0) return parse_pair_list(text);
        const std::size_t offset = raw.find_first_not_of(" \t");
        return detail::with_line(line, offset, [&] { return parse_dot_bracket(s); });
    }
    throw InputError("no structure found");
}

struct NamedSequence {
    std::string name;
    Sequence sequence;
};

/// FASTA, or bare sequences one per line. Sequence lines under one header
/// are concatenated.
inline std::vector<NamedSequence> read_fasta(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<NamedSequence> out;
    std::string raw;
    int line = 0;
    bool open = false;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string s = detail::strip(raw);
        if (s.empty() || s[0] == ';' || s[0] == '#') continue;
        if (s[0] == '>') {
            out.push_back({detail::strip(s.substr(1)), {}});
            open = true;
            continue;
        }
        const std::size_t offset = raw.find_first_not_of(" \t");
        Sequence part = detail::with_line(line, offset, [&] { return parse_sequence(s); });
        if (open) {
            out.back().sequence.insert(out.back().sequence.end(), part.begin(), part.end());
        } else {
            out.push_back({"seq" + std::to_string(out.size() + 1), std::move(part)});
        }
    }
    for (const auto& r : out)
        if (r.sequence.empty()) throw InputError("record '" + r.name + "' has no sequence");
    if (out.empty()) throw InputError("no sequence found");
    return out;
}

}  // namespace seqsem
