#pragma once

#include <stdexcept>
#include <string>

namespace seqsem {

/// Malformed user input (structure, sequence or parameter text).
///
/// `line` and `column` are 1-based; 0 means "not applicable".
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, int line, int column) {
        if (line == 0 && column == 0) return what;
        std::string prefix;
        if (line > 0) prefix += "line " + std::to_string(line);
        if (column > 0) {
            if (!prefix.empty()) prefix += ", ";
            prefix += "column " + std::to_string(column);
        }
        return prefix + ": " + what;
    }

    int line_;
    int column_;
};

}  // namespace seqsem
