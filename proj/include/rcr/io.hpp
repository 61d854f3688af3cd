#pragma once

#include "rcr/core.hpp"

#include <string>

namespace rcr {

class ParseError : public Error {
public:
    ParseError(const std::string &msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// Text format:
//   signature: E/2, R/6
//   universe: a, b, c        (optional; fixes element order and allows isolated elements)
//   E(a, b)
// '#' starts a comment.
Structure parse_structure(const std::string &text, bool pad_universe = false);
Structure parse_structure_json(const std::string &text, bool pad_universe = false);
// Picks the JSON reader for *.json paths.
Structure load_structure(const std::string &path, bool pad_universe = false);

std::string serialize(const Structure &A);
std::string to_json(const Structure &A);

std::string read_file(const std::string &path);

} // namespace rcr
