#pragma once

#include <string>

#include "ludics/design.hpp"

namespace ludics {

struct parse_error : ludics_error {
  parse_error(const std::string& msg, int line, int col)
      : ludics_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct ParsedFile {
  Signature signature;
  DesignPtr design;
};

// Parses a .lud file: "sig" declarations followed by one design.
ParsedFile parse_design_file(const std::string& text, bool strict_linear = true);

// Parses a bare design against an existing signature.
DesignPtr parse_design(const std::string& text, const Signature& sig,
                       bool strict_linear = true);

}  // namespace ludics
