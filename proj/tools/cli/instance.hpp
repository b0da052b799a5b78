#pragma once

// Instance files:
//
//   # comment
//   ring: GF(3)
//   vars: 4
//   P1: x1*x2 + 2*x3^2*x4
//   Q[1]: x1^2 + x1          (own variable count)
//   f: table { (0,0,0,0)=1, (1,0,0,0)=2 }
//
// Polynomial names start with an upper-case letter; function tables may use
// any identifier. A table may span several lines up to its closing brace.

#include <map>
#include <string>
#include <vector>

#include "polyrank/universality.hpp"

namespace polyrank::cli {

struct Instance {
  Ring ring;
  std::size_t vars = 0;
  std::map<std::string, MultiPoly> polys;
  std::map<std::string, FunctionTable> tables;
  std::string digest;  // FNV-1a 64 of the file text, hex

  const MultiPoly& poly(const std::string& name) const;
  const FunctionTable& table(const std::string& name) const;
  /// Comma-separated names; all on the same variable count.
  PolyCollection collection(const std::string& names) const;
};

std::string fnv1a_hex(std::string_view text);

/// Throws InputError with the line number on any malformed or unknown line.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

}  // namespace polyrank::cli
