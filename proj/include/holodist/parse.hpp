#pragma once

// Text syntax for germs:
//   expr   := ['+'|'-'] term (('+'|'-') term)*  ['|' op]*
//   term   := factor ('*' factor)*
//   factor := number | 'i' | 'tau'['^'int] | 't'['^'int] | 'tb'['^'int]
//           | 'u(' expr ',' int ')' | 'd(' int ',' int ')' | '(' expr ')'
//   op     := dt | dtb | t | tb | t* | tb* | conj | loc
// u(beta,p) with beta outside [-1,0) is renormalized as in make_u.

#include <cstddef>
#include <string>

#include "holodist/germ.hpp"

namespace holodist {

class ParseError : public KernelError {
 public:
  ParseError(const std::string& msg, size_t begin, size_t end)
      : KernelError(msg + " (columns " + std::to_string(begin + 1) + "-" + std::to_string(end + 1) + ")"),
        begin_(begin),
        end_(end) {}
  /// Half-open span [begin, end) in the source text.
  size_t begin() const { return begin_; }
  size_t end() const { return end_; }

 private:
  size_t begin_;
  size_t end_;
};

Germ parse_germ(const std::string& text);
/// A germ-free expression over i and tau.
Scalar parse_scalar(const std::string& text);

}  // namespace holodist
