#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gpa/loops.hpp"

namespace gpa {

struct TangleError : std::runtime_error {
  TangleError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

struct TangleRow {
  enum class Kind { Cup, Cap, Box };
  Kind kind = Kind::Cup;
  int pos = 0;    // string gap counted from the left, starting at 0
  int box = -1;   // input index for Box rows
  int down = 0;   // strings a Box consumes from below
  int line = 0, col = 0;
  bool operator==(const TangleRow& o) const {
    return kind == o.kind && pos == o.pos && box == o.box && down == o.down;
  }
};

struct BoxSignature {
  int n = 0;
  Sign sign = Sign::Plus;
  bool operator==(const BoxSignature&) const = default;
};

// A planar tangle read by a horizontal line moving bottom to top.  The
// output disc has `down` strings on its bottom edge and 2n - down on its
// top edge; the starred region is on the left.  A box with `down` = k eats
// k strings and emits 2n_i - k.
struct Tangle {
  int n = 0;
  Sign sign = Sign::Plus;
  int down = 0;
  std::vector<BoxSignature> inputs;
  std::vector<TangleRow> rows;
  bool operator==(const Tangle& o) const {
    return n == o.n && sign == o.sign && down == o.down && inputs == o.inputs && rows == o.rows;
  }
};

Tangle parse_tangle(const std::string& text);
void validate(const Tangle& t);  // bookkeeping and shading
std::string format_tangle(const Tangle& t);
Tangle adjoint_tangle(const Tangle& t);

struct Evaluation {
  Element value;
  long states = 0;  // compatible states with a nonzero contribution
};

Evaluation evaluate_counted(const Model& m, const Tangle& t, const std::vector<Element>& inputs);
Element evaluate(const Model& m, const Tangle& t, const std::vector<Element>& inputs);

// Sweep presentations of the standard tangles.
namespace tangles {
Tangle identity(int n, Sign s);
Tangle multiplication(int n, Sign s);
Tangle jones(int i, int level);        // E_i in G_{level,+}
Tangle right_cap(int n, Sign s);       // G_{n,s} -> G_{n-1,s}
Tangle right_include(int n, Sign s);   // G_{n,s} -> G_{n+1,s}
Tangle left_cap(int n, Sign s);        // G_{n,s} -> G_{n-1,-s}
Tangle left_string(int n, Sign s);     // G_{n,s} -> G_{n+1,-s}
Tangle rotation(int n, Sign s);
Tangle alpha(int j, int n);
Tangle beta(int j, int n);
Tangle circle();
Tangle shift(int s, int n, Sign sign);  // add s (or s+1) strings on the left
}  // namespace tangles

}  // namespace gpa
