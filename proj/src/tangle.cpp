#include "gpa/tangle.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace gpa {

namespace {

struct Token {
  enum class Kind { Word, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      Token t{Token::Kind::Word, "", line, col};
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t{Token::Kind::Int, "", line, col};
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
    } else if (std::string("(),+-[]{};").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw TangleError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Tangle parse() {
    Tangle t;
    word("tangle");
    auto [n, s] = signature();
    t.n = n;
    t.sign = s;
    if (peek_word("down")) {
      next();
      t.down = integer();
    }
    if (peek_word("inputs")) {
      next();
      punct("[");
      do {
        auto [ni, si] = signature();
        t.inputs.push_back({ni, si});
      } while (accept(","));
      punct("]");
    }
    punct("{");
    while (!peek_punct("}")) {
      t.rows.push_back(row());
      if (!accept(";")) break;
    }
    punct("}");
    if (cur().kind != Token::Kind::End) fail("trailing input after '}'");
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw TangleError(msg, cur().line, cur().col);
  }
  std::string describe() const {
    return cur().kind == Token::Kind::End ? "end of input" : "'" + cur().text + "'";
  }
  bool peek_word(const char* w) const {
    return cur().kind == Token::Kind::Word && cur().text == w;
  }
  bool peek_punct(const char* p) const {
    return cur().kind == Token::Kind::Punct && cur().text == p;
  }
  bool accept(const char* p) {
    if (!peek_punct(p)) return false;
    next();
    return true;
  }
  void word(const char* w) {
    if (!peek_word(w)) fail(std::string("expected '") + w + "', found " + describe());
    next();
  }
  void punct(const char* p) {
    if (!peek_punct(p)) fail(std::string("expected '") + p + "', found " + describe());
    next();
  }
  int integer() {
    if (cur().kind != Token::Kind::Int) fail("expected an integer, found " + describe());
    if (cur().text.size() > 6) fail("integer too large");
    return std::stoi(next().text);
  }
  std::pair<int, Sign> signature() {
    punct("(");
    int n = integer();
    punct(",");
    Sign s;
    if (accept("+")) {
      s = Sign::Plus;
    } else if (accept("-")) {
      s = Sign::Minus;
    } else {
      fail("expected '+' or '-', found " + describe());
    }
    punct(")");
    return {n, s};
  }
  TangleRow row() {
    TangleRow r;
    r.line = cur().line;
    r.col = cur().col;
    if (peek_word("cup") || peek_word("cap")) {
      r.kind = next().text == "cup" ? TangleRow::Kind::Cup : TangleRow::Kind::Cap;
      r.pos = integer();
    } else if (peek_word("box")) {
      next();
      r.kind = TangleRow::Kind::Box;
      r.box = integer();
      word("at");
      r.pos = integer();
      if (peek_word("down")) {
        next();
        r.down = integer();
      }
    } else {
      fail("expected 'cup', 'cap' or 'box', found " + describe());
    }
    return r;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

void validate(const Tangle& t) {
  auto fail = [](const std::string& msg, int line, int col) { throw TangleError(msg, line, col); };
  if (t.n < 0) fail("boundary n must be non-negative", 1, 1);
  if (t.down < 0 || t.down > 2 * t.n)
    fail("output 'down' must lie between 0 and 2n", 1, 1);
  int m = t.down;
  for (const auto& r : t.rows) {
    switch (r.kind) {
      case TangleRow::Kind::Cup:
        if (r.pos < 0 || r.pos > m)
          fail("cup " + std::to_string(r.pos) + " outside the " + std::to_string(m + 1) +
                   " gaps below it",
               r.line, r.col);
        m += 2;
        break;
      case TangleRow::Kind::Cap:
        if (r.pos < 0 || r.pos + 2 > m)
          fail("cap " + std::to_string(r.pos) + " needs strings " + std::to_string(r.pos) +
                   " and " + std::to_string(r.pos + 1) + " but only " + std::to_string(m) +
                   " strings are below it",
               r.line, r.col);
        m -= 2;
        break;
      case TangleRow::Kind::Box: {
        if (r.box < 0 || r.box >= static_cast<int>(t.inputs.size()))
          fail("box " + std::to_string(r.box) + " has no input signature", r.line, r.col);
        const auto& sig = t.inputs[r.box];
        if (r.down < 0 || r.down > 2 * sig.n)
          fail("box 'down' must lie between 0 and 2n_i", r.line, r.col);
        if (r.pos < 0 || r.pos + r.down > m)
          fail("box " + std::to_string(r.box) + " at " + std::to_string(r.pos) + " needs " +
                   std::to_string(r.down) + " strings below it, only " +
                   std::to_string(m - std::max(r.pos, 0)) + " available",
               r.line, r.col);
        bool region_plus = (t.sign == Sign::Plus) == (r.pos % 2 == 0);
        if (region_plus != (sig.sign == Sign::Plus))
          fail("box " + std::to_string(r.box) + " signature (" + std::to_string(sig.n) + "," +
                   sign_char(sig.sign) + ") does not match the shading at gap " +
                   std::to_string(r.pos),
               r.line, r.col);
        m += 2 * sig.n - 2 * r.down;
        break;
      }
    }
  }
  if (m != 2 * t.n - t.down)
    fail("tangle ends with " + std::to_string(m) + " strings, boundary needs " +
             std::to_string(2 * t.n - t.down),
         t.rows.empty() ? 1 : t.rows.back().line, t.rows.empty() ? 1 : t.rows.back().col);
}

Tangle parse_tangle(const std::string& text) {
  Tangle t = Parser(text).parse();
  validate(t);
  return t;
}

std::string format_tangle(const Tangle& t) {
  std::ostringstream os;
  os << "tangle (" << t.n << "," << sign_char(t.sign) << ")";
  if (t.down) os << " down " << t.down;
  if (!t.inputs.empty()) {
    os << " inputs[";
    for (size_t i = 0; i < t.inputs.size(); ++i)
      os << (i ? "," : "") << "(" << t.inputs[i].n << "," << sign_char(t.inputs[i].sign) << ")";
    os << "]";
  }
  os << " {";
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    os << (i ? "; " : " ");
    switch (r.kind) {
      case TangleRow::Kind::Cup: os << "cup " << r.pos; break;
      case TangleRow::Kind::Cap: os << "cap " << r.pos; break;
      case TangleRow::Kind::Box:
        os << "box " << r.box << " at " << r.pos;
        if (r.down) os << " down " << r.down;
        break;
    }
  }
  os << " }";
  return os.str();
}

Tangle adjoint_tangle(const Tangle& t) {
  Tangle a = t;
  a.down = 2 * t.n - t.down;
  a.rows.assign(t.rows.rbegin(), t.rows.rend());
  for (auto& r : a.rows) {
    switch (r.kind) {
      case TangleRow::Kind::Cup: r.kind = TangleRow::Kind::Cap; break;
      case TangleRow::Kind::Cap: r.kind = TangleRow::Kind::Cup; break;
      case TangleRow::Kind::Box: r.down = 2 * t.inputs[r.box].n - r.down; break;
    }
  }
  return a;
}

namespace {

// a partial state: the labels of the output's bottom edge and of the
// strings currently crossing the sweep line
struct Config {
  int start = 0;
  std::vector<int> bottom;
  std::vector<int> line;
  auto operator<=>(const Config&) const = default;
};

struct Weight {
  double coeff = 0.0;
  long count = 0;
};

std::vector<int> regions(const BipartiteGraph& g, int start, const std::vector<int>& path) {
  std::vector<int> rs{start};
  for (int e : path) rs.push_back(g.other_end(e, rs.back()));
  return rs;
}

}  // namespace

Evaluation evaluate_counted(const Model& m, const Tangle& t, const std::vector<Element>& inputs) {
  validate(t);
  if (inputs.size() != t.inputs.size())
    throw GradeError("evaluate: tangle expects " + std::to_string(t.inputs.size()) +
                     " inputs, got " + std::to_string(inputs.size()));
  for (size_t i = 0; i < inputs.size(); ++i)
    if (!(inputs[i].space == Space::G(t.inputs[i].n, t.inputs[i].sign)))
      throw GradeError("evaluate: input " + std::to_string(i) + " lives in " +
                       to_string(inputs[i].space) + ", box expects " +
                       to_string(Space::G(t.inputs[i].n, t.inputs[i].sign)));
  const auto& g = m.graph;
  auto lam = [&](int v) { return m.lam(v); };

  std::map<Config, Weight> cur;
  {
    int lo = t.sign == Sign::Plus ? 0 : g.num_even();
    int hi = t.sign == Sign::Plus ? g.num_even() : g.num_vertices();
    for (int v = lo; v < hi; ++v) {
      std::vector<int> path;
      std::function<void(int)> rec = [&](int u) {
        if (static_cast<int>(path.size()) == t.down) {
          cur[{v, path, path}] = {1.0, 1};
          return;
        }
        for (int e : g.incident(u)) {
          path.push_back(e);
          rec(g.other_end(e, u));
          path.pop_back();
        }
      };
      rec(v);
    }
  }

  for (const auto& r : t.rows) {
    std::map<Config, Weight> nxt;
    auto push = [&](Config c, double coeff, long count) {
      auto& w = nxt[std::move(c)];
      w.coeff += coeff;
      w.count += count;
    };
    for (const auto& [c, w] : cur) {
      auto rs = regions(g, c.start, c.line);
      switch (r.kind) {
        case TangleRow::Kind::Cup: {
          int v = rs[r.pos];
          for (int e : g.incident(v)) {
            Config n2 = c;
            n2.line.insert(n2.line.begin() + r.pos, {e, e});
            push(std::move(n2), w.coeff * std::sqrt(lam(g.other_end(e, v)) / lam(v)), w.count);
          }
          break;
        }
        case TangleRow::Kind::Cap: {
          if (c.line[r.pos] != c.line[r.pos + 1]) break;
          Config n2 = c;
          n2.line.erase(n2.line.begin() + r.pos, n2.line.begin() + r.pos + 2);
          push(std::move(n2), w.coeff * std::sqrt(lam(rs[r.pos + 1]) / lam(rs[r.pos])), w.count);
          break;
        }
        case TangleRow::Kind::Box: {
          const Element& x = inputs[r.box];
          const int ni = t.inputs[r.box].n, k = r.down, u = 2 * ni - k;
          for (const auto& [l, coeff] : x.terms) {
            if (l.start != rs[r.pos]) continue;
            bool ok = true;
            for (int s = 0; s < k && ok; ++s) ok = c.line[r.pos + s] == l.edges[2 * ni - 1 - s];
            if (!ok) continue;
            auto vs = loop_vertices(g, l);
            Config n2{c.start, c.bottom, {}};
            n2.line.assign(c.line.begin(), c.line.begin() + r.pos);
            n2.line.insert(n2.line.end(), l.edges.begin(), l.edges.begin() + u);
            n2.line.insert(n2.line.end(), c.line.begin() + r.pos + k, c.line.end());
            push(std::move(n2), w.coeff * coeff * std::sqrt(lam(vs[ni]) / lam(vs[u])), w.count);
          }
          break;
        }
      }
    }
    cur = std::move(nxt);
  }

  Evaluation ev{Element(Space::G(t.n, t.sign)), 0};
  const int up = 2 * t.n - t.down;
  for (const auto& [c, w] : cur) {
    Loop l{c.start, c.line};
    l.edges.insert(l.edges.end(), c.bottom.rbegin(), c.bottom.rend());
    auto vs = loop_vertices(g, l);
    ev.value.add(l, w.coeff * std::sqrt(lam(vs[up]) / lam(vs[t.n])));
    if (w.coeff != 0.0) ev.states += w.count;
  }
  ev.value.prune(m.tol.drop);
  return ev;
}

Element evaluate(const Model& m, const Tangle& t, const std::vector<Element>& inputs) {
  return evaluate_counted(m, t, inputs).value;
}

namespace tangles {

namespace {
std::string sig(int n, Sign s) { return "(" + std::to_string(n) + "," + sign_char(s) + ")"; }
std::string num(int k) { return std::to_string(k); }
}  // namespace

Tangle identity(int n, Sign s) {
  return parse_tangle("tangle " + sig(n, s) + " down " + num(n) + " inputs[" + sig(n, s) +
                      "] { box 0 at 0 down " + num(n) + " }");
}

Tangle multiplication(int n, Sign s) {
  return parse_tangle("tangle " + sig(n, s) + " down " + num(n) + " inputs[" + sig(n, s) + "," +
                      sig(n, s) + "] { box 1 at 0 down " + num(n) + "; box 0 at 0 down " +
                      num(n) + " }");
}

Tangle jones(int i, int level) {
  return parse_tangle("tangle " + sig(level, Sign::Plus) + " down " + num(level) + " { cap " +
                      num(i - 1) + "; cup " + num(i - 1) + " }");
}

Tangle right_cap(int n, Sign s) {
  return parse_tangle("tangle " + sig(n - 1, s) + " down " + num(n - 1) + " inputs[" + sig(n, s) +
                      "] { cup " + num(n - 1) + "; box 0 at 0 down " + num(n) + "; cap " +
                      num(n - 1) + " }");
}

Tangle right_include(int n, Sign s) {
  return parse_tangle("tangle " + sig(n + 1, s) + " down " + num(n + 1) + " inputs[" + sig(n, s) +
                      "] { box 0 at 0 down " + num(n) + " }");
}

Tangle left_cap(int n, Sign s) {
  return parse_tangle("tangle " + sig(n - 1, flip(s)) + " down " + num(n - 1) + " inputs[" +
                      sig(n, s) + "] { cup 0; box 0 at 1 down " + num(n) + "; cap 0 }");
}

Tangle left_string(int n, Sign s) {
  return parse_tangle("tangle " + sig(n + 1, flip(s)) + " down " + num(n + 1) + " inputs[" +
                      sig(n, s) + "] { box 0 at 1 down " + num(n) + " }");
}

Tangle rotation(int n, Sign s) {
  return parse_tangle("tangle " + sig(n, s) + " down " + num(n) + " inputs[" + sig(n, s) +
                      "] { cup 0; cup 1; box 0 at 2 down " + num(n) + "; cap " + num(n + 1) +
                      "; cap " + num(n) + " }");
}

Tangle alpha(int j, int n) {
  std::string head = "tangle " + sig(n - 1, Sign::Plus) + " inputs[" + sig(n, Sign::Plus) + "] ";
  if (j < 2 * n) return parse_tangle(head + "{ box 0 at 0; cap " + num(j - 1) + " }");
  return parse_tangle(head + "{ cup 0; cup 1; box 0 at 2; cap 1; cap " + num(2 * n - 1) +
                      "; cap " + num(2 * n - 2) + " }");
}

Tangle beta(int j, int n) {
  std::string head = "tangle " + sig(n + 1, Sign::Plus) + " inputs[" + sig(n, Sign::Plus) + "] ";
  if (j < 2 * n + 2) return parse_tangle(head + "{ box 0 at 0; cup " + num(j - 1) + " }");
  return parse_tangle(head + "{ cup 0; cup 1; box 0 at 2; cap 1 }");
}

Tangle circle() { return parse_tangle("tangle (0,+) { cup 0; cap 0 }"); }

Tangle shift(int s, int n, Sign sign) {
  int extra = sign == Sign::Plus ? s : s + 1;
  int total = extra + n;
  return parse_tangle("tangle " + sig(total, Sign::Plus) + " down " + num(total) + " inputs[" +
                      sig(n, sign) + "] { box 0 at " + num(extra) + " down " + num(n) + " }");
}

}  // namespace tangles

}  // namespace gpa
