#include "holodist/parse.hpp"

#include <cctype>
#include <algorithm>

namespace holodist {

namespace {

struct Value {
  bool scalar = true;
  Scalar s;
  Germ g;
  // Set while the value is a bare monomial t^a tb^b.
  bool pure = false;
  long ta = 0;
  long tb = 0;

  static Value of_scalar(const Scalar& x) {
    Value v;
    v.s = x;
    return v;
  }
  static Value of_germ(const Germ& x) {
    Value v;
    v.scalar = false;
    v.g = x;
    return v;
  }
  static Value of_t(long a, long b) {
    Value v = of_germ(Germ::t_power(a, b));
    v.pure = true;
    v.ta = a;
    v.tb = b;
    return v;
  }
  Germ as_germ() const { return scalar ? s * Germ::t_power(0, 0) : g; }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : src_(text) {}

  Value parse_all() {
    Value v = expr();
    skip();
    while (peek() == '|') {
      ++pos_;
      skip();
      size_t start = pos_;
      std::string word;
      while (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '*'))
        word += src_[pos_++];
      v = Value::of_germ(apply_op(word, v.as_germ(), start));
      skip();
    }
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'", pos_, pos_ + 1);
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, size_t b, size_t e) const {
    throw ParseError(msg, b, std::max(e, b + 1));
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'", pos_, pos_ + 1);
    ++pos_;
  }

  Germ apply_op(const std::string& w, const Germ& g, size_t start) {
    if (w == "dt") return d_t(g);
    if (w == "dtb") return d_tbar(g);
    if (w == "t" || w == "t*") return mul_t(g);
    if (w == "tb" || w == "tb*") return mul_tbar(g);
    if (w == "conj") return conj_germ(g);
    if (w == "loc") return localize(g);
    fail("unknown operator '" + w + "'", start, pos_);
  }

  long integer(bool allow_sign) {
    skip();
    size_t start = pos_;
    bool neg = false;
    if (allow_sign && pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      neg = src_[pos_] == '-';
      ++pos_;
    }
    size_t digits = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected an integer", start, pos_ + 1);
    std::string body = src_.substr(digits, pos_ - digits);
    if (body.size() > 9) fail("integer too large", start, pos_);
    long v = std::stol(body);
    return neg ? -v : v;
  }

  Value expr() {
    skip();
    bool neg = false;
    if (peek() == '+' || peek() == '-') {
      neg = src_[pos_] == '-';
      ++pos_;
    }
    Value acc = term();
    if (neg) acc = negate(acc);
    while (peek() == '+' || peek() == '-') {
      bool minus = src_[pos_] == '-';
      ++pos_;
      Value rhs = term();
      acc = add(acc, minus ? negate(rhs) : rhs);
    }
    return acc;
  }

  Value term() {
    Value acc = factor();
    while (peek() == '*') {
      size_t at = pos_;
      ++pos_;
      // "t*" and "tb*" after '|' are operators, never reached here.
      Value rhs = factor();
      acc = multiply(acc, rhs, at);
    }
    return acc;
  }

  Value factor() {
    skip();
    size_t start = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of input", start, start + 1);
    char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        size_t den = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (den == pos_) fail("expected a denominator", start, pos_ + 1);
      }
      try {
        return Value::of_scalar(GaussianRational(parse_rational(src_.substr(start, pos_ - start))));
      } catch (const KernelError& e) {
        fail(e.what(), start, pos_);
      }
    }
    if (ch == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) fail("unexpected '" + std::string(1, ch) + "'", start, start + 1);
    std::string word;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) word += src_[pos_++];
    auto exponent = [&]() -> long {
      if (peek() != '^') return 1;
      ++pos_;
      return integer(true);
    };
    if (word == "i") return Value::of_scalar(GaussianRational::i());
    if (word == "tau") {
      long k = exponent();
      return Value::of_scalar(Scalar::tau(static_cast<int>(k)));
    }
    if (word == "t") return Value::of_t(exponent(), 0);
    if (word == "tb") return Value::of_t(0, exponent());
    if (word == "u") {
      expect('(');
      size_t beta_at = pos_;
      Value beta = expr();
      if (!beta.scalar || beta.s.terms().size() > 1 || (!beta.s.is_zero() && beta.s.terms().begin()->first != 0))
        fail("u(): exponent must be a complex constant", beta_at, pos_);
      expect(',');
      long p = integer(false);
      expect(')');
      return Value::of_germ(make_u(beta.s.coeff(0), static_cast<int>(p)));
    }
    if (word == "d") {
      expect('(');
      long i = integer(false);
      expect(',');
      long j = integer(false);
      expect(')');
      return Value::of_germ(Germ::dirac(static_cast<int>(i), static_cast<int>(j)));
    }
    fail("unknown symbol '" + word + "'", start, pos_);
  }

  static Value negate(const Value& v) {
    if (v.scalar) return Value::of_scalar(-v.s);
    return Value::of_germ(-v.g);
  }

  static Value add(const Value& a, const Value& b) {
    if (a.scalar && b.scalar) return Value::of_scalar(a.s + b.s);
    return Value::of_germ(a.as_germ() + b.as_germ());
  }

  Value multiply(const Value& a, const Value& b, size_t at) {
    if (a.scalar && b.scalar) return Value::of_scalar(a.s * b.s);
    if (a.scalar) return Value::of_germ(a.s * b.g);
    if (b.scalar) return Value::of_germ(b.s * a.g);
    if (a.pure && b.pure) return Value::of_t(a.ta + b.ta, a.tb + b.tb);
    try {
      if (a.pure) return Value::of_germ(mul_t_power(b.g, a.ta, a.tb));
      if (b.pure) return Value::of_germ(mul_t_power(a.g, b.ta, b.tb));
      return Value::of_germ(mul_germ(a.g, b.g));
    } catch (const ParseError&) {
      throw;
    } catch (const KernelError& e) {
      fail(e.what(), at, at + 1);
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
};

}  // namespace

Germ parse_germ(const std::string& text) {
  try {
    return Parser(text).parse_all().as_germ();
  } catch (const ParseError&) {
    throw;
  } catch (const KernelError& e) {
    throw ParseError(e.what(), 0, text.size());
  }
}

Scalar parse_scalar(const std::string& text) {
  Value v = Parser(text).parse_all();
  if (!v.scalar) throw ParseError("expected a scalar, got a germ", 0, text.size());
  return v.s;
}

}  // namespace holodist
