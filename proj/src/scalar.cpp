#include "holodist/scalar.hpp"

#include <cctype>

namespace holodist {

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

long GaussianRational::to_long() const {
  if (!is_integer()) throw KernelError("not an integer: " + str());
  if (!re_.get_num().fits_slong_p()) throw KernelError("integer out of range: " + str());
  return re_.get_num().get_si();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw KernelError("division by zero");
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string imag_str(const Rational& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return rational_str(im) + "*i";
}

std::strong_ordering rational_cmp(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string strip_spaces(const std::string& text) {
  std::string out;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

}  // namespace

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  if (sgn(re_) == 0) return imag_str(im_);
  std::string imag = imag_str(im_);
  if (imag[0] != '-') imag = "+" + imag;
  return rational_str(re_) + imag;
}

std::strong_ordering cx_cmp(const GaussianRational& a, const GaussianRational& b) {
  if (auto c = rational_cmp(a.re(), b.re()); c != 0) return c;
  if (auto c = rational_cmp(abs(a.im()), abs(b.im())); c != 0) return c;
  return rational_cmp(a.im(), b.im());
}

long cx_floor(const GaussianRational& gamma) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), gamma.re().get_num_mpz_t(), gamma.re().get_den_mpz_t());
  if (!q.fits_slong_p()) throw KernelError("floor out of range: " + gamma.str());
  return q.get_si();
}

bool in_fundamental_domain(const GaussianRational& alpha) {
  return cx_leq(GaussianRational(-1), alpha) && cx_less(alpha, GaussianRational(0));
}

Rational parse_rational(const std::string& text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw KernelError("empty rational");
  size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') pos = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  for (size_t k = pos; k < s.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      seen_digit = true;
    } else if (s[k] == '/' && !seen_slash && seen_digit && k + 1 < s.size()) {
      seen_slash = true;
    } else {
      throw KernelError("malformed rational: '" + text + "'");
    }
  }
  if (!seen_digit) throw KernelError("malformed rational: '" + text + "'");
  std::string body = s[0] == '+' ? s.substr(1) : s;
  Rational q;
  if (q.set_str(body, 10) != 0) throw KernelError("malformed rational: '" + text + "'");
  if (q.get_den() == 0) throw KernelError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

GaussianRational parse_gaussian(const std::string& text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw KernelError("empty complex number");
  if (s.back() != 'i') return {parse_rational(s), 0};
  // Split at the last sign that is not the leading one.
  size_t split = std::string::npos;
  for (size_t k = s.size() - 1; k > 0; --k) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string imag_part = split == std::string::npos ? s : s.substr(split);
  imag_part.pop_back();  // trailing 'i'
  if (!imag_part.empty() && imag_part.back() == '*') imag_part.pop_back();
  Rational im;
  if (imag_part.empty() || imag_part == "+") {
    im = 1;
  } else if (imag_part == "-") {
    im = -1;
  } else {
    im = parse_rational(imag_part);
  }
  Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part);
  return {re, im};
}

Scalar::Scalar(const GaussianRational& c, int tau_power) {
  if (!c.is_zero()) terms_.emplace(tau_power, c);
}

GaussianRational Scalar::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Scalar::add_term(int k, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar Scalar::conj() const {
  Scalar out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, k % 2 == 0 ? c.conj() : -c.conj());
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
  return out;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar Scalar::inverse() const {
  if (!is_monomial()) throw KernelError("scalar not invertible: " + str());
  const auto& [k, c] = *terms_.begin();
  return {GaussianRational(1) / c, -k};
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    std::string term;
    if (k == 0) {
      term = c.str();
    } else {
      std::string power = k == 1 ? "tau" : "tau^" + std::to_string(k);
      if (c == GaussianRational(1)) {
        term = power;
      } else if (c == GaussianRational(-1)) {
        term = "-" + power;
      } else if (c.is_real() || sgn(c.re()) == 0) {
        term = c.str() + "*" + power;
      } else {
        term = "(" + c.str() + ")*" + power;
      }
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace holodist
