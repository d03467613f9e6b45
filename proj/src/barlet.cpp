#include "holodist/barlet.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "holodist/germ.hpp"

namespace holodist {

std::string MonomialMap::str() const {
  std::string out;
  for (size_t i = 0; i < exps.size(); ++i) {
    if (i) out += "*";
    out += "x" + std::to_string(i + 1);
    if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
  }
  return out;
}

MonomialMap parse_monomial_map(const std::string& text) {
  // Variables are named by letters with optional digit suffixes; order of first appearance.
  std::map<std::string, size_t> index;
  MonomialMap f;
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw KernelError("monomial '" + text + "': " + why + " at column " + std::to_string(pos + 1));
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  while (pos < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[pos]))) fail("expected a variable");
    size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string name = text.substr(start, pos - start);
    long e = 1;
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip();
      size_t s = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (s == pos) fail("expected an exponent");
      e = std::stol(text.substr(s, pos - s));
      if (e < 1) fail("exponent must be >= 1");
    }
    auto [it, inserted] = index.emplace(name, f.exps.size());
    if (inserted) {
      f.exps.push_back(e);
    } else {
      f.exps[it->second] += e;
    }
    skip();
    if (pos < text.size()) {
      if (text[pos] != '*') fail("expected '*'");
      ++pos;
      skip();
      if (pos == text.size()) fail("dangling '*'");
    }
  }
  if (f.exps.empty()) fail("empty monomial");
  return f;
}

std::string ProductTestForm::str() const {
  std::string a = "a=", b = "b=";
  for (size_t i = 0; i < ab.size(); ++i) {
    a += (i ? "," : "") + std::to_string(ab[i].first);
    b += (i ? "," : "") + std::to_string(ab[i].second);
  }
  return a + ";" + b;
}

namespace {

std::vector<long> parse_list(const std::string& s, const std::string& text) {
  std::vector<long> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      if (v < 0) throw KernelError("test form '" + text + "': exponents must be >= 0");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw KernelError("test form '" + text + "': bad integer '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ProductTestForm parse_test_form(const std::string& text, size_t n) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  std::vector<long> a, b;
  bool have_b = false;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t semi = s.find(';', pos);
    std::string part = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    if (part.rfind("a=", 0) == 0) {
      a = parse_list(part.substr(2), text);
    } else if (part.rfind("b=", 0) == 0) {
      b = parse_list(part.substr(2), text);
      have_b = true;
    } else {
      throw KernelError("test form '" + text + "': expected 'a=...' or 'b=...'");
    }
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (!have_b) b = a;
  if (a.size() != n || b.size() != n)
    throw KernelError("test form '" + text + "': expected " + std::to_string(n) + " exponents per list");
  ProductTestForm phi;
  for (size_t i = 0; i < n; ++i) phi.ab.emplace_back(a[i], b[i]);
  return phi;
}

PoleLedger variable_ledger(long a, long b) {
  // <chi, x^a xb^b |x|^{2s'} dx ^ dxb> is the Mellin ledger of 1 = u(-1,0) with (k',k'') = (a,b).
  return mellin_ledger(Germ::t_power(0, 0), a, b);
}

PoleLedger I_ledger(const MonomialMap& f, const ProductTestForm& phi) {
  if (phi.ab.size() != f.n()) throw KernelError("I_ledger: test form has the wrong number of variables");
  PoleLedger out;
  for (size_t i = 0; i < f.n(); ++i) {
    PoleLedger li = variable_ledger(phi.ab[i].first, phi.ab[i].second).substituted(f.exps[i]);
    if (li.is_empty()) return {};
    out = i == 0 ? li : product(out, li);
  }
  return out;
}

std::vector<ProductTestForm> radial_family(size_t n, long max_exp) {
  std::vector<ProductTestForm> out;
  std::vector<long> cur(n, 0);
  while (true) {
    ProductTestForm phi;
    for (long a : cur) phi.ab.emplace_back(a, a);
    out.push_back(phi);
    size_t k = 0;
    while (k < n && cur[k] == max_exp) cur[k++] = 0;
    if (k == n) break;
    ++cur[k];
  }
  return out;
}

long predicted_order(const Mat& N, bool x_at_origin) {
  if (!x_at_origin || N.rows() == 0) return 0;
  Filtration m = monodromy_filtration(N);
  long top = -1;
  for (long ell = 0; ell <= m.hi; ++ell)
    if (m.gr_dim(ell) > 0) top = ell;
  return top + 1;
}

ProductTestForm pole_shift_witness(const MonomialMap& f, const ProductTestForm& phi, long k) {
  if (k < 1) throw KernelError("pole_shift_witness: k must be >= 1");
  if (phi.ab.size() != f.n()) throw KernelError("pole_shift_witness: test form has the wrong number of variables");
  ProductTestForm out = phi;
  for (size_t i = 0; i < f.n(); ++i) {
    out.ab[i].first += k * f.exps[i];
    out.ab[i].second += k * f.exps[i];
  }
  return out;
}

ObservedOrder observe_pole_order(const MonomialMap& f, const GaussianRational& alpha, long window, long max_exp) {
  ObservedOrder out;
  for (const auto& phi : radial_family(f.n(), max_exp)) {
    PoleLedger l = I_ledger(f, phi).window(window);
    for (const auto& [s0, pp] : l.entries()) {
      if (!(alpha - s0).is_integer() || cx_less(alpha, s0)) continue;
      if (static_cast<long>(pp.size()) > out.order) {
        out.order = static_cast<long>(pp.size());
        out.witness = phi.str() + " at s = " + s0.str();
      }
    }
  }
  return out;
}

TanglingReport detect_tangling(const Mat& c, const Mat& v) {
  // c : Psi -> Phi is (phi x psi), v : Phi -> Psi is (psi x phi).
  if (c.rows() != v.cols() || c.cols() != v.rows()) throw KernelError("detect_tangling: shape mismatch");
  TanglingReport rep;
  Subspace ker_v = kernel_space(v);
  Subspace im_c = image_space(c);
  rep.ker_v_dim = ker_v.dim();
  rep.coker_c_dim = c.rows() - im_c.dim();
  // Rank of ker v -> Phi / im c equals dim(ker v + im c) - dim im c.
  rep.induced_rank = (ker_v + im_c).dim() - im_c.dim();
  bool iso = rep.induced_rank == rep.ker_v_dim && rep.induced_rank == rep.coker_c_dim;
  rep.tangled = !iso;
  return rep;
}

}  // namespace holodist
