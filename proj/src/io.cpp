#include "holodist/io.hpp"

#include <filesystem>
#include <fstream>

#include "holodist/parse.hpp"

namespace holodist {

namespace {

const GaussianRational kMinusOne(-1);

std::string entry_string(const Json& e, const std::string& what) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw KernelError(what + ": entries must be strings or integers (no floats)");
}

size_t get_dim(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) throw KernelError(what + ": missing nonnegative '" + key + "'");
  return j.at(key).get<size_t>();
}

GaussianRational alpha_key(const std::string& s) {
  GaussianRational a = parse_gaussian(s);
  if (!in_fundamental_domain(a)) throw KernelError("exponent " + s + " outside [-1,0)");
  return a;
}

NilSpace nil_from_json(const Json& j, const std::string& what) {
  if (!j.is_object()) throw KernelError(what + ": expected an object");
  size_t d = get_dim(j, "dim", what);
  Mat n = j.contains("N") ? matrix_from_json(j.at("N"), d, d, what + ".N") : Mat(d, d);
  return {d, n};
}

Json nil_to_json(const NilSpace& s) {
  Json j;
  j["dim"] = s.dim;
  j["N"] = matrix_to_json(s.N);
  return j;
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    out.push_back(row);
  }
  return out;
}

Mat matrix_from_json(const Json& j, size_t rows, size_t cols, const std::string& what) {
  if (!j.is_array()) throw KernelError(what + ": expected an array of rows");
  if (j.size() != rows) throw KernelError(what + ": expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw KernelError(what + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse_gaussian(entry_string(row[c], what));
  }
  return m;
}

Json scalar_matrix_to_json(const ScalarMat& m) {
  Json out = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    out.push_back(row);
  }
  return out;
}

Json germ_matrix_to_json(const GermMat& m) {
  Json out = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    out.push_back(row);
  }
  return out;
}

GermMat germ_matrix_from_json(const Json& j, size_t rows, size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) throw KernelError(what + ": expected " + std::to_string(rows) + " rows");
  GermMat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw KernelError(what + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse_germ(entry_string(row[c], what));
  }
  return m;
}

Json module_to_json(const VGradedModule& m) {
  Json j;
  Json alphas = Json::array();
  Json psi = Json::object();
  for (const auto& [a, s] : m.psi) {
    alphas.push_back(a.str());
    psi[a.str()] = nil_to_json(s);
  }
  j["alphas"] = alphas;
  j["psi"] = psi;
  j["phi"] = nil_to_json(m.phi);
  j["can"] = matrix_to_json(m.can);
  j["var"] = matrix_to_json(m.var);
  return j;
}

VGradedModule module_from_json(const Json& j) {
  if (!j.is_object()) throw KernelError("module: expected an object");
  for (const auto& [key, val] : j.items())
    if (key != "alphas" && key != "psi" && key != "phi" && key != "can" && key != "var" && key != "comment")
      throw KernelError("module: unknown key '" + key + "'");
  VGradedModule m;
  if (j.contains("psi")) {
    if (!j.at("psi").is_object()) throw KernelError("module.psi: expected an object keyed by alpha");
    for (const auto& [key, val] : j.at("psi").items()) m.psi[alpha_key(key)] = nil_from_json(val, "module.psi." + key);
  }
  if (j.contains("alphas")) {
    for (const auto& a : j.at("alphas")) {
      GaussianRational al = alpha_key(entry_string(a, "module.alphas"));
      if (!m.psi.count(al)) m.psi[al] = NilSpace::zero(0);
    }
  }
  m.phi = j.contains("phi") ? nil_from_json(j.at("phi"), "module.phi") : NilSpace::zero(0);
  size_t d1 = m.psi_at(kMinusOne).dim;
  m.can = j.contains("can") ? matrix_from_json(j.at("can"), m.phi.dim, d1, "module.can") : Mat(m.phi.dim, d1);
  m.var = j.contains("var") ? matrix_from_json(j.at("var"), d1, m.phi.dim, "module.var") : Mat(d1, m.phi.dim);
  return m;
}

Json pairing_to_json(const DistPairing& p) {
  Json j;
  j["left"] = module_to_json(p.left);
  j["right"] = module_to_json(p.right);
  Json blocks = Json::object();
  for (const auto& [a, s] : p.psi) blocks[a.str()] = germ_matrix_to_json(s);
  if (p.phi) blocks["0"] = germ_matrix_to_json(*p.phi);
  j["blocks"] = blocks;
  if (p.phi_psi) j["phi_psi"] = germ_matrix_to_json(*p.phi_psi);
  if (p.psi_phi) j["psi_phi"] = germ_matrix_to_json(*p.psi_phi);
  return j;
}

DistPairing pairing_from_json(const Json& j) {
  if (!j.is_object()) throw KernelError("pairing: expected an object");
  DistPairing p;
  if (j.contains("entries")) {
    // Single block.
    if (!j.contains("alpha")) throw KernelError("pairing: 'entries' requires 'alpha'");
    GaussianRational a = parse_gaussian(entry_string(j.at("alpha"), "pairing.alpha"));
    size_t dl = get_dim(j, "left_dim", "pairing");
    size_t dr = get_dim(j, "right_dim", "pairing");
    bool is_phi = a.is_zero();
    if (!is_phi && !in_fundamental_domain(a)) throw KernelError("pairing.alpha must lie in [-1,0) or be 0");
    auto side = [&](const char* key, size_t d) {
      if (j.contains(key)) return module_from_json(j.at(key));
      VGradedModule m;
      if (is_phi) {
        m.phi = NilSpace::zero(d);
        m.can = Mat(d, 0);
        m.var = Mat(0, d);
      } else {
        m.psi[a] = NilSpace::zero(d);
        m.phi = NilSpace::zero(0);
        size_t d1 = a == kMinusOne ? d : 0;
        m.can = Mat(0, d1);
        m.var = Mat(d1, 0);
      }
      return m;
    };
    p.left = side("left", dl);
    p.right = side("right", dr);
    GermMat block = germ_matrix_from_json(j.at("entries"), dl, dr, "pairing.entries");
    if (is_phi) {
      p.phi = block;
    } else {
      p.psi[a] = block;
    }
    return p;
  }
  if (!j.contains("left") || !j.contains("right")) throw KernelError("pairing: expected 'entries' or 'left'/'right'");
  p.left = module_from_json(j.at("left"));
  p.right = module_from_json(j.at("right"));
  if (j.contains("blocks")) {
    for (const auto& [key, val] : j.at("blocks").items()) {
      GaussianRational a = parse_gaussian(key);
      if (a.is_zero()) {
        p.phi = germ_matrix_from_json(val, p.left.phi.dim, p.right.phi.dim, "pairing.blocks.0");
      } else {
        alpha_key(key);
        p.psi[a] = germ_matrix_from_json(val, p.left.psi_at(a).dim, p.right.psi_at(a).dim, "pairing.blocks." + key);
      }
    }
  }
  if (j.contains("phi_psi"))
    p.phi_psi = germ_matrix_from_json(j.at("phi_psi"), p.left.phi.dim, p.right.psi_at(kMinusOne).dim, "pairing.phi_psi");
  if (j.contains("psi_phi"))
    p.psi_phi = germ_matrix_from_json(j.at("psi_phi"), p.left.psi_at(kMinusOne).dim, p.right.phi.dim, "pairing.psi_phi");
  return p;
}

Json ledger_to_json(const PoleLedger& l) {
  Json out = Json::array();
  for (const auto& [s0, pp] : l.entries()) {
    Json e;
    e["s0"] = s0.str();
    e["order"] = pp.size();
    Json coeffs = Json::array();  // c_m, ..., c_1
    for (size_t m = pp.size(); m-- > 0;) coeffs.push_back(pp[m].str());
    e["coefficients"] = coeffs;
    out.push_back(e);
  }
  return out;
}

Json biorder_to_json(const BiOrder& o) { return Json::array({o.aprime.str(), o.asecond.str()}); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw KernelError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw KernelError(path + ": " + e.what());
  }
}

std::vector<BarletFixtureResult> check_barlet_manifest(const std::string& path) {
  Json man = read_json_file(path);
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::vector<BarletFixtureResult> out;
  for (const auto& e : man.at("fixtures")) {
    BarletFixtureResult r;
    MonomialMap f = parse_monomial_map(e.at("f").get<std::string>());
    r.f = e.at("f").get<std::string>();
    r.alpha = parse_gaussian(e.at("alpha").get<std::string>());
    long window = e.value("window", 5L);
    VGradedModule m = module_from_json(read_json_file((dir / e.at("module").get<std::string>()).string()));
    require_valid(m);
    r.declared = e.at("predicted").get<long>();
    r.predicted = predicted_order(m.psi_at(r.alpha).N);
    ObservedOrder o = observe_pole_order(f, r.alpha, window);
    r.observed = o.order;
    r.witness = o.witness;
    // The corollary's lower bound plus the maximal-order bound pin the order down.
    r.ok = r.predicted == r.declared && r.observed >= r.predicted && r.observed <= r.declared;
    out.push_back(r);
  }
  return out;
}

}  // namespace holodist
