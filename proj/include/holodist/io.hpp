#pragma once

// JSON forms of modules, pairings, matrices and ledgers. All numbers travel as
// exact strings ("p/q", "p/q+r/s*i"); floats are rejected.

#include <string>

#include <nlohmann/json.hpp>

#include "holodist/barlet.hpp"
#include "holodist/mellin.hpp"
#include "holodist/quiver.hpp"
#include "holodist/sesqui.hpp"

namespace holodist {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Mat& m);
/// Accepts strings and integers; `rows`/`cols` fix the shape when the array is empty.
Mat matrix_from_json(const Json& j, size_t rows, size_t cols, const std::string& what);

Json scalar_matrix_to_json(const ScalarMat& m);
Json germ_matrix_to_json(const GermMat& m);
GermMat germ_matrix_from_json(const Json& j, size_t rows, size_t cols, const std::string& what);

Json module_to_json(const VGradedModule& m);
VGradedModule module_from_json(const Json& j);

Json pairing_to_json(const DistPairing& p);
/// Accepts the single-block form {"alpha","left_dim","right_dim","entries"}
/// (zero nilpotents unless "left"/"right" modules are given) and the full form
/// {"left","right","blocks":{alpha: entries},"phi_psi","psi_phi"}.
DistPairing pairing_from_json(const Json& j);

Json ledger_to_json(const PoleLedger& l);
Json biorder_to_json(const BiOrder& o);

Json read_json_file(const std::string& path);

struct BarletFixtureResult {
  std::string f;
  GaussianRational alpha;
  long declared = 0;   // predicted order stored in the manifest
  long predicted = 0;  // recomputed from the fixture module
  long observed = 0;
  std::string witness;
  bool ok = false;
};

/// Checks every entry {"f","alpha","module","predicted","window"} of a manifest;
/// module paths are relative to the manifest. An entry passes when the recomputed
/// prediction equals the declared one and the observed order equals it as well.
std::vector<BarletFixtureResult> check_barlet_manifest(const std::string& path);

}  // namespace holodist
