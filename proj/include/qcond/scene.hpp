#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcond/json_io.hpp"

namespace qcond {

// A scene is a JSON document naming objects and listing checks to run on them:
//
//   {
//     "tolerance": {"eq_tol": 1e-9, "psd_tol": 1e-10},
//     "objects": {
//       "rho": {"state": [[0.5, 0], [0, 0.5]]},
//       "a":   {"effect": [[1, 0], [0, 0]]},
//       "L":   {"operation": {"luders": "a"}},
//       "A":   {"observable": {"outcomes": ["0", "1"], "effects": {"0": ..., "1": ...}, "values": {...}}},
//       "I":   {"instrument": {"luders": "A"}}
//     },
//     "checks": [
//       {"name": "p", "check": "prob", "args": ["rho", "a"], "expect": 0.5}
//     ]
//   }
//
// Object kinds: state, effect, matrix, operation, observable, instrument.
// Wherever a matrix is expected, a string names a state, effect or matrix object.
// Operation literals: {"kraus": [...]}, {"luders": m}, {"holevo": {"effect": m, "alpha": m}},
// {"compose": [first, second]}, {"identity": n}.
// Instrument literals: {"outcomes": [...], "ops": {label: op}}, {"luders": obs},
// {"holevo": {"observable": obs, "alphas": {label: m}}}, {"compose": [I, J]},
// {"condition": [J, I]}, {"trivial": op}.
//
// A check may carry one of: "expect" (JSON value compared entrywise, max
// absolute deviation), "expect_ref" (name of a matrix-like or observable
// object), "expect_gt" / "expect_lt" (numeric bound), "expect_error" (error
// kind name). Checks whose value carries an intrinsic residual (triple
// equalities, uncertainty reports, chain identities) also require it to be
// within the tolerance.

struct SceneObject {
  std::string kind;
  json body;
  bool operator==(const SceneObject&) const = default;
};

struct SceneCheck {
  std::string name;
  std::string check;
  json args = json::array();
  std::optional<json> expect;
  std::optional<std::string> expect_ref;
  std::optional<double> expect_gt;
  std::optional<double> expect_lt;
  std::optional<std::string> expect_error;
  std::optional<double> tol;
  bool operator==(const SceneCheck&) const = default;
};

struct Scene {
  std::string description;
  Tolerance tolerance;
  std::map<std::string, SceneObject> objects;
  std::vector<SceneCheck> checks;

  bool operator==(const Scene& other) const;
  json to_json() const;
};

/// Throws ParseError with line and column for malformed JSON, or naming the
/// offending field for a malformed structure.
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);

/// Names of the supported check operations.
std::vector<std::string> scene_check_names();

/// Builds and validates every object, resolves every check reference and
/// binds each check's arguments. Throws ValidationError (including dimension
/// mismatches) or ReferenceError; errors a check raises on valid arguments,
/// such as ZeroProbabilityCondition, are left to run_scene.
void validate_scene(const Scene& scene);

struct CheckResult {
  std::string name;
  std::string check;
  json value;
  json expected;  // null when the check has no expectation
  double residual = 0.0;
  bool pass = false;
  std::string error;

  json to_json() const;
};

struct SceneReport {
  std::string description;
  std::vector<CheckResult> checks;
  bool passed() const;
  json to_json() const;
};

/// Runs the checks in order. `default_tol` replaces the comparison tolerance of
/// checks that do not set their own. Object validation and reference errors
/// are thrown; errors raised by a check are recorded on that check.
SceneReport run_scene(const Scene& scene, std::optional<double> default_tol = std::nullopt);

/// Max absolute deviation between two JSON values of the same shape; numbers
/// and [re, im] pairs compare as complex. Infinite on a shape mismatch.
double json_distance(const json& a, const json& b);

/// Helpers for building scenes in code.
SceneObject scene_object(const State& rho);
SceneObject scene_object(const Effect& a);
SceneObject scene_object(const Operation& op);
SceneObject scene_object(const Observable& obs);
SceneObject scene_object(const RealValuedObservable& obs);
SceneObject scene_object(const Instrument& ins);

}  // namespace qcond
