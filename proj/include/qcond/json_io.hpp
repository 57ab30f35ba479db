#pragma once

#include <json.hpp>

#include "qcond/context_stats.hpp"
#include "qcond/instruments.hpp"

namespace qcond {

using json = nlohmann::json;

// Matrix literal: array of rows; each entry a number (real) or [re, im].

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json to_json(const Operation& op);              // {"kraus": [...]}
json to_json(const EffectFamily& obs);          // {"outcomes": [...], "effects": {...}}
json to_json(const RealValuedObservable& obs);  // adds "values"
json to_json(const Instrument& ins);            // {"outcomes": [...], "ops": {...}}
json to_json(const TripleCheck& t);
json to_json(const UncertaintyReport& r);
json to_json(const ContextStats& s);

}  // namespace qcond
