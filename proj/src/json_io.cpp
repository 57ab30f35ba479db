#include "qcond/json_io.hpp"

#include <cmath>

#include "qcond/error.hpp"

namespace qcond {

json to_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(ErrorKind::ParseError, "complex literal must be a number or [re, im], got " + j.dump());
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix literal must be a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<cplx> entries;
  entries.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) {
      fail(ErrorKind::ParseError, "matrix literal must be square: expected " + std::to_string(n) + " entries per row");
    }
    for (const auto& e : row) entries.push_back(complex_from_json(e));
  }
  return ComplexMatrix(n, std::move(entries));
}

json to_json(const Operation& op) {
  json kraus = json::array();
  for (const auto& k : op.kraus()) kraus.push_back(to_json(k));
  return json{{"kraus", std::move(kraus)}};
}

json to_json(const EffectFamily& obs) {
  json effects = json::object();
  for (std::size_t i = 0; i < obs.size(); ++i) effects[obs.labels()[i]] = to_json(obs.effects()[i].matrix());
  return json{{"outcomes", obs.labels()}, {"effects", std::move(effects)}};
}

json to_json(const RealValuedObservable& obs) {
  json out = to_json(obs.observable());
  json values = json::object();
  for (std::size_t i = 0; i < obs.values().size(); ++i) values[obs.observable().labels()[i]] = obs.values()[i];
  out["values"] = std::move(values);
  return out;
}

json to_json(const Instrument& ins) {
  json ops = json::object();
  for (std::size_t i = 0; i < ins.size(); ++i) ops[ins.labels()[i]] = to_json(ins.ops()[i]);
  return json{{"outcomes", ins.labels()}, {"ops", std::move(ops)}};
}

json to_json(const TripleCheck& t) {
  return json{{"lhs", t.lhs}, {"mid", t.mid}, {"rhs", t.rhs}};
}

namespace {

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json(const UncertaintyReport& r) {
  return json{{"correlation", complex_pair(r.correlation)},
              {"covariance", r.covariance},
              {"variance_B", r.variance_b},
              {"variance_C", r.variance_c},
              {"commutator_trace", complex_pair(r.commutator_trace)},
              {"identity_residual", r.identity_residual},
              {"inequality_slack", r.inequality_slack}};
}

json to_json(const ContextStats& s) {
  return json{{"expectation_B", s.expectation_b},
              {"expectation_C", s.expectation_c},
              {"correlation", complex_pair(s.correlation)},
              {"covariance", s.covariance},
              {"variance_B", s.variance_b},
              {"variance_C", s.variance_c},
              {"commutator_trace", complex_pair(s.commutator_trace)}};
}

}  // namespace qcond
