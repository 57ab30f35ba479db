#include "qcond/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "qcond/context_stats.hpp"
#include "qcond/entropy.hpp"
#include "qcond/error.hpp"

namespace qcond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::set<std::string>& object_kinds() {
  static const std::set<std::string> kinds{"state", "effect", "matrix", "operation", "observable", "instrument"};
  return kinds;
}

// ---------------------------------------------------------------- object resolution

struct Obj {
  std::string kind;
  std::optional<ComplexMatrix> matrix;
  std::optional<Operation> op;
  std::optional<Observable> obs;
  std::optional<std::vector<double>> values;
  std::optional<Instrument> ins;
  // Set for instruments declared as Holevo instruments.
  std::optional<Observable> holevo_obs;
  std::map<std::string, State> holevo_alphas;
};

std::string arg_text(const json& a) { return a.is_string() ? "'" + a.get<std::string>() + "'" : a.dump(); }

const json& field(const json& body, const char* key, const std::string& where) {
  if (!body.is_object() || !body.contains(key)) {
    fail(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  }
  return body.at(key);
}

std::vector<std::string> label_list(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, where + ": outcomes must be a non-empty array");
  std::vector<std::string> labels;
  for (const auto& l : j) {
    if (!l.is_string()) fail(ErrorKind::ParseError, where + ": outcome labels must be strings");
    std::string label = l.get<std::string>();
    if (label == kComplementLabel) {
      fail(ErrorKind::ValidationError, where + ": outcome label '" + label + "' is reserved");
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

class Env {
 public:
  explicit Env(const Scene& scene) : scene_(scene), tol_(scene.tolerance) {}

  const Tolerance& tol() const { return tol_; }

  const Obj& get(const std::string& name) {
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    const auto found = scene_.objects.find(name);
    if (found == scene_.objects.end()) fail(ErrorKind::ReferenceError, "unknown object '" + name + "'");
    if (!in_progress_.insert(name).second) {
      fail(ErrorKind::ReferenceError, "object '" + name + "' refers to itself");
    }
    Obj built;
    try {
      built = build(name, found->second);
    } catch (const Error& e) {
      in_progress_.erase(name);
      switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::ValidationError:
        case ErrorKind::ReferenceError:
          throw;
        default:
          fail(ErrorKind::ValidationError, "object '" + name + "': " + e.what());
      }
    }
    in_progress_.erase(name);
    return cache_.emplace(name, std::move(built)).first->second;
  }

  const Obj& get_kind(const std::string& name, std::initializer_list<const char*> kinds) {
    const Obj& o = get(name);
    for (const char* k : kinds) {
      if (o.kind == k) return o;
    }
    std::string expected;
    for (const char* k : kinds) expected += (expected.empty() ? "" : " or ") + std::string(k);
    fail(ErrorKind::ReferenceError, "object '" + name + "' is a " + o.kind + ", expected " + expected);
  }

  ComplexMatrix matrix(const json& j, const std::string& where) {
    if (j.is_string()) return *get_kind(j.get<std::string>(), {"state", "effect", "matrix"}).matrix;
    try {
      return matrix_from_json(j);
    } catch (const Error& e) {
      fail(e.kind() == ErrorKind::ParseError ? ErrorKind::ParseError : ErrorKind::ValidationError,
           where + ": " + e.what());
    }
  }

  State state(const json& j, const std::string& where) {
    if (j.is_string()) return State(*get_kind(j.get<std::string>(), {"state"}).matrix);
    State s(matrix(j, where));
    require_valid(s, tol_, where);
    return s;
  }

  Effect effect(const json& j, const std::string& where) {
    if (j.is_string()) return Effect(*get_kind(j.get<std::string>(), {"effect"}).matrix);
    Effect a(matrix(j, where));
    require_valid(a, tol_, where);
    return a;
  }

  Operation operation(const json& j, const std::string& where) {
    if (j.is_string()) return *get_kind(j.get<std::string>(), {"operation"}).op;
    Operation op = build_operation(j, where);
    require_valid(op, tol_, where);
    return op;
  }

  Observable observable(const json& j, const std::string& where) {
    if (j.is_string()) return *get_kind(j.get<std::string>(), {"observable"}).obs;
    std::optional<std::vector<double>> values;
    Observable obs = build_observable(j, where, values);
    require_valid(obs, tol_, where);
    return obs;
  }

  RealValuedObservable real_observable(const json& j, const std::string& where) {
    if (!j.is_string()) fail(ErrorKind::ReferenceError, where + ": expected the name of a real-valued observable");
    const Obj& o = get_kind(j.get<std::string>(), {"observable"});
    if (!o.values) fail(ErrorKind::ReferenceError, "observable " + arg_text(j) + " has no values");
    return RealValuedObservable(*o.obs, *o.values);
  }

  Instrument instrument(const json& j, const std::string& where) {
    if (j.is_string()) return *get_kind(j.get<std::string>(), {"instrument"}).ins;
    Obj tmp;
    Instrument ins = build_instrument(j, where, tmp);
    require_valid(ins, tol_, where);
    return ins;
  }

  const Obj& holevo_source(const json& j) {
    if (!j.is_string()) fail(ErrorKind::ReferenceError, "expected the name of a Holevo instrument");
    const Obj& o = get_kind(j.get<std::string>(), {"instrument"});
    if (!o.holevo_obs) fail(ErrorKind::ReferenceError, "instrument " + arg_text(j) + " is not declared as Holevo");
    return o;
  }

 private:
  Obj build(const std::string& name, const SceneObject& spec) {
    const std::string where = "object '" + name + "'";
    Obj o;
    o.kind = spec.kind;
    if (spec.kind == "state") {
      o.matrix = matrix(spec.body, where);
      require_valid(State(*o.matrix), tol_, where);
    } else if (spec.kind == "effect") {
      o.matrix = matrix(spec.body, where);
      require_valid(Effect(*o.matrix), tol_, where);
    } else if (spec.kind == "matrix") {
      o.matrix = matrix(spec.body, where);
    } else if (spec.kind == "operation") {
      o.op = build_operation(spec.body, where);
      require_valid(*o.op, tol_, where);
    } else if (spec.kind == "observable") {
      o.obs = build_observable(spec.body, where, o.values);
      require_valid(*o.obs, tol_, where);
    } else if (spec.kind == "instrument") {
      o.ins = build_instrument(spec.body, where, o);
      require_valid(*o.ins, tol_, where);
    } else {
      fail(ErrorKind::ParseError, where + ": unknown kind '" + spec.kind + "'");
    }
    return o;
  }

  Operation build_operation(const json& body, const std::string& where) {
    if (body.is_string()) return *get_kind(body.get<std::string>(), {"operation"}).op;
    if (!body.is_object() || body.size() != 1) {
      fail(ErrorKind::ParseError, where + ": operation literal must have exactly one of kraus, luders, holevo, compose, identity");
    }
    const std::string key = body.begin().key();
    const json& value = body.begin().value();
    if (key == "kraus") {
      if (!value.is_array() || value.empty()) fail(ErrorKind::ParseError, where + ": kraus must be a non-empty array");
      std::vector<ComplexMatrix> kraus;
      for (const auto& k : value) kraus.push_back(matrix(k, where));
      return Operation(std::move(kraus));
    }
    if (key == "luders") return luders(effect(value, where + " luders effect"), tol_).op();
    if (key == "holevo") {
      return holevo(effect(field(value, "effect", where), where + " holevo effect"),
                    state(field(value, "alpha", where), where + " holevo alpha"), tol_)
          .op();
    }
    if (key == "compose") {
      if (!value.is_array() || value.size() != 2) fail(ErrorKind::ParseError, where + ": compose takes [first, second]");
      return compose(operation(value[0], where + " compose[0]"), operation(value[1], where + " compose[1]"));
    }
    if (key == "identity") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() == 0) {
        fail(ErrorKind::ParseError, where + ": identity takes a positive dimension");
      }
      return Operation::identity(value.get<std::size_t>());
    }
    fail(ErrorKind::ParseError, where + ": unknown operation form '" + key + "'");
  }

  Observable build_observable(const json& body, const std::string& where, std::optional<std::vector<double>>& values) {
    const std::vector<std::string> labels = label_list(field(body, "outcomes", where), where);
    const json& effects = field(body, "effects", where);
    if (!effects.is_object()) fail(ErrorKind::ParseError, where + ": effects must map labels to matrices");
    std::vector<Effect> list;
    for (const auto& label : labels) {
      if (!effects.contains(label)) fail(ErrorKind::ParseError, where + ": no effect for outcome '" + label + "'");
      list.emplace_back(matrix(effects.at(label), where + " effect '" + label + "'"));
      require_valid(list.back(), tol_, where + " effect '" + label + "'");
    }
    if (effects.size() != labels.size()) fail(ErrorKind::ParseError, where + ": effects has labels not in outcomes");
    if (body.contains("values")) {
      const json& v = body.at("values");
      if (!v.is_object()) fail(ErrorKind::ParseError, where + ": values must map labels to numbers");
      std::vector<double> vals;
      for (const auto& label : labels) {
        if (!v.contains(label) || !v.at(label).is_number()) {
          fail(ErrorKind::ParseError, where + ": no numeric value for outcome '" + label + "'");
        }
        vals.push_back(v.at(label).get<double>());
      }
      values = std::move(vals);
    }
    return Observable(labels, std::move(list));
  }

  Instrument build_instrument(const json& body, const std::string& where, Obj& out) {
    if (body.is_string()) {
      const Obj& o = get_kind(body.get<std::string>(), {"instrument"});
      out.holevo_obs = o.holevo_obs;
      out.holevo_alphas = o.holevo_alphas;
      return *o.ins;
    }
    if (body.is_object() && body.contains("outcomes")) {
      const std::vector<std::string> labels = label_list(body.at("outcomes"), where);
      const json& ops = field(body, "ops", where);
      if (!ops.is_object() || ops.size() != labels.size()) {
        fail(ErrorKind::ParseError, where + ": ops must map every outcome to an operation");
      }
      std::vector<Operation> list;
      for (const auto& label : labels) {
        if (!ops.contains(label)) fail(ErrorKind::ParseError, where + ": no operation for outcome '" + label + "'");
        list.push_back(operation(ops.at(label), where + " op '" + label + "'"));
      }
      return Instrument(labels, std::move(list));
    }
    if (!body.is_object() || body.size() != 1) {
      fail(ErrorKind::ParseError,
           where + ": instrument literal must be {outcomes, ops} or one of luders, holevo, compose, condition, trivial");
    }
    const std::string key = body.begin().key();
    const json& value = body.begin().value();
    if (key == "luders") return luders_instrument(observable(value, where + " luders observable"), tol_);
    if (key == "holevo") {
      Observable obs = observable(field(value, "observable", where), where + " holevo observable");
      const json& alphas = field(value, "alphas", where);
      if (!alphas.is_object()) fail(ErrorKind::ParseError, where + ": alphas must map labels to states");
      std::map<std::string, State> targets;
      for (const auto& [label, m] : alphas.items()) targets.emplace(label, state(m, where + " alpha '" + label + "'"));
      Instrument ins = holevo_instrument(obs, targets, tol_);
      out.holevo_obs = std::move(obs);
      out.holevo_alphas = std::move(targets);
      return ins;
    }
    if (key == "compose" || key == "condition") {
      if (!value.is_array() || value.size() != 2) fail(ErrorKind::ParseError, where + ": " + key + " takes two instruments");
      const Instrument first = instrument(value[0], where + " " + key + "[0]");
      const Instrument second = instrument(value[1], where + " " + key + "[1]");
      return key == "compose" ? compose_instruments(first, second) : condition_instrument(first, second);
    }
    if (key == "trivial") return Instrument::trivial(operation(value, where + " trivial"));
    fail(ErrorKind::ParseError, where + ": unknown instrument form '" + key + "'");
  }

  const Scene& scene_;
  Tolerance tol_;
  std::map<std::string, Obj> cache_;
  std::set<std::string> in_progress_;
};

// ---------------------------------------------------------------- checks

struct Value {
  Value() = default;
  Value(json v, std::optional<double> r = std::nullopt) : value(std::move(v)), intrinsic(r) {}
  json value;
  std::optional<double> intrinsic;
};

using CheckFn = std::function<Value(Env&, const json&)>;

struct CheckSpec {
  std::size_t min_args;
  std::size_t max_args;
  CheckFn run;
};

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

json distribution_json(const Distribution& d) {
  json out = json::object();
  for (const auto& [label, p] : d) out[label] = p;
  return out;
}

json family_json(const EffectFamily& f) { return to_json(f); }

json chain_json(const ChainEntropies& c) { return json{{"iterated", c.iterated}, {"composed", c.composed}}; }

double family_distance(const EffectFamily& a, const EffectFamily& b) {
  if (a.labels() != b.labels()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, frobenius_distance(a.effects()[i].matrix(), b.effects()[i].matrix()));
  }
  return worst;
}

const std::map<std::string, CheckSpec>& check_registry() {
  static const std::map<std::string, CheckSpec> registry = [] {
    std::map<std::string, CheckSpec> r;
    const auto add = [&](const char* name, std::size_t n, CheckFn fn) { r.emplace(name, CheckSpec{n, n, std::move(fn)}); };
    const auto state = [](Env& e, const json& a, std::size_t i) { return e.state(a[i], "argument " + std::to_string(i)); };
    const auto effect = [](Env& e, const json& a, std::size_t i) { return e.effect(a[i], "argument " + std::to_string(i)); };
    const auto matrix = [](Env& e, const json& a, std::size_t i) { return e.matrix(a[i], "argument " + std::to_string(i)); };
    const auto op = [](Env& e, const json& a, std::size_t i) { return e.operation(a[i], "argument " + std::to_string(i)); };
    const auto ctx = [](Env& e, const json& a, std::size_t i) {
      return MeasurementContext(e.operation(a[i], "argument " + std::to_string(i)));
    };
    const auto obs = [](Env& e, const json& a, std::size_t i) {
      return e.observable(a[i], "argument " + std::to_string(i));
    };
    const auto robs = [](Env& e, const json& a, std::size_t i) {
      return e.real_observable(a[i], "argument " + std::to_string(i));
    };
    const auto ins = [](Env& e, const json& a, std::size_t i) {
      return e.instrument(a[i], "argument " + std::to_string(i));
    };

    // effects and states
    add("prob", 2, [=](Env& e, const json& a) -> Value { return {prob(state(e, a, 0), effect(e, a, 1), e.tol())}; });
    add("complement", 1, [=](Env& e, const json& a) -> Value { return {to_json(complement(effect(e, a, 0)).matrix())}; });
    add("is_sharp", 1, [=](Env& e, const json& a) -> Value { return {is_sharp(effect(e, a, 0), e.tol())}; });
    add("is_atomic", 1, [=](Env& e, const json& a) -> Value { return {is_atomic(effect(e, a, 0), e.tol())}; });
    add("perp", 2, [=](Env& e, const json& a) -> Value { return {perp(effect(e, a, 0), effect(e, a, 1), e.tol())}; });

    // operations
    add("apply", 2, [=](Env& e, const json& a) -> Value { return {to_json(apply(op(e, a, 0), state(e, a, 1)))}; });
    add("dual_apply", 2,
        [=](Env& e, const json& a) -> Value { return {to_json(dual_apply(op(e, a, 0), matrix(e, a, 1)))}; });
    add("measured_effect", 1,
        [=](Env& e, const json& a) -> Value { return {to_json(measured_effect(op(e, a, 0)).matrix())}; });
    add("is_channel", 1, [=](Env& e, const json& a) -> Value { return {is_channel(op(e, a, 0), e.tol())}; });
    add("kraus_count", 1, [=](Env& e, const json& a) -> Value { return {op(e, a, 0).kraus().size()}; });
    add("sequential_product", 2, [=](Env& e, const json& a) -> Value {
      return {to_json(sequential_product(ctx(e, a, 0), effect(e, a, 1)).matrix())};
    });
    add("conditional_prob", 3, [=](Env& e, const json& a) -> Value {
      return {conditional_prob(state(e, a, 0), ctx(e, a, 1), effect(e, a, 2), e.tol())};
    });
    add("updated_state", 2, [=](Env& e, const json& a) -> Value {
      return {to_json(updated_state(state(e, a, 0), ctx(e, a, 1), e.tol()).matrix())};
    });
    add("bayes2_residual", 3, [=](Env& e, const json& a) -> Value {
      return {bayes2_residual(state(e, a, 0), ctx(e, a, 1), ctx(e, a, 2), e.tol())};
    });
    add("bayes2_algebraic_residual", 2,
        [=](Env& e, const json& a) -> Value { return {bayes2_algebraic_residual(ctx(e, a, 0), ctx(e, a, 1))}; });
    const auto map_distance = [=](Env& e, const json& a) {
      if (a[0].is_string() && e.get(a[0].get<std::string>()).kind == "instrument") {
        return choi_distance(ins(e, a, 0), ins(e, a, 1));
      }
      return choi_distance(op(e, a, 0), op(e, a, 1));
    };
    add("choi_distance", 2, [=](Env& e, const json& a) -> Value { return {map_distance(e, a)}; });
    add("maps_equal", 2, [=](Env& e, const json& a) -> Value { return {map_distance(e, a) <= e.tol().eq_tol}; });

    // observables
    add("distribution", 2,
        [=](Env& e, const json& a) -> Value { return {distribution_json(distribution(state(e, a, 0), obs(e, a, 1), e.tol()))}; });
    add("expectation", 2, [=](Env& e, const json& a) -> Value { return {expectation(state(e, a, 0), robs(e, a, 1))}; });
    add("conditional_expectation", 3, [=](Env& e, const json& a) -> Value {
      return {conditional_expectation(state(e, a, 0), ctx(e, a, 1), robs(e, a, 2), e.tol())};
    });
    add("stochastic_operator", 1,
        [=](Env& e, const json& a) -> Value { return {to_json(stochastic_operator(robs(e, a, 0)))}; });
    add("is_commuting", 1, [=](Env& e, const json& a) -> Value { return {is_commuting(obs(e, a, 0), e.tol())}; });
    add("jointly_commuting", 2,
        [=](Env& e, const json& a) -> Value { return {jointly_commuting(obs(e, a, 0), obs(e, a, 1), e.tol())}; });

    // instruments
    add("measured_observable", 1,
        [=](Env& e, const json& a) -> Value { return {family_json(measured_observable(ins(e, a, 0)))}; });
    add("condition_effect", 2, [=](Env& e, const json& a) -> Value {
      return {to_json(condition_effect(effect(e, a, 0), ins(e, a, 1)).matrix())};
    });
    add("condition_subobservable", 2, [=](Env& e, const json& a) -> Value {
      return {family_json(condition_subobservable(obs(e, a, 0), ctx(e, a, 1)))};
    });
    add("condition_observable", 2, [=](Env& e, const json& a) -> Value {
      return {family_json(condition_observable(obs(e, a, 0), ins(e, a, 1)))};
    });
    add("bayes1_check", 3, [=](Env& e, const json& a) -> Value {
      const TripleCheck t = bayes1_check(state(e, a, 0), ins(e, a, 1), effect(e, a, 2), e.tol());
      return {to_json(t), t.spread()};
    });
    add("bayes1_expectation_check", 3, [=](Env& e, const json& a) -> Value {
      const TripleCheck t = bayes1_expectation_check(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), e.tol());
      return {to_json(t), t.spread()};
    });
    r.emplace("atomic_context", CheckSpec{1, 8, [=](Env& e, const json& a) -> Value {
                std::vector<Observable> family;
                for (std::size_t i = 0; i < a.size(); ++i) family.push_back(obs(e, a, i));
                const AtomicContext c = atomic_context(family, e.tol());
                double worst = 0.0;
                for (const auto& m : family) {
                  worst = std::max(worst, family_distance(condition_observable(m, c.instrument), m));
                }
                return {json{{"atoms", c.observable.size()}, {"reproduction_residual", worst}}, worst};
              }});

    // contextual statistics
    add("contextual_expectation", 3, [=](Env& e, const json& a) -> Value {
      return {contextual_expectation(state(e, a, 0), ins(e, a, 1), robs(e, a, 2))};
    });
    add("contextual_variance", 3, [=](Env& e, const json& a) -> Value {
      return {contextual_variance(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), e.tol())};
    });
    add("contextual_covariance", 4, [=](Env& e, const json& a) -> Value {
      return {contextual_covariance(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), robs(e, a, 3))};
    });
    add("contextual_correlation", 4, [=](Env& e, const json& a) -> Value {
      return {complex_pair(contextual_correlation(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), robs(e, a, 3)))};
    });
    add("commutator_trace", 4, [=](Env& e, const json& a) -> Value {
      return {complex_pair(commutator_trace(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), robs(e, a, 3)))};
    });
    add("uncertainty_report", 4, [=](Env& e, const json& a) -> Value {
      const UncertaintyReport u = uncertainty_report(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), robs(e, a, 3), e.tol());
      return {to_json(u), std::max(u.identity_residual, std::max(0.0, -u.inequality_slack))};
    });
    add("context_stats", 4, [=](Env& e, const json& a) -> Value {
      return {to_json(context_stats(state(e, a, 0), ins(e, a, 1), robs(e, a, 2), robs(e, a, 3)))};
    });
    add("sharp_luders_closed_form", 4, [=](Env& e, const json& a) -> Value {
      const State rho = state(e, a, 0);
      const Observable sharp = obs(e, a, 1);
      const RealValuedObservable b = robs(e, a, 2);
      const RealValuedObservable c = robs(e, a, 3);
      const ContextStats closed = sharp_luders_closed_form(rho, sharp, b, c);
      const ContextStats generic = context_stats(rho, luders_instrument(sharp, e.tol()), b, c);
      return {to_json(closed), closed.max_difference(generic)};
    });
    add("holevo_closed_form", 4, [=](Env& e, const json& a) -> Value {
      const State rho = state(e, a, 0);
      const Obj& h = e.holevo_source(a[1]);
      const RealValuedObservable b = robs(e, a, 2);
      const RealValuedObservable c = robs(e, a, 3);
      const ContextStats closed = holevo_closed_form(rho, *h.holevo_obs, h.holevo_alphas, b, c);
      const ContextStats generic = context_stats(rho, *h.ins, b, c);
      return {to_json(closed), closed.max_difference(generic)};
    });

    // entropy
    add("effect_entropy", 2,
        [=](Env& e, const json& a) -> Value { return {effect_entropy(state(e, a, 0), effect(e, a, 1), e.tol())}; });
    add("sequential_entropy", 3, [=](Env& e, const json& a) -> Value {
      return {sequential_entropy(state(e, a, 0), ctx(e, a, 1), effect(e, a, 2), e.tol())};
    });
    add("conditional_effect_entropy", 3, [=](Env& e, const json& a) -> Value {
      return {conditional_effect_entropy(state(e, a, 0), ctx(e, a, 1), effect(e, a, 2), e.tol())};
    });
    add("entropy_gap", 3, [=](Env& e, const json& a) -> Value {
      return {entropy_gap(state(e, a, 0), ctx(e, a, 1), effect(e, a, 2), e.tol())};
    });
    add("lemma31_criterion", 2,
        [=](Env& e, const json& a) -> Value { return {lemma31_criterion(ctx(e, a, 0), effect(e, a, 1), e.tol())}; });
    add("observable_entropy", 2,
        [=](Env& e, const json& a) -> Value { return {observable_entropy(state(e, a, 0), obs(e, a, 1), e.tol())}; });
    add("conditional_observable_entropy_double", 3, [=](Env& e, const json& a) -> Value {
      return {conditional_observable_entropy_double(state(e, a, 0), ins(e, a, 1), obs(e, a, 2), e.tol())};
    });
    add("conditional_observable_entropy_single", 3, [=](Env& e, const json& a) -> Value {
      return {conditional_observable_entropy_single(state(e, a, 0), ins(e, a, 1), obs(e, a, 2), e.tol())};
    });
    add("double_bar_chain", 4, [=](Env& e, const json& a) -> Value {
      const ChainEntropies c = double_bar_chain(state(e, a, 0), ins(e, a, 1), ins(e, a, 2), obs(e, a, 3), e.tol());
      return {chain_json(c), std::abs(c.iterated - c.composed)};
    });
    add("single_bar_chain", 4, [=](Env& e, const json& a) -> Value {
      return {chain_json(single_bar_chain(state(e, a, 0), ins(e, a, 1), ins(e, a, 2), obs(e, a, 3), e.tol()))};
    });
    return r;
  }();
  return registry;
}

// Converts nlohmann's byte offset into a line/column pair.
std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::optional<double> optional_number(const json& check, const char* key, const std::string& where) {
  if (!check.contains(key)) return std::nullopt;
  if (!check.at(key).is_number()) fail(ErrorKind::ParseError, where + ": '" + key + "' must be a number");
  return check.at(key).get<double>();
}

std::optional<std::string> optional_string(const json& check, const char* key, const std::string& where) {
  if (!check.contains(key)) return std::nullopt;
  if (!check.at(key).is_string()) fail(ErrorKind::ParseError, where + ": '" + key + "' must be a string");
  return check.at(key).get<std::string>();
}

SceneCheck parse_check(const json& c, std::size_t index) {
  std::string where = "check #" + std::to_string(index);
  if (!c.is_object()) fail(ErrorKind::ParseError, where + " must be an object");
  static const std::set<std::string> allowed{"name",     "check",     "args",      "expect", "expect_ref",
                                             "expect_gt", "expect_lt", "expect_error", "tol"};
  for (const auto& [key, value] : c.items()) {
    if (!allowed.contains(key)) fail(ErrorKind::ParseError, where + ": unknown field '" + key + "'");
  }
  SceneCheck out;
  if (!c.contains("name") || !c.at("name").is_string()) fail(ErrorKind::ParseError, where + ": missing string 'name'");
  out.name = c.at("name").get<std::string>();
  where = "check '" + out.name + "'";
  if (!c.contains("check") || !c.at("check").is_string()) fail(ErrorKind::ParseError, where + ": missing string 'check'");
  out.check = c.at("check").get<std::string>();
  const auto& registry = check_registry();
  const auto spec = registry.find(out.check);
  if (spec == registry.end()) fail(ErrorKind::ParseError, where + ": unknown check '" + out.check + "'");
  if (c.contains("args")) {
    if (!c.at("args").is_array()) fail(ErrorKind::ParseError, where + ": 'args' must be an array");
    out.args = c.at("args");
  }
  if (out.args.size() < spec->second.min_args || out.args.size() > spec->second.max_args) {
    fail(ErrorKind::ParseError, where + ": '" + out.check + "' takes " + std::to_string(spec->second.min_args) +
                                    (spec->second.max_args != spec->second.min_args ? " or more" : "") +
                                    " arguments, got " + std::to_string(out.args.size()));
  }
  if (c.contains("expect")) out.expect = c.at("expect");
  out.expect_ref = optional_string(c, "expect_ref", where);
  out.expect_gt = optional_number(c, "expect_gt", where);
  out.expect_lt = optional_number(c, "expect_lt", where);
  out.expect_error = optional_string(c, "expect_error", where);
  out.tol = optional_number(c, "tol", where);
  const int expectations = int(out.expect.has_value()) + int(out.expect_ref.has_value()) +
                           int(out.expect_gt.has_value()) + int(out.expect_lt.has_value()) +
                           int(out.expect_error.has_value());
  if (expectations > 1) fail(ErrorKind::ParseError, where + ": at most one expectation field is allowed");
  if (out.tol && !(*out.tol >= 0.0)) fail(ErrorKind::ParseError, where + ": 'tol' must be non-negative");
  return out;
}

double numeric(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  fail(ErrorKind::ValidationError, where + ": value is not a number: " + v.dump());
}

bool is_scene_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::ValidationError || k == ErrorKind::ReferenceError ||
         k == ErrorKind::DimMismatch;
}

json expected_json(Env& env, const SceneCheck& c) {
  if (c.expect) return *c.expect;
  if (c.expect_ref) {
    const Obj& o = env.get(*c.expect_ref);
    if (o.matrix) return to_json(*o.matrix);
    if (o.obs) return to_json(*o.obs);
    fail(ErrorKind::ReferenceError, "expect_ref '" + *c.expect_ref + "' must name a matrix-like object or observable");
  }
  if (c.expect_gt) return json{{">", *c.expect_gt}};
  if (c.expect_lt) return json{{"<", *c.expect_lt}};
  if (c.expect_error) return json{{"error", *c.expect_error}};
  return nullptr;
}

}  // namespace

// ---------------------------------------------------------------- public API

bool Scene::operator==(const Scene& other) const {
  return description == other.description && tolerance.eq_tol == other.tolerance.eq_tol &&
         tolerance.psd_tol == other.tolerance.psd_tol && objects == other.objects && checks == other.checks;
}

json Scene::to_json() const {
  json out = json::object();
  if (!description.empty()) out["description"] = description;
  out["tolerance"] = {{"eq_tol", tolerance.eq_tol}, {"psd_tol", tolerance.psd_tol}};
  json objs = json::object();
  for (const auto& [name, o] : objects) objs[name] = json{{o.kind, o.body}};
  out["objects"] = std::move(objs);
  json list = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name}, {"check", c.check}, {"args", c.args}};
    if (c.expect) j["expect"] = *c.expect;
    if (c.expect_ref) j["expect_ref"] = *c.expect_ref;
    if (c.expect_gt) j["expect_gt"] = *c.expect_gt;
    if (c.expect_lt) j["expect_lt"] = *c.expect_lt;
    if (c.expect_error) j["expect_error"] = *c.expect_error;
    if (c.tol) j["tol"] = *c.tol;
    list.push_back(std::move(j));
  }
  out["checks"] = std::move(list);
  return out;
}

Scene parse_scene(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    fail(ErrorKind::ParseError, location(text, e.byte) + ": " + what);
  }
  if (!doc.is_object()) fail(ErrorKind::ParseError, "scene must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "description" && key != "tolerance" && key != "objects" && key != "checks") {
      fail(ErrorKind::ParseError, "unknown top-level field '" + key + "'");
    }
  }

  Scene scene;
  if (doc.contains("description")) {
    if (!doc.at("description").is_string()) fail(ErrorKind::ParseError, "'description' must be a string");
    scene.description = doc.at("description").get<std::string>();
  }
  if (doc.contains("tolerance")) {
    const json& t = doc.at("tolerance");
    if (!t.is_object()) fail(ErrorKind::ParseError, "'tolerance' must be an object");
    for (const auto& [key, value] : t.items()) {
      if (key != "eq_tol" && key != "psd_tol") fail(ErrorKind::ParseError, "unknown tolerance field '" + key + "'");
      if (!value.is_number() || value.get<double>() < 0.0) {
        fail(ErrorKind::ParseError, "tolerance '" + key + "' must be a non-negative number");
      }
    }
    if (t.contains("eq_tol")) scene.tolerance.eq_tol = t.at("eq_tol").get<double>();
    if (t.contains("psd_tol")) scene.tolerance.psd_tol = t.at("psd_tol").get<double>();
  }
  if (doc.contains("objects")) {
    const json& objs = doc.at("objects");
    if (!objs.is_object()) fail(ErrorKind::ParseError, "'objects' must map names to typed literals");
    for (const auto& [name, spec] : objs.items()) {
      if (!spec.is_object() || spec.size() != 1) {
        fail(ErrorKind::ParseError, "object '" + name + "' must have exactly one kind key");
      }
      const std::string kind = spec.begin().key();
      const json& body = spec.begin().value();
      if (!object_kinds().contains(kind)) fail(ErrorKind::ParseError, "object '" + name + "': unknown kind '" + kind + "'");
      scene.objects.emplace(name, SceneObject{kind, body});
    }
  }
  if (doc.contains("checks")) {
    const json& checks = doc.at("checks");
    if (!checks.is_array()) fail(ErrorKind::ParseError, "'checks' must be an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < checks.size(); ++i) {
      SceneCheck c = parse_check(checks[i], i);
      if (!names.insert(c.name).second) fail(ErrorKind::ParseError, "duplicate check name '" + c.name + "'");
      scene.checks.push_back(std::move(c));
    }
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read scene file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scene(buf.str());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    const std::string msg = e.what();
    const std::string prefix = std::string(to_string(ErrorKind::ParseError)) + ": ";
    fail(ErrorKind::ParseError, path + ": " + (msg.starts_with(prefix) ? msg.substr(prefix.size()) : msg));
  }
}

std::vector<std::string> scene_check_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : check_registry()) names.push_back(name);
  return names;
}

void validate_scene(const Scene& scene) {
  Env env(scene);
  for (const auto& [name, obj] : scene.objects) env.get(name);
  const auto& registry = check_registry();
  for (const auto& c : scene.checks) {
    for (const auto& a : c.args) {
      if (a.is_string()) env.get(a.get<std::string>());
    }
    if (c.expect_ref) env.get(*c.expect_ref);
    // Argument kinds and dims are only known once the check binds them.
    try {
      registry.at(c.check).run(env, c.args);
    } catch (const Error& e) {
      if (is_scene_error(e.kind())) {
        fail(e.kind() == ErrorKind::DimMismatch ? ErrorKind::ValidationError : e.kind(),
             "check '" + c.name + "': " + e.what());
      }
    }
  }
}

json CheckResult::to_json() const {
  json out{{"name", name}, {"check", check}, {"value", value}, {"expected", expected},
           {"residual", residual}, {"pass", pass}};
  if (!error.empty()) out["error"] = error;
  return out;
}

bool SceneReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json SceneReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) list.push_back(c.to_json());
  return json{{"description", description}, {"passed", passed()}, {"checks", std::move(list)}};
}

SceneReport run_scene(const Scene& scene, std::optional<double> default_tol) {
  validate_scene(scene);
  Env env(scene);
  SceneReport report;
  report.description = scene.description;
  const auto& registry = check_registry();
  for (const auto& c : scene.checks) {
    CheckResult r;
    r.name = c.name;
    r.check = c.check;
    const double tol = c.tol.value_or(default_tol.value_or(scene.tolerance.eq_tol));
    r.expected = expected_json(env, c);
    Value v;
    try {
      v = registry.at(c.check).run(env, c.args);
    } catch (const Error& e) {
      if (c.expect_error) {
        r.value = json{{"error", std::string(to_string(e.kind()))}};
        r.pass = to_string(e.kind()) == *c.expect_error;
        r.error = e.what();
        report.checks.push_back(std::move(r));
        continue;
      }
      if (is_scene_error(e.kind())) {
        fail(e.kind() == ErrorKind::DimMismatch ? ErrorKind::ValidationError : e.kind(),
             "check '" + c.name + "': " + e.what());
      }
      r.error = e.what();
      r.residual = kInf;
      r.pass = false;
      report.checks.push_back(std::move(r));
      continue;
    }
    r.value = v.value;
    const double intrinsic = v.intrinsic.value_or(0.0);
    if (c.expect_error) {
      r.pass = false;
      r.error = "expected " + *c.expect_error + " but the check succeeded";
    } else if (c.expect_gt || c.expect_lt) {
      const double x = numeric(v.value, "check '" + c.name + "'");
      r.residual = x;
      r.pass = c.expect_gt ? x > *c.expect_gt : x < *c.expect_lt;
    } else if (c.expect || c.expect_ref) {
      r.residual = std::max(json_distance(v.value, r.expected), intrinsic);
      r.pass = r.residual <= tol;
    } else {
      r.residual = intrinsic;
      r.pass = intrinsic <= tol;
    }
    report.checks.push_back(std::move(r));
  }
  return report;
}

double json_distance(const json& a, const json& b) {
  const auto as_complex = [](const json& j) -> std::optional<cplx> {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
      return cplx(j[0].get<double>(), j[1].get<double>());
    }
    return std::nullopt;
  };
  if (a.is_number() || b.is_number()) {
    const auto za = as_complex(a);
    const auto zb = as_complex(b);
    return za && zb ? std::abs(*za - *zb) : kInf;
  }
  if (a.is_boolean() && b.is_boolean()) return a == b ? 0.0 : kInf;
  if (a.is_string() && b.is_string()) return a == b ? 0.0 : kInf;
  if (a.is_null() && b.is_null()) return 0.0;
  if (a.is_array() && b.is_array()) {
    if (a.size() != b.size()) return kInf;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, json_distance(a[i], b[i]));
    return worst;
  }
  if (a.is_object() && b.is_object()) {
    if (a.size() != b.size()) return kInf;
    double worst = 0.0;
    for (const auto& [key, value] : a.items()) {
      if (!b.contains(key)) return kInf;
      worst = std::max(worst, json_distance(value, b.at(key)));
    }
    return worst;
  }
  return kInf;
}

SceneObject scene_object(const State& rho) { return {"state", to_json(rho.matrix())}; }
SceneObject scene_object(const Effect& a) { return {"effect", to_json(a.matrix())}; }
SceneObject scene_object(const Operation& op) { return {"operation", to_json(op)}; }
SceneObject scene_object(const Observable& obs) { return {"observable", to_json(obs)}; }
SceneObject scene_object(const RealValuedObservable& obs) { return {"observable", to_json(obs)}; }
SceneObject scene_object(const Instrument& ins) { return {"instrument", to_json(ins)}; }

}  // namespace qcond
