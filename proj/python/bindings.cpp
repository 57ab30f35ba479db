#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qcond/context_stats.hpp"
#include "qcond/entropy.hpp"
#include "qcond/error.hpp"
#include "qcond/instruments.hpp"
#include "qcond/json_io.hpp"
#include "qcond/propgen.hpp"
#include "qcond/scene.hpp"
#include "qcond/suites.hpp"

namespace py = pybind11;
using namespace qcond;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    fail(ErrorKind::InvalidArgument, "expected a square 2-d array");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(n, std::vector<cplx>(a.data(), a.data() + n * n));
}

py::array_t<cplx> to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  py::array_t<cplx> out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Observable observable_from(const py::dict& effects) {
  std::vector<std::string> labels;
  std::vector<Effect> list;
  for (auto [k, v] : effects) {
    labels.push_back(py::str(k));
    list.emplace_back(to_matrix(v.cast<CArray>()));
  }
  Observable obs(std::move(labels), std::move(list));
  require_valid(obs);
  return obs;
}

py::dict family_dict(const EffectFamily& f) {
  py::dict out;
  for (std::size_t i = 0; i < f.size(); ++i) out[py::str(f.labels()[i])] = to_array(f.effects()[i].matrix());
  return out;
}

py::dict triple(const TripleCheck& t) {
  py::dict d;
  d["lhs"] = t.lhs;
  d["mid"] = t.mid;
  d["rhs"] = t.rhs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conditioned effects, operations, observables and instruments";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "Error")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = error_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  py::class_<State>(m, "State")
      .def(py::init([](const CArray& rho, bool validate) {
             State s(to_matrix(rho));
             if (validate) require_valid(s);
             return s;
           }),
           py::arg("rho"), py::arg("validate") = true)
      .def_static("maximally_mixed", &State::maximally_mixed)
      .def_property_readonly("matrix", [](const State& s) { return to_array(s.matrix()); })
      .def_property_readonly("dim", &State::dim);

  py::class_<Effect>(m, "Effect")
      .def(py::init([](const CArray& a, bool validate) {
             Effect e(to_matrix(a));
             if (validate) require_valid(e);
             return e;
           }),
           py::arg("a"), py::arg("validate") = true)
      .def_static("identity", &Effect::identity)
      .def_property_readonly("matrix", [](const Effect& e) { return to_array(e.matrix()); })
      .def_property_readonly("dim", &Effect::dim);

  py::class_<Operation>(m, "Operation")
      .def(py::init([](const std::vector<CArray>& kraus) {
             std::vector<ComplexMatrix> ks;
             for (const auto& k : kraus) ks.push_back(to_matrix(k));
             Operation op(std::move(ks));
             require_valid(op);
             return op;
           }),
           py::arg("kraus"))
      .def_static("identity", &Operation::identity)
      .def_property_readonly("kraus",
                             [](const Operation& op) {
                               py::list out;
                               for (const auto& k : op.kraus()) out.append(to_array(k));
                               return out;
                             })
      .def_property_readonly("dim", &Operation::dim);

  py::class_<MeasurementContext>(m, "MeasurementContext")
      .def(py::init<Operation>())
      .def_property_readonly("op", &MeasurementContext::op)
      .def_property_readonly("effect", &MeasurementContext::effect);

  py::class_<Observable>(m, "Observable")
      .def(py::init(&observable_from), py::arg("effects"))
      .def_property_readonly("labels", &Observable::labels)
      .def_property_readonly("effects", &family_dict)
      .def("__len__", &Observable::size);

  py::class_<RealValuedObservable>(m, "RealValuedObservable")
      .def(py::init<Observable, std::map<std::string, double>>(), py::arg("observable"), py::arg("values"))
      .def_property_readonly("observable", &RealValuedObservable::observable)
      .def_property_readonly("values", &RealValuedObservable::values);

  py::class_<Instrument>(m, "Instrument")
      .def(py::init([](const py::dict& ops) {
             std::vector<std::string> labels;
             std::vector<Operation> list;
             for (auto [k, v] : ops) {
               labels.push_back(py::str(k));
               list.push_back(v.cast<Operation>());
             }
             Instrument ins(std::move(labels), std::move(list));
             require_valid(ins);
             return ins;
           }),
           py::arg("ops"))
      .def_property_readonly("labels", &Instrument::labels)
      .def("op", &Instrument::op, py::arg("label"))
      .def("__len__", &Instrument::size);

  // core and operations
  m.def("prob", [](const State& r, const Effect& a) { return prob(r, a); });
  m.def("complement", &complement);
  m.def("is_sharp", [](const Effect& a) { return is_sharp(a); });
  m.def("is_atomic", [](const Effect& a) { return is_atomic(a); });
  m.def("luders", [](const Effect& a) { return luders(a); });
  m.def("holevo", [](const Effect& a, const State& alpha) { return holevo(a, alpha); });
  m.def("apply", [](const Operation& op, const State& r) { return to_array(apply(op, r)); });
  m.def("dual_apply", [](const Operation& op, const CArray& a) { return to_array(dual_apply(op, to_matrix(a))); });
  m.def("measured_effect", &measured_effect);
  m.def("is_channel", [](const Operation& op) { return is_channel(op); });
  m.def("compose", &compose, py::arg("first"), py::arg("second"));
  m.def("choi_distance", py::overload_cast<const Operation&, const Operation&>(&choi_distance));
  m.def("choi_distance", py::overload_cast<const Instrument&, const Instrument&>(&choi_distance));
  m.def("maps_equal", [](const Operation& a, const Operation& b) { return maps_equal(a, b); });
  m.def("maps_equal", [](const Instrument& a, const Instrument& b) { return maps_equal(a, b); });
  m.def("sequential_product", &sequential_product);
  m.def("conditional_prob",
        [](const State& r, const MeasurementContext& c, const Effect& b) { return conditional_prob(r, c, b); });
  m.def("updated_state", [](const State& r, const MeasurementContext& c) { return updated_state(r, c); });
  m.def("bayes2_residual", [](const State& r, const MeasurementContext& a, const MeasurementContext& b) {
    return bayes2_residual(r, a, b);
  });
  m.def("bayes2_algebraic_residual", &bayes2_algebraic_residual);

  // observables and instruments
  m.def("distribution", [](const State& r, const Observable& a) {
    py::dict out;
    for (const auto& [label, p] : distribution(r, a)) out[py::str(label)] = p;
    return out;
  });
  m.def("expectation", &expectation);
  m.def("luders_instrument", [](const Observable& a) { return luders_instrument(a); });
  m.def("holevo_instrument",
        [](const Observable& a, const std::map<std::string, State>& alphas) { return holevo_instrument(a, alphas); });
  m.def("bar_channel", &bar_channel);
  m.def("measured_observable", &measured_observable);
  m.def("condition_effect", &condition_effect);
  m.def("condition_observable",
        py::overload_cast<const Observable&, const Instrument&>(&condition_observable));
  m.def("condition_instrument", &condition_instrument, py::arg("j"), py::arg("i"));
  m.def("compose_instruments", &compose_instruments);
  m.def("bayes1_check",
        [](const State& r, const Instrument& i, const Effect& a) { return triple(bayes1_check(r, i, a)); });
  m.def("bayes1_expectation_check", [](const State& r, const Instrument& i, const RealValuedObservable& b) {
    return triple(bayes1_expectation_check(r, i, b));
  });
  m.def("atomic_context", [](const std::vector<Observable>& family) {
    AtomicContext c = atomic_context(family);
    return py::make_tuple(c.observable, c.instrument);
  });

  // contextual statistics
  m.def("contextual_expectation", &contextual_expectation);
  m.def("contextual_variance", [](const State& r, const Instrument& i, const RealValuedObservable& b) {
    return contextual_variance(r, i, b);
  });
  m.def("contextual_covariance", &contextual_covariance);
  m.def("contextual_correlation", &contextual_correlation);
  m.def("commutator_trace", &commutator_trace);
  m.def("uncertainty_report", [](const State& r, const Instrument& i, const RealValuedObservable& b,
                                 const RealValuedObservable& c) { return to_python(to_json(uncertainty_report(r, i, b, c))); });

  // entropies
  m.def("effect_entropy", [](const State& r, const Effect& a) { return effect_entropy(r, a); });
  m.def("sequential_entropy",
        [](const State& r, const MeasurementContext& c, const Effect& b) { return sequential_entropy(r, c, b); });
  m.def("conditional_effect_entropy", [](const State& r, const MeasurementContext& c, const Effect& b) {
    return conditional_effect_entropy(r, c, b);
  });
  m.def("lemma31_criterion", [](const MeasurementContext& c, const Effect& b) { return lemma31_criterion(c, b); });
  m.def("entropy_gap",
        [](const State& r, const MeasurementContext& c, const Effect& b) { return entropy_gap(r, c, b); });
  m.def("observable_entropy", [](const State& r, const Observable& a) { return observable_entropy(r, a); });
  m.def("conditional_observable_entropy_double", [](const State& r, const Instrument& i, const Observable& b) {
    return conditional_observable_entropy_double(r, i, b);
  });
  m.def("conditional_observable_entropy_single", [](const State& r, const Instrument& i, const Observable& b) {
    return conditional_observable_entropy_single(r, i, b);
  });
  m.def("double_bar_chain", [](const State& r, const Instrument& i, const Instrument& j, const Observable& c) {
    const ChainEntropies e = double_bar_chain(r, i, j, c);
    return py::make_tuple(e.iterated, e.composed);
  });
  m.def("single_bar_chain", [](const State& r, const Instrument& i, const Instrument& j, const Observable& c) {
    const ChainEntropies e = single_bar_chain(r, i, j, c);
    return py::make_tuple(e.iterated, e.composed);
  });

  // random objects
  py::class_<Generator>(m, "Generator")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &Generator::seed)
      .def("random_state", &Generator::random_state)
      .def("random_effect", &Generator::random_effect)
      .def("random_observable", &Generator::random_observable)
      .def("random_atomic_observable", &Generator::random_atomic_observable)
      .def("random_channel", &Generator::random_channel)
      .def("random_operation_measuring", &Generator::random_operation_measuring)
      .def("random_instrument_measuring", &Generator::random_instrument_measuring)
      .def("random_alphas", &Generator::random_alphas);

  // suites and scenes
  m.def("suite_names", [] {
    std::vector<std::string> out;
    for (const auto& s : suite_catalog()) out.push_back(s.name);
    return out;
  });
  m.def(
      "run_suite",
      [](const std::string& name, std::vector<std::size_t> dims, std::optional<std::size_t> trials,
         std::uint64_t seed) {
        const SuiteInfo& info = suite_info(name);
        if (dims.empty()) dims = info.default_dims;
        return to_python(run_suite(name, dims, trials.value_or(info.default_trials), seed).to_json());
      },
      py::arg("name"), py::arg("dims") = std::vector<std::size_t>{}, py::arg("trials") = py::none(),
      py::arg("seed") = 7);
  m.def(
      "run_scene",
      [](const py::object& scene, std::optional<double> tol) {
        const Scene s = py::isinstance<py::dict>(scene) ? parse_scene(from_python(scene).dump())
                                                        : load_scene(py::str(scene).cast<std::string>());
        return to_python(run_scene(s, tol).to_json());
      },
      py::arg("scene"), py::arg("tol") = py::none());
  m.def(
      "validate_scene",
      [](const py::object& scene) {
        const Scene s = py::isinstance<py::dict>(scene) ? parse_scene(from_python(scene).dump())
                                                        : load_scene(py::str(scene).cast<std::string>());
        validate_scene(s);
      },
      py::arg("scene"));
}
