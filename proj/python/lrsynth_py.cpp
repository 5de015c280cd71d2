// Python bindings. Models and policies cross the boundary as JSON (text or
// plain dicts), rationals as strings such as "1/100".

#include "lrsynth/errors.hpp"
#include "lrsynth/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace lrsynth;

namespace {

/// JSON text from a str (taken verbatim) or any object json.dumps accepts.
std::string json_text(const py::object& value) {
    if (py::isinstance<py::str>(value)) return value.cast<std::string>();
    return py::module_::import("json").attr("dumps")(value).cast<std::string>();
}

py::object to_python(const Json& doc) { return py::module_::import("json").attr("loads")(dump_json(doc)); }

/// Accepts str, int or fractions.Fraction.
Rational to_rational(const py::object& value) { return parse_rational(py::str(value).cast<std::string>()); }

class PyInstance {
  public:
    PyInstance(const py::object& mdp, std::optional<std::string> ltl, std::optional<std::string> hoa,
               const py::object& theta, const std::vector<std::string>& sss, const std::vector<py::object>& reward_thresholds,
               const std::string& objective, const std::optional<py::object>& freq_bound, bool per_mec) {
        AutomatonSource source;
        source.ltl = std::move(ltl);
        source.hoa_text = std::move(hoa);
        if (source.ltl && source.hoa_text) throw std::invalid_argument("give at most one of ltl and hoa");
        LongRunSpec spec;
        spec.theta = to_rational(theta);
        for (const auto& s : sss) spec.sss.push_back(parse_sss(s));
        for (const auto& r : reward_thresholds) spec.reward_thresholds.push_back(to_rational(r));
        spec.objective = parse_objective(objective);
        if (freq_bound) spec.frequency_bound = to_rational(*freq_bound);
        spec.per_mec_frequency = per_mec;
        instance_ = std::make_unique<Instance>(
            prepare_instance(parse_mdp(json_text(mdp)), load_automaton(source), std::move(spec)));
    }

    py::dict synthesize(const py::object& delta) const {
        const Rational d = to_rational(delta);
        SynthesisOutcome outcome;
        {
            py::gil_scoped_release release;
            outcome = lrsynth::synthesize(*instance_, d);
        }
        return py::dict("exit_code"_a = outcome.exit_code, "report"_a = to_python(outcome.report),
                        "policy"_a = outcome.policy ? to_python(*outcome.policy) : py::none());
    }

    py::dict check(const py::object& policy, const py::object& delta) const {
        const CheckOutcome outcome = check_policy(*instance_, parse_json_text(json_text(policy)), to_rational(delta));
        return py::dict("exit_code"_a = outcome.exit_code, "report"_a = to_python(outcome.report));
    }

    py::object simulate(const py::object& policy, size_t steps, uint64_t seed) const {
        const Json doc = parse_json_text(json_text(policy));
        SimulationResult result;
        {
            py::gil_scoped_release release;
            result = simulate_policy(*instance_, doc, steps, seed);
        }
        return to_python(simulation_to_json(instance_->product.mdp, result));
    }

    py::object product() const { return to_python(product_to_json(instance_->product)); }
    py::object mecs() const { return to_python(mecs_to_json(instance_->product.mdp, instance_->mecs)); }
    std::string lp_text() const { return format_lp(instance_->lp); }
    std::string automaton() const { return instance_->automaton.description; }

  private:
    std::unique_ptr<Instance> instance_;
};

}  // namespace

PYBIND11_MODULE(lrsynth, m) {
    m.doc() = "Policy synthesis for MDPs under LTL, steady-state and long-run reward constraints";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.attr("EXIT_OK") = kExitOk;
    m.attr("EXIT_ERROR") = kExitError;
    m.attr("EXIT_INFEASIBLE") = kExitInfeasible;
    m.attr("EXIT_VIOLATED") = kExitViolated;

    py::class_<PyInstance>(m, "Instance", "An MDP with an optional LTL objective and long-run constraints")
        .def(py::init<const py::object&, std::optional<std::string>, std::optional<std::string>, const py::object&,
                      const std::vector<std::string>&, const std::vector<py::object>&, const std::string&,
                      const std::optional<py::object>&, bool>(),
             "mdp"_a, "ltl"_a = py::none(), "hoa"_a = py::none(), "theta"_a = "0", "sss"_a = std::vector<std::string>{},
             "reward_thresholds"_a = std::vector<py::object>{}, "objective"_a = "feasibility",
             "freq_bound"_a = py::none(), "per_mec"_a = false)
        .def("synthesize", &PyInstance::synthesize, "delta"_a = "1/100",
             "Solve the LP, extract and verify a policy. Returns exit_code, report and policy.")
        .def("check", &PyInstance::check, "policy"_a, "delta"_a = "1/100", "Re-verify a stored policy.")
        .def("simulate", &PyInstance::simulate, "policy"_a, "steps"_a = 100000, "seed"_a = 1,
             "Simulate a stored policy on the product.")
        .def("product", &PyInstance::product)
        .def("mecs", &PyInstance::mecs)
        .def("lp_text", &PyInstance::lp_text)
        .def_property_readonly("automaton", &PyInstance::automaton);

    m.def("mecs", [](const py::object& mdp) {
        const Mdp parsed = parse_mdp(json_text(mdp));
        return to_python(mecs_to_json(parsed, compute_mecs(parsed)));
    }, "mdp"_a, "MEC decomposition of an MDP.");

    m.def("format_ltl", [](const std::string& text) { return ltl::to_string(ltl::parse(text)); }, "formula"_a,
          "Parse a formula and print it in canonical form.");

    m.def("eval_lasso", [](const std::string& formula, const std::vector<ltl::Letter>& prefix,
                           const std::vector<ltl::Letter>& cycle) {
        if (cycle.empty()) throw std::invalid_argument("the cycle must be nonempty");
        return ltl::eval_lasso(ltl::parse(formula), ltl::LassoWord{prefix, cycle});
    }, "formula"_a, "prefix"_a, "cycle"_a, "Whether the word prefix . cycle^omega satisfies the formula.");
}
