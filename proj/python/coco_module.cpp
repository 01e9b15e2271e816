// Python bindings for the main operations: rate schedules, the hedge engine,
// the constrained-expert policy, decision-set geometry, and the run harness.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coco/convex_policy.hpp"
#include "coco/core.hpp"
#include "coco/environments.hpp"
#include "coco/errors.hpp"
#include "coco/expert_policy.hpp"
#include "coco/geometry.hpp"
#include "coco/harness.hpp"
#include "coco/hedge.hpp"

namespace py = pybind11;

namespace {

// Mutating wrappers; the C++ core threads immutable state through pure
// transitions, which is awkward from Python.
struct PyHedge {
  coco::HedgeState state;

  PyHedge(int n, double growth_cap, double initial_scale)
      : state(coco::make_hedge(n, growth_cap, initial_scale)) {}

  double learning_rate() const { return coco::learning_rate(state); }
  std::vector<double> distribution() const {
    return coco::distribution(state).probs;
  }
  void observe(const std::vector<double>& loss,
               const std::vector<double>& played, double scale_bound) {
    state = coco::observe(std::move(state), loss,
                          coco::ExpertDistribution{played}, scale_bound);
  }
};

struct PyConstrainedExpert {
  coco::ConstrainedExpertPolicy policy;

  PyConstrainedExpert(int n, long horizon, double beta)
      : policy(coco::make_constrained_expert(n, horizon, beta)) {}

  std::vector<double> act() const { return coco::act(policy).probs; }
  void feedback(const std::vector<double>& cost,
                const std::vector<double>& violation,
                const std::vector<double>& played) {
    policy = coco::feedback(std::move(policy),
                            coco::ExpertRound{cost, violation},
                            coco::ExpertDistribution{played});
  }
  double ccv() const { return policy.ccv.total; }
  double rate() const { return policy.ccv.lyapunov.rate; }
  double scale() const { return policy.hedge.scale; }
  double algo_loss() const { return policy.hedge.algo_loss; }
  std::vector<double> cum_losses() const { return policy.hedge.cum_losses; }
};

coco::DecisionSet set_from_name(const std::string& kind,
                                const py::kwargs& kwargs) {
  if (kind == "simplex") {
    return coco::DecisionSet::simplex(kwargs["n"].cast<int>());
  }
  if (kind == "box") {
    return coco::DecisionSet::box(kwargs["lower"].cast<coco::Point>(),
                                  kwargs["upper"].cast<coco::Point>());
  }
  if (kind == "ball") {
    return coco::DecisionSet::ball(kwargs["center"].cast<coco::Point>(),
                                   kwargs["radius"].cast<double>());
  }
  throw coco::Error("bad-config", "unknown set kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(coco, m) {
  m.doc() = "Online convex optimization with adversarial constraints";

  py::register_exception<coco::Error>(m, "CocoError");

  m.def("lambda_expert", &coco::lambda_expert, py::arg("horizon"),
        py::arg("beta"), py::arg("n_experts"));
  m.def("lambda_smooth", &coco::lambda_smooth, py::arg("horizon"),
        py::arg("beta"), py::arg("diameter"), py::arg("smoothness"));
  m.def("lambda_budget", &coco::lambda_budget, py::arg("horizon"),
        py::arg("beta"), py::arg("budget"), py::arg("budget_constant") = 8.0);
  m.def(
      "lyapunov_derivative",
      [](double rate, double ccv) {
        return coco::lyapunov_derivative(coco::make_lyapunov(rate), ccv);
      },
      py::arg("rate"), py::arg("ccv"));
  m.def(
      "normalize",
      [](double cost, double violation, double cost_bound,
         double violation_bound) {
        return coco::normalize(cost, violation,
                               coco::Normalizer{cost_bound, violation_bound});
      },
      py::arg("cost"), py::arg("violation"), py::arg("cost_bound") = 1.0,
      py::arg("violation_bound") = 1.0);
  m.def("adaptive_regret_bound", &coco::adaptive_regret_bound,
        py::arg("comparator_loss"), py::arg("final_scale"), py::arg("n"),
        py::arg("growth_cap"));
  m.def("smooth_regret_bound", &coco::smooth_regret_bound,
        py::arg("comparator_loss"), py::arg("diameter"), py::arg("smoothness"));
  m.def("cover_size_bound", &coco::cover_size_bound, py::arg("diameter"),
        py::arg("delta"), py::arg("dimension"));
  m.def(
      "standard_hedge_distribution",
      [](const std::vector<double>& cum_losses, double eta) {
        return coco::standard_hedge_distribution(cum_losses, eta).probs;
      },
      py::arg("cum_losses"), py::arg("eta"));
  m.def(
      "surrogate_cost",
      [](const std::vector<double>& cost, const std::vector<double>& violation,
         double phi_prime) {
        return coco::surrogate_cost(cost, violation, phi_prime);
      },
      py::arg("cost"), py::arg("violation"), py::arg("phi_prime"));

  py::class_<PyHedge>(m, "Hedge")
      .def(py::init<int, double, double>(), py::arg("n"),
           py::arg("growth_cap") = coco::kDefaultGrowthCap,
           py::arg("initial_scale") = 1.0)
      .def("learning_rate", &PyHedge::learning_rate)
      .def("distribution", &PyHedge::distribution)
      .def("observe", &PyHedge::observe, py::arg("loss"), py::arg("played"),
           py::arg("scale_bound"))
      .def_property_readonly(
          "algo_loss", [](const PyHedge& h) { return h.state.algo_loss; })
      .def_property_readonly(
          "cum_losses", [](const PyHedge& h) { return h.state.cum_losses; })
      .def_property_readonly("scale",
                             [](const PyHedge& h) { return h.state.scale; });

  py::class_<PyConstrainedExpert>(m, "ConstrainedExpertPolicy")
      .def(py::init<int, long, double>(), py::arg("n"), py::arg("horizon"),
           py::arg("beta"))
      .def("act", &PyConstrainedExpert::act)
      .def("feedback", &PyConstrainedExpert::feedback, py::arg("cost"),
           py::arg("violation"), py::arg("played"))
      .def_property_readonly("ccv", &PyConstrainedExpert::ccv)
      .def_property_readonly("rate", &PyConstrainedExpert::rate)
      .def_property_readonly("scale", &PyConstrainedExpert::scale)
      .def_property_readonly("algo_loss", &PyConstrainedExpert::algo_loss)
      .def_property_readonly("cum_losses", &PyConstrainedExpert::cum_losses);

  py::class_<coco::DecisionSet>(m, "DecisionSet")
      .def(py::init(&set_from_name), py::arg("kind"))
      .def_property_readonly("dimension", &coco::DecisionSet::dimension)
      .def_property_readonly("diameter", &coco::DecisionSet::diameter)
      .def("contains",
           [](const coco::DecisionSet& set, const coco::Point& point) {
             return set.contains(point);
           })
      .def("project", [](const coco::DecisionSet& set,
                         const coco::Point& point) {
        return coco::project(set, point);
      });

  m.def(
      "build_cover",
      [](const coco::DecisionSet& set, double delta, std::size_t max_centers) {
        return coco::build_cover(set, delta, max_centers).centers;
      },
      py::arg("set"), py::arg("delta"), py::arg("max_centers") = 10'000'000);

  m.def(
      "run_summary_json",
      [](const std::string& config_text) {
        return coco::render_json(coco::run(coco::parse_config_text(config_text)));
      },
      py::arg("config_text"),
      "Execute a flat key=value config and return the summary JSON");
  m.def(
      "run_to_files",
      [](const std::string& config_text, const std::string& stem) {
        const coco::RunRecord record =
            coco::run(coco::parse_config_text(config_text));
        return coco::emit_run_files(record, stem);
      },
      py::arg("config_text"), py::arg("stem"));
}
