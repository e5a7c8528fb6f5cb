#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmdp/oracles.hpp"
#include "dmdp/worstcase.hpp"

namespace py = pybind11;
using namespace dmdp;

namespace {

InitMode mode_from_string(const std::string& mode) {
    if (mode == "lowest") return InitMode::LowestIndex;
    if (mode == "greedy") return InitMode::GreedyWeight;
    throw std::invalid_argument("unknown init mode '" + mode + "' (use lowest or greedy)");
}

std::vector<std::string> rational_strings(const std::vector<Rational>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

py::dict eval_dict(const Evaluation& e) {
    py::dict out;
    out["val"] = rational_strings(e.val);
    out["pot"] = rational_strings(e.pot);
    return out;
}

py::dict sequence_report_dict(const SequenceReport& r) {
    py::dict out;
    out["n"] = r.n;
    out["init"] = r.init == InitMode::LowestIndex ? "lowest" : "greedy";
    out["matched"] = r.matched;
    out["iterations"] = r.iterations;
    out["expected"] = r.expected;
    if (r.first_divergence) {
        py::dict div;
        div["step"] = r.first_divergence->step;
        div["expected"] = r.first_divergence->expected;
        div["actual"] = r.first_divergence->actual;
        out["first_divergence"] = div;
    } else {
        out["first_divergence"] = py::none();
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact mean-payoff policy iteration for deterministic MDPs";

    py::register_exception<ParseError>(m, "DmdpParseError", PyExc_ValueError);

    py::class_<Dmdp>(m, "Dmdp")
        .def_static("parse", &Dmdp::parse, py::arg("text"))
        .def_property_readonly("num_vertices", &Dmdp::num_vertices)
        .def_property_readonly("num_edges", &Dmdp::num_edges)
        .def_property_readonly("max_abs_weight", &Dmdp::max_abs_weight)
        .def_property_readonly("size_bits", &Dmdp::size_bits)
        .def_property_readonly("names", &Dmdp::names)
        .def("successors",
             [](const Dmdp& d, Vertex v) {
                 std::vector<std::pair<Vertex, Weight>> out;
                 for (const Edge& e : d.out(v)) out.emplace_back(e.to, e.weight);
                 return out;
             },
             py::arg("vertex"))
        .def("serialize", &Dmdp::serialize)
        .def("to_dot",
             [](const Dmdp& d, std::optional<Policy> highlight) {
                 return d.to_dot(highlight ? &*highlight : nullptr);
             },
             py::arg("highlight") = py::none())
        .def("__eq__", [](const Dmdp& a, const Dmdp& b) { return a == b; })
        .def("__repr__", [](const Dmdp& d) {
            return "<Dmdp " + std::to_string(d.num_vertices()) + " vertices, " +
                   std::to_string(d.num_edges()) + " edges>";
        });

    m.def("decompose",
          [](const Dmdp& d, const Policy& s, Vertex start) {
              LassoRun run = decompose(d, s, start);
              py::dict out;
              out["path"] = run.path;
              out["cycle"] = run.cycle;
              out["head"] = run.head;
              return out;
          },
          py::arg("dmdp"), py::arg("policy"), py::arg("start"));

    m.def("evaluate",
          [](const Dmdp& d, const Policy& s) { return eval_dict(evaluate(d, s)); },
          py::arg("dmdp"), py::arg("policy"));

    m.def("bellman",
          [](const Dmdp& d, const Policy& s) {
              BellmanResult r = bellman(d, s);
              return py::make_tuple(r.policy, r.switched);
          },
          py::arg("dmdp"), py::arg("policy"));

    m.def("initial_policy",
          [](const Dmdp& d, const std::string& mode) {
              return initial_policy(d, mode_from_string(mode));
          },
          py::arg("dmdp"), py::arg("mode") = "lowest");

    m.def("run_howard",
          [](const Dmdp& d, const Policy& start, std::optional<std::int64_t> max_iterations,
             bool include_trace) {
              IterationTrace trace = run_howard(d, start, max_iterations);
              py::dict out;
              out["iterations"] = trace.iterations;
              out["final_policy"] = trace.final_step().policy;
              out["val"] = rational_strings(trace.final_step().eval.val);
              out["pot"] = rational_strings(trace.final_step().eval.pot);
              if (include_trace) {
                  py::list steps;
                  for (const auto& step : trace.steps) {
                      py::dict s;
                      s["policy"] = step.policy;
                      s["switched"] = step.switched;
                      s["eval"] = eval_dict(step.eval);
                      steps.append(s);
                  }
                  out["trace"] = steps;
              }
              return out;
          },
          py::arg("dmdp"), py::arg("start"), py::arg("max_iterations") = py::none(),
          py::arg("include_trace") = false);

    m.def("optimal_values",
          [](const Dmdp& d) { return rational_strings(optimal_values(d).val); },
          py::arg("dmdp"));

    m.def("brute_force_values",
          [](const Dmdp& d, std::int64_t limit) {
              return rational_strings(brute_force_values(d, limit).val);
          },
          py::arg("dmdp"), py::arg("policy_space_limit") = 1000000);

    m.def("random_dmdp",
          [](int n, int degree_min, int degree_max, Weight weight_min, Weight weight_max,
             std::uint64_t seed) {
              RandomSpec spec;
              spec.n = n;
              spec.out_degree_min = degree_min;
              spec.out_degree_max = degree_max;
              spec.weight_min = weight_min;
              spec.weight_max = weight_max;
              spec.seed = seed;
              return random_dmdp(spec);
          },
          py::arg("n"), py::arg("degree_min") = 1, py::arg("degree_max") = 3,
          py::arg("weight_min") = -9, py::arg("weight_max") = 9, py::arg("seed") = 0);

    m.def("worst_case_instance", &worst_case_instance, py::arg("n"));
    m.def("funnel_policy", &funnel_policy, py::arg("n"), py::arg("i"));
    m.def("lane_policy", &lane_policy, py::arg("n"), py::arg("i"), py::arg("j"));
    m.def("takeover_policy", &takeover_policy, py::arg("n"), py::arg("i"));
    m.def("expected_policy_sequence", &expected_policy_sequence, py::arg("n"));
    m.def("expected_iterations", &expected_iterations, py::arg("n"));
    m.def("lane_weight", &lane_weight, py::arg("n"));
    m.def("loop_weight", &loop_weight, py::arg("n"), py::arg("i"));

    m.def("check_weight_inequalities",
          [](int n) {
              InequalityReport r = check_weight_inequalities(n);
              py::dict out;
              out["n"] = r.n;
              out["all_hold"] = r.all_hold;
              out["violations"] = r.violations;
              return out;
          },
          py::arg("n"));

    m.def("verify_transitions",
          [](int n) {
              TransitionReport r = verify_transitions(n);
              py::dict out;
              out["n"] = r.n;
              out["all_pass"] = r.all_pass;
              py::list items;
              for (const auto& item : r.items) {
                  py::dict it;
                  it["item"] = item.name;
                  it["checked"] = item.checked;
                  it["pass"] = item.pass;
                  it["counterexample"] =
                      item.pass ? py::object(py::none()) : py::object(py::str(item.counterexample));
                  items.append(it);
              }
              out["items"] = items;
              return out;
          },
          py::arg("n"));

    m.def("verify_trajectory",
          [](int n, const std::string& mode) {
              return sequence_report_dict(verify_trajectory(n, mode_from_string(mode)));
          },
          py::arg("n"), py::arg("init") = "lowest");
}
