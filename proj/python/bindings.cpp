#include "mx3/distributions.hpp"
#include "mx3/error.hpp"
#include "mx3/families.hpp"
#include "mx3/fourier.hpp"
#include "mx3/oracle.hpp"
#include "mx3/pipeline.hpp"
#include "mx3/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mx3;

namespace {

using Values = std::vector<std::vector<int>>;

Assignment to_assignment(const Values& values) {
  Assignment a;
  for (const auto& block : values) {
    std::vector<Sign> signs;
    for (int v : block) {
      if (v != 1 && v != -1) throw ValidationError("assignment values must be +1 or -1");
      signs.push_back(static_cast<Sign>(v));
    }
    a.values.push_back(std::move(signs));
  }
  return a;
}

Values from_assignment(const Assignment& a) {
  Values out;
  for (const auto& block : a.values) out.emplace_back(block.begin(), block.end());
  return out;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string json_text(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings for the mx3 measurement toolkit";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
  static py::exception<CapError> cap(m, "CapError", base.ptr());
  static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const CapError& e) {
      py::set_error(cap, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("sizes", [](const Instance& i) {
        return std::vector<std::uint32_t>(i.sizes().begin(), i.sizes().end());
      })
      .def_property_readonly("num_vars", &Instance::num_vars)
      .def_property_readonly("num_constraints", [](const Instance& i) { return i.constraints().size(); })
      .def_property_readonly("total_weight", &Instance::total_weight)
      .def("xor_only", &Instance::xor_only)
      .def("__repr__", [](const Instance& i) {
        return "<Instance sizes=(" + std::to_string(i.sizes()[0]) + "," + std::to_string(i.sizes()[1]) + "," +
               std::to_string(i.sizes()[2]) + ") constraints=" + std::to_string(i.constraints().size()) + ">";
      });

  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("serialize", [](const Instance& i) { return serialize(i); }, py::arg("instance"));
  m.def("evaluate", [](const Instance& i, const Values& v) { return evaluate(i, to_assignment(v)); },
        py::arg("instance"), py::arg("assignment"));
  m.def("random_baseline", &random_baseline, py::arg("instance"), py::arg("trials"), py::arg("seed"));
  m.def("random_instance", [](const std::array<std::uint32_t, 3>& sizes, std::size_t count, std::uint64_t seed) {
    return random_instance(sizes, count, seed);
  }, py::arg("sizes"), py::arg("constraints"), py::arg("seed"));
  m.def("planted_instance",
        [](const std::array<std::uint32_t, 3>& sizes, std::size_t count, double eps, std::uint64_t seed) {
          auto p = planted_instance(sizes, count, eps, seed);
          return py::make_tuple(p.instance, from_assignment(p.planted), p.corrupted);
        },
        py::arg("sizes"), py::arg("constraints"), py::arg("eps"), py::arg("seed"));

  m.def("predicate_fourier", [](unsigned mask) {
    if (mask > 255) throw ValidationError("mask must lie in 0..255");
    return dump(predicate_fourier(Predicate3{static_cast<std::uint8_t>(mask)}));
  }, py::arg("mask"));
  m.def("instance_objective", [](const Instance& i) { return dump(instance_objective(i)); }, py::arg("instance"));

  m.def("check_pairwise_independent",
        [](const std::string& dist_text, const std::string& gamma, const std::string& tol) {
          const auto check = check_pairwise_independent(parse_distribution(dist_text), parse_rational(gamma),
                                                        parse_rational(tol));
          Json j;
          j["holds"] = check.holds;
          j["witness"] = check.witness;
          j["observed"] = to_string(check.observed);
          j["expected"] = to_string(check.expected);
          Json singles = Json::array();
          for (const auto& s : check.singles) singles.push_back(to_string(s));
          j["singles"] = singles;
          return json_text(j);
        },
        py::arg("dist_text"), py::arg("gamma") = "1/2", py::arg("tol") = "0");

  m.def("brute_force", [](const Instance& i, unsigned jobs) {
    OracleResult r;
    {
      py::gil_scoped_release release;
      r = brute_force(i, jobs);
    }
    return py::make_tuple(r.optimum, from_assignment(r.assignment), r.optimal_count);
  }, py::arg("instance"), py::arg("jobs") = 0);

  m.def("two_round",
        [](const Instance& i, std::uint64_t seed, int restarts, bool oracle, std::uint64_t baseline_trials) {
          PipelineConfig cfg;
          cfg.seed = seed;
          cfg.restarts = restarts;
          cfg.oracle = oracle;
          cfg.baseline_trials = baseline_trials;
          std::pair<Assignment, PipelineReport> out;
          {
            py::gil_scoped_release release;
            out = two_round(i, cfg);
          }
          return py::make_tuple(from_assignment(out.first), json_text(to_json(out.second)));
        },
        py::arg("instance"), py::arg("seed"), py::arg("restarts") = 5, py::arg("oracle") = false,
        py::arg("baseline_trials") = 10000);

  m.def("gap_experiment",
        [](const std::string& family, std::size_t count, const std::array<std::uint32_t, 3>& sizes,
           std::size_t constraints, double eps, std::uint64_t seed, bool oracle, unsigned jobs) {
          FamilySpec spec;
          spec.family = parse_family(family);
          spec.count = count;
          spec.sizes = sizes;
          spec.constraints = constraints;
          spec.eps = eps;
          PipelineConfig cfg;
          cfg.seed = seed;
          cfg.oracle = oracle;
          ExperimentResult res;
          {
            py::gil_scoped_release release;
            res = gap_experiment(spec, cfg, jobs);
          }
          Json rows = Json::array();
          for (const auto& row : res.rows) rows.push_back(to_json(row));
          Json j;
          j["rows"] = rows;
          j["aggregate"] = to_json(res.aggregate);
          return json_text(j);
        },
        py::arg("family"), py::arg("count"), py::arg("sizes"), py::arg("constraints"), py::arg("eps") = 0.1,
        py::arg("seed") = 0, py::arg("oracle") = false, py::arg("jobs") = 1);
}
