// Python bindings for the main operations: spaces and expected-distance
// measures, Moebius conversions, product expansion, formula parsing, and the
// consistency/entailment pipeline. Rationals cross the boundary as
// fractions.Fraction; floats are rejected to keep everything exact.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edlogic/decision.hpp"
#include "edlogic/json_io.hpp"

namespace py = pybind11;
using namespace edlogic;
using nlohmann::json;

namespace pybind11 {
namespace detail {

template <>
struct type_caster<mpq_class> {
 public:
  PYBIND11_TYPE_CASTER(mpq_class, const_name("Fraction"));

  bool load(handle src, bool) {
    if (PyFloat_Check(src.ptr())) return false;  // floats lose exactness
    if (PyLong_Check(src.ptr()) || PyUnicode_Check(src.ptr())) {
      try {
        value = parse_rational(std::string(py::str(src)));
        return true;
      } catch (const Error&) {
        return false;
      }
    }
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    if (py::isinstance(src, fraction)) {
      value = parse_rational(std::string(py::str(src)));
      return true;
    }
    return false;
  }

  static handle cast(const mpq_class& src, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(rat_str(src)).release();
  }
};

}  // namespace detail
}  // namespace pybind11

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default: return py::none();
  }
}

std::vector<std::string> table_points(const py::object& points) {
  return points.cast<std::vector<std::string>>();
}

// values keyed by comma-joined point names, as in the file format
std::pair<Frame, std::vector<Rat>> table_from_py(const py::object& points,
                                                 const py::dict& values) {
  json j;
  j["points"] = table_points(points);
  json table = json::object();
  for (const auto& [key, value] : values)
    table[key.cast<std::string>()] = rat_str(value.cast<mpq_class>());
  j["values"] = std::move(table);
  auto sf = set_function_from_json(j);
  return {sf.frame(), sf.values()};
}

py::dict table_to_py(const json& j) {
  py::dict out;
  for (const auto& [key, value] : j.at("values").items())
    out[py::str(key)] = json_to_py(value);
  return out;
}

DecisionConfig config_from_kwargs(int atom_budget, long model_cap, int dnf_cap) {
  DecisionConfig cfg;
  cfg.atom_budget = atom_budget;
  cfg.model_point_cap = model_cap;
  cfg.dnf_literal_cap = dnf_cap;
  return cfg;
}

py::dict sat_result_to_py(const SatResult& result, bool include_model) {
  py::dict out;
  out["consistent"] = result.consistent;
  if (result.consistent) {
    json w = witness_to_json(*result.witness, include_model && result.witness->model);
    out["e"] = json_to_py(w.at("e"));
    out["mass"] = json_to_py(w.at("mass"));
    out["props"] = json_to_py(w.at("props"));
    if (w.contains("model")) out["model"] = json_to_py(w.at("model"));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_edlogic, m) {
  m.doc() = "expected-distance measures on finite metric probability spaces";

  py::register_exception<Error>(m, "EdlogicError");

  py::class_<MetricProbSpace>(m, "Space")
      .def_static(
          "from_json",
          [](const std::string& text) { return space_from_json(exact_parse_json(text)); },
          py::arg("text"), "Parse and validate a space from JSON text.")
      .def_static(
          "from_file",
          [](const std::string& path) {
            return space_from_json(exact_parse_json_file(path));
          },
          py::arg("path"))
      .def("to_json", [](const MetricProbSpace& s) { return space_to_json(s).dump(2); })
      .def_property_readonly(
          "points", [](const MetricProbSpace& s) { return s.frame().points(); })
      .def("dist",
           [](const MetricProbSpace& s, const std::string& x, const std::string& y) {
             return s.dist(s.frame().index_of(x), s.frame().index_of(y));
           })
      .def("prob",
           [](const MetricProbSpace& s, const std::string& x) {
             return s.weight(s.frame().index_of(x));
           })
      .def(
          "set_distance",
          [](const MetricProbSpace& s, const std::string& x,
             const std::vector<std::string>& set) { return set_distance(s, x, set); },
          py::arg("x"), py::arg("subset"))
      .def(
          "expected_distance",
          [](const MetricProbSpace& s, const std::vector<std::string>& set) {
            return expected_distance(s, set);
          },
          py::arg("subset"))
      .def(
          "dual_measures",
          [](const MetricProbSpace& s, const std::vector<std::string>& set) {
            MeasureQuad q = dual_measures(s, set);
            py::dict out;
            out["ed"] = py::cast(q.ed);
            out["es"] = py::cast(q.es);
            out["ea"] = py::cast(q.ea);
            out["er"] = py::cast(q.er);
            return out;
          },
          py::arg("subset"))
      .def(
          "ed_table",
          [](const MetricProbSpace& s, int max_points) {
            return table_to_py(set_function_to_json(ed_set_function(s, max_points)));
          },
          py::arg("max_points") = kDefaultPowersetPointCap,
          "Expected distance of every subset, keyed by comma-joined point names.");

  m.def(
      "build_product",
      [](const std::vector<MetricProbSpace>& components, const py::object& joint,
         long max_tuples) {
        json j;
        j["components"] = json::array();
        for (const auto& c : components) j["components"].push_back(space_to_json(c));
        if (!joint.is_none()) {
          json table = json::object();
          for (const auto& [key, value] : joint.cast<py::dict>())
            table[key.cast<std::string>()] = rat_str(value.cast<mpq_class>());
          j["joint"] = std::move(table);
        }
        return product_from_json(j, max_tuples).expand();
      },
      py::arg("components"), py::arg("joint") = py::none(),
      py::arg("max_tuples") = kDefaultProductTupleCap,
      "Expand a product space (independent product probability unless a joint "
      "table keyed like \"a|b\" is given).");

  m.def("lambda_combine", &lambda_combine, py::arg("distances"),
        "1 - prod(1 - d_i) over distances in [0, 1].");
  m.def("alternating_max", &alternating_max, py::arg("values"));
  m.def("alternating_min", &alternating_min, py::arg("values"));
  m.def("alternating_max_multiplicative", &alternating_max_multiplicative,
        py::arg("values"));

  m.def(
      "mass_from_doubt",
      [](const py::object& points, const py::dict& values) {
        auto [frame, table] = table_from_py(points, values);
        MassFunction mass = mass_from_doubt(SetFunction(frame, table));
        return table_to_py(mass_function_to_json(mass));
      },
      py::arg("points"), py::arg("values"));
  m.def(
      "doubt_from_mass",
      [](const py::object& points, const py::dict& values) {
        auto [frame, table] = table_from_py(points, values);
        SetFunction doubt = doubt_from_mass(MassFunction(frame, table));
        return table_to_py(set_function_to_json(doubt));
      },
      py::arg("points"), py::arg("values"));
  m.def(
      "belief_from_mass",
      [](const py::object& points, const py::dict& values) {
        auto [frame, table] = table_from_py(points, values);
        SetFunction bel = belief_from_mass(MassFunction(frame, table));
        return table_to_py(set_function_to_json(bel));
      },
      py::arg("points"), py::arg("values"));
  m.def(
      "plausibility_from_mass",
      [](const py::object& points, const py::dict& values) {
        auto [frame, table] = table_from_py(points, values);
        SetFunction pl = plausibility_from_mass(MassFunction(frame, table));
        return table_to_py(set_function_to_json(pl));
      },
      py::arg("points"), py::arg("values"));
  m.def(
      "is_doubt_function",
      [](const py::object& points, const py::dict& values) {
        auto [frame, table] = table_from_py(points, values);
        return is_doubt_function(SetFunction(frame, table));
      },
      py::arg("points"), py::arg("values"));

  m.def(
      "parse",
      [](const std::string& text) { return print_formula(parse_formula(text)); },
      py::arg("formula"), "Parse a formula and return its canonical form.");

  m.def(
      "check",
      [](const std::string& formula, int atom_budget, long model_cap, int dnf_cap,
         bool include_model) {
        SatResult r = check_consistency(parse_formula(formula),
                                        config_from_kwargs(atom_budget, model_cap, dnf_cap));
        return sat_result_to_py(r, include_model);
      },
      py::arg("formula"), py::arg("atom_budget") = 3, py::arg("model_cap") = 10000,
      py::arg("dnf_cap") = 4096, py::arg("include_model") = false,
      "Decide consistency; on success the result carries e, mass, and "
      "optionally the witness model.");

  m.def(
      "entails",
      [](const std::vector<std::string>& premises, const std::string& goal, int atom_budget,
         long model_cap, int dnf_cap) {
        std::vector<Formula> parsed;
        for (const auto& p : premises) parsed.push_back(parse_formula(p));
        return entails(parsed, parse_formula(goal),
                       config_from_kwargs(atom_budget, model_cap, dnf_cap));
      },
      py::arg("premises"), py::arg("goal"), py::arg("atom_budget") = 3,
      py::arg("model_cap") = 10000, py::arg("dnf_cap") = 4096);

  m.def(
      "counterexample",
      [](const std::vector<std::string>& premises, const std::string& goal, int atom_budget,
         long model_cap, int dnf_cap, bool include_model) {
        std::vector<Formula> parsed;
        for (const auto& p : premises) parsed.push_back(parse_formula(p));
        SatResult r = entailment_query(parsed, parse_formula(goal),
                                       config_from_kwargs(atom_budget, model_cap, dnf_cap));
        return sat_result_to_py(r, include_model);
      },
      py::arg("premises"), py::arg("goal"), py::arg("atom_budget") = 3,
      py::arg("model_cap") = 10000, py::arg("dnf_cap") = 4096,
      py::arg("include_model") = true,
      "Check the premises-and-negated-goal query; consistent means a "
      "countermodel exists.");

  m.def(
      "evaluate",
      [](const std::string& model_json, const std::string& formula) {
        json j = exact_parse_json(model_json);
        Model m = model_from_json(j, j);
        return satisfies(m, parse_formula(formula));
      },
      py::arg("model_json"), py::arg("formula"),
      "Evaluate a formula in a model file (space JSON with a valuation).");
}
