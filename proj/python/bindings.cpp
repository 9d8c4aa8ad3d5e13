#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "congames/cli.hpp"
#include "congames/document.hpp"
#include "congames/dsl.hpp"
#include "congames/outcomes.hpp"
#include "congames/report.hpp"

namespace py = pybind11;
using namespace congames;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object fraction(const Rational& r) { return py::module_::import("fractions").attr("Fraction")(to_string(r)); }

std::vector<std::vector<std::string>> config_names(const EventStructure& es, std::optional<int> max_events) {
  std::vector<std::vector<std::string>> out;
  for (const auto& x : configurations(es, max_events)) out.push_back(es.names_of(x));
  return out;
}

py::dict check_dict(const CheckResult& c) { return to_python(check_json(c)).cast<py::dict>(); }

}  // namespace

PYBIND11_MODULE(_congames, m) {
  m.doc() = "Concurrent games on event structures";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", error.ptr());
  py::register_exception<TypeError>(m, "TypeError", error.ptr());
  py::register_exception<SyntaxError>(m, "SyntaxError", error.ptr());
  py::register_exception<InternalError>(m, "InternalError", error.ptr());

  py::class_<Game>(m, "Game")
      .def_property_readonly("events", [](const Game& g) { return g.es.names(); })
      .def("__len__", &Game::size)
      .def("polarity", [](const Game& g, const std::string& e) { return std::string(1, symbol(g.pol(g.es.index(e)))); })
      .def("configurations", [](const Game& g, std::optional<int> max_events) { return config_names(g.es, max_events); },
           py::arg("max_events") = py::none())
      .def("is_race_free", [](const Game& g) { return is_race_free(g); })
      .def("dual", [](const Game& g) { return dual(g); })
      .def("to_json", [](const Game& g) { return to_python(game_json(g)); })
      .def("to_dot", [](const Game& g, const std::string& name) { return game_dot(g, name); }, py::arg("name") = "game")
      .def("__eq__", [](const Game& a, const Game& b) { return a == b; });

  py::class_<Strategy>(m, "Strategy")
      .def_property_readonly("events", [](const Strategy& s) { return s.inner.es.names(); })
      .def("__len__", [](const Strategy& s) { return s.inner.size(); })
      .def_property_readonly("target", [](const Strategy& s) { return s.target; })
      .def("image", [](const Strategy& s, const std::string& e) {
        return s.target.es.name(s.sigma[static_cast<std::size_t>(s.inner.es.index(e))]);
      })
      .def("configurations",
           [](const Strategy& s, std::optional<int> max_events) { return config_names(s.inner.es, max_events); },
           py::arg("max_events") = py::none())
      .def("check", [](const Strategy& s) {
        StrategyReport r = check_strategy(s);
        py::dict d;
        d["receptive"] = check_dict(r.receptive);
        d["innocent"] = check_dict(r.innocent);
        d["deterministic"] = check_dict(r.deterministic);
        return d;
      })
      .def("to_json", [](const Strategy& s) { return to_python(strategy_json(s)); })
      .def("to_dot", [](const Strategy& s, const std::string& name) { return strategy_dot(s, name); },
           py::arg("name") = "strategy");

  py::class_<Document>(m, "Document")
      .def_property_readonly("games", [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& [k, v] : d.games) out.push_back(k);
        return out;
      })
      .def_property_readonly("strategies", [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& [k, v] : d.strategies) out.push_back(k);
        return out;
      })
      .def("game", &Document::game)
      .def("strategy", &Document::strategy)
      .def("save", [](const Document& d, const std::string& path) { save_document(d, path); })
      .def("to_json", [](const Document& d) { return to_python(to_json(d)); });

  m.def("load_document", &load_document, py::arg("path"));
  m.def("parse_document", [](const std::string& text) { return parse_document(Json::parse(text)); }, py::arg("text"));

  m.def("par", [](const Game& a, const Game& b) { return par(a, b); });
  m.def("scott_leq", [](const Game& g, const std::vector<std::string>& x, const std::vector<std::string>& y) {
    return scott_leq(g, g.es.set_of(x), g.es.set_of(y));
  });
  m.def("copycat", &copycat, py::arg("game"));
  m.def("compose", &compose, py::arg("sigma"), py::arg("tau"));
  m.def("iso_equivalent", [](const Strategy& a, const Strategy& b) { return iso_equivalent(a, b).has_value(); });

  m.def(
      "expected_payoff",
      [](const Strategy& sigma, const Strategy& tau, const Game& game) {
        ExpectedPayoff e = expected_payoff(sigma, tau, payoff_of(game));
        py::dict d;
        d["expected"] = fraction(e.expected);
        d["win_prob"] = e.win_prob ? fraction(*e.win_prob) : py::none();
        return d;
      },
      py::arg("sigma"), py::arg("tau"), py::arg("game"));

  m.def(
      "elaborate", [](const std::string& text, const Document& d) { return dsl::elaborate(dsl::parse(text), d.env()); },
      py::arg("text"), py::arg("document"));
  m.def("pretty", [](const std::string& text) { return dsl::pretty(dsl::parse(text)); }, py::arg("text"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in process: (exit code, stdout, stderr).");
}
