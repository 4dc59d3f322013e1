// Python bindings. Structured data crosses the boundary as JSON text in the
// same format the command-line tool reads and writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mucont/cli.hpp"
#include "mucont/error.hpp"
#include "mucont/fixpoint.hpp"
#include "mucont/representations.hpp"
#include "mucont/selection.hpp"
#include "mucont/serialization.hpp"

namespace py = pybind11;
using namespace mucont;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::string check_geometric_json(const std::string& modulus, const std::string& constant) {
  return certificate_to_json(check_geometric(modulus_from_json(parse(modulus)), Dyadic::parse(constant))).dump();
}

std::string decide_continuity_json(const std::string& multifunction, const std::string& modulus) {
  const auto f = multifunction_from_json(parse(multifunction));
  const auto d = decide_continuity(f, modulus_from_json(parse(modulus)));
  Json out{{"continuous", d.continuous}, {"iterations", d.fixpoint.iterations},
           {"fixpoint", relation_to_json(d.fixpoint.relation, f)}};
  if (d.witness) out["witness"] = f.domain()->label(*d.witness);
  return out.dump();
}

std::string select_json(const std::string& multifunction, const std::string& modulus,
                        const std::optional<std::string>& constant) {
  const auto f = multifunction_from_json(parse(multifunction));
  std::optional<Dyadic> c;
  if (constant) c = Dyadic::parse(*constant);
  return selection_trace_to_json(select(f, modulus_from_json(parse(modulus)), c), f).dump();
}

std::optional<std::string> witness(const std::string& s, std::uint32_t n, const std::string& x2) {
  const auto w = sigma_inverse_witness(SignedDigitWord::parse(s), n, Dyadic::parse(x2));
  if (!w) return std::nullopt;
  return w->to_string();
}

py::tuple run(std::vector<std::string> args, const std::string& input) {
  args.insert(args.begin(), "mucont");
  std::istringstream in(input);
  const auto r = cli::run(args, in);
  return py::make_tuple(r.exit_code, r.report, r.error);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact decision procedures for modulus-continuity of finite multifunctions.";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  m.def("check_geometric", &check_geometric_json, py::arg("modulus"), py::arg("constant"),
        "Certify or refute the tail-sum bound of a modulus table; returns JSON text.");
  m.def("decide_continuity", &decide_continuity_json, py::arg("multifunction"), py::arg("modulus"),
        "Greatest-fixpoint continuity decision; returns JSON text.");
  m.def("select", &select_json, py::arg("multifunction"), py::arg("modulus"), py::arg("constant") = std::nullopt,
        "Continuous selection with its certified modulus; returns JSON text.");
  m.def("sigma_decode", [](const std::string& s) { return sigma_decode(SignedDigitWord::parse(s)).to_string(); },
        py::arg("word"));
  m.def("sigma_encode", [](const std::string& x, std::uint32_t p) { return sigma_encode(Dyadic::parse(x), p).to_string(); },
        py::arg("x"), py::arg("precision"));
  m.def("sigma_inverse_witness", &witness, py::arg("s"), py::arg("n"), py::arg("x2"));
  m.def("run", &run, py::arg("args"), py::arg("input") = std::string(),
        "Run one command line in process; returns (exit_code, report, error).");
}
