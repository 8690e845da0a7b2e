#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/cycle_synth.hpp"
#include "rbdecomp/even_synth.hpp"
#include "rbdecomp/io.hpp"
#include "rbdecomp/oracle.hpp"
#include "rbdecomp/random.hpp"

namespace py = pybind11;
using namespace rbd;

namespace {

CyclePattern pattern_from_dict(const std::map<std::size_t, std::size_t>& m) {
  CyclePattern p;
  for (auto [len, cnt] : m)
    if (len > 0 && cnt > 0) p.counts[len] = cnt;
  return p;
}

py::dict report_dict(const nlohmann::ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Perm parse_cycles_py(const std::string& text, std::optional<int> n) {
  if (n) return parse_cycle_string(text, *n);
  return parse_perm(text, PermFormat::cycles);
}

}  // namespace

PYBIND11_MODULE(_rbdecomp, m) {
  m.doc() = "Decomposition of reversible Boolean functions into concurrent controlled blocks";

  py::register_exception<contract_error>(m, "ContractError", PyExc_ValueError);
  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

  py::class_<Perm>(m, "Perm", "permutation of the n-bit strings, stored as an image table")
      .def(py::init<int>(), py::arg("n"), "identity on n bits")
      .def(py::init<int, std::vector<node_t>>(), py::arg("n"), py::arg("images"))
      .def_static("from_cycles", &parse_cycles_py, py::arg("text"), py::arg("n") = py::none(),
                  "parse '(0001,0010)(...)'; the width is taken from the first element when n is omitted")
      .def_property_readonly("n", &Perm::n)
      .def_property_readonly("images", &Perm::image)
      .def("__len__", &Perm::size)
      .def("__call__", [](const Perm& p, node_t x) {
        if (x >= p.size()) throw py::index_error("point outside the cube");
        return p(x);
      })
      .def("__mul__", [](const Perm& p, const Perm& q) { return compose(p, q); }, "p * q applies q first")
      .def("inverse", &inverse)
      .def("is_identity", &Perm::is_identity)
      .def("is_even", [](const Perm& p) { return is_even(p); })
      .def("cycles", [](const Perm& p) { return cycles(p); })
      .def("pattern", [](const Perm& p) { return cycle_pattern(p).counts; }, "cycle length -> count")
      .def("cycle_string", &to_cycle_string)
      .def("digest", &digest)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__hash__", [](const Perm& p) { return digest(p); })
      .def("__repr__", [](const Perm& p) {
        std::string c = to_cycle_string(p);
        if (c.size() > 80) c = c.substr(0, 77) + "...";
        return "Perm(n=" + std::to_string(p.n()) + ", " + (c.empty() ? "identity" : c) + ")";
      });

  m.def("compose", py::overload_cast<const Perm&, const Perm&>(&compose), py::arg("p"), py::arg("q"), "x -> p(q(x))");
  m.def("lift", &lift, py::arg("inner"), py::arg("dim"));
  m.def("restrict", &restrict, py::arg("p"), py::arg("dim"));
  m.def("is_concurrent", &is_concurrent, py::arg("p"), py::arg("dim"));
  m.def("is_controlled", &is_controlled, py::arg("p"), py::arg("dim"));
  m.def("is_concurrently_even", &is_concurrently_even, py::arg("p"), py::arg("dim"));

  m.def("random_perm", [](int n, std::uint64_t seed) { Rng r(seed); return random_perm(n, r); }, py::arg("n"), py::arg("seed"));
  m.def("random_even_perm", [](int n, std::uint64_t seed) { Rng r(seed); return random_even_perm(n, r); }, py::arg("n"),
        py::arg("seed"));

  m.def("parse_perm", [](const std::string& text, const std::string& fmt) { return parse_perm(text, parse_format(fmt)); },
        py::arg("text"), py::arg("format") = "images");
  m.def("emit_perm", [](const Perm& p, const std::string& fmt) { return emit_perm(p, parse_format(fmt)); }, py::arg("p"),
        py::arg("format") = "images");

  py::class_<Block>(m, "Block")
      .def(py::init<int, Perm>(), py::arg("dim"), py::arg("inner"))
      .def_readonly("dim", &Block::dim)
      .def_readonly("inner", &Block::inner)
      .def("lifted", &Block::lifted)
      .def("__repr__", [](const Block& b) { return "Block(dim=" + std::to_string(b.dim) + ", " + to_cycle_string(b.inner) + ")"; });

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("n", &Decomposition::n)
      .def_property_readonly("mode", [](const Decomposition& d) { return std::string(to_string(d.mode)); })
      .def_readonly("blocks", &Decomposition::blocks)
      .def_readonly("source_digest", &Decomposition::source_digest)
      .def_readonly("rounds_35", &Decomposition::rounds_35)
      .def_readonly("case_labels", &Decomposition::case_labels)
      .def("product", [](const Decomposition& d) { return product(d.n, d.blocks); })
      .def("to_json", [](const Decomposition& d, bool images) { return to_json(d, JsonOptions{images}).dump(); },
           py::arg("images") = false)
      .def_static("from_json",
                  [](const std::string& s) {
                    auto j = nlohmann::json::parse(s, nullptr, false);
                    if (j.is_discarded()) throw parse_error("decomposition report is not valid JSON");
                    return decomposition_from_json(j);
                  })
      .def("__len__", [](const Decomposition& d) { return d.blocks.size(); });

  m.def("decompose7", [](const Perm& s, int r1) { return decompose7(s, Options{r1}); }, py::arg("s"), py::arg("r1") = 1,
        "at most 7 concurrent blocks for an even permutation, n >= 6 (greedy below)");
  m.def("decompose10", &decompose10, py::arg("s"), py::arg("r1") = 1, "at most 10 concurrently even blocks, n >= 10");
  m.def("decompose_greedy", &decompose_greedy, py::arg("s"), py::arg("r1") = 1);
  m.def("verify", [](const Perm& s, const Decomposition& d) { return report_dict(to_json(verify_decomposition(s, d))); },
        py::arg("s"), py::arg("decomposition"));

  m.def("pair_counts", [](const Perm& s, int r1, int r2) { auto c = pair_counts(s, r1, r2); return py::make_tuple(c.a, c.b); },
        py::arg("s"), py::arg("r1"), py::arg("r2"));
  m.def("case_label", [](const Perm& s, int r1, int r2) { return std::string(to_string(case_classify(pair_counts(s, r1, r2)))); },
        py::arg("s"), py::arg("r1"), py::arg("r2"));
  m.def("cuboid", [](const Perm& s, int r1, int r2) { return report_dict(to_json(build_cuboid(s, r1, r2))); }, py::arg("s"),
        py::arg("r1"), py::arg("r2"));

  m.def("eliminate_35", &eliminate_35, py::arg("s"), py::arg("r1"));
  m.def("eliminate_35_even", &eliminate_35_even, py::arg("s"), py::arg("r1"));
  m.def("synthesize_pattern",
        [](const std::map<std::size_t, std::size_t>& pat, int r1, int r2, int n, bool even) {
          auto p = pattern_from_dict(pat);
          auto pp = even ? synthesize_pattern_even(p, r1, r2, n) : synthesize_pattern(p, r1, r2, n);
          return py::make_tuple(pp.pi, pp.tau);
        },
        py::arg("pattern"), py::arg("r1"), py::arg("r2"), py::arg("n"), py::arg("even") = false,
        "(pi, tau) with pi on r1, tau on r2 and the requested cycle pattern for pi * tau");
  m.def("odd_block_from_even", [](int n, int r1, int r2, int r3) {
        auto o = odd_block_from_even(n, r1, r2, r3);
        return py::make_tuple(o.pi, std::vector<Perm>(o.parts.begin(), o.parts.end()));
      },
      py::arg("n"), py::arg("r1"), py::arg("r2"), py::arg("r3"));

  m.def("oracle_taxonomy", [] { return report_dict(to_json(calibrate_taxonomy())); });
  m.def("oracle_35free", [](std::size_t samples, std::uint64_t seed, unsigned jobs) {
        FreeReport r;
        {
          py::gil_scoped_release nogil;
          r = brute_35free(4, 1, 2, samples, seed, jobs);
        }
        return report_dict(to_json(r));
      },
      py::arg("samples") = 1000, py::arg("seed") = 1, py::arg("jobs") = 1);
  m.def("oracle_new1tight", [](int n, unsigned jobs) {
        TightReport r;
        {
          py::gil_scoped_release nogil;
          r = brute_new1tight(n, jobs);
        }
        return report_dict(to_json(r));
      },
      py::arg("n") = 4, py::arg("jobs") = 1);
  m.def("oracle_badcase", [](std::size_t trials, std::uint64_t seed) { return report_dict(to_json(brute_badcase_invariants(trials, seed))); },
        py::arg("trials") = 1000, py::arg("seed") = 1);
}
