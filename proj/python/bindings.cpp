#include "randsurf/arrangement_io.hpp"
#include "randsurf/covers.hpp"
#include "randsurf/errors.hpp"
#include "randsurf/farey.hpp"
#include "randsurf/generators.hpp"
#include "randsurf/partition_io.hpp"
#include "randsurf/tables.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace randsurf;

namespace {

py::object to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

py::object to_py(const Rational& v)
{
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(BigInt(v.get_num())), to_py(BigInt(v.get_den())));
}

py::object to_py(const std::optional<Rational>& v) { return v ? to_py(*v) : py::none(); }

FareyConfig farey(const std::string& C) { return FareyConfig(parse_rational(C)); }

py::dict report_dict(const ChernReport& r)
{
    py::dict d;
    d["p"] = r.p;
    d["chi"] = to_py(r.chi);
    d["c1_sq"] = to_py(r.c1_sq);
    d["c2"] = to_py(r.c2);
    d["ratio_c"] = to_py(r.ratio_c);
    d["ratio_chi"] = to_py(r.ratio_chi);
    d["SCF"] = to_py(r.error_terms.SCF);
    d["CCF"] = to_py(r.error_terms.CCF);
    d["LCF"] = r.error_terms.LCF;
    d["good"] = r.good;
    d["bounds_ok"] = r.bounds_ok;
    return d;
}

} // namespace

PYBIND11_MODULE(_randsurf, m)
{
    m.doc() = "Exact Chern invariants of cyclic covers branched along curve arrangements";
    m.attr("__version__") = RANDSURF_VERSION;

    py::object base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<BudgetError>(m, "BudgetError", base);
    py::register_exception<ExhaustedTries>(m, "ExhaustedTries", base);
    py::register_exception<ExceptionalVanishes>(m, "ExceptionalVanishes", base);
    py::register_exception<EmptySolutionSet>(m, "EmptySolutionSet", base);
    py::register_exception<NonIntegralError>(m, "NonIntegralError", base);

    m.def("is_prime", [](std::uint64_t n) { return is_prime(n); });
    m.def("inverse", [](std::int64_t q, std::int64_t p) { return mod_inverse(Residue(q, PrimeModulus(p))).q(); });
    m.def("ncf", [](std::int64_t q, std::int64_t p) { return ncf_expand(Residue(q, PrimeModulus(p))).e; },
          "Partial quotients e_i >= 2 of p/q.");
    m.def("length", [](std::int64_t q, std::int64_t p) { return length(Residue(q, PrimeModulus(p))); });
    m.def("dedekind_sum", [](std::int64_t q, std::int64_t p) { return to_py(dedekind_fast(Residue(q, PrimeModulus(p)))); });
    m.def("canonical_part",
          [](std::int64_t q, std::int64_t p) { return to_py(canonical_part(Residue(q, PrimeModulus(p)))); });
    m.def("is_farey_neighbour",
          [](std::int64_t q, std::int64_t p, const std::string& C) {
              return is_farey_neighbour(q, PrimeModulus(p), farey(C));
          },
          py::arg("q"), py::arg("p"), py::arg("C") = "1");
    m.def("bad_set", [](std::int64_t p, const std::string& C) { return bad_set(PrimeModulus(p), farey(C)); },
          py::arg("p"), py::arg("C") = "1");

    py::class_<Arrangement>(m, "Arrangement")
        .def_static("generate", &generate, py::arg("kind"), py::arg("params") = std::vector<std::int64_t>{})
        .def_static("parse", [](const std::string& text) { return parse_arrangement(text); })
        .def("serialize", &serialize_arrangement)
        .def_property_readonly("d", [](const Arrangement& a) { return a.curves.size(); })
        .def_property_readonly("blocks", [](const Arrangement& a) { return a.blocks; })
        .def("t", [](const Arrangement& a) { return validate(a).t; }, "Point counts t_n keyed by n.")
        .def("log_chern",
             [](const Arrangement& a) {
                 LogChernNumbers l = log_chern_direct(a);
                 return py::make_tuple(l.c1bar_sq, l.c2bar);
             })
        .def("log_ratio", [](const Arrangement& a) { return to_py(log_chern_direct(a).ratio()); })
        .def("count_solutions",
             [](const Arrangement& a, std::int64_t p) { return to_py(count_solutions(system_for(a, PrimeModulus(p)))); });

    m.def("generators", &generator_names);

    m.def("invariants",
          [](const Arrangement& a, std::int64_t p, const std::string& partition, const std::string& C) {
              return report_dict(report_for_partition(a, PrimeModulus(p), parse_partition_inline(partition), farey(C)));
          },
          py::arg("arrangement"), py::arg("p"), py::arg("partition"), py::arg("C") = "1",
          "Report for an explicit partition such as '1+2+3;4+5+6'.");

    m.def("sample_good",
          [](const Arrangement& a, std::int64_t p, std::uint64_t seed, std::int64_t max_tries, const std::string& C) {
              PrimeModulus pm(p);
              ResolvedArrangement ra = resolve(a);
              FareyConfig cfg = farey(C);
              GoodSample g = sample_good(system_for(a, pm), a, ra, seed, max_tries, cfg);
              py::dict d = report_dict(report(CoverSpec{pm, ra, g.assignment, cfg}));
              d["partition"] = format_partition_inline(g.solution);
              d["tries"] = g.tries;
              return d;
          },
          py::arg("arrangement"), py::arg("p"), py::arg("seed"), py::arg("max_tries") = 100, py::arg("C") = "1");

    m.def("table_names", &table_names);
    m.def("run_table",
          [](const std::string& name) {
              TableResult t = run_table(load_table(name));
              py::list rows;
              for (const TableRowResult& r : t.rows) {
                  py::dict row;
                  row["p"] = r.row.p;
                  row["partition"] = format_partition_inline(r.row.partition);
                  row["pass"] = r.pass;
                  py::list checks;
                  for (const TableCheck& c : r.checks)
                      checks.append(py::make_tuple(c.key, c.expected, c.computed, c.pass));
                  row["checks"] = checks;
                  rows.append(row);
              }
              py::dict d;
              d["name"] = t.spec.name;
              d["pass"] = t.pass();
              d["rows"] = rows;
              return d;
          },
          "Re-run an embedded table by name or alias.");
}
