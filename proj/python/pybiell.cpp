#include <pybind11/pybind11.h>

#include "biell/census.hpp"

namespace py = pybind11;
using namespace biell;

#ifndef BIELL_GOLDEN_DIR
#define BIELL_GOLDEN_DIR "golden"
#endif

namespace {

std::string construct_json(int n, const std::string& field, int k, bool alt_d, uint64_t seed) {
    MainFamilyOptions opt;
    opt.n = n;
    opt.field = field;
    opt.k = k;
    opt.alternative_d = alt_d;
    opt.seed = seed;
    return main_family_report_json(construct_main_family(opt).report);
}

std::string census_json(const std::string& example, int q, uint64_t seed) {
    return run_census(example, q, seed).to_json();
}

std::string plane_model_text(int n, int k, bool alt_d, const std::string& field, uint64_t seed) {
    MainFamilyOptions opt;
    opt.n = n;
    opt.field = field;
    opt.k = k;
    opt.alternative_d = alt_d;
    opt.seed = seed;
    auto R = construct_main_family(opt);
    return eliminate_to_plane(R.witt.e_k).str("X", "Z");
}

uint64_t fq_op(const std::string& spec, const std::string& op, uint64_t a, uint64_t b) {
    FieldRef K = FieldCtx::parse(spec);
    if (op == "add") return K->add(a, b);
    if (op == "mul") return K->mul(a, b);
    if (op == "inv") return K->inv(a);
    if (op == "sqrt") return K->sqrt(a);
    if (op == "pow") return K->pow(a, b);
    throw std::invalid_argument("unknown field op " + op);
}

} // namespace

PYBIND11_MODULE(pybiell, m) {
    m.doc() = "bielliptic-curve toolkit: Artin-Schreier towers over ordinary "
              "characteristic-2 elliptic curves, their automorphisms and censuses";
    set_default_golden_dir(BIELL_GOLDEN_DIR);
    m.def("construct", &construct_json, "build the main family, returns a JSON report",
          py::arg("n") = 8, py::arg("field") = "gf2^4:0x13", py::arg("k") = 0,
          py::arg("alt_d") = false, py::arg("seed") = 1);
    m.def("census", &census_json, "reproduce one reference example, returns JSON",
          py::arg("example"), py::arg("q") = 16, py::arg("seed") = 1);
    m.def("plane_model", &plane_model_text, "canonical text of the plane model",
          py::arg("n") = 8, py::arg("k") = 0, py::arg("alt_d") = false,
          py::arg("field") = "gf2^4:0x13", py::arg("seed") = 1);
    m.def("fq_op", &fq_op, "arithmetic in GF(2^m): add/mul/inv/sqrt/pow on raw bits",
          py::arg("field"), py::arg("op"), py::arg("a"), py::arg("b") = 0);
    m.def("set_golden_dir", &set_default_golden_dir, py::arg("dir"));
}
