#include "CLI11.hpp"

#include "biell/census.hpp"
#include "biell/tower.hpp"

#include <fstream>
#include <iostream>

using namespace biell;

#ifndef BIELL_GOLDEN_DIR
#define BIELL_GOLDEN_DIR "golden"
#endif

namespace {

int run_construct(int n, const std::string& field, const std::string& kopt, bool altd,
                  uint64_t seed, const std::string& json_path) {
    MainFamilyOptions opt;
    opt.n = n;
    opt.field = field;
    opt.alternative_d = altd;
    opt.seed = seed;
    if (kopt != "auto") opt.k = std::stoi(kopt);
    auto R = construct_main_family(opt);
    std::string js = main_family_report_json(R.report);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << js << "\n";
    }
    std::cout << js << "\n";
    return 0;
}

int run_verify_lemmas(int n, const std::string& field, uint64_t seed) {
    MainFamilyOptions opt;
    opt.n = n;
    opt.field = field;
    opt.seed = seed;
    auto R = construct_main_family(opt);
    const WittCtx& W = *R.W;
    const auto& witt = R.witt;
    int failures = 0;
    auto check = [&](const std::string& what, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
        failures += !ok;
    };
    for (auto& rel : R.report.relations_verified) check(rel, true);
    FFElem g0x = W.pull_g0(W.x(), 1);
    const FFElem& a = witt.a;
    check("Tr_g(a g0(x)) = Tr_g(g(a) g0(x))", W.trace_g(a * g0x) == W.trace_g(W.pull_g(a) * g0x));
    bool chain2 = true, chain3 = true;
    for (int k = 1; k < W.two_n; k += 2) {
        FFElem ck = W.pull_g0(W.x(), k);
        chain2 &= (W.trace_g(a * ck) == W.trace_g(W.pull_g0(a, 2 * k) * ck));
        chain3 &= W.trace_g(ck * W.partial_sum(a, k + 1)).is_zero();
    }
    check("Tr_g(a g0^k(x)) = Tr_g(g^k(a) g0^k(x)) for every odd k", chain2);
    check("Tr_g(g0^k(x) (a + g(a) + ... + g^k(a))) = 0 for every odd k", chain3);
    bool ps1 = true, ps2 = true, ps3 = true;
    for (int v = 0; v < W.n; ++v) ps1 &= (W.partial_sum(a, v) == W.partial_sum(a, v + W.n));
    for (int v1 : {1, 2, 3})
        for (int v2 : {3, 5, W.n - 1})
            ps2 &= (W.partial_sum(a, v1) + W.partial_sum(a, v2) ==
                    W.pull_g0(W.partial_sum(a, ((v2 - v1) % W.n + W.n) % W.n), 2 * v1));
    for (int v = 0; v < W.n; ++v)
        ps3 &= (W.pull_phi(W.partial_sum(a, v)) ==
                W.partial_sum(a, ((1 - v) % W.n + W.n) % W.n) + a);
    check("partial sums are periodic mod n", ps1);
    check("partial-sum shift identity", ps2);
    check("phi acts on partial sums as v -> -v+1", ps3);
    // divisor suite
    Place mP0(W.E, W.E.neg(W.P0));
    check("v(x + g(x)) = 2 at -P0", valuation(W.x() + W.pull_g(W.x()), mP0) == 2);
    FFElem strano = W.x() * W.pull_g(W.x()) + FFElem::constant(W.E, W.P0.x.sqr());
    check("v(x g(x) + w1^2) = 4 at -P0", valuation(strano, mP0) == 4);
    Divisor dtr = principal_divisor(W.trace_x());
    bool dok = dtr.degree() == 0;
    for (int j = 0; j < W.n; ++j) {
        dok &= dtr.mult(Place(W.E, W.multiple(2 * j + 1))) == 2;
        dok &= (2 * j == 0 ? dtr.mult(Place::infinity(W.E)) : dtr.mult(Place(W.E, W.multiple(2 * j)))) == -2;
    }
    check("div(Tr_g(x)) = 2 sum [2j+1]P0 - 2 sum [2j]P0", dok);
    std::cout << dtr.str(&W) << "\n";
    return failures ? 1 : 0;
}

int run_census_cmd(const std::string& example, int q, uint64_t seed, const std::string& json_path) {
    auto rep = run_census(example, q, seed);
    std::cout << rep.summary();
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << rep.to_json() << "\n";
    }
    return rep.any_mismatch() ? 1 : 0;
}

int run_plane_model(int n, const std::string& field, const std::string& kopt, bool altd,
                    uint64_t seed) {
    MainFamilyOptions opt;
    opt.n = n;
    opt.field = field;
    opt.alternative_d = altd;
    opt.seed = seed;
    if (kopt != "auto") opt.k = std::stoi(kopt);
    auto R = construct_main_family(opt);
    BivarPoly F = eliminate_to_plane(R.witt.e_k);
    std::cout << "field " << F.k->spec() << "\n";
    std::cout << "vars X Z\n";
    std::cout << "poly " << F.str("X", "Z") << "\n";
    return 0;
}

int run_report(const std::string& json_path, uint64_t seed) {
    std::vector<CensusReport> reps;
    reps.push_back(run_census("6.1a", 16, seed));
    reps.push_back(run_census("6.1b", 16, seed));
    reps.push_back(run_census("6.2", 16, seed));
    for (int q : {4, 8, 16}) reps.push_back(run_census("6.3", q, seed));
    for (int q : {4, 8, 16}) reps.push_back(run_census("6.4", q, seed));
    reps.push_back(run_census("6.5", 16, seed));
    reps.push_back(run_census("6.6q", 16, seed));
    bool mismatch = false;
    std::string all = "[\n";
    for (size_t i = 0; i < reps.size(); ++i) {
        std::cout << reps[i].summary();
        mismatch |= reps[i].any_mismatch();
        all += reps[i].to_json();
        all += (i + 1 < reps.size()) ? ",\n" : "\n";
    }
    all += "]\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << all;
    }
    std::cout << (mismatch ? "some reference claims are mismatched (see above)\n"
                           : "all computed claims match\n");
    return mismatch ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for bielliptic curves attaining the Nakajima bound"};
    app.require_subcommand(1);
    set_default_golden_dir(BIELL_GOLDEN_DIR);

    std::string field = "gf2^4:0x13", kopt = "auto", json_path, example = "6.1a", golden;
    int n = 8, q = 16;
    bool altd = false;
    uint64_t seed = 1;
    app.add_option("--golden-dir", golden, "directory with the reference polynomials");

    auto* c = app.add_subcommand("construct", "build the main family and print its report");
    c->add_option("--n", n, "n = 2^h >= 8");
    c->add_option("--k", kopt, "odd k, or auto");
    c->add_flag("--alt-d", altd, "use the y/x-based d variant");
    c->add_option("--field", field, "base field, e.g. gf2^4:0x13");
    c->add_option("--seed", seed, "torsion search seed");
    c->add_option("--json", json_path, "also write the report here");

    auto* v = app.add_subcommand("verify-lemmas", "run the identity and divisor suites");
    v->add_option("--n", n, "n = 2^h >= 8");
    v->add_option("--field", field, "base field");
    v->add_option("--seed", seed, "torsion search seed");

    auto* ce = app.add_subcommand("census", "reproduce one reference example");
    ce->add_option("--example", example, "6.1a, 6.1b, 6.2, 6.3, 6.4, 6.5 or 6.6q")->required();
    ce->add_option("--q", q, "field size for the parametric families");
    ce->add_option("--seed", seed, "torsion search seed");
    ce->add_option("--json", json_path, "also write the report here");

    auto* p = app.add_subcommand("plane-model", "print the plane model of the tower");
    p->add_option("--n", n, "n = 2^h >= 8");
    p->add_option("--k", kopt, "odd k, or auto");
    p->add_flag("--alt-d", altd, "use the y/x-based d variant");
    p->add_option("--field", field, "base field");
    p->add_option("--seed", seed, "torsion search seed");

    auto* r = app.add_subcommand("report", "run every census and aggregate to JSON");
    r->add_option("--json", json_path, "output path");
    r->add_option("--seed", seed, "torsion search seed");

    CLI11_PARSE(app, argc, argv);
    if (!golden.empty()) set_default_golden_dir(golden);

    try {
        if (c->parsed()) return run_construct(n, field, kopt, altd, seed, json_path);
        if (v->parsed()) return run_verify_lemmas(n, field, seed);
        if (ce->parsed()) return run_census_cmd(example, q, seed, json_path);
        if (p->parsed()) return run_plane_model(n, field, kopt, altd, seed);
        if (r->parsed()) return run_report(json_path, seed);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
