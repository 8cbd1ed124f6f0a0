#include "doctest.h"

#include "biell/funcfield.hpp"

#include <random>
#include <stdexcept>

using namespace biell;

namespace {

WittCtx& ctx8() {
    static WittCtx* w = [] {
        FieldRef k = FieldCtx::get(4);
        CurveE E(k, FqElem::zero(k), FqElem::gen(k));
        auto res = find_torsion_generator(E, 16, 1);
        return new WittCtx(res.curve, res.P0, 8);
    }();
    return *w;
}

FFElem rand_elem(const WittCtx& W, std::mt19937_64& rng, int deg = 3) {
    auto rp = [&](int d) {
        Poly p(W.E.k);
        p.c.resize(d + 1);
        for (auto& c : p.c) c = rng() & W.E.k->order_minus_one();
        p.trim();
        return p;
    };
    Poly den = rp(deg - 1) + Poly::one(W.E.k);
    return FFElem{W.E, RatFun(rp(deg), den), RatFun(rp(deg), den)};
}

} // namespace

TEST_CASE("function field arithmetic reduces y^2 by the curve relation") {
    WittCtx& W = ctx8();
    FFElem x = W.x(), y = W.y();
    FieldRef k = W.E.k;
    Poly rhs(k, {W.E.mu.v, 0, W.E.nu.v, 1});
    CHECK(y * y == x * y + FFElem::from(W.E, RatFun(rhs)));
    CHECK(y * y.inv() == FFElem::one(W.E));
    CHECK(y * (x + y) == FFElem::from(W.E, RatFun(rhs)));  // norm of y
    CHECK_THROWS_AS(FFElem::zero(W.E).inv(), std::domain_error);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        FFElem f = rand_elem(W, rng);
        if (f.is_zero()) continue;
        CHECK(f * f.inv() == FFElem::one(W.E));
        CHECK(f.norm() == (f * f.conj()).A);
        CHECK((f * f.conj()).B.is_zero());
    }
}

TEST_CASE("phi pullback and dihedral relation phi g0 phi = g0^-1") {
    WittCtx& W = ctx8();
    FFElem x = W.x(), y = W.y();
    CHECK(W.pull_phi(x) == x);
    CHECK(W.pull_phi(y) == x + y);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 4; ++i) {
        FFElem f = rand_elem(W, rng, 2);
        CHECK(W.pull_phi(W.pull_g0(W.pull_phi(f), 1)) == W.pull_g0(f, W.two_n - 1));
        CHECK(W.pull_g0(f, W.two_n) == f);
    }
}

TEST_CASE("pullback evaluates as translation by [i]P0") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    // sample affine points off the torsion support to dodge poles
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 6) {
        uint64_t xv = rng() & E.k->order_minus_one();
        uint64_t z;
        if (!xv) continue;
        uint64_t x2 = E.k->mul(xv, xv);
        uint64_t u = E.k->mul(E.k->mul(x2, xv) ^ E.mu.v, E.k->inv(x2));
        if (!E.k->solve_artin_schreier(u, z)) continue;
        ECPoint P{FqElem{E.k, xv}, FqElem{E.k, E.k->mul(xv, z)}};
        REQUIRE(E.on_curve(P));
        for (int i = 1; i < W.two_n; ++i) {
            ECPoint Q = E.add(P, W.multiple(i));
            if (Q.inf || Q.x == P.x) continue;
            FFElem xi = W.pull_g0(W.x(), i);
            // evaluate A(x) + B(x) y at P directly
            auto evA = xi.A.eval(P.x), evB = xi.B.eval(P.x);
            if (!evA || !evB) continue;
            CHECK(*evA + *evB * P.y == Q.x);
        }
        ++checked;
    }
}

TEST_CASE("g0(x) + g0^-1(x) is the printed artin-schreier shape") {
    WittCtx& W = ctx8();
    FieldRef k = W.E.k;
    FqElem w1 = W.P0.x;
    FFElem s = W.pull_g0(W.x(), 1) + W.pull_g0(W.x(), W.two_n - 1);
    Poly den(k, {w1.sqr().v, 0, 1});                 // x^2 + w1^2
    Poly num(k, {0, w1.v});                          // w1 x
    CHECK(s == FFElem::from(W.E, RatFun(num, den)));
    RatFun xi(Poly::x(k), Poly(k, {w1.v, 1}));       // x/(x+w1)
    CHECK(s == FFElem::from(W.E, xi * xi + xi));
}

TEST_CASE("trace is additive and g-invariant") {
    WittCtx& W = ctx8();
    std::mt19937_64 rng(8);
    FFElem f = rand_elem(W, rng, 2), h = rand_elem(W, rng, 2);
    CHECK(W.trace_g(f + h) == W.trace_g(f) + W.trace_g(h));
    CHECK(W.pull_g(W.trace_g(f)) == W.trace_g(f));
    CHECK(W.trace_g(W.x()) == W.trace_x());
}

TEST_CASE("witt elements: defining identities, n=8, k=1") {
    WittCtx& W = ctx8();
    auto witt = W.witt_elements(1);
    // Tr_g(d) = 1 and Tr_g(a) = 0, phi(a) = a
    CHECK(W.trace_g(witt.d) == FFElem::one(W.E));
    CHECK(W.trace_g(witt.a).is_zero());
    CHECK(W.pull_phi(witt.a) == witt.a);
    CHECK(witt.a == witt.d * witt.d + witt.d);
    // g(e_k) + e_k = a and phi(e_k) + e_k = a
    CHECK(W.pull_g(witt.e_k) + witt.e_k == witt.a);
    CHECK(W.pull_phi(witt.e_k) + witt.e_k == witt.a);
    // e_k is a square; x is not
    CHECK(ff_sqrt(witt.e_k).has_value());
    auto rt = ff_sqrt(witt.e_k);
    CHECK(*rt * *rt == witt.e_k);
    CHECK(!ff_sqrt(W.x()).has_value());
    // Tr_g(c_k) matches the n-fold pullback sum definition
    CHECK(W.trace_g(witt.c_k) == W.pull_g0(W.trace_x(), 1));
}

TEST_CASE("x g0^i(x) is a square for every i") {
    WittCtx& W = ctx8();
    for (int i = 1; i < W.two_n; ++i) {
        FFElem f = W.x() * W.pull_g0(W.x(), i);
        auto rt = ff_sqrt(f);
        REQUIRE(rt.has_value());
        CHECK(*rt * *rt == f);
    }
}

TEST_CASE("trace-chain lemmas") {
    WittCtx& W = ctx8();
    auto witt = W.witt_elements(1);
    const FFElem& a = witt.a;
    FFElem g0x = W.pull_g0(W.x(), 1);
    CHECK(W.trace_g(a * g0x) == W.trace_g(W.pull_g(a) * g0x));
    for (int k = 1; k < W.two_n; k += 2) {
        FFElem ck = W.pull_g0(W.x(), k);
        FFElem gka = W.pull_g0(a, 2 * k);
        CHECK(W.trace_g(a * ck) == W.trace_g(gka * ck));
        // Tr_g(g0^k(x) (a + g(a) + ... + g^k(a))) = 0
        CHECK(W.trace_g(ck * W.partial_sum(a, k + 1)).is_zero());
    }
}

TEST_CASE("partial-sum identities for xi with Tr(xi)=0 and phi(xi)=xi") {
    WittCtx& W = ctx8();
    auto witt = W.witt_elements(1);
    const FFElem& xi = witt.a;
    int n = W.n;
    auto S = [&](int v) { return W.partial_sum(xi, ((v % n) + n) % n); };
    // (i) periodicity mod n
    for (int v : {0, 1, 3, 5}) CHECK(W.partial_sum(xi, v) == W.partial_sum(xi, v + n));
    // (ii) xi_{v1} + xi_{v2} = g^{v1}(xi_{v2-v1 mod n})
    for (int v1 : {1, 2, 3})
        for (int v2 : {4, 6, 7}) {
            FFElem lhs = S(v1) + S(v2);
            FFElem rhs = W.pull_g0(S(v2 - v1), 2 * v1);
            CHECK(lhs == rhs);
        }
    // (iii) phi(xi_{g^v}) = xi_{g^{-v+1 mod n}} + xi
    for (int v = 0; v < n; ++v)
        CHECK(W.pull_phi(S(v)) == S(1 - v) + xi);
}

TEST_CASE("alternative d variant, k = 7") {
    WittCtx& W = ctx8();
    auto witt = W.witt_elements(7, true);
    CHECK(W.trace_g(witt.d) == FFElem::one(W.E));
    CHECK(W.pull_phi(witt.a) == witt.a);
    CHECK(W.pull_g(witt.e_k) + witt.e_k == witt.a);
    CHECK(W.pull_phi(witt.e_k) + witt.e_k == witt.a);
    CHECK(ff_sqrt(witt.e_k).has_value());
    // phi(c) = g(c) holds for k = n-1 mod n, the case the variant needs
    FFElem c = witt.c_k;
    CHECK(W.pull_phi(c) == W.pull_g(c));
    CHECK_THROWS_AS(W.witt_elements(2), std::invalid_argument);
}
