#include "doctest.h"

#include "biell/places.hpp"

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

Series curve_residual(const LocalExpansion& le, const CurveE& E, int prec) {
    Series lhs = le.y * le.y + le.x * le.y;
    Series rhs = eval_on_series(Poly(E.k, {E.mu.v, 0, E.nu.v, 1}), le.x, prec);
    return lhs + rhs;
}

} // namespace

TEST_CASE("local expansions satisfy the curve equation and have the right leads") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    int prec = 24;

    Place Pg(E, W.multiple(3));                     // generic affine point
    auto le = local_expand(Pg, prec);
    CHECK(curve_residual(le, E, prec).approx_zero());
    CHECK(le.x.val() == 0);
    Series xm = le.x + Series::constant(E.k, Pg.pt.x.v, prec);
    CHECK(xm.val() == 1);                           // x - x0 is the parameter

    Place Pt(E, E.two_torsion());                   // vertical tangent at x = 0
    auto lt = local_expand(Pt, prec);
    CHECK(curve_residual(lt, E, prec).approx_zero());
    CHECK(lt.x.val() == 2);

    Place Pi = Place::infinity(E);
    auto li = local_expand(Pi, prec);
    CHECK(curve_residual(li, E, prec).approx_zero());
    CHECK(li.x.val() == -2);
    CHECK(li.y.val() == -3);
}

TEST_CASE("valuations of coordinate functions") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    CHECK(valuation(W.x(), Place::infinity(E)) == -2);
    CHECK(valuation(W.y(), Place::infinity(E)) == -3);
    CHECK(valuation(W.x(), Place(E, E.two_torsion())) == 2);
    CHECK_THROWS_AS(valuation(FFElem::zero(E), Place::infinity(E)), std::domain_error);
}

TEST_CASE("zeros of x+g(x) and xg(x)+w1^2 at the opposite of P0") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    Place minusP0(E, E.neg(W.P0));
    FFElem xg = W.x() + W.pull_g(W.x());
    CHECK(valuation(xg, minusP0) == 2);
    FqElem w1 = W.P0.x;
    FFElem strano = W.x() * W.pull_g(W.x()) + FFElem::constant(E, w1.sqr());
    CHECK(valuation(strano, minusP0) == 4);
    // full divisor: 4(-P0) - 2Yinf - 2([-2]P0)
    Divisor d = principal_divisor(strano);
    CHECK(d.degree() == 0);
    CHECK(d.mult(minusP0) == 4);
    CHECK(d.mult(Place::infinity(E)) == -2);
    CHECK(d.mult(Place(E, W.multiple(2 * W.n - 2))) == -2);
    CHECK((int)d.entries.size() == 3);
}

TEST_CASE("divisor of the g-trace of x") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    Divisor d = principal_divisor(W.trace_x());
    CHECK(d.degree() == 0);
    for (int j = 0; j < W.n; ++j) {
        CHECK(d.mult(Place(E, W.multiple(2 * j + 1))) == 2);   // zeros on Z
        if (2 * j == 0)
            CHECK(d.mult(Place::infinity(E)) == -2);           // [0]P0 = Yinf
        else
            CHECK(d.mult(Place(E, W.multiple(2 * j))) == -2);  // poles on P
    }
    CHECK((int)d.entries.size() == 2 * W.n);
    CHECK(principal_divisor(FFElem::constant(E, FqElem::gen(E.k))).entries.empty());
}

TEST_CASE("pole lemma bounds for e_k") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    for (int k : {1, 3}) {
        auto witt = W.witt_elements(k);
        Divisor d = principal_divisor(witt.e_k);
        CHECK(d.degree() == 0);
        // (ii) Yinf is not a pole
        CHECK(d.mult(Place::infinity(E)) >= 0);
        for (auto& [p, m] : d.entries) {
            if (m >= 0) continue;
            // (i) every pole lies in P cup Z, i.e. is a 2n-torsion point
            bool torsion = false;
            int idx = -1;
            for (int i = 0; i < W.two_n; ++i)
                if (!p.inf && W.multiple(i) == p.pt) { torsion = true; idx = i; }
            CHECK(torsion);
            // (iii) v >= -4 on Z
            if (idx % 2 == 1) CHECK(m >= -4);
        }
        // (iv) v at [-k]P0 is >= -2
        CHECK(valuation(witt.e_k, Place(E, W.multiple(W.two_n - k))) >= -2);
    }
}

TEST_CASE("zeros of linear combinations of g0^i(x) have even multiplicity") {
    WittCtx& W = ctx8();
    std::mt19937_64 rng(21);
    for (int it = 0; it < 8; ++it) {
        FFElem delta = FFElem::zero(W.E);
        for (int i = 0; i < W.two_n; ++i) {
            uint64_t c = rng() & W.E.k->order_minus_one();
            if (rng() % 3) c = 0;
            if (c) delta = delta + W.pull_g0(W.x(), i) * FqElem{W.E.k, c};
        }
        if (delta.is_zero()) continue;
        Divisor d = principal_divisor(delta);
        CHECK(d.degree() == 0);
        for (auto& [p, m] : d.entries)
            if (m > 0) CHECK(m % 2 == 0);
    }
}

TEST_CASE("valuation is additive and divisors of random elements have degree 0") {
    WittCtx& W = ctx8();
    const CurveE& E = W.E;
    std::mt19937_64 rng(22);
    auto rnd = [&](int d) {
        Poly p(E.k);
        p.c.resize(d + 1);
        for (auto& c : p.c) c = rng() & E.k->order_minus_one();
        p.trim();
        return p;
    };
    Place P(E, W.multiple(5));
    Place Pi = Place::infinity(E);
    for (int it = 0; it < 6; ++it) {
        FFElem f{E, RatFun(rnd(2), rnd(1) + Poly::one(E.k)), RatFun(rnd(2))};
        FFElem h{E, RatFun(rnd(2)), RatFun(rnd(1), rnd(2) + Poly::one(E.k))};
        if (f.is_zero() || h.is_zero()) continue;
        for (const Place& pl : {P, Pi}) {
            CHECK(valuation(f * h, pl) == valuation(f, pl) + valuation(h, pl));
            if (!(f + h).is_zero())
                CHECK(valuation(f + h, pl) >= std::min(valuation(f, pl), valuation(h, pl)));
        }
        CHECK(principal_divisor(f).degree() == 0);
    }
}

TEST_CASE("divisor printing with torsion naming") {
    WittCtx& W = ctx8();
    Divisor d = principal_divisor(W.x() + W.pull_g(W.x()));
    std::string s = d.str(&W);
    CHECK(s.find("]P0") != std::string::npos);
    CHECK(s.find("Yinf") != std::string::npos);
}
