#include "doctest.h"

#include "biell/polyrat.hpp"

#include <random>

using namespace biell;

namespace {
FieldRef k16 = FieldCtx::get(4);

Poly rand_poly(FieldRef k, int deg, std::mt19937_64& rng) {
    Poly p(k);
    p.c.resize(deg + 1);
    for (auto& c : p.c) c = rng() & k->order_minus_one();
    p.trim();
    return p;
}
} // namespace

TEST_CASE("poly arithmetic basics") {
    Poly x = Poly::x(k16), one = Poly::one(k16);
    CHECK((x + one) * (x + one) == x * x + one);            // Frobenius
    CHECK(gcd(x * x + one, x + one) == x + one);            // x^2+1=(x+1)^2
    auto [q, r] = (x * x * x).divrem(x);
    CHECK(q == x * x);
    CHECK(r.is_zero());
    CHECK_THROWS(x.divrem(Poly::zero(k16)));
}

TEST_CASE("poly gcd is attained as a combination (extended gcd)") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        Poly a = rand_poly(k16, 1 + (int)(rng() % 64), rng);
        Poly b = rand_poly(k16, 1 + (int)(rng() % 64), rng);
        if (a.is_zero() || b.is_zero()) continue;
        Poly g, u, v;
        egcd(a, b, g, u, v);
        CHECK(g == gcd(a, b));
        CHECK(u * a + v * b == g);
        CHECK((a % g).is_zero());
        CHECK((b % g).is_zero());
    }
}

TEST_CASE("ratfun arithmetic and normalization") {
    RatFun x = RatFun::x(k16);
    RatFun a = x * x + RatFun::one(k16);
    CHECK((a + a).is_zero());
    CHECK(x.inv() == RatFun(Poly::one(k16), Poly::x(k16)));
    // sum of 1/(x+alpha) over all alpha in gf16 equals 1/(x^16+x)
    RatFun sum = RatFun::zero(k16);
    for (uint64_t al = 0; al < 16; ++al)
        sum = sum + RatFun(Poly::one(k16), Poly(k16, {al, 1}));
    Poly x16x(k16);
    x16x.c.assign(17, 0);
    x16x.c[1] = 1;
    x16x.c[16] = 1;
    CHECK(sum == RatFun(Poly::one(k16), x16x));
    CHECK_THROWS(RatFun::zero(k16).inv());
}

TEST_CASE("square detection and square roots") {
    RatFun x = RatFun::x(k16);
    CHECK((x * x).sqrt().value() == x);
    CHECK(!(x * x * x).sqrt().has_value());
    CHECK((x * x * x).derivative() == x * x);
    // (x^2+1)/x^4 -> (x+1)/x^2
    RatFun f = (x * x + RatFun::one(k16)) / (x * x * x * x);
    auto s = f.sqrt();
    REQUIRE(s.has_value());
    CHECK(*s == (x + RatFun::one(k16)) / (x * x));
    std::mt19937_64 rng(13);
    for (int it = 0; it < 30; ++it) {
        RatFun g(rand_poly(k16, 5, rng), rand_poly(k16, 4, rng) + Poly::one(k16));
        if (g.is_zero()) continue;
        auto rt = (g * g).sqrt();
        REQUIRE(rt.has_value());
        CHECK(*rt == g);
        CHECK((g * g).derivative().is_zero());
    }
}

TEST_CASE("roots and factorization") {
    // (x + mu)(x + mu^2)^2 * irreducible quadratic
    FqElem mu = FqElem::gen(k16);
    Poly f = Poly(k16, {mu.v, 1});
    Poly g = Poly(k16, {mu.sqr().v, 1});
    // x^2 + x + c is irreducible over gf16 iff trace(c) != 0
    uint64_t c1 = 0;
    while (k16->trace(++c1) != 1) {}
    Poly q(k16, {c1, 1, 1});
    Poly prod = f * g * g * q;
    auto roots = roots_in(prod, k16);
    REQUIRE(roots.size() == 2);
    CHECK(((roots[0] == mu && roots[1] == mu.sqr()) || (roots[1] == mu && roots[0] == mu.sqr())));
    auto fac = factorize(prod);
    REQUIRE(fac.size() == 3);
    int total = 0;
    Poly rebuilt = Poly::one(k16);
    for (auto& [p, m] : fac) {
        total += p.deg() * m;
        for (int i = 0; i < m; ++i) rebuilt = rebuilt * p;
    }
    CHECK(total == prod.deg());
    CHECK(rebuilt == prod.monic());
    // roots in the quadratic extension catch the last factor
    auto roots8 = roots_in(prod, FieldCtx::get(8));
    CHECK(roots8.size() == 4);
}

TEST_CASE("valuations at finite places and infinity") {
    FqElem mu = FqElem::gen(k16);
    Poly pi(k16, {mu.v, 1});
    RatFun f(Poly::one(k16), pi * pi * pi);
    CHECK(f.v_pi(pi) == -3);
    CHECK(f.v_inf() == 3);
    RatFun g = RatFun(pi * pi) * RatFun::x(k16);
    CHECK(g.v_pi(pi) == 2);
    CHECK(g.v_inf() == -3);
}

TEST_CASE("residue field arithmetic") {
    FqElem mu = FqElem::gen(k16);
    uint64_t c2 = 0;
    while (k16->trace(++c2) != 1) {}
    Residue R{Poly(k16, {c2, 1, 1})};    // x^2 + x + c, irreducible
    CHECK(R.ext_bits() == 8);
    Poly a = Poly::x(k16);
    Poly ai = R.inv(a);
    CHECK(R.mul(a, ai) == Poly::one(k16));
    Poly s = R.sqrt(a);
    CHECK(R.mul(s, s) == a % R.pi);
    int tr = R.trace01(a);
    CHECK((tr == 0 || tr == 1));
}

TEST_CASE("canonical text form round trip") {
    FieldRef k = k16;
    Poly p = Poly::parse(k, "mu^4*x^12 + mu*x^8 + mu^6*x^4 + mu^4");
    CHECK(p.deg() == 12);
    CHECK(p.str() == "mu^4*x^12 + mu*x^8 + mu^6*x^4 + mu^4");
    CHECK(Poly::parse(k, p.str()) == p);
    CHECK(Poly::zero(k).str() == "0");
    CHECK(Poly::parse(k, "x^16 + mu^4*x^12 + mu*x^8 + mu^6*x^4 + mu^4").str() ==
          "x^16 + mu^4*x^12 + mu*x^8 + mu^6*x^4 + mu^4");
}
