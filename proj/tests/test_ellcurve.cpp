#include "doctest.h"

#include "biell/ellcurve.hpp"

#include <stdexcept>
#include <vector>

using namespace biell;

namespace {
CurveE curve16() {
    FieldRef k = FieldCtx::get(4);
    return CurveE(k, FqElem::zero(k), FqElem::gen(k));
}

std::vector<ECPoint> all_points(const CurveE& E) {
    std::vector<ECPoint> pts{ECPoint::infinity()};
    uint64_t q = E.k->order_minus_one() + 1;
    for (uint64_t xv = 0; xv < q; ++xv) {
        for (uint64_t yv = 0; yv < q; ++yv) {
            ECPoint p{FqElem{E.k, xv}, FqElem{E.k, yv}};
            if (E.on_curve(p)) pts.push_back(p);
        }
    }
    return pts;
}
} // namespace

TEST_CASE("group law basics") {
    CurveE E = curve16();
    ECPoint T = E.two_torsion();
    CHECK(E.on_curve(T));
    CHECK(E.add(T, ECPoint::infinity()) == T);
    CHECK(E.add(T, T).inf);                         // (0, sqrt(mu)) is 2-torsion
    CHECK(E.neg(T) == T);                           // fixed by the elliptic involution
    CurveE E2(E.k, FqElem::zero(E.k), FqElem::gen(E.k).pow(3));
    CHECK_THROWS_AS(E2.add(T, T), std::invalid_argument);
    CHECK_THROWS_AS(CurveE(E.k, FqElem::zero(E.k), FqElem::zero(E.k)), std::invalid_argument);
}

TEST_CASE("point count over gf16: exhaustive oracle agrees") {
    CurveE E = curve16();
    auto pts = all_points(E);                       // independent 256-candidate scan
    CHECK(pts.size() == 16);                        // frozen from the oracle
    CHECK(E.point_count() == pts.size());
    uint64_t q = 16;
    // Hasse interval and parity
    CHECK(E.point_count() >= q + 1 - 8);
    CHECK(E.point_count() <= q + 1 + 8);
    CHECK(E.point_count() % 2 == 0);
    CHECK(E.point_count_ext(1) == 16);
    CHECK(E.point_count_ext(2) == 288);
}

TEST_CASE("associativity and commutativity, exhaustive over gf16") {
    CurveE E = curve16();
    auto pts = all_points(E);
    for (auto& p : pts)
        for (auto& q : pts) {
            CHECK(E.add(p, q) == E.add(q, p));
            CHECK(E.on_curve(E.add(p, q)));
        }
    for (size_t i = 0; i < pts.size(); i += 3)
        for (size_t j = 0; j < pts.size(); ++j)
            for (size_t l = 0; l < pts.size(); ++l) {
                ECPoint a = E.add(E.add(pts[i], pts[j]), pts[l]);
                ECPoint b = E.add(pts[i], E.add(pts[j], pts[l]));
                CHECK(a == b);
            }
}

TEST_CASE("scalar multiples match iterated addition") {
    CurveE E = curve16();
    auto res = find_torsion_generator(E, 16, 1);
    ECPoint P0 = res.P0;
    CHECK(res.ext_degree == 1);                     // the 16-torsion is gf16-rational
    ECPoint acc = ECPoint::infinity();
    for (int i = 0; i <= 32; ++i) {
        CHECK(E.smul(i, P0) == acc);
        acc = E.add(acc, P0);
    }
    CHECK(E.smul(0, P0).inf);
    CHECK(E.smul(-1, P0) == E.neg(P0));
    CHECK(E.smul(-5, P0) == E.neg(E.smul(5, P0)));
}

TEST_CASE("torsion generator: exact order and [n]P0 lands on the 2-torsion") {
    CurveE E = curve16();
    for (uint64_t two_n : {8ull, 16ull, 32ull}) {
        auto res = find_torsion_generator(E, two_n, 7);
        const CurveE& Es = res.curve;
        CHECK(Es.smul((int64_t)two_n, res.P0).inf);
        CHECK(!Es.smul((int64_t)two_n / 2, res.P0).inf);
        // cyclic 2-Sylow forces [n]P0 = (0, sqrt(mu)); confirm by the oracle
        ECPoint half = Es.smul((int64_t)two_n / 2, res.P0);
        CHECK(half == Es.two_torsion());
    }
    // 2n = 32 needs the degree-2 extension: #E(F256) = 288 = 32*9
    auto res32 = find_torsion_generator(E, 32, 7);
    CHECK(res32.ext_degree == 2);
}

TEST_CASE("doubling matches the sigma formulas") {
    // [2]P0 = (sigma1^2, sigma2^2) with sigma1 = w1 + sqrt(mu)/w1,
    // sigma2 = (sigma1/w1)(w1+w2+sqrt(mu)) + w1
    CurveE E = curve16();
    auto res = find_torsion_generator(E, 16, 3);
    FqElem w1 = res.P0.x, w2 = res.P0.y, smu = E.mu.sqrt();
    FqElem s1 = w1 + smu / w1;
    FqElem s2 = (s1 / w1) * (w1 + w2 + smu) + w1;
    ECPoint D = E.add(res.P0, res.P0);
    CHECK(D.x == s1.sqr());
    CHECK(D.y == s2.sqr());
}
