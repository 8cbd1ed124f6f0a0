#include "biell/ellcurve.hpp"

#include <random>
#include <stdexcept>

namespace biell {

std::string ECPoint::str() const {
    if (inf) return "Yinf";
    return "(" + x.str() + "," + y.str() + ")@gf2^" + std::to_string(x.k->m);
}

CurveE::CurveE(FieldRef k, FqElem nu, FqElem mu) : k(k), nu(nu), mu(mu) {
    if (nu.k != k || mu.k != k) throw std::invalid_argument("curve coefficients from a foreign field");
    if (mu.is_zero()) throw std::invalid_argument("mu = 0 gives a singular curve");
}

bool CurveE::on_curve(const ECPoint& p) const {
    if (p.inf) return true;
    if (p.x.k != k) return false;
    FqElem lhs = p.y.sqr() + p.x * p.y;
    FqElem rhs = p.x.sqr() * p.x + nu * p.x.sqr() + mu;
    return lhs == rhs;
}

CurveE CurveE::embed(FieldRef target) const {
    return CurveE(target, nu.embed(target), mu.embed(target));
}

ECPoint CurveE::neg(const ECPoint& p) const {
    if (p.inf) return p;
    return {p.x, p.x + p.y};
}

ECPoint CurveE::add(const ECPoint& p, const ECPoint& q) const {
    if (!on_curve(p) || !on_curve(q))
        throw std::invalid_argument("ec_add: point not on this curve");
    if (p.inf) return q;
    if (q.inf) return p;
    if (p.x == q.x) {
        if (p.y + q.y == p.x || (p.x.is_zero() && p.y == q.y)) return ECPoint::infinity();
        // doubling; the tangent is vertical only at x = 0 (handled above)
        FqElem lam = p.x + p.y / p.x;
        FqElem x3 = lam.sqr() + lam + nu;
        FqElem y3 = p.x.sqr() + (lam + FqElem::one(k)) * x3;
        return {x3, y3};
    }
    FqElem lam = (p.y + q.y) / (p.x + q.x);
    FqElem x3 = lam.sqr() + lam + p.x + q.x + nu;
    FqElem y3 = lam * (p.x + x3) + x3 + p.y;
    return {x3, y3};
}

ECPoint CurveE::smul(int64_t i, const ECPoint& p) const {
    ECPoint base = p;
    if (i < 0) {
        base = neg(p);
        i = -i;
    }
    ECPoint acc = ECPoint::infinity();
    while (i) {
        if (i & 1) acc = add(acc, base);
        base = add(base, base);
        i >>= 1;
    }
    return acc;
}

uint64_t CurveE::point_order(const ECPoint& p, uint64_t group_order) const {
    if (p.inf) return 1;
    uint64_t ord = group_order;
    for (uint64_t d = 2; d * d <= group_order; ++d) {
        while (ord % d == 0 && smul((int64_t)(ord / d), p).inf) ord /= d;
    }
    if (ord > 1 && smul((int64_t)1, p).inf) ord = 1;
    // handle a possibly prime remaining cofactor
    uint64_t n = ord;
    for (uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) n /= d;
    if (n > 1 && ord % n == 0 && smul((int64_t)(ord / n), p).inf) ord /= n;
    return ord;
}

uint64_t CurveE::point_count() const {
    if (k->m > 20) throw std::domain_error("point_count: field too large for brute force");
    uint64_t q = k->order_minus_one() + 1;
    uint64_t count = 1 + 1;                 // Y_inf and (0, sqrt(mu))
    for (uint64_t xv = 1; xv < q; ++xv) {
        // y = x z turns the equation into z^2 + z = (x^3 + nu x^2 + mu)/x^2
        uint64_t x3 = k->mul(k->mul(xv, xv), xv);
        uint64_t rhs = x3 ^ k->mul(nu.v, k->mul(xv, xv)) ^ mu.v;
        uint64_t u = k->mul(rhs, k->inv(k->mul(xv, xv)));
        if (k->trace(u) == 0) count += 2;
    }
    return count;
}

uint64_t CurveE::point_count_ext(int s) const {
    // a_s = a_1 a_{s-1} - q a_{s-2}; counts follow the Frobenius trace
    int64_t q = (int64_t)(k->order_minus_one() + 1);
    int64_t a1 = q + 1 - (int64_t)point_count();
    __int128 am1 = 2, a = a1;
    for (int i = 2; i <= s; ++i) {
        __int128 next = (__int128)a1 * a - (__int128)q * am1;
        am1 = a;
        a = next;
    }
    __int128 qs = 1;
    for (int i = 0; i < s; ++i) qs *= q;
    return (uint64_t)(qs + 1 - a);
}

TorsionSearch find_torsion_generator(const CurveE& E, uint64_t two_n, uint64_t seed, int max_ext) {
    if (two_n < 8 || (two_n & (two_n - 1)))
        throw std::invalid_argument("torsion order must be a power of 2, >= 8");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int s = 1; s <= max_ext; ++s) {
        int m = E.k->m * s;
        if (m > 40) break;
        uint64_t count = E.point_count_ext(s);
        uint64_t two_part = count & (~count + 1);   // largest power of 2 dividing count
        if (two_part < two_n) continue;
        FieldRef K = (s == 1) ? E.k : FieldCtx::get(m);
        CurveE Es = E.embed(K);
        uint64_t odd = count / two_part;
        for (int tries = 0; tries < 4096; ++tries) {
            uint64_t xv = rng() & K->order_minus_one();
            ECPoint P;
            if (xv == 0) {
                P = Es.two_torsion();
            } else {
                uint64_t x2 = K->mul(xv, xv);
                uint64_t rhs = K->mul(x2, xv) ^ K->mul(Es.nu.v, x2) ^ Es.mu.v;
                uint64_t u = K->mul(rhs, K->inv(x2));
                uint64_t z;
                if (!K->solve_artin_schreier(u, z)) continue;
                P = {FqElem{K, xv}, FqElem{K, K->mul(xv, z)}};
            }
            ECPoint Q = Es.smul((int64_t)odd, P);   // lands in the 2-Sylow
            if (Q.inf) continue;
            // order of Q is a power of 2
            uint64_t ord = 1;
            ECPoint t = Q;
            while (!t.inf) {
                t = Es.add(t, t);
                ord <<= 1;
            }
            if (ord < two_n) continue;
            ECPoint P0 = Es.smul((int64_t)(ord / two_n), Q);
            if (!Es.smul((int64_t)two_n, P0).inf || Es.smul((int64_t)(two_n / 2), P0).inf)
                throw std::logic_error("torsion generator failed the exact-order test");
            return {Es, P0, s};
        }
    }
    throw std::runtime_error("torsion search exceeded the extension bound (max_ext=" +
                             std::to_string(max_ext) + ") for order " + std::to_string(two_n));
}

} // namespace biell
