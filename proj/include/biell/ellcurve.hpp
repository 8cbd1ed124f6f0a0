#ifndef BIELL_ELLCURVE_HPP
#define BIELL_ELLCURVE_HPP

#include "biell/gf2m.hpp"

#include <cstdint>
#include <string>

namespace biell {

/// Affine point or the infinite point Y_inf (the neutral element).
struct ECPoint {
    bool inf = true;
    FqElem x, y;

    ECPoint() = default;
    ECPoint(FqElem x, FqElem y) : inf(false), x(x), y(y) {}
    static ECPoint infinity() { return {}; }

    bool operator==(const ECPoint& b) const {
        if (inf || b.inf) return inf == b.inf;
        return x == b.x && y == b.y;
    }
    bool operator!=(const ECPoint& b) const { return !(*this == b); }
    std::string str() const;
};

/// The ordinary characteristic-2 elliptic curve y^2 + xy = x^3 + nu x^2 + mu.
struct CurveE {
    FieldRef k = nullptr;
    FqElem nu, mu;

    CurveE() = default;
    CurveE(FieldRef k, FqElem nu, FqElem mu);

    bool on_curve(const ECPoint& p) const;
    CurveE embed(FieldRef target) const;
    /// The unique affine 2-torsion point (0, sqrt(mu)).
    ECPoint two_torsion() const { return {FqElem::zero(k), mu.sqrt()}; }

    ECPoint neg(const ECPoint& p) const;
    ECPoint add(const ECPoint& p, const ECPoint& q) const;
    ECPoint smul(int64_t i, const ECPoint& p) const;
    /// Multiplicative order of p in the point group (p must have finite order;
    /// group_order must annihilate p).
    uint64_t point_order(const ECPoint& p, uint64_t group_order) const;

    /// Exact rational point count including Y_inf; brute force, field <= 2^20.
    uint64_t point_count() const;
    /// Point count over the degree-s extension, from the Frobenius trace.
    uint64_t point_count_ext(int s) const;
};

struct TorsionSearch {
    CurveE curve;     // base curve embedded into the working field
    ECPoint P0;       // generator of the cyclic 2n-torsion
    int ext_degree;   // smallest extension degree of the base field that works
};

/// Find a generator P0 of the cyclic subgroup of order two_n (a power of 2,
/// >= 8) of the point group, scanning extension fields of increasing degree.
TorsionSearch find_torsion_generator(const CurveE& E, uint64_t two_n,
                                     uint64_t seed = 1, int max_ext = 12);

} // namespace biell

#endif
