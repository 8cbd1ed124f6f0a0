#ifndef BIELL_FUNCFIELD_HPP
#define BIELL_FUNCFIELD_HPP

#include "biell/ellcurve.hpp"
#include "biell/polyrat.hpp"

#include <optional>
#include <vector>

namespace biell {

/// Element A(x) + B(x)*y of the elliptic function field
/// K(E) = K(x)[y]/(y^2 + xy + x^3 + nu x^2 + mu).
/// The representation is unique; multiplication reduces y^2 via the curve
/// equation, inversion goes through the conjugate A + B(x+y).
struct FFElem {
    CurveE E;
    RatFun A, B;

    FFElem() = default;
    FFElem(CurveE E, RatFun A, RatFun B);

    static FFElem zero(const CurveE& E);
    static FFElem one(const CurveE& E);
    static FFElem x(const CurveE& E);
    static FFElem y(const CurveE& E);
    static FFElem from(const CurveE& E, RatFun a) { return FFElem(E, std::move(a), RatFun::zero(E.k)); }
    static FFElem constant(const CurveE& E, FqElem c) { return from(E, RatFun::constant(c)); }

    bool is_zero() const { return A.is_zero() && B.is_zero(); }
    bool in_base() const { return B.is_zero(); }    // lies in K(x)

    FFElem operator+(const FFElem& b) const;
    FFElem operator*(const FFElem& b) const;
    FFElem operator*(FqElem s) const { return FFElem(E, A * s, B * s); }
    FFElem inv() const;
    FFElem operator/(const FFElem& b) const { return *this * b.inv(); }
    FFElem sqr() const { return *this * *this; }
    bool operator==(const FFElem& b) const;
    bool operator!=(const FFElem& b) const { return !(*this == b); }

    /// Norm to K(x): f * conj(f) = A^2 + ABx + B^2 (x^3 + nu x^2 + mu).
    RatFun norm() const;
    FFElem conj() const;                            // A + B(x+y) = (A+Bx) + By

    std::string str() const;                        // "(A) + (B)*y"
};

/// Square root in K(E): writing f = P + Qy, a root A + By exists iff Q/x is a
/// square in K(x) (giving B) and P + B^2 (x^3+nu x^2+mu) is a square (giving A).
std::optional<FFElem> ff_sqrt(const FFElem& f);

/// Pullback machinery for the translation subgroup generated by P0 (order 2n)
/// and the elliptic involution phi: (x,y) -> (x, x+y). The 2n coordinate-image
/// pairs of g0^i are precomputed; g = g0^2 generates the order-n subgroup.
class WittCtx {
public:
    CurveE E;
    ECPoint P0;
    int n;                                          // |<g>|, a power of 2
    int two_n;

    WittCtx(const CurveE& E, const ECPoint& P0, int n);

    const ECPoint& multiple(int i) const;           // [i mod 2n] P0
    FFElem x() const { return FFElem::x(E); }
    FFElem y() const { return FFElem::y(E); }

    /// Pullback under the translation g0^i: substitutes the Eq-(8) coordinate
    /// images, so pull_g0(f, i)(P) = f(P + [i]P0).
    FFElem pull_g0(const FFElem& f, int i) const;
    FFElem pull_phi(const FFElem& f) const;
    FFElem pull_g(const FFElem& f, int v = 1) const { return pull_g0(f, 2 * v); }

    /// Relative g-trace: f + g(f) + ... + g^(n-1)(f).
    FFElem trace_g(const FFElem& f) const;
    /// Partial sum xi_{g^v} = xi + g(xi) + ... + g^(v-1)(xi), empty for v=0.
    FFElem partial_sum(const FFElem& xi, int v) const;

    const FFElem& trace_x() const { return trace_x_; }

    struct Witt {
        FFElem d, a, c_k, e_k;
        int k = 0;
        bool alternative = false;
    };
    /// d = x/Tr_g(x) (or the y/x variant), a = d^2+d, c_k = g0^k(x), and the
    /// solution e_k of g(e_k) + e_k = a built from the partial trace sums.
    Witt witt_elements(int k, bool alternative = false) const;

private:
    std::vector<ECPoint> mult_;
    struct CoordImage {
        Poly P, Q, R;                               // x' = (P + Q y)/R
        FFElem yp;                                  // y'
    };
    std::vector<CoordImage> img_;                   // index 1..2n-1
    FFElem trace_x_;

    std::pair<Poly, Poly> eval_pair(const Poly& N, const CoordImage& ci) const;
    FFElem eval_ratfun(const RatFun& r, const CoordImage& ci) const;
};

} // namespace biell

#endif
