#include "biell/funcfield.hpp"

#include <stdexcept>

namespace biell {

namespace {
// x^3 + nu x^2 + mu, the y-free part of the curve relation y^2 = xy + rhs
Poly curve_rhs(const CurveE& E) {
    return Poly(E.k, {E.mu.v, 0, E.nu.v, 1});
}

void check_curve(const CurveE& a, const CurveE& b) {
    if (a.k != b.k || a.nu != b.nu || a.mu != b.mu)
        throw std::invalid_argument("function-field elements live on different curves");
}
} // namespace

FFElem::FFElem(CurveE E, RatFun A, RatFun B) : E(E), A(std::move(A)), B(std::move(B)) {
    if (this->A.field() != E.k || this->B.field() != E.k)
        throw std::invalid_argument("FFElem coordinate field mismatch");
}

FFElem FFElem::zero(const CurveE& E) { return {E, RatFun::zero(E.k), RatFun::zero(E.k)}; }
FFElem FFElem::one(const CurveE& E) { return {E, RatFun::one(E.k), RatFun::zero(E.k)}; }
FFElem FFElem::x(const CurveE& E) { return {E, RatFun::x(E.k), RatFun::zero(E.k)}; }
FFElem FFElem::y(const CurveE& E) { return {E, RatFun::zero(E.k), RatFun::one(E.k)}; }

FFElem FFElem::operator+(const FFElem& b) const {
    check_curve(E, b.E);
    return {E, A + b.A, B + b.B};
}

FFElem FFElem::operator*(const FFElem& b) const {
    check_curve(E, b.E);
    RatFun f(curve_rhs(E));
    RatFun xr = RatFun::x(E.k);
    // (A1 + B1 y)(A2 + B2 y), reduced by y^2 = xy + f
    return {E, A * b.A + B * b.B * f, A * b.B + b.A * B + B * b.B * xr};
}

RatFun FFElem::norm() const {
    RatFun f(curve_rhs(E));
    return A * A + A * B * RatFun::x(E.k) + B * B * f;
}

FFElem FFElem::conj() const { return {E, A + B * RatFun::x(E.k), B}; }

FFElem FFElem::inv() const {
    if (is_zero()) throw std::domain_error("inversion of zero function-field element");
    RatFun nrm = norm();
    FFElem c = conj();
    return {E, c.A / nrm, c.B / nrm};
}

bool FFElem::operator==(const FFElem& b) const {
    return E.k == b.E.k && E.nu == b.E.nu && E.mu == b.E.mu && A == b.A && B == b.B;
}

std::string FFElem::str() const {
    if (B.is_zero()) return A.str();
    return "(" + A.str() + ") + (" + B.str() + ")*y";
}

std::optional<FFElem> ff_sqrt(const FFElem& f) {
    // (A + By)^2 = A^2 + B^2(x^3+nu x^2+mu) + B^2 x y
    RatFun xr = RatFun::x(f.E.k);
    auto B2 = (f.B / xr).sqrt();
    if (!B2) return std::nullopt;
    RatFun rhs(curve_rhs(f.E));
    auto A2 = (f.A + *B2 * *B2 * rhs).sqrt();
    if (!A2) return std::nullopt;
    FFElem w{f.E, *A2, *B2};
    return w;
}

WittCtx::WittCtx(const CurveE& E, const ECPoint& P0, int n)
    : E(E), P0(P0), n(n), two_n(2 * n), trace_x_(FFElem::zero(E)) {
    if (n < 2 || (n & (n - 1))) throw std::invalid_argument("n must be a power of 2, >= 2");
    if (!E.on_curve(P0) || P0.inf) throw std::invalid_argument("P0 must be an affine point of E");
    if (!E.smul(two_n, P0).inf || E.smul(n, P0).inf)
        throw std::invalid_argument("P0 does not have exact order 2n");
    mult_.resize(two_n);
    mult_[0] = ECPoint::infinity();
    for (int i = 1; i < two_n; ++i) {
        mult_[i] = E.add(mult_[i - 1], P0);
        if (mult_[i].inf) throw std::logic_error("[i]P0 = Yinf for 0 < i < 2n");
    }
    img_.resize(two_n);
    FieldRef k = E.k;
    for (int i = 1; i < two_n; ++i) {
        FqElem Xi = mult_[i].x, Yi = mult_[i].y;
        // x' = (Xi y + Xi x^2 + (Xi^2 + Yi) x) / (x + Xi)^2
        Poly P(k, {0, (Xi.sqr() + Yi).v, Xi.v});
        Poly Q = Poly::constant(Xi);
        Poly lin(k, {Xi.v, 1});
        Poly R = lin * lin;
        FFElem xp{E, RatFun(P, R), RatFun(Q, R)};
        // y' = ((y + Yi)/(x + Xi)) (x' + Xi) + x' + Yi
        FFElem num{E, RatFun(Poly::constant(Yi)), RatFun::one(k)};
        FFElem den{E, RatFun(lin), RatFun::zero(k)};
        FFElem XiC = FFElem::constant(E, Xi);
        FFElem yp = (num / den) * (xp + XiC) + xp + FFElem::constant(E, Yi);
        img_[i] = {P, Q, R, yp};
    }
    trace_x_ = FFElem::zero(E);
    for (int v = 0; v < n; ++v) trace_x_ = trace_x_ + pull_g0(x(), 2 * v);
}

const ECPoint& WittCtx::multiple(int i) const {
    int r = ((i % two_n) + two_n) % two_n;
    return mult_[r];
}

std::pair<Poly, Poly> WittCtx::eval_pair(const Poly& N, const CoordImage& ci) const {
    // returns (U, V) with U + V y = R^deg(N) * N(x'), x' = (P + Qy)/R
    FieldRef k = E.k;
    Poly f = curve_rhs(E);
    Poly xp = Poly::x(k);
    int d = N.deg();
    if (d < 0) return {Poly::zero(k), Poly::zero(k)};
    Poly U = Poly::constant(N.coeff(d)), V = Poly::zero(k);
    Poly Rpow = Poly::one(k);
    for (int j = d - 1; j >= 0; --j) {
        Rpow = Rpow * ci.R;
        // (U,V) *= (P, Q); then += N_j * Rpow
        Poly U2 = U * ci.P + V * ci.Q * f;
        Poly V2 = U * ci.Q + V * ci.P + V * ci.Q * xp;
        U = U2 + Rpow * N.coeff(j);
        V = V2;
    }
    return {U, V};
}

FFElem WittCtx::eval_ratfun(const RatFun& r, const CoordImage& ci) const {
    FieldRef k = E.k;
    Poly f = curve_rhs(E);
    Poly xp = Poly::x(k);
    auto [U1, V1] = eval_pair(r.num, ci);           // R^dn * num(x')
    auto [U2, V2] = eval_pair(r.den, ci);           // R^dd * den(x')
    int dn = r.num.deg(), dd = r.den.deg();
    // r(x') = (U1 + V1 y) R^(dd - dn) / (U2 + V2 y); multiply by the conjugate
    Poly nrm = U2 * U2 + U2 * V2 * xp + V2 * V2 * f;
    Poly cU = U2 + V2 * xp, cV = V2;
    Poly WU = U1 * cU + V1 * cV * f;
    Poly WV = U1 * cV + V1 * cU + V1 * cV * xp;
    Poly Rpow = Poly::one(k);
    int e = dd - dn;
    Poly den = nrm;
    if (e >= 0)
        for (int i = 0; i < e; ++i) Rpow = Rpow * ci.R;
    else
        for (int i = 0; i < -e; ++i) den = den * ci.R;
    return {E, RatFun(WU * Rpow, den), RatFun(WV * Rpow, den)};
}

FFElem WittCtx::pull_g0(const FFElem& f, int i) const {
    int r = ((i % two_n) + two_n) % two_n;
    if (r == 0) return f;
    const CoordImage& ci = img_[r];
    FFElem res = eval_ratfun(f.A, ci);
    if (!f.B.is_zero()) res = res + eval_ratfun(f.B, ci) * ci.yp;
    return res;
}

FFElem WittCtx::pull_phi(const FFElem& f) const {
    // x -> x, y -> x + y
    return {f.E, f.A + f.B * RatFun::x(E.k), f.B};
}

FFElem WittCtx::trace_g(const FFElem& f) const {
    FFElem acc = f;
    for (int v = 1; v < n; ++v) acc = acc + pull_g0(f, 2 * v);
    return acc;
}

FFElem WittCtx::partial_sum(const FFElem& xi, int v) const {
    FFElem acc = FFElem::zero(E);
    for (int i = 0; i < v; ++i) acc = acc + pull_g0(xi, 2 * i);
    return acc;
}

WittCtx::Witt WittCtx::witt_elements(int k, bool alternative) const {
    if (k < 1 || k > two_n - 1 || k % 2 == 0)
        throw std::invalid_argument("k must be odd with 1 <= k <= 2n-1");
    if (trace_x_.is_zero())
        throw std::domain_error("Tr_g(x) vanishes: degenerate torsion choice");
    FFElem d = x() / trace_x_;
    if (alternative) {
        FFElem yox = y() / x();
        d = yox + (trace_g(yox) + FFElem::one(E)) * d;
    }
    FFElem a = d * d + d;
    FFElem c_k = pull_g0(x(), k);
    FFElem trc = pull_g0(trace_x_, k);              // Tr_g(c_k) = g0^k(Tr_g(x))
    if (trc.is_zero())
        throw std::domain_error("Tr_g(c_k) vanishes: degenerate torsion choice");
    FFElem sum = FFElem::zero(E);
    FFElem a_part = FFElem::zero(E);                // a_{g^v}, starts at a_{g^0} = 0
    FFElem ga = a;                                  // g^(v-1)(a) rolling
    for (int v = 1; v < n; ++v) {
        a_part = a_part + ga;
        if (v + 1 < n) ga = pull_g(ga);
        sum = sum + a_part * pull_g0(x(), (k + 2 * v) % two_n);
    }
    FFElem e_k = sum / trc;
    return {d, a, c_k, e_k, k, alternative};
}

} // namespace biell
