#ifndef BIELL_POLYRAT_HPP
#define BIELL_POLYRAT_HPP

#include "biell/gf2m.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace biell {

/// Dense univariate polynomial over GF(2^m), lowest degree first.
/// Canonical form: no trailing zero coefficients (zero poly has empty c).
struct Poly {
    FieldRef k = nullptr;
    std::vector<uint64_t> c;

    Poly() = default;
    explicit Poly(FieldRef k) : k(k) {}
    Poly(FieldRef k, std::vector<uint64_t> coeffs) : k(k), c(std::move(coeffs)) { trim(); }

    static Poly zero(FieldRef k) { return Poly(k); }
    static Poly one(FieldRef k) { return Poly(k, {1}); }
    static Poly x(FieldRef k) { return Poly(k, {0, 1}); }
    static Poly constant(FqElem a) { return Poly(a.k, {a.v}); }
    static Poly monomial(FqElem a, int deg);

    int deg() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    FqElem coeff(int i) const { return {k, (i >= 0 && i < (int)c.size()) ? c[i] : 0}; }
    FqElem lead() const { return coeff(deg()); }
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }

    Poly operator+(const Poly& b) const;
    Poly operator*(const Poly& b) const;
    Poly operator*(FqElem s) const;
    Poly shifted(int n) const;                       // * x^n
    std::pair<Poly, Poly> divrem(const Poly& b) const;
    Poly operator/(const Poly& b) const;             // exact division, throws on remainder
    Poly operator%(const Poly& b) const { return divrem(b).second; }
    bool operator==(const Poly& b) const { return k == b.k && c == b.c; }
    bool operator!=(const Poly& b) const { return !(*this == b); }

    Poly monic() const;
    Poly derivative() const;
    std::optional<Poly> sqrt() const;                // exists iff derivative()==0
    FqElem eval(FqElem a) const;
    Poly compose(const Poly& g) const;               // this(g(x))
    Poly embed(FieldRef target) const;
    Poly frobenius() const;                          // coefficient-wise square

    std::string str(const std::string& var = "x") const;
    static Poly parse(FieldRef k, const std::string& s, const std::string& var = "x");
};

Poly gcd(Poly a, Poly b);                            // monic
/// g = gcd, and u*a + v*b = g
void egcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v);

/// Normalized rational function: den monic, gcd(num,den)=1, zero is 0/1.
struct RatFun {
    Poly num, den;

    RatFun() = default;
    explicit RatFun(Poly n) : num(std::move(n)), den(Poly::one(num.k)) {}
    RatFun(Poly n, Poly d);

    static RatFun zero(FieldRef k) { return RatFun(Poly::zero(k)); }
    static RatFun one(FieldRef k) { return RatFun(Poly::one(k)); }
    static RatFun x(FieldRef k) { return RatFun(Poly::x(k)); }
    static RatFun constant(FqElem a) { return RatFun(Poly::constant(a)); }

    FieldRef field() const { return num.k; }
    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.deg() <= 0 && den.deg() == 0; }

    RatFun operator+(const RatFun& b) const;
    RatFun operator*(const RatFun& b) const;
    RatFun operator*(FqElem s) const;
    RatFun inv() const;
    RatFun operator/(const RatFun& b) const { return *this * b.inv(); }
    bool operator==(const RatFun& b) const { return num == b.num && den == b.den; }
    bool operator!=(const RatFun& b) const { return !(*this == b); }

    RatFun derivative() const;
    std::optional<RatFun> sqrt() const;
    std::optional<FqElem> eval(FqElem a) const;      // empty at a pole
    RatFun compose(const RatFun& g) const;           // this(g(x))
    RatFun embed(FieldRef target) const;

    /// Order of vanishing at the monic irreducible pi (negative at poles).
    int v_pi(const Poly& pi) const;
    /// Order at x = infinity: deg den - deg num.
    int v_inf() const;

    std::string str(const std::string& var = "x") const;
};

/// Product of the distinct monic irreducible factors of f.
Poly radical(const Poly& f);

/// All roots of f lying in K (f's coefficients must embed into K).
std::vector<FqElem> roots_in(const Poly& f, FieldRef K);

/// Distinct monic irreducible factors with multiplicities.
std::vector<std::pair<Poly, int>> factorize(const Poly& f);

/// Arithmetic in the residue field K[x]/(pi), pi monic irreducible.
struct Residue {
    Poly pi;
    int ext_bits() const { return pi.k->m * pi.deg(); }   // [R : GF(2)]

    Poly reduce(const Poly& a) const { return a % pi; }
    Poly mul(const Poly& a, const Poly& b) const { return (a * b) % pi; }
    Poly inv(const Poly& a) const;
    Poly frob(const Poly& a) const { return mul(a, a); }
    Poly sqrt(const Poly& a) const;                  // frob applied ext_bits()-1 times
    int trace01(const Poly& a) const;                // absolute trace to GF(2)
};

} // namespace biell

#endif
