#ifndef BIELL_PLACES_HPP
#define BIELL_PLACES_HPP

#include "biell/funcfield.hpp"

#include <map>
#include <string>
#include <vector>

namespace biell {

/// Truncated Laurent series in a local parameter t over GF(2^m).
/// Coefficients cover exponents [lead, lead + c.size()), all below the
/// absolute precision `prec`; empty c means "zero modulo t^prec".
struct Series {
    FieldRef k = nullptr;
    int lead = 0;
    int prec = 0;
    std::vector<uint64_t> c;

    static Series zero(FieldRef k, int prec) { return {k, prec, prec, {}}; }
    static Series constant(FieldRef k, uint64_t v, int prec);
    static Series param(FieldRef k, int prec);          // the parameter t

    bool approx_zero() const { return c.empty(); }
    int val() const;                                    // throws when approx_zero
    uint64_t coeff(int e) const;
    void normalize();

    Series operator+(const Series& b) const;
    Series operator*(const Series& b) const;
    Series scaled(FqElem s) const;
    Series shifted(int n) const;                        // * t^n
    Series inverse() const;
    Series truncated(int p) const;
    bool congruent(const Series& b) const;              // equal up to min prec
    std::string str() const;
};

Series eval_on_series(const Poly& p, const Series& s, int prec);

/// A point of E (or Y_inf) viewed as a place of the function field; the
/// coordinates may live in a declared extension of the curve's base field.
struct Place {
    bool inf = true;
    CurveE E;                                           // curve over pt's field
    ECPoint pt;

    Place() = default;
    static Place infinity(const CurveE& E);
    Place(const CurveE& E, const ECPoint& p);

    FieldRef field() const { return E.k; }
    bool operator==(const Place& b) const;
    bool operator<(const Place& b) const;
    std::string str() const { return inf ? "Yinf" : pt.str(); }
};

/// Laurent expansions of x and y at a place, to absolute precision prec.
/// At Y_inf the parameter has v(x) = -2, v(y) = -3; at the 2-torsion point
/// (0, sqrt(mu)) v(x) = 2; at every other affine point v(x - x0) = 1.
struct LocalExpansion {
    Place place;
    Series x, y;
};

LocalExpansion local_expand(const Place& P, int prec);

/// Exact order of vanishing of f at P, by substituting local expansions at
/// adaptive precision. f must be nonzero.
int valuation(const FFElem& f, const Place& P);
/// Valuation together with the leading series coefficient in the canonical
/// parameter of local_expand at P.
std::pair<int, FqElem> valuation_with_lead(const FFElem& f, const Place& P);

struct Divisor {
    std::vector<std::pair<Place, int>> entries;         // sorted, multiplicities nonzero

    int degree() const;
    int mult(const Place& P) const;
    void add(const Place& P, int m);
    bool operator==(const Divisor& b) const { return entries == b.entries; }
    Divisor operator+(const Divisor& b) const;
    Divisor operator-() const;
    /// "(place, mult)" lines; places matching the torsion table print as [i]P0.
    std::string str(const WittCtx* naming = nullptr) const;
};

/// The full principal divisor of f != 0. Candidate places are derived from the
/// cancellation-free norm of the numerator pair plus the denominator support
/// plus Y_inf; the result is verified to have degree 0.
Divisor principal_divisor(const FFElem& f, int max_field_bits = 40);

/// Degree of the principal divisor (always 0 for correct arithmetic), computed
/// without enumerating points: places over an irreducible pi beyond the
/// coordinate-field bound contribute (v_pi(norm) - 2 v_pi(den)) deg(pi)
/// in aggregate, the rest through explicit valuations.
int principal_divisor_degree(const FFElem& f, int max_field_bits = 40);

} // namespace biell

#endif
