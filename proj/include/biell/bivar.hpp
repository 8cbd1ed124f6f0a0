#ifndef BIELL_BIVAR_HPP
#define BIELL_BIVAR_HPP

#include "biell/polyrat.hpp"

#include <array>
#include <string>
#include <vector>

namespace biell {

/// Dense bivariate polynomial over GF(2^m); coeff(i,j) multiplies X^i Y^j.
/// Canonical: no all-zero top rows or columns.
struct BivarPoly {
    FieldRef k = nullptr;
    int nx = 0;                       // row stride
    std::vector<uint64_t> c;          // c[i + nx*j]

    BivarPoly() = default;
    explicit BivarPoly(FieldRef k) : k(k) {}

    static BivarPoly zero(FieldRef k) { return BivarPoly(k); }
    static BivarPoly constant(FqElem a);
    static BivarPoly from_y_coeffs(FieldRef k, const std::vector<Poly>& ycoeffs);

    int ny() const { return nx ? (int)(c.size() / nx) : 0; }
    uint64_t coeff(int i, int j) const;
    void set(int i, int j, uint64_t v);
    void trim();
    bool is_zero() const { return c.empty(); }
    int deg_x() const;
    int deg_y() const;
    int total_deg() const;

    BivarPoly operator+(const BivarPoly& b) const;
    BivarPoly operator*(const BivarPoly& b) const;
    BivarPoly operator*(FqElem s) const;
    bool operator==(const BivarPoly& b) const { return k == b.k && nx == b.nx && c == b.c; }
    bool operator!=(const BivarPoly& b) const { return !(*this == b); }

    FqElem eval(FqElem x, FqElem y) const;
    Poly eval_x(FqElem x) const;      // univariate in y
    Poly eval_y(FqElem y) const;      // univariate in x
    Poly y_coeff(int j) const;
    std::vector<Poly> y_coeffs() const;
    /// F(X + a, Y + b)
    BivarPoly shifted(FqElem a, FqElem b) const;
    BivarPoly embed(FieldRef target) const;

    std::string str(const std::string& vx = "X", const std::string& vy = "Y") const;
    static BivarPoly parse(FieldRef k, const std::string& s, const std::string& vx = "X",
                           const std::string& vy = "Y");
};

/// gcd of the Y-coefficients, a polynomial in X
Poly content_x(const BivarPoly& f);
BivarPoly divide_content_x(const BivarPoly& f, const Poly& cont);
/// does f divide g in K[X,Y]? (f with positive Y-degree, via K(X)[Y] division)
bool bivar_divides(const BivarPoly& f, const BivarPoly& g);

/// Resultant with respect to Y of two polynomials given by their Y-coefficient
/// lists (entries in K[X,Z] as BivarPoly), via the Sylvester determinant.
BivarPoly resultant_y(const std::vector<BivarPoly>& a, const std::vector<BivarPoly>& b);

/// ---------------------------------------------------------------------
/// projective machinery: an affine F with a declared homogeneous degree D
/// ---------------------------------------------------------------------

/// chart X=1 of the degree-D homogenization: G(Y,Z) with G = F^hom(1,Y,Z)
BivarPoly chart_x(const BivarPoly& f, int D);
/// chart Y=1: G(X,Z)
BivarPoly chart_y(const BivarPoly& f, int D);
/// F^hom(P,Q,R) dehomogenized, for components of common degree d
BivarPoly subst_projective(const BivarPoly& f, int D, const std::array<BivarPoly, 3>& comp, int d);

struct SingPoint {
    bool at_infinity = false;
    FieldRef field = nullptr;
    FqElem x, y;                      // affine coords, or the (X:Y:0) direction
    int mult = 0;
    bool ordinary = false;
};

struct SingularityReport {
    int degree = 0;
    std::vector<SingPoint> points;
    bool scan_complete = true;
    std::string note;
};

/// All singular points of the projective closure, over the base field and the
/// extensions the root scan reaches (incomplete scans are flagged, never
/// silent). Multiplicity by shifted lowest degree, ordinariness by squarefree
/// tangent cone.
SingularityReport plane_singularity_analysis(const BivarPoly& f, int max_field_bits = 40);

/// (d-1)(d-2)/2 - sum m_i(m_i-1)/2; refuses non-ordinary singularities.
int plane_genus(const SingularityReport& rep);

/// F o map = lambda F for linear maps; for polynomial maps, F | F o map.
bool check_plane_automorphism(const BivarPoly& f, int D, const std::array<BivarPoly, 3>& comp,
                              int d);

} // namespace biell

#endif
