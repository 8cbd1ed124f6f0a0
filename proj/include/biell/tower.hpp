#ifndef BIELL_TOWER_HPP
#define BIELL_TOWER_HPP

#include "biell/places.hpp"

#include <optional>
#include <vector>

namespace biell {

/// Solve 2g-2 = |S|(2g_base-2) + sum d_P for g. Entries of d_list are
/// (number of geometric places, common different exponent).
int genus_hurwitz(int base_genus, int group_order, const std::vector<std::pair<int, int>>& d_list);

/// Deuring-Shafarevich: gamma-1 = |S|(gamma_base-1) + sum (|S| - l_i).
int prank_ds(int base_prank, int group_order, const std::vector<int>& short_orbit_sizes);

/// ---------------------------------------------------------------------
/// Artin-Schreier layer z^2 + z = e over the rational field K(x).
/// Places are monic irreducible polynomials pi, plus x = infinity.
/// ---------------------------------------------------------------------

struct RamPlaceRational {
    bool infinite = false;
    Poly pi;                 // meaningful when !infinite
    int place_degree = 1;    // number of geometric places over K-bar
    int reduced_order = 0;   // m_P (odd when ramified, 0 when not)
    int different = 0;       // m_P + 1
    RatFun witness;          // e + witness^2 + witness has the reduced order
};

class ASExtRational {
public:
    RatFun e;

    explicit ASExtRational(RatFun e);

    /// Replace e by e + w^2 + w until the pole order at pi is odd (returns
    /// m_P > 0) or the function is regular there (returns 0).
    static std::pair<int, RatFun> reduce_at(const RatFun& e, const Poly& pi);
    static std::pair<int, RatFun> reduce_at_infinity(const RatFun& e);

    /// Reduction at every pole of e (finite support plus infinity).
    const std::vector<RamPlaceRational>& ramification() const { return ram_; }
    /// Geometric irreducibility: some place has odd reduced order. Over the
    /// rational base this is equivalent to e not being zeta^2 + zeta.
    bool irreducible() const;
    int genus() const;
    int prank() const;

private:
    std::vector<RamPlaceRational> ram_;
};

/// e is wp(w) + constant for some rational w (geometric test: every pole of e
/// reduces away). Returns w when so.
std::optional<RatFun> wp_preimage_mod_constants(const RatFun& e);

/// ---------------------------------------------------------------------
/// Artin-Schreier layer z^2 + z = e over the elliptic field K(E).
/// ---------------------------------------------------------------------

struct RamPlaceElliptic {
    Place place;
    int reduced_order = 0;
    int different = 0;
    FFElem witness;
};

class ASExtElliptic {
public:
    const WittCtx* W;
    FFElem e;

    ASExtElliptic(const WittCtx& W, FFElem e);

    /// Per-place reduction; the witness basis is (x+x0)^-j at affine places
    /// with x0 != 0, (y+y0)^-j at the 2-torsion point, and x^a y^b at Y_inf.
    std::pair<int, FFElem> reduce_at(const Place& P) const;

    /// Ramification over the given candidate set (must cover all poles of e);
    /// every different exponent is checked to be even.
    std::vector<RamPlaceElliptic> ramification(const std::vector<Place>& candidates) const;
    /// Candidates = poles of e closed under the g-orbit (translation by [2]P0).
    std::vector<Place> default_candidates() const;

    int genus(const std::vector<RamPlaceElliptic>& ram) const;
    int prank(const std::vector<RamPlaceElliptic>& ram) const;
};

/// ---------------------------------------------------------------------
/// Two-layer Artin-Schreier tower over K(t):
///   z1^2 + z1 = e1,      z2^2 + z2 = e2 = A + B z1.
/// Enough structure for the quotient-chain and plane-family censuses:
/// genus/2-rank per layer, geometric irreducibility, and degree-1 place
/// counting over the coefficient field.
/// ---------------------------------------------------------------------

/// Expansions at the unique place over t = t0 of an Artin-Schreier layer with
/// reduced pole order 1 there: the uniformizer is 1/z1', and t(tau), z1(tau)
/// are returned to absolute precision prec.
struct RamifiedFiberSeries {
    Series t, z1;
};
RamifiedFiberSeries ramified_fiber_series(const RatFun& e1_reduced, const RatFun& witness,
                                          FqElem t0, int prec);

class RationalTower2 {
public:
    RatFun e1;
    RatFun A, B;                     // e2 = A + B z1

    RationalTower2(RatFun e1, RatFun A, RatFun B);

    const ASExtRational& layer1() const { return l1_; }
    int genus1() const { return l1_.genus(); }
    int prank1() const { return l1_.prank(); }

    bool layer2_irreducible() const;
    /// Layer-2 ramification as (geometric place count, different exponent).
    std::vector<std::pair<int, int>> layer2_different() const;
    int genus2() const;
    int prank2() const;

    /// Number of degree-1 places of the top function field over F_{2^M},
    /// M = field()->m (the coefficient field itself).
    int count_rational_places() const;

    FieldRef field() const { return e1.field(); }

private:
    ASExtRational l1_;

    struct InfData;                  // substitution t -> 1/u view
};

} // namespace biell

#endif
