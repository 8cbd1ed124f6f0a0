#ifndef BIELL_AUTCHECK_HPP
#define BIELL_AUTCHECK_HPP

#include "biell/tower.hpp"

#include <memory>
#include <string>
#include <vector>

namespace biell {

/// Automorphism of the tower z^2 + z = e over K(E), stored intrinsically by
/// its pullback data: the coordinate images of x and y under the base map,
/// and the shift z -> z + t. The map is an automorphism iff
/// base*(e) + e = t^2 + t.
struct TowerAut {
    FFElem xmap, ymap, zshift;

    bool operator==(const TowerAut& b) const {
        return xmap == b.xmap && ymap == b.ymap && zshift == b.zshift;
    }
    bool operator!=(const TowerAut& b) const { return !(*this == b); }
    bool is_identity() const;
};

TowerAut identity_aut(const CurveE& E);

/// Pullback of f under the base map with coordinate images (xim, yim).
FFElem apply_base(const FFElem& f, const FFElem& xim, const FFElem& yim);

/// a o b as point maps: z-shift composes as t_b + b*(t_a).
TowerAut aut_compose(const TowerAut& a, const TowerAut& b, const WittCtx& W);

/// Certificate check: returns the residual base*(e) + e + t^2 + t (zero iff
/// the map is an automorphism of z^2 + z = e).
FFElem aut_residual(const TowerAut& a, const FFElem& e, const WittCtx& W);
bool is_automorphism(const TowerAut& a, const FFElem& e, const WittCtx& W);

struct GroupDescriptor {
    int order = 0;
    std::string type;                   // dihedral / semidihedral / elementary-abelian / cyclic / abelian / other
    int involutions = 0;
    int center_size = 0;
    std::vector<int> element_orders;    // sorted
};

/// Closure of the generated set under composition (bounded by max_order),
/// with the defining-relation classification.
std::vector<TowerAut> group_closure(const std::vector<TowerAut>& gens, const WittCtx& W,
                                    int max_order);
GroupDescriptor group_structure(const std::vector<TowerAut>& gens, const WittCtx& W,
                                int max_order);

/// Smallest odd k with v(e_k) = -2 at [-k]P0 (guaranteed to exist).
int find_good_k(const WittCtx& W, bool alternative_d = false);

struct MainFamilyOptions {
    int n = 8;                          // a power of 2, >= 8
    std::string field = "gf2^4:0x13";
    int k = 0;                          // 0 = auto
    bool alternative_d = false;
    uint64_t seed = 1;
    int max_ext = 12;
};

struct RamEntry {
    std::string place;
    int reduced_order = 0;
    int different = 0;
};

struct MainFamilyReport {
    int n = 0, k = 0;
    bool alternative_d = false;
    std::string base_field, work_field;
    std::string mu;                     // the curve coefficient used
    int ext_degree = 1;
    int genus = 0, prank = 0;
    int group_order = 0;
    std::string group_type;
    int iota_fixed = 0;
    bool nakajima_attained = false;
    std::vector<std::string> relations_verified;
    std::vector<RamEntry> ramification;
};

struct MainFamilyResult {
    MainFamilyReport report;
    std::shared_ptr<WittCtx> W;
    WittCtx::Witt witt;
};

/// Full pipeline: torsion search, good-k selection, e_k construction, the
/// identity suite, ramification, genus/2-rank, and the dihedral group of
/// order 4n. Any failed identity or count throws with a description.
MainFamilyResult construct_main_family(const MainFamilyOptions& opt);

} // namespace biell

#endif
