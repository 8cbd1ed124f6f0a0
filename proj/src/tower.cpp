#include "biell/tower.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace biell {

int genus_hurwitz(int base_genus, int group_order, const std::vector<std::pair<int, int>>& d_list) {
    long rhs = (long)group_order * (2 * base_genus - 2);
    for (auto& [count, d] : d_list) {
        if (count < 0 || d < 0) throw std::invalid_argument("negative ramification datum");
        rhs += (long)count * d;
    }
    if (rhs % 2 != 0) throw std::domain_error("Hurwitz: 2g-2 came out odd");
    long g = rhs / 2 + 1;
    if (g < 0) throw std::domain_error("Hurwitz: negative genus");
    return (int)g;
}

int prank_ds(int base_prank, int group_order, const std::vector<int>& short_orbit_sizes) {
    long rhs = (long)group_order * (base_prank - 1);
    for (int l : short_orbit_sizes) {
        if (l < 1 || l >= group_order || group_order % l)
            throw std::invalid_argument("short orbit size must properly divide the group order");
        rhs += group_order - l;
    }
    long gamma = rhs + 1;
    if (gamma < 0) throw std::domain_error("Deuring-Shafarevich: negative 2-rank");
    return (int)gamma;
}

// ---------------------------------------------------------------------------
// rational base
// ---------------------------------------------------------------------------

std::pair<int, RatFun> ASExtRational::reduce_at(const RatFun& e0, const Poly& pi) {
    RatFun e = e0;
    RatFun w = RatFun::zero(e.field());
    Residue R{pi};
    int guard = 0;
    while (true) {
        if (e.is_zero()) return {0, w};
        int v = e.v_pi(pi);
        if (v >= 0) return {0, w};
        if (v % 2) return {-v, w};
        if (++guard > 200) throw std::logic_error("as_reduce_at: pole order failed to decrease");
        int j = -v / 2;
        // leading residue of e * pi^(2j), a unit mod pi
        Poly pij = Poly::one(pi.k);
        for (int i = 0; i < 2 * j; ++i) pij = pij * pi;
        RatFun U = e * RatFun(pij);
        Poly r = R.mul(U.num % pi, R.inv(U.den % pi));
        Poly s = R.sqrt(r);
        Poly denw = Poly::one(pi.k);
        for (int i = 0; i < j; ++i) denw = denw * pi;
        RatFun wi(s, denw);
        e = e + wi * wi + wi;
        w = w + wi;
        if (!e.is_zero() && e.v_pi(pi) <= v)
            throw std::logic_error("as_reduce_at: pole order failed to decrease");
    }
}

std::pair<int, RatFun> ASExtRational::reduce_at_infinity(const RatFun& e0) {
    RatFun e = e0;
    FieldRef k = e.field();
    RatFun w = RatFun::zero(k);
    int guard = 0;
    while (true) {
        if (e.is_zero()) return {0, w};
        int v = e.v_inf();
        if (v >= 1) return {0, w};
        if (v == 0) {
            // constant term is absorbable over the closed field; not a pole
            return {0, w};
        }
        if (v % 2) return {-v, w};
        if (++guard > 200) throw std::logic_error("as_reduce_at: pole order failed to decrease");
        int j = -v / 2;
        FqElem lam = e.num.lead() / e.den.lead();
        RatFun wi(Poly::monomial(lam.sqrt(), j));
        e = e + wi * wi + wi;
        w = w + wi;
        if (!e.is_zero() && e.v_inf() <= v)
            throw std::logic_error("as_reduce_at: pole order failed to decrease");
    }
}

ASExtRational::ASExtRational(RatFun e0) : e(std::move(e0)) {
    if (e.is_zero()) throw std::invalid_argument("artin-schreier layer with e = 0 is split");
    for (auto& [pi, mult] : factorize(e.den)) {
        (void)mult;
        auto [m, w] = reduce_at(e, pi);
        if (m > 0) ram_.push_back({false, pi, pi.deg(), m, m + 1, w});
    }
    auto [minf, winf] = reduce_at_infinity(e);
    if (minf > 0) ram_.push_back({true, Poly(), 1, minf, minf + 1, winf});
    for (auto& r : ram_)
        if (r.different % 2) throw std::logic_error("odd different exponent in an order-2 layer");
}

bool ASExtRational::irreducible() const { return !ram_.empty(); }

int ASExtRational::genus() const {
    if (!irreducible())
        throw std::domain_error("e is zeta^2+zeta: the layer is split, no curve to measure");
    std::vector<std::pair<int, int>> dl;
    for (auto& r : ram_) dl.push_back({r.place_degree, r.different});
    return genus_hurwitz(0, 2, dl);
}

int ASExtRational::prank() const {
    if (!irreducible())
        throw std::domain_error("e is zeta^2+zeta: the layer is split, no curve to measure");
    int places = 0;
    for (auto& r : ram_) places += r.place_degree;
    std::vector<int> orbits(places, 1);
    return prank_ds(0, 2, orbits);
}

std::optional<RatFun> wp_preimage_mod_constants(const RatFun& e0) {
    if (e0.is_zero()) return RatFun::zero(e0.field());
    RatFun e = e0;
    RatFun w = RatFun::zero(e.field());
    for (auto& [pi, mult] : factorize(e.den)) {
        (void)mult;
        auto [m, wi] = ASExtRational::reduce_at(e, pi);
        if (m > 0) return std::nullopt;
        e = e + wi * wi + wi;
        w = w + wi;
    }
    auto [minf, winf] = ASExtRational::reduce_at_infinity(e);
    if (minf > 0) return std::nullopt;
    e = e + winf * winf + winf;
    w = w + winf;
    if (!e.is_zero() && !e.is_constant())
        throw std::logic_error("wp reduction left a non-constant remainder");
    return w;
}

// ---------------------------------------------------------------------------
// elliptic base
// ---------------------------------------------------------------------------

ASExtElliptic::ASExtElliptic(const WittCtx& W, FFElem e0) : W(&W), e(std::move(e0)) {
    if (e.is_zero()) throw std::invalid_argument("artin-schreier layer with e = 0 is split");
}

namespace {

// function with valuation -j at P and leading coefficient 1 in the canonical
// local parameter
FFElem pole_basis(const CurveE& E, const Place& P, int j) {
    FieldRef k = E.k;
    if (P.inf) {
        // v(x) = -2, v(y) = -3, both with leading coefficient 1
        if (j % 2 == 0) {
            return FFElem::from(E, RatFun(Poly::monomial(FqElem::one(k), j / 2)));
        }
        if (j == 1) {
            // y/x
            return FFElem(E, RatFun::zero(k), RatFun(Poly::one(k), Poly::x(k)));
        }
        return FFElem(E, RatFun::zero(k), RatFun(Poly::monomial(FqElem::one(k), (j - 3) / 2)));
    }
    if (P.pt.x.is_zero()) {
        // 2-torsion point: y + y0 is the parameter
        FFElem t(E, RatFun::constant(P.pt.y), RatFun::one(k));
        FFElem acc = FFElem::one(E), ti = t.inv();
        for (int i = 0; i < j; ++i) acc = acc * ti;
        return acc;
    }
    Poly lin(k, {P.pt.x.v, 1});
    Poly denw = Poly::one(k);
    for (int i = 0; i < j; ++i) denw = denw * lin;
    return FFElem::from(E, RatFun(Poly::one(k), denw));
}

} // namespace

std::pair<int, FFElem> ASExtElliptic::reduce_at(const Place& P) const {
    FFElem cur = (e.E.k == P.E.k) ? e : FFElem(P.E, e.A.embed(P.E.k), e.B.embed(P.E.k));
    FFElem w = FFElem::zero(P.E);
    int guard = 0;
    while (true) {
        if (cur.is_zero()) return {0, w};
        auto [v, lead] = valuation_with_lead(cur, P);
        if (v >= 0) return {0, w};
        if (v % 2) return {-v, w};
        if (++guard > 64) throw std::logic_error("as_reduce_at: pole order failed to decrease");
        FFElem wi = pole_basis(P.E, P, -v / 2) * lead.sqrt();
        cur = cur + wi * wi + wi;
        w = w + wi;
        if (!cur.is_zero() && valuation(cur, P) <= v)
            throw std::logic_error("as_reduce_at: pole order failed to decrease");
    }
}

std::vector<Place> ASExtElliptic::default_candidates() const {
    // poles of e lie over roots of the common denominator, plus Y_inf
    FieldRef k = e.E.k;
    Poly D = e.A.den * e.B.den;
    std::set<Place> out;
    out.insert(Place::infinity(e.E));
    for (auto& [pi, mult] : factorize(D)) {
        (void)mult;
        int bits = k->m * pi.deg();
        if (bits > 40)
            throw std::domain_error("ramification candidate field gf2^" + std::to_string(bits) +
                                    " beyond the scan bound");
        FieldRef K = pi.deg() == 1 ? k : FieldCtx::get(bits);
        CurveE EK = pi.deg() == 1 ? e.E : e.E.embed(K);
        for (FqElem x0 : roots_in(pi, K)) {
            std::vector<ECPoint> pts;
            if (x0.is_zero()) {
                pts.push_back(EK.two_torsion());
            } else {
                FqElem u = (x0.sqr() * x0 + EK.nu * x0.sqr() + EK.mu) / x0.sqr();
                uint64_t z;
                if (K->solve_artin_schreier(u.v, z)) {
                    pts.push_back({x0, x0 * FqElem{K, z}});
                    pts.push_back({x0, x0 * FqElem{K, z} + x0});
                } else {
                    FieldRef K2 = FieldCtx::get(2 * bits);
                    CurveE EK2 = e.E.embed(K2);
                    FqElem x0b = x0.embed(K2), ub = u.embed(K2);
                    uint64_t z2;
                    K2->solve_artin_schreier(ub.v, z2);
                    Place P1(EK2, {x0b, x0b * FqElem{K2, z2}});
                    Place P2(EK2, {x0b, x0b * FqElem{K2, z2} + x0b});
                    out.insert(P1);
                    out.insert(P2);
                    continue;
                }
            }
            for (auto& p : pts) out.insert(Place(EK, p));
        }
    }
    // g-orbit closure: translates by multiples of [2]P0
    std::set<Place> closed = out;
    for (const Place& p : out) {
        if (p.inf) continue;
        for (int v = 1; v < W->n; ++v) {
            ECPoint t = W->multiple(2 * v);
            if (p.E.k != W->E.k) t = ECPoint{t.x.embed(p.E.k), t.y.embed(p.E.k)};
            ECPoint q = p.E.add(p.pt, t);
            if (!q.inf) closed.insert(Place(p.E, q));
        }
    }
    return {closed.begin(), closed.end()};
}

std::vector<RamPlaceElliptic> ASExtElliptic::ramification(const std::vector<Place>& candidates) const {
    std::vector<RamPlaceElliptic> ram;
    for (const Place& P : candidates) {
        auto [m, w] = reduce_at(P);
        if (m > 0) {
            if ((m + 1) % 2) throw std::logic_error("odd different exponent in an order-2 layer");
            ram.push_back({P, m, m + 1, w});
        }
    }
    return ram;
}

int ASExtElliptic::genus(const std::vector<RamPlaceElliptic>& ram) const {
    std::vector<std::pair<int, int>> dl;
    for (auto& r : ram) dl.push_back({1, r.different});
    return genus_hurwitz(1, 2, dl);
}

int ASExtElliptic::prank(const std::vector<RamPlaceElliptic>& ram) const {
    std::vector<int> orbits(ram.size(), 1);
    return prank_ds(1, 2, orbits);
}

// ---------------------------------------------------------------------------
// two-layer tower over K(t)
// ---------------------------------------------------------------------------

namespace {

RatFun subst_inverse(const RatFun& f) {
    // f(1/u) as a rational function of u
    return f.compose(RatFun(Poly::one(f.field()), Poly::x(f.field())));
}

// z-series solving z^2 + z = E with residue branch value z0
Series hensel_branch(const Series& E, FqElem z0, int prec) {
    Series cur = Series::constant(z0.k, z0.v, prec);
    for (int it = 0; it < prec + 4; ++it) {
        Series next = (cur * cur + E).truncated(prec);
        if (next.congruent(cur)) return next;
        cur = next;
    }
    throw std::logic_error("hensel branch failed to converge");
}

// reduce a series modulo wp-images of c/tau^j witnesses; returns the reduced
// order m (0 when regular) and leaves the terminal series in s
int reduce_series(Series& s) {
    FieldRef k = s.k;
    int guard = 0;
    while (true) {
        if (s.approx_zero()) return 0;
        int v = s.val();
        if (v >= 0) return 0;
        if (v % 2) return -v;
        if (++guard > 128) throw std::logic_error("series reduction failed to decrease");
        FqElem c = FqElem{k, s.c[0]}.sqrt();
        // (c/tau^j)^2 + c/tau^j
        Series w = Series::constant(k, c.v, s.prec - v).shifted(v / 2);
        s = s + w * w + w;
    }
}

int reduce_series_order(Series s) { return reduce_series(s); }

Series eval_ratfun_series(const RatFun& f, const Series& tser, int prec) {
    if (f.is_zero()) return Series::zero(tser.k, prec);
    Series num = eval_on_series(f.num, tser, prec);
    Series den = eval_on_series(f.den, tser, prec);
    return num * den.inverse();
}

} // namespace

// The unique place over t = t0 when the layer is ramified there with reduced
// order 1: the uniformizer is tau = 1/z1', and t - t0 solves
// 1/e1red(t) = tau^2/(1+tau).
RamifiedFiberSeries ramified_fiber_series(const RatFun& e1red, const RatFun& w1, FqElem t0,
                                          int prec) {
    FieldRef k = t0.k;
    // H(delta) = 1/e1red(t0 + delta), a series of valuation 1 in delta
    Series delta0 = Series::param(k, prec + 4);
    Series tshift = Series::constant(k, t0.v, prec + 4) + delta0;
    Series H = eval_ratfun_series(RatFun(e1red.den, e1red.num), tshift, prec + 4);
    if (H.approx_zero() || H.val() != 1)
        throw std::logic_error("ramified place does not have a simple reduced pole");
    // target V(tau) = tau^2/(1+tau)
    Series tau = Series::param(k, prec + 4);
    Series one = Series::constant(k, 1, prec + 4);
    Series V = tau * tau * (one + tau).inverse();
    FqElem c1inv = FqElem{k, H.c[0]}.inv();
    Series delta = V.scaled(c1inv);
    for (int it = 0; it < prec + 4; ++it) {
        // delta <- (V + H(delta) + c1 delta)/c1
        Series Hd = Series::zero(k, prec + 4);
        for (int i = std::min((int)H.c.size() - 1 + H.lead, prec + 3); i >= H.lead; --i) {
            Hd = Hd * delta;
            if (i >= 1) Hd = Hd + Series::constant(k, H.coeff(i), prec + 4);
            // exponents below 1 do not occur: H has valuation 1
        }
        Hd = Hd * delta;                         // accounts for the factor delta^1
        Series next = (V + Hd + delta.scaled(FqElem{k, H.c[0]})).scaled(c1inv);
        if (next.congruent(delta)) {
            delta = next;
            break;
        }
        delta = next;
    }
    Series tser = Series::constant(k, t0.v, prec + 4) + delta;
    Series z1p = tau.inverse();                  // 1/tau, exact
    Series z1 = z1p + eval_ratfun_series(w1.is_zero() ? RatFun::zero(k) : w1, tser, prec + 4);
    return {tser.truncated(prec), z1.truncated(prec)};
}


RationalTower2::RationalTower2(RatFun e1_, RatFun A_, RatFun B_)
    : e1(std::move(e1_)), A(std::move(A_)), B(std::move(B_)), l1_(e1) {
    if (!l1_.irreducible()) throw std::invalid_argument("layer 1 is split");
}

bool RationalTower2::layer2_irreducible() const {
    // e2 = wp(a + b z1) needs b^2 + b = B and a^2 + a = A + b^2 e1
    auto wb = wp_preimage_mod_constants(B);
    if (!wb) return true;
    // remaining constant c: b = wb + beta with beta^2+beta = c, beta possibly
    // in the quadratic extension; work there
    RatFun rem = B + *wb * *wb + *wb;
    FqElem c = FqElem{field(), rem.is_zero() ? 0 : rem.num.c[0]};
    FieldRef K2 = FieldCtx::get(2 * field()->m);
    uint64_t beta;
    if (!K2->solve_artin_schreier(c.embed(K2).v, beta))
        throw std::logic_error("constant not split in the quadratic extension");
    RatFun A2 = A.embed(K2), e12 = e1.embed(K2), wb2 = wb->embed(K2);
    for (int pick = 0; pick < 2; ++pick) {
        RatFun b = wb2 + RatFun::constant(FqElem{K2, beta ^ (uint64_t)pick});
        if (wp_preimage_mod_constants(A2 + b * b * e12)) return false;
    }
    return true;
}

struct RationalTower2::InfData {
    RatFun e1, A, B;
};

std::vector<std::pair<int, int>> RationalTower2::layer2_different() const {
    std::vector<std::pair<int, int>> out;
    FieldRef k = field();

    // finite support: poles of A, B and the layer-1 ramified polynomials
    std::set<std::vector<uint64_t>> seen;
    std::vector<Poly> pis;
    auto add_pi = [&](const Poly& pi) {
        if (seen.insert(pi.c).second) pis.push_back(pi);
    };
    for (auto& [pi, m] : factorize(A.den)) { (void)m; add_pi(pi); }
    for (auto& [pi, m] : factorize(B.den)) { (void)m; add_pi(pi); }
    // poles of e1 matter even when layer 1 is unramified there: z1 carries the
    // reduction witness, which has poles on the support of e1
    for (auto& [pi, m] : factorize(e1.den)) { (void)m; add_pi(pi); }

    auto analyze_finite = [&](const RatFun& E1, const RatFun& AA, const RatFun& BB,
                              const Poly& pi, int degpi) {
        // layer-1 reduction at pi
        auto [m1, w1] = ASExtRational::reduce_at(E1, pi);
        if (m1 > 0) {
            if (m1 != 1)
                throw std::logic_error("layer-2 analysis over a reduced order > 1 is not supported");
            // unique place above each root; parametrize by tau = 1/z1'
            int Mbits = k->m * degpi;
            FieldRef K1 = degpi == 1 ? k : FieldCtx::get(Mbits);
            Poly piK = pi.embed(K1);
            auto roots = roots_in(piK, K1);
            if (roots.empty()) throw std::logic_error("irreducible factor has no root in its splitting field");
            int prec = 4 * (std::max({A.num.deg(), A.den.deg(), B.num.deg(), B.den.deg(),
                                      e1.num.deg(), e1.den.deg()}) + 6);
            RatFun e1red = (E1 + w1 * w1 + w1).embed(K1);
            auto rs = ramified_fiber_series(e1red, w1.embed(K1), roots.front(), prec);
            Series e2 = eval_ratfun_series(AA.embed(K1), rs.t, prec) +
                        eval_ratfun_series(BB.embed(K1), rs.t, prec) * rs.z1;
            int m2 = reduce_series_order(e2);
            if (m2 > 0) out.push_back({degpi, m2 + 1});
            return;
        }
        // layer-1 split at pi: two branches per geometric root
        int Mbits = k->m * degpi;
        FieldRef K1 = degpi == 1 ? k : FieldCtx::get(Mbits);
        Poly piK = pi.embed(K1);
        auto roots = roots_in(piK, K1);
        if (roots.empty()) throw std::logic_error("irreducible factor has no root in its splitting field");
        FqElem root = roots.front();
        RatFun e1r = E1 + w1 * w1 + w1;               // regular at pi
        // does the branch value live in K1 or its quadratic extension?
        FqElem v1 = [&] {
            RatFun f = e1r.embed(K1);
            auto val = f.eval(root);
            if (!val) throw std::logic_error("reduced e1 still has a pole at pi");
            return *val;
        }();
        bool branch_rational = (K1->trace(v1.v) == 0);
        FieldRef KB = branch_rational ? K1 : FieldCtx::get(2 * Mbits);
        FqElem rootB = branch_rational ? root : root.embed(KB);
        uint64_t z0;
        if (!KB->solve_artin_schreier(v1.embed(KB).v, z0))
            throw std::logic_error("branch value not split in the quadratic extension");
        int prec = 4 * (std::max({A.num.deg(), A.den.deg(), B.num.deg(), B.den.deg(),
                                  e1.num.deg(), e1.den.deg()}) + 4);
        Series tau = Series::param(KB, prec);
        Series tser = Series::constant(KB, rootB.v, prec) + tau;
        auto eval_ser = [&](const RatFun& f) {
            RatFun g = f.embed(KB);
            Series num = eval_on_series(g.num, tser, prec);
            Series den = eval_on_series(g.den, tser, prec);
            return num * den.inverse();
        };
        Series e1ser = eval_ser(e1r);
        Series w1ser = w1.is_zero() ? Series::zero(KB, prec) : eval_ser(w1);
        Series Aser = eval_ser(AA), Bser = eval_ser(BB);
        for (int br = 0; br < 2; ++br) {
            Series z1 = hensel_branch(e1ser, FqElem{KB, z0 ^ (uint64_t)br}, prec) + w1ser;
            Series e2 = Aser + Bser * z1;
            int m2 = reduce_series_order(e2);
            if (m2 > 0) out.push_back({branch_rational ? degpi : 2 * degpi, m2 + 1});
            if (!branch_rational) break;              // conjugate branch is identical
        }
    };

    for (auto& pi : pis) analyze_finite(e1, A, B, pi, pi.deg());

    // infinity: substitute t -> 1/u and analyze u = 0
    RatFun e1i = subst_inverse(e1), Ai = subst_inverse(A), Bi = subst_inverse(B);
    analyze_finite(e1i, Ai, Bi, Poly::x(k), 1);
    return out;
}

int RationalTower2::genus2() const {
    if (!layer2_irreducible()) throw std::domain_error("layer 2 is split");
    return genus_hurwitz(genus1(), 2, layer2_different());
}

int RationalTower2::prank2() const {
    if (!layer2_irreducible()) throw std::domain_error("layer 2 is split");
    int places = 0;
    for (auto& [cnt, d] : layer2_different()) {
        (void)d;
        places += cnt;
    }
    return prank_ds(prank1(), 2, std::vector<int>(places, 1));
}

int RationalTower2::count_rational_places() const {
    FieldRef k = field();
    uint64_t q = k->order_minus_one() + 1;
    int prec = 4 * (std::max({A.num.deg(), A.den.deg(), B.num.deg(), B.den.deg(),
                              e1.num.deg(), e1.den.deg()}) + 4);
    int count = 0;

    auto handle_fiber = [&](const RatFun& E1, const RatFun& AA, const RatFun& BB, FqElem t0) {
        Poly pi(k, {t0.v, 1});
        auto [m1, w1] = ASExtRational::reduce_at(E1, pi);
        if (m1 > 0) {
            if (m1 != 1)
                throw std::logic_error("layer-2 analysis over a reduced order > 1 is not supported");
            // one rational place P above t0; parametrize by tau = 1/z1'
            RatFun e1red = E1 + w1 * w1 + w1;
            auto rs = ramified_fiber_series(e1red, w1, t0, prec);
            Series e2 = eval_ratfun_series(AA, rs.t, prec) +
                        eval_ratfun_series(BB, rs.t, prec) * rs.z1;
            int m2 = reduce_series(e2);
            if (m2 > 0) {
                count += 1;                           // ramified above P
            } else {
                FqElem val{k, e2.approx_zero() ? 0 : e2.coeff(0)};
                count += (k->trace(val.v) == 0) ? 2 : 0;
            }
            return;
        }
        RatFun e1r = E1 + w1 * w1 + w1;
        auto v1o = e1r.is_zero() ? FqElem::zero(k) : e1r.eval(t0).value();
        if (k->trace(v1o.v)) return;                  // inert: a degree-2 place
        uint64_t z0;
        k->solve_artin_schreier(v1o.v, z0);
        Series tau = Series::param(k, prec);
        Series tser = Series::constant(k, t0.v, prec) + tau;
        auto eval_ser = [&](const RatFun& f) {
            if (f.is_zero()) return Series::zero(k, prec);
            Series num = eval_on_series(f.num, tser, prec);
            Series den = eval_on_series(f.den, tser, prec);
            return num * den.inverse();
        };
        Series e1ser = eval_ser(e1r);
        Series w1ser = eval_ser(w1);
        Series Aser = eval_ser(AA), Bser = eval_ser(BB);
        for (int br = 0; br < 2; ++br) {
            Series z1 = hensel_branch(e1ser, FqElem{k, z0 ^ (uint64_t)br}, prec) + w1ser;
            Series e2 = Aser + Bser * z1;
            int m2 = reduce_series(e2);
            if (m2 > 0) {
                count += 1;
            } else {
                FqElem val{k, e2.approx_zero() ? 0 : e2.coeff(0)};
                count += (k->trace(val.v) == 0) ? 2 : 0;
            }
        }
    };

    for (uint64_t tv = 0; tv < q; ++tv) handle_fiber(e1, A, B, FqElem{k, tv});
    RatFun e1i = subst_inverse(e1), Ai = subst_inverse(A), Bi = subst_inverse(B);
    handle_fiber(e1i, Ai, Bi, FqElem::zero(k));
    return count;
}

} // namespace biell
