#include "biell/autcheck.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace biell {

bool TowerAut::is_identity() const {
    return xmap == FFElem::x(xmap.E) && ymap == FFElem::y(xmap.E) && zshift.is_zero();
}

TowerAut identity_aut(const CurveE& E) {
    return {FFElem::x(E), FFElem::y(E), FFElem::zero(E)};
}

namespace {

FFElem eval_ratfun_at(const RatFun& r, const FFElem& arg) {
    const CurveE& E = arg.E;
    FFElem num = FFElem::zero(E), den = FFElem::zero(E);
    for (int i = r.num.deg(); i >= 0; --i)
        num = num * arg + FFElem::constant(E, r.num.coeff(i));
    for (int i = r.den.deg(); i >= 0; --i)
        den = den * arg + FFElem::constant(E, r.den.coeff(i));
    return num / den;
}

// recognize a base map as g0^i or phi g0^i to use the cached pullback path
struct BaseTag {
    bool known = false;
    bool phi = false;
    int i = 0;
};

BaseTag recognize_base(const FFElem& xim, const FFElem& yim, const WittCtx& W) {
    for (int i = 0; i < W.two_n; ++i) {
        FFElem xi = W.pull_g0(W.x(), i);
        if (xi != xim) continue;
        FFElem yi = W.pull_g0(W.y(), i);
        if (yi == yim) return {true, false, i};
        if (W.pull_phi(yi) == yim) return {true, true, i};
    }
    return {};
}

FFElem pull_by_base(const FFElem& f, const BaseTag& t, const WittCtx& W) {
    // point map phi^eps o tau_i pulls back as f -> (f o tau_i-pullback) o phi
    FFElem r = W.pull_g0(f, t.i);
    if (t.phi) r = W.pull_phi(r);
    return r;
}

} // namespace

FFElem apply_base(const FFElem& f, const FFElem& xim, const FFElem& yim) {
    FFElem res = eval_ratfun_at(f.A, xim);
    if (!f.B.is_zero()) res = res + eval_ratfun_at(f.B, xim) * yim;
    return res;
}

TowerAut aut_compose(const TowerAut& a, const TowerAut& b, const WittCtx& W) {
    BaseTag tb = recognize_base(b.xmap, b.ymap, W);
    auto pull_b = [&](const FFElem& f) {
        return tb.known ? pull_by_base(f, tb, W) : apply_base(f, b.xmap, b.ymap);
    };
    return {pull_b(a.xmap), pull_b(a.ymap), b.zshift + pull_b(a.zshift)};
}

FFElem aut_residual(const TowerAut& a, const FFElem& e, const WittCtx& W) {
    BaseTag ta = recognize_base(a.xmap, a.ymap, W);
    FFElem pe = ta.known ? pull_by_base(e, ta, W) : apply_base(e, a.xmap, a.ymap);
    return pe + e + a.zshift * a.zshift + a.zshift;
}

bool is_automorphism(const TowerAut& a, const FFElem& e, const WittCtx& W) {
    return aut_residual(a, e, W).is_zero();
}

std::vector<TowerAut> group_closure(const std::vector<TowerAut>& gens, const WittCtx& W,
                                    int max_order) {
    std::vector<TowerAut> elems{identity_aut(W.E)};
    auto find = [&](const TowerAut& a) {
        for (size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == a) return (int)i;
        return -1;
    };
    std::vector<size_t> work{0};
    while (!work.empty()) {
        size_t idx = work.back();
        work.pop_back();
        for (const TowerAut& g : gens) {
            TowerAut p = aut_compose(elems[idx], g, W);
            if (find(p) < 0) {
                elems.push_back(p);
                if ((int)elems.size() > max_order)
                    throw std::runtime_error("group closure exceeded the bound " +
                                             std::to_string(max_order));
                work.push_back(elems.size() - 1);
            }
        }
    }
    return elems;
}

GroupDescriptor group_structure(const std::vector<TowerAut>& gens, const WittCtx& W,
                                int max_order) {
    auto elems = group_closure(gens, W, max_order);
    int N = (int)elems.size();
    GroupDescriptor d;
    d.order = N;

    auto order_of = [&](const TowerAut& a) {
        TowerAut p = a;
        int o = 1;
        while (!p.is_identity()) {
            p = aut_compose(p, a, W);
            if (++o > N) throw std::logic_error("element order exceeds the group order");
        }
        return o;
    };
    std::vector<int> orders(N);
    for (int i = 0; i < N; ++i) orders[i] = order_of(elems[i]);
    d.element_orders = orders;
    std::sort(d.element_orders.begin(), d.element_orders.end());
    for (int o : orders) d.involutions += (o == 2);

    bool abelian = true;
    for (const TowerAut& g : gens)
        for (const TowerAut& h : gens)
            if (aut_compose(g, h, W) != aut_compose(h, g, W)) abelian = false;
    for (int i = 0; i < N; ++i) {
        bool central = true;
        for (const TowerAut& g : gens)
            if (aut_compose(elems[i], g, W) != aut_compose(g, elems[i], W)) central = false;
        d.center_size += central;
    }

    int maxo = *std::max_element(orders.begin(), orders.end());
    if (abelian) {
        if (maxo == N) d.type = "cyclic";
        else if (maxo <= 2) d.type = "elementary-abelian";
        else d.type = "abelian";
        return d;
    }
    // non-abelian with a cyclic subgroup of index 2: one of the four Huppert
    // types, distinguished by h^2 and h r h^-1
    if (maxo == N / 2) {
        for (int i = 0; i < N && d.type.empty(); ++i) {
            if (orders[i] != N / 2) continue;
            const TowerAut& r = elems[i];
            auto rpow = [&](int t) {
                t = ((t % (N / 2)) + N / 2) % (N / 2);
                TowerAut q = identity_aut(W.E);
                for (int s = 0; s < t; ++s) q = aut_compose(q, r, W);
                return q;
            };
            for (int j = 0; j < N && d.type.empty(); ++j) {
                const TowerAut& h = elems[j];
                bool in_cyclic = false;
                TowerAut p = identity_aut(W.E);
                for (int t = 0; t < N / 2; ++t) {
                    if (p == h) in_cyclic = true;
                    p = aut_compose(p, r, W);
                }
                if (in_cyclic) continue;
                TowerAut hinv = h;
                for (int t = 0; t < orders[j] - 2; ++t) hinv = aut_compose(hinv, h, W);
                TowerAut hrh = aut_compose(aut_compose(h, r, W), hinv, W);
                TowerAut h2 = aut_compose(h, h, W);
                if (h2.is_identity() && hrh == rpow(-1)) d.type = "dihedral";
                else if (N >= 16 && h2.is_identity() && hrh == rpow(N / 4 - 1)) d.type = "semidihedral";
                else if (N >= 16 && h2 == rpow(N / 4) && hrh == rpow(-1)) d.type = "quaternion";
                else if (N >= 16 && h2.is_identity() && hrh == rpow(1 + N / 8)) d.type = "modular";
            }
        }
    }
    if (d.type.empty()) d.type = "other";
    return d;
}

int find_good_k(const WittCtx& W, bool alternative_d) {
    if (alternative_d) return W.n - 1;     // the phi-compatible choice: phi(c_k) = g(c_k)
    std::string diag;
    for (int k = 1; k < W.two_n; k += 2) {
        auto witt = W.witt_elements(k);
        Place Pk(W.E, W.multiple(W.two_n - k));
        int v = valuation(witt.e_k, Pk);
        if (v == -2) return k;
        diag += " k=" + std::to_string(k) + ":v=" + std::to_string(v);
    }
    throw std::runtime_error("no good k found (valuations at [-k]P0:" + diag + ")");
}

MainFamilyResult construct_main_family(const MainFamilyOptions& opt) {
    if (opt.n < 8 || (opt.n & (opt.n - 1)))
        throw std::invalid_argument("n must be a power of 2 with n >= 8");
    FieldRef k0 = FieldCtx::parse(opt.field);
    uint64_t qm1 = k0->order_minus_one();

    // deterministic choice of a primitive mu whose curve carries the torsion
    MainFamilyResult R;
    std::string failures;
    for (uint64_t c = 1; c < qm1; ++c) {
        if (std::gcd(c, qm1) != 1) continue;
        FqElem mu = FqElem::gen(k0).pow(c);
        CurveE E(k0, FqElem::zero(k0), mu);
        try {
            auto ts = find_torsion_generator(E, 2 * (uint64_t)opt.n, opt.seed, opt.max_ext);
            R.W = std::make_shared<WittCtx>(ts.curve, ts.P0, opt.n);
            R.report.mu = mu.str();
            R.report.ext_degree = ts.ext_degree;
            break;
        } catch (const std::exception& ex) {
            failures += std::string(" mu=") + mu.str() + ": " + ex.what();
        }
    }
    if (!R.W) throw std::runtime_error("no primitive mu admits the 2n-torsion:" + failures);

    const WittCtx& W = *R.W;
    MainFamilyReport& rep = R.report;
    rep.n = opt.n;
    rep.alternative_d = opt.alternative_d;
    rep.base_field = opt.field;
    rep.work_field = W.E.k->spec();

    rep.k = opt.k ? opt.k : find_good_k(W, opt.alternative_d);
    R.witt = W.witt_elements(rep.k, opt.alternative_d);
    const auto& witt = R.witt;

    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw std::runtime_error("main-family identity failed: " + what);
        rep.relations_verified.push_back(what);
    };
    require(W.trace_g(witt.d) == FFElem::one(W.E), "Tr_g(d) = 1");
    require(W.trace_g(witt.a).is_zero(), "Tr_g(a) = 0");
    require(W.pull_g(witt.e_k) + witt.e_k == witt.a, "g(e_k) + e_k = a");
    require(W.pull_phi(witt.e_k) + witt.e_k == witt.a, "phi(e_k) + e_k = a");
    require(ff_sqrt(witt.e_k).has_value(), "e_k is a square");

    ASExtElliptic X(W, witt.e_k);
    auto ram = X.ramification(X.default_candidates());
    for (auto& r : ram) {
        std::string name = r.place.str();
        for (int i = 0; i < W.two_n; ++i)
            if (!r.place.inf && !W.multiple(i).inf && W.multiple(i) == r.place.pt)
                name = "[" + std::to_string(i) + "]P0";
        rep.ramification.push_back({name, r.reduced_order, r.different});
    }
    rep.iota_fixed = (int)ram.size();
    rep.genus = X.genus(ram);
    rep.prank = X.prank(ram);
    if (rep.prank > rep.genus) throw std::logic_error("2-rank exceeds the genus");
    require(rep.iota_fixed == opt.n, "iota fixes exactly n places");
    require(rep.prank == opt.n + 1, "2-rank = n + 1");
    // the alternative-d curve has deeper poles and a larger genus; only the
    // standard construction is pinned to n + 1
    if (!opt.alternative_d) require(rep.genus == opt.n + 1, "genus = n + 1");

    TowerAut rho{W.pull_g(W.x()), W.pull_g(W.y()), witt.d};
    TowerAut psi{W.x(), W.x() + W.y(), witt.d};
    require(is_automorphism(rho, witt.e_k, W), "rho is an automorphism");
    require(is_automorphism(psi, witt.e_k, W), "psi is an automorphism");

    auto desc = group_structure({rho, psi}, W, 8 * opt.n);
    rep.group_order = desc.order;
    rep.group_type = desc.type;
    require(desc.order == 4 * opt.n, "|<rho,psi>| = 4n");
    if (!opt.alternative_d) {
        require(desc.type == "dihedral", "group is dihedral");
        require(desc.involutions == 2 * opt.n + 1, "dihedral involution count 2n+1");
    } else {
        // phi(d) = d + 1 for this variant, so psi^2 = iota and psi rho psi^-1
        // picks up an iota twist: the lift is semidihedral, not dihedral
        require(desc.type == "semidihedral", "group is semidihedral");
        require(desc.involutions == opt.n + 1, "semidihedral involution count n+1");
    }

    // psi rho psi = rho^-1 and rho^n = iota: (x,y,z) -> (x,y,z+1)
    auto elems = group_closure({rho, psi}, W, 8 * opt.n);
    TowerAut rho_inv = rho, rn = rho;
    for (int i = 0; i < 2 * opt.n - 2; ++i) rho_inv = aut_compose(rho_inv, rho, W);
    for (int i = 0; i < opt.n - 1; ++i) rn = aut_compose(rn, rho, W);
    TowerAut psi_inv = opt.alternative_d ? aut_compose(aut_compose(psi, psi, W), psi, W) : psi;
    TowerAut conj = aut_compose(aut_compose(psi, rho, W), psi_inv, W);
    if (!opt.alternative_d) {
        require(conj == rho_inv, "psi rho psi^-1 = rho^-1");
    } else {
        require(conj == aut_compose(rho_inv, rn, W), "psi rho psi^-1 = rho^-1 iota");
    }
    TowerAut iota{W.x(), W.y(), FFElem::one(W.E)};
    require(rn == iota, "rho^n = iota: z -> z + 1");
    for (auto& el : elems)
        if (!is_automorphism(el, witt.e_k, W))
            throw std::runtime_error("a closure element fails the automorphism check");
    rep.relations_verified.push_back("every group element preserves the tower");

    // Nakajima bound never violated; the standard family attains 4(g-1)
    if (rep.prank >= 2 && rep.group_order > 4 * (rep.prank - 1))
        throw std::runtime_error("Nakajima bound violated");
    rep.nakajima_attained = (rep.group_order == 4 * (rep.genus - 1));
    if (!opt.alternative_d) require(rep.nakajima_attained, "|S| = 4(g-1)");
    else require(rep.group_order == 4 * (rep.prank - 1), "|S| = 4(gamma-1)");
    return R;
}

} // namespace biell
