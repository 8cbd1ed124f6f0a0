#include "biell/places.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace biell {

Series Series::constant(FieldRef k, uint64_t v, int prec) {
    Series s{k, 0, prec, {}};
    if (v && prec > 0) s.c.assign(1, v);
    if (!v) s.lead = prec;
    return s;
}

Series Series::param(FieldRef k, int prec) {
    Series s{k, 1, prec, {}};
    if (prec > 1) s.c.assign(1, 1);
    else s.lead = prec;
    return s;
}

int Series::val() const {
    if (approx_zero()) throw std::logic_error("valuation of a series that is zero to working precision");
    return lead;
}

uint64_t Series::coeff(int e) const {
    if (e < lead || e >= lead + (int)c.size()) return 0;
    return c[e - lead];
}

void Series::normalize() {
    size_t i = 0;
    while (i < c.size() && c[i] == 0) ++i;
    if (i) {
        c.erase(c.begin(), c.begin() + i);
        lead += (int)i;
    }
    if (lead + (int)c.size() > prec) c.resize(std::max(0, prec - lead));
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) lead = prec;
}

Series Series::operator+(const Series& b) const {
    Series r{k, 0, std::min(prec, b.prec), {}};
    int lo = std::min(lead, b.lead);
    int hi = std::min(r.prec, std::max(lead + (int)c.size(), b.lead + (int)b.c.size()));
    if (lo >= hi) {
        r.lead = r.prec;
        return r;
    }
    r.lead = lo;
    r.c.assign(hi - lo, 0);
    for (int e = lo; e < hi; ++e) r.c[e - lo] = coeff(e) ^ b.coeff(e);
    r.normalize();
    return r;
}

Series Series::operator*(const Series& b) const {
    // error terms: O(t^prec) * b and O(t^b.prec) * this
    int va = approx_zero() ? prec : lead;
    int vb = b.approx_zero() ? b.prec : b.lead;
    int pr = std::min(prec + vb, b.prec + va);
    Series r{k, 0, pr, {}};
    if (approx_zero() || b.approx_zero()) {
        r.lead = pr;
        return r;
    }
    int lo = lead + b.lead;
    int n = std::min((int)(c.size() + b.c.size()) - 1, pr - lo);
    if (n <= 0) {
        r.lead = pr;
        return r;
    }
    r.lead = lo;
    r.c.assign(n, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        for (size_t j = 0; j < b.c.size() && (int)(i + j) < n; ++j)
            if (b.c[j]) r.c[i + j] ^= k->mul(c[i], b.c[j]);
    }
    r.normalize();
    return r;
}

Series Series::scaled(FqElem s) const {
    Series r = *this;
    if (s.v == 0) return zero(k, prec);
    for (auto& cc : r.c) cc = k->mul(cc, s.v);
    return r;
}

Series Series::shifted(int n) const {
    Series r = *this;
    r.lead += n;
    r.prec += n;
    return r;
}

Series Series::inverse() const {
    if (approx_zero()) throw std::domain_error("inverting a series that is zero to working precision");
    int v = lead;
    // long division: g_0 = 1/c_0, g_i = (sum_{j<i} g_j c_{i-j}) / c_0
    int rel = prec - 2 * v;
    if (rel <= 0) return zero(k, rel);
    std::vector<uint64_t> g(rel, 0);
    uint64_t c0i = k->inv(c[0]);
    g[0] = c0i;
    for (int i = 1; i < rel; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < i; ++j) {
            uint64_t ci = (i - j) < (int)c.size() ? c[i - j] : 0;
            if (ci && g[j]) acc ^= k->mul(g[j], ci);
        }
        g[i] = k->mul(acc, c0i);
    }
    Series r{k, -v, prec - 2 * v, std::move(g)};
    r.normalize();
    return r;
}

Series Series::truncated(int p) const {
    Series r = *this;
    if (p < r.prec) {
        r.prec = p;
        r.normalize();
    }
    return r;
}

bool Series::congruent(const Series& b) const {
    int p = std::min(prec, b.prec);
    int lo = std::min(approx_zero() ? p : lead, b.approx_zero() ? p : b.lead);
    for (int e = lo; e < p; ++e)
        if (coeff(e) != b.coeff(e)) return false;
    return true;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (int e = lead; e < lead + (int)c.size(); ++e) {
        if (!coeff(e)) continue;
        if (!first) os << " + ";
        first = false;
        os << k->elem_str(coeff(e)) << "*t^" << e;
    }
    if (first) os << "0";
    os << " + O(t^" << prec << ")";
    return os.str();
}

Series eval_on_series(const Poly& p, const Series& s, int prec) {
    Series acc = Series::zero(s.k, prec);
    for (int i = p.deg(); i >= 0; --i) {
        acc = acc * s + Series::constant(s.k, p.c[i], prec);
    }
    if (p.deg() < 0) return Series::zero(s.k, prec);
    return acc;
}

Place::Place(const CurveE& E, const ECPoint& p) : inf(p.inf), E(E), pt(p) {
    if (!E.on_curve(p)) throw std::invalid_argument("place coordinates do not satisfy the curve equation");
}

Place Place::infinity(const CurveE& E) {
    Place p;
    p.E = E;
    return p;
}

bool Place::operator==(const Place& b) const {
    if (inf != b.inf) return false;
    if (inf) return true;
    return E.k == b.E.k && pt == b.pt;
}

bool Place::operator<(const Place& b) const {
    if (inf != b.inf) return inf < b.inf;
    if (inf) return false;
    if (E.k != b.E.k) return E.k->m < b.E.k->m || (E.k->m == b.E.k->m && E.k < b.E.k);
    if (pt.x.v != b.pt.x.v) return pt.x.v < b.pt.x.v;
    return pt.y.v < b.pt.y.v;
}

LocalExpansion local_expand(const Place& P, int prec) {
    if (prec < 1) throw std::invalid_argument("precision must be positive");
    if (prec > (1 << 16)) throw std::domain_error("local expansion precision overflow guard");
    FieldRef k = P.E.k;
    auto fixpoint = [&](Series start, auto step) {
        Series cur = std::move(start);
        for (int it = 0; it < prec + 6; ++it) {
            Series next = step(cur);
            if (next.congruent(cur)) return next;
            cur = std::move(next);
        }
        throw std::logic_error("local expansion iteration failed to converge");
    };
    if (P.inf) {
        // t = x/y: from the curve relation, s := 1/y satisfies
        // s (1 + t + nu t^2 + mu s^2) = t^3
        Series t = Series::param(k, prec + 8);
        Series one = Series::constant(k, 1, prec + 8);
        Series nu_t2 = (t * t).scaled(P.E.nu);
        Series t3 = t * t * t;
        Series s = fixpoint(t3, [&](const Series& cur) {
            Series den = one + t + nu_t2 + (cur * cur).scaled(P.E.mu);
            return (t3 * den.inverse()).truncated(prec + 8);
        });
        Series sy = s.inverse();
        Series sx = t * sy;
        return {P, sx.truncated(prec), sy.truncated(prec)};
    }
    FqElem x0 = P.pt.x, y0 = P.pt.y;
    if (x0.is_zero()) {
        // the 2-torsion point (0, sqrt(mu)); t = y - y0, x(x^2 + nu x + y) = t^2
        Series t = Series::param(k, prec + 8);
        Series sy = Series::constant(k, y0.v, prec + 8) + t;
        Series t2 = t * t;
        Series sx = fixpoint(Series::zero(k, prec + 8), [&](const Series& cur) {
            Series den = cur * cur + cur.scaled(P.E.nu) + sy;
            return (t2 * den.inverse()).truncated(prec + 8);
        });
        return {P, sx.truncated(prec), sy.truncated(prec)};
    }
    // generic affine point: t = x - x0, solve y = (y^2 + x^3 + nu x^2 + mu)/x
    Series t = Series::param(k, prec + 4);
    Series sx = Series::constant(k, x0.v, prec + 4) + t;
    Series rhs = eval_on_series(Poly(k, {P.E.mu.v, 0, P.E.nu.v, 1}), sx, prec + 4);
    Series xinv = sx.inverse();
    Series sy = fixpoint(Series::constant(k, y0.v, prec + 4), [&](const Series& cur) {
        return ((cur * cur + rhs) * xinv).truncated(prec + 4);
    });
    return {P, sx.truncated(prec), sy.truncated(prec)};
}

namespace {

FFElem embed_ff(const FFElem& f, const CurveE& Eto) {
    if (f.E.k == Eto.k) return f;
    return FFElem(Eto, f.A.embed(Eto.k), f.B.embed(Eto.k));
}

} // namespace

std::pair<int, FqElem> valuation_with_lead(const FFElem& f0, const Place& P) {
    if (f0.is_zero()) throw std::domain_error("valuation of the zero element");
    FFElem f = embed_ff(f0, P.E);
    // clear denominators once: f = (T1 + T2 y)/D with polynomial T1, T2, D
    Poly T1 = f.A.num * f.B.den;
    Poly T2 = f.B.num * f.A.den;
    Poly D = f.A.den * f.B.den;
    int degs = std::max(0, T1.deg()) + std::max(0, T2.deg()) + D.deg();
    int cap = 8 * (degs + 4);
    for (int goal = 16; goal <= cap + 48; goal *= 2) {
        int slack = P.inf ? 2 * degs + 8 : 8;
        LocalExpansion le = local_expand(P, goal + slack);
        Series num = eval_on_series(T1, le.x, goal + slack) +
                     eval_on_series(T2, le.x, goal + slack) * le.y;
        Series den = eval_on_series(D, le.x, goal + slack);
        if (den.approx_zero()) continue;
        if (num.approx_zero()) {
            if (num.prec - den.val() > cap)
                throw std::domain_error("valuation: precision cap exceeded (is f = 0?)");
            continue;
        }
        FqElem lead = FqElem{P.E.k, num.c[0]} / FqElem{P.E.k, den.c[0]};
        return {num.val() - den.val(), lead};
    }
    throw std::domain_error("valuation: precision cap exceeded");
}

int valuation(const FFElem& f, const Place& P) { return valuation_with_lead(f, P).first; }

int Divisor::degree() const {
    int d = 0;
    for (auto& [p, m] : entries) d += m;
    return d;
}

int Divisor::mult(const Place& P) const {
    for (auto& [p, m] : entries)
        if (p == P) return m;
    return 0;
}

void Divisor::add(const Place& P, int m) {
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        if (it->first == P) {
            it->second += m;
            if (it->second == 0) entries.erase(it);
            return;
        }
    }
    if (m != 0) {
        entries.push_back({P, m});
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
}

Divisor Divisor::operator+(const Divisor& b) const {
    Divisor r = *this;
    for (auto& [p, m] : b.entries) r.add(p, m);
    return r;
}

Divisor Divisor::operator-() const {
    Divisor r = *this;
    for (auto& [p, m] : r.entries) m = -m;
    return r;
}

std::string Divisor::str(const WittCtx* naming) const {
    std::ostringstream os;
    bool first = true;
    for (auto& [p, m] : entries) {
        if (!first) os << " ";
        first = false;
        std::string name = p.str();
        if (naming && !p.inf && p.E.k == naming->E.k) {
            for (int i = 0; i < naming->two_n; ++i) {
                if (!naming->multiple(i).inf && naming->multiple(i) == p.pt) {
                    name = "[" + std::to_string(i) + "]P0";
                    break;
                }
            }
        }
        os << "(" << name << ", " << m << ")";
    }
    if (first) os << "(empty)";
    return os.str();
}

int principal_divisor_degree(const FFElem& f, int max_field_bits) {
    if (f.is_zero()) throw std::domain_error("divisor of the zero element");
    const CurveE& E = f.E;
    FieldRef k = E.k;
    Poly T1 = f.A.num * f.B.den;
    Poly T2 = f.B.num * f.A.den;
    Poly D = f.A.den * f.B.den;
    Poly rhs(k, {E.mu.v, 0, E.nu.v, 1});
    Poly nrm = T1 * T1 + T1 * T2 * Poly::x(k) + T2 * T2 * rhs;
    int total = valuation(f, Place::infinity(E));
    for (auto& [pi, mult] : factorize(nrm * D)) {
        (void)mult;
        int bits = k->m * pi.deg();
        if (bits > max_field_bits || 2 * bits > 48) {
            // conjugate-place aggregate: v_P1 + v_P2 = v_pi(norm) at unramified pi
            int vn = RatFun(nrm).v_pi(pi), vd = RatFun(D).v_pi(pi);
            total += (vn - 2 * vd) * pi.deg();
            continue;
        }
        FieldRef K = pi.deg() == 1 ? k : FieldCtx::get(bits);
        CurveE EK = pi.deg() == 1 ? E : E.embed(K);
        for (FqElem x0 : roots_in(pi, K)) {
            FqElem c = x0.sqr() * x0 + EK.nu * x0.sqr() + EK.mu;
            if (x0.is_zero()) {
                total += valuation(f, Place(EK, EK.two_torsion()));
                continue;
            }
            FqElem u = c / x0.sqr();
            uint64_t z;
            if (K->solve_artin_schreier(u.v, z)) {
                total += valuation(f, Place(EK, {x0, x0 * FqElem{K, z}}));
                total += valuation(f, Place(EK, {x0, x0 * FqElem{K, z} + x0}));
            } else {
                FieldRef K2 = FieldCtx::get(2 * bits);
                CurveE EK2 = E.embed(K2);
                FqElem x0b = x0.embed(K2), ub = u.embed(K2);
                uint64_t z2;
                K2->solve_artin_schreier(ub.v, z2);
                total += valuation(f, Place(EK2, {x0b, x0b * FqElem{K2, z2}}));
                total += valuation(f, Place(EK2, {x0b, x0b * FqElem{K2, z2} + x0b}));
            }
        }
    }
    return total;
}

Divisor principal_divisor(const FFElem& f, int max_field_bits) {
    if (f.is_zero()) throw std::domain_error("divisor of the zero element");
    const CurveE& E = f.E;
    FieldRef k = E.k;
    Poly T1 = f.A.num * f.B.den;
    Poly T2 = f.B.num * f.A.den;
    Poly D = f.A.den * f.B.den;
    // cancellation-free norm of the numerator pair T1 + T2 y
    Poly rhs(k, {E.mu.v, 0, E.nu.v, 1});
    Poly nrm = T1 * T1 + T1 * T2 * Poly::x(k) + T2 * T2 * rhs;
    Poly support = nrm * D;
    Divisor div;
    for (auto& [pi, mult] : factorize(support)) {
        (void)mult;
        int bits = k->m * pi.deg();
        if (bits > max_field_bits)
            throw std::domain_error("principal_divisor: place field gf2^" + std::to_string(bits) +
                                    " beyond the scan bound");
        FieldRef K = pi.deg() == 1 ? k : FieldCtx::get(bits);
        CurveE EK = pi.deg() == 1 ? E : E.embed(K);
        for (FqElem x0 : roots_in(pi, K)) {
            // places over x0: y^2 + x0 y + (x0^3 + nu x0^2 + mu) = 0
            FqElem c = x0.sqr() * x0 + EK.nu * x0.sqr() + EK.mu;
            std::vector<ECPoint> pts;
            if (x0.is_zero()) {
                pts.push_back(EK.two_torsion());
            } else {
                uint64_t z;
                FqElem u = c / x0.sqr();
                if (K->solve_artin_schreier(u.v, z)) {
                    pts.push_back({x0, x0 * FqElem{K, z}});
                    pts.push_back({x0, x0 * FqElem{K, z} + x0});
                } else {
                    int bits2 = 2 * bits;
                    if (bits2 > max_field_bits)
                        throw std::domain_error("principal_divisor: residue field beyond the scan bound");
                    FieldRef K2 = FieldCtx::get(bits2);
                    CurveE EK2 = E.embed(K2);
                    FqElem x0b = x0.embed(K2);
                    FqElem ub = u.embed(K2);
                    uint64_t z2;
                    if (!K2->solve_artin_schreier(ub.v, z2))
                        throw std::logic_error("quadratic place did not split in the quadratic extension");
                    ECPoint p1{x0b, x0b * FqElem{K2, z2}};
                    ECPoint p2{x0b, x0b * FqElem{K2, z2} + x0b};
                    Place P1(EK2, p1), P2(EK2, p2);
                    int v1 = valuation(f, P1);
                    if (v1) div.add(P1, v1);
                    int v2 = valuation(f, P2);
                    if (v2) div.add(P2, v2);
                    continue;
                }
            }
            for (auto& p : pts) {
                Place P(EK, p);
                int v = valuation(f, P);
                if (v) div.add(P, v);
            }
        }
    }
    Place Pinf = Place::infinity(E);
    int vinf = valuation(f, Pinf);
    if (vinf) div.add(Pinf, vinf);
    if (div.degree() != 0)
        throw std::logic_error("principal divisor has degree " + std::to_string(div.degree()) +
                               ": place scan incomplete");
    return div;
}

} // namespace biell
