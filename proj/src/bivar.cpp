#include "biell/bivar.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace biell {

BivarPoly BivarPoly::constant(FqElem a) {
    BivarPoly f(a.k);
    if (a.v) {
        f.nx = 1;
        f.c = {a.v};
    }
    return f;
}

BivarPoly BivarPoly::from_y_coeffs(FieldRef k, const std::vector<Poly>& ycoeffs) {
    BivarPoly f(k);
    int nx = 0;
    for (auto& p : ycoeffs) nx = std::max(nx, p.deg() + 1);
    if (!nx) return f;
    f.nx = nx;
    f.c.assign((size_t)nx * ycoeffs.size(), 0);
    for (size_t j = 0; j < ycoeffs.size(); ++j)
        for (int i = 0; i <= ycoeffs[j].deg(); ++i) f.c[i + nx * j] = ycoeffs[j].c[i];
    f.trim();
    return f;
}

uint64_t BivarPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx || j >= ny()) return 0;
    return c[i + (size_t)nx * j];
}

void BivarPoly::set(int i, int j, uint64_t v) {
    if (i >= nx || j >= ny()) {
        int nnx = std::max(nx, i + 1), nny = std::max(ny(), j + 1);
        std::vector<uint64_t> nc((size_t)nnx * nny, 0);
        for (int jj = 0; jj < ny(); ++jj)
            for (int ii = 0; ii < nx; ++ii) nc[ii + (size_t)nnx * jj] = c[ii + (size_t)nx * jj];
        nx = nnx;
        c = std::move(nc);
    }
    c[i + (size_t)nx * j] = v;
}

void BivarPoly::trim() {
    int dx = -1, dy = -1;
    for (int j = 0; j < ny(); ++j)
        for (int i = 0; i < nx; ++i)
            if (c[i + (size_t)nx * j]) {
                dx = std::max(dx, i);
                dy = std::max(dy, j);
            }
    if (dx < 0) {
        nx = 0;
        c.clear();
        return;
    }
    if (dx + 1 == nx && dy + 1 == ny()) return;
    std::vector<uint64_t> nc((size_t)(dx + 1) * (dy + 1), 0);
    for (int j = 0; j <= dy; ++j)
        for (int i = 0; i <= dx; ++i) nc[i + (size_t)(dx + 1) * j] = c[i + (size_t)nx * j];
    nx = dx + 1;
    c = std::move(nc);
}

int BivarPoly::deg_x() const { return nx - 1; }
int BivarPoly::deg_y() const { return ny() - 1; }

int BivarPoly::total_deg() const {
    int d = -1;
    for (int j = 0; j < ny(); ++j)
        for (int i = 0; i < nx; ++i)
            if (c[i + (size_t)nx * j]) d = std::max(d, i + j);
    return d;
}

BivarPoly BivarPoly::operator+(const BivarPoly& b) const {
    if (k != b.k) throw std::invalid_argument("bivar contexts differ");
    BivarPoly r(k);
    int nnx = std::max(nx, b.nx), nny = std::max(ny(), b.ny());
    if (!nnx) return r;
    r.nx = nnx;
    r.c.assign((size_t)nnx * nny, 0);
    for (int j = 0; j < nny; ++j)
        for (int i = 0; i < nnx; ++i) r.c[i + (size_t)nnx * j] = coeff(i, j) ^ b.coeff(i, j);
    r.trim();
    return r;
}

BivarPoly BivarPoly::operator*(const BivarPoly& b) const {
    if (k != b.k) throw std::invalid_argument("bivar contexts differ");
    BivarPoly r(k);
    if (is_zero() || b.is_zero()) return r;
    int nnx = nx + b.nx - 1, nny = ny() + b.ny() - 1;
    r.nx = nnx;
    r.c.assign((size_t)nnx * nny, 0);
    for (int j1 = 0; j1 < ny(); ++j1)
        for (int i1 = 0; i1 < nx; ++i1) {
            uint64_t v = c[i1 + (size_t)nx * j1];
            if (!v) continue;
            for (int j2 = 0; j2 < b.ny(); ++j2)
                for (int i2 = 0; i2 < b.nx; ++i2) {
                    uint64_t w = b.c[i2 + (size_t)b.nx * j2];
                    if (w) r.c[(i1 + i2) + (size_t)nnx * (j1 + j2)] ^= k->mul(v, w);
                }
        }
    r.trim();
    return r;
}

BivarPoly BivarPoly::operator*(FqElem s) const {
    BivarPoly r = *this;
    if (s.v == 0) return zero(k);
    for (auto& v : r.c) v = k->mul(v, s.v);
    return r;
}

FqElem BivarPoly::eval(FqElem x, FqElem y) const {
    uint64_t acc = 0;
    for (int j = ny() - 1; j >= 0; --j) {
        uint64_t row = 0;
        for (int i = nx - 1; i >= 0; --i) row = k->mul(row, x.v) ^ c[i + (size_t)nx * j];
        acc = k->mul(acc, y.v) ^ row;
    }
    return {k, acc};
}

Poly BivarPoly::eval_x(FqElem x) const {
    Poly p(k);
    p.c.resize(ny());
    for (int j = 0; j < ny(); ++j) {
        uint64_t row = 0;
        for (int i = nx - 1; i >= 0; --i) row = k->mul(row, x.v) ^ c[i + (size_t)nx * j];
        p.c[j] = row;
    }
    p.trim();
    return p;
}

Poly BivarPoly::eval_y(FqElem y) const {
    Poly p(k);
    p.c.resize(nx);
    for (int i = 0; i < nx; ++i) {
        uint64_t acc = 0;
        for (int j = ny() - 1; j >= 0; --j) acc = k->mul(acc, y.v) ^ c[i + (size_t)nx * j];
        p.c[i] = acc;
    }
    p.trim();
    return p;
}

Poly BivarPoly::y_coeff(int j) const {
    Poly p(k);
    if (j < 0 || j >= ny()) return p;
    p.c.assign(c.begin() + (size_t)nx * j, c.begin() + (size_t)nx * (j + 1));
    p.trim();
    return p;
}

std::vector<Poly> BivarPoly::y_coeffs() const {
    std::vector<Poly> out;
    for (int j = 0; j < ny(); ++j) out.push_back(y_coeff(j));
    return out;
}

BivarPoly BivarPoly::shifted(FqElem a, FqElem b) const {
    // binomial shift, one variable at a time
    BivarPoly r(k);
    r.nx = nx;
    r.c = c;
    if (a.v) {
        for (int j = 0; j < ny(); ++j) {
            // shift the row polynomial in X by a (Horner-style synthetic shift)
            for (int step = nx - 1; step >= 0; --step)
                for (int i = step; i < nx - 1; ++i)
                    r.c[i + (size_t)nx * j] ^= k->mul(r.c[i + 1 + (size_t)nx * j], a.v);
        }
    }
    if (b.v) {
        int NY = ny();
        for (int i = 0; i < nx; ++i) {
            for (int step = NY - 1; step >= 0; --step)
                for (int j = step; j < NY - 1; ++j)
                    r.c[i + (size_t)nx * j] ^= k->mul(r.c[i + (size_t)nx * (j + 1)], b.v);
        }
    }
    r.trim();
    return r;
}

BivarPoly BivarPoly::embed(FieldRef target) const {
    if (target == k) return *this;
    BivarPoly r(target);
    r.nx = nx;
    r.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = FqElem{k, c[i]}.embed(target).v;
    return r;
}

std::string BivarPoly::str(const std::string& vx, const std::string& vy) const {
    if (is_zero()) return "0";
    // terms ordered by total degree descending, then x-degree descending
    std::vector<std::pair<int, int>> terms;
    for (int j = 0; j < ny(); ++j)
        for (int i = 0; i < nx; ++i)
            if (coeff(i, j)) terms.push_back({i, j});
    std::sort(terms.begin(), terms.end(), [](auto& a, auto& b) {
        if (a.first + a.second != b.first + b.second) return a.first + a.second > b.first + b.second;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [i, j] : terms) {
        if (!first) os << " + ";
        first = false;
        uint64_t v = coeff(i, j);
        bool unit = (v == 1) && (i || j);
        if (!unit) os << k->elem_str(v);
        if (!unit && (i || j)) os << "*";
        if (i) {
            os << vx;
            if (i > 1) os << "^" << i;
        }
        if (i && j) os << "*";
        if (j) {
            os << vy;
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

BivarPoly BivarPoly::parse(FieldRef k, const std::string& s, const std::string& vx,
                           const std::string& vy) {
    BivarPoly f(k);
    std::string t;
    for (char ch : s)
        if (!isspace((unsigned char)ch)) t += ch;
    size_t pos = 0;
    auto read_var = [&](const std::string& term, const std::string& v, size_t& at) -> int {
        size_t p = term.find(v, at);
        if (p == std::string::npos) return 0;
        size_t after = p + v.size();
        int d = 1;
        if (after < term.size() && term[after] == '^') {
            size_t q = after + 1, e = 0;
            while (q + e < term.size() && isdigit((unsigned char)term[q + e])) ++e;
            d = std::stoi(term.substr(q, e));
        }
        return d;
    };
    while (pos < t.size()) {
        size_t next = t.find('+', pos);
        std::string term = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? t.size() : next + 1;
        if (term.empty()) continue;
        size_t dummy = 0;
        int dx = read_var(term, vx, dummy);
        int dy = read_var(term, vy, dummy);
        // coefficient: the part before the first variable occurrence
        size_t vpos = std::min(term.find(vx), term.find(vy));
        std::string cpart = vpos == std::string::npos ? term : term.substr(0, vpos);
        if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
        uint64_t coef = cpart.empty() ? 1 : k->parse_elem(cpart);
        f.set(dx, dy, f.coeff(dx, dy) ^ coef);
    }
    f.trim();
    return f;
}

Poly content_x(const BivarPoly& f) {
    Poly g = Poly::zero(f.k);
    for (int j = 0; j < f.ny(); ++j) {
        Poly p = f.y_coeff(j);
        if (!p.is_zero()) g = g.is_zero() ? p.monic() : gcd(g, p);
    }
    return g;
}

BivarPoly divide_content_x(const BivarPoly& f, const Poly& cont) {
    std::vector<Poly> rows;
    for (int j = 0; j < f.ny(); ++j) rows.push_back(f.y_coeff(j) / cont);
    return BivarPoly::from_y_coeffs(f.k, rows);
}

bool bivar_divides(const BivarPoly& f, const BivarPoly& g) {
    if (g.is_zero()) return true;
    if (f.deg_y() < 1) throw std::invalid_argument("divisor must have positive Y-degree");
    // division in K(X)[Y]
    std::vector<RatFun> r;
    for (auto& p : g.y_coeffs()) r.push_back(RatFun(p));
    auto fy = f.y_coeffs();
    int df = f.deg_y();
    RatFun leadinv = RatFun(fy[df]).inv();
    for (int j = (int)r.size() - 1; j >= df; --j) {
        if (r[j].is_zero()) continue;
        RatFun q = r[j] * leadinv;
        for (int i = 0; i <= df; ++i) r[j - df + i] = r[j - df + i] + q * RatFun(fy[i]);
    }
    for (int j = 0; j < df; ++j)
        if (!r[j].is_zero()) return false;
    return true;
}

BivarPoly resultant_y(const std::vector<BivarPoly>& a, const std::vector<BivarPoly>& b) {
    int m = (int)a.size() - 1, n = (int)b.size() - 1;
    if (m < 0 || n < 0) throw std::invalid_argument("resultant of the zero polynomial");
    FieldRef k = a[0].k;
    if (m == 0 && n == 0) return BivarPoly::constant(FqElem::one(k));
    int N = m + n;
    // Sylvester matrix: n rows of a-coefficients, m rows of b-coefficients
    std::vector<std::vector<BivarPoly>> S(N, std::vector<BivarPoly>(N, BivarPoly::zero(k)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[r][r + i] = a[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[n + r][r + i] = b[n - i];
    // cofactor expansion (N <= 6 for every use here)
    std::vector<int> cols(N);
    for (int i = 0; i < N; ++i) cols[i] = i;
    std::function<BivarPoly(int, std::vector<int>&)> det = [&](int row, std::vector<int>& cs) {
        if (cs.empty()) return BivarPoly::constant(FqElem::one(k));
        BivarPoly acc = BivarPoly::zero(k);
        for (size_t t = 0; t < cs.size(); ++t) {
            const BivarPoly& e = S[row][cs[t]];
            if (e.is_zero()) continue;
            int c = cs[t];
            cs.erase(cs.begin() + t);
            acc = acc + e * det(row + 1, cs);
            cs.insert(cs.begin() + t, c);
        }
        return acc;
    };
    return det(0, cols);
}

BivarPoly chart_x(const BivarPoly& f, int D) {
    // F^hom(1, Y, Z): monomial X^i Y^j -> Y^j Z^(D-i-j)
    BivarPoly g(f.k);
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx; ++i) {
            uint64_t v = f.coeff(i, j);
            if (v) g.set(j, D - i - j, g.coeff(j, D - i - j) ^ v);
        }
    g.trim();
    return g;
}

BivarPoly chart_y(const BivarPoly& f, int D) {
    // F^hom(X, 1, Z): X^i Y^j -> X^i Z^(D-i-j)
    BivarPoly g(f.k);
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx; ++i) {
            uint64_t v = f.coeff(i, j);
            if (v) g.set(i, D - i - j, g.coeff(i, D - i - j) ^ v);
        }
    g.trim();
    return g;
}

BivarPoly subst_projective(const BivarPoly& f, int D, const std::array<BivarPoly, 3>& comp, int d) {
    (void)d;
    FieldRef k = f.k;
    int dx = f.deg_x() >= 0 ? f.deg_x() : 0;
    int dy = f.deg_y() >= 0 ? f.deg_y() : 0;
    std::vector<BivarPoly> P(dx + 1, BivarPoly::constant(FqElem::one(k)));
    std::vector<BivarPoly> Q(dy + 1, BivarPoly::constant(FqElem::one(k)));
    std::vector<BivarPoly> R(D + 1, BivarPoly::constant(FqElem::one(k)));
    for (int i = 1; i <= dx; ++i) P[i] = P[i - 1] * comp[0];
    for (int j = 1; j <= dy; ++j) Q[j] = Q[j - 1] * comp[1];
    for (int t = 1; t <= D; ++t) R[t] = R[t - 1] * comp[2];
    BivarPoly acc = BivarPoly::zero(k);
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx; ++i) {
            uint64_t v = f.coeff(i, j);
            if (!v) continue;
            acc = acc + P[i] * Q[j] * R[D - i - j] * FqElem{k, v};
        }
    return acc;
}

namespace {

// multiplicity and tangent-cone ordinariness of F at the affine origin
std::pair<int, bool> mult_at_origin(const BivarPoly& f) {
    int m = f.total_deg() + 1;
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx; ++i)
            if (f.coeff(i, j)) m = std::min(m, i + j);
    if (m == 0) return {0, true};            // not on the curve
    // tangent cone: the degree-m form; squarefree as a binary form?
    FieldRef k = f.k;
    Poly u(k);
    u.c.assign(m + 1, 0);
    for (int i = 0; i <= m; ++i) u.c[i] = f.coeff(i, m - i);
    u.trim();
    bool sqfree;
    if (u.is_zero()) {
        sqfree = false;                      // should not happen
    } else {
        int vfac = m - u.deg();              // multiplicity of the Y=0 ... X-direction factor
        Poly d = u.derivative();
        bool usf = !d.is_zero() ? gcd(u, d).deg() == 0 : u.deg() == 0;
        sqfree = (vfac <= 1) && usf;
    }
    return {m, sqfree};
}

void add_sing_if(const BivarPoly& fK, FieldRef K, FqElem a, FqElem b, bool at_inf,
                 SingularityReport& rep) {
    BivarPoly sh = fK.shifted(a, b);
    auto [m, ord] = mult_at_origin(sh);
    if (m >= 2) rep.points.push_back({at_inf, K, a, b, m, ord});
}

BivarPoly deriv_x(const BivarPoly& f) {
    BivarPoly g(f.k);
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 1; i < f.nx; i += 2)
            if (f.coeff(i, j)) g.set(i - 1, j, f.coeff(i, j));
    g.trim();
    return g;
}

BivarPoly deriv_y(const BivarPoly& f) {
    BivarPoly g(f.k);
    for (int j = 1; j < f.ny(); j += 2)
        for (int i = 0; i < f.nx; ++i)
            if (f.coeff(i, j)) g.set(i, j - 1, f.coeff(i, j));
    g.trim();
    return g;
}

} // namespace

SingularityReport plane_singularity_analysis(const BivarPoly& f, int max_field_bits) {
    SingularityReport rep;
    FieldRef k = f.k;
    int D = f.total_deg();
    rep.degree = D;
    BivarPoly FX = deriv_x(f), FY = deriv_y(f);
    if (FX.is_zero() && FY.is_zero()) {
        rep.scan_complete = false;
        rep.note = "both partials vanish identically (the curve is a square)";
        return rep;
    }

    // affine singular points: common zeros of {F, FX, FY}
    Poly xcond = Poly::zero(k);
    if (FX.deg_y() <= 0 && FY.deg_y() <= 0) {
        Poly a = FX.y_coeff(0), b = FY.y_coeff(0);
        xcond = a.is_zero() ? b.monic() : (b.is_zero() ? a.monic() : gcd(a, b));
    } else {
        const BivarPoly& P1 = FX.deg_y() >= 1 ? FX : FY;
        const BivarPoly& P2 = FX.deg_y() >= 1 ? FY : FX;
        if (P2.deg_y() <= 0) {
            xcond = P2.y_coeff(0).monic();
        } else {
            auto lift = [&](const std::vector<Poly>& v) {
                std::vector<BivarPoly> out;
                for (auto& p : v) out.push_back(BivarPoly::from_y_coeffs(k, {p}));
                return out;
            };
            BivarPoly r = resultant_y(lift(P1.y_coeffs()), lift(P2.y_coeffs()));
            if (r.deg_y() > 0) throw std::logic_error("resultant_y left a Y term");
            if (r.is_zero()) {
                rep.scan_complete = false;
                rep.note = "partials share a component; affine scan incomplete";
            }
            xcond = r.y_coeff(0);
        }
    }
    if (!xcond.is_zero() && xcond.deg() > 0) {
        for (auto& [pi, mult] : factorize(xcond)) {
            (void)mult;
            int bits = k->m * pi.deg();
            if (bits > max_field_bits) {
                rep.scan_complete = false;
                rep.note = "affine root beyond the field scan bound gf2^" + std::to_string(bits);
                continue;
            }
            FieldRef K = pi.deg() == 1 ? k : FieldCtx::get(bits);
            BivarPoly fK = f.embed(K);
            for (FqElem x0 : roots_in(pi, K)) {
                // y-candidates: common roots of F(x0, .) and the partials
                Poly gy = fK.eval_x(x0);
                Poly g1 = FX.embed(K).eval_x(x0);
                Poly g2 = FY.embed(K).eval_x(x0);
                Poly g = gy;
                if (!g1.is_zero()) g = gcd(g, g1);
                else if (!g2.is_zero()) g = gcd(g, g2);
                if (!g2.is_zero()) g = gcd(g, g2);
                if (g.is_zero() || g.deg() < 1) continue;
                for (int s = 1; s <= g.deg(); ++s) {
                    int bits2 = K->m * s;
                    if (bits2 > max_field_bits) {
                        // roots of g in deeper extensions are out of reach
                        bool deeper = false;
                        for (auto& [qi, qm] : factorize(g))
                            if (qi.deg() >= s) deeper = true, (void)qm;
                        if (deeper) {
                            rep.scan_complete = false;
                            rep.note = "singular y-root beyond the field scan bound";
                        }
                        break;
                    }
                    FieldRef K2 = bits2 == K->m ? K : FieldCtx::get(bits2);
                    BivarPoly fK2 = bits2 == K->m ? fK : f.embed(K2);
                    for (auto& [qi, qm] : factorize(g)) {
                        (void)qm;
                        if (qi.deg() != s) continue;
                        for (FqElem y0 : roots_in(qi, K2))
                            add_sing_if(fK2, K2, x0.embed(K2), y0, false, rep);
                    }
                }
            }
        }
    }

    // points at infinity: roots of the top form
    Poly top(k);
    top.c.assign(D + 1, 0);
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx; ++i)
            if (i + j == D && f.coeff(i, j)) top.c[i] = f.coeff(i, j);
    top.trim();
    if (top.is_zero()) throw std::logic_error("degenerate top form");
    // direction (1:0:0) when the pure X^D term is missing: top(u) has deg < D
    if (top.deg() < D) {
        BivarPoly g = chart_x(f, D);                  // coordinates (Y, Z)
        add_sing_if(g, k, FqElem::zero(k), FqElem::zero(k), true, rep);
    }
    for (auto& [pi, mult] : factorize(top)) {
        (void)mult;
        int bits = k->m * pi.deg();
        if (bits > max_field_bits) {
            rep.scan_complete = false;
            rep.note = "infinite point beyond the field scan bound";
            continue;
        }
        FieldRef K = pi.deg() == 1 ? k : FieldCtx::get(bits);
        BivarPoly g = chart_y(f.embed(K), D);         // coordinates (X, Z), point (u, 0)
        for (FqElem u : roots_in(pi, K)) add_sing_if(g, K, u, FqElem::zero(K), true, rep);
    }
    return rep;
}

int plane_genus(const SingularityReport& rep) {
    if (!rep.scan_complete)
        throw std::domain_error("plane genus: incomplete singularity scan (" + rep.note + ")");
    long g = (long)(rep.degree - 1) * (rep.degree - 2) / 2;
    for (auto& p : rep.points) {
        if (!p.ordinary)
            throw std::domain_error("plane genus formula refused: non-ordinary singularity present");
        g -= (long)p.mult * (p.mult - 1) / 2;
    }
    if (g < 0) throw std::logic_error("negative plane genus");
    return (int)g;
}

bool check_plane_automorphism(const BivarPoly& f, int D, const std::array<BivarPoly, 3>& comp,
                              int d) {
    BivarPoly img = subst_projective(f, D, comp, d);
    if (img.is_zero()) return false;
    if (d == 1) {
        // lambda * F comparison
        // find a nonzero reference coefficient
        for (int j = 0; j < f.ny(); ++j)
            for (int i = 0; i < f.nx; ++i)
                if (f.coeff(i, j)) {
                    uint64_t iv = img.coeff(i, j);
                    if (!iv) return false;
                    FqElem lam = FqElem{f.k, iv} / FqElem{f.k, f.coeff(i, j)};
                    return img == f * lam;
                }
        return false;
    }
    return bivar_divides(f, img);
}

} // namespace biell
