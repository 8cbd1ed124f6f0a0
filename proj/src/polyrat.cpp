#include "biell/polyrat.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace biell {

Poly Poly::monomial(FqElem a, int deg) {
    Poly p(a.k);
    if (a.v) {
        p.c.assign(deg + 1, 0);
        p.c[deg] = a.v;
    }
    return p;
}

Poly Poly::operator+(const Poly& b) const {
    if (k != b.k) throw std::invalid_argument("poly contexts differ");
    Poly r(k);
    r.c.resize(std::max(c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] ^= b.c[i];
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& b) const {
    if (k != b.k) throw std::invalid_argument("poly contexts differ");
    if (is_zero() || b.is_zero()) return zero(k);
    Poly r(k);
    r.c.assign(c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j]) r.c[i + j] ^= k->mul(c[i], b.c[j]);
        }
    }
    r.trim();
    return r;
}

Poly Poly::operator*(FqElem s) const {
    if (k != s.k) throw std::invalid_argument("poly/scalar contexts differ");
    if (s.v == 0) return zero(k);
    Poly r(k);
    r.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = k->mul(c[i], s.v);
    return r;
}

Poly Poly::shifted(int n) const {
    if (is_zero()) return *this;
    Poly r(k);
    r.c.assign(c.size() + n, 0);
    std::copy(c.begin(), c.end(), r.c.begin() + n);
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q(k), r = *this;
    if (deg() >= b.deg()) q.c.assign(deg() - b.deg() + 1, 0);
    uint64_t linv = k->inv(b.c.back());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int d = r.deg() - b.deg();
        uint64_t f = k->mul(r.c.back(), linv);
        q.c[d] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[i + d] ^= k->mul(f, b.c[i]);
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::operator/(const Poly& b) const {
    auto [q, r] = divrem(b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * FqElem{k, k->inv(c.back())};
}

Poly Poly::derivative() const {
    Poly r(k);
    if (deg() < 1) return r;
    r.c.assign(c.size() - 1, 0);
    for (size_t i = 1; i < c.size(); i += 2) r.c[i - 1] = c[i];   // char 2
    r.trim();
    return r;
}

std::optional<Poly> Poly::sqrt() const {
    Poly r(k);
    if (is_zero()) return r;
    r.c.assign(deg() / 2 + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        if (i & 1) return std::nullopt;
        r.c[i / 2] = k->sqrt(c[i]);
    }
    r.trim();
    return r;
}

FqElem Poly::eval(FqElem a) const {
    uint64_t acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = k->mul(acc, a.v) ^ c[i];
    return {k, acc};
}

Poly Poly::compose(const Poly& g) const {
    Poly acc(k);
    for (size_t i = c.size(); i-- > 0;) acc = acc * g + constant({k, c[i]});
    return acc;
}

Poly Poly::embed(FieldRef target) const {
    Poly r(target);
    r.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = FqElem{k, c[i]}.embed(target).v;
    return r;
}

Poly Poly::frobenius() const {
    Poly r(k);
    r.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = k->sqr(c[i]);
    return r;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        if (!c[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (c[i] != 1 || i == 0) os << k->elem_str(c[i]);
        if (c[i] != 1 && i > 0) os << "*";
        if (i > 1) os << var << "^" << i;
        else if (i == 1) os << var;
    }
    return os.str();
}

Poly Poly::parse(FieldRef k, const std::string& s, const std::string& var) {
    Poly r(k);
    std::string t;
    for (char ch : s)
        if (!isspace((unsigned char)ch)) t += ch;
    size_t pos = 0;
    while (pos < t.size()) {
        size_t next = t.find('+', pos);
        std::string term = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? t.size() : next + 1;
        if (term.empty()) continue;
        uint64_t coef = 1;
        int deg = 0;
        size_t vp = term.find(var);
        std::string cpart = vp == std::string::npos ? term : term.substr(0, vp);
        if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
        if (!cpart.empty()) coef = k->parse_elem(cpart);
        if (vp != std::string::npos) {
            std::string rest = term.substr(vp + var.size());
            deg = rest.empty() ? 1 : (rest[0] == '^' ? std::stoi(rest.substr(1)) : 1);
        }
        if ((int)r.c.size() <= deg) r.c.resize(deg + 1, 0);
        r.c[deg] ^= coef;
    }
    r.trim();
    return r;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

void egcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v) {
    FieldRef k = a.k;
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(k), u1 = Poly::zero(k);
    Poly v0 = Poly::zero(k), v1 = Poly::one(k);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        Poly nu = u0 + q * u1, nv = v0 + q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(nu);
        v0 = std::move(v1); v1 = std::move(nv);
    }
    if (!r0.is_zero()) {
        FqElem s{k, k->inv(r0.lead().v)};
        r0 = r0 * s; u0 = u0 * s; v0 = v0 * s;
    }
    g = r0; u = u0; v = v0;
}

RatFun::RatFun(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den = Poly::one(num.k);
        return;
    }
    Poly g = gcd(num, den);
    if (g.deg() > 0) {
        num = num / g;
        den = den / g;
    }
    FqElem linv{num.k, num.k->inv(den.lead().v)};
    num = num * linv;
    den = den * linv;
}

RatFun RatFun::operator+(const RatFun& b) const {
    return RatFun(num * b.den + b.num * den, den * b.den);
}

RatFun RatFun::operator*(const RatFun& b) const {
    return RatFun(num * b.num, den * b.den);
}

RatFun RatFun::operator*(FqElem s) const { return RatFun(num * s, den); }

RatFun RatFun::inv() const {
    if (is_zero()) throw std::domain_error("inversion of zero rational function");
    return RatFun(den, num);
}

RatFun RatFun::derivative() const {
    return RatFun(num.derivative() * den + num * den.derivative(), den * den);
}

std::optional<RatFun> RatFun::sqrt() const {
    // gcd(num,den)=1, so f is a square iff both parts are
    auto sn = num.sqrt(), sd = den.sqrt();
    if (!sn || !sd) return std::nullopt;
    return RatFun(*sn, *sd);
}

std::optional<FqElem> RatFun::eval(FqElem a) const {
    FqElem d = den.eval(a);
    if (d.is_zero()) return std::nullopt;
    return num.eval(a) / d;
}

RatFun RatFun::compose(const RatFun& g) const {
    // Horner over K(x); pad with den(g) powers to stay exact
    FieldRef k = num.k;
    int dn = num.deg(), dd = den.deg();
    int d = std::max(dn, dd);
    // numerator(g) and denominator(g) as num(g)/den(g)^deg
    auto eval_poly = [&](const Poly& p) {
        Poly acc = Poly::zero(k), gp = Poly::one(k);
        // sum p_i * gnum^i * gden^(d-i)
        std::vector<Poly> gnum_pow(d + 1), gden_pow(d + 1);
        gnum_pow[0] = gden_pow[0] = Poly::one(k);
        for (int i = 1; i <= d; ++i) {
            gnum_pow[i] = gnum_pow[i - 1] * g.num;
            gden_pow[i] = gden_pow[i - 1] * g.den;
        }
        for (int i = 0; i <= p.deg(); ++i) {
            if (!p.c[i]) continue;
            acc = acc + gnum_pow[i] * gden_pow[d - i] * FqElem{k, p.c[i]};
        }
        (void)gp;
        return acc;
    };
    return RatFun(eval_poly(num), eval_poly(den));
}

RatFun RatFun::embed(FieldRef target) const {
    return RatFun(num.embed(target), den.embed(target));
}

int RatFun::v_pi(const Poly& pi) const {
    if (is_zero()) throw std::domain_error("valuation of zero");
    auto count = [&](Poly p) {
        int n = 0;
        while (true) {
            auto [q, r] = p.divrem(pi);
            if (!r.is_zero()) return n;
            p = q;
            ++n;
        }
    };
    return count(num) - count(den);
}

int RatFun::v_inf() const {
    if (is_zero()) throw std::domain_error("valuation of zero");
    return den.deg() - num.deg();
}

std::string RatFun::str(const std::string& var) const {
    if (den.deg() == 0) return num.str(var);
    return "(" + num.str(var) + ")/(" + den.str(var) + ")";
}

namespace {

// x^(2^bits) mod f, by repeated squaring of the residue
Poly frob_power_of_x(const Poly& f, int bits) {
    Poly t = Poly::x(f.k) % f;
    for (int i = 0; i < bits; ++i) t = (t * t) % f;
    return t;
}

std::mt19937_64& rng() {
    static std::mt19937_64 r(0x5eedbeefULL);
    return r;
}

// split a product of linear factors over K into roots
void split_linear(const Poly& f, FieldRef K, std::vector<FqElem>& out) {
    if (f.deg() <= 0) return;
    if (f.deg() == 1) {
        out.push_back(FqElem{K, f.c[0]} / FqElem{K, f.c[1]});
        return;
    }
    int M = K->m;
    while (true) {
        uint64_t r = rng()() & K->order_minus_one();
        if (!r) continue;
        // trace polynomial of r*x mod f
        Poly rx = (Poly::x(K) * FqElem{K, r}) % f;
        Poly acc = rx, t = rx;
        for (int i = 1; i < M; ++i) {
            t = (t * t) % f;
            acc = acc + t;
        }
        Poly g = gcd(acc, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            split_linear(g, K, out);
            split_linear(f / g, K, out);
            return;
        }
    }
}

} // namespace

Poly radical(const Poly& f) {
    if (f.deg() < 1) return f.monic();
    Poly d = f.derivative();
    if (d.is_zero()) return radical(*f.sqrt());
    Poly g = gcd(f, d);
    if (g.deg() == 0) return f.monic();
    Poly odd = f / g;              // factors of odd multiplicity, each once
    Poly rest = radical(g);
    return (odd * (rest / gcd(odd, rest))).monic();
}

std::vector<FqElem> roots_in(const Poly& f, FieldRef K) {
    std::vector<FqElem> out;
    Poly g = f.k == K ? f : f.embed(K);
    if (g.deg() < 1) return out;
    g = radical(g);
    Poly xq = frob_power_of_x(g, K->m);
    Poly lin = gcd(xq + Poly::x(K), g);
    split_linear(lin, K, out);
    std::sort(out.begin(), out.end(), [](FqElem a, FqElem b) { return a.v < b.v; });
    return out;
}

namespace {

// distinct-degree then equal-degree factorization of a squarefree monic f
void factor_squarefree(Poly f, std::vector<Poly>& out) {
    FieldRef k = f.k;
    Poly h = Poly::x(k) % f;
    int d = 0;
    while (f.deg() > 0) {
        ++d;
        if (f.deg() < 2 * d) {
            out.push_back(f.monic());
            break;
        }
        for (int i = 0; i < k->m; ++i) h = (h * h) % f;
        Poly g = gcd(h + Poly::x(k), f);
        if (g.deg() > 0) {
            // equal-degree split of g into irreducibles of degree d
            std::vector<Poly> stack{g};
            while (!stack.empty()) {
                Poly cur = stack.back();
                stack.pop_back();
                if (cur.deg() == d) {
                    out.push_back(cur.monic());
                    continue;
                }
                // char-2 EDF: gcd with trace polynomial of a random element
                while (true) {
                    Poly r(k);
                    r.c.resize(cur.deg());
                    for (auto& cc : r.c) cc = rng()() & k->order_minus_one();
                    r.trim();
                    if (r.is_zero()) continue;
                    Poly acc = r % cur, t = acc;
                    for (int i = 1; i < k->m * d; ++i) {
                        t = (t * t) % cur;
                        acc = acc + t;
                    }
                    Poly s = gcd(acc, cur);
                    if (s.deg() > 0 && s.deg() < cur.deg()) {
                        stack.push_back(s);
                        stack.push_back(cur / s);
                        break;
                    }
                }
            }
            f = f / g;
            h = h % f;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factorize(const Poly& f) {
    std::vector<std::pair<Poly, int>> out;
    if (f.deg() < 1) return out;
    // squarefree decomposition, char 2
    struct Part { Poly p; int mult; };
    std::vector<Part> parts{{f.monic(), 1}};
    std::vector<Poly> sqfree;
    std::vector<int> mults;
    while (!parts.empty()) {
        auto [p, mult] = parts.back();
        parts.pop_back();
        if (p.deg() < 1) continue;
        Poly d = p.derivative();
        if (d.is_zero()) {
            parts.push_back({*p.sqrt(), 2 * mult});
            continue;
        }
        Poly g = gcd(p, d);
        Poly w = p / g;                       // squarefree part
        sqfree.push_back(w);
        mults.push_back(mult);
        if (g.deg() >= 1) parts.push_back({g, mult});
    }
    // collect with multiplicities
    std::vector<std::pair<Poly, int>> found;
    for (size_t i = 0; i < sqfree.size(); ++i) {
        std::vector<Poly> irr;
        factor_squarefree(sqfree[i], irr);
        for (auto& p : irr) {
            bool merged = false;
            for (auto& [q, m] : found)
                if (q == p) { m += mults[i]; merged = true; break; }
            if (!merged) found.push_back({p, mults[i]});
        }
    }
    // recompute exact multiplicities (the sqfree bookkeeping above undercounts
    // when a factor appears in several layers)
    for (auto& [p, m] : found) {
        m = 0;
        Poly t = f;
        while (true) {
            auto [q, r] = t.divrem(p);
            if (!r.is_zero()) break;
            t = q;
            ++m;
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        return a.first.c < b.first.c;
    });
    return found;
}

Poly Residue::inv(const Poly& a) const {
    Poly g, u, v;
    egcd(a % pi, pi, g, u, v);
    if (g.deg() != 0) throw std::domain_error("residue inversion of a zero divisor");
    return (u * FqElem{g.k, g.k->inv(g.c[0])}) % pi;
}

Poly Residue::sqrt(const Poly& a) const {
    Poly t = a % pi;
    for (int i = 0; i < ext_bits() - 1; ++i) t = (t * t) % pi;
    return t;
}

int Residue::trace01(const Poly& a) const {
    Poly t = a % pi, acc = t;
    for (int i = 1; i < ext_bits(); ++i) {
        t = (t * t) % pi;
        acc = acc + t;
    }
    if (acc.deg() > 0) throw std::logic_error("residue trace not scalar");
    if (acc.is_zero()) return 0;
    if (acc.c[0] == 1) return 1;
    throw std::logic_error("residue trace not in GF(2)");
}

} // namespace biell
