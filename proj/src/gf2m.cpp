#include "biell/gf2m.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace biell {

namespace {

// carry-less multiply then reduce; fine up to m = 48 (product fits 95 bits)
uint64_t clmul_reduce(uint64_t a, uint64_t b, uint64_t poly, int m) {
    unsigned __int128 acc = 0;
    while (b) {
        int i = __builtin_ctzll(b);
        acc ^= (unsigned __int128)a << i;
        b &= b - 1;
    }
    for (int bit = 2 * m - 2; bit >= m; --bit) {
        if ((acc >> bit) & 1) acc ^= (unsigned __int128)poly << (bit - m);
    }
    return (uint64_t)acc;
}

bool is_irreducible(uint64_t poly, int m) {
    // x^(2^m) == x mod poly, and x^(2^(m/p)) != x for prime p | m
    auto frob = [&](uint64_t a) { return clmul_reduce(a, a, poly, m); };
    auto frob_iter = [&](int k) {
        uint64_t t = 2;                    // the residue of x
        for (int i = 0; i < k; ++i) t = frob(t);
        return t;
    };
    if (frob_iter(m) != 2) return false;
    for (int p = 2; p <= m; ++p) {
        if (m % p) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        uint64_t t = frob_iter(m / p);
        uint64_t g = t ^ 2, f = poly;      // gcd(x^(2^(m/p)) - x, poly)
        // poly is monic of degree m; g has degree < m
        while (g) {
            // f mod g
            int dg = 63 - __builtin_clzll(g);
            int df = f ? 63 - __builtin_clzll(f) : -1;
            while (df >= dg) {
                f ^= g << (df - dg);
                df = f ? 63 - __builtin_clzll(f) : -1;
            }
            std::swap(f, g);
        }
        if (f != 1) return false;
    }
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

bool is_primitive(uint64_t poly, int m) {
    uint64_t n = (uint64_t(1) << m) - 1;
    for (uint64_t p : prime_factors(n)) {
        // x^(n/p) must differ from 1
        uint64_t e = n / p, acc = 1, base = 2;
        while (e) {
            if (e & 1) acc = clmul_reduce(acc, base, poly, m);
            base = clmul_reduce(base, base, poly, m);
            e >>= 1;
        }
        if (acc == 1) return false;
    }
    return true;
}

uint64_t default_poly(int m) {
    switch (m) {                    // fixed defaults, overridable per context
        case 2: return 0x7;         // x^2+x+1
        case 3: return 0xB;         // x^3+x+1
        case 4: return 0x13;        // x^4+x+1
        case 8: return 0x11D;       // x^8+x^4+x^3+x^2+1
        default: break;
    }
    for (uint64_t p = (uint64_t(1) << m) | 1; p < (uint64_t(1) << (m + 1)); p += 2) {
        if (is_irreducible(p, m) && is_primitive(p, m)) return p;
    }
    throw std::runtime_error("no primitive polynomial found for m=" + std::to_string(m));
}

std::map<std::pair<int, uint64_t>, FieldCtx*>& registry() {
    static std::map<std::pair<int, uint64_t>, FieldCtx*> r;
    return r;
}
std::mutex& registry_mutex() {
    static std::mutex mu;
    return mu;
}

} // namespace

FieldCtx::FieldCtx(int m, uint64_t poly) : m(m), poly(poly) {
    if (m < 2 || m > 48) throw std::invalid_argument("field degree out of range: m=" + std::to_string(m));
    if ((poly >> m) != 1) throw std::invalid_argument("defining polynomial must be monic of degree m");
    if (!is_irreducible(poly, m)) throw std::invalid_argument("defining polynomial is reducible");
    if (!is_primitive(poly, m)) throw std::invalid_argument("defining polynomial is not primitive");
    build_tables();
}

void FieldCtx::build_tables() {
    if (m <= 16) {
        uint64_t n = order_minus_one();
        exp_table_.resize(n);
        log_table_.assign(n + 1, 0);
        uint64_t a = 1;
        for (uint64_t i = 0; i < n; ++i) {
            exp_table_[i] = a;
            log_table_[a] = (uint16_t)i;
            a = clmul_reduce(a, 2, poly, m);
        }
    }
    // basis solve for z^2+z = u: column j is (e_j^2 + e_j) with e_j = x^j
    as_solve_.assign(m, 0);
    as_pivot_.assign(m, 0);
    std::vector<uint64_t> img(m), pre(m);
    for (int j = 0; j < m; ++j) {
        uint64_t e = uint64_t(1) << j;
        img[j] = clmul_reduce(e, e, poly, m) ^ e;
        pre[j] = e;
    }
    // Gaussian elimination into row-echelon form over GF(2)
    int row = 0;
    for (int bit = 0; bit < m && row < m; ++bit) {
        int p = -1;
        for (int j = row; j < m; ++j)
            if ((img[j] >> bit) & 1) { p = j; break; }
        if (p < 0) continue;
        std::swap(img[row], img[p]);
        std::swap(pre[row], pre[p]);
        for (int j = 0; j < m; ++j) {
            if (j != row && ((img[j] >> bit) & 1)) {
                img[j] ^= img[row];
                pre[j] ^= pre[row];
            }
        }
        as_solve_[row] = pre[row];
        as_pivot_[row] = uint64_t(1) << bit;
        ++row;
    }
    as_solve_.resize(row);
    as_pivot_.resize(row);
}

FieldRef FieldCtx::get(int m) { return get(m, default_poly(m)); }

FieldRef FieldCtx::get(int m, uint64_t poly) {
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto& r = registry();
    auto it = r.find({m, poly});
    if (it != r.end()) return it->second;
    FieldCtx* ctx = new FieldCtx(m, poly);   // interned for process lifetime
    r[{m, poly}] = ctx;
    return ctx;
}

FieldRef FieldCtx::parse(const std::string& spec) {
    if (spec.rfind("gf2^", 0) != 0) throw std::invalid_argument("bad field spec: " + spec);
    size_t colon = spec.find(':');
    int m = std::stoi(spec.substr(4, colon == std::string::npos ? std::string::npos : colon - 4));
    if (colon == std::string::npos) return get(m);
    return get(m, std::stoull(spec.substr(colon + 1), nullptr, 16));
}

std::string FieldCtx::spec() const {
    std::ostringstream os;
    os << "gf2^" << m << ":0x" << std::hex << poly;
    return os.str();
}

uint64_t FieldCtx::mul(uint64_t a, uint64_t b) const {
    if (!a || !b) return 0;
    if (!exp_table_.empty()) {
        uint64_t n = order_minus_one();
        uint64_t s = log_table_[a] + log_table_[b];
        if (s >= n) s -= n;
        return exp_table_[s];
    }
    return clmul_reduce(a, b, poly, m);
}

uint64_t FieldCtx::pow(uint64_t a, uint64_t e) const {
    uint64_t acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

uint64_t FieldCtx::inv(uint64_t a) const {
    if (!a) throw std::domain_error("inversion of zero field element");
    if (!exp_table_.empty()) {
        uint64_t n = order_minus_one();
        uint64_t l = log_table_[a];
        return exp_table_[l ? n - l : 0];
    }
    return pow(a, order_minus_one() - 1);
}

uint64_t FieldCtx::sqrt(uint64_t a) const {
    return pow(a, uint64_t(1) << (m - 1));
}

int FieldCtx::trace(uint64_t a) const {
    uint64_t t = 0, f = a;
    for (int i = 0; i < m; ++i) {
        t ^= f;
        f = sqr(f);
    }
    return (int)(t & 1);   // trace lands in GF(2), i.e. in {0,1}
}

bool FieldCtx::solve_artin_schreier(uint64_t u, uint64_t& z) const {
    if (trace(u)) return false;
    uint64_t acc = 0, r = u;
    for (size_t row = 0; row < as_pivot_.size(); ++row) {
        if (r & as_pivot_[row]) {
            acc ^= as_solve_[row];
            uint64_t e = as_solve_[row];
            r ^= sqr(e) ^ e;
        }
    }
    if (sqr(acc) ^ acc ^ u) throw std::logic_error("artin-schreier solver inconsistency");
    z = acc;
    return true;
}

int FieldCtx::log(uint64_t a) const {
    if (!a) throw std::domain_error("log of zero");
    if (exp_table_.empty()) throw std::domain_error("discrete log table unavailable for m=" + std::to_string(m));
    return (int)log_table_[a];
}

uint64_t FieldCtx::exp_of(uint64_t k) const {
    if (exp_table_.empty()) return pow(2, k);
    return exp_table_[k % order_minus_one()];
}

std::string FieldCtx::elem_str(uint64_t a) const {
    if (a == 0) return "0";
    if (a == 1) return "1";
    if (m <= 16) {
        int l = log(a);
        return l == 1 ? "mu" : "mu^" + std::to_string(l);
    }
    std::ostringstream os;
    os << "0x" << std::hex << a;
    return os.str();
}

uint64_t FieldCtx::parse_elem(const std::string& s) const {
    if (s == "0") return 0;
    if (s == "1") return 1;
    if (s == "mu") return 2;
    if (s.rfind("mu^", 0) == 0) return exp_of(std::stoull(s.substr(3)));
    if (s.rfind("0x", 0) == 0) return std::stoull(s, nullptr, 16);
    throw std::invalid_argument("cannot parse field element: " + s);
}

static void check_same(FieldRef a, FieldRef b) {
    if (a != b) throw std::invalid_argument("field elements from different contexts");
}

FqElem FqElem::operator+(FqElem b) const {
    check_same(k, b.k);
    return {k, v ^ b.v};
}
FqElem FqElem::operator*(FqElem b) const {
    check_same(k, b.k);
    return {k, k->mul(v, b.v)};
}
FqElem FqElem::operator/(FqElem b) const {
    check_same(k, b.k);
    return {k, k->mul(v, k->inv(b.v))};
}
FqElem FqElem::inv() const { return {k, k->inv(v)}; }

uint64_t FqElem::mult_order() const {
    if (!v) throw std::domain_error("order of zero");
    uint64_t n = k->order_minus_one(), ord = n;
    for (uint64_t p : prime_factors(n)) {
        while (ord % p == 0 && k->pow(v, ord / p) == 1) ord /= p;
    }
    return ord;
}

const std::vector<uint64_t>& embedding_powers(FieldRef src, FieldRef dst) {
    static std::map<std::pair<FieldRef, FieldRef>, std::vector<uint64_t>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({src, dst});
    if (it != cache.end()) return it->second;
    if (dst->m % src->m != 0)
        throw std::invalid_argument("no embedding gf2^" + std::to_string(src->m) +
                                    " -> gf2^" + std::to_string(dst->m));
    // roots of the source polynomial lie in the subfield of size 2^src->m;
    // enumerate that subfield through a generator and keep the smallest root
    uint64_t sub_order = (uint64_t(1) << src->m) - 1;
    uint64_t g = dst->pow(2, dst->order_minus_one() / sub_order);
    uint64_t best = 0;
    bool found = false;
    uint64_t cand = 1;
    for (uint64_t i = 0; i < sub_order; ++i) {
        // evaluate src->poly at cand over dst (coefficients are 0/1)
        uint64_t acc = 0;
        for (int d = src->m; d >= 0; --d) {
            acc = dst->mul(acc, cand);
            if ((src->poly >> d) & 1) acc ^= 1;
        }
        if (acc == 0 && (!found || cand < best)) {
            best = cand;
            found = true;
        }
        cand = dst->mul(cand, g);
    }
    if (!found) throw std::logic_error("embedding root not found");
    std::vector<uint64_t> powers(src->m);
    uint64_t p = 1;
    for (int i = 0; i < src->m; ++i) {
        powers[i] = p;
        p = dst->mul(p, best);
    }
    return cache[{src, dst}] = std::move(powers);
}

FqElem FqElem::embed(FieldRef target) const {
    if (target == k) return *this;
    const auto& powers = embedding_powers(k, target);
    uint64_t acc = 0, a = v;
    while (a) {
        int i = __builtin_ctzll(a);
        acc ^= powers[i];
        a &= a - 1;
    }
    return {target, acc};
}

} // namespace biell
