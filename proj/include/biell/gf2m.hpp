#ifndef BIELL_GF2M_HPP
#define BIELL_GF2M_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace biell {

class FieldCtx;
using FieldRef = const FieldCtx*;

/// A binary field GF(2^m) given by an explicit primitive defining polynomial.
///
/// Contexts are interned: FieldCtx::get returns the same pointer for the same
/// (m, poly) pair, so FqElem can compare contexts by pointer. A context is
/// immutable after construction; all lookup tables are built in the
/// constructor, so sharing across threads needs no synchronization.
class FieldCtx {
public:
    int m;              // extension degree over GF(2), 2 <= m <= 48
    uint64_t poly;      // defining polynomial bitmask, bit i = coeff of x^i

    /// Field with the default primitive polynomial for this degree.
    static FieldRef get(int m);
    /// Field with an explicit defining polynomial (must be primitive).
    static FieldRef get(int m, uint64_t poly);
    /// Parse "gf2^<m>[:<hex poly>]", e.g. "gf2^4:0x13".
    static FieldRef parse(const std::string& spec);

    std::string spec() const;
    uint64_t order_minus_one() const { return (uint64_t(1) << m) - 1; }

    // arithmetic on raw bit representations
    uint64_t add(uint64_t a, uint64_t b) const { return a ^ b; }
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t sqr(uint64_t a) const { return mul(a, a); }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const;
    uint64_t sqrt(uint64_t a) const;       // unique root, the field is perfect
    int trace(uint64_t a) const;           // absolute trace to GF(2)
    /// Solve z^2 + z = u; returns true and sets z when trace(u) == 0.
    bool solve_artin_schreier(uint64_t u, uint64_t& z) const;

    /// Discrete log base the residue of x (only for m <= 20, else throws).
    int log(uint64_t a) const;
    uint64_t exp_of(uint64_t k) const;     // x^k

    std::string elem_str(uint64_t a) const;        // "0", "1", "mu^k"
    uint64_t parse_elem(const std::string& s) const;

private:
    FieldCtx(int m, uint64_t poly);
    void build_tables();

    std::vector<uint16_t> log_table_;      // m <= 16
    std::vector<uint64_t> exp_table_;
    std::vector<uint64_t> as_solve_;       // column images for z^2+z solver
    std::vector<uint64_t> as_pivot_;
};

/// Element of GF(2^m). Plain value type: 16 bytes, trivially copyable.
struct FqElem {
    FieldRef k = nullptr;
    uint64_t v = 0;

    FqElem() = default;
    FqElem(FieldRef k, uint64_t v) : k(k), v(v) {}

    static FqElem zero(FieldRef k) { return {k, 0}; }
    static FqElem one(FieldRef k) { return {k, 1}; }
    static FqElem gen(FieldRef k) { return {k, 2}; }   // the residue of x, "mu"

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }

    FqElem operator+(FqElem b) const;
    FqElem& operator+=(FqElem b) { *this = *this + b; return *this; }
    FqElem operator*(FqElem b) const;
    FqElem& operator*=(FqElem b) { *this = *this * b; return *this; }
    FqElem operator/(FqElem b) const;
    bool operator==(FqElem b) const { return k == b.k && v == b.v; }
    bool operator!=(FqElem b) const { return !(*this == b); }

    FqElem inv() const;
    FqElem pow(uint64_t e) const { return {k, k->pow(v, e)}; }
    FqElem sqr() const { return {k, k->sqr(v)}; }
    FqElem sqrt() const { return {k, k->sqrt(v)}; }
    int trace() const { return k->trace(v); }
    uint64_t mult_order() const;

    /// Image under the cached canonical embedding into `target`
    /// (requires k->m | target->m).
    FqElem embed(FieldRef target) const;

    std::string str() const { return k->elem_str(v); }
};

/// Canonical embedding map GF(2^a) -> GF(2^b); cached per context pair.
const std::vector<uint64_t>& embedding_powers(FieldRef src, FieldRef dst);

} // namespace biell

#endif
