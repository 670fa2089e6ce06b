#pragma once

#include "escape/util.hpp"

#include <optional>

namespace escape {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored dense, lowest degree first.  The zero polynomial has an empty
/// coefficient vector.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(Int v) { return v == 0 ? IntPoly() : IntPoly({std::move(v)}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }
    // c0 + c1 x + ... from an initializer of longs, for tests and literals
    static IntPoly of(std::initializer_list<long> cs) {
        std::vector<Int> v;
        for (long x : cs) v.emplace_back(x);
        return IntPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero poly
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& operator[](size_t i) const { return c_[i]; }
    const Int& lc() const { return c_.back(); }
    Int height() const;
    std::int64_t coeff_bitsize() const { return bitsize(height()); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& k) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    IntPoly derivative() const;
    IntPoly shifted(long k) const;  // multiply by x^k

    Int content() const;                       // gcd of coefficients, >= 0 (0 for zero poly)
    IntPoly primitive_part() const;            // content removed, sign of lc preserved
    IntPoly normalized_primitive() const;      // primitive with positive leading coefficient

    // Exact evaluation.
    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    // Sign of p(a/b) computed with integer arithmetic only.
    int sign_at(const Rat& x) const;
    // Interval evaluation (Horner with outward rational arithmetic).
    RatInterval eval(const RatInterval& x) const;
    Box eval(const Box& z) const;  // complex box evaluation

    // p(x) -> p(x * num/den) cleared to integer coefficients (primitive not taken).
    IntPoly scale_arg(const Rat& s) const;
    // p(x) -> p(x + t) cleared to integer coefficients.
    IntPoly shift_arg(const Rat& t) const;
    // p(x) -> x^deg * p(1/x) (coefficient reversal)
    IntPoly reversed() const;
    // p(x) -> q(x) with q(x^1) = p applied to x^2, i.e. substitute x := x^2
    IntPoly compose_square() const;

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// quotient/remainder of lc(b)^(deg a - deg b + 1) * a = q*b + r  (pseudo-division)
void pseudo_divrem(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);
// exact division; throws InternalError if not divisible
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);

IntPoly gcd(const IntPoly& a, const IntPoly& b);  // primitive, positive lc
IntPoly squarefree_part(const IntPoly& p);        // primitive, positive lc

// Yun's algorithm: returns list of (factor, multiplicity) with factors
// squarefree, pairwise coprime, primitive, positive lc; product of
// factor^multiplicity equals p up to a rational constant.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// Resultant of a and b (up to sign; we only ever use the root set / zero test).
Int resultant(const IntPoly& a, const IntPoly& b);

// ---- rational-coefficient polynomials (dense, lowest degree first) ----
using QPoly = std::vector<Rat>;

void qtrim(QPoly& p);
bool qis_zero(const QPoly& p);
long qdegree(const QPoly& p);
QPoly qadd(const QPoly& a, const QPoly& b);
QPoly qsub(const QPoly& a, const QPoly& b);
QPoly qmul(const QPoly& a, const QPoly& b);
QPoly qscale(const QPoly& a, const Rat& k);
QPoly qmod(const QPoly& a, const QPoly& m);             // remainder, m monic-izable
void qdivrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qmonic(const QPoly& a);
Rat qeval(const QPoly& p, const Rat& x);
RatInterval qeval(const QPoly& p, const RatInterval& x);
QPoly q_from_int(const IntPoly& p);
// clears denominators, returns primitive integer polynomial with positive lc
IntPoly q_clear_denominators(const QPoly& p);
// extended gcd: g = gcd(a,b) monic, with g = u*a + v*b
QPoly qgcd_ext(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v);
QPoly qgcd(const QPoly& a, const QPoly& b);

// ---- bivariate helpers (polynomials in y whose coefficients are IntPoly in x) ----
using BiPoly = std::vector<IntPoly>;  // lowest y-degree first

BiPoly bi_add(const BiPoly& a, const BiPoly& b);
BiPoly bi_mul(const BiPoly& a, const BiPoly& b);
void bi_trim(BiPoly& p);
long bi_degree(const BiPoly& p);
// resultant with respect to y: eliminates y, returns polynomial in x (up to sign)
IntPoly resultant_y(const BiPoly& a, const BiPoly& b);

}  // namespace escape
