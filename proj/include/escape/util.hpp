#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace escape {

using Int = mpz_class;
using Rat = mpq_class;

struct EscapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : EscapeError { DivisionByZero() : EscapeError("division by zero") {} };
struct NotReal : EscapeError { NotReal() : EscapeError("operand has nonzero imaginary part") {} };
struct UnsupportedDegree : EscapeError {
    explicit UnsupportedDegree(const std::string& m) : EscapeError("unsupported degree: " + m) {}
};
struct PrecisionCapExceeded : EscapeError {
    explicit PrecisionCapExceeded(const std::string& m)
        : EscapeError("precision cap exceeded (internal bug or cap too low): " + m) {}
};
struct InternalError : EscapeError {
    explicit InternalError(const std::string& m) : EscapeError("internal error: " + m) {}
};

// Global refinement cap in bits.  Exact sign queries on nonzero values always
// terminate in theory; hitting the cap means a bug (or a genuinely undecidable
// transcendental tie in magnitude comparisons) and is reported, never guessed.
std::int64_t precision_cap_bits();
void set_precision_cap_bits(std::int64_t bits);

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

// bitsize(c) = floor(log2(max(|c|,1))) + 1.  bitsize(0) = 1.
inline std::int64_t bitsize(const Int& x) {
    if (x == 0) return 1;
    return static_cast<std::int64_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
}
// For rationals: max of numerator and denominator bitsize.
inline std::int64_t bitsize(const Rat& x) {
    return std::max(bitsize(Int(x.get_num())), bitsize(Int(x.get_den())));
}

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}
inline Rat rat_pow(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), a);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw DivisionByZero();
        r = 1 / r;
    }
    return r;
}
inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Parses "p/q" or "p" (decimal integers, optional sign).
Rat parse_rat(const std::string& s);
std::string format_rat(const Rat& x);  // "p/q", "/q" omitted when q == 1

// Closed interval with rational endpoints, lo <= hi.
struct RatInterval {
    Rat lo, hi;
    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {}
    static RatInterval point(const Rat& x) { return RatInterval(x, x); }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    // Known sign of every point in the interval; 0 if the interval straddles 0.
    int known_sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }
    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator*(const RatInterval& o) const;
    RatInterval operator-() const { return {-hi, -lo}; }
    RatInterval sq() const;  // tight enclosure of x^2
};

RatInterval interval_union(const RatInterval& a, const RatInterval& b);
bool intervals_disjoint(const RatInterval& a, const RatInterval& b);

// Complex box = re x im rectangle; im degenerate [0,0] for real enclosures.
struct Box {
    RatInterval re, im;
    bool is_real() const { return im.lo == 0 && im.hi == 0; }
    Box conj() const { return {re, {-im.hi, -im.lo}}; }
};

Box box_add(const Box& a, const Box& b);
Box box_sub(const Box& a, const Box& b);
Box box_mul(const Box& a, const Box& b);
Box box_div(const Box& a, const Box& b);  // requires 0 not in |b| range

}  // namespace escape
