#pragma once

#include "escape/intpoly.hpp"

#include <memory>
#include <mutex>

namespace escape {

/// Refinable enclosure of one real root of a squarefree integer polynomial.
/// The interval always contains the same root; refinement shrinks it and is
/// cached behind a mutex, so handles are safe to share across threads.
class RootHandle {
public:
    // Caller guarantees: sf squarefree, exactly one root of sf in [lo, hi],
    // and sign(sf(lo)) != sign(sf(hi)) unless an endpoint is the root itself.
    RootHandle(IntPoly sf, Rat lo, Rat hi);
    static RootHandle exact(const Rat& value);

    const IntPoly& poly() const { return st_->poly; }
    RatInterval interval() const;
    // Shrink the enclosure until width <= w; returns the refined interval.
    RatInterval refine_to(const Rat& w) const;
    // Shrink until the enclosure excludes 0 or pins the root to exactly 0.
    int sign() const;
    bool is_exact() const { return st_->exact; }
    Rat exact_value() const { return st_->lo; }  // only when is_exact()

private:
    struct State {
        IntPoly poly;
        Rat lo, hi;
        bool exact = false;  // root == lo == hi (rational root)
        std::mutex m;
    };
    std::shared_ptr<State> st_;
};

/// Sturm chain of a squarefree polynomial; counts roots in intervals exactly.
class SturmChain {
public:
    explicit SturmChain(const IntPoly& squarefree);
    // number of distinct real roots in (a, b]
    int count(const Rat& a, const Rat& b) const;
    int count_all() const;          // all real roots
    int variations_at(const Rat& x) const;
    int variations_at_neg_inf() const;
    int variations_at_pos_inf() const;

private:
    std::vector<IntPoly> chain_;
};

// Cauchy-style bound B with all real (and complex) roots of p inside |z| < B.
Rat root_bound(const IntPoly& p);

// Pairwise-disjoint isolating intervals for the distinct real roots of p
// (square-free part taken internally), sorted increasingly.
std::vector<RootHandle> isolate_real_roots(const IntPoly& p);

/// One distinct complex root of a polynomial: refinable re/im enclosures.
/// Real roots carry a degenerate im = [0,0]; non-real roots come in conjugate
/// pairs (the mirror root is returned explicitly).
struct ComplexRoot {
    RootHandle re;
    RootHandle im;       // for real roots: exact 0
    bool real = false;
    Box box() const { return Box{re.interval(), im.interval()}; }
    Box refine_to(const Rat& w) const {
        return Box{re.refine_to(w), im.refine_to(w)};
    }
};

// All distinct complex roots of p (square-free part taken internally).
// Non-real roots appear in conjugate pairs, the +im representative first.
std::vector<ComplexRoot> isolate_complex_roots(const IntPoly& p);

// Decompose p(x + i y) into real and imaginary bivariate parts (polys in y
// with IntPoly-in-x coefficients).
void complex_parts(const IntPoly& p, BiPoly& re, BiPoly& im);

// Rational lower bound s > 0 such that distinct roots of the squarefree p
// are at distance > s from each other (Mahler-style separation bound).
Rat root_separation_lower_bound(const IntPoly& squarefree);

}  // namespace escape
