#include "escape/factor.hpp"

#include <algorithm>
#include <functional>

namespace escape {

namespace {

// Expand lc * prod (x - rho) over a conjugation-closed multiset of root
// enclosures; coefficients come out as complex boxes whose imaginary parts
// straddle zero for conjugation-closed sets.
std::vector<Box> expand_candidate(const Int& lc, const std::vector<Box>& roots) {
    std::vector<Box> c{Box{RatInterval::point(Rat(lc)), RatInterval::point(Rat(0))}};
    for (const Box& r : roots) {
        std::vector<Box> next(c.size() + 1,
                              Box{RatInterval::point(Rat(0)), RatInterval::point(Rat(0))});
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] = box_add(next[i + 1], c[i]);
            next[i] = box_sub(next[i], box_mul(c[i], r));
        }
        c = std::move(next);
    }
    return c;
}

// Reads off the unique integer polynomial inside box coefficients.
// Result: 1 = got it, 0 = some interval holds no integer (not a factor),
// -1 = ambiguous (intervals too wide, refine and retry).
int round_candidate(const std::vector<Box>& c, IntPoly& out) {
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i].im.contains_zero()) return 0;
        const Rat& lo = c[i].re.lo;
        const Rat& hi = c[i].re.hi;
        Int flo, fhi;
        mpz_cdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        if (flo > fhi) return 0;
        if (fhi > flo) return -1;
        v[i] = flo;
    }
    out = IntPoly(std::move(v));
    return 1;
}

// Factor a squarefree primitive polynomial by clustering its complex roots:
// a subset of roots closed under conjugation spans an integer factor iff the
// expanded product rounds to an integer polynomial that divides exactly.
std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
    std::vector<IntPoly> found;
    IntPoly rem = f.normalized_primitive();
    if (rem.degree() <= 1) {
        if (rem.degree() == 1) found.push_back(rem);
        return found;
    }

    std::vector<ComplexRoot> reals, pairs;
    for (auto& r : isolate_complex_roots(rem)) {
        if (r.real) reals.push_back(r);
        else if (r.im.sign() > 0) pairs.push_back(r);
    }

    Rat w(1, Int(1) << 16);
    auto refine_all = [&]() {
        for (auto& r : reals) r.refine_to(w);
        for (auto& r : pairs) r.refine_to(w);
    };
    refine_all();

    std::vector<char> rigid_used(reals.size(), 0), pair_used(pairs.size(), 0);
    long remaining = rem.degree();

    // Tests one conjugation-closed subset; on success records the factor and
    // marks the roots used.
    auto try_subset = [&](const std::vector<size_t>& rsel,
                          const std::vector<size_t>& psel) -> bool {
        long deg = static_cast<long>(rsel.size() + 2 * psel.size());
        for (int attempt = 0;; ++attempt) {
            if (attempt > 80) throw PrecisionCapExceeded("factor rounding");
            std::vector<Box> roots;
            for (size_t i : rsel) roots.push_back(reals[i].box());
            for (size_t i : psel) {
                Box b = pairs[i].box();
                roots.push_back(b);
                roots.push_back(b.conj());
            }
            IntPoly cand;
            int st = round_candidate(expand_candidate(rem.lc(), roots), cand);
            if (st == 0) return false;
            if (st == 1) {
                cand = cand.normalized_primitive();
                if (cand.is_zero() || cand.degree() != deg || !divides(cand, rem)) return false;
                found.push_back(cand);
                rem = exact_div(rem, cand).normalized_primitive();
                remaining -= deg;
                for (size_t i : rsel) rigid_used[i] = 1;
                for (size_t i : psel) pair_used[i] = 1;
                return true;
            }
            w /= Int(1) << 16;
            refine_all();
        }
    };

    // enumerate k-subsets of pool; calls fn for each; stops when fn returns true
    auto combos = [](const std::vector<size_t>& pool, long k,
                     const std::function<bool(const std::vector<size_t>&)>& fn) -> bool {
        std::vector<size_t> sel;
        std::function<bool(size_t)> rec = [&](size_t start) -> bool {
            if (static_cast<long>(sel.size()) == k) return fn(sel);
            for (size_t i = start; i + (static_cast<size_t>(k) - sel.size()) <= pool.size(); ++i) {
                sel.push_back(pool[i]);
                if (rec(i + 1)) return true;
                sel.pop_back();
            }
            return false;
        };
        return rec(0);
    };

    while (remaining > 0) {
        std::vector<size_t> rfree, pfree;
        for (size_t i = 0; i < reals.size(); ++i)
            if (!rigid_used[i]) rfree.push_back(i);
        for (size_t i = 0; i < pairs.size(); ++i)
            if (!pair_used[i]) pfree.push_back(i);

        bool got = false;
        for (long deg = 1; deg <= remaining && !got; ++deg) {
            for (long pnum = 0; 2 * pnum <= deg && !got; ++pnum) {
                long rnum = deg - 2 * pnum;
                if (rnum > static_cast<long>(rfree.size()) ||
                    pnum > static_cast<long>(pfree.size()))
                    continue;
                got = combos(rfree, rnum, [&](const std::vector<size_t>& rsel) {
                    return combos(pfree, pnum, [&](const std::vector<size_t>& psel) {
                        return try_subset(rsel, psel);
                    });
                });
            }
        }
        if (!got) throw InternalError("factor_squarefree: no factor found (bug)");
    }
    return found;
}

}  // namespace

std::vector<std::pair<IntPoly, int>> factor(const IntPoly& p) {
    if (p.is_zero()) throw EscapeError("factor: zero polynomial");
    if (p.degree() > kFactorDegreeCap)
        throw UnsupportedDegree("factor degree " + std::to_string(p.degree()) +
                                " exceeds cap " + std::to_string(kFactorDegreeCap));
    std::vector<std::pair<IntPoly, int>> out;
    for (auto& [sf, mult] : squarefree_decomposition(p)) {
        for (auto& f : factor_squarefree(sf)) out.emplace_back(f, mult);
    }
    return out;
}

IntPoly min_poly_factor(const IntPoly& p, const ComplexRoot& root) {
    auto factors = factor(p);
    // The factor owning the root keeps intersecting its refining enclosure;
    // every other factor is eventually rejected by interval evaluation.
    Rat w(1, 1024);
    for (int iter = 0; iter < 64; ++iter) {
        Box b = root.refine_to(w);
        std::vector<const IntPoly*> alive;
        for (auto& [f, mult] : factors) {
            Box v = f.eval(b);
            if (v.re.contains_zero() && v.im.contains_zero()) alive.push_back(&f);
        }
        if (alive.size() == 1) return *alive[0];
        if (alive.empty()) throw InternalError("min_poly_factor: lost the root");
        w /= 1024;
    }
    throw PrecisionCapExceeded("min_poly_factor");
}

bool is_irreducible(const IntPoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    auto f = factor(p);
    return f.size() == 1 && f[0].second == 1 && f[0].first.degree() == p.degree();
}

}  // namespace escape
