#include "escape/roots.hpp"

#include <algorithm>

namespace escape {

RootHandle::RootHandle(IntPoly sf, Rat lo, Rat hi) {
    st_ = std::make_shared<State>();
    st_->poly = std::move(sf);
    st_->lo = std::move(lo);
    st_->hi = std::move(hi);
    if (st_->lo == st_->hi) {
        st_->exact = true;
        return;
    }
    // The tracked root is strictly interior.  If an endpoint happens to be a
    // different root of the polynomial, nudge it inward until both endpoint
    // signs are nonzero and differ (which certifies the root stayed inside).
    int slo = st_->poly.sign_at(st_->lo);
    int shi = st_->poly.sign_at(st_->hi);
    if (slo == 0 || shi == 0 || slo == shi) {
        Rat w = st_->hi - st_->lo;
        Rat lo0 = st_->lo, hi0 = st_->hi;
        for (int k = 2;; ++k) {
            if (k > 256) throw InternalError("RootHandle: endpoint adjustment failed");
            Rat d = w / rat_pow(Rat(2), k);
            Rat nlo = (slo == 0) ? lo0 + d : st_->lo;
            Rat nhi = (shi == 0) ? hi0 - d : st_->hi;
            int a = st_->poly.sign_at(nlo);
            int b = st_->poly.sign_at(nhi);
            if (a != 0 && b != 0 && a != b) {
                st_->lo = nlo;
                st_->hi = nhi;
                return;
            }
        }
    }
}

RootHandle RootHandle::exact(const Rat& value) {
    std::vector<Int> c{-value.get_num(), value.get_den()};
    RootHandle h(IntPoly(std::move(c)), value, value);
    return h;
}

RatInterval RootHandle::interval() const {
    std::lock_guard<std::mutex> g(st_->m);
    return {st_->lo, st_->hi};
}

RatInterval RootHandle::refine_to(const Rat& w) const {
    std::lock_guard<std::mutex> g(st_->m);
    if (st_->exact) return {st_->lo, st_->hi};
    int slo = st_->poly.sign_at(st_->lo);
    if (slo == 0) {
        st_->hi = st_->lo;
        st_->exact = true;
        return {st_->lo, st_->hi};
    }
    std::int64_t steps = 0;
    while (st_->hi - st_->lo > w) {
        Rat mid = (st_->lo + st_->hi) / 2;
        int sm = st_->poly.sign_at(mid);
        if (sm == 0) {
            st_->lo = st_->hi = mid;
            st_->exact = true;
            break;
        }
        if (sm == slo) st_->lo = mid;
        else st_->hi = mid;
        if (++steps > precision_cap_bits() + 64)
            throw PrecisionCapExceeded("root refinement");
    }
    return {st_->lo, st_->hi};
}

int RootHandle::sign() const {
    {
        std::lock_guard<std::mutex> g(st_->m);
        if (st_->exact) return sgn(st_->lo);
        if (sgn(st_->lo) > 0) return 1;
        if (sgn(st_->hi) < 0) return -1;
    }
    // interval straddles zero: the root is 0 iff poly(0) == 0 (squarefree)
    if (st_->poly.sign_at(Rat(0)) == 0) {
        std::lock_guard<std::mutex> g(st_->m);
        st_->lo = st_->hi = 0;
        st_->exact = true;
        return 0;
    }
    Rat w = interval().width();
    while (true) {
        w /= 65536;
        RatInterval iv = refine_to(w);
        int s = iv.known_sign();
        if (s != 0) return s;
        if (iv.lo == iv.hi) return sgn(iv.lo);
        if (bitsize(w.get_den()) > precision_cap_bits())
            throw PrecisionCapExceeded("root sign");
    }
}

SturmChain::SturmChain(const IntPoly& squarefree) {
    chain_.push_back(squarefree.normalized_primitive());
    if (chain_[0].degree() >= 1) chain_.push_back(chain_[0].derivative().primitive_part());
    while (chain_.back().degree() >= 1) {
        const IntPoly& a = chain_[chain_.size() - 2];
        const IntPoly& b = chain_.back();
        IntPoly q, r;
        pseudo_divrem(a, b, q, r);
        if (r.is_zero()) break;
        // prem = lc(b)^(d+1) * rem; the chain needs -rem up to a positive
        // factor, so negate exactly when the multiplier is positive.
        long d = a.degree() - b.degree();
        bool multiplier_positive = sgn(b.lc()) > 0 || (d + 1) % 2 == 0;
        r = r.primitive_part();
        if (multiplier_positive) r = -r;
        chain_.push_back(r);
    }
}

namespace {
int sign_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}
}  // namespace

int SturmChain::variations_at(const Rat& x) const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (const auto& p : chain_) signs.push_back(p.sign_at(x));
    return sign_variations(signs);
}
int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    for (const auto& p : chain_) {
        if (p.is_zero()) { signs.push_back(0); continue; }
        int s = sgn(p.lc());
        if (p.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return sign_variations(signs);
}
int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& p : chain_) signs.push_back(p.is_zero() ? 0 : sgn(p.lc()));
    return sign_variations(signs);
}
int SturmChain::count(const Rat& a, const Rat& b) const {
    return variations_at(a) - variations_at(b);
}
int SturmChain::count_all() const {
    return variations_at_neg_inf() - variations_at_pos_inf();
}

Rat root_bound(const IntPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rat(1);
    Rat m(0);
    Rat lc = Rat(abs(p.lc()));
    for (long i = 0; i < p.degree(); ++i) {
        Rat c = Rat(abs(p[static_cast<size_t>(i)])) / lc;
        if (c > m) m = c;
    }
    return m + 1;
}

namespace {

// Descartes test on (0,1): sign variations of (x+1)^d q(1/(x+1)).
int descartes_01(const IntPoly& q) {
    IntPoly t = q.reversed().shift_arg(Rat(1));
    std::vector<int> signs;
    signs.reserve(t.coeffs().size());
    for (const auto& c : t.coeffs()) signs.push_back(sgn(c));
    return sign_variations(signs);
}

// VCA/Descartes isolation of the roots of q in the open interval (lo, hi),
// where q(x) = p(lo + (hi-lo) x) up to a constant.  Appends to out.
void vca(const IntPoly& sf, const IntPoly& q, const Rat& lo, const Rat& hi,
         std::vector<std::pair<Rat, Rat>>& out, std::vector<Rat>& exact,
         int depth) {
    if (depth > 4096) throw PrecisionCapExceeded("VCA depth");
    int v = descartes_01(q);
    if (v == 0) return;
    if (v == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    Rat mid = (lo + hi) / 2;
    // q_left(x) = 2^d q(x/2), q_right(x) = q_left(x+1)
    IntPoly ql = q.scale_arg(Rat(1, 2));
    IntPoly qr = ql.shift_arg(Rat(1));
    if (qr.coeffs().size() > 0 && qr[0] == 0) {
        // exact root at the split point
        exact.push_back(mid);
        std::vector<Int> c(qr.coeffs().begin() + 1, qr.coeffs().end());
        qr = IntPoly(std::move(c));
    }
    vca(sf, ql, lo, mid, out, exact, depth + 1);
    vca(sf, qr, mid, hi, out, exact, depth + 1);
}

}  // namespace

std::vector<RootHandle> isolate_real_roots(const IntPoly& p) {
    if (p.is_zero()) throw EscapeError("isolate_real_roots: zero polynomial");
    IntPoly sf = squarefree_part(p);
    std::vector<RootHandle> out;
    if (sf.degree() < 1) return out;

    std::vector<std::pair<Rat, Rat>> ivs;
    std::vector<Rat> exact;
    if (sf[0] == 0) {
        exact.emplace_back(0);
        std::vector<Int> c(sf.coeffs().begin() + 1, sf.coeffs().end());
        sf = IntPoly(std::move(c));
    }
    Rat b = root_bound(sf);
    // positive roots: q(x) = sf(b x) has roots in (0,1)
    vca(sf, sf.scale_arg(b), Rat(0), b, ivs, exact, 0);
    // negative roots: roots of sf(-b x) in (0,1) map to (-b, 0)
    {
        std::vector<std::pair<Rat, Rat>> neg;
        vca(sf, sf.scale_arg(-b), Rat(0), b, neg, exact, 0);
        for (auto& [l, h] : neg) ivs.emplace_back(-h, -l);
    }
    for (const Rat& e : exact) out.push_back(RootHandle::exact(e));
    for (auto& [l, h] : ivs) out.push_back(RootHandle(sf, l, h));
    std::sort(out.begin(), out.end(), [](const RootHandle& a, const RootHandle& b2) {
        auto ia = a.interval(), ib = b2.interval();
        return ia.lo + ia.hi < ib.lo + ib.hi;
    });
    return out;
}

void complex_parts(const IntPoly& p, BiPoly& re, BiPoly& im) {
    // p(x + i y) = sum_k c_k (x + i y)^k, expanded with binomials
    re.clear();
    im.clear();
    if (p.is_zero()) return;
    long d = p.degree();
    for (long k = 0; k <= d; ++k) {
        const Int& ck = p[static_cast<size_t>(k)];
        if (ck == 0) continue;
        for (long j = 0; j <= k; ++j) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k),
                         static_cast<unsigned long>(j));
            Int coef = ck * binom;
            int phase = static_cast<int>(j % 4);  // i^j
            if (phase == 2 || phase == 3) coef = -coef;
            IntPoly xpow = IntPoly::constant(coef).shifted(k - j);
            BiPoly& target = (phase % 2 == 0) ? re : im;
            size_t yj = static_cast<size_t>(j);
            if (target.size() <= yj) target.resize(yj + 1);
            target[yj] = target[yj] + xpow;
        }
    }
    bi_trim(re);
    bi_trim(im);
}

Rat root_separation_lower_bound(const IntPoly& squarefree) {
    // Mahler: sep(P) > sqrt(3) D^(-(D+2)/2) ||P||_2^(-(D-1)); lower-bounded by
    // 1 / ( D^ceil((D+2)/2) * ((D+1) H^2)^ceil((D-1)/2) )
    long d = squarefree.degree();
    if (d <= 1) return Rat(1);
    Int H = squarefree.height();
    Int a = int_pow(Int(d), static_cast<unsigned long>((d + 3) / 2));
    Int b = int_pow(Int(d + 1) * H * H, static_cast<unsigned long>(d / 2));
    Rat r;
    r.get_num() = 1;
    r.get_den() = a * b;
    r.canonicalize();
    return r;
}

std::vector<ComplexRoot> isolate_complex_roots(const IntPoly& p) {
    if (p.is_zero()) throw EscapeError("isolate_complex_roots: zero polynomial");
    IntPoly sf = squarefree_part(p);
    std::vector<ComplexRoot> out;
    if (sf.degree() < 1) return out;

    std::vector<RootHandle> real_roots = isolate_real_roots(sf);
    for (const auto& r : real_roots)
        out.push_back(ComplexRoot{r, RootHandle::exact(Rat(0)), true});

    long n_nonreal = sf.degree() - static_cast<long>(real_roots.size());
    if (n_nonreal == 0) return out;
    size_t target_pairs = static_cast<size_t>(n_nonreal / 2);

    BiPoly fre, fim;
    complex_parts(sf, fre, fim);
    // non-real roots satisfy fre = 0 and fim / y = 0
    BiPoly g(fim.begin() + 1, fim.end());
    IntPoly su = resultant_y(fre, g);
    auto transpose = [](const BiPoly& a) {
        BiPoly t;
        for (size_t yi = 0; yi < a.size(); ++yi) {
            const IntPoly& cx = a[yi];
            for (long xi = 0; xi <= cx.degree(); ++xi) {
                if (cx[static_cast<size_t>(xi)] == 0) continue;
                if (t.size() <= static_cast<size_t>(xi))
                    t.resize(static_cast<size_t>(xi) + 1);
                IntPoly add =
                    IntPoly::constant(cx[static_cast<size_t>(xi)]).shifted(static_cast<long>(yi));
                t[static_cast<size_t>(xi)] = t[static_cast<size_t>(xi)] + add;
            }
        }
        bi_trim(t);
        return t;
    };
    IntPoly sv = resultant_y(transpose(fre), transpose(g));
    if (su.is_zero() || sv.is_zero())
        throw InternalError("complex isolation: degenerate projection resultant");

    std::vector<RootHandle> xs = isolate_real_roots(su);
    std::vector<RootHandle> ys_all = isolate_real_roots(sv);
    std::vector<RootHandle> ys;  // positive imaginary parts only
    for (auto& y : ys_all)
        if (y.sign() > 0) ys.push_back(y);

    Rat sep = root_separation_lower_bound(sf);
    Rat w = sep / 4;
    struct Cand { size_t xi, yi; };
    for (int iter = 0;; ++iter) {
        if (iter > 64) throw PrecisionCapExceeded("complex root isolation");
        for (auto& x : xs) x.refine_to(w);
        for (auto& y : ys) y.refine_to(w);
        std::vector<Cand> cands;
        for (size_t i = 0; i < xs.size(); ++i) {
            for (size_t j = 0; j < ys.size(); ++j) {
                Box bx{xs[i].interval(), ys[j].interval()};
                Box v = sf.eval(bx);
                if (v.re.contains_zero() && v.im.contains_zero()) cands.push_back({i, j});
            }
        }
        if (cands.size() == target_pairs) {
            for (const auto& c : cands) {
                out.push_back(ComplexRoot{xs[c.xi], ys[c.yi], false});
                auto iv = ys[c.yi].interval();
                RootHandle neg_im(ys[c.yi].poly().scale_arg(Rat(-1)), -iv.hi, -iv.lo);
                out.push_back(ComplexRoot{xs[c.xi], neg_im, false});
            }
            return out;
        }
        if (cands.size() < target_pairs)
            throw InternalError("complex isolation lost roots (bug)");
        w /= 16;
    }
}

}  // namespace escape
