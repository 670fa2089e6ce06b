#include "escape/intpoly.hpp"

#include <atomic>
#include <sstream>

namespace escape {

namespace {
std::atomic<std::int64_t> g_precision_cap{1 << 16};
}

std::int64_t precision_cap_bits() { return g_precision_cap.load(); }
void set_precision_cap_bits(std::int64_t bits) {
    if (bits < 1) throw EscapeError("precision cap must be >= 1");
    g_precision_cap.store(bits);
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat r(Int(s));
            return r;
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw DivisionByZero();
        Rat r;
        r.get_num() = num;
        r.get_den() = den;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw EscapeError("cannot parse rational: '" + s + "'");
    }
}

std::string format_rat(const Rat& x) {
    std::ostringstream os;
    os << x.get_num();
    if (x.get_den() != 1) os << "/" << x.get_den();
    return os.str();
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = std::min(std::min(a, b), std::min(c, d));
    Rat mx = std::max(std::max(a, b), std::max(c, d));
    return {mn, mx};
}

RatInterval RatInterval::sq() const {
    if (sgn(lo) >= 0) return {lo * lo, hi * hi};
    if (sgn(hi) <= 0) return {hi * hi, lo * lo};
    Rat a = lo * lo, b = hi * hi;
    return {Rat(0), std::max(a, b)};
}

RatInterval interval_union(const RatInterval& a, const RatInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}
bool intervals_disjoint(const RatInterval& a, const RatInterval& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

Box box_add(const Box& a, const Box& b) { return {a.re + b.re, a.im + b.im}; }
Box box_sub(const Box& a, const Box& b) { return {a.re - b.re, a.im - b.im}; }
Box box_mul(const Box& a, const Box& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Box box_div(const Box& a, const Box& b) {
    RatInterval n = b.re.sq() + b.im.sq();
    if (n.contains_zero()) throw InternalError("box_div: denominator box touches zero");
    Box num = box_mul(a, b.conj());
    RatInterval inv(1 / n.hi, 1 / n.lo);
    return {num.re * inv, num.im * inv};
}

Int IntPoly::height() const {
    Int h = 0;
    for (const auto& ci : c_) {
        Int a = abs(ci);
        if (a > h) h = a;
    }
    return h;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}
IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}
IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}
IntPoly IntPoly::operator*(const Int& k) const {
    if (k == 0) return IntPoly();
    std::vector<Int> r = c_;
    for (auto& ci : r) ci *= k;
    return IntPoly(std::move(r));
}
IntPoly IntPoly::operator-() const {
    std::vector<Int> r = c_;
    for (auto& ci : r) ci = -ci;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
    return IntPoly(std::move(r));
}

IntPoly IntPoly::shifted(long k) const {
    if (is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + static_cast<size_t>(k), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + static_cast<size_t>(k)] = c_[i];
    return IntPoly(std::move(r));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& ci : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ci.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}
IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    Int g = content();
    std::vector<Int> r = c_;
    for (auto& ci : r) ci /= g;
    return IntPoly(std::move(r));
}
IntPoly IntPoly::normalized_primitive() const {
    IntPoly p = primitive_part();
    if (!p.is_zero() && sgn(p.lc()) < 0) p = -p;
    return p;
}

Int IntPoly::eval(const Int& x) const {
    Int r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}
Rat IntPoly::eval(const Rat& x) const {
    Rat r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

int IntPoly::sign_at(const Rat& x) const {
    if (is_zero()) return 0;
    // sign of sum c_i p^i q^(d-i), all integer
    const Int& p = x.get_num();
    const Int& q = x.get_den();
    Int acc = 0, qp = 1;
    // Horner from the top: acc = acc*p + c_i*q^(d-i)
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * p + c_[i] * qp;
        if (i > 0) qp *= q;
    }
    return sgn(acc);
}

RatInterval IntPoly::eval(const RatInterval& x) const {
    RatInterval r = RatInterval::point(Rat(0));
    for (size_t i = c_.size(); i-- > 0;) {
        r = r * x + RatInterval::point(Rat(c_[i]));
    }
    return r;
}

Box IntPoly::eval(const Box& z) const {
    Box r{RatInterval::point(Rat(0)), RatInterval::point(Rat(0))};
    for (size_t i = c_.size(); i-- > 0;) {
        r = box_mul(r, z);
        r.re = r.re + RatInterval::point(Rat(c_[i]));
    }
    return r;
}

IntPoly IntPoly::scale_arg(const Rat& s) const {
    // p(s*x): coefficient c_i -> c_i * num^i * den^(d-i)
    if (is_zero()) return IntPoly();
    const Int& num = s.get_num();
    const Int& den = s.get_den();
    long d = degree();
    std::vector<Int> r(c_.size());
    Int np = 1;
    for (long i = 0; i <= d; ++i) {
        r[i] = c_[i] * np * int_pow(den, static_cast<unsigned long>(d - i));
        np *= num;
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::shift_arg(const Rat& t) const {
    // p(x + a/b): clear denominators via q(x) = b^d p(x/b + a/b) = b^d p((x+a)/b)
    if (is_zero()) return IntPoly();
    const Int& a = t.get_num();
    const Int& b = t.get_den();
    long d = degree();
    // first substitute x -> x/b scaled: coefficients c_i b^(d-i), then shift by integer a
    std::vector<Int> r(c_.size());
    for (long i = 0; i <= d; ++i) r[i] = c_[i] * int_pow(b, static_cast<unsigned long>(d - i));
    // synthetic shift by a: repeated Horner
    for (long i = 0; i < d; ++i)
        for (long j = d - 1; j >= i; --j) r[static_cast<size_t>(j)] += r[static_cast<size_t>(j + 1)] * a;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::reversed() const {
    std::vector<Int> r(c_.rbegin(), c_.rend());
    return IntPoly(std::move(r));
}

IntPoly IntPoly::compose_square() const {
    if (is_zero()) return IntPoly();
    std::vector<Int> r(2 * c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
    return IntPoly(std::move(r));
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Int a = abs(c_[i]);
        if (!first) os << (sgn(c_[i]) < 0 ? " - " : " + ");
        else if (sgn(c_[i]) < 0) os << "-";
        first = false;
        if (i == 0 || a != 1) os << a;
        if (i >= 1) {
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

void pseudo_divrem(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
    if (b.is_zero()) throw DivisionByZero();
    long da = a.degree(), db = b.degree();
    if (da < db) {
        q = IntPoly();
        r = a;
        return;
    }
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> quo(static_cast<size_t>(da - db + 1), Int(0));
    const Int& l = b.lc();
    for (long k = da - db; k >= 0; --k) {
        // multiply the whole remainder (and quotient so far) by l, then cancel
        for (auto& ci : rem) ci *= l;
        for (auto& ci : quo) ci *= l;
        Int coef = rem[static_cast<size_t>(db + k)];
        quo[static_cast<size_t>(k)] += coef;
        for (long i = 0; i <= db; ++i)
            rem[static_cast<size_t>(i + k)] -= coef * b[static_cast<size_t>(i)];
    }
    rem.resize(static_cast<size_t>(db > 0 ? db : 0));
    q = IntPoly(std::move(quo));
    r = IntPoly(std::move(rem));
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return IntPoly();
    long da = a.degree(), db = b.degree();
    if (da < db) throw InternalError("exact_div: not divisible (degree)");
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> quo(static_cast<size_t>(da - db + 1), Int(0));
    for (long k = da - db; k >= 0; --k) {
        Int num = rem[static_cast<size_t>(db + k)];
        if (num == 0) continue;
        Int c;
        mpz_tdiv_qr(c.get_mpz_t(), num.get_mpz_t(), num.get_mpz_t(), b.lc().get_mpz_t());
        if (num != 0) throw InternalError("exact_div: not divisible (coefficient)");
        quo[static_cast<size_t>(k)] = c;
        for (long i = 0; i <= db; ++i)
            rem[static_cast<size_t>(i + k)] -= c * b[static_cast<size_t>(i)];
    }
    for (const auto& ci : rem)
        if (ci != 0) throw InternalError("exact_div: nonzero remainder");
    return IntPoly(std::move(quo));
}

bool divides(const IntPoly& b, const IntPoly& a) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    try {
        (void)exact_div(a, b);
        return true;
    } catch (const InternalError&) {
        return false;
    }
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.normalized_primitive();
    if (b.is_zero()) return a.normalized_primitive();
    IntPoly f = a.primitive_part(), g = b.primitive_part();
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        IntPoly q, r;
        pseudo_divrem(f, g, q, r);
        f = g;
        g = r.primitive_part();
    }
    return f.normalized_primitive();
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.is_zero()) return IntPoly();
    if (p.degree() == 0) return IntPoly::constant(1);
    IntPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p.normalized_primitive();
    // g is primitive and divides the primitive part of p in Z[x] (Gauss)
    return exact_div(p.normalized_primitive(), g).normalized_primitive();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
    std::vector<std::pair<IntPoly, int>> out;
    if (p.is_zero() || p.degree() == 0) return out;
    // Yun's algorithm on the primitive part.  b and c must stay the exact
    // quotients (no renormalisation) so that d = c - b' is the right object;
    // all divisions are exact in Z[x] because the divisors are primitive.
    IntPoly f = p.normalized_primitive();
    IntPoly fp = f.derivative();
    IntPoly a = gcd(f, fp);
    IntPoly b = a.degree() == 0 ? f : exact_div(f, a);
    IntPoly c = a.degree() == 0 ? fp : exact_div(fp, a);
    int i = 1;
    while (b.degree() >= 1) {
        IntPoly d = c - b.derivative();
        IntPoly g = gcd(b, d);
        if (g.degree() >= 1) out.emplace_back(g.normalized_primitive(), i);
        IntPoly gg = g.degree() == 0 ? IntPoly::constant(1) : g;
        // keep the quotient signs consistent with b's sign
        if (sgn(gg.lc()) < 0) gg = -gg;
        b = gg.degree() == 0 ? b : exact_div(b, gg);
        c = gg.degree() == 0 ? d : exact_div(d, gg);
        ++i;
    }
    return out;
}

namespace {

// Subresultant PRS resultant over a ring with exact division (Cohen, Alg. 3.3.7,
// without sign bookkeeping; callers only use the root set / zero test).
template <class R, class Ops>
R subresultant_res(std::vector<R> A, std::vector<R> B, const Ops& ops) {
    auto deg = [](const std::vector<R>& p) { return static_cast<long>(p.size()) - 1; };
    auto trim = [&](std::vector<R>& p) {
        while (!p.empty() && ops.is_zero(p.back())) p.pop_back();
    };
    trim(A);
    trim(B);
    if (A.empty() || B.empty()) return ops.zero();
    if (deg(A) < deg(B)) std::swap(A, B);
    if (deg(B) == 0) {
        // res(A, c) = c^deg(A)
        R r = ops.one();
        for (long i = 0; i < deg(A); ++i) r = ops.mul(r, B[0]);
        return r;
    }
    R g = ops.one(), h = ops.one();
    while (true) {
        long d = deg(A) - deg(B);
        // pseudo remainder lc(B)^(d+1) A mod B
        std::vector<R> Rm = A;
        R lb = B.back();
        for (long k = d; k >= 0; --k) {
            for (auto& x : Rm) x = ops.mul(x, lb);
            R coef = Rm[static_cast<size_t>(deg(B) + k)];
            for (long i = 0; i <= deg(B); ++i) {
                size_t idx = static_cast<size_t>(i + k);
                Rm[idx] = ops.sub(Rm[idx], ops.mul(coef, B[static_cast<size_t>(i)]));
            }
        }
        Rm.resize(static_cast<size_t>(deg(B)));
        trim(Rm);
        if (Rm.empty()) {
            // nontrivial common factor unless deg(B) == 0
            return ops.zero();
        }
        // divide remainder by g*h^d
        R hd = ops.one();
        for (long i = 0; i < d; ++i) hd = ops.mul(hd, h);
        R den = ops.mul(g, hd);
        for (auto& x : Rm) x = ops.exact_div(x, den);
        A = B;
        B = Rm;
        g = A.back();
        // h = g^d * h^(1-d)
        R gd = ops.one();
        for (long i = 0; i < d; ++i) gd = ops.mul(gd, g);
        if (d == 0) {
            // h unchanged ... h^(1-0)=h, g^0=1
        } else {
            R hd1 = ops.one();
            for (long i = 0; i < d - 1; ++i) hd1 = ops.mul(hd1, h);
            h = ops.exact_div(gd, hd1);
        }
        if (deg(B) == 0) {
            long dA = deg(A);
            // res = h^(1-dA) * B^dA  -> B^dA / h^(dA-1)
            R num = ops.one();
            for (long i = 0; i < dA; ++i) num = ops.mul(num, B[0]);
            R den2 = ops.one();
            for (long i = 0; i < dA - 1; ++i) den2 = ops.mul(den2, h);
            return ops.exact_div(num, den2);
        }
    }
}

struct IntOps {
    Int zero() const { return Int(0); }
    Int one() const { return Int(1); }
    bool is_zero(const Int& x) const { return x == 0; }
    Int mul(const Int& a, const Int& b) const { return a * b; }
    Int sub(const Int& a, const Int& b) const { return a - b; }
    Int exact_div(const Int& a, const Int& b) const {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (r != 0) throw InternalError("integer exact_div failed");
        return q;
    }
};

struct PolyOps {
    IntPoly zero() const { return IntPoly(); }
    IntPoly one() const { return IntPoly::constant(1); }
    bool is_zero(const IntPoly& x) const { return x.is_zero(); }
    IntPoly mul(const IntPoly& a, const IntPoly& b) const { return a * b; }
    IntPoly sub(const IntPoly& a, const IntPoly& b) const { return a - b; }
    IntPoly exact_div(const IntPoly& a, const IntPoly& b) const { return escape::exact_div(a, b); }
};

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    return subresultant_res<Int, IntOps>(a.coeffs(), b.coeffs(), IntOps{});
}

void bi_trim(BiPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}
long bi_degree(const BiPoly& p) { return static_cast<long>(p.size()) - 1; }
BiPoly bi_add(const BiPoly& a, const BiPoly& b) {
    BiPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    bi_trim(r);
    return r;
}
BiPoly bi_mul(const BiPoly& a, const BiPoly& b) {
    if (a.empty() || b.empty()) return {};
    BiPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    bi_trim(r);
    return r;
}

IntPoly resultant_y(const BiPoly& a, const BiPoly& b) {
    BiPoly A = a, B = b;
    bi_trim(A);
    bi_trim(B);
    if (A.empty() || B.empty()) return IntPoly();
    return subresultant_res<IntPoly, PolyOps>(A, B, PolyOps{});
}

// ---- QPoly ----

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
bool qis_zero(const QPoly& p) { return p.empty(); }
long qdegree(const QPoly& p) { return static_cast<long>(p.size()) - 1; }

QPoly qadd(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    qtrim(r);
    return r;
}
QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qtrim(r);
    return r;
}
QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}
QPoly qscale(const QPoly& a, const Rat& k) {
    if (k == 0) return {};
    QPoly r = a;
    for (auto& c : r) c *= k;
    return r;
}

void qdivrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (qis_zero(b)) throw DivisionByZero();
    r = a;
    qtrim(r);
    q.assign(a.size(), Rat(0));
    long db = qdegree(b);
    while (qdegree(r) >= db) {
        long k = qdegree(r) - db;
        Rat c = r.back() / b.back();
        q[static_cast<size_t>(k)] = c;
        for (long i = 0; i <= db; ++i) r[static_cast<size_t>(i + k)] -= c * b[static_cast<size_t>(i)];
        qtrim(r);
    }
    qtrim(q);
}

QPoly qmod(const QPoly& a, const QPoly& m) {
    QPoly q, r;
    qdivrem(a, m, q, r);
    return r;
}

QPoly qmonic(const QPoly& a) {
    if (qis_zero(a)) return a;
    return qscale(a, 1 / a.back());
}

Rat qeval(const QPoly& p, const Rat& x) {
    Rat r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}
RatInterval qeval(const QPoly& p, const RatInterval& x) {
    RatInterval r = RatInterval::point(Rat(0));
    for (size_t i = p.size(); i-- > 0;) r = r * x + RatInterval::point(p[i]);
    return r;
}

QPoly q_from_int(const IntPoly& p) {
    QPoly r(p.coeffs().size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = Rat(p[i]);
    return r;
}

IntPoly q_clear_denominators(const QPoly& p) {
    Int l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Rat v = p[i] * Rat(l);
        r[i] = v.get_num();
    }
    return IntPoly(std::move(r)).normalized_primitive();
}

QPoly qgcd_ext(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v) {
    QPoly r0 = a, r1 = b;
    QPoly u0{Rat(1)}, v0{}, u1{}, v1{Rat(1)};
    qtrim(r0);
    qtrim(r1);
    while (!qis_zero(r1)) {
        QPoly q, r;
        qdivrem(r0, r1, q, r);
        QPoly u2 = qsub(u0, qmul(q, u1));
        QPoly v2 = qsub(v0, qmul(q, v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        v0 = v1;
        u1 = u2;
        v1 = v2;
    }
    if (qis_zero(r0)) {
        u = {};
        v = {};
        return {};
    }
    Rat l = r0.back();
    u = qscale(u0, 1 / l);
    v = qscale(v0, 1 / l);
    return qscale(r0, 1 / l);
}

QPoly qgcd(const QPoly& a, const QPoly& b) {
    QPoly u, v;
    return qgcd_ext(a, b, u, v);
}

}  // namespace escape
