#include "towers/ring.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace towers {

uint64_t powm(uint64_t a, uint64_t e, uint64_t q) {
    uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mulm(r, a, q);
        a = mulm(a, a, q);
        e >>= 1;
    }
    return r;
}

uint64_t invm(uint64_t a, uint64_t q) {
    a %= q;
    // extended Euclid
    int64_t old_r = static_cast<int64_t>(q), r = static_cast<int64_t>(a);
    int64_t old_s = 0, s = 1;
    while (r != 0) {
        int64_t quo = old_r / r;
        int64_t tmp = old_r - quo * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quo * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) fail(Errc::NonUnit, "invm: not a unit mod " + std::to_string(q));
    int64_t inv = old_s % static_cast<int64_t>(q);
    if (inv < 0) inv += static_cast<int64_t>(q);
    return static_cast<uint64_t>(inv);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

uint64_t pow_u64(uint64_t p, unsigned K) {
    uint64_t q = 1;
    for (unsigned i = 0; i < K; ++i) q *= p;
    return q;
}

using SpecKey = std::tuple<uint64_t, unsigned, int, uint64_t, uint64_t, int64_t>;

std::map<SpecKey, RingSpec>& spec_pool() {
    static std::map<SpecKey, RingSpec> pool;
    return pool;
}
std::mutex& spec_mutex() {
    static std::mutex m;
    return m;
}

const RingSpec& intern(const RingSpec& s) {
    SpecKey key{s.p, s.K, static_cast<int>(s.kind), s.s, s.t,
                s.field_disc ? static_cast<int64_t>(*s.field_disc) : INT64_MIN};
    std::lock_guard<std::mutex> lock(spec_mutex());
    auto [it, inserted] = spec_pool().emplace(key, s);
    (void)inserted;
    return it->second;
}

// p splits in Q(sqrt(d)) iff d is a nonzero square mod p (odd p not dividing d),
// or d = 1 mod 8 for p = 2.
bool splits_in(uint64_t p, int d) {
    int64_t dd = d;
    if (p == 2) {
        int64_t r = ((dd % 8) + 8) % 8;
        return r == 1;
    }
    int64_t r = ((dd % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) % static_cast<int64_t>(p);
    if (r == 0) return false;  // ramified
    return powm(static_cast<uint64_t>(r), (p - 1) / 2, p) == 1;
}

}  // namespace

std::string RingSpec::label() const {
    std::ostringstream os;
    switch (kind) {
        case RingKind::Rational: os << "Z/" << p << "^" << K; break;
        case RingKind::Split: os << "split(" << p << "^" << K << ")"; break;
        case RingKind::Inert: os << "inert(" << p << "^" << K << "; y^2=" << s << "y+" << t << ")"; break;
    }
    if (field_disc) os << "[d=" << *field_disc << "]";
    return os.str();
}

const RingSpec& RingSpec::rational(uint64_t p, unsigned K) {
    if (!is_prime_u64(p)) fail(Errc::ConfigError, "p must be prime");
    if (K < 1) fail(Errc::ConfigError, "K must be >= 1");
    RingSpec s;
    s.p = p;
    s.K = K;
    s.q = pow_u64(p, K);
    s.kind = RingKind::Rational;
    return intern(s);
}

const RingSpec& RingSpec::split(uint64_t p, unsigned K, std::optional<int> field_disc) {
    if (!is_prime_u64(p)) fail(Errc::ConfigError, "p must be prime");
    if (K < 1) fail(Errc::ConfigError, "K must be >= 1");
    if (field_disc && !splits_in(p, *field_disc))
        fail(Errc::ConfigError, "p does not split in the requested field");
    RingSpec s;
    s.p = p;
    s.K = K;
    s.q = pow_u64(p, K);
    s.kind = RingKind::Split;
    s.field_disc = field_disc;
    return intern(s);
}

const RingSpec& RingSpec::inert(uint64_t p, unsigned K, int64_t sc, int64_t tc,
                                std::optional<int> field_disc) {
    if (!is_prime_u64(p)) fail(Errc::ConfigError, "p must be prime");
    if (K < 1) fail(Errc::ConfigError, "K must be >= 1");
    uint64_t q = pow_u64(p, K);
    auto red = [&](int64_t v) {
        int64_t r = v % static_cast<int64_t>(q);
        if (r < 0) r += static_cast<int64_t>(q);
        return static_cast<uint64_t>(r);
    };
    // y^2 - s*y - t must be irreducible mod p.
    bool irred = true;
    for (uint64_t y = 0; y < p; ++y) {
        uint64_t v = (mulm(y, y, p) + 2 * p - (red(sc) % p) * y % p - red(tc) % p) % p;
        if (v % p == 0) {
            irred = false;
            break;
        }
    }
    if (!irred) fail(Errc::ConfigError, "minimal polynomial reducible mod p: not an inert model");
    RingSpec s;
    s.p = p;
    s.K = K;
    s.q = q;
    s.kind = RingKind::Inert;
    s.s = red(sc);
    s.t = red(tc);
    s.field_disc = field_disc;
    return intern(s);
}

const RingSpec& RingSpec::inert_field(uint64_t p, unsigned K, int d) {
    switch (d) {
        case -1: return inert(p, K, 0, -1, d);   // y = i
        case -3: return inert(p, K, 1, -1, d);   // y = (1+sqrt(-3))/2
        case -7: return inert(p, K, 1, -2, d);   // y = (1+sqrt(-7))/2
        default: fail(Errc::ConfigError, "no default integral basis for d=" + std::to_string(d));
    }
}

RingElem RingElem::gen(const RingSpec& R) {
    if (R.kind == RingKind::Rational) fail(Errc::ConfigError, "rational ring has no quadratic generator");
    if (R.kind == RingKind::Split) return RingElem(R, 1, 0);
    return RingElem(R, 0, 1);
}

RingElem RingElem::from_int(const RingSpec& R, int64_t v) {
    int64_t r = v % static_cast<int64_t>(R.q);
    if (r < 0) r += static_cast<int64_t>(R.q);
    uint64_t u = static_cast<uint64_t>(r);
    return RingElem(R, u, R.kind == RingKind::Split ? u : 0);
}

RingElem RingElem::operator+(const RingElem& o) const {
    return RingElem(*R, addm(a, o.a, R->q), addm(b, o.b, R->q));
}
RingElem RingElem::operator-(const RingElem& o) const {
    return RingElem(*R, subm(a, o.a, R->q), subm(b, o.b, R->q));
}
RingElem RingElem::operator-() const { return RingElem(*R, subm(0, a, R->q), subm(0, b, R->q)); }

RingElem RingElem::operator*(const RingElem& o) const {
    uint64_t q = R->q;
    switch (R->kind) {
        case RingKind::Rational: return RingElem(*R, mulm(a, o.a, q), 0);
        case RingKind::Split: return RingElem(*R, mulm(a, o.a, q), mulm(b, o.b, q));
        case RingKind::Inert: {
            // (a + b y)(c + d y) = ac + bd t + (ad + bc + bd s) y
            uint64_t bd = mulm(b, o.b, q);
            uint64_t ra = addm(mulm(a, o.a, q), mulm(bd, R->t, q), q);
            uint64_t rb = addm(addm(mulm(a, o.b, q), mulm(b, o.a, q), q), mulm(bd, R->s, q), q);
            return RingElem(*R, ra, rb);
        }
    }
    return *this;
}

bool RingElem::is_rational() const {
    switch (R->kind) {
        case RingKind::Rational: return true;
        case RingKind::Split: return a == b;
        case RingKind::Inert: return b == 0;
    }
    return true;
}

std::string RingElem::str() const {
    std::ostringstream os;
    switch (R->kind) {
        case RingKind::Rational: os << a; break;
        case RingKind::Split: os << "(" << a << "," << b << ")"; break;
        case RingKind::Inert:
            os << a;
            if (b) os << "+" << b << "y";
            break;
    }
    return os.str();
}

RingElem conj(const RingElem& x) {
    const RingSpec& R = *x.R;
    switch (R.kind) {
        case RingKind::Rational: return x;
        case RingKind::Split: return RingElem(R, x.b, x.a);
        case RingKind::Inert:
            // a + b y  ->  (a + b s) - b y
            return RingElem(R, addm(x.a, mulm(x.b, R.s, R.q), R.q), subm(0, x.b, R.q));
    }
    return x;
}

namespace {
unsigned vp(uint64_t v, uint64_t p, unsigned K) {
    if (v == 0) return K;
    unsigned r = 0;
    while (v % p == 0) {
        v /= p;
        ++r;
    }
    return r < K ? r : K;
}
}  // namespace

unsigned valuation(const RingElem& x) {
    const RingSpec& R = *x.R;
    if (R.kind == RingKind::Rational) return vp(x.a, R.p, R.K);
    return std::min(vp(x.a, R.p, R.K), vp(x.b, R.p, R.K));
}

bool is_unit(const RingElem& x) {
    const RingSpec& R = *x.R;
    switch (R.kind) {
        case RingKind::Rational: return x.a % R.p != 0;
        case RingKind::Split: return x.a % R.p != 0 && x.b % R.p != 0;
        case RingKind::Inert: return norm(x).a % R.p != 0;
    }
    return false;
}

RingElem norm(const RingElem& x) {
    const RingSpec& R = *x.R;
    switch (R.kind) {
        case RingKind::Rational: return RingElem(R, mulm(x.a, x.a, R.q), 0);
        case RingKind::Split: {
            uint64_t n = mulm(x.a, x.b, R.q);
            return RingElem(R, n, n);
        }
        case RingKind::Inert: {
            // N(a + b y) = a^2 + a b s - b^2 t
            uint64_t n = addm(mulm(x.a, x.a, R.q), mulm(mulm(x.a, x.b, R.q), R.s, R.q), R.q);
            n = subm(n, mulm(mulm(x.b, x.b, R.q), R.t, R.q), R.q);
            return RingElem(R, n, 0);
        }
    }
    return x;
}

RingElem invert(const RingElem& x) {
    const RingSpec& R = *x.R;
    if (!is_unit(x)) fail(Errc::NonUnit, "invert: element has positive valuation");
    switch (R.kind) {
        case RingKind::Rational: return RingElem(R, invm(x.a, R.q), 0);
        case RingKind::Split: return RingElem(R, invm(x.a, R.q), invm(x.b, R.q));
        case RingKind::Inert: {
            uint64_t ninv = invm(norm(x).a, R.q);
            RingElem c = conj(x);
            return RingElem(R, mulm(c.a, ninv, R.q), mulm(c.b, ninv, R.q));
        }
    }
    return x;
}

}  // namespace towers
