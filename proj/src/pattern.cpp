#include "towers/pattern.hpp"

#include <algorithm>
#include <sstream>

namespace towers {

CongruencePattern CongruencePattern::trivial(int n) {
    CongruencePattern p;
    p.n = n;
    p.expo.assign(static_cast<size_t>(n) * n, 0);
    p.diag.assign(static_cast<size_t>(n), {});
    return p;
}

CongruencePattern CongruencePattern::intersect(const CongruencePattern& o) const {
    CongruencePattern r = *this;
    for (size_t i = 0; i < expo.size(); ++i) r.expo[i] = std::max(expo[i], o.expo[i]);
    for (int i = 0; i < n; ++i)
        r.diag[i].insert(r.diag[i].end(), o.diag[i].begin(), o.diag[i].end());
    return r;
}

int CongruencePattern::max_exponent() const {
    int m = 0;
    for (int x : expo) m = std::max(m, x);
    for (const auto& ds : diag)
        for (const auto& d : ds)
            if (d.kind == DiagTarget::Kind::OneModPa) m = std::max(m, d.a);
    return m;
}

CongruencePattern transport(const CongruencePattern& pat, const Cocharacter& c, int k, unsigned K) {
    if (static_cast<int>(c.exponents.size()) != pat.n)
        fail(Errc::ConfigError, "transport: cocharacter size mismatch");
    CongruencePattern r = pat;
    for (int i = 0; i < pat.n; ++i)
        for (int j = 0; j < pat.n; ++j) {
            if (i == j) continue;
            int64_t e = pat.e(i, j) + static_cast<int64_t>(k) * (c.exponents[i] - c.exponents[j]);
            if (e < 0) e = 0;
            if (e > static_cast<int64_t>(K))
                fail(Errc::PrecisionTooLow, "transport: exponent exceeds precision K");
            r.e(i, j) = static_cast<int>(e);
        }
    return r;
}

namespace {

bool congruent_to(const RingElem& x, uint64_t target, int e, unsigned K) {
    if (e <= 0) return true;
    uint64_t pe = powm(x.R->p, static_cast<uint64_t>(std::min<unsigned>(e, K)), x.R->q);
    if (pe == 0) pe = x.R->q;  // e >= K: full precision
    uint64_t ta = target % pe;
    if (x.R->kind == RingKind::Split)
        return x.a % pe == ta && x.b % pe == ta;
    return x.a % pe == ta && x.b % pe == 0;
}

}  // namespace

bool SubgroupSpec::membership(const Mat& g) const {
    auto mu = multiplier(kind, g);
    if (!mu) return false;
    if (mult_one_mod && !congruent_to(*mu, 1, *mult_one_mod, K())) return false;
    if (rational) {
        const Mat& x = rconj ? (*rconj * g) * (*rconj_inv) : g;
        if (!x.is_rational()) return false;
    }
    const Mat y = pconj ? (*pconj_inv * g) * (*pconj) : g;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            int e = pattern.e(i, j);
            if (e && !congruent_to(y.at(i, j), i == j ? 1 : 0, e, K())) return false;
        }
    for (int i = 0; i < dim; ++i)
        for (const auto& d : pattern.diag[i]) {
            switch (d.kind) {
                case DiagTarget::Kind::Free: break;
                case DiagTarget::Kind::Unit:
                    if (!is_unit(y.at(i, i))) return false;
                    break;
                case DiagTarget::Kind::OneModPa:
                    if (!congruent_to(y.at(i, i), 1, d.a, K())) return false;
                    break;
                case DiagTarget::Kind::EqualEntry:
                    if (y.at(i, i) != y.at(d.other, d.other)) return false;
                    break;
            }
        }
    return true;
}

std::string SubgroupSpec::to_json_string() const {
    std::ostringstream os;
    os << "{\"name\":\"" << name << "\",\"group\":\"" << group_kind_name(kind) << "\",\"ring\":\""
       << ring->label() << "\",\"dim\":" << dim << ",\"expo\":[";
    for (int i = 0; i < dim; ++i) {
        os << (i ? "," : "") << "[";
        for (int j = 0; j < dim; ++j) os << (j ? "," : "") << pattern.e(i, j);
        os << "]";
    }
    os << "],\"conjugated\":" << (pconj ? "true" : "false")
       << ",\"rational\":" << (rational ? "true" : "false") << "}";
    return os.str();
}

SubgroupSpec SubgroupSpec::conjugated_by(const Mat& u, const std::string& new_name) const {
    if (pconj) fail(Errc::ConfigError, "conjugated_by: spec already conjugated");
    SubgroupSpec r = *this;
    r.name = new_name;
    r.pconj = u;
    r.pconj_inv = u.inverse();
    return r;
}

SubgroupSpec SubgroupSpec::intersect_pattern(const CongruencePattern& extra,
                                             const std::string& new_name) const {
    SubgroupSpec r = *this;
    r.name = new_name;
    r.pattern = r.pattern.intersect(extra);
    return r;
}

SubgroupSpec u1_spec(int g, int m, const RingSpec& ring) {
    if (m < 1) fail(Errc::ConfigError, "u1_spec: m >= 1 required");
    if (static_cast<unsigned>(m) > ring.K) fail(Errc::PrecisionTooLow, "u1_spec: K < m");
    if (ring.kind != RingKind::Rational) fail(Errc::ConfigError, "u1_spec: rational ring required");
    int n = 2 * g;
    SubgroupSpec s;
    s.name = "U1(p^" + std::to_string(m) + ")";
    s.kind = g == 1 ? GroupKind::GL : GroupKind::GSp;  // GSp_2 = GL_2
    s.ring = &ring;
    s.dim = n;
    s.pattern = CongruencePattern::trivial(n);
    for (int j = 0; j < n; ++j) s.pattern.e(n - 1, j) = m;
    return s;
}

SubgroupSpec v1_spec(int m, const RingSpec& ring, int dim) {
    if (m < 1) fail(Errc::ConfigError, "v1_spec: m >= 1 required");
    if (static_cast<unsigned>(m) > ring.K) fail(Errc::PrecisionTooLow, "v1_spec: K < m");
    if (!ring.quadratic()) fail(Errc::ConfigError, "v1_spec: extension ring required");
    SubgroupSpec s;
    s.name = "V1(p^" + std::to_string(m) + ")";
    s.kind = GroupKind::GU;
    s.ring = &ring;
    s.dim = dim;
    s.pattern = CongruencePattern::trivial(dim);
    for (int j = 0; j < dim; ++j) s.pattern.e(dim - 1, j) = m;
    return s;
}

SubgroupSpec full_spec(GroupKind kind, int dim, const RingSpec& ring) {
    SubgroupSpec s;
    s.name = std::string(group_kind_name(kind)) + "_" + std::to_string(dim);
    s.kind = kind;
    s.ring = &ring;
    s.dim = dim;
    s.pattern = CongruencePattern::trivial(dim);
    return s;
}

CongruencePattern diag_alternating_pattern(int dim, int m) {
    CongruencePattern p = CongruencePattern::trivial(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (i == j) {
                if (i % 2 == 1) p.e(i, i) = m;  // entries 2,4,... pinned to 1 mod p^m
            } else {
                p.e(i, j) = m;
            }
        }
    return p;
}

namespace {

SubgroupSpec v_tower(int n, int m, int eta_power, const RingSpec& ring, int dim,
                     const Cocharacter& eta, const std::string& name) {
    if (n <= 0 || m < 0) fail(Errc::ConfigError, "tower: need n >= 1, m >= 0");
    if (static_cast<unsigned>(n) > ring.K) fail(Errc::PrecisionTooLow, "tower: K < n");
    SubgroupSpec base = dim == 2 && ring.kind == RingKind::Rational
                            ? u1_spec(1, n, ring)
                            : v1_spec(n, ring, dim);
    CongruencePattern pat = base.pattern;
    pat = pat.intersect(transport(base.pattern, eta, eta_power, ring.K));
    if (m >= 1) pat = pat.intersect(diag_alternating_pattern(dim, m));
    SubgroupSpec s = base;
    s.name = name;
    s.pattern = pat;
    return s;
}

}  // namespace

SubgroupSpec v_nm_spec(int n, int m, const RingSpec& ring) {
    return v_tower(n, m, m, ring, 4, Cocharacter::eta_gu22(),
                   "V(p^" + std::to_string(n) + ",p^" + std::to_string(m) + ")");
}

SubgroupSpec v_prime_spec(int n, int m, const RingSpec& ring) {
    return v_tower(n, m, m + 1, ring, 4, Cocharacter::eta_gu22(),
                   "V'(p^" + std::to_string(n) + ",p^" + std::to_string(m) + ")");
}

SubgroupSpec v_nm_spec_g1(int n, int m, const RingSpec& ring) {
    return v_tower(n, m, m, ring, 2, Cocharacter::eta_gl2(),
                   "V_g1(p^" + std::to_string(n) + ",p^" + std::to_string(m) + ")");
}

SubgroupSpec v_prime_spec_g1(int n, int m, const RingSpec& ring) {
    return v_tower(n, m, m + 1, ring, 2, Cocharacter::eta_gl2(),
                   "V'_g1(p^" + std::to_string(n) + ",p^" + std::to_string(m) + ")");
}

SubgroupSpec v_nm_pattern(int n, int m, const RingSpec& ring) {
    if (n <= 3 * m) fail(Errc::PatternInvalid, "v_nm_pattern: requires n > 3m");
    if (static_cast<unsigned>(n) > ring.K) fail(Errc::PrecisionTooLow, "v_nm_pattern: K < n");
    SubgroupSpec s = v1_spec(n, ring, 4);
    s.name = "Vpat(p^" + std::to_string(n) + ",p^" + std::to_string(m) + ")";
    CongruencePattern p = CongruencePattern::trivial(4);
    const int E[4][4] = {{0, m, 2 * m, 3 * m}, {n, m, m, 2 * m}, {n, m, 0, m}, {n, n, n, n}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p.e(i, j) = E[i][j];
    s.pattern = p;
    return s;
}

SubgroupSpec klingen_spec(int g, const RingSpec& ring) {
    int n = 2 * g;
    SubgroupSpec s;
    s.name = "Klingen";
    s.kind = g == 1 ? GroupKind::GL : GroupKind::GSp;
    s.ring = &ring;
    s.dim = n;
    s.pattern = CongruencePattern::trivial(n);
    int K = static_cast<int>(ring.K);
    for (int j = 0; j < n; ++j) s.pattern.e(n - 1, j) = K;
    for (int i = 1; i < n; ++i) s.pattern.e(i, 0) = K;
    return s;
}

std::pair<SubgroupSpec, SubgroupSpec> borel_specs(GroupKind kind, int dim, const RingSpec& ring) {
    SubgroupSpec upper = full_spec(kind, dim, ring);
    upper.name = "Borel_upper";
    SubgroupSpec lower = upper;
    lower.name = "Borel_lower";
    int K = static_cast<int>(ring.K);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (i > j) upper.pattern.e(i, j) = K;
            if (i < j) lower.pattern.e(i, j) = K;
        }
    return {upper, lower};
}

GroupElem u_split(const RingSpec& split_ring) {
    if (split_ring.kind != RingKind::Split) fail(Errc::ConfigError, "u_split: need split ring");
    const RingSpec& Q = split_ring.rational_shadow();
    Mat m = Mat::identity(Q, 4);
    m.at(0, 2) = -RingElem::one(Q);
    Mat g = split_iso_inv(m, RingElem::one(Q), split_ring);
    return GroupElem(g, RingElem::one(split_ring));
}

GroupElem u_inert(const RingElem& e) {
    const RingSpec& R = *e.R;
    if (R.kind != RingKind::Inert) fail(Errc::ConfigError, "u_inert: need inert ring");
    // e must generate O_F/(p O_F + Z): its y-coordinate must be a unit mod p
    if (e.b % R.p == 0) fail(Errc::BadGenerator, "u_inert: second basis coordinate not a unit mod p");
    Mat u = Mat::identity(R, 4);
    u.at(0, 2) = e;
    u.at(1, 3) = conj(e);
    auto nu = gu_multiplier(u);
    if (!nu || !nu->is_one()) fail(Errc::NotInGroup, "u_inert: multiplier is not 1");
    return GroupElem(u, *nu);
}

}  // namespace towers
