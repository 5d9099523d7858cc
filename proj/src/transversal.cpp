#include "towers/transversal.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>

#include "towers/parallel.hpp"

namespace towers {

namespace {

uint64_t pow_int(uint64_t p, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= p;
    return r;
}

RingElem scale_p(const RingElem& x, unsigned e) {
    uint64_t f = pow_int(x.R->p, e) % x.R->q;
    return RingElem(*x.R, mulm(x.a, f, x.R->q), mulm(x.b, f, x.R->q));
}

}  // namespace

TowerContext make_tower(FieldCase c, uint64_t p, int m, int n, const RingSpec& ring) {
    if (ring.p != p) fail(Errc::ConfigError, "make_tower: ring prime mismatch");
    if (static_cast<unsigned>(n) > ring.K || n < 3 * m + 3)
        fail(Errc::PrecisionTooLow, "make_tower: need K >= n >= 3m+3");
    TowerContext T;
    T.ring = &ring;
    T.fcase = c;
    T.m = m;
    T.n = n;
    T.V = v_nm_spec(n, m, ring);
    T.Vprime = v_prime_spec(n, m, ring);
    if (c == FieldCase::Split) {
        T.u = u_split(ring).mat;
    } else {
        T.u = u_inert(RingElem::gen(ring)).mat;
    }
    T.u_inv = T.u.inverse();

    T.HV = T.V;
    T.HV.name = "u" + T.V.name + "u^-1 ∩ H";
    T.HV.pconj = T.u;
    T.HV.pconj_inv = T.u_inv;
    T.HV.rational = true;
    T.HVprime = T.Vprime;
    T.HVprime.name = "u" + T.Vprime.name + "u^-1 ∩ H";
    T.HVprime.pconj = T.u;
    T.HVprime.pconj_inv = T.u_inv;
    T.HVprime.rational = true;

    T.VcapH = T.V;
    T.VcapH.name = T.V.name + " ∩ u^-1Hu";
    T.VcapH.rational = true;
    T.VcapH.rconj = T.u;
    T.VcapH.rconj_inv = T.u_inv;
    T.VprimeCapH = T.Vprime;
    T.VprimeCapH.name = T.Vprime.name + " ∩ u^-1Hu";
    T.VprimeCapH.rational = true;
    T.VprimeCapH.rconj = T.u;
    T.VprimeCapH.rconj_inv = T.u_inv;
    return T;
}

Transversal transversal_sigma(const TowerContext& T) {
    const RingSpec& R = *T.ring;
    uint64_t p = R.p;
    int m = T.m;
    Transversal out;
    out.big = T.V;
    out.small = T.Vprime;
    uint64_t p2 = p * p, p3 = p2 * p;
    if (T.fcase == FieldCase::Split) {
        out.param_description =
            "sigma_v, split: unitriangular (M,1) with windows (k1,r1,r2,r3,r4,k2) over "
            "Z/p x Z/p^2 x Z/p^3 x Z/p x Z/p^2 x Z/p";
        const RingSpec& Q = R.rational_shadow();
        for (uint64_t k1 = 0; k1 < p; ++k1)
            for (uint64_t r1 = 0; r1 < p2; ++r1)
                for (uint64_t r2 = 0; r2 < p3; ++r2)
                    for (uint64_t r3 = 0; r3 < p; ++r3)
                        for (uint64_t r4 = 0; r4 < p2; ++r4)
                            for (uint64_t k2 = 0; k2 < p; ++k2) {
                                Mat M = Mat::identity(Q, 4);
                                M.at(0, 1) = scale_p(RingElem(Q, k1), m);
                                M.at(0, 2) = scale_p(RingElem(Q, r1), 2 * m);
                                M.at(0, 3) = scale_p(RingElem(Q, r2), 3 * m);
                                M.at(1, 2) = scale_p(RingElem(Q, r3), m);
                                M.at(1, 3) = scale_p(RingElem(Q, r4), 2 * m);
                                M.at(2, 3) = scale_p(RingElem(Q, k2), m);
                                Mat g = split_iso_inv(M, RingElem::one(Q), R);
                                if (!T.V.membership(g))
                                    fail(Errc::PatternInvalid, "sigma_v (split) rep escapes V");
                                out.reps.push_back(std::move(g));
                            }
    } else {
        out.param_description =
            "sigma_v, inert: unitriangular with windows (r2~, r1, k1, r3) over "
            "Z/p^3 x O/p^2 x O/p x Z/p; r4 = conj(r1) - conj(k1) r3, entry (3,4) = -p^m conj(k1)";
        for (uint64_t r2t = 0; r2t < p3; ++r2t)
            for (uint64_t r1a = 0; r1a < p2; ++r1a)
                for (uint64_t r1b = 0; r1b < p2; ++r1b)
                    for (uint64_t k1a = 0; k1a < p; ++k1a)
                        for (uint64_t k1b = 0; k1b < p; ++k1b)
                            for (uint64_t r3v = 0; r3v < p; ++r3v) {
                                RingElem k1(R, k1a, k1b), r1(R, r1a, r1b);
                                RingElem r3 = RingElem::from_int(R, static_cast<int64_t>(r3v));
                                RingElem r4 = conj(r1) - conj(k1) * r3;
                                RingElem r2 = RingElem::from_int(R, static_cast<int64_t>(r2t)) + k1 * r4;
                                Mat g = Mat::identity(R, 4);
                                g.at(0, 1) = scale_p(k1, m);
                                g.at(0, 2) = scale_p(r1, 2 * m);
                                g.at(0, 3) = scale_p(r2, 3 * m);
                                g.at(1, 2) = scale_p(r3, m);
                                g.at(1, 3) = scale_p(r4, 2 * m);
                                g.at(2, 3) = scale_p(-conj(k1), m);
                                if (!T.V.membership(g))
                                    fail(Errc::PatternInvalid, "sigma_v (inert) rep escapes V");
                                out.reps.push_back(std::move(g));
                            }
    }
    out.pattern_side = out.reps;
    return out;
}

Transversal transversal_sigma_prime(const TowerContext& T) {
    const RingSpec& R = *T.ring;
    uint64_t p = R.p;
    int m = T.m;
    Transversal out;
    out.big = T.HV;
    out.small = T.HVprime;

    auto digit = [&](uint64_t v, unsigned d) { return static_cast<uint16_t>(v / pow_int(p, d) % p); };

    size_t total = static_cast<size_t>(pow_int(p, 10));
    std::vector<Mat> reps(total, Mat(R, 4)), pside(total, Mat(R, 4));
    std::vector<std::string> failures;
    std::mutex mu;

    auto build = [&](size_t begin, size_t end, unsigned) {
        for (size_t idx = begin; idx < end; ++idx) {
            // decode the ten window digits
            uint64_t v = idx;
            auto take = [&](uint64_t vals) {
                uint64_t r = v % vals;
                v /= vals;
                return r;
            };
            std::vector<Steering> st;
            if (T.fcase == FieldCase::Split) {
                uint64_t k1 = take(p), r1 = take(p * p), r2 = take(p * p * p);
                uint64_t r3 = take(p), r4 = take(p * p), k2 = take(p);
                // W-form of the appendix: s1 = s2 = 0, t = k1 + k2; all on the
                // first split component (the (M, a) coordinates)
                for (unsigned d = 1; d <= static_cast<unsigned>(m); ++d) {
                    st.push_back({0, 0, 0, d, 0});
                    st.push_back({1, 1, 0, d, 0});
                }
                st.push_back({2, 1, 0, static_cast<unsigned>(m), static_cast<uint16_t>((k1 + k2) % p)});
                st.push_back({0, 1, 0, static_cast<unsigned>(m), digit(k1, 0)});
                st.push_back({1, 2, 0, static_cast<unsigned>(m), digit(r3, 0)});
                st.push_back({2, 3, 0, static_cast<unsigned>(m), digit(k2, 0)});
                for (unsigned d = 0; d < 2; ++d) {
                    st.push_back({0, 2, 0, static_cast<unsigned>(2 * m) + d, digit(r1, d)});
                    st.push_back({1, 3, 0, static_cast<unsigned>(2 * m) + d, digit(r4, d)});
                }
                for (unsigned d = 0; d < 3; ++d)
                    st.push_back({0, 3, 0, static_cast<unsigned>(3 * m) + d, digit(r2, d)});
            } else {
                // inert: free digits live in the V'-window entries themselves;
                // t is recovered from the y-part of k2 (entry (3,4)) afterwards
                uint64_t r3 = take(p), k2a = take(p), k2b = take(p);
                uint64_t r4a = take(p * p), r4b = take(p * p), r2 = take(p * p * p);
                st.push_back({1, 2, 0, static_cast<unsigned>(m), digit(r3, 0)});
                st.push_back({1, 2, 1, static_cast<unsigned>(m), 0});
                st.push_back({2, 3, 0, static_cast<unsigned>(m), digit(k2a, 0)});
                st.push_back({2, 3, 1, static_cast<unsigned>(m), digit(k2b, 0)});
                for (unsigned d = 0; d < 2; ++d) {
                    st.push_back({1, 3, 0, static_cast<unsigned>(2 * m) + d, digit(r4a, d)});
                    st.push_back({1, 3, 1, static_cast<unsigned>(2 * m) + d, digit(r4b, d)});
                }
                for (unsigned d = 0; d < 3; ++d)
                    st.push_back({0, 3, 0, static_cast<unsigned>(3 * m) + d, digit(r2, d)});
            }
            try {
                Mat g = steered_lift(T.VcapH, st, Mat::identity(R, 4));
                Mat rep, ps;
                if (T.fcase == FieldCase::Split) {
                    // appendix convention: representatives u (sigma'_w)^{-1} u^{-1}
                    ps = g.inverse();
                    rep = (T.u * ps) * T.u_inv;
                } else {
                    ps = g;
                    rep = (T.u * g) * T.u_inv;
                }
                if (!T.HV.membership(rep))
                    fail(Errc::PatternInvalid, "sigma' rep escapes uVu^-1 ∩ H");
                reps[idx] = std::move(rep);
                pside[idx] = std::move(ps);
            } catch (const Error& e) {
                std::lock_guard<std::mutex> lock(mu);
                failures.push_back("w=" + std::to_string(idx) + ": " + e.what());
            }
        }
    };
    parallel_chunks(total, build);
    if (!failures.empty())
        fail(Errc::PatternInvalid,
             "sigma' construction failed for " + std::to_string(failures.size()) +
                 " parameter vectors; first: " + failures.front());
    out.reps = std::move(reps);
    out.pattern_side = std::move(pside);
    out.param_description =
        T.fcase == FieldCase::Split
            ? "sigma'_w, split: steered lifts with W = {(r2,r1,r4,k1,r3,k2,0,0,k1+k2)}, reps u w^-1 u^-1"
            : "sigma'_w, inert: steered lifts on the V' windows (r3; k2 both coords; r4 both coords; "
              "r2 rational), reps u w u^-1";
    return out;
}

CheckReport verify_transversal(const Transversal& t, const VerifyOptions& opt) {
    Stopwatch sw;
    const bool debug_timing = std::getenv("TOWERS_VERIFY_TIMING") != nullptr;
    auto phase = [&](const char* name) {
        if (debug_timing) std::fprintf(stderr, "[verify] %s at %lld ms\n", name, static_cast<long long>(sw.ms()));
    };
    CheckReport rep;
    rep.name = "verify-transversal";
    rep.params = {{"big", t.big.name}, {"small", t.small.name}, {"reps", t.reps.size()}};
    const RingSpec& R = *t.big.ring;
    size_t N = t.reps.size();

    // (a) membership in big
    std::atomic<size_t> bad_membership{0};
    std::mutex mu;
    parallel_chunks(N, [&](size_t b, size_t e, unsigned) {
        for (size_t i = b; i < e; ++i)
            if (!t.big.membership(t.reps[i])) {
                ++bad_membership;
                std::lock_guard<std::mutex> lock(mu);
                rep.add_counterexample("rep " + std::to_string(i) + " not in " + t.big.name);
            }
    }, opt.threads);
    phase("membership done");

    // (b) pairwise distinctness. Membership of a quotient rep_i^-1 rep_j in the
    // small subgroup reduces to its pattern conditions on the pattern side: the
    // group relation and the rationality constraint hold automatically for
    // quotients of verified big-members.
    std::vector<Mat> inv(N, Mat(R, t.big.dim));
    parallel_chunks(N, [&](size_t b, size_t e, unsigned) {
        for (size_t i = b; i < e; ++i) inv[i] = t.pattern_side[i].inverse();
    }, opt.threads);
    phase("inverses done");

    // condition list in a discriminating order: window entries (small deeper than
    // big) first, shallow to deep, then every other pattern condition
    struct Cond {
        int i, j, e;
        bool diag_one;
    };
    std::vector<Cond> conds;
    int dim = t.big.dim;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            int e = t.small.pattern.e(i, j);
            if (e > 0 && e > t.big.pattern.e(i, j)) conds.push_back({i, j, e, i == j});
        }
    std::sort(conds.begin(), conds.end(), [](const Cond& a, const Cond& b) { return a.e < b.e; });
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            int e = t.small.pattern.e(i, j);
            if (e > 0 && e <= t.big.pattern.e(i, j)) conds.push_back({i, j, e, i == j});
        }
    for (int i = 0; i < dim; ++i)
        for (const auto& d : t.small.pattern.diag[i])
            if (d.kind == DiagTarget::Kind::OneModPa && d.a > 0) conds.push_back({i, i, d.a, true});

    unsigned K = R.K;
    auto mod_of = [&](int e) {
        if (static_cast<unsigned>(e) >= K) return R.q;
        uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= R.p;
        return r;
    };
    std::vector<uint64_t> mods;
    mods.reserve(conds.size());
    for (const auto& c : conds) mods.push_back(mod_of(c.e));

    // flat row/column tables for the shallowest window: the overwhelming
    // majority of pairs is rejected on this single product entry
    if (conds.empty()) fail(Errc::PatternInvalid, "small spec has no separating conditions");
    // The filter entry (c0) only needs arithmetic mod pe0, which divides q, so
    // the tables are reduced up front; with pe0 <= 23^6 the accumulators stay
    // far below 2^32.
    const Cond c0 = conds.front();
    const uint64_t pe0 = mods.front();
    const uint32_t sc = static_cast<uint32_t>(R.s % pe0), tc = static_cast<uint32_t>(R.t % pe0);
    const uint64_t ta0 = c0.diag_one ? 1 % pe0 : 0;
    const uint64_t tb0 = R.kind == RingKind::Split ? ta0 : 0;
    const size_t d = static_cast<size_t>(dim);
    std::vector<uint16_t> rowa(N * d), rowb(N * d), cola(N * d), colb(N * d);
    for (size_t i = 0; i < N; ++i)
        for (size_t k = 0; k < d; ++k) {
            rowa[i * d + k] = static_cast<uint16_t>(inv[i].at(c0.i, static_cast<int>(k)).a % pe0);
            rowb[i * d + k] = static_cast<uint16_t>(inv[i].at(c0.i, static_cast<int>(k)).b % pe0);
            cola[i * d + k] = static_cast<uint16_t>(t.pattern_side[i].at(static_cast<int>(k), c0.j).a % pe0);
            colb[i * d + k] = static_cast<uint16_t>(t.pattern_side[i].at(static_cast<int>(k), c0.j).b % pe0);
        }
    if (pe0 > (uint64_t{1} << 16))
        fail(Errc::InfeasibleEnumeration, "window modulus too large for the pair filter");

    // rep_i^-1 rep_j lies in the subgroup iff rep_j^-1 rep_i does, so unordered
    // pairs suffice; the index permutation balances the triangular loop across
    // chunks
    std::atomic<size_t> collisions{0};
    parallel_chunks(N, [&](size_t b, size_t e, unsigned) {
        for (size_t v = b; v < e; ++v) {
            size_t i = (v % 2 == 0) ? v / 2 : N - 1 - v / 2;
            const uint16_t* ra = &rowa[i * d];
            const uint16_t* rb = &rowb[i * d];
            for (size_t j = i + 1; j < N; ++j) {
                const uint16_t* ca = &cola[j * d];
                const uint16_t* cb = &colb[j * d];
                // raw accumulation: at most 4 * pe0^3 < 2^50, one reduction at the end
                uint64_t acc_a = 0, acc_b = 0;
                switch (R.kind) {
                    case RingKind::Rational:
                        for (size_t k = 0; k < d; ++k)
                            acc_a += static_cast<uint64_t>(ra[k]) * ca[k];
                        break;
                    case RingKind::Split:
                        for (size_t k = 0; k < d; ++k) {
                            acc_a += static_cast<uint64_t>(ra[k]) * ca[k];
                            acc_b += static_cast<uint64_t>(rb[k]) * cb[k];
                        }
                        break;
                    case RingKind::Inert:
                        for (size_t k = 0; k < d; ++k) {
                            uint64_t bd = static_cast<uint64_t>(rb[k]) * cb[k];
                            acc_a += static_cast<uint64_t>(ra[k]) * ca[k] + bd * tc;
                            acc_b += static_cast<uint64_t>(ra[k]) * cb[k] +
                                     static_cast<uint64_t>(rb[k]) * ca[k] + bd * sc;
                        }
                        break;
                }
                if (acc_a % pe0 != ta0 || acc_b % pe0 != tb0) continue;
                // full condition scan for the rare survivors
                const Mat& A = inv[i];
                const Mat& B = t.pattern_side[j];
                bool inside = true;
                for (size_t ci = 1; ci < conds.size() && inside; ++ci) {
                    const Cond& c = conds[ci];
                    RingElem acc = RingElem::zero(R);
                    for (int k = 0; k < dim; ++k) acc = acc + A.at(c.i, k) * B.at(k, c.j);
                    uint64_t pe = mods[ci];
                    uint64_t ta = c.diag_one ? 1 % pe : 0;
                    uint64_t tb = R.kind == RingKind::Split ? ta : 0;
                    if (acc.a % pe != ta || acc.b % pe != tb) inside = false;
                }
                if (inside) {
                    ++collisions;
                    std::lock_guard<std::mutex> lock(mu);
                    rep.add_counterexample("reps " + std::to_string(i) + "," + std::to_string(j) +
                                           " share a coset");
                }
            }
        }
    }, opt.threads);

    phase("distinctness done");
    // (c) completeness by counting
    BigInt idx = 0;
    bool count_ok = true;
    if (opt.check_completeness) {
        IndexOptions io;
        io.order = opt.order;
        idx = subgroup_index(t.big, t.small, io);
        count_ok = idx == BigInt(t.reps.size());
        if (!count_ok)
            rep.add_counterexample("cardinality " + std::to_string(t.reps.size()) +
                                   " != index " + idx.str());
    }

    rep.expected = {{"membership_failures", 0}, {"coset_collisions", 0},
                    {"cardinality_matches_index", true}};
    rep.computed = {{"membership_failures", bad_membership.load()},
                    {"coset_collisions", collisions.load()},
                    {"cardinality_matches_index", count_ok},
                    {"index", idx.str()},
                    {"reps", t.reps.size()}};
    rep.pass = bad_membership == 0 && collisions == 0 && count_ok;
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace towers
