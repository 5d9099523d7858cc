#include "towers/checks.hpp"

#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "towers/parallel.hpp"

namespace towers {

namespace {

const RingSpec& tower_ring(FieldCase fcase, uint64_t p, unsigned K) {
    if (fcase == FieldCase::Split) {
        // the abstract pair ring; label it with the field when p actually splits
        for (int d : {-1, -3, -7}) {
            try {
                return RingSpec::split(p, K, d);
            } catch (const Error&) {
            }
        }
        return RingSpec::split(p, K);
    }
    for (int d : {-1, -3, -7}) {
        try {
            return RingSpec::inert_field(p, K, d);
        } catch (const Error&) {
        }
    }
    fail(Errc::ConfigError, "no default inert field for p=" + std::to_string(p));
}

BigInt pow_big(uint64_t p, int e) {
    BigInt r = 1;
    while (e--) r *= p;
    return r;
}

}  // namespace

CheckReport closed_immersion_check(FieldCase fcase, uint64_t p, int m, uint64_t cap) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = fcase == FieldCase::Split ? "appendix-split/closed-immersion"
                                         : "appendix-inert/closed-immersion";
    rep.params = {{"case", field_case_name(fcase)}, {"p", p}, {"m", m}};
    unsigned Ksmall = static_cast<unsigned>(m + 1);
    const RingSpec& Rs = tower_ring(fcase, p, Ksmall);
    // V' pattern resolved at a reference precision, clamped down to m+1
    const RingSpec& Rbig = tower_ring(fcase, p, static_cast<unsigned>(3 * m + 3));
    SubgroupSpec vp_big = v_prime_spec(3 * m + 3, m, Rbig);
    SubgroupSpec S = v1_spec(1, Rs, 4);
    S.name = "V' mod p^{m+1}";
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            S.pattern.e(i, j) = std::min<int>(vp_big.pattern.e(i, j), static_cast<int>(Ksmall));

    std::vector<Mat> members = enumerate_members(S, cap);
    Mat u = fcase == FieldCase::Split ? u_split(Rs).mat : u_inert(RingElem::gen(Rs)).mat;
    Mat u_inv = u.inverse();

    size_t in_h = 0, violations = 0;
    for (const Mat& g : members) {
        Mat x = (u * g) * u_inv;
        if (!x.is_rational()) continue;  // u g u^-1 not in H
        ++in_h;
        auto nu = gu_multiplier(g);
        bool concl = nu.has_value();
        if (concl) {
            RingElem a = g.at(0, 0);
            concl = a.is_rational() && g.at(2, 2) == a && *nu == a &&
                    g.at(1, 1).is_one() && g.at(2, 1).is_zero();
        }
        if (!concl) {
            ++violations;
            rep.add_counterexample(g.str());
        }
    }
    rep.expected = {{"counterexamples", 0}};
    rep.computed = {{"v_prime_members_mod_pm1", members.size()},
                    {"with_conjugate_in_H", in_h},
                    {"counterexamples", violations}};
    rep.pass = violations == 0 && in_h > 0;
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport index_p10_check(FieldCase fcase, uint64_t p, int m, int n, uint64_t seed) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "index-p10";
    rep.params = {{"case", field_case_name(fcase)}, {"p", p}, {"m", m}, {"n", n}};
    rep.seed = seed;
    const RingSpec& R = tower_ring(fcase, p, static_cast<unsigned>(n));
    TowerContext T = make_tower(fcase, p, m, n, R);
    IndexOptions io;
    io.order.seed = seed;
    BigInt idx = subgroup_index(T.V, T.Vprime, io);
    BigInt expect = pow_big(p, 10);
    rep.expected = {{"index", expect.str()}};
    rep.computed = {{"index", idx.str()}};
    rep.pass = idx == expect;
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport cartesian_degree_check(FieldCase fcase, uint64_t p, int m, int n, uint64_t seed) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "cartesian-degree";
    rep.params = {{"case", field_case_name(fcase)}, {"p", p}, {"m", m}, {"n", n}};
    rep.seed = seed;
    const RingSpec& R = tower_ring(fcase, p, static_cast<unsigned>(n));
    TowerContext T = make_tower(fcase, p, m, n, R);
    IndexOptions io;
    io.order.seed = seed;
    BigInt lhs = subgroup_index(T.V, T.Vprime, io);
    io.order.seed = seed + 17;
    BigInt rhs = subgroup_index(T.HV, T.HVprime, io);
    BigInt expect = pow_big(p, 10);
    rep.expected = {{"index_V", expect.str()}, {"index_H", expect.str()}};
    rep.computed = {{"index_V", lhs.str()}, {"index_H", rhs.str()}};
    rep.pass = lhs == expect && rhs == expect;
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport sigma_transversal_check(FieldCase fcase, uint64_t p, int m, int n, bool prime,
                                    uint64_t seed) {
    Stopwatch sw;
    const RingSpec& R = tower_ring(fcase, p, static_cast<unsigned>(n));
    TowerContext T = make_tower(fcase, p, m, n, R);
    Transversal t = prime ? transversal_sigma_prime(T) : transversal_sigma(T);
    VerifyOptions vo;
    vo.order.seed = seed;
    CheckReport rep = verify_transversal(t, vo);
    rep.name = std::string(prime ? "transversal-sigma-prime" : "transversal-sigma") + "/" +
               field_case_name(fcase);
    rep.params["p"] = p;
    rep.params["m"] = m;
    rep.params["n"] = n;
    rep.seed = seed;
    rep.decision_log.push_back(t.param_description);
    rep.elapsed_ms = sw.ms();
    return rep;
}

std::vector<CheckReport> appendix_checks(FieldCase fcase, uint64_t p, int m, int n, uint64_t seed) {
    std::vector<CheckReport> out;
    out.push_back(closed_immersion_check(fcase, p, m));
    out.push_back(sigma_transversal_check(fcase, p, m, n, false, seed));
    out.push_back(sigma_transversal_check(fcase, p, m, n, true, seed + 1));
    out.push_back(cartesian_degree_check(fcase, p, m, n, seed + 2));
    return out;
}

CheckReport exact_order_bijection_check(int g, uint64_t p, int m, uint64_t cap) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "exact-order";
    rep.params = {{"g", g}, {"p", p}, {"m", m}};
    const RingSpec& R = RingSpec::rational(p, static_cast<unsigned>(m));
    GroupKind kind = g == 1 ? GroupKind::GL : GroupKind::GSp;
    SubgroupSpec amb = full_spec(kind, 2 * g, R);
    std::vector<Mat> all = enumerate_members(amb, cap);
    SubgroupSpec u1 = u1_spec(g, m, R);
    size_t u1_count = 0;
    for (const Mat& h : all)
        if (u1.membership(h)) ++u1_count;

    // expected: vectors of exact order p^m in (Z/p^m)^{2g}
    BigInt vectors = pow_big(p, 2 * g * m) - pow_big(p, 2 * g * (m - 1));

    // row-map classes
    std::map<std::vector<uint64_t>, size_t> classes;
    bool rows_exact = true;
    for (const Mat& h : all) {
        std::vector<uint64_t> row(static_cast<size_t>(2 * g));
        bool exact = false;
        for (int j = 0; j < 2 * g; ++j) {
            row[static_cast<size_t>(j)] = h.at(2 * g - 1, j).a;
            if (row[static_cast<size_t>(j)] % p != 0) exact = true;
        }
        if (!exact) rows_exact = false;
        classes[row]++;
    }
    bool fibers_uniform = true;
    for (const auto& [row, sz] : classes)
        if (sz != u1_count) fibers_uniform = false;

    BigInt idx = BigInt(all.size()) / BigInt(u1_count);
    bool pass = rows_exact && fibers_uniform && BigInt(classes.size()) == vectors && idx == vectors &&
                BigInt(all.size()) == BigInt(u1_count) * vectors;
    rep.expected = {{"exact_order_vectors", vectors.str()}, {"index", vectors.str()}};
    rep.computed = {{"group_order", all.size()}, {"u1_order", u1_count},
                    {"index", idx.str()}, {"row_classes", classes.size()},
                    {"rows_exact_order", rows_exact}, {"fibers_are_u1_cosets", fibers_uniform}};
    rep.pass = pass;
    if (!pass) rep.add_counterexample("level-structure bijection failed");
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport remark_pattern_equivalence(uint64_t p, int m, int n, size_t samples, uint64_t seed,
                                       bool weaken_entry21) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "remark-pattern";
    rep.params = {{"p", p}, {"m", m}, {"n", n}, {"samples", samples},
                  {"fault", weaken_entry21 ? "weaken-entry-2-1" : "none"}};
    rep.seed = seed;
    const RingSpec& R = tower_ring(FieldCase::Inert, p, static_cast<unsigned>(n));
    SubgroupSpec A = v_nm_spec(n, m, R);
    SubgroupSpec B = v_nm_pattern(n, m, R);
    if (weaken_entry21) {
        B.pattern.e(1, 0) = 0;
        B.name += " (weakened)";
    }

    std::atomic<size_t> a_not_in_b{0}, b_not_in_a{0};
    Level1Options l1;
    Level1Result la = level1_enumerate(A, l1), lb = level1_enumerate(B, l1);
    std::mutex mu;
    parallel_chunks(samples, [&](size_t b0, size_t e0, unsigned) {
        for (size_t i = b0; i < e0; ++i) {
            Rng rng(seed * 0x9e3779b97f4a7c15ULL + i);
            Mat ga = sample_member(A, rng, la.members);
            if (!B.membership(ga)) {
                ++a_not_in_b;
                std::lock_guard<std::mutex> lock(mu);
                rep.add_counterexample("recursive member escapes pattern: " + ga.str());
            }
            Mat gb = sample_member(B, rng, lb.members);
            if (!A.membership(gb)) {
                ++b_not_in_a;
                std::lock_guard<std::mutex> lock(mu);
                rep.add_counterexample("pattern member escapes recursion: " + gb.str());
            }
        }
    });
    OrderOptions oo;
    oo.seed = seed + 3;
    BigInt oa = subgroup_order(A, oo);
    oo.seed = seed + 4;
    BigInt ob = subgroup_order(B, oo);
    bool orders_equal = oa == ob;
    // Sharpness of the stated profile: every off-diagonal exponent below full
    // precision must be attained by some member (a witness with valuation
    // exactly e at that entry). An exponent that could be weakened without
    // changing the subgroup -- because the group relation forces a deeper
    // congruence -- has no witness and is flagged.
    bool sharp = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            int e = B.pattern.e(i, j);
            if (e >= static_cast<int>(R.K)) continue;
            bool witness = false;
            for (int comp = 0; comp < static_cast<int>(R.coords()) && !witness; ++comp) {
                try {
                    std::vector<Steering> st{
                        {i, j, comp, static_cast<unsigned>(e), 1}};
                    Mat w = steered_lift(B, st, Mat::identity(R, 4));
                    witness = B.membership(w) && valuation(w.at(i, j)) == static_cast<unsigned>(e);
                } catch (const Error&) {
                }
            }
            for (size_t t = 0; t < 64 && !witness; ++t) {
                Rng rng(seed * 31 + 1000 * static_cast<uint64_t>(i * 4 + j) + t);
                Mat w = sample_member(B, rng, lb.members);
                witness = valuation(w.at(i, j)) == static_cast<unsigned>(e);
            }
            if (!witness) {
                sharp = false;
                rep.add_counterexample("pattern exponent at entry (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ") is not sharp");
            }
        }
    rep.expected = {{"inclusion_violations", 0}, {"orders_equal", true}, {"pattern_sharp", true}};
    rep.computed = {{"a_not_in_b", a_not_in_b.load()}, {"b_not_in_a", b_not_in_a.load()},
                    {"order_recursive", oa.str()}, {"order_pattern", ob.str()},
                    {"orders_equal", orders_equal}, {"pattern_sharp", sharp}};
    rep.pass = a_not_in_b == 0 && b_not_in_a == 0 && orders_equal && sharp;
    rep.elapsed_ms = sw.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// GSp6 stabilizer (section 5.4 remark)
// ---------------------------------------------------------------------------

namespace {

using M6 = std::array<uint64_t, 36>;

M6 mul6(const M6& a, const M6& b, uint64_t p) {
    M6 r{};
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) {
            uint64_t v = a[static_cast<size_t>(i * 6 + k)];
            if (!v) continue;
            for (int j = 0; j < 6; ++j)
                r[static_cast<size_t>(i * 6 + j)] =
                    (r[static_cast<size_t>(i * 6 + j)] + v * b[static_cast<size_t>(k * 6 + j)]) % p;
        }
    return r;
}

M6 inv6(const M6& a, uint64_t p) {
    std::array<uint64_t, 72> m{};
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) m[static_cast<size_t>(i * 12 + j)] = a[static_cast<size_t>(i * 6 + j)] % p;
        m[static_cast<size_t>(i * 12 + 6 + i)] = 1;
    }
    for (int c = 0; c < 6; ++c) {
        int piv = -1;
        for (int r = c; r < 6; ++r)
            if (m[static_cast<size_t>(r * 12 + c)] % p) {
                piv = r;
                break;
            }
        if (piv < 0) fail(Errc::NotInGroup, "u matrix singular mod p");
        for (int j = 0; j < 12; ++j) std::swap(m[static_cast<size_t>(c * 12 + j)], m[static_cast<size_t>(piv * 12 + j)]);
        uint64_t inv = invm(m[static_cast<size_t>(c * 12 + c)], p);
        for (int j = 0; j < 12; ++j) m[static_cast<size_t>(c * 12 + j)] = m[static_cast<size_t>(c * 12 + j)] * inv % p;
        for (int r = 0; r < 6; ++r) {
            if (r == c) continue;
            uint64_t f = m[static_cast<size_t>(r * 12 + c)] % p;
            if (!f) continue;
            for (int j = 0; j < 12; ++j)
                m[static_cast<size_t>(r * 12 + j)] =
                    (m[static_cast<size_t>(r * 12 + j)] + (p - f) * m[static_cast<size_t>(c * 12 + j)]) % p;
        }
    }
    M6 r{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r[static_cast<size_t>(i * 6 + j)] = m[static_cast<size_t>(i * 12 + 6 + j)];
    return r;
}

// characteristic polynomial via sums of principal minors (exact mod p)
std::array<uint64_t, 7> charpoly6(const M6& x, uint64_t p) {
    std::array<uint64_t, 7> cp{};
    cp[0] = 1;  // t^6 coefficient
    for (int k = 1; k <= 6; ++k) {
        // e_k = sum of k x k principal minors
        uint64_t ek = 0;
        auto subs = subsets_lex(6, k);
        for (const auto& s : subs) {
            // determinant of the principal submatrix by Laplace (k <= 6)
            std::function<uint64_t(std::vector<int>, std::vector<int>)> det =
                [&](std::vector<int> rows, std::vector<int> cols) -> uint64_t {
                if (rows.size() == 1)
                    return x[static_cast<size_t>(rows[0] * 6 + cols[0])] % p;
                uint64_t acc = 0;
                std::vector<int> sr(rows.begin() + 1, rows.end());
                for (size_t c = 0; c < cols.size(); ++c) {
                    std::vector<int> sc;
                    for (size_t j = 0; j < cols.size(); ++j)
                        if (j != c) sc.push_back(cols[j]);
                    uint64_t t = x[static_cast<size_t>(rows[0] * 6 + cols[c])] % p * det(sr, sc) % p;
                    acc = c % 2 == 0 ? (acc + t) % p : (acc + p - t) % p;
                }
                return acc;
            };
            ek = (ek + det(s, s)) % p;
        }
        cp[static_cast<size_t>(k)] = k % 2 == 1 ? (p - ek) % p : ek;  // (-1)^k e_k
    }
    return cp;
}

}  // namespace

CheckReport gsp6_stabilizer_check(uint64_t p) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "gsp6-stabilizer";
    rep.params = {{"p", p}};
    if (p < 5) fail(Errc::ConfigError, "gsp6_stabilizer_check: p >= 5 required");
    static const int64_t U[36] = {1, 2, 1, -1, 1, 1,  0, 3, 2, 0, 1, -1, 0, 2, 2, 1, 0, -1,
                                  0, 1, 1, 2, -1, 0,  0, 0, 0, -1, 1, -1, 0, 0, 0, 0, 0, 1};
    M6 u{}, J{};
    for (int i = 0; i < 36; ++i) u[static_cast<size_t>(i)] = static_cast<uint64_t>(((U[i] % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) % static_cast<int64_t>(p));
    for (int i = 0; i < 3; ++i) {
        J[static_cast<size_t>(i * 6 + 5 - i)] = 1;
        J[static_cast<size_t>((5 - i) * 6 + i)] = p - 1;
    }
    // (a) u in GSp6 up to multiplier over F_p
    M6 ut{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) ut[static_cast<size_t>(i * 6 + j)] = u[static_cast<size_t>(j * 6 + i)];
    M6 t = mul6(ut, mul6(J, u, p), p);
    uint64_t mu_u = t[5];  // (0,5) slot, J(0,5) = 1
    bool in_gsp6 = mu_u % p != 0;
    for (int i = 0; i < 36 && in_gsp6; ++i)
        if (t[static_cast<size_t>(i)] != mu_u * J[static_cast<size_t>(i)] % p) in_gsp6 = false;
    if (!in_gsp6) {
        // would falsify the displayed representative: report, never repair
        rep.expected = {{"u_in_gsp6", true}};
        rep.computed = {{"u_in_gsp6", false}};
        rep.pass = false;
        rep.add_counterexample("u^t J u != mu J over F_p");
        rep.elapsed_ms = sw.ms();
        return rep;
    }
    M6 ui = inv6(u, p);

    // embedding: GSp4 on coordinates (0,1,4,5), GL2 on (2,3); this is the unique
    // standard interleaving preserving the anti-diagonal J6 (validated above by
    // restriction: J6 on those coordinate pairs is J4 resp. J2)
    const int HC[4] = {0, 1, 4, 5};
    const int LC[2] = {2, 3};

    // per-gamma table of conjugated blocks, keyed by the strict upper triangle
    std::vector<std::array<uint64_t, 4>> gl2;
    for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b)
            for (uint64_t c = 0; c < p; ++c)
                for (uint64_t d = 0; d < p; ++d)
                    if ((a * d + p * p - b * c) % p != 0) gl2.push_back({a, b, c, d});
    auto upper_key = [&](const M6& x, bool negate) {
        uint64_t key = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                uint64_t v = x[static_cast<size_t>(i * 6 + j)] % p;
                if (negate) v = (p - v) % p;
                key = key * p + v;
            }
        return key;
    };
    std::unordered_map<uint64_t, std::vector<uint32_t>> table;
    table.reserve(gl2.size() * 2);
    for (uint32_t gi = 0; gi < gl2.size(); ++gi) {
        M6 q{};
        q[static_cast<size_t>(LC[0] * 6 + LC[0])] = gl2[gi][0];
        q[static_cast<size_t>(LC[0] * 6 + LC[1])] = gl2[gi][1];
        q[static_cast<size_t>(LC[1] * 6 + LC[0])] = gl2[gi][2];
        q[static_cast<size_t>(LC[1] * 6 + LC[1])] = gl2[gi][3];
        table[upper_key(mul6(ui, mul6(q, u, p), p), false)].push_back(gi);
    }

    // basis blocks W_{ab} = u^{-1} E_{HC[a],HC[b]} u for incremental A(h)
    std::array<M6, 16> W{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            M6 e{};
            e[static_cast<size_t>(HC[a] * 6 + HC[b])] = 1;
            W[static_cast<size_t>(a * 4 + b)] = mul6(ui, mul6(e, u, p), p);
        }

    // enumerate Klin (last row e4, first column (mu,0,0,*)): parametrized by
    // gamma' in GL2 at the middle block, (v1, v2, u3), with u1, u2 forced
    std::atomic<uint64_t> count{0};
    std::atomic<uint64_t> shape_bad{0};
    std::mutex mu;
    std::vector<uint64_t> found_x;
    parallel_chunks(gl2.size(), [&](size_t b0, size_t e0, unsigned) {
        std::vector<uint64_t> local_x;
        uint64_t local_count = 0, local_bad = 0;
        for (size_t gi = b0; gi < e0; ++gi) {
            uint64_t a = gl2[gi][0], b = gl2[gi][1], c = gl2[gi][2], d = gl2[gi][3];
            uint64_t x = (a * d + p * p - b * c) % p;  // det gamma' = mu(h)
            for (uint64_t v1 = 0; v1 < p; ++v1)
                for (uint64_t v2 = 0; v2 < p; ++v2)
                    for (uint64_t u3 = 0; u3 < p; ++u3) {
                        uint64_t u1 = (c * v1 + p * p - a * v2) % p;
                        uint64_t u2 = (d * v1 + p * p - b * v2) % p;
                        const uint64_t h[16] = {x, u1, u2, u3, 0, a, b, v1,
                                                0, c, d, v2, 0, 0, 0, 1};
                        M6 A{};
                        for (int ai = 0; ai < 16; ++ai) {
                            uint64_t hv = h[ai];
                            if (!hv) continue;
                            const M6& Wb = W[static_cast<size_t>(ai)];
                            for (int t2 = 0; t2 < 36; ++t2)
                                A[static_cast<size_t>(t2)] += hv * Wb[static_cast<size_t>(t2)];
                        }
                        for (int t2 = 0; t2 < 36; ++t2) A[static_cast<size_t>(t2)] %= p;
                        auto it = table.find(upper_key(A, true));
                        if (it == table.end()) continue;
                        for (uint32_t gj : it->second) {
                            const auto& gm = gl2[gj];
                            if ((gm[0] * gm[3] + p * p - gm[1] * gm[2]) % p != x) continue;
                            // stabilizer element: embed(h, gamma)
                            M6 X{};
                            for (int ai = 0; ai < 4; ++ai)
                                for (int aj = 0; aj < 4; ++aj)
                                    X[static_cast<size_t>(HC[ai] * 6 + HC[aj])] = h[ai * 4 + aj];
                            X[static_cast<size_t>(LC[0] * 6 + LC[0])] = gm[0];
                            X[static_cast<size_t>(LC[0] * 6 + LC[1])] = gm[1];
                            X[static_cast<size_t>(LC[1] * 6 + LC[0])] = gm[2];
                            X[static_cast<size_t>(LC[1] * 6 + LC[1])] = gm[3];
                            ++local_count;
                            // shape: conjugate of diag(x,1,x,1,x,1) — char poly
                            // (t-x)^3 (t-1)^3 and (X - xI)(X - I) = 0; for x = 1
                            // the element must be the identity
                            bool good;
                            if (x == 1) {
                                good = true;
                                for (int t2 = 0; t2 < 36; ++t2)
                                    if (X[static_cast<size_t>(t2)] != (t2 % 7 == 0 ? 1u : 0u)) good = false;
                            } else {
                                auto cp = charpoly6(X, p);
                                // target (t-x)^3 (t-1)^3: acc[k] = t^k coefficient
                                std::array<uint64_t, 7> acc{};
                                acc[0] = 1;
                                int dd = 0;
                                auto mul_linear = [&](uint64_t r) {
                                    std::array<uint64_t, 7> g2{};
                                    for (int i2 = 0; i2 <= dd; ++i2) {
                                        g2[static_cast<size_t>(i2 + 1)] = (g2[static_cast<size_t>(i2 + 1)] + acc[static_cast<size_t>(i2)]) % p;
                                        g2[static_cast<size_t>(i2)] = (g2[static_cast<size_t>(i2)] + (p - r) * acc[static_cast<size_t>(i2)]) % p;
                                    }
                                    acc = g2;
                                    ++dd;
                                };
                                for (int r3 = 0; r3 < 3; ++r3) mul_linear(x % p);
                                for (int r3 = 0; r3 < 3; ++r3) mul_linear(1);
                                // charpoly6 stores cp[k] as the t^{6-k} coefficient
                                good = true;
                                for (int i2 = 0; i2 <= 6; ++i2)
                                    if (cp[static_cast<size_t>(i2)] != acc[static_cast<size_t>(6 - i2)]) good = false;
                                // minimal polynomial: (X - xI)(X - I) = 0
                                M6 X1 = X, X2 = X;
                                for (int i2 = 0; i2 < 6; ++i2) {
                                    X1[static_cast<size_t>(i2 * 7)] = (X1[static_cast<size_t>(i2 * 7)] + p - x) % p;
                                    X2[static_cast<size_t>(i2 * 7)] = (X2[static_cast<size_t>(i2 * 7)] + p - 1) % p;
                                }
                                M6 prod = mul6(X1, X2, p);
                                for (int t2 = 0; t2 < 36; ++t2)
                                    if (prod[static_cast<size_t>(t2)]) good = false;
                            }
                            if (!good) ++local_bad;
                            local_x.push_back(x);
                        }
                    }
        }
        count += local_count;
        shape_bad += local_bad;
        std::lock_guard<std::mutex> lock(mu);
        for (auto v : local_x) found_x.push_back(v);
    });

    std::sort(found_x.begin(), found_x.end());
    bool multipliers_ok = found_x.size() == p - 1;
    for (size_t i = 0; i < found_x.size() && multipliers_ok; ++i)
        if (found_x[i] != i + 1) multipliers_ok = false;

    uint64_t klin_order = static_cast<uint64_t>(gl2.size()) * p * p * p;
    uint64_t fiber_product = klin_order * (static_cast<uint64_t>(gl2.size()) / (p - 1));
    rep.expected = {{"count", p - 1}, {"shape_violations", 0}, {"u_in_gsp6", true},
                    {"distinct_multipliers", true}};
    rep.computed = {{"count", count.load()}, {"shape_violations", shape_bad.load()},
                    {"u_in_gsp6", true}, {"u_multiplier", mu_u},
                    {"distinct_multipliers", multipliers_ok},
                    {"klingen_order", klin_order}, {"fiber_product_order", fiber_product}};
    rep.pass = count == p - 1 && shape_bad == 0 && multipliers_ok;
    rep.decision_log.push_back(
        "embedding: GSp4 on coordinates (1,2,5,6), GL2 on (3,4); stabilizer shape checked up to "
        "conjugacy (char poly (t-x)^3(t-1)^3 and (X-xI)(X-I)=0)");
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport oracle_g1_check(uint64_t p, int m, int n, uint64_t seed) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "oracle-g1";
    rep.params = {{"p", p}, {"m", m}, {"n", n}};
    rep.seed = seed;
    const RingSpec& R = RingSpec::rational(p, static_cast<unsigned>(n));
    SubgroupSpec V = v_nm_spec_g1(n, m, R);
    SubgroupSpec Vp = v_prime_spec_g1(n, m, R);
    bool ok = true;
    auto note = [&](const std::string& s) {
        ok = false;
        rep.add_counterexample(s);
    };

    std::vector<Mat> bV = brute_force_members(V, 2'000'000);
    std::vector<Mat> bVp = brute_force_members(Vp, 2'000'000);
    OrderOptions oo;
    oo.seed = seed;
    BigInt oV = subgroup_order(V, oo);
    oo.seed = seed + 1;
    BigInt oVp = subgroup_order(Vp, oo);
    if (oV != BigInt(bV.size())) note("lifting order of V differs from brute force");
    if (oVp != BigInt(bVp.size())) note("lifting order of V' differs from brute force");
    IndexOptions io;
    io.order.seed = seed + 2;
    BigInt idx = subgroup_index(V, Vp, io);
    if (idx != BigInt(p)) note("index [V : V'] != p in the g=1 tower");

    // explicit transversal {I + p^m k E_01} verified against the brute coset space
    std::vector<Mat> reps;
    for (uint64_t k = 0; k < p; ++k) {
        Mat r = Mat::identity(R, 2);
        r.at(0, 1) = RingElem::from_int(R, static_cast<int64_t>(k * powm(p, static_cast<uint64_t>(m), R.q) % R.q));
        if (!V.membership(r)) note("g=1 transversal rep escapes V");
        reps.push_back(r);
    }
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j) {
            if (i == j) continue;
            if (Vp.membership(reps[i].inverse() * reps[j])) note("g=1 transversal reps collide");
        }
    // brute coset decomposition: each member of V lies in exactly one rep coset
    for (const Mat& g : bV) {
        int hits = 0;
        for (const Mat& r : reps)
            if (Vp.membership(r.inverse() * g)) ++hits;
        if (hits != 1) note("brute coset decomposition failed");
    }
    rep.expected = {{"violations", 0}};
    rep.computed = {{"order_V", oV.str()}, {"brute_V", bV.size()},
                    {"order_Vprime", oVp.str()}, {"brute_Vprime", bVp.size()},
                    {"index", idx.str()}, {"violations", rep.counterexamples.size()}};
    rep.pass = ok;
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport split_iso_check(uint64_t p, unsigned K, int samples, uint64_t seed) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "split-iso";
    rep.params = {{"p", p}, {"K", K}, {"samples", samples}};
    rep.seed = seed;
    const RingSpec& S = RingSpec::split(p, K);
    const RingSpec& Q = S.rational_shadow();
    Rng rng(seed);
    bool ok = true;
    auto note = [&](const std::string& s) {
        ok = false;
        rep.add_counterexample(s);
    };
    for (int s = 0; s < samples; ++s) {
        // random invertible M and unit a
        Mat M(Q, 4);
        while (true) {
            for (auto& x : M.e) x = RingElem(Q, rng.uniform(Q.q));
            try {
                (void)M.inverse();
                break;
            } catch (const Error&) {
            }
        }
        uint64_t av = rng.uniform(Q.q);
        while (av % p == 0) av = rng.uniform(Q.q);
        RingElem a(Q, av);
        Mat g = split_iso_inv(M, a, S);
        auto nu = gu_multiplier(g);
        if (!nu || nu->a != av) note("reconstructed element has wrong multiplier");
        SplitCoords sc = split_iso(g);
        if (!(sc.m == M) || sc.a != a) note("roundtrip (M,a) -> g -> (M,a) failed");
        // conjugation swaps the two components
        Mat gc = g.conjugate();
        bool swap_ok = true;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (gc.at(i, j).a != g.at(i, j).b || gc.at(i, j).b != g.at(i, j).a) swap_ok = false;
        if (!swap_ok) note("conjugation does not swap split components");
        // forward-then-inverse on the group element
        Mat g2 = split_iso_inv(sc.m, sc.a, S);
        if (!(g2 == g)) note("roundtrip g -> (M,a) -> g failed");
    }
    rep.expected = {{"violations", 0}};
    rep.computed = {{"violations", rep.counterexamples.size()}};
    rep.pass = ok;
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport order_oracle_check(uint64_t seed) {
    Stopwatch sw;
    CheckReport rep;
    rep.name = "order-oracle";
    rep.seed = seed;
    bool ok = true;
    auto note = [&](const std::string& s) {
        ok = false;
        rep.add_counterexample(s);
    };
    json computed = json::array();
    auto run = [&](GroupKind kind, int dim, uint64_t p, unsigned K, uint64_t brute_cap) {
        const RingSpec& R = RingSpec::rational(p, K);
        SubgroupSpec S = full_spec(kind, dim, R);
        OrderOptions oo;
        oo.seed = seed;
        BigInt lift = subgroup_order(S, oo);
        BigInt formula = classical_order(kind, dim, R);
        json row = {{"group", S.name}, {"p", p}, {"K", K}, {"lifting", lift.str()},
                    {"formula", formula.str()}};
        if (lift != formula) note("lifting order != classical formula for " + S.name);
        if (brute_cap) {
            std::vector<Mat> all = brute_force_members(S, brute_cap);
            row["brute"] = all.size();
            if (BigInt(all.size()) != lift) note("lifting order != brute force for " + S.name);
        }
        computed.push_back(row);
    };
    run(GroupKind::GL, 2, 2, 2, 1'000'000);   // GL2(Z/4) = 96
    run(GroupKind::GL, 2, 3, 2, 1'000'000);   // GL2(Z/9) = 3888
    run(GroupKind::GSp, 4, 2, 1, 1'000'000);  // GSp4(F2) = 720
    run(GroupKind::GSp, 4, 3, 1, 0);          // GSp4(F3) by formula = 103680
    rep.expected = {{"violations", 0}};
    rep.computed = {{"orders", computed}, {"violations", rep.counterexamples.size()}};
    rep.pass = ok;
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace towers
