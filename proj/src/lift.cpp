#include "towers/lift.hpp"

#include <algorithm>

namespace towers {

namespace {

uint64_t pow_int(uint64_t p, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= p;
    return r;
}

// modulus p^min(e,K) as an actual divisor (q when e >= K)
uint64_t window_mod(const RingSpec& R, int e) {
    if (e <= 0) return 1;
    if (static_cast<unsigned>(e) >= R.K) return R.q;
    return pow_int(R.p, static_cast<unsigned>(e));
}

void push_entry(const RingSpec& R, CondSet& out, const RingElem& v, int e) {
    out.val.push_back(v.a);
    out.expo.push_back(e);
    if (R.quadratic()) {
        out.val.push_back(v.b);
        out.expo.push_back(e);
    }
}

// "distance from the rational subring": one scalar per entry
void push_irrationality(const RingSpec& R, CondSet& out, const RingElem& v, int e) {
    out.val.push_back(R.kind == RingKind::Split ? subm(v.a, v.b, R.q) : v.b);
    out.expo.push_back(e);
}

}  // namespace

namespace {

// c = a * b without reallocating c (c must not alias a or b)
void mul_into(const Mat& a, const Mat& b, Mat& c) {
    const RingSpec& R = *a.R;
    if (c.R != a.R || c.n != a.n) c = Mat(R, a.n);
    int n = a.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RingElem acc = RingElem::zero(R);
            for (int k = 0; k < n; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            c.at(i, j) = acc;
        }
}

struct Scratch {
    Mat t1, t2;
};
Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

}  // namespace

void eval_conditions(const SubgroupSpec& S, const Mat& g, CondSet& out) {
    out.clear();
    const RingSpec& R = *S.ring;
    int n = S.dim;
    int K = static_cast<int>(R.K);
    if (S.kind != GroupKind::GL) {
        bool herm = S.kind == GroupKind::GU;
        // T(i,j) = sum_k bar(g(k,i)) sign_k g(n-1-k, j) with the anti-diagonal form
        auto tij = [&](int i, int j) {
            RingElem acc = RingElem::zero(R);
            for (int k = 0; k < n; ++k) {
                const RingElem& v = g.at(n - 1 - k, j);
                if (v.is_zero()) continue;
                RingElem l = herm ? conj(g.at(k, i)) : g.at(k, i);
                if (k < n / 2)
                    acc = acc + l * v;
                else
                    acc = acc - l * v;
            }
            return acc;
        };
        RingElem mu = tij(0, n - 1);
        RingElem one = RingElem::one(R);
        // conj(T(j,i)) = -T(i,j) exactly, and the diagonal of T vanishes
        // identically in the bilinear case, so together with the rationality of
        // mu the upper residuals already force the lower ones
        for (int i = 0; i < n; ++i)
            for (int j = herm ? i : i + 1; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                RingElem t = tij(i, j);
                // J(i,j) is +-1 on the anti-diagonal and 0 elsewhere
                if (i + j == n - 1) t = (i < j) ? t - mu : t + mu;
                push_entry(R, out, t, K);
            }
        if (herm) push_irrationality(R, out, mu, K);
        if (S.mult_one_mod) push_entry(R, out, mu - one, *S.mult_one_mod);
    }
    Scratch& sc = scratch();
    if (S.rational) {
        const Mat* x = &g;
        if (S.rconj) {
            mul_into(*S.rconj, g, sc.t1);
            mul_into(sc.t1, *S.rconj_inv, sc.t2);
            x = &sc.t2;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) push_irrationality(R, out, x->at(i, j), K);
    }
    const Mat* yp = &g;
    if (S.pconj) {
        mul_into(*S.pconj_inv, g, sc.t1);
        mul_into(sc.t1, *S.pconj, sc.t2);
        yp = &sc.t2;
    }
    const Mat& y = *yp;
    RingElem one = RingElem::one(R);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int e = S.pattern.e(i, j);
            if (!e) continue;
            push_entry(R, out, i == j ? y.at(i, j) - one : y.at(i, j), e);
        }
    for (int i = 0; i < n; ++i)
        for (const auto& d : S.pattern.diag[i]) {
            if (d.kind == DiagTarget::Kind::OneModPa)
                push_entry(R, out, y.at(i, i) - one, d.a);
            else if (d.kind == DiagTarget::Kind::EqualEntry)
                push_entry(R, out, y.at(i, i) - y.at(d.other, d.other), K);
        }
}

bool conditions_hold(const SubgroupSpec& S, const Mat& g, unsigned level) {
    CondSet c;
    eval_conditions(S, g, c);
    const RingSpec& R = *S.ring;
    for (size_t i = 0; i < c.val.size(); ++i) {
        uint64_t m = window_mod(R, std::min<int>(c.expo[i], static_cast<int>(level)));
        if (c.val[i] % m != 0) return false;
    }
    return true;
}

int coord_count(const SubgroupSpec& S) { return S.dim * S.dim * static_cast<int>(S.ring->coords()); }

int coord_index(const SubgroupSpec& S, int i, int j, int component) {
    return (i * S.dim + j) * static_cast<int>(S.ring->coords()) + component;
}

void coord_add(Mat& g, int coord, uint64_t amount) {
    unsigned w = g.R->coords();
    RingElem& x = g.e[static_cast<size_t>(coord) / w];
    if (coord % w == 0)
        x.a = addm(x.a, amount % g.R->q, g.R->q);
    else
        x.b = addm(x.b, amount % g.R->q, g.R->q);
}

uint64_t coord_get(const Mat& g, int coord) {
    unsigned w = g.R->coords();
    const RingElem& x = g.e[static_cast<size_t>(coord) / w];
    return coord % w == 0 ? x.a : x.b;
}

void FpSystem::eliminate() {
    int nrows = static_cast<int>(rows.size());
    rank = 0;
    consistent = true;
    pivot_of_col.assign(ncols, -1);
    free_cols.clear();
    for (int c = 0; c < ncols && rank < nrows; ++c) {
        int pr = -1;
        for (int r = rank; r < nrows; ++r)
            if (rows[r][c] % p != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(rows[rank], rows[pr]);
        uint64_t inv = invm(rows[rank][c], p);
        for (int cc = 0; cc <= ncols; ++cc)
            rows[rank][cc] = static_cast<uint16_t>(mulm(rows[rank][cc], inv, p));
        for (int r = 0; r < nrows; ++r) {
            if (r == rank) continue;
            uint64_t f = rows[r][c] % p;
            if (!f) continue;
            for (int cc = 0; cc <= ncols; ++cc)
                rows[r][cc] = static_cast<uint16_t>(subm(rows[r][cc], mulm(f, rows[rank][cc], p), p));
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    for (int r = rank; r < nrows; ++r)
        if (rows[r][ncols] % p != 0) consistent = false;
    for (int c = 0; c < ncols; ++c)
        if (pivot_of_col[c] < 0) free_cols.push_back(c);
}

std::vector<uint16_t> FpSystem::solve(const std::vector<uint16_t>& free_vals) const {
    std::vector<uint16_t> x(ncols, 0);
    for (size_t i = 0; i < free_cols.size(); ++i) x[free_cols[i]] = free_vals[i] % p;
    for (int c = 0; c < ncols; ++c) {
        int r = pivot_of_col[c];
        if (r < 0) continue;
        uint64_t v = rows[r][ncols];
        for (int fc : free_cols) v = subm(v, mulm(rows[r][fc], x[fc], p), p);
        x[c] = static_cast<uint16_t>(v);
    }
    return x;
}

FpSystem level_system(const SubgroupSpec& S, const Mat& base, unsigned k,
                      const std::vector<Steering>& steer) {
    const RingSpec& R = *S.ring;
    uint64_t p = R.p;
    uint64_t pk1 = pow_int(p, k - 1);
    int C = coord_count(S);

    CondSet c0;
    eval_conditions(S, base, c0);
    std::vector<int> active;
    for (size_t i = 0; i < c0.val.size(); ++i)
        if (static_cast<unsigned>(c0.expo[i]) >= k) active.push_back(static_cast<int>(i));

    FpSystem sys;
    sys.p = p;
    sys.ncols = C;
    sys.rows.reserve(active.size());
    for (int idx : active) {
        std::vector<uint16_t> row(C + 1, 0);
        // rhs = -(residual / p^{k-1}); residuals vanish mod p^{k-1} at a valid base
        row[C] = static_cast<uint16_t>(subm(0, (c0.val[idx] / pk1) % p, p));
        sys.rows.push_back(std::move(row));
    }
    // exact finite differences: conditions are polynomial, so the error term is
    // O(p^{2(k-1)}) = 0 mod p^k for k >= 2
    CondSet c1;
    Mat pert = base;
    for (int c = 0; c < C; ++c) {
        pert = base;
        coord_add(pert, c, pk1);
        eval_conditions(S, pert, c1);
        for (size_t r = 0; r < active.size(); ++r) {
            uint64_t d = subm(c1.val[active[r]], c0.val[active[r]], R.q) / pk1 % p;
            sys.rows[r][c] = static_cast<uint16_t>(d);
        }
    }
    for (const auto& st : steer) {
        if (st.digit != k - 1) continue;
        std::vector<uint16_t> row(C + 1, 0);
        int c = coord_index(S, st.i, st.j, st.component);
        row[c] = 1;
        uint64_t cur = (coord_get(base, c) / pk1) % p;
        row[C] = static_cast<uint16_t>(subm(st.value % p, cur, p));
        sys.rows.push_back(std::move(row));
    }
    sys.eliminate();
    return sys;
}

Mat apply_solution(const SubgroupSpec& S, const Mat& base, unsigned k,
                   const std::vector<uint16_t>& x) {
    uint64_t pk1 = pow_int(S.ring->p, k - 1);
    Mat g = base;
    for (int c = 0; c < coord_count(S); ++c)
        if (x[c]) coord_add(g, c, mulm(pk1, x[c], S.ring->q));
    return g;
}

// ---------------------------------------------------------------------------
// level-1 enumeration
// ---------------------------------------------------------------------------

namespace {

struct Level1Walker {
    const SubgroupSpec& S;
    const RingSpec& R;
    int n;
    uint64_t p;
    const Level1Options& opt;
    Level1Result out;
    Rng rng;
    Mat y;
    // candidate digit lists per entry, in pattern coordinates
    std::vector<std::vector<RingElem>> cands;  // indexed i*n+j
    // group-relation bookkeeping
    bool has_form;
    Mat J;
    std::optional<RingElem> mu;
    uint64_t nodes = 0;

    Level1Walker(const SubgroupSpec& s, const Level1Options& o)
        : S(s), R(*s.ring), n(s.dim), p(s.ring->p), opt(o), rng(o.seed), y(*s.ring, s.dim),
          has_form(s.kind != GroupKind::GL), J(standard_form(s.dim, *s.ring)) {
        build_candidates();
    }

    void build_candidates() {
        cands.assign(static_cast<size_t>(n) * n, {});
        std::vector<RingElem> digits, units;
        for (uint64_t a = 0; a < p; ++a) {
            if (!R.quadratic()) {
                digits.emplace_back(R, a);
            } else {
                for (uint64_t b = 0; b < p; ++b) digits.emplace_back(R, a, b);
            }
        }
        for (const auto& d : digits)
            if (is_unit(d) || (R.kind == RingKind::Split && d.a % p && d.b % p)) units.push_back(d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool fixed = S.pattern.e(i, j) >= 1;
                bool unit_only = false;
                if (i == j)
                    for (const auto& d : S.pattern.diag[i]) {
                        if (d.kind == DiagTarget::Kind::OneModPa && d.a >= 1) fixed = true;
                        if (d.kind == DiagTarget::Kind::Unit) unit_only = true;
                    }
                auto& c = cands[static_cast<size_t>(i) * n + j];
                if (fixed)
                    c = {i == j ? RingElem::one(R) : RingElem::zero(R)};
                else if (unit_only)
                    c = units;
                else
                    c = digits;
            }
    }

    // bar(col_i)^t J col_j of the partial matrix
    RingElem pairing(int i, int j) {
        RingElem acc = RingElem::zero(R);
        bool herm = S.kind == GroupKind::GU;
        for (int k = 0; k < n; ++k) {
            const RingElem& jk = J.at(k, n - 1 - k);
            (void)jk;
            // Jg has row k equal to sign * row (n-1-k) of g
            const RingElem& v = y.at(n - 1 - k, j);
            if (v.is_zero()) continue;
            RingElem lhs = herm ? conj(y.at(k, i)) : y.at(k, i);
            RingElem term = lhs * v;
            if (k < n / 2)
                acc = acc + term;
            else
                acc = acc - term;
        }
        return acc;
    }

    bool column_ok(int j) {
        if (!has_form) return true;
        for (int i = 0; i <= j; ++i) {
            RingElem tij = pairing(i, j);
            RingElem tji = pairing(j, i);
            bool anti = i + j == n - 1;
            if (!anti) {
                if (tij.a % p || tij.b % p) return false;
                if (tji.a % p || tji.b % p) return false;
            } else {
                // tij = mu * J(i,j), with J(i,j) = +-1
                RingElem cand = i < j ? tij : tji;  // the (+1) slot has i < j
                if (i == j) continue;               // impossible for even n
                if (!mu) {
                    // reduction mod p of the multiplier candidate
                    RingElem m(R, cand.a % p, cand.b % p);
                    bool unit = (R.kind == RingKind::Rational && m.a % p) ||
                                (R.quadratic() && m.a % p && (R.kind == RingKind::Split ? m.b % p : true));
                    if (R.kind == RingKind::Inert) {
                        RingElem nm = norm(m);
                        unit = nm.a % p != 0;
                    }
                    if (!unit) return false;
                    if (S.kind == GroupKind::GU) {
                        bool rat = R.kind == RingKind::Split ? (m.a % p == m.b % p) : (m.b % p == 0);
                        if (!rat) return false;
                    }
                    mu = m;
                } else {
                    if (subm(cand.a, mu->a, R.q) % p || subm(cand.b, mu->b, R.q) % p) return false;
                }
                // the mirrored slot must carry -mu
                RingElem other = i < j ? tji : tij;
                if (addm(other.a % p, mu->a % p, p) % p || addm(other.b % p, mu->b % p, p) % p)
                    return false;
            }
        }
        return true;
    }

    bool leaf_ok(Mat& g_out) {
        Mat g = S.pconj ? (*S.pconj * y) * (*S.pconj_inv) : y;
        if (S.kind == GroupKind::GL) {
            Mat gp(R, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    gp.at(i, j) = RingElem(R, g.at(i, j).a % p, g.at(i, j).b % p);
            // invertible mod p?
            bool ok = true;
            try {
                const RingSpec& R1 = R.kind == RingKind::Rational
                                         ? RingSpec::rational(p, 1)
                                         : (R.kind == RingKind::Split
                                                ? RingSpec::split(p, 1, R.field_disc)
                                                : RingSpec::inert(p, 1, static_cast<int64_t>(R.s % p),
                                                                  static_cast<int64_t>(R.t % p), R.field_disc));
                Mat r1(R1, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) r1.at(i, j) = RingElem(R1, gp.at(i, j).a, gp.at(i, j).b);
                (void)r1.inverse();
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) return false;
        }
        if (S.mult_one_mod && *S.mult_one_mod >= 1 && has_form && mu) {
            if (subm(mu->a, 1, R.q) % p) return false;
            if (R.kind == RingKind::Split && subm(mu->b, 1, R.q) % p) return false;
        }
        if (S.rational) {
            const Mat x = S.rconj ? (*S.rconj * g) * (*S.rconj_inv) : g;
            for (const auto& v : x.e) {
                uint64_t irr = R.kind == RingKind::Split ? subm(v.a, v.b, R.q) : v.b;
                if (irr % p) return false;
            }
        }
        for (int i = 0; i < n; ++i)
            for (const auto& d : S.pattern.diag[i])
                if (d.kind == DiagTarget::Kind::EqualEntry) {
                    RingElem diff = y.at(i, i) - y.at(d.other, d.other);
                    if (diff.a % p || diff.b % p) return false;
                }
        g_out = g;
        return true;
    }

    void emit(const Mat& g) {
        ++out.count;
        if (out.count > opt.cap)
            fail(Errc::InfeasibleEnumeration, "level-1 enumeration exceeds cap");
        if (opt.collect) {
            out.members.push_back(g);
        } else if (opt.sample_target) {
            // reservoir sample
            if (out.members.size() < opt.sample_target)
                out.members.push_back(g);
            else if (rng.uniform(out.count) < opt.sample_target)
                out.members[static_cast<size_t>(rng.uniform(opt.sample_target))] = g;
        }
    }

    void walk_entry(int j, int i) {
        if (i == n) {
            std::optional<RingElem> saved_mu = mu;
            if (column_ok(j)) {
                if (j + 1 == n) {
                    Mat g(R, n);
                    if (leaf_ok(g)) emit(g);
                } else {
                    walk_entry(j + 1, 0);
                }
            }
            mu = saved_mu;
            return;
        }
        if (++nodes > (opt.cap + 16) * 4096)
            fail(Errc::InfeasibleEnumeration, "level-1 enumeration node budget exceeded");
        for (const auto& c : cands[static_cast<size_t>(i) * n + j]) {
            y.at(i, j) = c;
            std::optional<RingElem> saved_mu = mu;
            walk_entry(j, i + 1);
            mu = saved_mu;
        }
    }

    Level1Result run() {
        walk_entry(0, 0);
        return std::move(out);
    }
};

}  // namespace

Level1Result level1_enumerate(const SubgroupSpec& S, const Level1Options& opt) {
    Level1Walker w(S, opt);
    return w.run();
}

// ---------------------------------------------------------------------------
// order, enumeration, sampling
// ---------------------------------------------------------------------------

BigInt subgroup_order(const SubgroupSpec& S, const OrderOptions& opt) {
    Level1Options l1;
    l1.cap = opt.level1_cap;
    l1.collect = false;
    l1.sample_target = static_cast<unsigned>(std::max(1, opt.sample_chains));
    l1.seed = opt.seed;
    Level1Result lvl1 = level1_enumerate(S, l1);
    if (lvl1.count == 0) fail(Errc::PatternInvalid, "subgroup has no level-1 members: " + S.name);

    BigInt order = lvl1.count;
    unsigned K = S.K();
    Rng rng(opt.seed * 0x100000001b3ULL + 7);
    std::vector<Mat> chains = lvl1.members;
    while (static_cast<int>(chains.size()) < opt.sample_chains && !chains.empty())
        chains.push_back(chains[chains.size() % lvl1.members.size()]);
    for (unsigned k = 2; k <= K; ++k) {
        int dim = -1;
        std::vector<Mat> next;
        next.reserve(chains.size());
        for (const Mat& base : chains) {
            FpSystem sys = level_system(S, base, k);
            if (!sys.consistent)
                fail(Errc::NonConstantFiber,
                     S.name + ": inconsistent fiber at level " + std::to_string(k));
            if (dim < 0)
                dim = sys.kernel_dim();
            else if (dim != sys.kernel_dim())
                fail(Errc::NonConstantFiber,
                     S.name + ": fiber rank varies at level " + std::to_string(k));
            std::vector<uint16_t> fv(sys.free_cols.size());
            for (auto& v : fv) v = static_cast<uint16_t>(rng.uniform(S.ring->p));
            next.push_back(apply_solution(S, base, k, sys.solve(fv)));
        }
        for (int i = 0; i < dim; ++i) order *= S.ring->p;
        chains = std::move(next);
    }
    return order;
}

std::vector<Mat> enumerate_members(const SubgroupSpec& S, uint64_t cap) {
    Level1Options l1;
    l1.cap = cap;
    Level1Result lvl1 = level1_enumerate(S, l1);
    std::vector<Mat> cur = std::move(lvl1.members);
    uint64_t p = S.ring->p;
    for (unsigned k = 2; k <= S.K(); ++k) {
        std::vector<Mat> next;
        for (const Mat& base : cur) {
            FpSystem sys = level_system(S, base, k);
            if (!sys.consistent) continue;
            size_t nf = sys.free_cols.size();
            uint64_t combos = 1;
            for (size_t i = 0; i < nf; ++i) {
                combos *= p;
                if (combos > cap) fail(Errc::InfeasibleEnumeration, "member expansion exceeds cap");
            }
            std::vector<uint16_t> fv(nf, 0);
            for (uint64_t c = 0; c < combos; ++c) {
                uint64_t v = c;
                for (size_t i = 0; i < nf; ++i) {
                    fv[i] = static_cast<uint16_t>(v % p);
                    v /= p;
                }
                next.push_back(apply_solution(S, base, k, sys.solve(fv)));
                if (next.size() > cap) fail(Errc::InfeasibleEnumeration, "member expansion exceeds cap");
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<Mat> enumerate_group(GroupKind kind, int dim, const RingSpec& ring, uint64_t cap) {
    return enumerate_members(full_spec(kind, dim, ring), cap);
}

Mat sample_member(const SubgroupSpec& S, Rng& rng, const std::vector<Mat>& level1_pool) {
    if (level1_pool.empty()) fail(Errc::SamplerStuck, "empty level-1 pool for " + S.name);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Mat g = level1_pool[static_cast<size_t>(rng.uniform(level1_pool.size()))];
        bool ok = true;
        for (unsigned k = 2; k <= S.K(); ++k) {
            FpSystem sys = level_system(S, g, k);
            if (!sys.consistent) {
                ok = false;
                break;
            }
            std::vector<uint16_t> fv(sys.free_cols.size());
            for (auto& v : fv) v = static_cast<uint16_t>(rng.uniform(S.ring->p));
            g = apply_solution(S, g, k, sys.solve(fv));
        }
        if (ok) return g;
    }
    fail(Errc::SamplerStuck, "constrained completion failed beyond retry budget: " + S.name);
}

std::vector<Mat> sample_members(const SubgroupSpec& S, size_t count, uint64_t seed) {
    Level1Options l1;
    l1.collect = true;
    Level1Result lvl1 = level1_enumerate(S, l1);
    std::vector<Mat> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        Rng rng(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
        out.push_back(sample_member(S, rng, lvl1.members));
    }
    return out;
}

BigInt subgroup_index(const SubgroupSpec& big, const SubgroupSpec& small, const IndexOptions& opt) {
    // containment check on samples
    std::vector<Mat> probe = sample_members(small, static_cast<size_t>(opt.containment_samples), opt.seed);
    for (const Mat& g : probe)
        if (!big.membership(g))
            fail(Errc::PatternInvalid, "index: sampled member of " + small.name + " escapes " + big.name);
    OrderOptions oo = opt.order;
    BigInt ob = subgroup_order(big, oo);
    oo.seed += 1;
    BigInt os = subgroup_order(small, oo);
    if (ob % os != 0) fail(Errc::NotDivisible, "index: order(" + big.name + ") not divisible");
    return ob / os;
}

Mat steered_lift(const SubgroupSpec& S, const std::vector<Steering>& steer, Mat start) {
    for (unsigned k = 2; k <= S.K(); ++k) {
        FpSystem sys = level_system(S, start, k, steer);
        if (!sys.consistent)
            fail(Errc::PatternInvalid,
                 "steered lift inconsistent at level " + std::to_string(k) + " for " + S.name);
        std::vector<uint16_t> fv(sys.free_cols.size(), 0);
        start = apply_solution(S, start, k, sys.solve(fv));
    }
    return start;
}

std::vector<Mat> brute_force_members(const SubgroupSpec& S, uint64_t cap) {
    const RingSpec& R = *S.ring;
    int C = S.dim * S.dim * static_cast<int>(R.coords());
    // candidate space q^C
    long double total = 1;
    for (int i = 0; i < C; ++i) {
        total *= static_cast<long double>(R.q);
        if (total > static_cast<long double>(cap) * 4096.0L)
            fail(Errc::InfeasibleEnumeration, "brute force space too large");
    }
    std::vector<Mat> out;
    Mat g(R, S.dim);
    std::vector<uint64_t> odo(static_cast<size_t>(C), 0);
    while (true) {
        if (S.membership(g)) {
            out.push_back(g);
            if (out.size() > cap) fail(Errc::InfeasibleEnumeration, "brute force exceeds cap");
        }
        int c = 0;
        for (; c < C; ++c) {
            coord_add(g, c, 1);
            if (++odo[c] < R.q) break;
            // wrapped: coord_add already reduced mod q
            odo[c] = 0;
        }
        if (c == C) break;
    }
    return out;
}

BigInt classical_order(GroupKind kind, int dim, const RingSpec& ring) {
    uint64_t p = ring.p;
    unsigned K = ring.K;
    auto bpow = [](BigInt b, unsigned e) {
        BigInt r = 1;
        while (e--) r *= b;
        return r;
    };
    BigInt q = p;
    switch (kind) {
        case GroupKind::GL: {
            if (ring.kind == RingKind::Inert) q = BigInt(p) * p;
            BigInt o = 1;
            BigInt qn = bpow(q, static_cast<unsigned>(dim));
            for (int i = 0; i < dim; ++i) o *= (qn - bpow(q, static_cast<unsigned>(i)));
            if (ring.kind == RingKind::Split) o *= o;
            // kernel of reduction: p^{dim^2 (K-1)} per component
            unsigned d = static_cast<unsigned>(dim * dim) * (ring.kind == RingKind::Rational ? 1 : 2);
            return o * bpow(BigInt(p), d * (K - 1));
        }
        case GroupKind::GSp: {
            int g = dim / 2;
            BigInt o = p - 1;
            o *= bpow(BigInt(p), static_cast<unsigned>(g * g));
            for (int i = 1; i <= g; ++i) o *= (bpow(BigInt(p), static_cast<unsigned>(2 * i)) - 1);
            unsigned d = static_cast<unsigned>(2 * g * g + g + 1);
            return o * bpow(BigInt(p), d * (K - 1));
        }
        case GroupKind::GU: {
            BigInt o;
            if (ring.kind == RingKind::Split) {
                // GL_dim x GL_1
                BigInt gl = 1;
                BigInt pn = bpow(BigInt(p), static_cast<unsigned>(dim));
                for (int i = 0; i < dim; ++i) gl *= (pn - bpow(BigInt(p), static_cast<unsigned>(i)));
                o = gl * (p - 1);
            } else {
                // |U_dim(p)| * (p-1), unitary group over F_{p^2}/F_p
                BigInt u = bpow(BigInt(p), static_cast<unsigned>(dim * (dim - 1) / 2));
                for (int i = 1; i <= dim; ++i) {
                    BigInt term = bpow(BigInt(p), static_cast<unsigned>(i));
                    u *= (i % 2 == 1) ? BigInt(term + 1) : BigInt(term - 1);
                }
                o = u * (p - 1);
            }
            unsigned d = static_cast<unsigned>(dim * dim + 1);
            return o * bpow(BigInt(p), d * (K - 1));
        }
    }
    return 0;
}

}  // namespace towers
