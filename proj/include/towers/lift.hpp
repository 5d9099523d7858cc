#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "towers/pattern.hpp"

namespace towers {

using BigInt = boost::multiprecision::cpp_int;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed ^ 0x9e3779b97f4a7c15ULL) {}
    uint64_t uniform(uint64_t n) { return n <= 1 ? 0 : eng() % n; }
};

/// Flattened residual conditions of a spec at a point: each scalar must vanish
/// mod p^min(expo, K). The enumeration order is fixed, which makes the exact
/// finite-difference linearization per level well defined.
struct CondSet {
    std::vector<uint64_t> val;
    std::vector<int> expo;
    void clear() {
        val.clear();
        expo.clear();
    }
};
void eval_conditions(const SubgroupSpec& S, const Mat& g, CondSet& out);
bool conditions_hold(const SubgroupSpec& S, const Mat& g, unsigned level);

/// Free F_p coordinates of a candidate matrix: one per entry component.
int coord_count(const SubgroupSpec& S);
void coord_add(Mat& g, int coord, uint64_t amount);
uint64_t coord_get(const Mat& g, int coord);
int coord_index(const SubgroupSpec& S, int i, int j, int component);

/// Dense augmented linear system over F_p.
struct FpSystem {
    uint64_t p = 2;
    int ncols = 0;
    std::vector<std::vector<uint16_t>> rows;  // each of size ncols+1
    int rank = 0;
    bool consistent = true;
    std::vector<int> pivot_of_col;  // -1 when free
    std::vector<int> free_cols;

    void eliminate();
    int kernel_dim() const { return static_cast<int>(free_cols.size()); }
    // solution with prescribed free-column values (size free_cols.size())
    std::vector<uint16_t> solve(const std::vector<uint16_t>& free_vals) const;
};

/// Digit constraint used to steer transversal construction: component `component`
/// of entry (i,j) must have base-p digit `digit` equal to `value`.
struct Steering {
    int i = 0, j = 0, component = 0;
    unsigned digit = 0;
    uint16_t value = 0;
};

/// Exact linearization of the spec conditions (plus steering digits) around a
/// level-(k-1) member; solutions X give the level-k members base + p^{k-1} X.
FpSystem level_system(const SubgroupSpec& S, const Mat& base, unsigned k,
                      const std::vector<Steering>& steer = {});
Mat apply_solution(const SubgroupSpec& S, const Mat& base, unsigned k,
                   const std::vector<uint16_t>& x);

struct Level1Options {
    uint64_t cap = 20'000'000;   // maximum number of members
    bool collect = true;         // store all members (else count + reservoir)
    unsigned sample_target = 0;  // reservoir size when collect == false
    uint64_t seed = 0;
};
struct Level1Result {
    uint64_t count = 0;
    std::vector<Mat> members;
};
/// Complete level-1 members, enumerated in pattern coordinates with column-wise
/// pruning of the group relation. Throws InfeasibleEnumeration past the cap.
Level1Result level1_enumerate(const SubgroupSpec& S, const Level1Options& opt = {});

struct OrderOptions {
    int sample_chains = 8;
    uint64_t seed = 1;
    uint64_t level1_cap = 20'000'000;
};
/// Exact order via level-by-level fiber counting. Fiber dimension at each level
/// is the kernel dimension of the linearized system, certified constant across
/// independently sampled base points; aborts with NonConstantFiber otherwise.
BigInt subgroup_order(const SubgroupSpec& S, const OrderOptions& opt = {});

/// All members at full precision (full kernel expansion per level). cap applies
/// at every level.
std::vector<Mat> enumerate_members(const SubgroupSpec& S, uint64_t cap);
/// Complete duplicate-free list of the ambient group at the ring's precision.
std::vector<Mat> enumerate_group(GroupKind kind, int dim, const RingSpec& ring, uint64_t cap);

/// Random member at full precision; level1_pool from level1_enumerate.
Mat sample_member(const SubgroupSpec& S, Rng& rng, const std::vector<Mat>& level1_pool);
/// Deterministic batch of random members (parallel, per-index seeds).
std::vector<Mat> sample_members(const SubgroupSpec& S, size_t count, uint64_t seed);

struct IndexOptions {
    OrderOptions order;
    int containment_samples = 16;
    uint64_t seed = 2;
};
/// [big : small] = order(big)/order(small); validates small <= big on samples and
/// exact divisibility.
BigInt subgroup_index(const SubgroupSpec& big, const SubgroupSpec& small,
                      const IndexOptions& opt = {});

/// Deterministic constrained lift from a level-1 member to full precision,
/// honoring the steering digits; throws PatternInvalid when a level system
/// has no solution.
Mat steered_lift(const SubgroupSpec& S, const std::vector<Steering>& steer, Mat start);

/// Filter every matrix over the ring (q^{n^2 w} candidates) through the full
/// membership predicate. Oracle-grade; cap-guarded.
std::vector<Mat> brute_force_members(const SubgroupSpec& S, uint64_t cap);

/// Classical order formulas for the ambient groups at precision K.
BigInt classical_order(GroupKind kind, int dim, const RingSpec& ring);

}  // namespace towers
