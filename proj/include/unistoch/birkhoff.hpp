#ifndef UNISTOCH_BIRKHOFF_HPP
#define UNISTOCH_BIRKHOFF_HPP

#include <cstdint>
#include <vector>

#include "unistoch/matcore.hpp"
#include "unistoch/rng.hpp"

namespace unistoch {

/// Corner of the Birkhoff polytope: perm[i] is the column of the 1 in row i.
class PermutationMatrix {
  public:
    explicit PermutationMatrix(std::vector<int> perm);
    static PermutationMatrix identity(int n);

    int dim() const { return static_cast<int>(perm_.size()); }
    int operator()(int row) const { return perm_[row]; }
    const std::vector<int>& perm() const { return perm_; }

    Matrix to_matrix() const;
    BistochasticMatrix to_bistochastic() const;
    PermutationMatrix inverse() const;
    /// Composition (this o other)(i) = this(other(i)).
    PermutationMatrix compose(const PermutationMatrix& other) const;
    /// Number of cycles of length >= 2.
    int nontrivial_cycle_count() const;

    friend bool operator==(const PermutationMatrix& a, const PermutationMatrix& b) {
        return a.perm_ == b.perm_;
    }

  private:
    std::vector<int> perm_;
};

struct BirkhoffTerm {
    double weight;
    PermutationMatrix perm;
};

/// Convex decomposition B = sum_t weight_t * P_t with at most (n-1)^2 + 1
/// terms and weights summing to one.
struct BirkhoffDecomposition {
    std::vector<BirkhoffTerm> terms;

    Matrix reconstruct(int n) const;
    double weight_sum() const;
};

/// The polytope's center: all entries 1/n.
BistochasticMatrix van_der_waerden(int n);

namespace detail {
/// Caratheodory reduction: while more terms than (n-1)^2 + 1, eliminates an
/// affine dependency among the permutation matrices, keeping the weighted sum
/// and nonnegativity intact. Safety net behind birkhoff_decompose (greedy
/// alone meets the bound on everything we have thrown at it); exposed here so
/// the reduction path stays tested.
void reduce_decomposition(std::vector<BirkhoffTerm>& terms, int n);
} // namespace detail

/// Greedy Birkhoff-von Neumann decomposition. Each round extracts the
/// lexicographically smallest perfect matching on the positive support, which
/// makes the output deterministic; a Caratheodory reduction afterwards
/// enforces the (n-1)^2 + 1 term bound.
BirkhoffDecomposition birkhoff_decompose(const BistochasticMatrix& b);

/// True iff the segment [P, Q] is a 1-face of the polytope, i.e. p o q^-1 has
/// exactly one nontrivial cycle.
bool is_extremal_edge(const PermutationMatrix& p, const PermutationMatrix& q);

/// Metric facts about the corners at n = 3 (two equilateral triangles in
/// orthogonal 2-planes) and n = 4 (six regular tetrahedra).
struct CornerCensus {
    int n = 0;
    int corner_count = 0;   // n!
    int dimension = 0;      // (n-1)^2, cross-checked against the affine rank
    int affine_rank = 0;
    std::vector<PermutationMatrix> corners;   // lexicographic order
    std::vector<std::vector<int>> groups;     // triangles (n=3) or tetrahedra (n=4)
    double group_edge_length = 0.0;           // common intra-group distance
    double max_edge_spread = 0.0;             // metric regularity check
    double max_plane_inner_product = 0.0;     // n=3 only: triangle planes orthogonality
    int extremal_pair_count = 0;
    bool all_pairs_extremal = false;
};

CornerCensus corner_census(int n);

/// Uniform sampling from the Birkhoff polytope. n = 3 uses exact rejection
/// from the unit 4-cube of the upper-left 2x2 block (acceptance probability
/// exactly 1/8); n >= 4 runs a hit-and-run chain with burn-in 1000*(n-1)^2
/// and thinning 10*(n-1)^2 steps.
class UniformSampler {
  public:
    UniformSampler(int n, std::uint64_t seed, std::uint64_t substream = 0);

    BistochasticMatrix next();

    /// Rejection statistics (n = 3 only; both zero for the chain sampler).
    std::uint64_t draws() const { return draws_; }
    std::uint64_t accepted() const { return accepted_; }

  private:
    Matrix rejection_sample();
    void hit_and_run_step();
    Matrix projected_state() const;

    int n_;
    Rng rng_;
    Matrix state_;
    std::uint64_t draws_ = 0;
    std::uint64_t accepted_ = 0;
    int thin_;
};

/// Convenience batch front-end over UniformSampler (single stream).
std::vector<BistochasticMatrix> sample_uniform(int n, int count, std::uint64_t seed);

} // namespace unistoch

#endif
