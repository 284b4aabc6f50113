#ifndef UNISTOCH_ENTANGLE_HPP
#define UNISTOCH_ENTANGLE_HPP

#include <vector>

#include "unistoch/hadamard.hpp"
#include "unistoch/matcore.hpp"

namespace unistoch {

/// n x n array of symbols 0..n-1, each appearing exactly once per row and
/// per column.
class LatinSquare {
  public:
    explicit LatinSquare(Eigen::MatrixXi cells);

    int order() const { return static_cast<int>(cells_.rows()); }
    int operator()(int row, int col) const { return cells_(row, col); }
    const Eigen::MatrixXi& cells() const { return cells_; }

  private:
    Eigen::MatrixXi cells_;
};

/// The cyclic square cells(a, i) = (a + i) mod n.
LatinSquare cyclic_latin(int n);

/// n^2 bipartite vectors of length n^2, component (i, j) flattened as i*n+j.
/// Plain data; build_basis produces valid bases, verify_basis measures how
/// far an arbitrary collection is from being one.
struct EntangledBasis {
    int n = 0;
    std::vector<Eigen::VectorXcd> vectors;

    EntangledBasis() = default;
    EntangledBasis(int local_dim, std::vector<Eigen::VectorXcd> vecs);
};

struct BasisReport {
    double max_gram_deviation = 0.0;     // max |Gram - I| entry
    double max_reduced_deviation = 0.0;  // max |rho - I/n| entry, both factors

    bool ok(double atol = kDefaultAtol) const {
        return max_gram_deviation < atol && max_reduced_deviation < atol;
    }
};

/// Maximally entangled basis from a Latin square and a complex Hadamard
/// matrix: vector v_{a,b} (flattened index a*n+b) has component H_{b,i} at
/// position (i, ls(a,i)), zero elsewhere; its global phase is fixed by making
/// the first nonzero component real positive.
EntangledBasis build_basis(const LatinSquare& ls, const UnitaryMatrix& h);

/// Gram-matrix and reduced-density deviations of a vector collection; both
/// partial traces are checked since the construction is asymmetric.
BasisReport verify_basis(const EntangledBasis& basis);

} // namespace unistoch

#endif
