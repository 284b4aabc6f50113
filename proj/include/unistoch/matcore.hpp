#ifndef UNISTOCH_MATCORE_HPP
#define UNISTOCH_MATCORE_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "unistoch/error.hpp"

namespace unistoch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

/// Structural tolerance used by all validators unless overridden per call.
inline constexpr double kDefaultAtol = 1e-10;

/// Square matrix with nonnegative entries and unit row/column sums. Entries
/// are clamped to [0, 1] once validation at `atol` has passed, so downstream
/// square roots and logs are safe.
class BistochasticMatrix {
  public:
    BistochasticMatrix(const Matrix& entries, double atol = kDefaultAtol);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }
    double atol() const { return atol_; }

  private:
    Matrix entries_;
    double atol_;
};

/// Alias for the validating constructor, matching the operation vocabulary
/// used throughout the docs and the CLI.
inline BistochasticMatrix validate_bistochastic(const Matrix& entries, double atol = kDefaultAtol) {
    return BistochasticMatrix(entries, atol);
}

/// Complex matrix with orthonormal columns: max-entry norm of U*U - I must
/// not exceed `atol`. The measured deviation is kept for tolerance chaining.
class UnitaryMatrix {
  public:
    UnitaryMatrix(const CMatrix& entries, double atol = kDefaultAtol);

    /// Accepts whatever it is given and records the measured deviation as the
    /// tolerance. Used for witnesses coming out of numerical optimization,
    /// whose quality is known only after the fact.
    static UnitaryMatrix adopt(const CMatrix& entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const CMatrix& entries() const { return entries_; }
    Complex operator()(int i, int j) const { return entries_(i, j); }
    double atol() const { return atol_; }
    /// Max-entry norm of U*U - I measured at construction.
    double unitarity_defect() const { return defect_; }

  private:
    UnitaryMatrix() = default;

    CMatrix entries_;
    double atol_ = kDefaultAtol;
    double defect_ = 0.0;
};

/// Representative of the rephasing class D1*U*D2 whose first row and first
/// column are real and nonnegative.
class DephasedUnitary {
  public:
    explicit DephasedUnitary(UnitaryMatrix inner, double atol = kDefaultAtol);

    const UnitaryMatrix& inner() const { return inner_; }
    int dim() const { return inner_.dim(); }

    /// Entrywise moduli r_ij = |U_ij|.
    Matrix moduli() const;
    /// Entrywise phases in (-pi, pi]; zero entries report phase 0.
    Matrix phases() const;

  private:
    UnitaryMatrix inner_;
};

/// The six unitarity-triangle areas of a 3x3 unitary: indices 0..2 are the
/// column pairs (0,1), (0,2), (1,2); indices 3..5 the row pairs in the same
/// order.
struct TriangleAreas {
    std::array<double, 6> areas;

    double max() const;
    double min() const;
    /// max - min; the equal-area property says this vanishes for unitaries.
    double spread() const { return max() - min(); }
};

/// B_ij = |U_ij|^2. The result is validated with a tolerance inherited from
/// the unitarity defect of `u`, so a slightly sloppy unitary still yields a
/// usable bistochastic matrix.
BistochasticMatrix squared_moduli(const UnitaryMatrix& u);

/// Canonical rephasing: returns D1*U*D2 with real nonnegative first row and
/// first column. Zero entries in row 0 / column 0 keep phase factor 1.
DephasedUnitary dephase(const UnitaryMatrix& u);

/// Heron areas of the six unitarity triangles of a 3x3 unitary. Heron
/// expressions in [-atol, 0] clamp to zero (degenerate triangles); anything
/// more negative signals a non-unitary input and throws DegenerateInput.
TriangleAreas unitarity_triangle_areas(const UnitaryMatrix& u, double atol = kDefaultAtol);

} // namespace unistoch

#endif
