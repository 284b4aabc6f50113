#include "unistoch/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unistoch {

namespace {

std::string cell(int i, int j, double v) {
    std::ostringstream os;
    os << "entry (" << i << "," << j << ") = " << v;
    return os.str();
}

} // namespace

BistochasticMatrix::BistochasticMatrix(const Matrix& entries, double atol) : atol_(atol) {
    if (atol <= 0.0) throw Error(ErrorCode::InvalidArgument, "atol must be positive");
    if (entries.rows() != entries.cols())
        throw Error(ErrorCode::NotSquare, "matrix is " + std::to_string(entries.rows()) + "x" +
                                              std::to_string(entries.cols()));
    const int n = static_cast<int>(entries.rows());
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (entries(i, j) < -atol)
                throw Error(ErrorCode::NegativeEntry, cell(i, j, entries(i, j)));
    for (int i = 0; i < n; ++i) {
        const double s = entries.row(i).sum();
        if (std::abs(s - 1.0) > atol)
            throw Error(ErrorCode::RowSum, "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
    for (int j = 0; j < n; ++j) {
        const double s = entries.col(j).sum();
        if (std::abs(s - 1.0) > atol)
            throw Error(ErrorCode::ColSum, "column " + std::to_string(j) + " sums to " + std::to_string(s));
    }
    entries_ = entries.cwiseMax(0.0).cwiseMin(1.0);
}

UnitaryMatrix::UnitaryMatrix(const CMatrix& entries, double atol) {
    if (atol <= 0.0) throw Error(ErrorCode::InvalidArgument, "atol must be positive");
    if (entries.rows() != entries.cols())
        throw Error(ErrorCode::NotSquare, "matrix is " + std::to_string(entries.rows()) + "x" +
                                              std::to_string(entries.cols()));
    if (entries.rows() < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
    const CMatrix gram = entries.adjoint() * entries;
    const double defect =
        (gram - CMatrix::Identity(entries.rows(), entries.cols())).cwiseAbs().maxCoeff();
    if (defect > atol)
        throw Error(ErrorCode::NotUnitary, "U*U deviates from identity by " + std::to_string(defect));
    entries_ = entries;
    atol_ = atol;
    defect_ = defect;
}

UnitaryMatrix UnitaryMatrix::adopt(const CMatrix& entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 1)
        throw Error(ErrorCode::NotSquare, "adopt requires a nonempty square matrix");
    UnitaryMatrix u;
    u.entries_ = entries;
    const CMatrix gram = entries.adjoint() * entries;
    u.defect_ = (gram - CMatrix::Identity(entries.rows(), entries.cols())).cwiseAbs().maxCoeff();
    u.atol_ = std::max(kDefaultAtol, 2.0 * u.defect_);
    return u;
}

DephasedUnitary::DephasedUnitary(UnitaryMatrix inner, double atol) : inner_(std::move(inner)) {
    const CMatrix& m = inner_.entries();
    const int n = inner_.dim();
    for (int j = 0; j < n; ++j) {
        if (std::abs(m(0, j).imag()) > atol || m(0, j).real() < -atol)
            throw Error(ErrorCode::InvalidArgument,
                        "row 0 entry " + std::to_string(j) + " is not real nonnegative");
    }
    for (int i = 0; i < n; ++i) {
        if (std::abs(m(i, 0).imag()) > atol || m(i, 0).real() < -atol)
            throw Error(ErrorCode::InvalidArgument,
                        "column 0 entry " + std::to_string(i) + " is not real nonnegative");
    }
}

Matrix DephasedUnitary::moduli() const { return inner_.entries().cwiseAbs(); }

Matrix DephasedUnitary::phases() const {
    const CMatrix& m = inner_.entries();
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = (m(i, j) == Complex(0.0, 0.0)) ? 0.0 : std::arg(m(i, j));
    return out;
}

double TriangleAreas::max() const { return *std::max_element(areas.begin(), areas.end()); }
double TriangleAreas::min() const { return *std::min_element(areas.begin(), areas.end()); }

BistochasticMatrix squared_moduli(const UnitaryMatrix& u) {
    const Matrix b = u.entries().cwiseAbs2();
    // Row sums of B are diag(U U*); its deviation is bounded by n times the
    // column-orthonormality defect, both gram matrices sharing a spectrum.
    const double atol = std::max(kDefaultAtol, 4.0 * u.dim() * u.unitarity_defect() + 1e-15);
    return BistochasticMatrix(b, atol);
}

DephasedUnitary dephase(const UnitaryMatrix& u) {
    CMatrix m = u.entries();
    const int n = u.dim();
    // D1 clears the phases of column 0, D2 those of the remaining row 0
    // entries; entry (0,0) is handled by D1, and exact zeros are left alone.
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(m(i, 0));
        if (mag > 0.0) m.row(i) *= std::conj(m(i, 0)) / mag;
    }
    for (int j = 1; j < n; ++j) {
        const double mag = std::abs(m(0, j));
        if (mag > 0.0) m.col(j) *= std::conj(m(0, j)) / mag;
    }
    // Rows with a zero in column 0 are untouched by the constraints above;
    // spend the leftover freedom on making their first nonzero entry real
    // positive (so e.g. diagonal phase matrices dephase to the identity).
    for (int i = 1; i < n; ++i) {
        if (std::abs(m(i, 0)) > 0.0) continue;
        for (int j = 1; j < n; ++j) {
            const double mag = std::abs(m(i, j));
            if (mag > 0.0) {
                m.row(i) *= std::conj(m(i, j)) / mag;
                break;
            }
        }
    }
    return DephasedUnitary(UnitaryMatrix(m, std::max(u.atol(), 8.0 * u.unitarity_defect() + 1e-15)));
}

namespace {

// Numerically stable Heron expression (Kahan's ordering): 16 * area^2.
double heron_expression(double a, double b, double c) {
    if (a < b) std::swap(a, b);
    if (a < c) std::swap(a, c);
    if (b < c) std::swap(b, c);
    return (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
}

double heron_area(double a, double b, double c, double atol) {
    double expr = heron_expression(a, b, c);
    if (expr < -atol)
        throw Error(ErrorCode::DegenerateInput,
                    "Heron expression " + std::to_string(expr) + " below -atol; input is not unitary");
    if (expr < 0.0) expr = 0.0;
    return 0.25 * std::sqrt(expr);
}

} // namespace

TriangleAreas unitarity_triangle_areas(const UnitaryMatrix& u, double atol) {
    if (u.dim() != 3)
        throw Error(ErrorCode::DimensionMismatch, "unitarity triangles are defined for 3x3 unitaries");
    const Matrix r = u.entries().cwiseAbs();
    TriangleAreas out{};
    static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int p = 0; p < 3; ++p) {
        const int j = pairs[p][0], k = pairs[p][1];
        out.areas[p] = heron_area(r(0, j) * r(0, k), r(1, j) * r(1, k), r(2, j) * r(2, k), atol);
        out.areas[3 + p] = heron_area(r(j, 0) * r(k, 0), r(j, 1) * r(k, 1), r(j, 2) * r(k, 2), atol);
    }
    return out;
}

} // namespace unistoch
