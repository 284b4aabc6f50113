#include "unistoch/entangle.hpp"

#include <algorithm>
#include <cmath>

namespace unistoch {

LatinSquare::LatinSquare(Eigen::MatrixXi cells) : cells_(std::move(cells)) {
    if (cells_.rows() != cells_.cols())
        throw Error(ErrorCode::NotSquare, "Latin square must be square");
    const int n = static_cast<int>(cells_.rows());
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "order must be at least 2");
    std::vector<bool> seen(n);
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), false);
        for (int c = 0; c < n; ++c) {
            const int v = cells_(r, c);
            if (v < 0 || v >= n || seen[v])
                throw Error(ErrorCode::NotLatin, "row " + std::to_string(r) + " is not a permutation");
            seen[v] = true;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), false);
        for (int r = 0; r < n; ++r) {
            const int v = cells_(r, c);
            if (seen[v])
                throw Error(ErrorCode::NotLatin,
                            "column " + std::to_string(c) + " is not a permutation");
            seen[v] = true;
        }
    }
}

LatinSquare cyclic_latin(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "order must be at least 2");
    Eigen::MatrixXi cells(n, n);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) cells(a, i) = (a + i) % n;
    return LatinSquare(std::move(cells));
}

EntangledBasis::EntangledBasis(int local_dim, std::vector<Eigen::VectorXcd> vecs)
    : n(local_dim), vectors(std::move(vecs)) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "local dimension must be at least 2");
    if (static_cast<int>(vectors.size()) != n * n)
        throw Error(ErrorCode::DimensionMismatch, "basis needs n^2 vectors");
    for (const auto& v : vectors)
        if (v.size() != n * n)
            throw Error(ErrorCode::DimensionMismatch, "vectors must have length n^2");
}

EntangledBasis build_basis(const LatinSquare& ls, const UnitaryMatrix& h) {
    const int n = ls.order();
    if (h.dim() != n)
        throw Error(ErrorCode::DimensionMismatch, "Latin square and Hadamard orders differ");
    if (!is_complex_hadamard(h))
        throw Error(ErrorCode::NotHadamard, "phases must come from a complex Hadamard matrix");

    std::vector<Eigen::VectorXcd> vectors;
    vectors.reserve(n * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n);
            for (int i = 0; i < n; ++i) v(i * n + ls(a, i)) = h(b, i);
            // |H_bi| = 1/sqrt(n) for all i, so v is already unit; fix the
            // global phase via the first nonzero component (the i = 0 one).
            const Complex first = v(ls(a, 0));
            v *= std::conj(first) / std::abs(first);
            vectors.push_back(std::move(v));
        }
    }
    return EntangledBasis(n, std::move(vectors));
}

BasisReport verify_basis(const EntangledBasis& basis) {
    const int n = basis.n;
    const int count = static_cast<int>(basis.vectors.size());
    BasisReport report;

    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            const Complex g = basis.vectors[a].dot(basis.vectors[b]);
            const double dev = std::abs(g - (a == b ? Complex(1.0) : Complex(0.0)));
            report.max_gram_deviation = std::max(report.max_gram_deviation, dev);
        }

    const double target = 1.0 / n;
    for (const auto& v : basis.vectors) {
        CMatrix rho_a = CMatrix::Zero(n, n);
        CMatrix rho_b = CMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) {
                    rho_a(i, k) += v(i * n + j) * std::conj(v(k * n + j)); // trace out factor B
                    rho_b(i, k) += v(j * n + i) * std::conj(v(j * n + k)); // trace out factor A
                }
        rho_a.diagonal().array() -= target;
        rho_b.diagonal().array() -= target;
        report.max_reduced_deviation = std::max(
            {report.max_reduced_deviation, rho_a.cwiseAbs().maxCoeff(), rho_b.cwiseAbs().maxCoeff()});
    }
    return report;
}

} // namespace unistoch
