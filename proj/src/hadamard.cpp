#include "unistoch/hadamard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace unistoch {

std::vector<Complex> dft(const std::vector<Complex>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<Complex> out(n);
    for (int j = 0; j < n; ++j) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < n; ++k)
            acc += x[k] * std::polar(1.0, 2.0 * M_PI * ((static_cast<long>(j) * k) % n) / n);
        out[j] = acc;
    }
    return out;
}

BiunimodularSequence::BiunimodularSequence(std::vector<Complex> values, double atol)
    : values_(std::move(values)) {
    const int n = static_cast<int>(values_.size());
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "sequence needs at least 2 values");
    for (int k = 0; k < n; ++k)
        if (std::abs(std::abs(values_[k]) - 1.0) > atol)
            throw Error(ErrorCode::NotBiunimodular,
                        "value " + std::to_string(k) + " is not unimodular");
    const std::vector<Complex> hat = dft(values_);
    const double root = std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        if (std::abs(std::abs(hat[k]) - root) > atol)
            throw Error(ErrorCode::NotBiunimodular,
                        "transform modulus at " + std::to_string(k) + " is " +
                            std::to_string(std::abs(hat[k])) + ", expected sqrt(n)");
}

UnitaryMatrix fourier(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            u(i, j) = std::polar(scale, 2.0 * M_PI * ((static_cast<long>(i) * j) % n) / n);
    return UnitaryMatrix(u, 1e-12);
}

bool is_complex_hadamard(const UnitaryMatrix& u, double atol) {
    const int n = u.dim();
    const double target = 1.0 / n;
    return (u.entries().cwiseAbs2().array() - target).abs().maxCoeff() <= atol;
}

UnitaryMatrix hadamard_family_n4(double phi) {
    const Complex e = std::polar(1.0, phi);
    CMatrix u(4, 4);
    u << 1, 1, 1, 1,
         1, e, -1, -e,
         1, -1, 1, -1,
         1, -e, -1, e;
    u *= 0.5;
    return UnitaryMatrix(u, 1e-12);
}

UnitaryMatrix sylvester(int k) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
    if (k > 12) throw Error(ErrorCode::TooLarge, "2^k dimension is impractical");
    const int n = 1 << k;
    // Entry (i, j) of the unnormalized doubling is (-1)^{popcount(i & j)}.
    Matrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(i, j) = (std::popcount(static_cast<unsigned>(i) & static_cast<unsigned>(j)) % 2) ? -1.0
                                                                                               : 1.0;
    h /= std::sqrt(static_cast<double>(n));
    return UnitaryMatrix(h.cast<Complex>(), 1e-12);
}

BiunimodularSequence gauss_sequence(int n) {
    if (n % 2 == 0) throw Error(ErrorCode::EvenLength, "Gauss sequences need odd length");
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "length must be at least 3");
    std::vector<Complex> values(n);
    for (int k = 0; k < n; ++k)
        values[k] = std::polar(1.0, 2.0 * M_PI * ((static_cast<long>(k) * k) % n) / n);
    return BiunimodularSequence(std::move(values));
}

UnitaryMatrix circulant_hadamard(const BiunimodularSequence& seq) {
    const int n = seq.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix c(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c(j, k) = scale * seq[((k - j) % n + n) % n];
    return UnitaryMatrix(c, 1e-10);
}

bool equivalent_small(const UnitaryMatrix& u1, const UnitaryMatrix& u2) {
    if (u1.dim() != u2.dim())
        throw Error(ErrorCode::DimensionMismatch, "comparing matrices of different sizes");
    const int n = u1.dim();
    if (n > 5) throw Error(ErrorCode::TooLarge, "equivalence search is capped at n = 5");
    if (!is_complex_hadamard(u1) || !is_complex_hadamard(u2))
        throw Error(ErrorCode::NotHadamard, "equivalence is defined for complex Hadamard matrices");

    constexpr double kMatchTol = 1e-8;
    const CMatrix target = dephase(u2).inner().entries();
    std::vector<int> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    do {
        std::iota(cols.begin(), cols.end(), 0);
        do {
            CMatrix candidate(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) candidate(i, j) = u1(rows[i], cols[j]);
            // Entries all have modulus 1/sqrt(n), so dephased forms are the
            // unique canonical representatives and can be compared directly.
            const CMatrix canon = dephase(UnitaryMatrix::adopt(candidate)).inner().entries();
            if ((canon - target).cwiseAbs().maxCoeff() <= kMatchTol) return true;
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
    return false;
}

} // namespace unistoch
