#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "unistoch/hadamard.hpp"
#include "unistoch/unicheck.hpp"

using namespace unistoch;
using test::max_abs_diff;

TEST_CASE("Fourier matrices") {
    const CMatrix f2 = fourier(2).entries();
    CMatrix expected2(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    expected2 << s, s, s, -s;
    CHECK(max_abs_diff(f2, expected2) < 1e-15);

    // n = 4: entries are powers of i over 2.
    const CMatrix f4 = fourier(4).entries();
    CHECK(std::abs(f4(1, 1) - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(f4(2, 2) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(f4(1, 3) - Complex(0.0, -0.5)) < 1e-15);

    for (int n = 2; n <= 16; ++n) {
        const UnitaryMatrix f = fourier(n);
        CHECK(f.unitarity_defect() < 1e-12);
        CHECK(is_complex_hadamard(f));
    }
}

TEST_CASE("is_complex_hadamard separates flat from structured unitaries") {
    CHECK(is_complex_hadamard(fourier(3)));
    CHECK_FALSE(is_complex_hadamard(UnitaryMatrix(CMatrix::Identity(3, 3))));
}

TEST_CASE("the n = 4 one-parameter family") {
    const UnitaryMatrix real = hadamard_family_n4(0.0);
    CHECK(real.entries().imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(real.entries().real().cwiseAbs().minCoeff() == doctest::Approx(0.5));

    const UnitaryMatrix quarter = hadamard_family_n4(M_PI / 2.0);
    CHECK(std::abs(quarter(1, 1) - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(quarter(3, 1) - Complex(0.0, -0.5)) < 1e-15);

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const UnitaryMatrix u = hadamard_family_n4(rng.uniform(0.0, 2.0 * M_PI));
        CHECK(u.unitarity_defect() < 1e-12);
        CHECK(is_complex_hadamard(u));
        CHECK(max_abs_diff(squared_moduli(u).entries(), Matrix::Constant(4, 4, 0.25)) < 1e-14);
    }
}

TEST_CASE("Sylvester doubling") {
    CHECK(max_abs_diff(sylvester(1).entries(), fourier(2).entries()) < 1e-15);
    const UnitaryMatrix h8 = sylvester(3);
    CHECK(h8.dim() == 8);
    CHECK(h8.unitarity_defect() < 1e-12);
    CHECK(is_complex_hadamard(h8));
    // Entries are +-1/sqrt(8).
    CHECK((h8.entries().cwiseAbs().array() - 1.0 / std::sqrt(8.0)).abs().maxCoeff() < 1e-15);

    CHECK(equivalent_small(sylvester(2), hadamard_family_n4(0.0)));
}

TEST_CASE("Gauss sequences are bi-unimodular for odd n") {
    const BiunimodularSequence g3 = gauss_sequence(3);
    const Complex q = std::polar(1.0, 2.0 * M_PI / 3.0);
    CHECK(std::abs(g3[0] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(g3[1] - q) < 1e-15); // exponents k^2 mod 3 = (0, 1, 1)
    CHECK(std::abs(g3[2] - q) < 1e-15);
    // |DFT_0| = |1 + 2q| = sqrt(3)
    const auto hat = dft(g3.values());
    CHECK(std::abs(hat[0]) == doctest::Approx(std::sqrt(3.0)));

    const BiunimodularSequence g5 = gauss_sequence(5);
    const int expected_exponents[5] = {0, 1, 4, 4, 1};
    for (int k = 0; k < 5; ++k)
        CHECK(std::abs(g5[k] - std::polar(1.0, 2.0 * M_PI * expected_exponents[k] / 5.0)) < 1e-15);

    for (int n = 3; n <= 15; n += 2) CHECK_NOTHROW(gauss_sequence(n));

    try {
        gauss_sequence(4);
        FAIL("expected EvenLength");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EvenLength);
    }
}

TEST_CASE("constant sequences are not bi-unimodular") {
    try {
        BiunimodularSequence seq({Complex(1.0), Complex(1.0), Complex(1.0)});
        FAIL("expected NotBiunimodular");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotBiunimodular);
    }
}

TEST_CASE("circulants of Gauss sequences are complex Hadamard") {
    for (int n = 3; n <= 15; n += 2) {
        const BiunimodularSequence seq = gauss_sequence(n);
        const UnitaryMatrix c = circulant_hadamard(seq);
        CHECK(c.unitarity_defect() < 1e-10);
        CHECK(is_complex_hadamard(c));
        // Row 0 of the circulant is the sequence itself over sqrt(n).
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(c(0, k) - seq[k] / std::sqrt(double(n))) < 1e-15);

        // The Fourier matrix diagonalizes every circulant (same root
        // convention as the DFT used for validation).
        const CMatrix f = fourier(n).entries();
        const CMatrix diag = f.adjoint() * c.entries() * f;
        CMatrix off = diag;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() < 1e-9);
        CHECK((diag.diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("Hadamard equivalence brute force") {
    // Conjugating the Fourier matrix permutes its rows (1 <-> 2 for n = 3).
    const UnitaryMatrix f3 = fourier(3);
    const UnitaryMatrix f3c(f3.entries().conjugate());
    CHECK(equivalent_small(f3, f3c));
    CHECK(equivalent_small(fourier(5), UnitaryMatrix(fourier(5).entries().conjugate())));

    // Distinct family parameters are genuinely inequivalent.
    CHECK_FALSE(equivalent_small(hadamard_family_n4(0.0), hadamard_family_n4(M_PI / 3.0)));

    // The 4x4 Fourier matrix sits at phi = pi/2 inside the family.
    CHECK(equivalent_small(fourier(4), hadamard_family_n4(M_PI / 2.0)));
    CHECK_FALSE(equivalent_small(fourier(4), hadamard_family_n4(0.0)));

    // At n = 5 there is a single equivalence class, so the Gauss circulant
    // must match the Fourier matrix.
    CHECK(equivalent_small(fourier(5), circulant_hadamard(gauss_sequence(5))));

    try {
        equivalent_small(fourier(3), fourier(4));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    try {
        equivalent_small(fourier(6), fourier(6));
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("numerical check converges instantly from the Fourier phases") {
    for (int n = 2; n <= 8; ++n) {
        NumericalOptions opt;
        opt.restarts = 1;
        opt.tol = 1e-14;
        Eigen::VectorXd phases((n - 1) * (n - 1));
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                phases((i - 1) * (n - 1) + (j - 1)) = 2.0 * M_PI * ((i * j) % n) / n;
        opt.initial_phases = phases;
        const UnistochasticityVerdict v = check_numerical(van_der_waerden(n), opt);
        CHECK(v.status == VerdictStatus::Unistochastic);
        CHECK(v.defect < 1e-14);
    }
}
