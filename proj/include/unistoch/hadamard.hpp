#ifndef UNISTOCH_HADAMARD_HPP
#define UNISTOCH_HADAMARD_HPP

#include <vector>

#include "unistoch/matcore.hpp"

namespace unistoch {

/// Sequence of unimodular complex numbers whose (unnormalized, forward
/// convention x_hat_j = sum_k x_k q^{jk}) discrete Fourier transform is also
/// of constant modulus sqrt(n). Its circulant is a complex Hadamard matrix.
class BiunimodularSequence {
  public:
    explicit BiunimodularSequence(std::vector<Complex> values, double atol = 1e-8);

    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<Complex>& values() const { return values_; }
    Complex operator[](int k) const { return values_[k]; }

  private:
    std::vector<Complex> values_;
};

/// Unnormalized DFT with the library-wide root convention q = exp(2 pi i/n).
std::vector<Complex> dft(const std::vector<Complex>& x);

/// Fourier matrix U_ij = q^{ij} / sqrt(n), q = exp(2 pi i/n).
UnitaryMatrix fourier(int n);

/// True iff all squared moduli equal 1/n within atol (the unitarity of `u` is
/// guaranteed by its type).
bool is_complex_hadamard(const UnitaryMatrix& u, double atol = kDefaultAtol);

/// The one-parameter family of 4x4 complex Hadamard matrices
///   1/2 * [[1, 1, 1, 1], [1, e^{i phi}, -1, -e^{i phi}],
///          [1, -1, 1, -1], [1, -e^{i phi}, -1, e^{i phi}]].
UnitaryMatrix hadamard_family_n4(double phi);

/// Real Hadamard matrix of dimension 2^k by iterated doubling
/// H -> [[H, H], [H, -H]] / sqrt(2).
UnitaryMatrix sylvester(int k);

/// Gauss' quadratic-residue sequence values_k = q^{k^2}, q = exp(2 pi i/n),
/// bi-unimodular for odd n.
BiunimodularSequence gauss_sequence(int n);

/// Circulant C_jk = seq_{(k-j) mod n} / sqrt(n) of a bi-unimodular sequence;
/// always a complex Hadamard matrix.
UnitaryMatrix circulant_hadamard(const BiunimodularSequence& seq);

/// Hadamard equivalence test for n <= 5: true iff some row permutation,
/// column permutation and rephasing maps u1 onto u2. Brute force over the
/// n! * n! permutation pairs, comparing dephased forms.
bool equivalent_small(const UnitaryMatrix& u1, const UnitaryMatrix& u2);

} // namespace unistoch

#endif
