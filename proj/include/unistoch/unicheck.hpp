#ifndef UNISTOCH_UNICHECK_HPP
#define UNISTOCH_UNICHECK_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unistoch/matcore.hpp"
#include "unistoch/rng.hpp"

namespace unistoch {

/// Closability tolerance for the n = 3 chain-links triangle test.
inline constexpr double kTriangleAtol = 1e-10;
/// Looser tolerance for spotting the degenerate (orthostochastic) boundary,
/// which sampled data only ever hits approximately.
inline constexpr double kOrthoAtol = 1e-8;
/// Reconstruction collapses to a single real witness only when the triangle
/// is flat at rounding scale; snapping phases inside the looser band above
/// would contaminate witnesses of merely boundary-near inputs.
inline constexpr double kFlatAtol = 1e-12;

/// The three link lengths L_i = sqrt(B_ij * B_ik) of a 3x3 column pair.
/// Orthogonality of columns j and k of a witness requires the links to close
/// into a triangle.
struct ChainLinks {
    std::array<double, 3> links;

    /// max(L) - sum of the other two; <= 0 means the triangle closes.
    double closure_margin() const;
    bool closable(double atol = kTriangleAtol) const { return closure_margin() <= atol; }
    /// Flat triangle within atol: the boundary (orthostochastic) case.
    bool degenerate(double atol = kOrthoAtol) const { return std::abs(closure_margin()) <= atol; }
};

enum class VerdictStatus { Unistochastic, NotUnistochastic, Undecided };
enum class VerdictMethod { ExactN2, ExactN3, Numerical };

const char* to_string(VerdictStatus s);
const char* to_string(VerdictMethod m);

/// Outcome of a unistochasticity decision. `defect` is the triangle closure
/// margin for the exact tests (positive = violation, negative = interior
/// margin) and the final objective value for the numerical test.
struct UnistochasticityVerdict {
    VerdictStatus status;
    std::optional<DephasedUnitary> witness;
    double defect = 0.0;
    VerdictMethod method;
};

/// n = 2: every bistochastic matrix is unistochastic; the witness is the
/// dephased rotation with cos(theta) = sqrt(B_00).
UnistochasticityVerdict check_exact_n2(const BistochasticMatrix& b);

/// Links of a 3x3 matrix for columns (j, k).
ChainLinks chain_links(const BistochasticMatrix& b, int col_j = 0, int col_k = 1);

/// Exact n = 3 decision via the triangle condition on columns (0, 1); the
/// third column completes automatically. Two-sided: a failed triangle proves
/// non-unistochasticity.
UnistochasticityVerdict check_exact_n3(const BistochasticMatrix& b);

/// Both dephased witnesses of an n = 3 unistochastic matrix (the two triangle
/// orientations, entrywise conjugates); a single witness when the triangle is
/// degenerate. Throws NotUnistochasticInput otherwise.
std::vector<DephasedUnitary> reconstruct_n3(const BistochasticMatrix& b);

/// True iff b admits a real orthogonal witness: the chain-links triangle is
/// flat within `atol`.
bool is_orthostochastic_n3(const BistochasticMatrix& b, double atol = kOrthoAtol);

struct NumericalOptions {
    int restarts = 20;
    std::uint64_t seed = 0;
    double tol = 1e-14;       // accept a witness when f < tol
    int max_iterations = 5000;
    /// Optional starting phases for restart 0 ((n-1)^2 values, row-major over
    /// the free block); remaining restarts stay uniform random.
    std::optional<Eigen::VectorXd> initial_phases;
};

/// Numerical decision for any n: fixes moduli at sqrt(B) and minimizes the
/// total squared column overlap f(phi) = sum_{j<k} |<c_j, c_k>|^2 over the
/// (n-1)^2 free phases of the dephased form, with uniform random restarts.
/// One-sided: returns Unistochastic (f < tol at some restart, smallest
/// restart index wins) or Undecided with the best f as defect; never
/// NotUnistochastic. Deterministic for fixed (restarts, seed). Interior
/// targets are found reliably at the default restarts; matrices near the
/// orthostochastic boundary have isolated real solutions whose basins shrink
/// with n, so raise `restarts` when probing those.
UnistochasticityVerdict check_numerical(const BistochasticMatrix& b,
                                        const NumericalOptions& options = {});
UnistochasticityVerdict check_numerical(const BistochasticMatrix& b, int restarts,
                                        std::uint64_t seed, double tol = 1e-14);

/// Walks the ray from the van der Waerden matrix to b in `steps` increments
/// and re-checks each blend exactly; true iff the whole ray is unistochastic
/// (the star-shape probe). Throws NotUnistochasticInput if b itself fails.
bool star_ray_probe(const BistochasticMatrix& b, int steps);

/// Samples random tangent directions at the van der Waerden matrix, steps
/// `radius` along each, and checks unistochasticity (exactly at n = 3,
/// numerically above). Returns the passing fraction over `trials` accepted
/// perturbations; draws that leave the polytope are redrawn, and
/// RadiusTooLarge is thrown when no feasible perturbation can be found.
double prime_ball_probe(int n, double radius, int trials, std::uint64_t seed,
                        const NumericalOptions& options = {});

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// phase correction that makes the factor unique.
UnitaryMatrix haar_random_unitary(int n, Rng& rng);
UnitaryMatrix haar_random_unitary(int n, std::uint64_t seed);

} // namespace unistoch

#endif
