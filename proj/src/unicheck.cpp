#include "unistoch/unicheck.hpp"

#include <algorithm>
#include <cmath>

#include "unistoch/birkhoff.hpp"
#include "unistoch/lbfgs.hpp"

namespace unistoch {

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Unistochastic: return "Unistochastic";
        case VerdictStatus::NotUnistochastic: return "NotUnistochastic";
        case VerdictStatus::Undecided: return "Undecided";
    }
    return "?";
}

const char* to_string(VerdictMethod m) {
    switch (m) {
        case VerdictMethod::ExactN2: return "ExactN2";
        case VerdictMethod::ExactN3: return "ExactN3";
        case VerdictMethod::Numerical: return "Numerical";
    }
    return "?";
}

double ChainLinks::closure_margin() const {
    const double mx = std::max({links[0], links[1], links[2]});
    return 2.0 * mx - (links[0] + links[1] + links[2]);
}

// ---------------------------------------------------------------------------
// Exact tests

UnistochasticityVerdict check_exact_n2(const BistochasticMatrix& b) {
    if (b.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "check_exact_n2 needs a 2x2 matrix");
    const double c = std::sqrt(b(0, 0));
    const double s = std::sqrt(b(0, 1));
    CMatrix u(2, 2);
    if (s == 0.0) {
        u = CMatrix::Identity(2, 2);
    } else if (c == 0.0) {
        u << 0, 1, 1, 0;
    } else {
        // Dephased rotation; orthogonality of the columns forces the relative
        // phase pi on the (1,1) entry.
        u << c, s, s, -c;
    }
    UnistochasticityVerdict v;
    v.status = VerdictStatus::Unistochastic;
    v.witness = DephasedUnitary(UnitaryMatrix::adopt(u));
    v.defect = 0.0;
    v.method = VerdictMethod::ExactN2;
    return v;
}

ChainLinks chain_links(const BistochasticMatrix& b, int col_j, int col_k) {
    if (b.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "chain links need a 3x3 matrix");
    if (col_j == col_k) throw Error(ErrorCode::EqualInputs, "column pair must be distinct");
    if (col_j < 0 || col_j > 2 || col_k < 0 || col_k > 2)
        throw Error(ErrorCode::InvalidArgument, "column index out of range");
    ChainLinks out{};
    for (int i = 0; i < 3; ++i) out.links[i] = std::sqrt(b(i, col_j) * b(i, col_k));
    return out;
}

namespace {

// Phases (phi1, phi2) with L0 + L1 e^{i phi1} + L2 e^{i phi2} = 0, the
// positive orientation (phi1 in [0, pi]). Assumes the triangle closes within
// tolerance; cosine arguments are clamped. `snap` rounds the phases to
// {0, pi}, used for flat triangles so orthostochastic inputs come out real.
std::pair<double, double> closure_phases(double l0, double l1, double l2, bool snap) {
    double phi1 = 0.0, phi2 = 0.0;
    if (l0 * l1 > 0.0 && l0 * l2 > 0.0) {
        const double c1 = std::clamp((l2 * l2 - l0 * l0 - l1 * l1) / (2.0 * l0 * l1), -1.0, 1.0);
        const double c2 = std::clamp((l1 * l1 - l0 * l0 - l2 * l2) / (2.0 * l0 * l2), -1.0, 1.0);
        phi1 = std::acos(c1);
        phi2 = -std::acos(c2);
    } else if (l0 == 0.0 && l1 > 0.0 && l2 > 0.0) {
        phi1 = 0.0;
        phi2 = M_PI; // L1 must cancel L2
    } else if (l1 == 0.0 && l0 > 0.0 && l2 > 0.0) {
        phi1 = 0.0; // free
        phi2 = M_PI; // L2 must cancel L0
    } else if (l2 == 0.0 && l0 > 0.0 && l1 > 0.0) {
        phi1 = M_PI; // L1 must cancel L0
        phi2 = 0.0; // free
    } // all structurally zero: phases 0
    if (snap) {
        phi1 = (std::abs(phi1) < M_PI_2) ? 0.0 : M_PI;
        phi2 = (std::abs(phi2) < M_PI_2) ? 0.0 : M_PI;
    }
    return {phi1, phi2};
}

// Builds the dephased 3x3 witness from sqrt(B) moduli and the two free
// phases of the first two columns; the third column is the conjugated cross
// product, which is exactly orthogonal and reproduces the remaining moduli.
DephasedUnitary complete_witness(const BistochasticMatrix& b, double phi1, double phi2) {
    CMatrix u(3, 3);
    u(0, 0) = std::sqrt(b(0, 0));
    u(1, 0) = std::sqrt(b(1, 0));
    u(2, 0) = std::sqrt(b(2, 0));
    u(0, 1) = std::sqrt(b(0, 1));
    u(1, 1) = std::polar(std::sqrt(b(1, 1)), phi1);
    u(2, 1) = std::polar(std::sqrt(b(2, 1)), phi2);
    const Eigen::Vector3cd c0 = u.col(0), c1 = u.col(1);
    // Eigen's complex cross() conjugates componentwise, which is exactly the
    // completion that is Hermitian-orthogonal to both columns and carries the
    // moduli of the missing column.
    u.col(2) = c0.cross(c1);
    return dephase(UnitaryMatrix::adopt(u));
}

std::vector<DephasedUnitary> reconstruct_impl(const BistochasticMatrix& b, double* margin_out) {
    const ChainLinks links = chain_links(b, 0, 1);
    const double margin = links.closure_margin();
    if (margin_out) *margin_out = margin;
    if (margin > kTriangleAtol)
        throw Error(ErrorCode::NotUnistochasticInput,
                    "triangle violation " + std::to_string(margin));
    const bool flat = links.degenerate(kFlatAtol);
    const auto [phi1, phi2] = closure_phases(links.links[0], links.links[1], links.links[2], flat);
    std::vector<DephasedUnitary> out;
    out.push_back(complete_witness(b, phi1, phi2));
    if (!flat) out.push_back(complete_witness(b, -phi1, -phi2));
    return out;
}

} // namespace

UnistochasticityVerdict check_exact_n3(const BistochasticMatrix& b) {
    if (b.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "check_exact_n3 needs a 3x3 matrix");
    const double margin = chain_links(b, 0, 1).closure_margin();
    UnistochasticityVerdict v;
    v.method = VerdictMethod::ExactN3;
    v.defect = margin;
    if (margin > kTriangleAtol) {
        v.status = VerdictStatus::NotUnistochastic;
        return v;
    }
    v.status = VerdictStatus::Unistochastic;
    v.witness = reconstruct_impl(b, nullptr).front();
    return v;
}

std::vector<DephasedUnitary> reconstruct_n3(const BistochasticMatrix& b) {
    if (b.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "reconstruct_n3 needs a 3x3 matrix");
    return reconstruct_impl(b, nullptr);
}

bool is_orthostochastic_n3(const BistochasticMatrix& b, double atol) {
    if (b.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "orthostochasticity test needs 3x3");
    return chain_links(b, 0, 1).degenerate(atol);
}

// ---------------------------------------------------------------------------
// Numerical check

namespace {

// f(phi) = sum_{j<k} |<c_j, c_k>|^2 for U_ij = r_ij e^{i phi_ij} with row 0
// and column 0 phases pinned to zero. Gradient w.r.t. the free block:
// df/dphi_ab = 2 Im((U G)_ab conj(U_ab)) with G the off-diagonal Gram part.
struct PhaseObjective {
    Matrix r; // sqrt(B)
    int n;

    CMatrix assemble(const Eigen::VectorXd& phi) const {
        CMatrix u(n, n);
        for (int i = 0; i < n; ++i) u(i, 0) = r(i, 0);
        for (int j = 1; j < n; ++j) u(0, j) = r(0, j);
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                u(i, j) = std::polar(r(i, j), phi((i - 1) * (n - 1) + (j - 1)));
        return u;
    }

    double operator()(const Eigen::VectorXd& phi, Eigen::VectorXd& grad) const {
        const CMatrix u = assemble(phi);
        CMatrix gram = u.adjoint() * u;
        gram.diagonal().setZero();
        const double f = 0.5 * gram.squaredNorm();
        const CMatrix m = u * gram;
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                grad((i - 1) * (n - 1) + (j - 1)) = 2.0 * std::imag(m(i, j) * std::conj(u(i, j)));
        return f;
    }
};

} // namespace

UnistochasticityVerdict check_numerical(const BistochasticMatrix& b, const NumericalOptions& opt) {
    if (opt.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be positive");
    if (opt.tol <= 0.0) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    const int n = b.dim();
    const int dof = (n - 1) * (n - 1);

    PhaseObjective objective{b.entries().cwiseSqrt(), n};
    LbfgsOptions lopt;
    lopt.max_iterations = opt.max_iterations;
    lopt.f_target = opt.tol * 0.01; // keep polishing a bit past the acceptance bar

    double best_f = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_phi;

    for (int restart = 0; restart < opt.restarts; ++restart) {
        Eigen::VectorXd phi0(dof);
        if (restart == 0 && opt.initial_phases) {
            if (opt.initial_phases->size() != dof)
                throw Error(ErrorCode::DimensionMismatch, "initial_phases must have (n-1)^2 entries");
            phi0 = *opt.initial_phases;
        } else {
            Rng rng = Rng::substream(opt.seed, static_cast<std::uint64_t>(restart));
            for (int i = 0; i < dof; ++i) phi0(i) = rng.uniform(0.0, 2.0 * M_PI);
        }
        const LbfgsResult run = lbfgs_minimize(objective, phi0, lopt);
        if (run.f < best_f) {
            best_f = run.f;
            best_phi = run.x;
        }
        if (run.f < opt.tol) break; // smallest successful restart wins
    }

    UnistochasticityVerdict v;
    v.method = VerdictMethod::Numerical;
    v.defect = best_f;
    if (best_f < opt.tol) {
        v.status = VerdictStatus::Unistochastic;
        v.witness = DephasedUnitary(UnitaryMatrix::adopt(objective.assemble(best_phi)),
                                    std::max(kDefaultAtol, 4.0 * std::sqrt(best_f)));
    } else {
        // Failure to find phases proves nothing, so never NotUnistochastic.
        v.status = VerdictStatus::Undecided;
    }
    return v;
}

UnistochasticityVerdict check_numerical(const BistochasticMatrix& b, int restarts,
                                        std::uint64_t seed, double tol) {
    NumericalOptions opt;
    opt.restarts = restarts;
    opt.seed = seed;
    opt.tol = tol;
    return check_numerical(b, opt);
}

// ---------------------------------------------------------------------------
// Geometric probes

bool star_ray_probe(const BistochasticMatrix& b, int steps) {
    if (b.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "star probe needs a 3x3 matrix");
    if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be positive");
    if (check_exact_n3(b).status != VerdictStatus::Unistochastic)
        throw Error(ErrorCode::NotUnistochasticInput, "ray endpoint is not unistochastic");
    const Matrix w = van_der_waerden(3).entries();
    for (int k = 1; k < steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        const BistochasticMatrix blend((1.0 - t) * w + t * b.entries());
        if (check_exact_n3(blend).status != VerdictStatus::Unistochastic) return false;
    }
    return true;
}

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

double prime_ball_probe(int n, double radius, int trials, std::uint64_t seed,
                        const NumericalOptions& options) {
    if (!is_prime(n)) throw Error(ErrorCode::Unsupported, "dimension must be prime");
    if (radius <= 0.0) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");

    Rng rng = Rng::substream(seed, 0xba11u);
    const Matrix w = van_der_waerden(n).entries();
    const long max_attempts = 10000L + 100L * trials;
    long attempts = 0;
    int passed = 0;

    for (int t = 0; t < trials; ++t) {
        Matrix b(n, n);
        for (;;) {
            if (++attempts > max_attempts)
                throw Error(ErrorCode::RadiusTooLarge,
                            "no perturbation of this radius stays inside the polytope");
            // Random unit direction in the zero-row/column-sum tangent space.
            Matrix d(n, n);
            for (int i = 0; i < n - 1; ++i)
                for (int j = 0; j < n - 1; ++j) d(i, j) = rng.normal();
            for (int i = 0; i < n - 1; ++i) d(i, n - 1) = -d.row(i).head(n - 1).sum();
            for (int j = 0; j < n; ++j) d(n - 1, j) = -d.col(j).head(n - 1).sum();
            const double norm = d.norm();
            if (norm < 1e-14) continue;
            b = w + (radius / norm) * d;
            if (b.minCoeff() >= 0.0) break;
        }
        const BistochasticMatrix pert(b);
        bool ok;
        if (n == 2)
            ok = true;
        else if (n == 3)
            ok = check_exact_n3(pert).status == VerdictStatus::Unistochastic;
        else {
            NumericalOptions opt = options;
            opt.seed = Rng::substream(seed, 0x117e5u + static_cast<std::uint64_t>(t)).next_u64();
            ok = check_numerical(pert, opt).status == VerdictStatus::Unistochastic;
        }
        if (ok) ++passed;
    }
    return static_cast<double>(passed) / trials;
}

// ---------------------------------------------------------------------------
// Haar sampling

UnitaryMatrix haar_random_unitary(int n, Rng& rng) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase correction: multiplying each column by the phase of the matching
    // diagonal of R makes the factorization unique and the ensemble Haar.
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return UnitaryMatrix(q, 1e-12);
}

UnitaryMatrix haar_random_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(n, rng);
}

} // namespace unistoch
