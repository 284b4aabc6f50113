#include "unistoch/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unistoch {

namespace {

constexpr double kSupportTol = 1e-12;

} // namespace

// ---------------------------------------------------------------------------
// PermutationMatrix

PermutationMatrix::PermutationMatrix(std::vector<int> perm) : perm_(std::move(perm)) {
    const int n = static_cast<int>(perm_.size());
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "empty permutation");
    std::vector<bool> seen(n, false);
    for (int v : perm_) {
        if (v < 0 || v >= n || seen[v])
            throw Error(ErrorCode::InvalidArgument, "permutation is not a bijection on 0..n-1");
        seen[v] = true;
    }
}

PermutationMatrix PermutationMatrix::identity(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return PermutationMatrix(std::move(p));
}

Matrix PermutationMatrix::to_matrix() const {
    const int n = dim();
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, perm_[i]) = 1.0;
    return m;
}

BistochasticMatrix PermutationMatrix::to_bistochastic() const {
    return BistochasticMatrix(to_matrix());
}

PermutationMatrix PermutationMatrix::inverse() const {
    std::vector<int> inv(perm_.size());
    for (int i = 0; i < dim(); ++i) inv[perm_[i]] = i;
    return PermutationMatrix(std::move(inv));
}

PermutationMatrix PermutationMatrix::compose(const PermutationMatrix& other) const {
    if (dim() != other.dim())
        throw Error(ErrorCode::DimensionMismatch, "composing permutations of different sizes");
    std::vector<int> out(perm_.size());
    for (int i = 0; i < dim(); ++i) out[i] = perm_[other(i)];
    return PermutationMatrix(std::move(out));
}

int PermutationMatrix::nontrivial_cycle_count() const {
    const int n = dim();
    std::vector<bool> seen(n, false);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = perm_[j]) {
            seen[j] = true;
            ++len;
        }
        if (len >= 2) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// van der Waerden matrix and decomposition

BistochasticMatrix van_der_waerden(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
    return BistochasticMatrix(Matrix::Constant(n, n, 1.0 / n));
}

namespace {

// Kuhn's augmenting-path matching on an n x n boolean adjacency, restricted
// to columns not yet frozen. match_col[c] = row matched to column c, or -1.
bool try_augment(const std::vector<std::vector<bool>>& adj, const std::vector<bool>& col_frozen,
                 int row, std::vector<int>& match_col, std::vector<bool>& visited) {
    const int n = static_cast<int>(adj.size());
    for (int c = 0; c < n; ++c) {
        if (!adj[row][c] || col_frozen[c] || visited[c]) continue;
        visited[c] = true;
        if (match_col[c] < 0 ||
            try_augment(adj, col_frozen, match_col[c], match_col, visited)) {
            match_col[c] = row;
            return true;
        }
    }
    return false;
}

// True iff rows first_row..n-1 can all be matched into the unfrozen columns.
bool can_complete(const std::vector<std::vector<bool>>& adj, int first_row,
                  const std::vector<bool>& col_frozen) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> match_col(n, -1);
    for (int r = first_row; r < n; ++r) {
        std::vector<bool> visited(n, false);
        if (!try_augment(adj, col_frozen, r, match_col, visited)) return false;
    }
    return true;
}

// Lexicographically smallest perfect matching on the support: fix rows in
// order, trying columns in increasing order and keeping a choice only if the
// rest of the graph can still be completed.
bool lex_min_perfect_matching(const Matrix& m, double tol, std::vector<int>& out) {
    const int n = static_cast<int>(m.rows());
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) adj[i][j] = m(i, j) > tol;

    out.assign(n, -1);
    std::vector<bool> col_frozen(n, false);
    if (!can_complete(adj, 0, col_frozen)) return false;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (!adj[r][c] || col_frozen[c]) continue;
            col_frozen[c] = true;
            if (can_complete(adj, r + 1, col_frozen)) {
                out[r] = c;
                break;
            }
            col_frozen[c] = false;
        }
        if (out[r] < 0) return false;
    }
    return true;
}

} // namespace

// Caratheodory step: while more terms than (n-1)^2 + 1, find an affine
// dependency among the permutation matrices and shift weight along it until
// one term drops out, keeping everything nonnegative.
void detail::reduce_decomposition(std::vector<BirkhoffTerm>& terms, int n) {
    const std::size_t bound = static_cast<std::size_t>((n - 1) * (n - 1) + 1);
    while (terms.size() > bound) {
        const int k = static_cast<int>(terms.size());
        Eigen::MatrixXd a(n * n + 1, k);
        for (int t = 0; t < k; ++t) {
            const Matrix p = terms[t].perm.to_matrix();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i * n + j, t) = p(i, j);
            a(n * n, t) = 1.0;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        const Eigen::MatrixXd kernel = lu.kernel();
        if (kernel.cols() == 0 || kernel.cwiseAbs().maxCoeff() < 1e-12) break;
        Eigen::VectorXd mu = kernel.col(0);
        if (mu.maxCoeff() <= 0.0) mu = -mu;
        // Largest theta with w - theta*mu >= 0.
        double theta = std::numeric_limits<double>::infinity();
        for (int t = 0; t < k; ++t)
            if (mu(t) > 1e-14) theta = std::min(theta, terms[t].weight / mu(t));
        std::vector<BirkhoffTerm> kept;
        kept.reserve(terms.size() - 1);
        for (int t = 0; t < k; ++t) {
            const double w = terms[t].weight - theta * mu(t);
            if (w > 1e-14) kept.push_back({w, terms[t].perm});
        }
        if (kept.size() >= terms.size()) break; // no progress; keep what we have
        terms = std::move(kept);
    }
}

Matrix BirkhoffDecomposition::reconstruct(int n) const {
    Matrix m = Matrix::Zero(n, n);
    for (const auto& t : terms) m += t.weight * t.perm.to_matrix();
    return m;
}

double BirkhoffDecomposition::weight_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.weight;
    return s;
}

BirkhoffDecomposition birkhoff_decompose(const BistochasticMatrix& b) {
    const int n = b.dim();
    Matrix rest = b.entries();
    BirkhoffDecomposition out;

    while (rest.maxCoeff() > kSupportTol) {
        std::vector<int> match;
        if (!lex_min_perfect_matching(rest, kSupportTol, match) &&
            !lex_min_perfect_matching(rest, 0.0, match))
            throw Error(ErrorCode::MatchingFailure,
                        "support admits no perfect matching; input exceeds tolerance");
        double w = 1.0;
        for (int i = 0; i < n; ++i) w = std::min(w, rest(i, match[i]));
        if (w <= 0.0)
            throw Error(ErrorCode::MatchingFailure, "nonpositive matching weight");
        for (int i = 0; i < n; ++i) rest(i, match[i]) -= w;
        out.terms.push_back({w, PermutationMatrix(match)});
    }

    detail::reduce_decomposition(out.terms, n);
    return out;
}

// ---------------------------------------------------------------------------
// Edges and corner census

bool is_extremal_edge(const PermutationMatrix& p, const PermutationMatrix& q) {
    if (p.dim() != q.dim())
        throw Error(ErrorCode::DimensionMismatch, "permutations of different sizes");
    if (p == q) throw Error(ErrorCode::EqualInputs, "extremal edge needs two distinct corners");
    return p.compose(q.inverse()).nontrivial_cycle_count() == 1;
}

namespace {

std::vector<PermutationMatrix> all_corners(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<PermutationMatrix> out;
    do {
        out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

bool is_even(const PermutationMatrix& p) {
    // parity from cycle structure: even iff n - #cycles is even
    const int n = p.dim();
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = p(j)) seen[j] = true;
    }
    return (n - cycles) % 2 == 0;
}

double corner_distance(const PermutationMatrix& p, const PermutationMatrix& q) {
    return (p.to_matrix() - q.to_matrix()).norm();
}

} // namespace

CornerCensus corner_census(int n) {
    if (n != 3 && n != 4)
        throw Error(ErrorCode::Unsupported, "corner census is implemented for n = 3 and n = 4");

    constexpr double kCensusTol = 1e-9;
    CornerCensus census;
    census.n = n;
    census.dimension = (n - 1) * (n - 1);
    census.corners = all_corners(n);
    census.corner_count = static_cast<int>(census.corners.size());

    // Affine rank of the corner set around the centroid.
    const Matrix center = van_der_waerden(n).entries();
    Eigen::MatrixXd diffs(census.corner_count, n * n);
    for (int t = 0; t < census.corner_count; ++t) {
        const Matrix d = census.corners[t].to_matrix() - center;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) diffs(t, i * n + j) = d(i, j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
    census.affine_rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9) ++census.affine_rank;

    census.extremal_pair_count = 0;
    for (int a = 0; a < census.corner_count; ++a)
        for (int b = a + 1; b < census.corner_count; ++b)
            if (is_extremal_edge(census.corners[a], census.corners[b])) ++census.extremal_pair_count;
    census.all_pairs_extremal =
        census.extremal_pair_count == census.corner_count * (census.corner_count - 1) / 2;

    if (n == 3) {
        // Even and odd permutations form the two triangles.
        std::vector<int> even, odd;
        for (int t = 0; t < census.corner_count; ++t)
            (is_even(census.corners[t]) ? even : odd).push_back(t);
        census.groups = {even, odd};
    } else {
        // Tetrahedron mates differ by a permutation with two nontrivial
        // cycles (a double transposition); those are exactly the non-extremal
        // partners, and the classes partition the 24 corners.
        std::vector<int> assigned(census.corner_count, -1);
        for (int t = 0; t < census.corner_count; ++t) {
            if (assigned[t] >= 0) continue;
            std::vector<int> group{t};
            for (int s = t + 1; s < census.corner_count; ++s) {
                if (assigned[s] >= 0) continue;
                if (!is_extremal_edge(census.corners[t], census.corners[s])) group.push_back(s);
            }
            for (int idx : group) assigned[idx] = static_cast<int>(census.groups.size());
            census.groups.push_back(group);
        }
    }

    // Metric regularity within groups.
    double ref = -1.0;
    census.max_edge_spread = 0.0;
    for (const auto& group : census.groups) {
        for (std::size_t a = 0; a < group.size(); ++a)
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                const double d = corner_distance(census.corners[group[a]], census.corners[group[b]]);
                if (ref < 0.0) ref = d;
                census.max_edge_spread = std::max(census.max_edge_spread, std::abs(d - ref));
            }
    }
    census.group_edge_length = ref;
    if (census.max_edge_spread > kCensusTol)
        throw Error(ErrorCode::DegenerateInput, "corner groups are not metrically regular");

    if (n == 3) {
        // Orthogonality of the two triangle planes, each spanned around the
        // shared centroid (which is the van der Waerden matrix).
        census.max_plane_inner_product = 0.0;
        std::vector<Eigen::VectorXd> basis[2];
        for (int g = 0; g < 2; ++g)
            for (int idx : census.groups[g]) {
                const Matrix d = census.corners[idx].to_matrix() - center;
                Eigen::VectorXd v(n * n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) v(i * n + j) = d(i, j);
                basis[g].push_back(v);
            }
        for (const auto& u : basis[0])
            for (const auto& v : basis[1])
                census.max_plane_inner_product =
                    std::max(census.max_plane_inner_product, std::abs(u.dot(v)));
        if (census.max_plane_inner_product > kCensusTol)
            throw Error(ErrorCode::DegenerateInput, "triangle planes are not orthogonal");
    }

    return census;
}

// ---------------------------------------------------------------------------
// Uniform sampling

UniformSampler::UniformSampler(int n, std::uint64_t seed, std::uint64_t substream)
    : n_(n), rng_(Rng::substream(seed, substream)), thin_(10 * (n - 1) * (n - 1)) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
    if (n >= 4) {
        state_ = Matrix::Constant(n, n, 1.0 / n);
        const int burn_in = 1000 * (n - 1) * (n - 1);
        for (int i = 0; i < burn_in; ++i) hit_and_run_step();
    }
}

Matrix UniformSampler::rejection_sample() {
    // Upper-left (n-1)x(n-1) block drawn uniformly, rows/columns completed by
    // the sum constraints; for n = 3 this is the exact sampler. n = 2 reduces
    // to a single uniform entry and never rejects.
    const int n = n_;
    Matrix m(n, n);
    for (;;) {
        ++draws_;
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) m(i, j) = rng_.uniform01();
        bool ok = true;
        for (int i = 0; i < n - 1 && ok; ++i) {
            double s = m.row(i).head(n - 1).sum();
            m(i, n - 1) = 1.0 - s;
            ok = m(i, n - 1) >= 0.0;
        }
        for (int j = 0; j < n - 1 && ok; ++j) {
            double s = m.col(j).head(n - 1).sum();
            m(n - 1, j) = 1.0 - s;
            ok = m(n - 1, j) >= 0.0;
        }
        if (ok) {
            const double corner = m.block(0, 0, n - 1, n - 1).sum() - (n - 2);
            m(n - 1, n - 1) = corner;
            ok = corner >= 0.0;
        }
        if (ok) {
            ++accepted_;
            return m;
        }
    }
}

void UniformSampler::hit_and_run_step() {
    const int n = n_;
    // Random direction in the (n-1)^2-dimensional tangent space: free block
    // of gaussians, remaining row/column fixed by the zero-sum constraints.
    Matrix d(n, n);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) d(i, j) = rng_.normal();
    for (int i = 0; i < n - 1; ++i) d(i, n - 1) = -d.row(i).head(n - 1).sum();
    for (int j = 0; j < n; ++j) d(n - 1, j) = -d.col(j).head(n - 1).sum();
    const double norm = d.norm();
    if (norm < 1e-14) return;
    d /= norm;

    double tlo = -std::numeric_limits<double>::infinity();
    double thi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double dv = d(i, j);
            if (std::abs(dv) < 1e-14) continue;
            const double bound = -state_(i, j) / dv;
            if (dv > 0.0)
                tlo = std::max(tlo, bound);
            else
                thi = std::min(thi, bound);
        }
    if (!(tlo <= thi)) return;
    state_ += rng_.uniform(tlo, thi) * d;
}

Matrix UniformSampler::projected_state() const {
    // Exact affine projection back onto unit row/column sums; drift from the
    // chain arithmetic is at the rounding level but accumulates over steps.
    const int n = n_;
    const Eigen::VectorXd r = state_.rowwise().sum().array() - 1.0;
    const Eigen::VectorXd c = state_.colwise().sum().transpose().array() - 1.0;
    const double s = r.sum();
    Matrix m = state_;
    m.colwise() -= r / n;
    m.rowwise() -= c.transpose() / n;
    m.array() += s / (n * n);
    return m.cwiseMax(0.0);
}

BistochasticMatrix UniformSampler::next() {
    if (n_ < 4) return BistochasticMatrix(rejection_sample(), 1e-12);
    for (int i = 0; i < thin_; ++i) hit_and_run_step();
    return BistochasticMatrix(projected_state(), 1e-12);
}

std::vector<BistochasticMatrix> sample_uniform(int n, int count, std::uint64_t seed) {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
    UniformSampler sampler(n, seed);
    std::vector<BistochasticMatrix> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(sampler.next());
    return out;
}

} // namespace unistoch
