#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unistoch/birkhoff.hpp"
#include "unistoch/entangle.hpp"
#include "unistoch/hadamard.hpp"
#include "unistoch/unicheck.hpp"

namespace py = pybind11;
using namespace unistoch;

namespace {

// Phases of the lower-right block of a dephased unitary, the coordinates the
// numerical check optimizes over; handy for seeding initial_phases.
Eigen::VectorXd block_phases(const DephasedUnitary& d) {
    const int n = d.dim();
    const Matrix phi = d.phases();
    Eigen::VectorXd out((n - 1) * (n - 1));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) out((i - 1) * (n - 1) + (j - 1)) = phi(i, j);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unistochasticity toolkit: decision procedures, witness "
              "reconstruction, Birkhoff polytope sampling, complex Hadamard "
              "matrices and maximally entangled bases.";

    static py::exception<Error> exc(m, "UnistochError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    py::enum_<VerdictStatus>(m, "VerdictStatus")
        .value("Unistochastic", VerdictStatus::Unistochastic)
        .value("NotUnistochastic", VerdictStatus::NotUnistochastic)
        .value("Undecided", VerdictStatus::Undecided);

    py::enum_<VerdictMethod>(m, "VerdictMethod")
        .value("ExactN2", VerdictMethod::ExactN2)
        .value("ExactN3", VerdictMethod::ExactN3)
        .value("Numerical", VerdictMethod::Numerical);

    py::class_<BistochasticMatrix>(m, "BistochasticMatrix")
        .def(py::init<const Matrix&, double>(), py::arg("entries"), py::arg("atol") = kDefaultAtol)
        .def_property_readonly("n", &BistochasticMatrix::dim)
        .def_property_readonly("entries", &BistochasticMatrix::entries)
        .def("__repr__", [](const BistochasticMatrix& b) {
            return "BistochasticMatrix(n=" + std::to_string(b.dim()) + ")";
        });

    py::class_<UnitaryMatrix>(m, "UnitaryMatrix")
        .def(py::init<const CMatrix&, double>(), py::arg("entries"), py::arg("atol") = kDefaultAtol)
        .def_property_readonly("n", &UnitaryMatrix::dim)
        .def_property_readonly("entries", &UnitaryMatrix::entries)
        .def_property_readonly("unitarity_defect", &UnitaryMatrix::unitarity_defect)
        .def("__repr__", [](const UnitaryMatrix& u) {
            return "UnitaryMatrix(n=" + std::to_string(u.dim()) + ")";
        });

    py::class_<DephasedUnitary>(m, "DephasedUnitary")
        .def_property_readonly("inner", &DephasedUnitary::inner)
        .def_property_readonly("moduli", &DephasedUnitary::moduli)
        .def_property_readonly("phases", &DephasedUnitary::phases)
        .def_property_readonly("block_phases", &block_phases);

    py::class_<TriangleAreas>(m, "TriangleAreas")
        .def_readonly("areas", &TriangleAreas::areas)
        .def_property_readonly("spread", &TriangleAreas::spread);

    py::class_<ChainLinks>(m, "ChainLinks")
        .def_readonly("links", &ChainLinks::links)
        .def_property_readonly("closure_margin", &ChainLinks::closure_margin)
        .def("closable", &ChainLinks::closable, py::arg("atol") = kTriangleAtol)
        .def("degenerate", &ChainLinks::degenerate, py::arg("atol") = kOrthoAtol);

    py::class_<UnistochasticityVerdict>(m, "UnistochasticityVerdict")
        .def_readonly("status", &UnistochasticityVerdict::status)
        .def_readonly("witness", &UnistochasticityVerdict::witness)
        .def_readonly("defect", &UnistochasticityVerdict::defect)
        .def_readonly("method", &UnistochasticityVerdict::method)
        .def("__repr__", [](const UnistochasticityVerdict& v) {
            return std::string("UnistochasticityVerdict(") + to_string(v.status) +
                   ", defect=" + std::to_string(v.defect) + ")";
        });

    py::class_<PermutationMatrix>(m, "PermutationMatrix")
        .def(py::init<std::vector<int>>(), py::arg("perm"))
        .def_static("identity", &PermutationMatrix::identity)
        .def_property_readonly("n", &PermutationMatrix::dim)
        .def_property_readonly("perm", &PermutationMatrix::perm)
        .def("to_matrix", &PermutationMatrix::to_matrix)
        .def("inverse", &PermutationMatrix::inverse)
        .def("compose", &PermutationMatrix::compose)
        .def("nontrivial_cycle_count", &PermutationMatrix::nontrivial_cycle_count)
        .def(py::self == py::self);

    py::class_<BirkhoffTerm>(m, "BirkhoffTerm")
        .def_readonly("weight", &BirkhoffTerm::weight)
        .def_readonly("perm", &BirkhoffTerm::perm);

    py::class_<BirkhoffDecomposition>(m, "BirkhoffDecomposition")
        .def_readonly("terms", &BirkhoffDecomposition::terms)
        .def("reconstruct", &BirkhoffDecomposition::reconstruct)
        .def("weight_sum", &BirkhoffDecomposition::weight_sum);

    py::class_<CornerCensus>(m, "CornerCensus")
        .def_readonly("n", &CornerCensus::n)
        .def_readonly("corner_count", &CornerCensus::corner_count)
        .def_readonly("dimension", &CornerCensus::dimension)
        .def_readonly("affine_rank", &CornerCensus::affine_rank)
        .def_readonly("corners", &CornerCensus::corners)
        .def_readonly("groups", &CornerCensus::groups)
        .def_readonly("group_edge_length", &CornerCensus::group_edge_length)
        .def_readonly("max_edge_spread", &CornerCensus::max_edge_spread)
        .def_readonly("max_plane_inner_product", &CornerCensus::max_plane_inner_product)
        .def_readonly("extremal_pair_count", &CornerCensus::extremal_pair_count)
        .def_readonly("all_pairs_extremal", &CornerCensus::all_pairs_extremal);

    py::class_<UniformSampler>(m, "UniformSampler")
        .def(py::init<int, std::uint64_t, std::uint64_t>(), py::arg("n"), py::arg("seed"),
             py::arg("substream") = 0)
        .def("next", &UniformSampler::next)
        .def_property_readonly("draws", &UniformSampler::draws)
        .def_property_readonly("accepted", &UniformSampler::accepted);

    py::class_<NumericalOptions>(m, "NumericalOptions")
        .def(py::init<>())
        .def_readwrite("restarts", &NumericalOptions::restarts)
        .def_readwrite("seed", &NumericalOptions::seed)
        .def_readwrite("tol", &NumericalOptions::tol)
        .def_readwrite("max_iterations", &NumericalOptions::max_iterations)
        .def_readwrite("initial_phases", &NumericalOptions::initial_phases);

    py::class_<BiunimodularSequence>(m, "BiunimodularSequence")
        .def(py::init<std::vector<Complex>, double>(), py::arg("values"), py::arg("atol") = 1e-8)
        .def_property_readonly("n", &BiunimodularSequence::size)
        .def_property_readonly("values", &BiunimodularSequence::values);

    py::class_<LatinSquare>(m, "LatinSquare")
        .def(py::init<Eigen::MatrixXi>(), py::arg("cells"))
        .def_property_readonly("n", &LatinSquare::order)
        .def_property_readonly("cells", &LatinSquare::cells);

    py::class_<EntangledBasis>(m, "EntangledBasis")
        .def(py::init<int, std::vector<Eigen::VectorXcd>>(), py::arg("n"), py::arg("vectors"))
        .def_readonly("n", &EntangledBasis::n)
        .def_readonly("vectors", &EntangledBasis::vectors);

    py::class_<BasisReport>(m, "BasisReport")
        .def_readonly("max_gram_deviation", &BasisReport::max_gram_deviation)
        .def_readonly("max_reduced_deviation", &BasisReport::max_reduced_deviation)
        .def("ok", &BasisReport::ok, py::arg("atol") = kDefaultAtol);

    // matcore operations
    m.def("validate_bistochastic", &validate_bistochastic, py::arg("entries"),
          py::arg("atol") = kDefaultAtol);
    m.def("squared_moduli", &squared_moduli, py::arg("u"));
    m.def("dephase", &dephase, py::arg("u"));
    m.def("unitarity_triangle_areas", &unitarity_triangle_areas, py::arg("u"),
          py::arg("atol") = kDefaultAtol);

    // birkhoff operations
    m.def("van_der_waerden", &van_der_waerden, py::arg("n"));
    m.def("birkhoff_decompose", &birkhoff_decompose, py::arg("b"));
    m.def("is_extremal_edge", &is_extremal_edge, py::arg("p"), py::arg("q"));
    m.def("corner_census", &corner_census, py::arg("n"));
    m.def("sample_uniform", &sample_uniform, py::arg("n"), py::arg("count"), py::arg("seed"));

    // unicheck operations
    m.def("check_exact_n2", &check_exact_n2, py::arg("b"));
    m.def("chain_links", &chain_links, py::arg("b"), py::arg("col_j") = 0, py::arg("col_k") = 1);
    m.def("check_exact_n3", &check_exact_n3, py::arg("b"));
    m.def("reconstruct_n3", &reconstruct_n3, py::arg("b"));
    m.def("is_orthostochastic_n3", &is_orthostochastic_n3, py::arg("b"),
          py::arg("atol") = kOrthoAtol);
    m.def(
        "check_numerical",
        [](const BistochasticMatrix& b, const NumericalOptions& options) {
            return check_numerical(b, options);
        },
        py::arg("b"), py::arg("options"));
    m.def(
        "check_numerical",
        [](const BistochasticMatrix& b, int restarts, std::uint64_t seed, double tol) {
            return check_numerical(b, restarts, seed, tol);
        },
        py::arg("b"), py::arg("restarts") = 20, py::arg("seed") = 0, py::arg("tol") = 1e-14);
    m.def("star_ray_probe", &star_ray_probe, py::arg("b"), py::arg("steps"));
    m.def("prime_ball_probe", &prime_ball_probe, py::arg("n"), py::arg("radius"), py::arg("trials"),
          py::arg("seed"), py::arg("options") = NumericalOptions{});
    m.def(
        "haar_random_unitary",
        [](int n, std::uint64_t seed) { return haar_random_unitary(n, seed); }, py::arg("n"),
        py::arg("seed"));

    // hadamard operations
    m.def("fourier", &fourier, py::arg("n"));
    m.def("is_complex_hadamard", &is_complex_hadamard, py::arg("u"), py::arg("atol") = kDefaultAtol);
    m.def("hadamard_family_n4", &hadamard_family_n4, py::arg("phi"));
    m.def("sylvester", &sylvester, py::arg("k"));
    m.def("gauss_sequence", &gauss_sequence, py::arg("n"));
    m.def("circulant_hadamard", &circulant_hadamard, py::arg("seq"));
    m.def("equivalent_small", &equivalent_small, py::arg("u1"), py::arg("u2"));
    m.def("dft", &dft, py::arg("values"));

    // entangle operations
    m.def("cyclic_latin", &cyclic_latin, py::arg("n"));
    m.def("build_basis", &build_basis, py::arg("latin"), py::arg("hadamard"));
    m.def("verify_basis", &verify_basis, py::arg("basis"));
}
