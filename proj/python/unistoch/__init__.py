"""Unistochasticity toolkit.

Decision procedures for unistochasticity of bistochastic matrices (exact for
n <= 3, numerical phase optimization above), witness reconstruction, Birkhoff
polytope combinatorics and uniform sampling, complex Hadamard matrix
constructions and maximally entangled bases.
"""

from unistoch._core import (  # noqa: F401
    BasisReport,
    BirkhoffDecomposition,
    BirkhoffTerm,
    BistochasticMatrix,
    BiunimodularSequence,
    ChainLinks,
    CornerCensus,
    DephasedUnitary,
    EntangledBasis,
    LatinSquare,
    NumericalOptions,
    PermutationMatrix,
    TriangleAreas,
    UniformSampler,
    UnistochError,
    UnistochasticityVerdict,
    UnitaryMatrix,
    VerdictMethod,
    VerdictStatus,
    build_basis,
    birkhoff_decompose,
    chain_links,
    check_exact_n2,
    check_exact_n3,
    check_numerical,
    circulant_hadamard,
    corner_census,
    cyclic_latin,
    dephase,
    dft,
    equivalent_small,
    fourier,
    gauss_sequence,
    haar_random_unitary,
    hadamard_family_n4,
    is_complex_hadamard,
    is_extremal_edge,
    is_orthostochastic_n3,
    prime_ball_probe,
    reconstruct_n3,
    sample_uniform,
    squared_moduli,
    star_ray_probe,
    sylvester,
    unitarity_triangle_areas,
    validate_bistochastic,
    van_der_waerden,
    verify_basis,
)

__version__ = "0.1.0"
