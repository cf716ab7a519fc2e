"""Complexon shift operators for simplicial complexes.

Raised adjacency matrices, marginal complexons, their spectra, homomorphism
densities and seeded sampling of complexes from a complexon.
"""

from .complex import (
    HomDensity,
    SimplicialComplex,
    SizeGuardError,
    build_complex,
    dump_complex,
    hom_count,
    hom_density,
    load_complex,
    skeleton,
)
from .estimators import ComplexonShift
from .experiment import ExperimentConfig, emit_plot, run_convergence
from .kernels import (
    Complexon,
    Equipartition,
    MarginalKernel,
    PolynomialComplexon,
    PolynomialKernel,
    Quadrature,
    StepComplexon,
    StepKernel,
    constant_complexon,
    density_in_complexon,
    evaluate,
    example_complexon,
    induce_complexon,
    load_complexon,
    marginal,
    step_cut_norm,
)
from .linalg import ConvergenceError, Spectrum, sym_eig
from .polynomial import Polynomial
from .sampling import SampleConfig, empirical_simplex_rate, sample_complex
from .spectral import (
    PolynomialSignal,
    RaisedAdjacency,
    StepSignal,
    apply_cso,
    cso_spectrum,
    discretized_kernel_spectrum,
    polynomial_kernel_spectrum,
    raised_adjacency,
)

__version__ = "0.1.0"

__all__ = [
    "HomDensity",
    "SimplicialComplex",
    "SizeGuardError",
    "build_complex",
    "dump_complex",
    "hom_count",
    "hom_density",
    "load_complex",
    "skeleton",
    "ComplexonShift",
    "ExperimentConfig",
    "emit_plot",
    "run_convergence",
    "Complexon",
    "Equipartition",
    "MarginalKernel",
    "PolynomialComplexon",
    "PolynomialKernel",
    "Quadrature",
    "StepComplexon",
    "StepKernel",
    "constant_complexon",
    "density_in_complexon",
    "evaluate",
    "example_complexon",
    "induce_complexon",
    "load_complexon",
    "marginal",
    "step_cut_norm",
    "ConvergenceError",
    "Spectrum",
    "sym_eig",
    "Polynomial",
    "SampleConfig",
    "empirical_simplex_rate",
    "sample_complex",
    "PolynomialSignal",
    "RaisedAdjacency",
    "StepSignal",
    "apply_cso",
    "cso_spectrum",
    "discretized_kernel_spectrum",
    "polynomial_kernel_spectrum",
    "raised_adjacency",
]
