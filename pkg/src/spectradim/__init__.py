"""Spectral dimension estimation for undirected graphs.

The package estimates the intrinsic complexity of a graph from the growth
rate of its normalized-Laplacian eigenvalues, validated against a
heat-kernel return-probability oracle and analytic lattice fixtures.
"""

__version__ = "0.1.0"

from .dimension import (
    DEFAULT_M,
    DEFAULT_S,
    INFINITE,
    DimensionEstimate,
    InterpolatedSpectrum,
    ReturnProbabilityCurve,
    estimate_dimension,
    estimate_graph_dimension,
    interpolate_spectrum,
    return_probability_curve,
)
from .errors import (
    ContaminationError,
    InsufficientSpectrumError,
    NonMonotoneFitError,
    ParseError,
    SolverError,
    SpectradimError,
    UndefinedCorrelationError,
    UnsupportedFormatError,
)
from .graph import (
    ComponentDecomposition,
    Graph,
    connected_components,
    generate_complete,
    generate_cycle,
    generate_lattice,
    largest_connected_component,
    parse_edge_list,
    parse_matrix_market,
    permute_vertices,
)
from .laplacian import LaplacianOperator, degrees, dense_matrix
from .spectrum import (
    Spectrum,
    SpectrumConfig,
    full_spectrum_dense,
    partial_spectrum_iterative,
    spectrum,
)
from .stats import (
    PairedSeries,
    correlation_report,
    load_paired_csv,
    mutual_information,
    spearman,
)
