"""Spectral extremal graph theory toolkit: adjacency spectra, triangle and
odd-cycle theorem checkers, majorization tools and exhaustive small-graph scans."""
from .checks import (
    CHECK_IDS,
    CheckVerdict,
    Status,
    Tolerances,
    check_aes_lemma,
    check_bn_conjecture,
    check_classical,
    check_efgw,
    check_erdos_edge_bound,
    check_hoffman_smith,
    check_nikiforov_sq,
    check_nosal,
    check_prop_balanced,
    check_prop_monotone,
    check_spectral_erdos_order,
    check_spectral_erdos_size,
    check_triangle_free_sum,
    check_zls,
    classical_bounds,
    resolve_check,
)
from .families import ExtremalFamily, blowup_family, recognize_extremal
from .graph import Graph
from .graph6 import Graph6Error, parse_graph6, to_graph6
from .majorization import (
    decompose_substochastic,
    transfer_matrix,
    verify_norm_monotonicity,
    weak_majorization,
)
from .scan import ScanReport, ScanSpec, enumerate_labeled, ingest_graph6_stream, run_scan
from .spectra import (
    Spectrum,
    char_poly_f,
    eigenvalues_sym,
    lambda1_subdivided_bipartite,
    spectrum_of,
    triangle_count_trace,
)

__version__ = "0.1.0"
