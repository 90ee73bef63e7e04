"""Exact height computations in polynomial rings and executable checks of
generalized principal ideal theorems."""

from .checks import (
    BoundReport,
    PrimeWitness,
    check_bruns,
    check_gpit,
    check_huneke_rossi,
    check_kwiecinski,
    check_kwiecinski_refined,
    check_lemma_1_1,
    check_macaulay_ee,
    check_mu_inequality,
    check_row_ideal_equidim,
    check_serre_subadditivity,
)
from .dimension import DimensionResult, krull_dim, matrix_rank, mu_at_prime
from .groebner import Limits, groebner, module_groebner, module_reduce, reduce, resource_limits
from .ideals import Ideal, eliminate, intersect, kernel, membership, radical_member, saturate
from .matrix import PolyMatrix, minors
from .modules import (
    EquidimCertificate,
    SymPresentation,
    dual_presentation,
    equidim_certificate,
    fitting_ideal,
    order_ideal,
    row_ideal,
    sym_presentation,
)
from .poly import CoefficientField, MonomialOrder, PolyRing, Polynomial, extend_ring, parse_poly
from .sweep import SweepConfig, sweep

__version__ = "0.1.0"
