"""Exact analysis of Boolean and vectorial Boolean functions over F_2^n (n <= 16).

Truth tables are indexed with x1 as the least significant bit of the index.
"""

from .boolfun import (
    Anf, BoolFunc, LinearSpace, SpectralClass, WalshSpectrum,
    anf, autocorrelation, classify, constant, degree, derivative, from_anf, from_function,
    from_hex, from_truth_table, gamma_set, is_balanced, is_bent, linear_space, nonlinearity,
    parse_anf, quad_equiv, sigma_one, to_hex, truth_table, variable, walsh, weight,
)
from .constructions import (
    Affinity, ConvProduct, SplitSum, bent_mm, catalog, catalog_names, construction_1,
    construction_2, conv_product, cubic_conv_balanced_test, derivative_decomposition, gold,
    split_sum, trivial_linear_space_certify,
)
from .errors import (
    BfaError, DomainError, FieldError, InvariantViolation, OracleScaleError, ParseError, ShapeError,
)
from .gf2n import FieldElement, FieldSpec, UnivariatePoly, compile_poly, field, gcd_pow2, parse_field, parse_poly
from .vbf import (
    CensusReport, Ddt, PowerAnalysis, VectorialFunc,
    apn_nonlinearity_check, apn_permutation_diagnostics, apn_sum_check, census, component,
    ddt, differential_uniformity, is_apn, is_pure_quadratic, power_analyze, power_scan,
    quadratic_sum_check, trace_component, trivial_component_exists,
)

__version__ = "0.1.0"
