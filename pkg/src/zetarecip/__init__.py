"""Numerical checks of reciprocal-zeta Fourier identities and Moebius double series."""

from .arith import MoebiusTable, build_moebius, m2, m2_array, mertens, required_limit
from .asymptotics import (
    EnvelopeFit,
    ScanTable,
    envelope_fit,
    h2_exponent_scan,
    hardy_littlewood_scan,
    mertens_growth_scan,
    pnt_scan,
    weak_mertens_scan,
)
from .errors import (
    AccuracyError,
    DegenerateError,
    DivergenceError,
    DomainError,
    PoleError,
    PrecisionError,
    ZerosFileError,
    ZerosValidationError,
    ZetaRecipError,
)
from .identities import (
    check_corollary_gaussian,
    check_fourier_cosh,
    check_mellin_h,
    check_parseval,
    check_perron_mertens,
    check_pnt_integral,
    mertens_selfconvolution,
)
from .quad import QuadResult, gauss_cosh_selftest, integrate_decaying, integrate_oscillatory
from .report import IdentityReport
from .series import (
    H2Params,
    SeriesValue,
    h2,
    h2_iterated,
    h_theta,
    hardy_littlewood,
    pnt_partial_sums,
    riesz_variant,
    zero_sum_h2,
)
from .zetafn import (
    DEFAULT_EVALUATOR,
    ZEROS_ENV_VAR,
    ZeroList,
    ZetaEvaluator,
    gamma_product,
    inv_abs_zeta_sq_one_line,
    load_zeros,
    zeta,
    zeta_prime,
)

__version__ = "0.1.0"
