"""High-precision zeta values, exact Bernoulli numbers and identity checks."""

from .bernoulli import (
    BernoulliTable,
    bernoulli_euler,
    bernoulli_milgram,
    eq5_residual,
    milgram_coefficients,
    zeta_even_closed,
    zeta_neg_odd_exact,
)
from .errors import (
    DomainError,
    NearIntegerError,
    NonConvergence,
    PoleError,
    PrecisionUnreachable,
    ZetaForgeError,
)
from .tyagiholm import (
    EvalStrategy,
    SeriesResult,
    baseline_g,
    log2_identity_residual,
    reordered_identity_residual,
    tyagi_holm_general,
    zeta_even_series,
    zeta_odd_series,
)
from .zetacore import zeta_em, zeta_prime_fd, zeta_prime_neg_even, zeta_reflect

__version__ = "0.1.0"
