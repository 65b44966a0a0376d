"""zml: a numerical laboratory for zeros of the Riemann zeta function,
discrete moments of zeta' at those zeros, and the conjectured moment
constants."""

from .zetafun import (
    DEFAULT_CONFIG,
    EvalConfig,
    hardy_z,
    hardy_z_deriv,
    rs_theta,
    zeta,
    zeta_deriv,
)
from .primes import (
    PrimeTable,
    prime_reciprocal_sum,
    sieve_primes,
    von_mangoldt,
    von_mangoldt_L,
)

__version__ = "0.1.0"
