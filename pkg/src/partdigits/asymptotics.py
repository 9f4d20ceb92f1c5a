"""Certified asymptotic estimates of log p(n) and log PL(n).

Each estimate returns a midpoint and an error envelope, both as certified
intervals: the true value of log_b of the counting function is guaranteed
to lie within `envelope` of `midpoint` whenever n >= valid_from.

    log_b p(n)  ~ (pi*sqrt(24)/6) sqrt(n)/ln b - ln n/ln b + log_b(sqrt(3)/12),
                  envelope 4/(sqrt(n) ln b),              valid for n >= 4;
    log_b PL(n) ~ 3 (z3/4)^(1/3) n^(2/3)/ln b - (25/36) ln n/ln b + log_b B,
                  envelope 200/(n^(2/3) ln b),            valid for n >= 2829,

where z3 = zeta(3) and B = 2^(25/26) e^(zeta'(-1)) z3^(7/26) / sqrt(12 pi).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from .certified import (
    DEFAULT_PRECISION,
    as_interval,
    hull,
    inf,
    sup,
    working_precision,
)

MIN_CONSTANT_PRECISION = 128

P_VALID_FROM = 4
PL_VALID_FROM = 2829


def _zeta3_fraction_bracket(bits: int) -> tuple[Fraction, Fraction]:
    """Exact rational bracket of zeta(3) via the alternating series

        zeta(3) = (5/2) * sum_{k>=1} (-1)^(k-1) / (k^3 * C(2k, k)).

    Terms decay like 4^-k, so the error after truncation is bounded by the
    first omitted term (alternating, decreasing).
    """
    tol = Fraction(1, 2 ** (bits + 8))
    s = Fraction(0)
    k = 1
    binom = 2  # C(2, 1)
    while True:
        term = Fraction(1, k**3 * binom)
        s += term if k % 2 else -term
        nxt = Fraction(1, (k + 1) ** 3 * binom * (2 * k + 1) * (2 * k + 2) // (k + 1) ** 2)
        if nxt < tol:
            lo, hi = (s - nxt, s) if (k + 1) % 2 == 0 else (s, s + nxt)
            return Fraction(5, 2) * lo, Fraction(5, 2) * hi
        binom = binom * (2 * k + 1) * (2 * k + 2) // (k + 1) ** 2
        k += 1


@dataclass(eq=False)
class Constants:
    """Certified enclosures of the constants of the PL(n) asymptotic."""

    zeta3: object
    zeta_prime_minus_one: object
    pl_prefactor: object
    precision: int


_CONSTANTS_CACHE: dict[int, Constants] = {}


def eval_constants(precision: int = DEFAULT_PRECISION) -> Constants:
    """Enclosures of zeta(3), zeta'(-1), and the PL prefactor at >= 128 bits."""
    if precision < MIN_CONSTANT_PRECISION:
        raise ValueError(
            f"constants need at least {MIN_CONSTANT_PRECISION} bits, got {precision}"
        )
    cached = _CONSTANTS_CACHE.get(precision)
    if cached is not None:
        return cached
    with working_precision(precision + 16):
        lo, hi = _zeta3_fraction_bracket(precision + 16)
        zeta3 = hull(as_interval(lo), as_interval(hi))
        # zeta'(-1) = 1/12 - log(Glaisher), with Glaisher's constant certified
        # by the interval context.
        zp = iv.mpf(1) / 12 - iv.log(+iv.glaisher)
        b = (
            iv.mpf(2) ** (iv.mpf(25) / 26)
            * iv.exp(zp)
            * zeta3 ** (iv.mpf(7) / 26)
            / iv.sqrt(12 * iv.pi)
        )
        consts = Constants(
            zeta3=zeta3, zeta_prime_minus_one=zp, pl_prefactor=b, precision=precision
        )
    _CONSTANTS_CACHE[precision] = consts
    return consts


def hardy_ramanujan_mu(n: int, precision: int | None = None):
    """Enclosure of (pi/6) sqrt(24 n - 1), the exponent scale of p(n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    with working_precision(precision or DEFAULT_PRECISION):
        return iv.pi / 6 * iv.sqrt(iv.mpf(24 * n - 1))


@dataclass(eq=False)
class LogEstimate:
    """Certified statement |log_b(count(n)) - midpoint| <= envelope."""

    n: int
    base: int
    midpoint: object
    envelope: object
    valid_from: int

    def contains(self, log_value) -> bool:
        """Certified check that an enclosure of log_b(count(n)) fits the envelope.

        True means proven inside; False means not provable at this width
        (which on exact inputs at sane precision only happens when the
        envelope is genuinely violated).
        """
        diff = as_interval(log_value) - self.midpoint
        worst = max(abs(inf(diff)), abs(sup(diff)))
        return worst <= inf(self.envelope)


def log_p_estimate(n: int, base: int, precision: int | None = None) -> LogEstimate:
    """Midpoint and envelope for log_b p(n), valid for n >= 4."""
    if n < P_VALID_FROM:
        raise ValueError(f"estimate valid for n >= {P_VALID_FROM}, got {n}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    with working_precision(precision or DEFAULT_PRECISION):
        nn = iv.mpf(n)
        lb = iv.log(iv.mpf(base))
        root = iv.sqrt(nn)
        mid = (
            iv.pi * iv.sqrt(iv.mpf(24)) / 6 * root / lb
            - iv.log(nn) / lb
            + iv.log(iv.sqrt(iv.mpf(3)) / 12) / lb
        )
        env = iv.mpf(4) / (root * lb)
        return LogEstimate(
            n=n, base=base, midpoint=mid, envelope=env, valid_from=P_VALID_FROM
        )


def log_pl_estimate(
    n: int,
    base: int,
    precision: int | None = None,
    constants: Constants | None = None,
) -> LogEstimate:
    """Midpoint and envelope for log_b PL(n), valid for n >= 2829."""
    if n < PL_VALID_FROM:
        raise ValueError(f"estimate valid for n >= {PL_VALID_FROM}, got {n}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    prec = precision or DEFAULT_PRECISION
    if constants is None:
        constants = eval_constants(max(prec, MIN_CONSTANT_PRECISION))
    with working_precision(prec):
        nn = iv.mpf(n)
        lb = iv.log(iv.mpf(base))
        pow23 = nn ** (iv.mpf(2) / 3)
        mid = (
            3 * (constants.zeta3 / 4) ** (iv.mpf(1) / 3) * pow23 / lb
            - iv.mpf(25) / 36 * iv.log(nn) / lb
            + iv.log(constants.pl_prefactor) / lb
        )
        env = iv.mpf(200) / (pow23 * lb)
        return LogEstimate(
            n=n, base=base, midpoint=mid, envelope=env, valid_from=PL_VALID_FROM
        )
