"""Congruence machinery that bounds the prime exponent p.

Trace sets split by residue mod 4, newform bound products evaluated through
minimal polynomials, the divisibility product over admissible trace pairs,
and the two witness-prime searches (quadratic-residue conditions that a
hypothetical exponent would have to dodge).

The raw operations here do not track the ell = p corner case of the rational
newform congruences; callers that need it (none in the survey pipeline)
must treat the prime ell = p conservatively themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ellcurve import CurveAB
from .intmath import (
    is_perfect_square,
    is_prime,
    iter_primes,
    squarefree_check,
    squarefree_core,
)

__all__ = [
    "TraceSets",
    "NewformCoefficient",
    "WitnessSearch",
    "GOOD_BOTH",
    "MULTIPLICATIVE_ONLY",
    "admissible_traces",
    "newform_bound",
    "newform_bound_from_minpoly",
    "kraus_product",
    "congruence_divisor",
    "galois_witness",
    "chebotarev_witness",
]

GOOD_BOTH = "good_both"
MULTIPLICATIVE_ONLY = "multiplicative_only"

DEFAULT_WITNESS_BOUND = 10**6


@dataclass(frozen=True)
class TraceSets:
    """Admissible traces mod 4: set_a = ell+3, set_b = ell+1 residues (disjoint)."""

    ell: int
    set_a: tuple[int, ...]
    set_b: tuple[int, ...]


def admissible_traces(ell: int) -> TraceSets:
    """Integers a with |a| < 2*sqrt(ell) (strict) split by residue class mod 4."""
    if ell < 3 or not is_prime(ell):
        raise ValueError(f"odd prime required, got {ell}")
    h = math.isqrt(4 * ell)
    if h * h == 4 * ell:
        h -= 1
    set_a = tuple(a for a in range(-h, h + 1) if (a - ell - 3) % 4 == 0)
    set_b = tuple(b for b in range(-h, h + 1) if (b - ell - 1) % 4 == 0)
    return TraceSets(ell, set_a, set_b)


def _eval_poly(coeffs: tuple[int, ...], x: int) -> int:
    """Evaluate a polynomial given by ascending coefficients, exactly."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class NewformCoefficient:
    """The ell-th Fourier coefficient of a weight-2 newform, carried as the
    monic minimal polynomial of c_ell over Z (degree 1 means rational, with
    minpoly x - c_ell).

    Coefficients ascend: minpoly = (c0, c1, ..., 1).  Real roots must obey
    the Deligne bound |root| <= 2*sqrt(ell), checked numerically to 1e-9.
    """

    ell: int
    minpoly: tuple[int, ...]

    def __post_init__(self):
        if self.ell < 2 or not is_prime(self.ell):
            raise ValueError(f"prime required, got {self.ell}")
        if len(self.minpoly) < 2:
            raise ValueError("minimal polynomial must be nonconstant")
        if self.minpoly[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        bound = 2 * math.sqrt(self.ell) + 1e-9
        for root in np.roots(list(reversed(self.minpoly))):
            if abs(root.imag) < 1e-9 and abs(root.real) > bound:
                raise ValueError(
                    f"real root {root.real} violates the Deligne bound 2*sqrt({self.ell})"
                )

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @classmethod
    def rational(cls, ell: int, c: int) -> "NewformCoefficient":
        return cls(ell, (-c, 1))


def newform_bound_from_minpoly(ell: int, minpoly: tuple[int, ...], rational: bool) -> int:
    """newform_bound on a raw monic minimal polynomial, with no root-bound
    validation; useful for the degenerate diagnostic values c = +-(ell+1)
    that a genuine coefficient could never take."""
    degree = len(minpoly) - 1
    deg_sign = -1 if degree % 2 else 1
    prod = _eval_poly(minpoly, ell + 1) * deg_sign * _eval_poly(minpoly, -(ell + 1))
    h = math.isqrt(4 * ell)
    for a in range(-h, h + 1):
        if a % 2 == 0 and a * a < 4 * ell:
            prod *= _eval_poly(minpoly, a)
    return prod if rational else ell * prod


def newform_bound(coeff: NewformCoefficient, rational: bool | None = None) -> int:
    """The exponent-divisibility bound attached to one coefficient:

        B' = Norm((ell+1)^2 - c^2) * prod over even |a| < 2*sqrt(ell) of Norm(a - c)

    with Norm(a - c) = minpoly(a) for monic minpoly; the result is B' for
    rational forms and ell * B' otherwise.  A zero value means the
    coefficient carries no bound (the rational 2-torsion trace pattern).

    The divisibility statement presumes ell does not divide the lowered
    level; that, and the ell = p corner for irrational forms, are the
    caller's bookkeeping.
    """
    if rational is None:
        rational = coeff.degree == 1
    return newform_bound_from_minpoly(coeff.ell, coeff.minpoly, rational)


def kraus_product(ell: int) -> int:
    """prod (a - b) over admissible pairs times prod (b^2 - (ell+1)^2).

    Nonzero for every odd prime: the two trace sets are disjoint and the
    strict Hasse inequality keeps b away from +-(ell+1).
    """
    traces = admissible_traces(ell)
    prod = 1
    shift = (ell + 1) ** 2
    for a in traces.set_a:
        for b in traces.set_b:
            prod *= a - b
    for b in traces.set_b:
        prod *= b * b - shift
    return prod


def congruence_divisor(a_f: int, c: int, ell: int, case: str) -> int:
    """Integer D with p | D forced by the trace congruence; 0 = no information.

    good_both: both curves have good reduction at ell, D = a_F - c.
    multiplicative_only: ell divides the solution-dependent level only,
    D = (ell+1)^2 - c^2.
    """
    if case == GOOD_BOTH:
        if a_f * a_f > 4 * ell:
            raise ValueError(f"|a_F| exceeds the Hasse bound at {ell}")
        return a_f - c
    if case == MULTIPLICATIVE_ONLY:
        return (ell + 1) ** 2 - c * c
    raise ValueError(f"unknown case {case!r}")


@dataclass(frozen=True)
class WitnessSearch:
    """Outcome of a witness-prime scan; ``prime`` is None when not found."""

    prime: int | None
    reason: str

    @property
    def found(self) -> bool:
        return self.prime is not None


def _euler(a: int, ell: int) -> int:
    r = pow(a % ell, (ell - 1) // 2, ell)
    return -1 if r == ell - 1 else r


def galois_witness(
    C: int,
    q: int,
    s: int,
    curve: CurveAB,
    search_bound: int = DEFAULT_WITNESS_BOUND,
    excluded=frozenset(),
) -> WitnessSearch:
    """Least prime ell <= search_bound with

        (-C*q^s | ell) = 1,  (A^2-4B | ell) = -1,  (B | ell) = -1,

    skipping excluded primes and divisors of 2*C*q*B*(A^2-4B).  Such a prime
    simultaneously violates all three escape conditions of the quadratic
    sieve and therefore yields an exponent bound.  If B or A^2-4B is a
    rational square the search is provably hopeless and says so.
    """
    if C < 1 or not squarefree_check(C):
        raise ValueError("C must be a squarefree positive integer")
    if q == 2 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    if s not in (0, 1):
        raise ValueError("s must be a parity bit")
    if is_perfect_square(curve.B) is not None:
        return WitnessSearch(None, "B is a rational square")
    if is_perfect_square(curve.quad_disc) is not None:
        return WitnessSearch(None, "discriminant is a rational square")
    target = -C * q**s
    bad = 2 * C * q * curve.B * curve.quad_disc
    skip = set(excluded)
    for ell in iter_primes(search_bound, 3):
        if ell in skip or bad % ell == 0:
            continue
        if (
            _euler(target, ell) == 1
            and _euler(curve.quad_disc, ell) == -1
            and _euler(curve.B, ell) == -1
        ):
            return WitnessSearch(ell, "found")
    return WitnessSearch(None, "bound exhausted")


def chebotarev_witness(
    x: int, y: int, z: int, search_bound: int = DEFAULT_WITNESS_BOUND
) -> WitnessSearch:
    """Least prime ell coprime to 2xyz with x, y non-squares and z a square mod ell.

    Hypotheses (checked): x and y are not rational squares, and z is not
    equivalent to x or to y modulo rational squares.  Existence is
    guaranteed for a large enough bound; an exhausted bound is reported,
    never inferred as nonexistence.
    """
    for name, v in (("x", x), ("y", y), ("z", z)):
        if v == 0:
            raise ValueError(f"{name} must be nonzero")
    if is_perfect_square(x) is not None:
        raise ValueError("x is a rational square")
    if is_perfect_square(y) is not None:
        raise ValueError("y is a rational square")
    core_z = squarefree_core(z)
    if core_z == squarefree_core(x):
        raise ValueError("z equivalent to x up to rational squares")
    if core_z == squarefree_core(y):
        raise ValueError("z equivalent to y up to rational squares")
    product = 2 * x * y * z
    for ell in iter_primes(search_bound, 3):
        if product % ell == 0:
            continue
        if _euler(x, ell) == -1 and _euler(y, ell) == -1 and _euler(z, ell) == 1:
            return WitnessSearch(ell, "found")
    return WitnessSearch(None, "bound exhausted")
