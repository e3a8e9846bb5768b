"""Elliptic curve models over Q and over prime fields.

Two rational models are used throughout: Y^2 = X(X^2 + A*X + B) with a
rational 2-torsion point at (0, 0), and the long Weierstrass model with
coefficients a1..a6 (which also hosts curves with half-integral rational
coefficients, e.g. the 2-isogenous partner of a Frey curve).  Reductions
modulo odd primes, naive point counting, 2-torsion and order-4 subgroup
tests live here as well.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from .intmath import factorize, is_prime, legendre, sqrt_mod

if TYPE_CHECKING:  # pragma: no cover
    from .frey import FreyInstance

__all__ = [
    "CurveAB",
    "CurveGeneral",
    "RationalCurve",
    "ReducedCurve",
    "InvariantTriple",
    "invariants_ab",
    "general_invariants",
    "minimal_reduce_ab",
    "reduce_mod",
    "good_reduction",
    "count_points",
    "trace_of_frobenius",
    "full_two_torsion_mod_ell",
    "has_order4_subgroup_mod_ell",
    "two_isogenous_curve",
]


@dataclass(frozen=True)
class InvariantTriple:
    """Weierstrass invariants (c4, c6, disc) with c4^3 - c6^2 = 1728*disc."""

    c4: int
    c6: int
    disc: int

    def __post_init__(self):
        if self.c4**3 - self.c6**2 != 1728 * self.disc:
            raise ValueError("invalid invariant triple: c4^3 - c6^2 != 1728*disc")


@dataclass(frozen=True)
class CurveAB:
    """The model Y^2 = X(X^2 + A*X + B); nonsingular iff B*(A^2 - 4B) != 0."""

    A: int
    B: int

    def __post_init__(self):
        if self.B == 0 or self.A * self.A == 4 * self.B:
            raise ValueError("singular model: need B != 0 and A^2 - 4B != 0")

    @property
    def quad_disc(self) -> int:
        """Discriminant A^2 - 4B of the quadratic factor."""
        return self.A * self.A - 4 * self.B

    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (0, self.A, 0, self.B, 0)


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _disc_from_b(b2, b4, b6, b8):
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class CurveGeneral:
    """Long Weierstrass model y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if _disc_from_b(*_b_invariants(*self.a_invariants())) == 0:
            raise ValueError("singular model: discriminant vanishes")

    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self) -> tuple[int, int, int, int]:
        return _b_invariants(*self.a_invariants())


@dataclass(frozen=True)
class RationalCurve:
    """Long Weierstrass model with rational (e.g. half-integral) coefficients."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        if _disc_from_b(*_b_invariants(*self.a_invariants())) == 0:
            raise ValueError("singular model: discriminant vanishes")

    def a_invariants(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def discriminant(self) -> Fraction:
        return _disc_from_b(*_b_invariants(*self.a_invariants()))


@dataclass(frozen=True)
class ReducedCurve:
    """A curve reduced modulo an odd prime ell of good reduction."""

    ell: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.ell == 2 or not is_prime(self.ell):
            raise ValueError(f"reduction modulus must be an odd prime, got {self.ell}")
        if _disc_from_b(*_b_invariants(*self.a_invariants())) % self.ell == 0:
            raise ValueError(f"bad reduction at {self.ell}")

    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)


AnyCurve = Union[CurveAB, CurveGeneral, RationalCurve, ReducedCurve]


def invariants_ab(curve: CurveAB) -> InvariantTriple:
    """Reduced invariants c4 = A^2-3B, c6 = A(9B-2A^2)/2, disc = B^2(A^2-4B)/2^8.

    These are the invariants of the model scaled down by (2^4, 2^6, 2^12)
    from the raw Y^2 = X(X^2+AX+B) ones; they are integral exactly when the
    curve admits a model that is 2-minimal with multiplicative reduction at
    2.  Non-integral values are rejected.
    """
    A, B = curve.A, curve.B
    c4 = A * A - 3 * B
    c6_doubled = A * (9 * B - 2 * A * A)
    disc_scaled = B * B * (A * A - 4 * B)  # 2^8 * disc
    if c6_doubled % 2 or disc_scaled % 256:
        raise ValueError(
            "model outside the reduced normalization: c6 or disc not integral "
            "(no 2-minimal model with multiplicative reduction at 2)"
        )
    return InvariantTriple(c4, c6_doubled // 2, disc_scaled // 256)


def general_invariants(curve: CurveGeneral) -> InvariantTriple:
    """Standard c4, c6, disc of a long Weierstrass model (not minimalised)."""
    b2, b4, b6, b8 = curve.b_invariants()
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return InvariantTriple(c4, c6, _disc_from_b(b2, b4, b6, b8))


def minimal_reduce_ab(a_coeff: int, b_coeff: int) -> CurveAB:
    """Reduce Y^2 = X(X^2 + A'X + B') to the representative that is minimal
    within the A/B family.

    For odd ell: when ell^4 | c4' and ell^12 | disc' (which forces
    ell^2 | A', ell^4 | B'), replace (A', B') by (A'/ell^2, B'/ell^4).
    At 2 the analogous step divides by (4, 16) while the scaled invariants
    stay 16-, 128- and 2^20-divisible.  Fails when the end result still has
    non-integral reduced invariants.
    """
    a, b = a_coeff, b_coeff
    CurveAB(a, b)  # validate nonsingularity up front
    candidates = sorted(factorize(math.gcd(a, b)))  # gcd(0, b) = |b| covers A' = 0
    for ell in candidates:
        if ell == 2:
            continue
        e4, e12 = ell**4, ell**12
        while (
            (a * a - 3 * b) % e4 == 0
            and (b * b * (a * a - 4 * b)) % e12 == 0
            and a % (ell * ell) == 0
            and b % e4 == 0
        ):
            a //= ell * ell
            b //= e4
    while (
        (a * a - 3 * b) % 16 == 0
        and (a * (9 * b - 2 * a * a)) % 128 == 0
        and (b * b * (a * a - 4 * b)) % (1 << 20) == 0
        and a % 4 == 0
        and b % 16 == 0
    ):
        a //= 4
        b //= 16
    curve = CurveAB(a, b)
    try:
        invariants_ab(curve)
    except ValueError:
        raise ValueError("additive reduction at 2; outside scope") from None
    return curve


def reduce_mod(curve: AnyCurve, ell: int) -> ReducedCurve:
    """Reduce any supported model modulo an odd prime of good reduction.

    Rational coefficients are mapped through the inverse of their
    denominator; a denominator divisible by ell is rejected.
    """
    if isinstance(curve, ReducedCurve):
        if curve.ell != ell:
            raise ValueError(f"curve already reduced mod {curve.ell}, not {ell}")
        return curve
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"reduction modulus must be an odd prime, got {ell}")
    coeffs = []
    for c in curve.a_invariants():
        if isinstance(c, Fraction):
            if c.denominator % ell == 0:
                raise ValueError(f"bad reduction at {ell}: denominator vanishes")
            coeffs.append(c.numerator * pow(c.denominator, -1, ell) % ell)
        else:
            coeffs.append(c % ell)
    return ReducedCurve(ell, *coeffs)


def good_reduction(curve: AnyCurve, ell: int) -> bool:
    """True iff ell is an odd prime at which the given model reduces well."""
    try:
        reduce_mod(curve, ell)
        return True
    except ValueError:
        return False


def _square_table(ell: int) -> frozenset:
    return frozenset(x * x % ell for x in range(ell // 2 + 1))


def count_points(curve: ReducedCurve) -> int:
    """Number of projective points over F_ell, infinity included.

    Naive O(ell) scan: for odd ell the substitution u = 2y + a1*x + a3 turns
    the curve into u^2 = 4x^3 + b2*x^2 + 2*b4*x + b6, counted by quadratic
    residues.
    """
    ell = curve.ell
    b2, b4, b6, _ = _b_invariants(*curve.a_invariants())
    squares = _square_table(ell)
    total = 1
    for x in range(ell):
        v = (4 * x * x * x + b2 * x * x + 2 * b4 * x + b6) % ell
        if v == 0:
            total += 1
        elif v in squares:
            total += 2
    return total


def trace_of_frobenius(curve: AnyCurve, ell: int) -> int:
    """a_ell = ell + 1 - #points over F_ell; requires odd ell of good reduction."""
    reduced = reduce_mod(curve, ell)
    a = ell + 1 - count_points(reduced)
    if a * a > 4 * ell:
        raise RuntimeError(f"Hasse bound violated at {ell}: trace {a}")
    return a


def _require_good_ab(curve: CurveAB, ell: int) -> None:
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"odd prime required, got {ell}")
    if (curve.B * curve.quad_disc) % ell == 0:
        raise ValueError(f"bad reduction at {ell}")


def full_two_torsion_mod_ell(curve: CurveAB, ell: int) -> bool:
    """True iff X(X^2 + AX + B) splits completely over F_ell.

    With the rational 2-torsion point (0, 0) present, this is equivalent to
    A^2 - 4B being a square modulo ell (the reduced discriminant is a
    square exactly then).
    """
    _require_good_ab(curve, ell)
    return legendre(curve.quad_disc, ell) == 1


def has_order4_subgroup_mod_ell(curve: CurveAB, ell: int) -> bool:
    """True iff the reduced group contains a subgroup of order 4.

    Either the full 2-torsion is rational over F_ell, or some point halving
    (0, 0) is: those have x = +-sqrt(B) and exist iff B is a square and one
    of A +- 2*sqrt(B) is.  At good odd ell the two branches are exclusive
    and the A +- 2*sqrt(B) values are nonzero, so the Legendre tests decide.
    """
    _require_good_ab(curve, ell)
    if legendre(curve.quad_disc, ell) == 1:
        return True
    if legendre(curve.B, ell) != 1:
        return False
    s = sqrt_mod(curve.B % ell, ell)
    return legendre(curve.A + 2 * s, ell) == 1 or legendre(curve.A - 2 * s, ell) == 1


def two_isogenous_curve(inst: "FreyInstance", verify_primes: int = 3) -> RationalCurve:
    """The curve 2-isogenous to the Frey curve of ``inst``:

        V^2 = U^3 - (C*x/2) U^2 - (C*q^k*y^(2p)/16) U

    Coefficients stay rational (half-integral); reductions mod odd ell clear
    denominators.  Traces of Frobenius are cross-checked against the Frey
    model at the first few good odd primes.
    """
    a2 = Fraction(-inst.C * inst.x, 2)
    a4 = Fraction(-inst.C * inst.qk_y2p, 16)
    zero = Fraction(0)
    iso = RationalCurve(zero, a2, zero, a4, zero)

    cx_term = inst.C * inst.x - 1
    if cx_term % 4 == 0 and (inst.C * inst.zp) % 64 == 0:
        frey_model = CurveGeneral(1, cx_term // 4, 0, inst.C * inst.zp // 64, 0)
        checked = 0
        for ell in itertools.islice((p for p in range(3, 200, 2) if is_prime(p)), 40):
            if checked >= verify_primes:
                break
            if not (good_reduction(frey_model, ell) and good_reduction(iso, ell)):
                continue
            if trace_of_frobenius(frey_model, ell) != trace_of_frobenius(iso, ell):
                raise RuntimeError(f"isogeny trace mismatch at ell={ell}")
            checked += 1
    return iso
