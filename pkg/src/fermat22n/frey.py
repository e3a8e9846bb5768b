"""Frey curve attached to a (pseudo-)solution of C*x^2 + q^k*y^(2p) = z^p.

A genuine instance carries an actual solution with z even and p >= 7 prime.
Adapted instances come from the power-of-two obstruction equation
C*t^2 + q^gamma = 2^m (x = t, y = 1, z = 2, z^p = 2^m) and reuse the same
machinery; they are the ones the package actually exercises, since genuine
solutions are expected not to exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ellcurve import CurveGeneral, InvariantTriple, general_invariants
from .intmath import is_perfect_square, is_prime, radical_excluding, squarefree_check

__all__ = [
    "ADAPTED",
    "FreyInstance",
    "FreyCurve",
    "TwoStructureReport",
    "build_frey",
    "frey_discriminant",
    "frey_conductor",
    "lowered_level",
    "frey_two_structure_report",
]

ADAPTED = "adapted"


def _normalize_x(C: int, x: int) -> int:
    """Flip the sign of x when C*x = 3 (mod 4) so that (C*x - 1)/4 is integral."""
    if (C * x) % 4 == 3:
        return -x
    return x


def _nth_root(n: int, k: int) -> int:
    """Floor k-th root of n >= 1 by Newton iteration (exact integers only)."""
    if n < 1 or k < 1:
        raise ValueError("positive arguments required")
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True)
class FreyInstance:
    """A solution datum (C, q, k, x, y, z^p) with C*x = 1 (mod 4).

    ``zp`` is the full power z^p (equal to 2^m for adapted instances) and
    ``p`` is the prime exponent or the marker ``"adapted"``.  Only the
    parity of k matters downstream.
    """

    C: int
    q: int
    k: int
    x: int
    y: int
    zp: int
    p: int | str = ADAPTED

    def __post_init__(self):
        if self.C < 1 or not squarefree_check(self.C):
            raise ValueError("C must be a squarefree positive integer")
        if self.q == 2 or not is_prime(self.q):
            raise ValueError("q must be an odd prime")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.y == 0:
            raise ValueError("y = 0 is not a valid solution datum")
        if self.zp <= 0 or self.zp % 2:
            raise ValueError("z^p must be positive and even (z is even)")
        if self.p == ADAPTED:
            if self.y != 1:
                raise ValueError("adapted instances have y = 1")
        else:
            if not (isinstance(self.p, int) and self.p >= 7 and is_prime(self.p)):
                raise ValueError("p must be a prime >= 7 or the 'adapted' marker")
            z = _nth_root(self.zp, self.p)
            if z**self.p != self.zp or z % 2:
                raise ValueError("z^p must be the p-th power of an even integer")
        if (self.C * self.x) % 4 != 1:
            raise ValueError("unnormalizable: C*x != 1 (mod 4) for both signs of x")
        if self.C * self.x * self.x + self.qk_y2p != self.zp:
            raise ValueError("solution identity C*x^2 + q^k*y^(2p) = z^p fails")
        if math.gcd(self.C * self.x, self.q * self.y, self.zp) != 1:
            raise ValueError("gcd(Cx, qy, z) = 1 violated")

    @property
    def parity(self) -> int:
        """s = k mod 2; all routing depends on k only through this bit."""
        return self.k % 2

    @property
    def qk_y2p(self) -> int:
        """The term q^k * y^(2p) (just q^k for adapted instances)."""
        if self.p == ADAPTED:
            return self.q**self.k
        return self.q**self.k * self.y ** (2 * self.p)

    @classmethod
    def adapted(cls, C: int, q: int, gamma: int, t: int, m: int) -> "FreyInstance":
        """Instance for a solution C*t^2 + q^gamma = 2^m of the main obstruction."""
        return cls(C, q, gamma, _normalize_x(C, t), 1, 1 << m, ADAPTED)

    @classmethod
    def genuine(cls, C: int, q: int, k: int, x: int, y: int, z: int, p: int) -> "FreyInstance":
        return cls(C, q, k, _normalize_x(C, x), y, z**p, p)


@dataclass(frozen=True)
class FreyCurve:
    """The model Y^2 + XY = X^3 + (Cx-1)/4 X^2 + C z^p/64 X plus its invariants."""

    instance: FreyInstance
    curve: CurveGeneral
    invariants: InvariantTriple


def frey_discriminant(inst: FreyInstance) -> int:
    """Minimal discriminant -2^-12 C^3 q^k (yz)^(2p), as an exact integer.

    Computed as -C^3 (z^p - C x^2) (z^p)^2 / 2^12, which avoids needing z
    itself; equals -2^(2m-12) C^3 q^gamma on adapted instances.
    """
    num = -(inst.C**3) * (inst.zp - inst.C * inst.x * inst.x) * inst.zp * inst.zp
    if num % 4096:
        raise ValueError("discriminant not integral: z^p carries fewer than 12 factors of 2")
    return num // 4096


def build_frey(inst: FreyInstance) -> FreyCurve:
    """Construct the Frey model; its discriminant already equals the minimal one."""
    a2_num = inst.C * inst.x - 1
    a4_num = inst.C * inst.zp
    if a2_num % 4:
        raise ValueError("unnormalizable: C*x != 1 (mod 4)")
    if a4_num % 64:
        raise ValueError("64 does not divide C*z^p; Frey coefficients not integral")
    curve = CurveGeneral(1, a2_num // 4, 0, a4_num // 64, 0)
    inv = general_invariants(curve)
    if inv.disc != frey_discriminant(inst):
        raise RuntimeError("Frey model discriminant disagrees with the closed form")
    return FreyCurve(inst, curve, inv)


def frey_conductor(inst: FreyInstance) -> int:
    """Conductor 2 C^2 q Rad_{2,q}(yz) for k != 0, else 2 C^2 Rad_2(yz).

    z and z^p share prime support, so the radical is taken of y*z^p.
    """
    yzp = inst.y * inst.zp
    if yzp == 0:
        raise ValueError("y*z = 0 has no conductor")
    if inst.k != 0:
        return 2 * inst.C**2 * inst.q * radical_excluding(yzp, (2, inst.q))
    return 2 * inst.C**2 * radical_excluding(yzp, (2,))


def lowered_level(C: int, q: int, k: int, p: int) -> int:
    """Solution-independent level after level lowering: 2C^2 q unless k is 0 or p."""
    if C < 1 or not squarefree_check(C):
        raise ValueError("C must be a squarefree positive integer")
    if q == 2 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    if not (is_prime(p) and p >= 7):
        raise ValueError("p must be a prime >= 7")
    if k in (0, p):
        return 2 * C * C
    return 2 * C * C * q


@dataclass(frozen=True)
class TwoStructureReport:
    """Diagnostics for the 2-torsion structure of the Frey curve.

    ``single_two_torsion``: C^2 x^2 - C z^p (= -C q^k y^(2p)) is negative, so
    the 2-division cubic has exactly one rational root and (0, 0) is the only
    rational 2-torsion point.

    ``no_order4_certificate``: C z^p is not a perfect square, which certifies
    that no rational point of order 4 exists.  False means the certificate
    does not apply, not that such a point exists; adapted instances with
    C = 1 and m even are the (harmless) uncertified family.
    """

    aux: int
    single_two_torsion: bool
    no_order4_certificate: bool


def frey_two_structure_report(inst: FreyInstance) -> TwoStructureReport:
    aux = inst.C**2 * inst.x**2 - inst.C * inst.zp
    if aux != -inst.C * inst.qk_y2p:
        raise RuntimeError("auxiliary identity C^2x^2 - Cz^p = -C q^k y^(2p) fails")
    return TwoStructureReport(
        aux=aux,
        single_two_torsion=aux < 0,
        no_order4_certificate=is_perfect_square(inst.C * inst.zp) is None,
    )
