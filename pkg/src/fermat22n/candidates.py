"""Obstruction shapes and the candidate curves they realize.

If the exponent-bound criteria fail, a curve Y^2 = X(X^2 + AX + B) must
exist whose B and A^2 - 4B factor over {2, q} u primes(C) in one of eight
constrained patterns (two for odd k, six for even k).  Each pattern, with a
concrete choice of beta_r in {1, 3} per prime r | C, is a ShapeDescriptor;
combining a shape with a solution of its obstruction equation produces
concrete (A, B) candidates, which are re-verified after construction rather
than trusted from the closed forms.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

from .diophantine import MAIN, QPOW, RN, ObstructionSolution
from .ellcurve import CurveAB, invariants_ab
from .intmath import is_prime, prime_factors, squarefree_check, valuation

__all__ = [
    "ShapeDescriptor",
    "CandidateCurve",
    "ObstructionTarget",
    "inertia_check",
    "enumerate_shapes",
    "obstruction_for_shape",
    "realize_candidates",
    "candidates_for_solution",
]

logger = logging.getLogger(__name__)

# Per-case data, derived once from the eight printed factorization patterns:
# sign of B, sign of A^2-4B, which side carries 2^alpha (with its strict
# lower bound and parity), which side carries q^gamma (with its parity, None
# = unconstrained), and the obstruction equation the case reduces to.
_CASE_TABLE = {
    # k odd
    "A": dict(k_parity=1, sign_b=-1, sign_disc=1, two_slot="disc", two_min=8,
              two_even=False, q_slot="B", gamma_parity=1, equation=MAIN),
    "B": dict(k_parity=1, sign_b=1, sign_disc=-1, two_slot="B", two_min=4,
              two_even=False, q_slot="disc", gamma_parity=1, equation=MAIN),
    # k even
    "A'": dict(k_parity=0, sign_b=-1, sign_disc=1, two_slot="B", two_min=4,
               two_even=True, q_slot="disc", gamma_parity=None, equation=QPOW),
    "B'": dict(k_parity=0, sign_b=-1, sign_disc=1, two_slot="disc", two_min=8,
               two_even=False, q_slot="B", gamma_parity=0, equation=MAIN),
    "C'": dict(k_parity=0, sign_b=-1, sign_disc=1, two_slot="disc", two_min=8,
               two_even=False, q_slot="disc", gamma_parity=None, equation=RN),
    "D'": dict(k_parity=0, sign_b=1, sign_disc=-1, two_slot="B", two_min=4,
               two_even=False, q_slot="B", gamma_parity=None, equation=RN),
    "E'": dict(k_parity=0, sign_b=1, sign_disc=-1, two_slot="B", two_min=4,
               two_even=False, q_slot="disc", gamma_parity=0, equation=MAIN),
    "F'": dict(k_parity=0, sign_b=1, sign_disc=-1, two_slot="disc", two_min=8,
               two_even=True, q_slot="B", gamma_parity=None, equation=QPOW),
}

_ODD_CASES = ("A", "B")
_EVEN_CASES = ("A'", "B'", "C'", "D'", "E'", "F'")


@dataclass(frozen=True)
class ShapeDescriptor:
    """One factorization pattern with a concrete beta assignment.

    betas maps each prime r | C to 1 or 3; sign_b/sign_disc are the signs of
    B and A^2 - 4B; two_slot/q_slot say which of the two carries 2^alpha and
    q^gamma ("B" or "disc"; for rn-shapes both powers sit on one side).
    """

    case_label: str
    C: int
    q: int
    k_parity: int
    sign_b: int
    sign_disc: int
    two_slot: str
    two_min: int
    two_even: bool
    q_slot: str
    gamma_parity: int | None
    betas: tuple[tuple[int, int], ...]

    @property
    def s_factor(self) -> int:
        """Product of the primes r | C with beta_r = 3 (so prod r^beta = C*s^2)."""
        return math.prod(r for r, beta in self.betas if beta == 3)

    @property
    def r_product(self) -> int:
        return self.C * self.s_factor**2


@dataclass(frozen=True)
class ObstructionTarget:
    """Which obstruction equation a shape reduces to, with parity constraints."""

    equation: str
    gamma_parity: int | None
    m_parity: int | None
    note: str = ""


@dataclass(frozen=True)
class CandidateCurve:
    curve: CurveAB
    shape: ShapeDescriptor
    source_solution: ObstructionSolution
    s_factor: int


def inertia_check(curve: CurveAB, C: int) -> bool:
    """nu_r(B) = nu_r(A^2 - 4B) for every prime r | C (vacuous for C = 1)."""
    if C < 1 or not squarefree_check(C):
        raise ValueError("C must be a squarefree positive integer")
    disc = curve.quad_disc
    return all(
        valuation(curve.B, r).exponent == valuation(disc, r).exponent
        for r in prime_factors(C)
    )


def enumerate_shapes(C: int, q: int, parity) -> list[ShapeDescriptor]:
    """All shapes for (C, q) at the given k-parity: case families times the
    2^omega(C) beta assignments."""
    if C < 1 or not squarefree_check(C):
        raise ValueError("C must be a squarefree positive integer")
    if q == 2 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    bit = parity if parity in (0, 1) else {"even": 0, "odd": 1}[parity]
    labels = _ODD_CASES if bit == 1 else _EVEN_CASES
    primes = prime_factors(C)
    shapes = []
    for label in labels:
        case = _CASE_TABLE[label]
        for combo in itertools.product((1, 3), repeat=len(primes)):
            shapes.append(
                ShapeDescriptor(
                    case_label=label,
                    C=C,
                    q=q,
                    k_parity=bit,
                    sign_b=case["sign_b"],
                    sign_disc=case["sign_disc"],
                    two_slot=case["two_slot"],
                    two_min=case["two_min"],
                    two_even=case["two_even"],
                    q_slot=case["q_slot"],
                    gamma_parity=case["gamma_parity"],
                    betas=tuple(zip(primes, combo)),
                )
            )
    return shapes


def obstruction_for_shape(shape: ShapeDescriptor) -> ObstructionTarget:
    """The equation whose solutions realize the shape."""
    eq = _CASE_TABLE[shape.case_label]["equation"]
    if eq == MAIN:
        return ObstructionTarget(MAIN, shape.k_parity, None)
    if eq == QPOW:
        return ObstructionTarget(
            QPOW, 1, 0, note="realizable only when q = 7 (mod 8)"
        )
    return ObstructionTarget(RN, None, None)


def _closed_form(shape: ShapeDescriptor, sol: ObstructionSolution, C: int, q: int):
    """(A, B) from the per-case closed forms; A is taken nonnegative."""
    s = shape.s_factor
    big_r = shape.r_product
    t, g, m = sol.t, sol.gamma, sol.m
    label = shape.case_label
    if label in ("A", "B'"):
        return 2 * C * s * t, -(q**g) * big_r
    if label in ("B", "E'"):
        return C * s * t, (1 << (m - 2)) * big_r
    if label == "A'":
        return C * s * t, -(1 << (m - 2)) * big_r
    if label == "F'":
        return 2 * C * s * t, (q**g) * big_r
    if label == "C'":
        return 2 * C * s * t, -big_r
    if label == "D'":
        return C * s * t, (1 << (m - 2)) * (q**g) * big_r
    raise ValueError(f"unknown case {label!r}")


def _shape_reverifies(shape: ShapeDescriptor, sol: ObstructionSolution, curve: CurveAB) -> bool:
    """Recompute B and A^2-4B from the shape's pattern and compare exactly."""
    alpha = sol.m + 2 if shape.two_slot == "disc" else sol.m - 2
    if alpha <= shape.two_min or (shape.two_even and alpha % 2):
        return False
    q_pow = shape.q ** sol.gamma
    expected_b = shape.sign_b * shape.r_product
    expected_disc = shape.sign_disc * shape.r_product
    if shape.two_slot == "B":
        expected_b *= 1 << alpha
    else:
        expected_disc *= 1 << alpha
    if shape.q_slot == "B":
        expected_b *= q_pow
    else:
        expected_disc *= q_pow
    return curve.B == expected_b and curve.quad_disc == expected_disc


def realize_candidates(
    shape: ShapeDescriptor, sol: ObstructionSolution, C: int, q: int
) -> list[CandidateCurve]:
    """Candidate curves for one shape and one obstruction solution.

    The solution must solve the shape's equation with its parity constraints
    and m > 6.  Every candidate is re-verified (shape factorization, inertia
    valuations, integral reduced invariants); failures are dropped with a
    logged reason rather than returned.
    """
    if (C, q) != (shape.C, shape.q):
        raise ValueError("shape was enumerated for a different (C, q)")
    target = obstruction_for_shape(shape)
    if sol.equation != target.equation:
        raise ValueError("solution outside shape constraints: wrong equation")
    if sol.m <= 6:
        raise ValueError("solution outside shape constraints: m > 6 required")
    if target.gamma_parity is not None and sol.gamma % 2 != target.gamma_parity:
        raise ValueError("solution outside shape constraints: gamma parity")
    if target.m_parity is not None and sol.m % 2 != target.m_parity:
        raise ValueError("solution outside shape constraints: m parity")
    if not sol.verifies(C, q):
        raise ValueError("solution fails its defining identity")

    a_coeff, b_coeff = _closed_form(shape, sol, C, q)
    tag = f"case {shape.case_label}, s={shape.s_factor}, sol={sol.triple()}"
    try:
        curve = CurveAB(a_coeff, b_coeff)
    except ValueError as exc:
        logger.warning("dropped %s: %s", tag, exc)
        return []
    if not _shape_reverifies(shape, sol, curve):
        logger.warning("dropped %s: factorization does not match the shape", tag)
        return []
    if not inertia_check(curve, C):
        logger.warning("dropped %s: inertia valuations differ", tag)
        return []
    try:
        invariants_ab(curve)
    except ValueError as exc:
        logger.warning("dropped %s: %s", tag, exc)
        return []
    return [CandidateCurve(curve, shape, sol, shape.s_factor)]


def candidates_for_solution(
    C: int, q: int, parity, sol: ObstructionSolution
) -> list[CandidateCurve]:
    """All candidates over every shape of the right parity that accepts sol."""
    out = []
    for shape in enumerate_shapes(C, q, parity):
        target = obstruction_for_shape(shape)
        if sol.equation != target.equation:
            continue
        if target.gamma_parity is not None and sol.gamma % 2 != target.gamma_parity:
            continue
        if target.m_parity is not None and sol.m % 2 != target.m_parity:
            continue
        if sol.m <= 6:
            continue
        out.extend(realize_candidates(shape, sol, C, q))
    return out
