"""Exponent-box solvers for the three obstruction equations and the Mordell
curve reductions.

    main:  C*t^2 + q^gamma = 2^m
    rn:    C*t^2 + 1       = 2^m * q^gamma   (Ramanujan-Nagell shape u^2 + C = C*v)
    qpow:  C*t^2 + 2^m     = q^gamma         (m even, gamma odd)

The solvers iterate the (m, gamma) grid and recover t by an exact square
test, which is exhaustive inside the box; results are certified *within the
box* only, never as unconditional emptiness.  Solutions of main/qpow map to
S-integral points on two families of 18 Mordell curves, and a bounded point
search plus a curve-table lookup provide independent routes to the same
solutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curvedb import CurveDatabase, by_conductor
from .intmath import is_perfect_square, is_prime, squarefree_check

__all__ = [
    "MAIN",
    "RN",
    "QPOW",
    "ObstructionSolution",
    "MordellCurve",
    "SPoint",
    "SPointSearch",
    "LookupResult",
    "solve_main",
    "solve_rn",
    "solve_qpow",
    "mordell_family",
    "solution_to_point",
    "point_to_solution",
    "s_point_search",
    "lookup_solve",
]

MAIN = "main"
RN = "rn"
QPOW = "qpow"

DEFAULT_M_MAX = 200
DEFAULT_GAMMA_MAX = 200


def _parity_bit(parity) -> int:
    if parity in (0, 1):
        return parity
    if parity == "even":
        return 0
    if parity == "odd":
        return 1
    raise ValueError(f"parity must be 'even', 'odd', 0 or 1, got {parity!r}")


def _validate_pair(C: int, q: int) -> None:
    if C < 1 or not squarefree_check(C):
        raise ValueError("C must be a squarefree positive integer")
    if q == 2 or not is_prime(q):
        raise ValueError("q must be an odd prime")


def _validate_box(m_max: int, gamma_max: int) -> None:
    # a box that cannot reach the m > 6 threshold would certify nothing
    if m_max < 7:
        raise ValueError("m_max must be at least 7")
    if gamma_max < 0:
        raise ValueError("gamma_max must be nonnegative")


@dataclass(frozen=True)
class ObstructionSolution:
    """A triple (t, gamma, m) solving one obstruction equation.

    ``meets_threshold`` is m > 6 together with the equation's own parity
    constraints (for qpow: m even and gamma odd); only threshold solutions
    obstruct the exponent-bound criteria.
    """

    t: int
    gamma: int
    m: int
    equation: str
    meets_threshold: bool

    def verifies(self, C: int, q: int) -> bool:
        """Exact re-check of the defining identity."""
        lhs = C * self.t * self.t
        if self.equation == MAIN:
            return lhs + q**self.gamma == 1 << self.m
        if self.equation == RN:
            return lhs + 1 == (1 << self.m) * q**self.gamma
        if self.equation == QPOW:
            return lhs + (1 << self.m) == q**self.gamma
        return False

    def triple(self) -> tuple[int, int, int]:
        return (self.t, self.gamma, self.m)


def _q_powers(q: int, gamma_max: int) -> list[int]:
    powers = [1]
    for _ in range(gamma_max):
        powers.append(powers[-1] * q)
    return powers


def solve_main(
    C: int,
    q: int,
    gamma_parity,
    m_max: int = DEFAULT_M_MAX,
    gamma_max: int = DEFAULT_GAMMA_MAX,
) -> list[ObstructionSolution]:
    """All (t, gamma, m) with C t^2 + q^gamma = 2^m, t > 0, gamma of the given
    parity, inside the box; ascending in (m, gamma)."""
    _validate_pair(C, q)
    _validate_box(m_max, gamma_max)
    start = _parity_bit(gamma_parity)
    qp = _q_powers(q, gamma_max)
    out = []
    for m in range(m_max + 1):
        two = 1 << m
        for g in range(start, gamma_max + 1, 2):
            diff = two - qp[g]
            if diff <= 0:
                break
            if diff % C:
                continue
            t = is_perfect_square(diff // C)
            if t is not None:
                out.append(ObstructionSolution(t, g, m, MAIN, m > 6))
    return out


def solve_rn(
    C: int,
    q: int,
    m_max: int = DEFAULT_M_MAX,
    gamma_max: int = DEFAULT_GAMMA_MAX,
) -> list[ObstructionSolution]:
    """All (t, gamma, m) with C t^2 + 1 = 2^m q^gamma inside the box.

    Equivalently u^2 + C = C*v with u = C*t and v = 2^m q^gamma.
    """
    _validate_pair(C, q)
    _validate_box(m_max, gamma_max)
    qp = _q_powers(q, gamma_max)
    out = []
    for m in range(m_max + 1):
        two = 1 << m
        for g in range(gamma_max + 1):
            n = two * qp[g] - 1
            if n % C:
                continue
            t = is_perfect_square(n // C)
            if t is not None:
                out.append(ObstructionSolution(t, g, m, RN, m > 6))
    return out


def solve_qpow(
    C: int,
    q: int,
    m_max: int = DEFAULT_M_MAX,
    gamma_max: int = DEFAULT_GAMMA_MAX,
    include_off_parity: bool = False,
) -> list[ObstructionSolution]:
    """All (t, gamma, m) with C t^2 + 2^m = q^gamma, t > 0, m even, gamma odd.

    With include_off_parity=True the scan covers the full grid for
    diagnostics; off-parity hits never meet the threshold.
    """
    _validate_pair(C, q)
    _validate_box(m_max, gamma_max)
    qp = _q_powers(q, gamma_max)
    out = []
    for m in range(m_max + 1):
        two = 1 << m
        for g in range(gamma_max + 1):
            on_parity = m % 2 == 0 and g % 2 == 1
            if not on_parity and not include_off_parity:
                continue
            diff = qp[g] - two
            if diff <= 0:
                continue
            if diff % C:
                continue
            t = is_perfect_square(diff // C)
            if t is not None:
                out.append(ObstructionSolution(t, g, m, QPOW, m > 6 and on_parity))
    return out


@dataclass(frozen=True)
class MordellCurve:
    """V^2 = U^3 + coefficient, with S-integral denominators restricted to one prime.

    Family E (from the main equation): coefficient = -C^3 * 2^(2b) * q^d,
    b in 0..2, d in 0..5, denominators powers of q.  Family F (from qpow):
    coefficient = -C^3 * 2^b * q^(2d), b in 0..5, d in 0..2, denominators
    powers of 2.
    """

    family: str
    b_index: int
    d_index: int
    coefficient: int
    allowed_denominator_prime: int


def mordell_family(C: int, q: int, family: str) -> list[MordellCurve]:
    """The 18 Mordell curves of one family."""
    _validate_pair(C, q)
    cube = C**3
    if family == "E":
        return [
            MordellCurve("E", b, d, -cube * (1 << (2 * b)) * q**d, q)
            for b in range(3)
            for d in range(6)
        ]
    if family == "F":
        return [
            MordellCurve("F", b, d, -cube * (1 << b) * q ** (2 * d), 2)
            for b in range(6)
            for d in range(3)
        ]
    raise ValueError(f"family must be 'E' or 'F', got {family!r}")


@dataclass(frozen=True)
class SPoint:
    """A rational point with prime-power denominators, stored reduced."""

    u_num: int
    u_den: int
    v_num: int
    v_den: int

    @classmethod
    def from_fractions(cls, u: Fraction, v: Fraction) -> "SPoint":
        return cls(u.numerator, u.denominator, v.numerator, v.denominator)

    @property
    def u(self) -> Fraction:
        return Fraction(self.u_num, self.u_den)

    @property
    def v(self) -> Fraction:
        return Fraction(self.v_num, self.v_den)

    def on_curve(self, curve: MordellCurve) -> bool:
        return self.v**2 == self.u**3 + curve.coefficient


def solution_to_point(sol: ObstructionSolution, C: int, q: int) -> tuple[MordellCurve, SPoint]:
    """Map a main (family E) or qpow (family F) solution to its S-integral point.

    main: m = 3a + b, gamma = 6c + d, point (C 2^(a+b) / q^(2c), C^2 2^b t / q^(3c)).
    qpow: m = 6a + b, gamma = 3c + d, point (C q^(c+d) / 2^(2a), C^2 q^d t / 2^(3a)).
    """
    _validate_pair(C, q)
    if sol.equation == MAIN:
        a, b = divmod(sol.m, 3)
        c, d = divmod(sol.gamma, 6)
        curve = MordellCurve("E", b, d, -(C**3) * (1 << (2 * b)) * q**d, q)
        u = Fraction(C * (1 << (a + b)), q ** (2 * c))
        v = Fraction(C * C * (1 << b) * sol.t, q ** (3 * c))
    elif sol.equation == QPOW:
        a, b = divmod(sol.m, 6)
        c, d = divmod(sol.gamma, 3)
        curve = MordellCurve("F", b, d, -(C**3) * (1 << b) * q ** (2 * d), 2)
        u = Fraction(C * q ** (c + d), 1 << (2 * a))
        v = Fraction(C * C * q**d * sol.t, 1 << (3 * a))
    else:
        raise ValueError("only main and qpow solutions map to Mordell curves")
    point = SPoint.from_fractions(u, v)
    if not point.on_curve(curve):
        raise RuntimeError("mapped point fails the curve equation")
    return curve, point


def _pure_power_exponent(n: int, p: int) -> int | None:
    """e with n = p^e, else None (n >= 1)."""
    if n < 1:
        return None
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def point_to_solution(
    pt: SPoint, curve: MordellCurve, C: int, q: int
) -> ObstructionSolution | None:
    """Invert solution_to_point when the point has the image shape; None otherwise.

    Not every S-integral point lifts: the U-numerator must be C times a pure
    power of the complementary prime, the denominators must pair up as
    (prime^(2c), prime^(3c)), and the recovered triple must satisfy its
    equation exactly.
    """
    _validate_pair(C, q)
    if not pt.on_curve(curve):
        raise ValueError("point is not on the given curve")
    if pt.v_num == 0:
        return None  # t = 0 cannot solve either equation
    v_abs = abs(pt.v)
    if curve.family == "E":
        b, d = curve.b_index, curve.d_index
        den_exp = _pure_power_exponent(pt.u_den, q)
        if den_exp is None or den_exp % 2:
            return None
        c = den_exp // 2
        if pt.u_num <= 0 or pt.u_num % C:
            return None
        e = _pure_power_exponent(pt.u_num // C, 2)
        if e is None or e < b:
            return None
        a = e - b
        m, gamma = 3 * a + b, 6 * c + d
        t_frac = v_abs * q ** (3 * c) / (C * C * (1 << b))
        if t_frac.denominator != 1:
            return None
        t = t_frac.numerator
        if C * t * t + q**gamma != 1 << m:
            return None
        return ObstructionSolution(t, gamma, m, MAIN, m > 6)
    if curve.family == "F":
        b, d = curve.b_index, curve.d_index
        den_exp = _pure_power_exponent(pt.u_den, 2)
        if den_exp is None or den_exp % 2:
            return None
        a = den_exp // 2
        if pt.u_num <= 0 or pt.u_num % C:
            return None
        e = _pure_power_exponent(pt.u_num // C, q)
        if e is None or e < d:
            return None
        c = e - d
        m, gamma = 6 * a + b, 3 * c + d
        t_frac = v_abs * (1 << (3 * a)) / (C * C * q**d)
        if t_frac.denominator != 1:
            return None
        t = t_frac.numerator
        if C * t * t + (1 << m) != q**gamma:
            return None
        on_parity = m % 2 == 0 and gamma % 2 == 1
        return ObstructionSolution(t, gamma, m, QPOW, m > 6 and on_parity)
    raise ValueError(f"unknown family {curve.family!r}")


@dataclass(frozen=True)
class SPointSearch:
    """Window-bounded S-point enumeration; never a completeness certificate."""

    curve: MordellCurve
    height_bound: int
    denominator_exponent_cap: int
    points: tuple[SPoint, ...]
    bounded: bool = True


def s_point_search(curve: MordellCurve, height_bound: int) -> SPointSearch:
    """All points V^2 = U^3 + k with |U-numerator| <= height_bound and the
    U-denominator a power prime^(2i), 2i <= ceil(log_prime(height_bound)).

    Brute force over U candidates with an exact square test for V; both
    signs of V are returned.
    """
    if height_bound < 1:
        raise ValueError("height bound must be positive")
    p0 = curve.allowed_denominator_prime
    k = curve.coefficient
    cap = 0
    while p0**cap < height_bound:
        cap += 1
    points = []
    for i in range(cap // 2 + 1):
        den = p0 ** (2 * i)
        den_v = p0 ** (3 * i)
        den_cubed = den**3
        for u_num in range(-height_bound, height_bound + 1):
            if i and u_num % p0 == 0:
                continue
            w = u_num**3 + k * den_cubed
            if w < 0:
                continue
            r = is_perfect_square(w)
            if r is None:
                continue
            if r == 0:
                points.append(SPoint(u_num, den, 0, 1))
            else:
                points.append(SPoint(u_num, den, r, den_v))
                points.append(SPoint(u_num, den, -r, den_v))
    points.sort(key=lambda pt: (pt.u_den, pt.u_num, pt.v_num))
    return SPointSearch(curve, height_bound, cap, tuple(points))


@dataclass(frozen=True)
class LookupResult:
    """Solutions recovered from a curve table plus a coverage statement."""

    solutions: tuple[ObstructionSolution, ...]
    conductors: tuple[int, ...]
    complete: bool
    notes: tuple[str, ...] = field(default_factory=tuple)


def lookup_solve(C: int, q: int, parity, db: CurveDatabase) -> LookupResult:
    """Recover main-equation solutions from curve records at the two candidate
    conductors 2C^2q (gamma != 0) and 2C^2 (gamma = 0).

    A record matches when its minimal discriminant is -2^(2m-12) C^3 q^gamma
    for some m >= 6 and gamma >= 0 of the requested parity; t is then pinned
    by C t^2 = 2^m - q^gamma and the identity is verified before reporting.
    """
    _validate_pair(C, q)
    bit = _parity_bit(parity)
    conductors = tuple(sorted({2 * C * C * q, 2 * C * C}))
    found: set[tuple[int, int, int]] = set()
    complete = True
    notes = []
    for n in conductors:
        records, coverage = by_conductor(db, n)
        if coverage != "complete":
            complete = False
            notes.append(f"conductor {n} beyond declared table coverage; partial result")
        for rec in records:
            disc = rec.min_disc
            if disc >= 0:
                continue
            m_val = -disc
            if m_val % C**3:
                continue
            m_val //= C**3
            gamma = 0
            while m_val % q == 0:
                gamma += 1
                m_val //= q
            if gamma % 2 != bit:
                continue
            e2 = 0
            while m_val % 2 == 0:
                e2 += 1
                m_val //= 2
            if m_val != 1 or e2 % 2:
                continue
            m = (e2 + 12) // 2
            diff = (1 << m) - q**gamma
            if diff <= 0 or diff % C:
                continue
            t = is_perfect_square(diff // C)
            if t is None:
                continue
            found.add((t, gamma, m))
    sols = tuple(
        ObstructionSolution(t, g, m, MAIN, m > 6) for t, g, m in sorted(found, key=lambda s: (s[2], s[1], s[0]))
    )
    return LookupResult(sols, conductors, complete, tuple(notes))
