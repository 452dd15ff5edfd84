"""Rational solutions: denominator bounds from the leading coefficient,
the alternative Gräffe-product bound, the full rational solver, ramified
rational solving, and the two transcendence tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import poly as P
from .errors import InconsistentPrefixError, InsufficientPrefixError
from .linalg import rank, solve
from .newton import mu_nu, ramification_data
from .operator import IDENTITY_PHI, MahlerOperator, PhiTransform, phi_apply
from .poly import Poly, graeffe, lcm_orbit, mahler_substitute, poly_sections
from .rmatrix import prolong
from .solver import (
    SolutionBasis,
    approximate_series_basis,
    polynomial_solutions_bounded,
    _solving_operator,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class RationalFunction:
    """numerator / (x^x_power * denominator) in lowest terms.

    Invariants: x_power >= 0, the denominator is monic with nonzero
    constant term, numerator and denominator are coprime, and the
    numerator has nonzero constant term unless x_power = 0.
    """

    numerator: Poly
    x_power: int
    denominator: Poly

    @classmethod
    def make(cls, numerator: Poly, x_power: int, denominator: Poly) -> "RationalFunction":
        if not denominator:
            raise ZeroDivisionError("zero denominator")
        if x_power < 0:
            raise ValueError("negative x power")
        if not numerator:
            return cls(Poly.zero(), 0, Poly.one())
        v = x_power + denominator.valuation
        den = denominator.shift(-denominator.valuation)
        g = P.gcd(numerator, den)
        num = numerator.exact_div(g)
        den = den.exact_div(g)
        cancel = min(v, num.valuation)
        num = num.shift(-cancel)
        v -= cancel
        lc = den.leading_coefficient
        return cls(num.scale(1 / lc), v, den.monic())

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        c = Fraction(c)
        if not c:
            return cls(Poly.zero(), 0, Poly.one())
        return cls(Poly.monomial(0, c), 0, Poly.one())

    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def valuation(self) -> int:
        if not self.numerator:
            raise ValueError("zero function has no valuation")
        return self.numerator.valuation - self.x_power

    def scale(self, c) -> "RationalFunction":
        if not Fraction(c):
            return RationalFunction.constant(0)
        return RationalFunction.make(
            self.numerator.scale(c), self.x_power, self.denominator
        )

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        da = self.denominator.shift(self.x_power)
        db = other.denominator.shift(other.x_power)
        num = self.numerator * db + other.numerator * da
        return RationalFunction.make(num, 0, da * db)

    def laurent_coefficients(self, lo: int, hi: int) -> list[Fraction]:
        """Exact expansion coefficients for exponents lo..hi-1."""
        if hi <= lo:
            return []
        if not self.numerator:
            return [_ZERO] * (hi - lo)
        # numerator/denominator is a power series; shift by x_power.
        length = hi + self.x_power
        if length <= 0:
            return [_ZERO] * (hi - lo)
        series = _power_series_div(self.numerator, self.denominator, length)
        out = []
        for e in range(lo, hi):
            idx = e + self.x_power
            out.append(series[idx] if 0 <= idx < length else _ZERO)
        return out

    def __str__(self) -> str:
        den_parts = []
        if self.x_power:
            den_parts.append("x" if self.x_power == 1 else f"x^{self.x_power}")
        if self.denominator != Poly.one():
            den_parts.append(f"({self.denominator})")
        if not den_parts:
            return str(self.numerator)
        return f"({self.numerator}) / ({' * '.join(den_parts)})"


def _power_series_div(num: Poly, den: Poly, length: int) -> list[Fraction]:
    """First `length` coefficients of num/den; den(0) must be nonzero."""
    d0 = den.coefficient(0)
    if not d0:
        raise ZeroDivisionError("denominator vanishes at 0")
    out = [_ZERO] * length
    den_terms = [(e, c) for e, c in den.terms if e > 0]
    num_map = {e: c for e, c in num.terms}
    for n in range(length):
        acc = num_map.get(n, _ZERO)
        for e, c in den_terms:
            if e > n:
                break
            acc -= c * out[n - e]
        out[n] = acc / d0
    return out


@dataclass(frozen=True)
class RamifiedRationalFunction:
    """A rational function of x^(1/ramification)."""

    ramification: int
    function: RationalFunction


@dataclass(frozen=True)
class DenominatorBound:
    """Result of the leading-coefficient analysis, with the intermediate
    cofactor trace kept for inspection."""

    q_star: Poly
    v_bar: int
    u_steps: tuple[Poly, ...]
    u_tilde: Poly


def denominator_bound(op: MahlerOperator) -> DenominatorBound:
    """Monic polynomial q_star and shift v_bar such that every rational
    solution can be written p / (x^v_bar * q_star).

    Loop: take the b^r-residue sections of the working polynomial, remove
    the gcd u_k of the sections (substituted back), and multiply by the
    lcm of the orbit of u_k; once no factor remains, one more section pass
    one level down gives a polynomial whose Gräffe image collects the
    factors living on root-power cycles.
    """
    if not op:
        raise ValueError("zero operator")
    if not op.coefficient(0):
        raise ValueError("denominator bound requires a nonzero trailing coefficient")
    r = op.order
    if r < 1:
        raise ValueError("denominator bound requires order >= 1")
    b = op.radix
    delta = op.degree

    ell = op.coeffs[r]
    u_steps = []
    while True:
        sections = poly_sections(ell, b**r)
        u = P.gcd_all(s for s in sections if s)
        u_steps.append(u)
        if u.degree < 1:
            break
        ell = ell.exact_div(mahler_substitute(u, b, r)) * lcm_orbit(u, b, r)
    # one level down; for order 1 the "sections" are the polynomial itself
    sections = poly_sections(ell, b ** (r - 1)) if r > 1 else [ell]
    u_tilde = P.gcd_all(s for s in sections if s)

    q_star = Poly.one()
    for u in u_steps[:-1]:
        q_star = q_star * u
    q_star = (q_star * graeffe(u_tilde, b)).monic()
    v_bar = delta // (b**r - b ** (r - 1))
    return DenominatorBound(q_star, v_bar, tuple(u_steps), u_tilde)


def _integer_log(base: int, value: int) -> int:
    """Largest e with base**e <= value (value >= 1)."""
    e = 0
    acc = base
    while acc <= value:
        acc *= base
        e += 1
    return e


def alt_denominator_bound(op: MahlerOperator) -> Poly:
    """Coarser denominator bound: a product of iterated Gräffe images of
    the leading coefficient.  Returns 1 outright when the leading degree
    rules out nonconstant rational solutions."""
    if not op or not op.coefficient(0):
        raise ValueError("requires nonzero trailing and leading coefficients")
    r = op.order
    if r < 1:
        raise ValueError("requires order >= 1")
    b = op.radix
    lead = op.coeffs[r]
    if lead.degree < b ** (r - 1):
        return Poly.one()
    cap = _integer_log(b, 3 * lead.degree) - r
    result = Poly.one()
    image = graeffe(lead, b, r) if cap >= 0 else None
    for k in range(cap + 1):
        result = result * image
        if k < cap:
            image = graeffe(image, b)
    return result.monic()


def rational_basis(op: MahlerOperator, auto_normalize: bool = True) -> SolutionBasis:
    """Basis of the rational-function solutions.

    Change of unknown y = p / (x^v_bar q_star) turns the problem into a
    bounded-degree polynomial solve for p.
    """
    op = _solving_operator(op, auto_normalize)
    kind = "rational_basis"
    r = op.order
    if r < 1:
        return SolutionBasis(kind, ())
    b = op.radix
    delta = op.degree
    if delta < b ** (r - 1):
        total = Poly.zero()
        for _, c in op.nonzero_coefficients():
            total = total + c
        if not total:
            return SolutionBasis(kind, (RationalFunction.constant(1),))
        return SolutionBasis(kind, ())

    bound = denominator_bound(op)
    q_star, v_bar = bound.q_star, bound.v_bar
    shift_base = (b * delta) // (b - 1)
    orbit = [mahler_substitute(q_star, b, i) if i else q_star for i in range(r + 1)]
    coeffs = []
    for k in range(r + 1):
        lk = op.coefficient(k)
        if not lk:
            coeffs.append(Poly.zero())
            continue
        cofactor = Poly.one()
        for i in range(r + 1):
            if i != k:
                cofactor = cofactor * orbit[i]
        coeffs.append(lk.shift(shift_base - b**k * v_bar) * cofactor)
    aux = MahlerOperator(b, coeffs)

    w = q_star.degree + 2 * v_bar + 1
    numerators = polynomial_solutions_bounded(aux, w, auto_normalize=False)
    elements = [RationalFunction.make(p, v_bar, q_star) for p in numerators.elements]
    return SolutionBasis(kind, _canonicalize_rational(elements))


def _canonicalize_rational(elements: list[RationalFunction]) -> tuple:
    """Echelon form on expansions: distinct leading exponents ascending,
    leading coefficient one, later pivots eliminated from earlier rows."""
    work = [e for e in elements if not e.is_zero()]
    if not work:
        return ()
    # Triangularize by valuation.
    done: list[RationalFunction] = []
    while work:
        work.sort(key=lambda f: f.valuation)
        head = work.pop(0)
        head = head.scale(1 / head.laurent_coefficients(head.valuation, head.valuation + 1)[0])
        reduced = []
        for f in work:
            if f.valuation == head.valuation:
                c = f.laurent_coefficients(f.valuation, f.valuation + 1)[0]
                g = f + head.scale(-c)
                if not g.is_zero():
                    reduced.append(g)
            else:
                reduced.append(f)
        done.append(head)
        work = reduced
    # Back-substitution: clear each pivot exponent from the earlier rows.
    for i in range(len(done)):
        for j in range(i + 1, len(done)):
            pv = done[j].valuation
            c = done[i].laurent_coefficients(pv, pv + 1)[0]
            if c:
                done[i] = done[i] + done[j].scale(-c)
    return tuple(done)


def ramified_rational_basis(op: MahlerOperator, order_hint=None) -> SolutionBasis:
    """Basis of solutions that are rational functions of some x^(1/N).

    The M-valuation is stripped, the variable is rescaled to make every
    admissible ramified slope integral, and the plain rational solver
    runs on the rescaled equation.
    """
    del order_hint  # accepted for interface symmetry; the solve is exact
    if not op:
        raise ValueError("zero operator")
    kind = "ramified_rational_basis"
    w0 = op.m_valuation
    if w0:
        op = op.m_shift(-w0)
    if op.order == 0:
        return SolutionBasis(kind, ())
    scale = op.radix**w0
    _, n = ramification_data(op)
    if n == 1 and scale == 1:
        inner = rational_basis(op)
        return SolutionBasis(
            kind,
            tuple(RamifiedRationalFunction(1, f) for f in inner.elements),
        )
    gamma = n * min(c.valuation for _, c in op.nonzero_coefficients())
    rescaled = phi_apply(op, PhiTransform(0, n, gamma))
    inner = rational_basis(rescaled)
    out_ram = n * scale
    return SolutionBasis(
        kind,
        tuple(RamifiedRationalFunction(out_ram, f) for f in inner.elements),
    )


@dataclass(frozen=True)
class TranscendenceVerdict:
    verdict: str  # "rational" | "transcendental"
    witness: Optional[RationalFunction]
    method: str  # "rational-basis" | "bell-coons"


def _consistent_extension(
    op: MahlerOperator, prefix: Sequence[Fraction], length: int
) -> list[Fraction]:
    """Check the prefix against the series solutions and extend it to the
    requested length; raises when no solution matches."""
    if op.order < 1:
        if any(prefix):
            raise InconsistentPrefixError("prefix extends to no series solution")
        return [_ZERO] * max(length, len(prefix))
    approx = approximate_series_basis(op, auto_normalize=False)
    nu, _ = mu_nu(op)
    head = math.floor(nu) + 1 if nu >= 0 else 0
    if len(prefix) < max(head, 1):
        raise InsufficientPrefixError(
            f"need at least {max(head, 1)} coefficients, got {len(prefix)}"
        )
    target = max(length, len(prefix))
    expanded = []
    for elem in approx.elements:
        extra = max(0, target - 1 - math.floor(nu))
        expanded.append(prolong(op, IDENTITY_PHI, list(elem.coefficients), extra))
    window = len(prefix)
    rows = [[exp[i] for exp in expanded] for i in range(window)]
    combo = solve(rows, list(prefix[:window])) if expanded else None
    if expanded and combo is not None:
        candidate = [
            sum((c * exp[i] for c, exp in zip(combo, expanded)), _ZERO)
            for i in range(window)
        ]
        if candidate != list(prefix[:window]):
            combo = None
    if combo is None:
        if any(prefix):
            raise InconsistentPrefixError("prefix extends to no series solution")
        return [_ZERO] * target
    return [
        sum((c * exp[i] for c, exp in zip(combo, expanded)), _ZERO)
        for i in range(target)
    ]


def transcendence_test(
    op: MahlerOperator, prefix: Sequence[Fraction], auto_normalize: bool = True
) -> TranscendenceVerdict:
    """Decide whether the series solution identified by the prefix is a
    rational function (with witness) or transcendental.

    Solutions of a linear Mahler equation are never algebraic irrational,
    so the verdict is a dichotomy.
    """
    op = _solving_operator(op, auto_normalize)
    prefix = [Fraction(c) for c in prefix]
    series = _consistent_extension(op, prefix, len(prefix))
    if not any(series):
        return TranscendenceVerdict("rational", RationalFunction.constant(0), "rational-basis")

    basis = rational_basis(op, auto_normalize=False)
    candidates = [f for f in basis.elements]
    if not candidates:
        return TranscendenceVerdict("transcendental", None, "rational-basis")
    lo = min(0, min(f.valuation for f in candidates))
    hi = len(series)
    expansions = [f.laurent_coefficients(lo, hi) for f in candidates]
    rhs = [_ZERO] * (0 - lo) + list(series)
    rows = [[exp[i] for exp in expansions] for i in range(hi - lo)]
    combo = solve(rows, rhs)
    if combo is not None:
        check = [
            sum((c * exp[i] for c, exp in zip(combo, expansions)), _ZERO)
            for i in range(hi - lo)
        ]
        if check != rhs:
            combo = None
    if combo is None:
        return TranscendenceVerdict("transcendental", None, "rational-basis")
    witness = RationalFunction.constant(0)
    for c, f in zip(combo, candidates):
        if c:
            witness = witness + f.scale(c)
    return TranscendenceVerdict("rational", witness, "rational-basis")


def bell_coons_dimensions(op: MahlerOperator) -> tuple[int, int]:
    """(kappa, bound) such that the rank test needs the Hankel-style
    matrix with kappa+1 rows and bound+1 columns."""
    if not op or not op.coefficient(0):
        raise ValueError("requires a nonzero trailing coefficient")
    r = op.order
    if r < 1:
        raise ValueError("requires order >= 1")
    b = op.radix
    d = op.degree
    kappa1 = (b - 1) * d // (b ** (r + 1) - 2 * b**r + 1)
    kappa2 = d // ((b - 1) * b ** (r - 1))
    kappa = kappa1 + kappa2 + 1
    bound = d + kappa * (b ** (r + 1) - 1) // (b - 1)
    return kappa, bound


def bell_coons_rank(op: MahlerOperator, series: Sequence[Fraction]) -> bool:
    """Hankel-rank transcendence test: True means transcendental.

    Needs at least kappa + bound + 1 coefficients of a true series
    solution; the matrix (y_{i+j}) is full rank exactly when the function
    is not rational.
    """
    kappa, bound = bell_coons_dimensions(op)
    series = [Fraction(c) for c in series]
    if len(series) < kappa + bound + 1:
        raise InsufficientPrefixError(
            f"need {kappa + bound + 1} coefficients, got {len(series)}"
        )
    matrix = [[series[i + j] for j in range(bound + 1)] for i in range(kappa + 1)]
    return rank(matrix) == kappa + 1
