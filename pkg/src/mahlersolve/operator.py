"""Linear Mahler operators: sums of polynomial coefficients times powers
of the radix-b substitution map M, with the commutation rule M x = x^b M.

The coefficient of M^k sits at index k of ``coeffs``; the zero operator
is the empty tuple.  Operator application, multiplication, fraction-free
right pseudo-division, exponent substitutions, sections, interreduction,
and content normalization all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import poly as P
from .errors import NegativeExponentError
from .poly import Poly, checked_power, mahler_substitute, poly_sections

_ZERO = Fraction(0)


class MahlerOperator:
    __slots__ = ("radix", "coeffs")

    def __init__(self, radix: int, coeffs: Iterable[Poly] = ()):
        if radix < 2:
            raise ValueError("radix must be >= 2")
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "radix", radix)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_dict(cls, radix: int, coeffs: Mapping[int, Poly]) -> "MahlerOperator":
        if not coeffs:
            return cls(radix)
        top = max(coeffs)
        return cls(radix, [coeffs.get(k, Poly.zero()) for k in range(top + 1)])

    @classmethod
    def zero(cls, radix: int) -> "MahlerOperator":
        return cls(radix)

    @classmethod
    def identity(cls, radix: int) -> "MahlerOperator":
        return cls(radix, [Poly.one()])

    @classmethod
    def m_power(cls, radix: int, k: int) -> "MahlerOperator":
        return cls(radix, [Poly.zero()] * k + [Poly.one()])

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def order(self) -> int:
        """Largest M-power with nonzero coefficient; -1 for zero."""
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Largest coefficient degree; -1 for zero."""
        return max((c.degree for c in self.coeffs if c), default=-1)

    @property
    def m_valuation(self) -> int:
        """Least k with a nonzero coefficient of M^k."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("zero operator has no M-valuation")

    def coefficient(self, k: int) -> Poly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Poly.zero()

    def nonzero_coefficients(self) -> list[tuple[int, Poly]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def __eq__(self, other) -> bool:
        if isinstance(other, MahlerOperator):
            return self.radix == other.radix and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.radix, self.coeffs))

    def sort_key(self):
        """Deterministic total order used by the interreduction loops."""
        return (
            -self.order,
            self.degree,
            tuple((k, c.terms) for k, c in self.nonzero_coefficients()),
        )

    # -- ring operations ----------------------------------------------------

    def _require_same_radix(self, other: "MahlerOperator") -> None:
        if self.radix != other.radix:
            from .errors import MixedRadixError

            raise MixedRadixError(f"radix {self.radix} vs {other.radix}")

    def __add__(self, other: "MahlerOperator") -> "MahlerOperator":
        if not isinstance(other, MahlerOperator):
            return NotImplemented
        self._require_same_radix(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return MahlerOperator(
            self.radix,
            [self.coefficient(k) + other.coefficient(k) for k in range(n)],
        )

    def __neg__(self) -> "MahlerOperator":
        return MahlerOperator(self.radix, [-c for c in self.coeffs])

    def __sub__(self, other: "MahlerOperator") -> "MahlerOperator":
        return self + (-other)

    def __mul__(self, other) -> "MahlerOperator":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            # self * (other as a multiplication operator)
            return self * MahlerOperator(self.radix, [other])
        if not isinstance(other, MahlerOperator):
            return NotImplemented
        self._require_same_radix(other)
        if not self or not other:
            return MahlerOperator.zero(self.radix)
        acc: dict[int, Poly] = {}
        for k, a in self.nonzero_coefficients():
            for kk, bb in other.nonzero_coefficients():
                moved = mahler_substitute(bb, self.radix, k) if k else bb
                key = k + kk
                acc[key] = acc.get(key, Poly.zero()) + a * moved
        return MahlerOperator.from_dict(self.radix, acc)

    def __rmul__(self, other) -> "MahlerOperator":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            # (poly) * operator: plain coefficient-wise multiplication
            return MahlerOperator(self.radix, [other * c for c in self.coeffs])
        return NotImplemented

    def scale(self, c) -> "MahlerOperator":
        return MahlerOperator(self.radix, [p.scale(c) for p in self.coeffs])

    def m_shift(self, delta: int) -> "MahlerOperator":
        """Multiply by M^delta on the right: shift all M-exponents by delta."""
        if not self or delta == 0:
            return self
        if delta > 0:
            return MahlerOperator(self.radix, (Poly.zero(),) * delta + self.coeffs)
        if self.m_valuation < -delta:
            raise ValueError("m_shift below M-valuation")
        return MahlerOperator(self.radix, self.coeffs[-delta:])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in reversed(self.nonzero_coefficients()):
            m = "" if k == 0 else ("M" if k == 1 else f"M^{k}")
            body = str(c)
            if m:
                body = f"({body})*{m}" if len(c.terms) > 1 or body.startswith("-") else f"{body}*{m}"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MahlerOperator(radix={self.radix}, order={self.order}, degree={self.degree})"


# -- application -------------------------------------------------------------


def apply_to_coeffs(
    op: MahlerOperator, coeffs: Sequence[Fraction], limit: int
) -> dict[int, Fraction]:
    """Sparse coefficients of op applied to sum(coeffs[n] x^n), mod x^limit."""
    acc: dict[int, Fraction] = {}
    b = op.radix
    for k, lk in op.nonzero_coefficients():
        bk = b**k
        for j, c in lk.terms:
            if j >= limit:
                break
            for n, yn in enumerate(coeffs):
                if not yn:
                    continue
                m = j + bk * n
                if m >= limit:
                    break
                s = acc.get(m, _ZERO) + c * yn
                if s:
                    acc[m] = s
                elif m in acc:
                    del acc[m]
    return acc


def apply_truncated(op: MahlerOperator, coeffs: Sequence[Fraction], limit: int) -> list[Fraction]:
    """Dense coefficients 0..limit-1 of op applied to the given polynomial."""
    sparse = apply_to_coeffs(op, coeffs, limit)
    out = [_ZERO] * limit
    for m, c in sparse.items():
        out[m] = c
    return out


def apply_to_poly(op: MahlerOperator, p: Poly) -> Poly:
    """Exact image of a polynomial under the operator."""
    result = Poly.zero()
    for k, lk in op.nonzero_coefficients():
        img = mahler_substitute(p, op.radix, k) if k else p
        result = result + lk * img
    return result


# -- right pseudo-division ----------------------------------------------------


def right_divide(
    a: MahlerOperator, b: MahlerOperator
) -> tuple[Poly, MahlerOperator, MahlerOperator]:
    """Fraction-free right pseudo-division.

    Returns (c, q, r) with c a nonzero polynomial, c*a = q*b + r and
    order(r) < order(b).  b right-divides a exactly when r = 0.
    """
    if not b:
        raise ValueError("right division by the zero operator")
    a._require_same_radix(b)
    radix = a.radix
    c = Poly.one()
    q = MahlerOperator.zero(radix)
    r = a
    nb = b.order
    lead_b = b.coeffs[-1]
    while r and r.order >= nb:
        k = r.order - nb
        g = mahler_substitute(lead_b, radix, k) if k else lead_b
        top = r.coeffs[-1]
        step = MahlerOperator.from_dict(radix, {k: top})
        r = (g * r) - (step * b)
        q = (g * q) + step
        c = g * c
        if r and r.order >= nb + k:
            raise AssertionError("pseudo-division failed to reduce the order")
    return c, q, r


# -- exponent substitutions ----------------------------------------------------


@dataclass(frozen=True)
class PhiTransform:
    """Exponent map x^j M^k -> x^(alpha*b^k + beta*j - gamma) M^k.

    beta must be positive and coprime to the radix; the operator it is
    applied to must come out with nonnegative exponents.
    """

    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if self.beta < 1:
            raise ValueError("beta must be positive")

    def exponent(self, radix: int, k: int, j: int) -> int:
        return self.alpha * checked_power(radix, k) + self.beta * j - self.gamma

    def is_identity(self) -> bool:
        return self.alpha == 0 and self.beta == 1 and self.gamma == 0

    def validate_for(self, radix: int) -> None:
        from math import gcd

        if gcd(self.beta, radix) != 1:
            raise ValueError(f"beta={self.beta} is not coprime to radix {radix}")


IDENTITY_PHI = PhiTransform(0, 1, 0)


def phi_apply(op: MahlerOperator, phi: PhiTransform) -> MahlerOperator:
    """Apply the exponent map to every monomial of the operator."""
    phi.validate_for(op.radix)
    if phi.is_identity():
        return op
    out = []
    for k, lk in enumerate(op.coeffs):
        terms = []
        for j, c in lk.terms:
            e = phi.exponent(op.radix, k, j)
            if e < 0:
                raise NegativeExponentError(
                    f"x^{j} M^{k} maps to exponent {e} < 0 under {phi}"
                )
            terms.append((e, c))
        out.append(Poly(terms))
    return MahlerOperator(op.radix, out)


# -- sections, interreduction, content ------------------------------------------


def operator_section(op: MahlerOperator, i: int) -> MahlerOperator:
    """Section map: x^j M^(k+1) -> x^((j-i)/b) M^k when b | j-i, else 0.

    Terms of M-degree zero are annihilated.
    """
    b = op.radix
    if not 0 <= i < b:
        raise ValueError(f"section index {i} out of range for radix {b}")
    out: dict[int, Poly] = {}
    for k, lk in op.nonzero_coefficients():
        if k == 0:
            continue
        section = poly_sections(lk, b)[i]
        if section:
            out[k - 1] = section
    return MahlerOperator.from_dict(op.radix, out)


def operator_sections(op: MahlerOperator) -> list[MahlerOperator]:
    return [operator_section(op, i) for i in range(op.radix)]


def interreduce(op1: MahlerOperator, op2: MahlerOperator) -> MahlerOperator:
    """c2*op1 - c1*op2 where c1, c2 are the M^0 coefficients.

    Both operators must be nonzero with M-valuation 0; the result has a
    zero M^0 coefficient, hence is zero or has positive M-valuation.
    """
    op1._require_same_radix(op2)
    if not op1 or not op2 or op1.m_valuation != 0 or op2.m_valuation != 0:
        raise ValueError("interreduce requires nonzero operators of M-valuation 0")
    c1 = op1.coeffs[0]
    c2 = op2.coeffs[0]
    return (c2 * op1) - (c1 * op2)


def primitive_part(op: MahlerOperator) -> tuple[Poly, MahlerOperator]:
    """Factor op = content * primitive.

    The content is the monic gcd of the coefficients scaled so that the
    primitive part has a monic leading coefficient.
    """
    if not op:
        raise ValueError("primitive part of the zero operator")
    g = P.gcd_all(c for c in op.coeffs if c)
    reduced = [c.exact_div(g) if c else c for c in op.coeffs]
    lam = reduced[-1].leading_coefficient
    if lam != 1:
        reduced = [c.scale(1 / lam) for c in reduced]
        g = g.scale(lam)
    return g, MahlerOperator(op.radix, reduced)
