"""Row-sparse finite slices of the infinite recurrence matrix of an
operator, the prescribed-support kernel solver, and term-by-term
prolongation of approximate series solutions.

Extracting the coefficient of x^m from (phi(L)) y = 0 gives one linear
relation between series coefficients; row m, column n of the matrix
holds the coefficient of y_n in that relation.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IncompatiblePrefixError, InternalInvariantError
from .linalg import kernel_basis, rref
from .newton import mu_nu
from .operator import (
    MahlerOperator,
    PhiTransform,
    apply_to_coeffs,
    phi_apply,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RowSparseMatrix:
    """Rows indexed by labels from E, columns 0..width-1; each row stores
    its nonzero entries as sorted (column, value) pairs.  Immutable."""

    __slots__ = ("row_labels", "width", "rows")

    def __init__(self, row_labels, width, rows):
        self.row_labels = tuple(row_labels)
        self.width = width
        self.rows = tuple(tuple(row) for row in rows)

    def entry(self, i: int, n: int) -> Fraction:
        row = self.rows[i]
        cols = [c for c, _ in row]
        pos = bisect_left(cols, n)
        if pos < len(row) and row[pos][0] == n:
            return row[pos][1]
        return _ZERO

    def row_nonzeros(self, i: int):
        return self.rows[i]

    @property
    def height(self) -> int:
        return len(self.rows)


def build_submatrix(
    op: MahlerOperator,
    phi: PhiTransform,
    width: int,
    row_indices: Sequence[int],
) -> RowSparseMatrix:
    """Rows of the recurrence matrix of phi(op) with the given indices,
    restricted to the first `width` columns.

    The exponent transform is handled by index arithmetic on the original
    coefficients, so the transformed operator is never materialized.  For
    each coefficient of M^k only the stored terms in the right residue
    class modulo b^k are visited, which keeps sparse operators cheap.
    """
    phi.validate_for(op.radix)
    labels = list(row_indices)
    if any(b >= a for a, b in zip(labels[1:], labels)):
        raise ValueError("row indices must be strictly increasing")
    b = op.radix
    rows = []
    for m in labels:
        acc: dict[int, Fraction] = {}
        for k, lk in op.nonzero_coefficients():
            bk = b**k
            base = m + phi.gamma - phi.alpha * bk
            if base < 0:
                continue
            j0 = (pow(phi.beta, -1, bk) * base) % bk if bk > 1 else 0
            low = base - bk * width  # beta*j must satisfy low < beta*j <= base
            for j, c in lk.terms:
                bj = phi.beta * j
                if bj > base:
                    break
                if j % bk != j0 or bj <= low:
                    continue
                n = (base - bj) // bk
                s = acc.get(n, _ZERO) + c
                if s:
                    acc[n] = s
                elif n in acc:
                    del acc[n]
        rows.append(sorted(acc.items()))
    return RowSparseMatrix(labels, width, rows)


def entry_oracle(op: MahlerOperator, phi: PhiTransform, m: int, n: int) -> Fraction:
    """Single matrix entry by direct summation over the operator support."""
    phi.validate_for(op.radix)
    total = _ZERO
    for k, lk in op.nonzero_coefficients():
        bk = op.radix**k
        for j, c in lk.terms:
            if phi.alpha * bk + phi.beta * j - phi.gamma + bk * n == m:
                total += c
    return total


@dataclass(frozen=True)
class KernelBasis:
    """Canonical basis of a kernel of polynomials of degree < width:
    reduced echelon with pivots at the lowest nonzero coefficient, pivot
    coefficients 1, ordered by pivot position."""

    width: int
    vectors: tuple[tuple[Fraction, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)


def _substitute(matrix: RowSparseMatrix, zero_positions: list[int], seed: int, lower: bool):
    """One candidate kernel vector: unit seed at one free position, zero at
    the other free positions, and substitution along the invertible rows.
    Rows with a zero diagonal are skipped; the residual pass picks up the
    equations they stand for."""
    w = matrix.width
    free = set(zero_positions)
    vec: list[Fraction] = [_ZERO] * w
    positions = range(w) if lower else range(w - 1, -1, -1)
    for i in positions:
        if i in free:
            vec[i] = _ONE if i == seed else _ZERO
            continue
        acc = _ZERO
        diag = _ZERO
        for col, val in matrix.row_nonzeros(i):
            if col == i:
                diag = val
            else:
                acc += val * vec[col]
        vec[i] = -acc / diag
    return vec


def solve_prescribed(
    op: MahlerOperator,
    phi: PhiTransform,
    h: int,
    width: int,
    row_indices: Sequence[int],
    orientation: str,
) -> KernelBasis:
    """Basis of {y of degree < width : phi(op) y = 0 mod x^h}.

    The row indices must select a square lower (resp. upper) triangular
    submatrix with at most order-many zeros on the diagonal; candidates
    found by substitution are recombined so that all rows below x^h hold.
    """
    if orientation not in ("lower", "upper"):
        raise ValueError("orientation must be 'lower' or 'upper'")
    lower = orientation == "lower"
    labels = list(row_indices)
    if len(labels) != width:
        raise ValueError("need exactly width row indices")
    if labels and labels[-1] >= h:
        raise ValueError("row indices must be below h")
    matrix = build_submatrix(op, phi, width, labels)

    zero_positions = []
    for i in range(width):
        row = matrix.row_nonzeros(i)
        bad = [c for c, _ in row if (c > i if lower else c < i)]
        if bad:
            raise InternalInvariantError(
                f"row {labels[i]} is not {orientation} triangular (column {bad[0]})"
            )
        if not matrix.entry(i, i):
            zero_positions.append(i)
    if op and len(zero_positions) > op.order:
        raise InternalInvariantError(
            f"{len(zero_positions)} zero diagonal entries exceed the order {op.order}"
        )

    candidates = [
        _substitute(matrix, zero_positions, seed, lower) for seed in zero_positions
    ]
    if not candidates:
        return KernelBasis(width, ())

    transformed = phi_apply(op, phi)
    residuals = [apply_to_coeffs(transformed, g, h) for g in candidates]
    nonzero_rows = sorted(set().union(*[r.keys() for r in residuals]))
    rho = len(candidates)
    s_rows = [[res.get(m, _ZERO) for res in residuals] for m in nonzero_rows]
    kernel = kernel_basis(s_rows, rho)

    combined = []
    for coeffs in kernel:
        vec = [_ZERO] * width
        for c, g in zip(coeffs, candidates):
            if c:
                for idx, val in enumerate(g):
                    if val:
                        vec[idx] += c * val
        combined.append(vec)
    reduced, _ = rref(combined)
    return KernelBasis(width, tuple(tuple(v) for v in reduced))


def prolong(
    op: MahlerOperator,
    phi: PhiTransform,
    approx: Sequence[Fraction],
    extra: int,
) -> list[Fraction]:
    """Extend an approximate series solution of phi(op) by `extra` terms.

    The input must hold the coefficients 0..floor(nu) and satisfy the
    relation rows up to floor(mu); each further row then determines one
    new coefficient by forward substitution.
    """
    if extra < 0:
        raise ValueError("extra must be >= 0")
    transformed = phi_apply(op, phi)
    if transformed.order < 1:
        raise ValueError("prolongation needs an operator of order >= 1")
    nu, mu = mu_nu(transformed)
    head = math.floor(nu) + 1
    if len(approx) != head:
        raise ValueError(f"approximate solution must have exactly {head} coefficients")
    mu_floor = math.floor(mu)
    residual = apply_to_coeffs(transformed, approx, mu_floor + 1)
    if residual:
        bad = min(residual)
        raise IncompatiblePrefixError(
            f"prefix violates the relation for the coefficient of x^{bad}"
        )
    if extra == 0:
        return list(approx)

    l0 = transformed.coeffs[0]
    tv0 = l0.valuation
    diag = l0.trailing_coefficient
    terms = []
    for k, lk in transformed.nonzero_coefficients():
        bk = transformed.radix**k
        for j, c in lk.terms:
            if k == 0 and j == tv0:
                continue
            terms.append((bk, j, c))

    y = list(approx)
    for m in range(mu_floor + 1, mu_floor + extra + 1):
        target = m - tv0
        acc = _ZERO
        for bk, j, c in terms:
            t = m - j
            if t < 0 or t % bk:
                continue
            n = t // bk
            if n >= target:
                raise InternalInvariantError(
                    "prolongation row touched an undetermined coefficient"
                )
            yn = y[n]
            if yn:
                acc += c * yn
        y.append(-acc / diag)
    return y
