"""Splitting operators with zero trailing coefficient into systems of
M-valuation 0, reduction of such systems to a single equivalent
equation, and gcrd computation for operator families.

Splitting replaces an operator of positive M-valuation by its sections,
which preserves the unramified series solutions; interreduction kills
the M^0 term of one member so that splitting applies again.  The loop
terminates because along any chain two interreductions are separated by
a section, and sections strictly decrease the order.
"""

from __future__ import annotations

from .errors import InternalInvariantError, MixedRadixError
from .operator import (
    MahlerOperator,
    interreduce,
    operator_sections,
    primitive_part,
)
from .poly import Poly


def split(op: MahlerOperator) -> list[MahlerOperator]:
    """Replace op by an equivalent family of operators of M-valuation 0.

    All members have order at most order - w and degree at most
    degree / b^w, where w is the M-valuation of op.
    """
    if not op:
        raise ValueError("cannot split the zero operator")
    if op.m_valuation == 0:
        return [op]
    sections = operator_sections(op)
    if __debug__:
        total = MahlerOperator.zero(op.radix)
        m = MahlerOperator.m_power(op.radix, 1)
        for i, s in enumerate(sections):
            total = total + MahlerOperator(op.radix, [Poly.monomial(i)]) * m * s
        assert total == op, "section reconstruction failed"
    members = []
    for section in sections:
        if section:
            members.extend(split(section))
    return members


def _reduction_cap(ops: list[MahlerOperator]) -> int:
    r = max(op.order for op in ops)
    b = ops[0].radix
    return 64 + b ** (2 * (r + 2))


def _reduce_to_singleton(worklist: list[MahlerOperator]) -> MahlerOperator:
    """Interreduce a family of M-valuation-0 operators to one operator.

    Deterministic choice: the worklist is ordered by (order descending,
    degree ascending, term data); the first element is reduced against
    the second.
    """
    cap = _reduction_cap(worklist)
    steps = 0
    while len(worklist) > 1:
        steps += 1
        if steps > cap:
            raise InternalInvariantError("interreduction loop exceeded its bound")
        worklist.sort(key=MahlerOperator.sort_key)
        first, second = worklist[0], worklist[1]
        reduced = interreduce(first, second)
        replacement = split(reduced) if reduced else []
        worklist = worklist[1:] + replacement
    return worklist[0]


def normalize_l0_raw(op: MahlerOperator) -> MahlerOperator:
    """Single operator with M-valuation 0 and the same series solutions,
    as produced by the interreduction loop (no normalization applied)."""
    if not op:
        raise ValueError("cannot normalize the zero operator")
    return _reduce_to_singleton(split(op))


def normalize_l0(op: MahlerOperator) -> MahlerOperator:
    """Like normalize_l0_raw but in primitive, monic-leading form."""
    return primitive_part(normalize_l0_raw(op))[1]


def _common_m_valuation(ops: list[MahlerOperator]) -> int:
    return min(op.m_valuation for op in ops)


def gcrd_raw(ops: list[MahlerOperator]) -> MahlerOperator:
    """A greatest common right divisor of the family.

    The minimal M-valuation w is factored off on the right, the quotients
    are split and interreduced to a singleton, and M^w is restored.  The
    result right-divides every input and lies in the left ideal the
    inputs generate (over rational-function coefficients).
    """
    if not ops:
        raise ValueError("gcrd of an empty family")
    if any(not op for op in ops):
        raise ValueError("gcrd of a family containing the zero operator")
    radix = ops[0].radix
    if any(op.radix != radix for op in ops):
        raise MixedRadixError("gcrd requires a common radix")
    w = _common_m_valuation(ops)
    worklist = []
    for op in ops:
        worklist.extend(split(op.m_shift(-w)))
    return _reduce_to_singleton(worklist).m_shift(w)


def gcrd(ops: list[MahlerOperator]) -> MahlerOperator:
    """gcrd_raw in primitive, monic-leading canonical form."""
    return primitive_part(gcrd_raw(ops))[1]


def normalization_content(op: MahlerOperator) -> tuple[Poly, MahlerOperator]:
    """(content, primitive) of the raw normalized operator."""
    return primitive_part(normalize_l0_raw(op))
