"""Exact linear systems over a number field, optionally restricted to rational unknowns."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import matrices as mx
from .matrices import Matrix
from .numberfield import NumberField, NumberFieldElement


@dataclass(frozen=True)
class SolutionSpace:
    """``particular + span(kernel)``; ``particular`` is a column vector per right-hand side."""

    particular: Matrix
    kernel: tuple

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    @property
    def unique(self) -> bool:
        return not self.kernel


def flatten_rows(rows: Sequence[Sequence[NumberFieldElement]], k: NumberField) -> Matrix:
    """Expand each field-valued linear form into ``k.degree`` rational forms."""
    out = []
    for row in rows:
        coords = [k.coerce(x).coords for x in row]
        for t in range(k.degree):
            out.append(tuple(c[t] for c in coords))
    return tuple(out)


def solve_linear(
    a: Matrix,
    b: Matrix,
    k: NumberField,
    rational: bool = False,
) -> Optional[SolutionSpace]:
    """Solve ``a x = b`` exactly over ``k`` (or over Q with ``rational=True``).

    ``b`` is a matrix of right-hand sides. Returns ``None`` for an
    inconsistent system. In rational mode the unknowns are restricted to Q
    and every field equation is split into its rational coordinates.
    """
    if rational:
        fa = flatten_rows(a, k)
        fb = flatten_rows(b, k)
        res = mx.solve(fa, fb)
        if res is None:
            return None
        return SolutionSpace(res[0], tuple(res[1]))
    ka = mx.to_matrix(a, k.coerce)
    kb = mx.to_matrix(b, k.coerce)
    res = mx.solve(ka, kb, one=k.one, zero=k.zero)
    if res is None:
        return None
    return SolutionSpace(res[0], tuple(res[1]))


def rational_kernel(a: Matrix, k: NumberField) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x in Q^n : a x = 0}`` for a field matrix ``a``."""
    return mx.kernel(flatten_rows(a, k))
