"""Multiplier rings, scaling-factor modules and the scal-coset group.

For a module with Gram matrix ``G`` and generator matrix ``W`` (never
stored), a rational k x k matrix ``B`` represents multiplication by a real
scalar ``beta`` iff ``W B = beta W``, which is equivalent to
``G B = beta G``. Likewise an integral ``B`` represents ``beta R`` for the
isometry ``R`` of a similarity map ``(A, s)`` iff ``G B = lam G A`` with
``beta = lam * sqrt(s)``. Both conditions are linear in ``(B, beta)`` or
``(B, lam)``, so everything reduces to a rational kernel followed by
integral saturation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional

from . import matrices as mx
from . import normalforms as nf
from . import polys
from .gram import GramModule
from .linalg import flatten_rows
from .maps import (
    AnyMap,
    ModuleMismatchError,
    ScaleValue,
    SimilarityMap,
    as_similarity,
)
from .matrices import Matrix
from .numberfield import NumberField, NumberFieldElement, minimal_polynomial


class InvariantFailure(AssertionError):
    """A structural property that must hold by theory failed (indicates a bug)."""


def _solve_scalar_line(m: GramModule, target: Matrix) -> list[tuple[Matrix, NumberFieldElement]]:
    """Z-basis of integral ``B`` with ``G B = lam * target`` for some ``lam`` in the field.

    Returns pairs ``(B, lam)``. ``target`` is ``G`` (multiplier ring) or ``G A``.
    """
    k = m.field
    n = m.rank
    theta_pows = [k.element([int(t == j) for t in range(k.degree)]) for j in range(k.degree)]
    rows = []
    for i in range(n):
        for j in range(n):
            row = [k.zero] * (n * n + k.degree)
            for l in range(n):
                row[l * n + j] = m.gram[i][l]
            for t in range(k.degree):
                row[n * n + t] = -(theta_pows[t] * target[i][j])
            rows.append(row)
    ker = mx.kernel(flatten_rows(rows, k))
    b_parts = [v[: n * n] for v in ker]
    if not b_parts:
        return []
    # the scalar is determined by B since target != 0, so saturating the B-part suffices
    basis = nf.saturation(b_parts)
    pivot = next((i, j) for i in range(n) for j in range(n) if target[i][j] != 0)
    out = []
    for vec in basis:
        b = tuple(tuple(vec[r * n : (r + 1) * n]) for r in range(n))
        gb = mx.matmul(m.gram, mx.to_matrix(b, k.coerce))
        lam = gb[pivot[0]][pivot[1]] / target[pivot[0]][pivot[1]]
        out.append((b, lam))
    return out


def _canonical_order(pairs: list[tuple[Matrix, NumberFieldElement]], k: NumberField):
    """Re-basis so that the scalars' coordinates are in column HNF (identity first for Z)."""
    if not pairs:
        return pairs
    coords = mx.from_columns([lam.coords for _, lam in pairs])
    d = mx.denominator_lcm(coords)
    ci = mx.to_int(mx.scale(coords, d))
    h, u, piv = nf.column_echelon(ci)
    r = len(pairs)
    new = []
    for c in range(r):
        b = mx.zeros(*mx.shape(pairs[0][0]))
        lam = k.zero
        for i in range(r):
            f = u[i][c]
            if f:
                b = mx.add(b, mx.scale(pairs[i][0], f))
                lam = lam + pairs[i][1] * f
        new.append((b, lam))
    return new


@dataclass(frozen=True)
class MultiplierRing:
    """Z-basis ``(A_i, alpha_i)`` of ``{alpha : alpha M ⊆ M}`` with ``G A_i = alpha_i G``."""

    module: GramModule
    basis: tuple
    checks: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def scalars(self) -> list[NumberFieldElement]:
        return [alpha for _, alpha in self.basis]

    def coordinates(self, x: NumberFieldElement) -> Optional[tuple[Fraction, ...]]:
        """Rational coordinates of ``x`` in the scalar basis, or ``None`` if outside the Q-span."""
        k = self.module.field
        cols = mx.from_columns([a.coords for a in self.scalars])
        rhs = tuple((c,) for c in k.coerce(x).coords)
        res = mx.solve(cols, rhs)
        if res is None:
            return None
        return tuple(row[0] for row in res[0])

    def contains(self, x: NumberFieldElement) -> bool:
        c = self.coordinates(x)
        return c is not None and all(v.denominator == 1 for v in c)

    def in_quotient_field(self, x: NumberFieldElement) -> bool:
        # an order's Q-span is its field of fractions
        return self.coordinates(x) is not None

    def coordinate_matrix(self, x: NumberFieldElement) -> Optional[Matrix]:
        """Rational matrix of multiplication by ``x`` (``x`` in the quotient field)."""
        c = self.coordinates(x)
        if c is None:
            return None
        n = self.module.rank
        out = mx.zeros(n, n, Fraction(0))
        for q, (a, _) in zip(c, self.basis):
            if q:
                out = mx.add(out, mx.scale(a, q))
        return out

    def minimal_polynomials(self) -> list[tuple]:
        return [minimal_polynomial(a) for a in self.scalars]


def _ring_checks(ring: MultiplierRing) -> dict:
    m = ring.module
    k_rank, d = m.rank, m.ambient_dim
    scal = ring.scalars
    closure = all(ring.contains(a * b) for a in scal for b in scal)
    return {
        "unity": ring.contains(m.field.one),
        "closure": closure,
        "algebraic_integers": all(polys.is_integral(p) for p in ring.minimal_polynomials()),
        "rank_divides_k": k_rank % ring.rank == 0,
        "rank_at_most_k_over_d": ring.rank <= k_rank // d,
    }


@lru_cache(maxsize=256)
def multiplier_ring(m: GramModule) -> MultiplierRing:
    pairs = _canonical_order(_solve_scalar_line(m, m.gram), m.field)
    ring = MultiplierRing(m, tuple(pairs))
    ring.checks.update(_ring_checks(ring))
    if not (ring.checks["unity"] and ring.checks["closure"]):
        raise InvariantFailure(f"multiplier ring of {m!r} failed {ring.checks}")
    return ring


def in_scal_field(m: GramModule, x: ScaleValue) -> bool:
    """Whether ``x`` lies in the quotient field of the multiplier ring."""
    if not x.in_field():
        return False
    return multiplier_ring(m).in_quotient_field(x.c)


@dataclass(frozen=True)
class ScalModule:
    """Z-basis ``(B_i, beta_i)`` of ``Scal(R) = {beta : beta R M ⊆ M}``."""

    map: SimilarityMap
    basis: tuple  # (B, ScaleValue)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def scalars(self) -> list[ScaleValue]:
        return [b for _, b in self.basis]

    def _coords(self, b: Matrix) -> Optional[tuple]:
        cols = mx.from_columns([tuple(x for row in bi for x in row) for bi, _ in self.basis])
        rhs = tuple((Fraction(x),) for row in b for x in row)
        res = mx.solve(cols, rhs)
        if res is None:
            return None
        return tuple(r[0] for r in res[0])

    def contains_matrix(self, b: Matrix) -> bool:
        c = self._coords(b)
        return c is not None and all(v.denominator == 1 for v in c)

    def stable_under_ring(self) -> bool:
        """``beta * Scal(R) ⊆ Scal(R)`` for every multiplier-ring basis scalar."""
        ring = multiplier_ring(self.map.module)
        return all(
            self.contains_matrix(mx.matmul(b, a)) for b, _ in self.basis for a, _ in ring.basis
        )

    def free_generator(self, search: int = 2) -> Optional[ScaleValue]:
        """A generator ``alpha`` with ``Scal(R) = alpha * ring``, searched among small combinations."""
        ring = multiplier_ring(self.map.module)
        if ring.rank != self.rank:
            return None
        for coeffs in product(range(-search, search + 1), repeat=self.rank):
            if not any(coeffs):
                continue
            b = mx.zeros(*mx.shape(self.basis[0][0]))
            beta = ScaleValue(0, 1, self.map.module.field)
            for c, (bi, si) in zip(coeffs, self.basis):
                if c:
                    b = mx.add(b, mx.scale(bi, c))
                    beta = beta + si * c
            images = [self._coords(mx.matmul(b, a)) for a, _ in ring.basis]
            if any(img is None for img in images):
                continue
            if abs(mx.det(mx.from_columns(images))) == 1:
                return beta if beta.sign() > 0 else -beta
        return None


def scal_module_of_map(f: AnyMap) -> ScalModule:
    sf = f if isinstance(f, SimilarityMap) else as_similarity(f)
    m = sf.module
    k = m.field
    target = mx.matmul(m.gram, mx.to_matrix(sf.matrix, k.coerce))
    pairs = _canonical_order(_solve_scalar_line(m, target), k)
    root = ScaleValue(1, sf.s, k)
    basis = tuple((b, root * lam) for b, lam in pairs)
    return ScalModule(sf, basis)


@dataclass(frozen=True)
class ScalCoset:
    """Class of ``representative`` modulo the positive part of the scal field."""

    module: GramModule
    representative: ScaleValue

    def __mul__(self, other: "ScalCoset") -> "ScalCoset":
        return coset_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalCoset):
            return NotImplemented
        return coset_eq(self, other)

    def __hash__(self):  # equality is not structural
        return hash(self.module)

    def is_unit(self) -> bool:
        return coset_eq(self, unit_coset(self.module))

    def inverse(self) -> "ScalCoset":
        return ScalCoset(self.module, ScaleValue(1, 1, self.module.field) / self.representative)

    def __pow__(self, e: int) -> "ScalCoset":
        return ScalCoset(self.module, self.representative**e)

    def __str__(self) -> str:
        return f"[{self.representative}]"


def unit_coset(m: GramModule) -> ScalCoset:
    return ScalCoset(m, ScaleValue(1, 1, m.field))


def coset_of(f: AnyMap) -> ScalCoset:
    sf = f if isinstance(f, SimilarityMap) else as_similarity(f)
    return ScalCoset(sf.module, sf.scale)


def coset_mul(a: ScalCoset, b: ScalCoset) -> ScalCoset:
    if a.module != b.module:
        raise ModuleMismatchError("cosets of different modules")
    return ScalCoset(a.module, a.representative * b.representative)


def coset_eq(a: ScalCoset, b: ScalCoset) -> bool:
    if a.module != b.module:
        raise ModuleMismatchError("cosets of different modules")
    ratio = a.representative / b.representative
    return in_scal_field(a.module, ratio)


def phi_kernel_test(f: AnyMap) -> bool:
    """Whether ``f`` lies in the kernel of ``R -> scal(R) ∩ R+``."""
    return coset_of(f).is_unit()


@dataclass(frozen=True)
class DegreeReport:
    value: ScaleValue
    min_poly: tuple
    degree: int
    bound: int
    monic_integral: bool

    @property
    def ok(self) -> bool:
        return self.monic_integral and self.degree <= self.bound

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "min_poly": polys.to_str(self.min_poly),
            "degree": self.degree,
            "bound": self.bound,
            "monic_integral": self.monic_integral,
            "ok": self.ok,
        }


def degree_check(x: ScaleValue, k: int) -> DegreeReport:
    p = x.minimal_polynomial()
    return DegreeReport(x, p, polys.degree(p), k * (k - 1), polys.is_integral(p))


def ring_report(ring: MultiplierRing) -> dict:
    return {
        "module": ring.module.label,
        "rank": ring.rank,
        "k": ring.module.rank,
        "d": ring.module.ambient_dim,
        "basis": [
            {
                "matrix": [[str(x) for x in row] for row in a],
                "scalar": alpha.to_json(),
                "min_poly": polys.to_str(minimal_polynomial(alpha)),
            }
            for a, alpha in ring.basis
        ],
        "checks": dict(ring.checks),
    }
