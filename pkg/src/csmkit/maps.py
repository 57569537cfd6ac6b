"""Coincidence and similarity isometries in module coordinates.

An isometry ``R`` of the ambient space acts on module coordinates through a
k x k matrix. For a coincidence isometry that matrix ``T`` is rational and
satisfies ``T^T G T = G``. A similarity isometry is stored through the
primitive integral matrix ``A`` of ``sqrt(s) * R`` together with ``s``, where
``A^T G A = s G``; ``R`` itself may have irrational coordinates and is never
materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import matrices as mx
from . import polys
from .gram import GramModule
from .matrices import Matrix, RankError
from .numberfield import NumberField, NumberFieldElement, minimal_polynomial, sqrt_in_field


class NotAnIsometryError(ValueError):
    """Coordinate matrix does not preserve the Gram matrix."""


class NotASimilarityError(ValueError):
    """``A^T G A`` is not a field multiple of ``G``."""


class ModuleMismatchError(ValueError):
    """Maps on different modules were combined."""


class NotRepresentableError(ArithmeticError):
    """Result is not of the form ``c * sqrt(s)`` over the field."""


class UnsupportedModuleError(ValueError):
    """Operation is only defined for lattices (or planar lattices)."""


def _sqrt(s: NumberFieldElement) -> Optional[NumberFieldElement]:
    # cache by (field, coords): equal-looking elements of different fields must not collide
    return _sqrt_cached(s.field, s.coords)


@lru_cache(maxsize=4096)
def _sqrt_cached(field: NumberField, coords: tuple) -> Optional[NumberFieldElement]:
    return sqrt_in_field(field.element(coords))


class ScaleValue:
    """Exact real number ``c * sqrt(s)`` with ``c``, ``s`` in one field and ``s > 0``.

    When ``s`` is a square in the field the root is folded into ``c`` and
    ``s`` becomes 1, so ``in_field`` is an exact test.
    """

    __slots__ = ("c", "s")

    def __init__(self, c, s=1, field: Optional[NumberField] = None):
        if field is None:
            field = next(x.field for x in (c, s) if isinstance(x, NumberFieldElement))
        c, s = field.coerce(c), field.coerce(s)
        sign = s.sign()
        if sign < 0:
            raise ValueError("radicand must be nonnegative")
        if sign == 0 or c.is_zero():
            c, s = field.zero, field.one
        elif s != 1:
            r = _sqrt(s)
            if r is not None:
                c, s = c * r, field.one
        self.c = c
        self.s = s

    @property
    def field(self) -> NumberField:
        return self.c.field

    def in_field(self) -> bool:
        return self.s == 1

    def as_element(self) -> NumberFieldElement:
        if not self.in_field():
            raise NotRepresentableError(f"{self} is not in {self.field!r}")
        return self.c

    def squared(self) -> NumberFieldElement:
        return self.c * self.c * self.s

    def sign(self) -> int:
        return self.c.sign()

    def __mul__(self, other):
        if not isinstance(other, ScaleValue):
            other = ScaleValue(other, 1, self.field)
        return ScaleValue(self.c * other.c, self.s * other.s, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ScaleValue):
            other = ScaleValue(other, 1, self.field)
        if other.c.is_zero():
            raise ZeroDivisionError("division by zero scale")
        # c1 sqrt(s1) / (c2 sqrt(s2)) = (c1 / (c2 s2)) sqrt(s1 s2)
        return ScaleValue(self.c / (other.c * other.s), self.s * other.s, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return ScaleValue(1, 1, self.field) / (self ** (-e))
        out = ScaleValue(1, 1, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __add__(self, other):
        if not isinstance(other, ScaleValue):
            other = ScaleValue(other, 1, self.field)
        if self.c.is_zero():
            return other
        if other.c.is_zero():
            return self
        r = _sqrt(other.s / self.s)
        if r is None:
            raise NotRepresentableError(f"{self} + {other} leaves the form c*sqrt(s)")
        return ScaleValue(self.c + other.c * r, self.s, self.field)

    def __neg__(self):
        return ScaleValue(-self.c, self.s, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaleValue):
            if isinstance(other, (int, Fraction, NumberFieldElement)):
                other = ScaleValue(other, 1, self.field)
            else:
                return NotImplemented
        return self.sign() == other.sign() and self.squared() == other.squared()

    def __hash__(self) -> int:
        return hash((self.sign(), self.squared()))

    def is_positive_integer(self) -> bool:
        if not self.in_field() or not self.c.is_rational():
            return False
        q = self.c.to_fraction()
        return q > 0 and q.denominator == 1

    def to_int(self) -> int:
        if not (self.in_field() and self.c.is_rational() and self.c.to_fraction().denominator == 1):
            raise ValueError(f"{self} is not an integer")
        return int(self.c.to_fraction())

    def minimal_polynomial(self) -> tuple:
        """Minimal polynomial over Q of the real number ``c * sqrt(s)``."""
        if self.in_field():
            return minimal_polynomial(self.c)
        # c*sqrt(s) is outside the field, so its minimal polynomial is p(x^2)
        return polys.compose_square(minimal_polynomial(self.squared()))

    def __str__(self) -> str:
        def fmt(x: NumberFieldElement) -> str:
            t = str(x)
            return t if x.is_rational() and "/" not in t else f"({t})"

        if self.in_field():
            return str(self.c)
        if self.c == 1:
            return f"sqrt{fmt(self.s)}"
        return f"{fmt(self.c)}*sqrt{fmt(self.s)}"

    def __repr__(self) -> str:
        return f"ScaleValue({self})"

    def to_json(self) -> dict:
        return {"c": self.c.to_json(), "s": self.s.to_json(), "text": str(self)}


@dataclass(frozen=True)
class CoincidenceMap:
    module: GramModule
    matrix: Matrix  # rational, T^T G T = G

    @property
    def k(self) -> int:
        return self.module.rank

    def __repr__(self) -> str:
        return f"CoincidenceMap({mx.to_str(self.matrix)})"


@dataclass(frozen=True)
class SimilarityMap:
    module: GramModule
    matrix: Matrix  # primitive integral, A^T G A = s G
    s: NumberFieldElement

    @property
    def scale(self) -> ScaleValue:
        return ScaleValue(1, self.s, self.module.field)

    def __repr__(self) -> str:
        return f"SimilarityMap({mx.to_str(self.matrix)}, s={self.s})"


AnyMap = Union[CoincidenceMap, SimilarityMap]


def _pullback(m: GramModule, a: Matrix) -> Matrix:
    """``A^T G A`` as field elements; plain rational arithmetic for lattices."""
    k = m.field
    ak = mx.to_matrix(a, k.coerce)
    return mx.matmul(mx.matmul(mx.transpose(ak), m.gram), ak)


def _is_lattice_isometry(m: GramModule, n: Matrix, q: int) -> bool:
    """``(n/q)^T G (n/q) == G`` in integer arithmetic."""
    gi, _ = mx.split_denominator(m.rational_gram())
    lhs = mx.matmul(mx.matmul(mx.transpose(n), gi), n)
    return all(x == q * q * y for lr, gr in zip(lhs, gi) for x, y in zip(lr, gr))


def make_coincidence(m: GramModule, t) -> CoincidenceMap:
    tq = mx.as_fractions(t)
    if mx.shape(tq) != (m.rank, m.rank):
        raise ValueError(f"expected a {m.rank}x{m.rank} matrix, got {mx.shape(tq)}")
    n, q = mx.split_denominator(tq)
    if mx.det_bareiss(n) == 0:
        raise RankError("coincidence matrix is singular")
    ok = _is_lattice_isometry(m, n, q) if m.is_lattice else _pullback(m, tq) == m.gram
    if not ok:
        raise NotAnIsometryError("T^T G T != G")
    return CoincidenceMap(m, tq)


def primitive_part(a: Matrix) -> tuple[Matrix, Fraction]:
    """``(P, f)`` with ``a == f * P`` and ``P`` primitive integral, ``f > 0``."""
    q = mx.denominator_lcm(a)
    n = mx.to_int(mx.scale(mx.as_fractions(a), q))
    c = mx.content(n)
    if c == 0:
        raise ValueError("zero matrix has no primitive part")
    return tuple(tuple(x // c for x in row) for row in n), Fraction(c, q)


def make_similarity(m: GramModule, a) -> SimilarityMap:
    aq = mx.as_fractions(a)
    if mx.shape(aq) != (m.rank, m.rank):
        raise ValueError(f"expected a {m.rank}x{m.rank} matrix, got {mx.shape(aq)}")
    p, _ = primitive_part(aq)
    pull = _pullback(m, p)
    s = pull[0][0] / m.gram[0][0]
    if mx.sub(pull, mx.scale(m.gram, s)) != mx.zeros(m.rank, m.rank, m.field.zero):
        raise NotASimilarityError("A^T G A is not proportional to G")
    if s.sign() <= 0:
        raise NotASimilarityError("similarity factor is not positive")
    return SimilarityMap(m, p, s)


def as_similarity(t: CoincidenceMap) -> SimilarityMap:
    return make_similarity(t.module, t.matrix)


def identity_map(m: GramModule) -> CoincidenceMap:
    return CoincidenceMap(m, mx.identity(m.rank, Fraction(1), Fraction(0)))


def _check_same(f: AnyMap, g: AnyMap) -> None:
    if f.module != g.module:
        raise ModuleMismatchError("maps act on different modules")


def compose(f: AnyMap, g: AnyMap) -> AnyMap:
    """``f ∘ g`` (apply ``g`` first)."""
    _check_same(f, g)
    if isinstance(f, CoincidenceMap) and isinstance(g, CoincidenceMap):
        return CoincidenceMap(f.module, mx.matmul(f.matrix, g.matrix))
    ff = f if isinstance(f, SimilarityMap) else as_similarity(f)
    gg = g if isinstance(g, SimilarityMap) else as_similarity(g)
    prod = mx.matmul(ff.matrix, gg.matrix)
    p, c = primitive_part(prod)
    return SimilarityMap(f.module, p, ff.s * gg.s / (c * c))


def inverse(f: AnyMap) -> AnyMap:
    if isinstance(f, CoincidenceMap):
        return CoincidenceMap(f.module, mx.inverse(f.matrix))
    inv = mx.inverse(mx.as_fractions(f.matrix))
    p, c = primitive_part(inv)
    # (A^-1)^T G A^-1 = G / s and A^-1 = c P
    return SimilarityMap(f.module, p, 1 / (f.s * c * c))


def is_coincidence(f: AnyMap) -> Optional[CoincidenceMap]:
    """The coincidence map of the isometry represented by ``f``, or ``None``.

    ``f`` represents ``alpha R`` with ``alpha = sqrt(s)``. ``R`` is a
    coincidence isometry exactly when ``alpha`` lies in the quotient field
    of the multiplier ring; then ``T = (1/alpha) A`` computed in the ring.
    """
    if isinstance(f, CoincidenceMap):
        return f
    alpha = _sqrt(f.s)
    if alpha is None:
        return None
    if alpha.is_rational():
        t = mx.scale(mx.as_fractions(f.matrix), 1 / alpha.to_fraction())
        return make_coincidence(f.module, t)
    from .scaling import multiplier_ring

    ring = multiplier_ring(f.module)
    b = ring.coordinate_matrix(1 / alpha)
    if b is None:
        return None
    return make_coincidence(f.module, mx.matmul(b, mx.as_fractions(f.matrix)))


def is_symmetry(f: AnyMap) -> bool:
    """Whether the represented isometry maps the module onto itself."""
    if isinstance(f, SimilarityMap) and f.s == 1:
        return True
    t = is_coincidence(f)
    return t is not None and mx.is_integral(t.matrix)


def den_coincidence(t: CoincidenceMap) -> int:
    """Denominator of a coincidence map: lcm of the reduced denominators of ``T``."""
    return mx.denominator_lcm(t.matrix)


def denominator(f: AnyMap) -> ScaleValue:
    """Smallest ``alpha > 0`` with ``alpha R Λ ⊆ Λ`` (lattices only)."""
    if not f.module.is_lattice:
        raise UnsupportedModuleError("denominators are only defined here for lattices")
    if isinstance(f, CoincidenceMap):
        return ScaleValue(den_coincidence(f), 1, f.module.field)
    return f.scale


def map_to_json(f: AnyMap) -> dict:
    if isinstance(f, CoincidenceMap):
        return {"kind": "coincidence", "matrix": [[str(x) for x in row] for row in f.matrix]}
    return {
        "kind": "similarity",
        "matrix": [[str(x) for x in row] for row in f.matrix],
        "s": f.s.to_json(),
    }


def map_from_json(m: GramModule, data: dict) -> AnyMap:
    kind = data.get("kind", "similarity")
    mat = [[Fraction(x) for x in row] for row in data["matrix"]]
    if kind == "coincidence":
        return make_coincidence(m, mat)
    if kind == "similarity":
        return make_similarity(m, mat)
    raise ValueError(f"unknown map kind {kind!r}")
