"""Real-embedded algebraic number fields with exact arithmetic.

A field is ``Q[x]/(f)`` for a monic irreducible integer polynomial ``f`` together
with a rational interval isolating one real root of ``f``; that root is the
image of ``x`` under the embedding. Elements are rational coordinate vectors
in the power basis ``1, x, ..., x^(n-1)``.

Equality is always decided on coordinates. Only strict order needs the
embedding, and it is decided by bisecting the isolating interval until the
interval image of the element excludes zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from . import matrices as mx
from . import polys

Rational = Union[int, Fraction]

_MAX_REFINEMENTS = 4000


class FieldMismatchError(TypeError):
    """Operands belong to different number fields."""


class FieldDomainError(ValueError):
    """Operation undefined for the given input (e.g. square root of a negative)."""


@dataclass(frozen=True)
class NumberField:
    defining_poly: tuple
    lo: Fraction
    hi: Fraction
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        p = polys.poly(self.defining_poly)
        object.__setattr__(self, "defining_poly", p)
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if polys.degree(p) < 1 or p[-1] != 1 or not polys.is_integral(p):
            raise ValueError(f"defining polynomial must be monic integral, got {polys.to_str(p)}")
        if not self.lo < self.hi:
            raise ValueError("empty isolating interval")
        if polys.evaluate(p, self.lo) == 0 or polys.evaluate(p, self.hi) == 0:
            if polys.degree(p) > 1:
                raise ValueError("isolating interval endpoint is a root")
        if polys.count_real_roots(p, self.lo, self.hi) != 1 and polys.degree(p) > 1:
            raise ValueError("interval does not isolate exactly one real root")
        if not polys.is_irreducible(p):
            raise ValueError(f"defining polynomial {polys.to_str(p)} is reducible over Q")

    @property
    def degree(self) -> int:
        return len(self.defining_poly) - 1

    def __repr__(self) -> str:
        label = self.name or polys.to_str(self.defining_poly)
        return f"NumberField({label})"

    def __call__(self, value) -> "NumberFieldElement":
        return self.coerce(value)

    def element(self, coords: Iterable[Rational]) -> "NumberFieldElement":
        c = [Fraction(v) for v in coords]
        if len(c) > self.degree:
            raise ValueError(f"expected at most {self.degree} coordinates, got {len(c)}")
        c += [Fraction(0)] * (self.degree - len(c))
        return NumberFieldElement(self, tuple(c))

    def coerce(self, value) -> "NumberFieldElement":
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, (int, Fraction)):
            return self.element([value])
        if isinstance(value, str):
            return self.element([Fraction(value)])
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    @property
    def zero(self) -> "NumberFieldElement":
        return self.element([0])

    @property
    def one(self) -> "NumberFieldElement":
        return self.element([1])

    @property
    def gen(self) -> "NumberFieldElement":
        if self.degree == 1:
            return self.element([-self.defining_poly[0]])
        return self.element([0, 1])

    def root_interval(self, level: int) -> tuple[Fraction, Fraction]:
        return _refined_interval(self, level)


QQ = NumberField((0, 1), Fraction(-1), Fraction(1), name="QQ")


def quadratic_field(d: int) -> NumberField:
    """``Q(sqrt(d))`` for a positive squarefree integer ``d``; the generator is the positive root."""
    r = math.isqrt(d)
    return NumberField((-d, 0, 1), Fraction(r), Fraction(r + 1), name=f"Q(sqrt{d})")


@lru_cache(maxsize=None)
def _refined_interval(k: NumberField, level: int) -> tuple[Fraction, Fraction]:
    if k.degree == 1:
        r = -k.defining_poly[0]
        return r, r
    if level == 0:
        return k.lo, k.hi
    lo, hi = _refined_interval(k, level - 1)
    mid = (lo + hi) / 2
    f = k.defining_poly
    flo = polys.evaluate(f, lo)
    fmid = polys.evaluate(f, mid)
    if (flo > 0) == (fmid > 0):
        return mid, hi
    return lo, mid


@lru_cache(maxsize=None)
def _power_table(k: NumberField) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of ``x^j`` for ``j < 2n - 1``."""
    n = k.degree
    f = k.defining_poly
    table = []
    cur = [Fraction(0)] * n
    cur[0] = Fraction(1)
    for _ in range(2 * n - 1):
        table.append(tuple(cur))
        # multiply by x and reduce with x^n = -(f_0 + ... + f_{n-1} x^{n-1})
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c - top * f[i] for i, c in enumerate(cur)]
    return tuple(table)


def _imul(a: tuple, b: tuple) -> tuple:
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


class NumberFieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    # -- basic protocol ------------------------------------------------------

    def __repr__(self) -> str:
        return f"<{self} in {self.field!r}>"

    def __str__(self) -> str:
        if self.field.degree == 1:
            return str(self.coords[0])
        return polys.to_str(polys.poly(self.coords), "a")

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field.defining_poly, self.coords))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return self.coords == other.coords
        return NotImplemented

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def _other(self, other) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        return self.field.coerce(other)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return NumberFieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.field, tuple(a * other for a in self.coords))
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        n = self.field.degree
        if n == 1:
            return NumberFieldElement(self.field, (self.coords[0] * o.coords[0],))
        table = _power_table(self.field)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if not b:
                    continue
                ab = a * b
                for t, c in enumerate(table[i + j]):
                    if c:
                        out[t] += ab * c
        return NumberFieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (1 / self.coords[0],))
        m = self.multiplication_matrix()
        e0 = tuple((Fraction(1),) if i == 0 else (Fraction(0),) for i in range(self.field.degree))
        sol = mx.solve(m, e0)
        return NumberFieldElement(self.field, tuple(row[0] for row in sol[0]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NumberFieldElement(self.field, tuple(a / other for a in self.coords))
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates / views --------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def multiplication_matrix(self) -> mx.Matrix:
        """Rational matrix of ``y -> self * y`` in the power basis (columns = images)."""
        n = self.field.degree
        cols = []
        for j in range(n):
            e = NumberFieldElement(self.field, tuple(Fraction(int(i == j)) for i in range(n)))
            cols.append((self * e).coords)
        return mx.from_columns(cols)

    def norm(self) -> Fraction:
        return mx.det(self.multiplication_matrix())

    def trace(self) -> Fraction:
        m = self.multiplication_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    # -- embedding -----------------------------------------------------------

    def enclosure(self, level: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the embedded value, from the level-th root interval."""
        lo, hi = self.field.root_interval(level)
        acc = (Fraction(0), Fraction(0))
        for c in reversed(self.coords):
            acc = _imul(acc, (lo, hi))
            acc = (acc[0] + c, acc[1] + c)
        return acc

    def sign(self) -> int:
        if self.is_zero():
            return 0
        for level in range(_MAX_REFINEMENTS):
            lo, hi = self.enclosure(level)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise ArithmeticError("interval refinement did not separate a nonzero element from 0")

    def approx(self, eps: Fraction = Fraction(1, 10**12)) -> Fraction:
        """Rational approximation of the embedded value within ``eps`` (display only)."""
        for level in range(_MAX_REFINEMENTS):
            lo, hi = self.enclosure(level)
            if hi - lo <= eps:
                return (lo + hi) / 2
        raise ArithmeticError("approximation did not converge")

    def __float__(self) -> float:
        return float(self.approx())

    def __lt__(self, other) -> bool:
        return compare_embedded(self, self._other(other)) < 0

    def __le__(self, other) -> bool:
        return compare_embedded(self, self._other(other)) <= 0

    def __gt__(self, other) -> bool:
        return compare_embedded(self, self._other(other)) > 0

    def __ge__(self, other) -> bool:
        return compare_embedded(self, self._other(other)) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def compare_embedded(a: NumberFieldElement, b: NumberFieldElement) -> int:
    """-1, 0 or 1 according to the embedded real values of ``a`` and ``b``."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    return (a - b).sign()


def minimal_polynomial(a: NumberFieldElement) -> tuple:
    """Monic minimal polynomial of ``a`` over Q (coefficients lowest degree first)."""
    powers = [a.field.one.coords]
    cur = a.field.one
    for _ in range(a.field.degree):
        cur = cur * a
        powers.append(cur.coords)
        ker = mx.kernel(mx.from_columns(powers))
        if ker:
            return polys.monic(polys.poly(ker[0]))
    raise ArithmeticError("no linear dependency among powers; field degree inconsistent")


def is_algebraic_integer(a: NumberFieldElement) -> bool:
    return polys.is_integral(minimal_polynomial(a))


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


# -- polynomials over K (coefficient lists of field elements, lowest first) ----


def _kpoly_trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _kpoly_rem(p: list, q: list) -> list:
    r = list(p)
    lead_inv = q[-1].inverse()
    while len(r) >= len(q) and r:
        c = r[-1] * lead_inv
        shift = len(r) - len(q)
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - c * b
        _kpoly_trim(r)
    return r


def _kpoly_gcd(p: list, q: list) -> list:
    p, q = _kpoly_trim(list(p)), _kpoly_trim(list(q))
    while q:
        p, q = q, _kpoly_rem(p, q)
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _kpoly_eval(p: list, x: NumberFieldElement) -> NumberFieldElement:
    acc = x.field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _linear_factor_roots(f: list, k: NumberField) -> list[NumberFieldElement]:
    """Roots in ``k`` of a squarefree polynomial ``f`` over ``k`` (Trager's norm method)."""
    n = k.degree
    deg_f = len(f) - 1
    theta = k.gen
    for shift in (0, 1, -1, 2, -2, 3, -3, 5, -5, 7):
        # g(x) = f(x - shift*theta)
        lin = [-(theta * shift), k.one]
        g = [k.zero]
        power = [k.one]
        for c in f:
            g = [a + c * b for a, b in _zip_pad(g, power, k.zero)]
            power = _kpoly_mul(power, lin, k)
        _kpoly_trim(g)
        xs = [Fraction(i) for i in range(n * deg_f + 1)]
        ys = [_kpoly_eval(g, k(x)).norm() for x in xs]
        norm_poly = polys.interpolate(xs, ys)
        if not polys.is_squarefree(norm_poly):
            continue
        roots = []
        for fac, _ in polys.factor(norm_poly):
            if polys.degree(fac) != n:
                continue
            h = _kpoly_gcd(g, [k(c) for c in fac])
            if len(h) == 2:
                roots.append(-h[0] - theta * shift)
        return roots
    raise ArithmeticError("no admissible shift found for the norm method")


def _zip_pad(a: list, b: list, zero):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else zero, b[i] if i < len(b) else zero) for i in range(n)]


def _kpoly_mul(a: list, b: list, k: NumberField) -> list:
    out = [k.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def sqrt_in_field(t: NumberFieldElement) -> Optional[NumberFieldElement]:
    """The embedded-nonnegative square root of ``t`` if it lies in the field, else ``None``."""
    s = t.sign()
    if s < 0:
        raise FieldDomainError(f"square root of negative element {t}")
    k = t.field
    if s == 0:
        return k.zero
    if t.is_rational():
        r = _rational_sqrt(t.coords[0])
        if r is not None:
            return k(r)
        if k.degree == 1:
            return None
    # a root r satisfies N(r)^2 = N(t)
    if _rational_sqrt(t.norm()) is None:
        return None
    roots = _linear_factor_roots([-t, k.zero, k.one], k)
    for r in roots:
        if r * r == t and r.sign() >= 0:
            return r
    return None


def field_from_json(data: dict) -> NumberField:
    poly = [Fraction(c) for c in data["min_poly"]]
    lo, hi = (Fraction(v) for v in data["root_interval"])
    return NumberField(tuple(poly), lo, hi, name=data.get("name", ""))


def field_to_json(k: NumberField) -> dict:
    out = {
        "min_poly": [str(c) for c in k.defining_poly],
        "root_interval": [str(k.lo), str(k.hi)],
    }
    if k.name:
        out["name"] = k.name
    return out


def element_from_json(k: NumberField, data) -> NumberFieldElement:
    if isinstance(data, (list, tuple)):
        return k.element([Fraction(v) for v in data])
    return k(Fraction(data))


def coerce_all(k: NumberField, values: Sequence) -> tuple:
    return tuple(k.coerce(v) for v in values)
