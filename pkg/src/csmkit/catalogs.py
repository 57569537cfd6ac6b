"""Built-in lattices, modules and coincidence-map generators.

Conventions:

* square lattice: basis ``{1, i}``, Gram ``I_2``; Gaussian ``m + n i`` acts by
  ``[[m, -n], [n, m]]``.
* hexagonal lattice: basis ``{1, 1 + ω}`` with ``ω = e^{2πi/3}``, Gram
  ``[[2, 1], [1, 2]]``. Eisenstein ``m + n ω`` acts on ``{1, ω}`` coordinates
  by ``[[m, -n], [n, m - n]]``; matrices are transported to the lattice basis.
* cubic lattice: ``Z^3``; quaternion ``(a, b, c, d)`` acts by the Cayley
  rotation with denominator ``a² + b² + c² + d²``.
* cyclotomic modules ``Z[ξ_n]`` for ``n ∈ {5, 8, 12}``: basis
  ``1, ξ, ξ², ξ³``, Gram entries ``cos(2π(i - j)/n)`` in the maximal real
  subfield.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import matrices as mx
from .engine import intersect_csm
from .gram import (
    GeneratorPresentation,
    GramModule,
    lattice_from_gram,
    module_from_generators,
    submodule_index,
)
from .maps import (
    CoincidenceMap,
    SimilarityMap,
    make_coincidence,
    make_similarity,
)
from .matrices import Matrix
from .numberfield import NumberField, quadratic_field


class CatalogError(ValueError):
    """Unknown catalog name or invalid parameters."""


class PrimitivityError(CatalogError):
    """Parameters do not describe a primitive generator."""


class CorruptedCatalogError(RuntimeError):
    """Shipped constants failed their exact validation."""


LATTICES = ("square", "hexagonal", "cubic", "hypercubic4")

_LATTICE_GRAMS = {
    "square": ((1, 0), (0, 1)),
    "hexagonal": ((2, 1), (1, 2)),
    "cubic": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "hypercubic4": tuple(tuple(int(i == j) for j in range(4)) for i in range(4)),
}


@lru_cache(maxsize=None)
def standard_lattice(name: str) -> GramModule:
    if name not in _LATTICE_GRAMS:
        raise CatalogError(f"unknown lattice {name!r}; known: {', '.join(LATTICES)}")
    return lattice_from_gram(_LATTICE_GRAMS[name], label=name)


# -- planar unit rotations ----------------------------------------------------

# {1, 1+ω} coordinates -> {1, ω} coordinates
_HEX_TO_OMEGA = ((1, 1), (0, 1))
_OMEGA_TO_HEX = ((1, -1), (0, 1))


def gaussian_matrix(m: int, n: int) -> Matrix:
    return ((m, -n), (n, m))


def eisenstein_matrix(m: int, n: int) -> Matrix:
    """Multiplication by ``m + nω`` in hexagonal-lattice coordinates."""
    omega = ((m, -n), (n, m - n))
    return mx.matmul(mx.matmul(_OMEGA_TO_HEX, omega), _HEX_TO_OMEGA)


def gaussian_norm(m: int, n: int) -> int:
    return m * m + n * n


def eisenstein_norm(m: int, n: int) -> int:
    return m * m - m * n + n * n


_PLANAR = {
    "gaussian": ("square", gaussian_matrix, gaussian_norm),
    "eisenstein": ("hexagonal", eisenstein_matrix, eisenstein_norm),
}


def _check_planar(ring: str, m: int, n: int) -> None:
    if ring not in _PLANAR:
        raise CatalogError(f"unknown ring {ring!r}")
    if math.gcd(m, n) != 1:
        raise PrimitivityError(f"{ring}({m},{n}) is not primitive")
    # associates of rational integers: units times Z
    if m == 0 or n == 0 or (ring == "eisenstein" and m == n):
        raise PrimitivityError(f"{ring}({m},{n}) is associated to a rational integer")


def planar_multiplication(ring: str, m: int, n: int) -> SimilarityMap:
    """Similarity map of multiplication by ``z = m + n i`` (or ``m + n ω``)."""
    if ring not in _PLANAR:
        raise CatalogError(f"unknown ring {ring!r}")
    lattice, matrix, _ = _PLANAR[ring]
    return make_similarity(standard_lattice(lattice), matrix(m, n))


def planar_unit_rotation(ring: str, m: int, n: int) -> CoincidenceMap:
    """Rotation by ``z² / N(z)`` on the square (Gaussian) or hexagonal (Eisenstein) lattice."""
    _check_planar(ring, m, n)
    lattice, matrix, norm = _PLANAR[ring]
    a = matrix(m, n)
    t = mx.scale(mx.as_fractions(mx.matmul(a, a)), Fraction(1, norm(m, n)))
    return make_coincidence(standard_lattice(lattice), t)


# -- quaternions --------------------------------------------------------------


def _normalize_quaternion(q: Sequence[int]) -> tuple[int, int, int, int]:
    q = tuple(int(x) for x in q)
    if len(q) != 4:
        raise CatalogError("a quaternion has four components")
    if not any(q):
        raise CatalogError("zero quaternion")
    g = math.gcd(*q)
    q = tuple(x // g for x in q)
    first = next(x for x in q if x)
    return q if first > 0 else tuple(-x for x in q)


def cayley_matrix(a: int, b: int, c: int, d: int) -> Matrix:
    """Integral matrix ``|q|² R(q)`` of the rotation ``x -> q x q̄``."""
    return (
        (a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)),
        (2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)),
        (2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d),
    )


def quaternion_rotation(a: int, b: int, c: int, d: int) -> CoincidenceMap:
    a, b, c, d = _normalize_quaternion((a, b, c, d))
    n = a * a + b * b + c * c + d * d
    t = mx.scale(mx.as_fractions(cayley_matrix(a, b, c, d)), Fraction(1, n))
    return make_coincidence(standard_lattice("cubic"), t)


def quaternion_left(a: int, b: int, c: int, d: int) -> Matrix:
    """Left multiplication by ``a + bi + cj + dk`` on ``Z^4`` (basis 1, i, j, k)."""
    return ((a, -b, -c, -d), (b, a, -d, c), (c, d, a, -b), (d, -c, b, a))


def quaternion_right(a: int, b: int, c: int, d: int) -> Matrix:
    """Right multiplication by ``a + bi + cj + dk`` on ``Z^4``."""
    return ((a, -b, -c, -d), (b, a, d, -c), (c, -d, a, b), (d, c, -b, a))


# -- cyclotomic modules -------------------------------------------------------

# defining polynomial of ξ_n over Q (basis 1, ξ, ξ², ξ³)
_CYCLOTOMIC_POLY = {5: (1, 1, 1, 1, 1), 8: (1, 0, 0, 0, 1), 12: (1, 0, -1, 0, 1)}


@lru_cache(maxsize=None)
def golden_field() -> NumberField:
    return NumberField((-1, -1, 1), Fraction(1), Fraction(2), name="Q(tau)")


@lru_cache(maxsize=None)
def cyclotomic_real_field(n: int) -> NumberField:
    if n == 5:
        return golden_field()
    if n == 8:
        return quadratic_field(2)
    if n == 12:
        return quadratic_field(3)
    raise CatalogError(f"unsupported cyclotomic order {n}; supported: 5, 8, 12")


def cyclotomic_cos(n: int, j: int):
    """``cos(2πj/n)`` as an element of the maximal real subfield."""
    k = cyclotomic_real_field(n)
    j %= n
    j = min(j, n - j)
    a = k.gen
    half = Fraction(1, 2)
    tables = {
        5: {0: k.one, 1: (a - 1) * half, 2: -a * half},
        8: {0: k.one, 1: a * half, 2: k.zero, 3: -a * half, 4: -k.one},
        12: {0: k.one, 1: a * half, 2: k(half), 3: k.zero, 4: k(-half), 5: -a * half, 6: -k.one},
    }
    return tables[n][j]


@lru_cache(maxsize=None)
def cyclotomic_module(n: int) -> GramModule:
    k = cyclotomic_real_field(n)
    gram = tuple(tuple(cyclotomic_cos(n, i - j) for j in range(4)) for i in range(4))
    return GramModule(k, gram, label=f"Z[xi{n}]")


def _xi8_point(coeffs: Sequence[int]):
    """``Σ c_j ξ8^j`` as a (re, im) pair over Q(√2)."""
    k = quadratic_field(2)
    h = k.gen / 2
    units = [(k.one, k.zero), (h, h), (k.zero, k.one), (-h, h)]
    re = sum((c * u[0] for c, u in zip(coeffs, units)), k.zero)
    im = sum((c * u[1] for c, u in zip(coeffs, units)), k.zero)
    return (re, im)


def xi8_presentation() -> GeneratorPresentation:
    k = quadratic_field(2)
    gens = tuple((_xi8_point([int(i == j) for j in range(4)]),) for i in range(4))
    return GeneratorPresentation(k, "complex", 1, gens)


# 1, i, 2ξ8, -2ξ̄8 in the basis 1, ξ8, ξ8², ξ8³  (ξ̄8 = -ξ8³)
XI8_INDEX4_COORDS = ((1, 0, 0, 0), (0, 0, 1, 0), (0, 2, 0, 0), (0, 0, 0, 2))


def xi8_index4_presentation() -> GeneratorPresentation:
    k = quadratic_field(2)
    gens = tuple((_xi8_point(c),) for c in XI8_INDEX4_COORDS)
    return GeneratorPresentation(k, "complex", 1, gens)


@lru_cache(maxsize=None)
def xi8_index4_submodule() -> GramModule:
    return module_from_generators(xi8_index4_presentation(), label="xi8-index4")


def xi8_index4_index() -> int:
    return submodule_index(xi8_presentation(), xi8_index4_presentation())


# -- the eta module -----------------------------------------------------------

# r is the real root of x^3 + 3x - 1; η is the complex root with Im η > 0.
# Vieta: Re η = -r/2 and |η|^2 = 1/r = r^2 + 3. Entries are coordinates in 1, r, r^2.
ETA_FIELD = {"min_poly": (-1, 3, 0, 1), "root_interval": (0, 1)}
ETA_GRAM_COORDS = (
    ((1, 0, 0), (0, Fraction(-1, 2), 0), (-3, 0, Fraction(-1, 2))),
    ((0, Fraction(-1, 2), 0), (3, 0, 1), (Fraction(-1, 2), 0, 0)),
    ((-3, 0, Fraction(-1, 2)), (Fraction(-1, 2), 0, 0), (9, 1, 3)),
)
ETA_POLY = (-1, 3, 0, 1)  # η^3 + 3η - 1 = 0


@lru_cache(maxsize=None)
def eta_field() -> NumberField:
    lo, hi = ETA_FIELD["root_interval"]
    return NumberField(ETA_FIELD["min_poly"], lo, hi, name="Q(r), r^3+3r-1=0")


def _eta_gram_from_vieta() -> Matrix:
    """Re(η^i conj(η)^j) from Re η and |η|^2 via the real-part recurrence."""
    k = eta_field()
    r = k.gen
    re1, norm = -r / 2, 1 / r
    re = [k.one, re1]
    for _ in range(2):
        re.append(2 * re1 * re[-1] - norm * re[-2])
    return tuple(
        tuple(norm ** min(i, j) * re[abs(i - j)] for j in range(3)) for i in range(3)
    )


def validate_eta_constants() -> dict:
    """Exact checks of the shipped η constants; returns the named results."""
    k = eta_field()
    r = k.gen
    shipped = mx.to_matrix(ETA_GRAM_COORDS, lambda c: k.element(c))
    re_eta, norm = -r / 2, 1 / r
    # x^2 - 2 Re(η) x + |η|^2 must be the cofactor of (x - r) in x^3 + 3x - 1
    quad = [norm, -2 * re_eta, k.one]
    lin = [-r, k.one]
    prod = [k.zero] * 4
    for i, a in enumerate(quad):
        for j, b in enumerate(lin):
            prod[i + j] = prod[i + j] + a * b
    companion = companion_matrix(ETA_POLY)
    gram_k = shipped
    a_k = mx.to_matrix(companion, k.coerce)
    pull = mx.matmul(mx.matmul(mx.transpose(a_k), gram_k), a_k)
    checks = {
        "field_relation": r**3 + 3 * r - 1 == 0,
        "vieta_factorisation": [p for p in prod] == [k(c) for c in ETA_POLY],
        "gram_matches_vieta": shipped == _eta_gram_from_vieta(),
        "companion_similarity": pull == mx.scale(gram_k, norm),
        "companion_relation": mx.is_zero(
            mx.add(
                mx.sub(mx.matmul(companion, mx.matmul(companion, companion)), mx.identity(3)),
                mx.scale(companion, 3),
            )
        ),
    }
    return checks


@lru_cache(maxsize=None)
def eta_module() -> GramModule:
    checks = validate_eta_constants()
    if not all(checks.values()):
        raise CorruptedCatalogError(f"eta constants failed validation: {checks}")
    k = eta_field()
    gram = mx.to_matrix(ETA_GRAM_COORDS, lambda c: k.element(c))
    return GramModule(k, gram, label="Z[eta]")


# -- multiplication maps on power-basis modules -------------------------------


def companion_matrix(f: Sequence[int]) -> Matrix:
    """Multiplication by x on ``Z[x]/(f)`` in the basis ``1, x, ..., x^(n-1)``."""
    n = len(f) - 1
    rows = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        rows[j + 1][j] = 1
    for i in range(n):
        rows[i][n - 1] = -f[i]
    return mx.to_matrix(rows)


def power_basis_multiplication(f: Sequence[int], z: Sequence[int]) -> Matrix:
    """Matrix of multiplication by ``Σ z_j x^j`` on ``Z[x]/(f)``."""
    n = len(f) - 1
    c = companion_matrix(f)
    out = mx.zeros(n, n)
    power = mx.identity(n)
    for zj in z:
        if zj:
            out = mx.add(out, mx.scale(power, zj))
        power = mx.matmul(c, power)
    return out


def _module_relation(m: GramModule) -> tuple[tuple, Optional[Matrix]]:
    """(defining polynomial, basis-change into the power basis) for catalog modules."""
    for n in _CYCLOTOMIC_POLY:
        if m == cyclotomic_module(n):
            return _CYCLOTOMIC_POLY[n], None
    if m == xi8_index4_submodule():
        return _CYCLOTOMIC_POLY[8], mx.transpose(XI8_INDEX4_COORDS)
    if m == eta_module():
        return ETA_POLY, None
    raise CatalogError(f"{m!r} has no built-in multiplication structure")


def multiplication_map(m: GramModule, z: Sequence[int]) -> SimilarityMap:
    """Similarity map of multiplication by ``Σ z_j b_j`` (``b_j`` the power basis)."""
    if not any(z):
        raise CatalogError("multiplication by zero")
    f, change = _module_relation(m)
    a = power_basis_multiplication(f, z)
    if change is not None:
        a = mx.matmul(mx.matmul(mx.inverse(mx.as_fractions(change)), a), change)
    return make_similarity(m, a)


def conjugation_map(m: GramModule) -> SimilarityMap:
    """Complex conjugation ``ξ -> ξ^{-1}`` on a cyclotomic module."""
    f, change = _module_relation(m)
    n_order = next(n for n, p in _CYCLOTOMIC_POLY.items() if p == f)
    cols = []
    for j in range(4):
        e = (-j) % n_order
        col = mx.column(power_basis_multiplication(f, [0] * e + [1]), 0)
        cols.append(col)
    a = mx.from_columns(cols)
    if change is not None:
        a = mx.matmul(mx.matmul(mx.inverse(mx.as_fractions(change)), a), change)
    return make_similarity(m, a)


# -- symmetries ---------------------------------------------------------------


def lattice_symmetries(m: GramModule, bound: int = 1) -> list[Matrix]:
    """Integral isometries of ``m`` whose entries are bounded by ``bound`` in absolute value."""
    k = m.rank
    g = m.gram
    ranges = range(-bound, bound + 1)

    def vectors_of_norm(target):
        out = []

        def rec(prefix):
            if len(prefix) == k:
                if any(prefix) and m.form(prefix, prefix) == target:
                    out.append(tuple(prefix))
                return
            for x in ranges:
                rec(prefix + [x])

        rec([])
        return out

    cands = [vectors_of_norm(g[j][j]) for j in range(k)]
    found = []

    def back(cols):
        j = len(cols)
        if j == k:
            found.append(mx.from_columns(cols))
            return
        for v in cands[j]:
            if all(m.form(cols[i], v) == g[i][j] for i in range(j)):
                back(cols + [v])

    back([])
    return found


# -- enumeration --------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    family: str
    params: tuple
    map: CoincidenceMap
    sigma: int
    csl_basis: Matrix

    def regenerate(self) -> "CatalogEntry":
        return make_entry(self.family, self.params)


def _family_map(family: str, params: tuple) -> CoincidenceMap:
    if family == "identity":
        return make_coincidence(standard_lattice(params[0]), mx.identity(len(_LATTICE_GRAMS[params[0]])))
    if family in _PLANAR:
        return planar_unit_rotation(family, *params)
    if family == "quaternion":
        return quaternion_rotation(*params)
    raise CatalogError(f"unknown family {family!r}")


def make_entry(family: str, params: tuple) -> CatalogEntry:
    t = _family_map(family, params)
    csl = intersect_csm(t)
    label = family + "(" + ",".join(str(p) for p in params) + ")"
    return CatalogEntry(label, family, tuple(params), t, csl.index, csl.basis)


def _planar_params(ring: str, norm_max: int):
    _, _, norm = _PLANAR[ring]
    r = math.isqrt(4 * norm_max) + 2
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            if norm(m, n) > norm_max:
                continue
            try:
                _check_planar(ring, m, n)
            except PrimitivityError:
                continue
            yield (m, n)


def _quaternion_params(norm_max: int):
    r = math.isqrt(norm_max)
    for a in range(0, r + 1):
        for b in range(-r, r + 1):
            for c in range(-r, r + 1):
                for d in range(-r, r + 1):
                    q = (a, b, c, d)
                    n = a * a + b * b + c * c + d * d
                    if n == 0 or n > norm_max or math.gcd(*q) != 1:
                        continue
                    if _normalize_quaternion(q) != q:
                        continue
                    yield q


def quaternion_params(norm_max: int) -> list[tuple[int, int, int, int]]:
    """Primitive quaternions (up to sign) with ``|q|² <= norm_max``."""
    return list(_quaternion_params(norm_max))


def enumerate_coincidence(name: str, sigma_max: int) -> list[CatalogEntry]:
    """Coincidence maps with ``Σ <= sigma_max``, one per distinct CSL, sorted by ``(Σ, label)``."""
    if sigma_max < 1:
        raise CatalogError("sigma_max must be at least 1")
    if name == "square":
        cands = [("gaussian", p) for p in _planar_params("gaussian", 2 * sigma_max)]
    elif name == "hexagonal":
        cands = [("eisenstein", p) for p in _planar_params("eisenstein", 3 * sigma_max)]
    elif name == "cubic":
        cands = [("quaternion", q) for q in _quaternion_params(4 * sigma_max)]
    else:
        raise CatalogError(f"no coincidence catalog for {name!r}; known: square, hexagonal, cubic")
    entries = [make_entry("identity", (name,))]
    for family, params in cands:
        e = make_entry(family, params)
        if e.sigma <= sigma_max:
            entries.append(e)
    entries.sort(key=lambda e: (e.sigma, _label_key(e)))
    seen = set()
    out = []
    for e in entries:
        if e.csl_basis in seen:
            continue
        seen.add(e.csl_basis)
        out.append(e)
    return out


def _label_key(e: CatalogEntry) -> tuple:
    # identity first, then by norm of the parameters and the parameters themselves
    if e.family == "identity":
        return (0, 0, ())
    return (1, sum(p * p for p in e.params), tuple(-p for p in e.params))


def sigma_spectrum(entries: Sequence[CatalogEntry]) -> list[int]:
    return sorted({e.sigma for e in entries})
