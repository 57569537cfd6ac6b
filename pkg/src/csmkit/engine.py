"""Coincidence site modules, coincidence indices and the divisibility relations.

All computations are in module coordinates: ``M`` is ``Z^k`` and ``RM`` is
``T Z^k`` for the rational coordinate matrix ``T`` of a coincidence map.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from . import matrices as mx
from . import normalforms as nf
from .gram import GramModule
from .maps import (
    AnyMap,
    CoincidenceMap,
    SimilarityMap,
    UnsupportedModuleError,
    as_similarity,
    compose,
    den_coincidence,
    denominator,
    inverse,
    is_coincidence,
    make_similarity,
)
from .matrices import Matrix

DEFAULT_ORACLE_CAP = 10**6


class IndexCapError(ValueError):
    """Index too large for the enumeration oracle."""


class NotACoincidenceError(ValueError):
    """A coincidence isometry was required."""


class WitnessNotFoundError(LookupError):
    """No square-root similarity witness was found."""


@dataclass(frozen=True)
class Submodule:
    module: GramModule
    basis: Matrix  # column HNF
    index: int

    def __repr__(self) -> str:
        return f"Submodule(index={self.index}, basis={mx.to_str(self.basis)})"


def _split(t: CoincidenceMap) -> tuple[Matrix, int]:
    return mx.split_denominator(t.matrix)


def _csl_preimage_snf(n: Matrix, q: int) -> Matrix:
    """Columns span ``{y in Z^k : n y ≡ 0 (mod q)}``."""
    d, _, v = nf.snf(n)
    k = len(n)
    steps = [q // math.gcd(d[i][i], q) for i in range(k)]
    return tuple(tuple(v[r][c] * steps[c] for c in range(k)) for r in range(k))


def _csl_preimage_kernel(n: Matrix, q: int) -> Matrix:
    """Same lattice as :func:`_csl_preimage_snf`, via the integer kernel of ``[n | -qI]``."""
    k = len(n)
    big = mx.hstack(n, mx.scale(mx.identity(k), -q))
    ker = nf.integer_kernel(big)
    return nf.lattice_basis(ker[:k])


def _image(n: Matrix, q: int, y: Matrix) -> Matrix:
    """``(n / q) y`` for ``y`` chosen so that the result is integral."""
    return tuple(tuple(x // q for x in row) for row in mx.matmul(n, y))


def intersect_csm(t: CoincidenceMap, cross_check: bool = False) -> Submodule:
    """``Z^k ∩ T Z^k`` in column HNF, with its index ``Σ``."""
    n, q = _split(t)
    csl = nf.lattice_basis(_image(n, q, _csl_preimage_snf(n, q)))
    if cross_check:
        csl2 = nf.lattice_basis(_image(n, q, _csl_preimage_kernel(n, q)))
        assert csl == csl2, (csl, csl2)
    return Submodule(t.module, csl, abs(mx.det_bareiss(csl)))


def sigma(t: AnyMap) -> int:
    tc = _require_coincidence(t)
    return intersect_csm(tc).index


def sum_index(t: AnyMap) -> int:
    """``[Z^k + T Z^k : Z^k]``."""
    tc = _require_coincidence(t)
    n, q = _split(tc)
    k = len(n)
    gens = mx.hstack(mx.scale(mx.identity(k), q), n)
    h = nf.lattice_basis(gens)
    return q**k // abs(mx.det_bareiss(h))


def oracle_index(h: Matrix, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """``[Z^k : h Z^k]`` by breadth-first enumeration of cosets.

    A vector ``v`` lies in ``h Z^k`` iff ``adj(h) v ≡ 0 (mod det h)``, so the
    residues ``adj(h) v mod det h`` label cosets; the oracle counts how many
    labels the generators ``e_1, ..., e_k`` reach.
    """
    hq = mx.as_fractions(h)
    det = mx.det(hq)
    if det == 0:
        raise mx.RankError("oracle_index needs a full-rank matrix")
    big = abs(int(det))
    if big > cap:
        raise IndexCapError(f"index {big} exceeds oracle cap {cap}")
    adj = mx.to_int(mx.scale(mx.inverse(hq), det))
    k = len(h)
    gens = [tuple(adj[r][c] % big for r in range(k)) for c in range(k)]
    start = (0,) * k
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = tuple((a + b) % big for a, b in zip(cur, g))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


def _require_coincidence(f: AnyMap) -> CoincidenceMap:
    t = is_coincidence(f)
    if t is None:
        raise NotACoincidenceError("map is not a coincidence isometry")
    return t


@dataclass(frozen=True)
class DivisibilityReport:
    label: str
    d: int
    den_r: int
    den_rinv: int
    sigma: int
    checks: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def recomputed(self) -> dict:
        """The number-only checks, recomputed from ``den_r``, ``den_rinv`` and ``sigma``."""
        return _number_checks(self.d, self.den_r, self.den_rinv, self.sigma)

    def consistent(self) -> bool:
        re = self.recomputed()
        return all(self.checks.get(name) == value for name, value in re.items())

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "d": self.d,
            "den": self.den_r,
            "den_inv": self.den_rinv,
            "sigma": self.sigma,
            "checks": dict(self.checks),
        }


def _number_checks(d: int, den_r: int, den_rinv: int, sig: int) -> dict:
    l = math.lcm(den_r, den_rinv)
    g = math.gcd(den_r, den_rinv)
    checks = {
        "den_product_natural": den_r * den_rinv >= 1,
        "den_power_ratio": den_r ** (d - 1) % den_rinv == 0,
        "lcm_divides_sigma": sig % l == 0,
        "sigma_divides_gcd_pow": g**d % sig == 0,
        "sigma_sq_divides_lcm_pow": l**d % (sig * sig) == 0,
    }
    if d == 2:
        checks["sigma_equals_den"] = sig == den_r
        checks["den_inverse_equal"] = den_r == den_rinv
    return checks


def divisibility_report(f: AnyMap, label: str = "") -> DivisibilityReport:
    m = f.module
    if not m.is_lattice:
        raise UnsupportedModuleError("divisibility relations are stated for lattices")
    t = is_coincidence(f)
    if t is None:
        raise NotACoincidenceError("divisibility report needs a coincidence isometry")
    d = m.ambient_dim
    tinv = inverse(t)
    den_r = den_coincidence(t)
    den_rinv = den_coincidence(tinv)
    csl = intersect_csm(t)
    sig = csl.index
    checks = _number_checks(d, den_r, den_rinv, sig)
    # both denominator routes must agree
    checks["den_routes_agree"] = (
        denominator(as_similarity(t)).to_int() == den_r
        and denominator(as_similarity(tinv)).to_int() == den_rinv
    )
    checks["den_mult"] = (den_r * den_rinv) % den_coincidence(compose(t, tinv)) == 0
    checks["sigma_inverse"] = intersect_csm(tinv).index == sig
    checks["sum_index"] = sum_index(t) == sig
    checks["index_identity"] = _index_identity(t, csl, den_r, den_rinv)
    return DivisibilityReport(label, d, den_r, den_rinv, sig, checks)


def _index_identity(t: CoincidenceMap, csl: Submodule, den_r: int, den_rinv: int) -> bool:
    """``a (Λ + RΛ) ⊆ Λ(R)`` with index ``a^d / Σ^2``, ``a = lcm(den R, den R^-1)``."""
    n, q = _split(t)
    k = len(n)
    a = math.lcm(den_r, den_rinv)
    sum_basis = nf.lattice_basis(mx.hstack(mx.scale(mx.identity(k), q), n))  # q (Λ + RΛ)
    scaled = mx.scale(mx.as_fractions(sum_basis), Fraction(a, q))
    if not mx.is_integral(scaled):
        return False
    scaled = mx.to_int(scaled)
    inside = mx.solve(mx.as_fractions(csl.basis), mx.as_fractions(scaled))
    if inside is None or not mx.is_integral(inside[0]):
        return False
    index = Fraction(abs(mx.det_bareiss(scaled)), csl.index)
    return index == Fraction(a**k, csl.index**2)


# -- planar similarity of CSLs ------------------------------------------------


def gauss_reduce(a: Fraction, b: Fraction, c: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Lagrange–Gauss reduction of the positive definite form ``[[a, b], [b, c]]``.

    Returns the GL(2, Z)-reduced form ``(a, b, c)`` with ``0 <= 2b <= a <= c``.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a <= 0 or a * c - b * b <= 0:
        raise ValueError("form is not positive definite")
    while True:
        if a > c:
            a, c = c, a
        if 2 * abs(b) <= a:
            break
        mu = round(b / a)
        c = c - 2 * mu * b + mu * mu * a
        b = b - mu * a
    return a, abs(b), c


def is_similar_sublattice_2d(m: GramModule, sub: Submodule) -> tuple[bool, Optional[Fraction]]:
    """Whether ``sub`` is similar to ``m``; when it is, also the squared scale factor."""
    if not m.is_lattice or m.rank != 2:
        raise UnsupportedModuleError("planar lattices only")
    g = m.rational_gram()
    gs = mx.to_matrix(m.sublattice_gram(sub.basis), lambda x: x.to_fraction())
    a1, b1, c1 = gauss_reduce(g[0][0], g[0][1], g[1][1])
    a2, b2, c2 = gauss_reduce(gs[0][0], gs[0][1], gs[1][1])
    f = a2 / a1
    if b2 == f * b1 and c2 == f * c1:
        return True, f
    return False, None


def _binary_form_vectors(g: Matrix, value: Fraction) -> list[tuple[int, int]]:
    """All integer ``(x, y)`` with ``(x, y) g (x, y)^T == value`` for a 2x2 PD ``g``."""
    a, b, c = g[0][0], g[0][1], g[1][1]
    det = a * c - b * b
    xmax = math.isqrt(int(value * c / det) + 1) + 1
    ymax = math.isqrt(int(value * a / det) + 1) + 1
    out = []
    for x in range(-xmax, xmax + 1):
        for y in range(-ymax, ymax + 1):
            if a * x * x + 2 * b * x * y + c * y * y == value:
                out.append((x, y))
    return out


@dataclass(frozen=True)
class SquareRootWitness:
    """``S`` with ``S∘S = R∘g`` for a lattice symmetry ``g`` and ``den(S) S Λ = Λ(R)``."""

    similarity: SimilarityMap
    symmetry: Matrix
    csl: Submodule


def planar_similarities(m: GramModule, s: Fraction, rotations_only: bool = True) -> list[SimilarityMap]:
    """All primitive similarity maps with factor ``s`` on a planar lattice."""
    g = m.rational_gram()
    out = []
    firsts = _binary_form_vectors(g, s * g[0][0])
    seconds = _binary_form_vectors(g, s * g[1][1])
    for x1 in firsts:
        for x2 in seconds:
            cross = (
                g[0][0] * x1[0] * x2[0]
                + g[0][1] * (x1[0] * x2[1] + x1[1] * x2[0])
                + g[1][1] * x1[1] * x2[1]
            )
            if cross != s * g[0][1]:
                continue
            a = ((x1[0], x2[0]), (x1[1], x2[1]))
            if rotations_only and mx.det_bareiss(a) <= 0:
                continue
            if mx.content(a) != 1:
                continue
            out.append(make_similarity(m, a))
    return out


def csl_square_root_witness(t: AnyMap) -> SquareRootWitness:
    tc = _require_coincidence(t)
    m = tc.module
    if not m.is_lattice or m.rank != 2:
        raise UnsupportedModuleError("square-root witnesses are searched on planar lattices")
    if mx.det(tc.matrix) != 1:
        raise WitnessNotFoundError("only coincidence rotations have square-root witnesses")
    csl = intersect_csm(tc)
    # den(S)^2 = [Λ : den(S) S Λ] = Σ; prefer an exact square root (g = E)
    found = []
    for cand in planar_similarities(m, Fraction(csl.index)):
        if nf.lattice_basis(cand.matrix) != csl.basis:
            continue
        sq = is_coincidence(compose(cand, cand))
        if sq is None:
            continue
        g = mx.matmul(mx.inverse(tc.matrix), sq.matrix)
        if mx.is_integral(g):
            found.append(SquareRootWitness(cand, mx.to_int(g), csl))
    exact = [w for w in found if w.symmetry == mx.identity(2)]
    if exact or found:
        # of the roots ±S keep the one with the larger matrix (S = E for R = E)
        return max(exact or found, key=lambda w: w.similarity.matrix)
    raise WitnessNotFoundError(f"no square-root witness for Σ={csl.index}")


def is_scaled_rotated_copy(t: AnyMap) -> bool:
    """Whether ``Λ(R) == den(R) R Λ``."""
    tc = _require_coincidence(t)
    scaled = mx.to_int(mx.scale(tc.matrix, den_coincidence(tc)))
    return nf.lattice_basis(scaled) == intersect_csm(tc).basis
