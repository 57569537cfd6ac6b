"""Lattices and free Z-modules presented by their Gram matrices.

A module ``M = <t_1, ..., t_k>_Z`` in R^d is stored only through its Gram
matrix ``G[i][j] = <t_i, t_j>`` over a real number field. Every geometric
statement about ``M`` is a statement about integer/rational coordinate
vectors and ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import matrices as mx
from . import normalforms as nf
from .linalg import flatten_rows, rational_kernel
from .matrices import Matrix, RankError
from .numberfield import (
    QQ,
    NumberField,
    NumberFieldElement,
    element_from_json,
    field_from_json,
    field_to_json,
)


class ModuleValidationError(ValueError):
    """Gram matrix or generators do not describe a valid module."""


class DependenceError(ModuleValidationError):
    """Generators are rationally dependent."""


def _psd_rank(gram: Matrix) -> int:
    """Rank of a symmetric field matrix, raising unless it is positive semidefinite."""
    a = [list(row) for row in gram]
    active = list(range(len(a)))
    r = 0
    while active:
        piv = next((i for i in active if a[i][i].sign() > 0), None)
        if piv is None:
            if any(a[i][i].sign() < 0 for i in active) or any(
                a[i][j] != 0 for i in active for j in active
            ):
                raise ModuleValidationError("Gram matrix is not positive semidefinite")
            break
        active.remove(piv)
        r += 1
        p = a[piv][piv]
        for i in active:
            if a[i][piv] != 0:
                f = a[i][piv] / p
                for j in active:
                    a[i][j] = a[i][j] - f * a[piv][j]
    return r


@dataclass(frozen=True)
class GramModule:
    field: NumberField
    gram: Matrix
    label: str = dc_field(default="", compare=False)
    ambient_dim: int = dc_field(default=0, compare=False)

    def __post_init__(self):
        g = mx.to_matrix(self.gram, self.field.coerce)
        object.__setattr__(self, "gram", g)
        k, c = mx.shape(g)
        if k == 0 or k != c:
            raise ModuleValidationError(f"Gram matrix must be square, got {mx.shape(g)}")
        if not mx.is_symmetric(g):
            raise ModuleValidationError("Gram matrix is not symmetric")
        d = _psd_rank(g)
        if d == 0:
            raise ModuleValidationError("Gram matrix is zero")
        if rational_kernel(g, self.field):
            raise DependenceError("generators are rationally dependent (Gram matrix has a rational kernel)")
        object.__setattr__(self, "ambient_dim", d)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def is_lattice(self) -> bool:
        return self.rank == self.ambient_dim and all(x.is_rational() for row in self.gram for x in row)

    @cached_property
    def _rational_gram(self) -> Matrix:
        return mx.to_matrix(self.gram, lambda x: x.to_fraction())

    def rational_gram(self) -> Matrix:
        """Gram matrix as Fractions (lattices and other rational Grams only)."""
        return self._rational_gram

    def form(self, u: Sequence, v: Sequence) -> NumberFieldElement:
        """Inner product of two coordinate vectors."""
        return sum(
            (self.gram[i][j] * (a * b) for i, a in enumerate(u) if a for j, b in enumerate(v) if b),
            self.field.zero,
        )

    def sublattice_gram(self, basis: Matrix) -> Matrix:
        """Gram matrix ``B^T G B`` of the module spanned by the columns of ``basis``."""
        b = mx.to_matrix(basis, self.field.coerce)
        return mx.to_matrix(mx.matmul(mx.matmul(mx.transpose(b), self.gram), b), self.field.coerce)

    def __repr__(self) -> str:
        name = self.label or "module"
        return f"GramModule({name}, k={self.rank}, d={self.ambient_dim}, {self.field!r})"


def lattice_from_gram(g: Sequence[Sequence], label: str = "") -> GramModule:
    """Full-rank lattice from a rational symmetric positive definite Gram matrix."""
    gq = mx.to_matrix(g, Fraction)
    if not mx.is_symmetric(gq):
        raise ModuleValidationError("Gram matrix is not symmetric")
    m = GramModule(QQ, gq, label=label)
    if m.ambient_dim != m.rank:
        raise ModuleValidationError("Gram matrix is not positive definite")
    return m


def ambient_dimension(m: GramModule) -> int:
    return m.ambient_dim


@dataclass(frozen=True)
class GeneratorPresentation:
    """Generators in a real or complex ambient space.

    ``vectors`` holds k generators; each is a sequence of ``dim`` entries.
    Real entries are field elements; complex entries are ``(re, im)`` pairs.
    """

    field: NumberField
    ambient: str
    dim: int
    vectors: tuple

    def __post_init__(self):
        if self.ambient not in ("real", "complex"):
            raise ModuleValidationError(f"unknown ambient {self.ambient!r}")
        for v in self.vectors:
            if len(v) != self.dim:
                raise ModuleValidationError(f"generator {v} does not have {self.dim} entries")

    @property
    def real_dim(self) -> int:
        return self.dim if self.ambient == "real" else 2 * self.dim

    def realified(self) -> list[tuple[NumberFieldElement, ...]]:
        k = self.field
        out = []
        for v in self.vectors:
            if self.ambient == "real":
                out.append(tuple(k.coerce(x) for x in v))
            else:
                row = []
                for re, im in v:
                    row.extend((k.coerce(re), k.coerce(im)))
                out.append(tuple(row))
        return out


def module_from_generators(p: GeneratorPresentation, label: str = "") -> GramModule:
    w = p.realified()
    k = p.field
    gram = tuple(
        tuple(sum((a * b for a, b in zip(wi, wj)), k.zero) for wj in w) for wi in w
    )
    m = GramModule(k, gram, label=label)
    if m.ambient_dim != p.real_dim:
        raise RankError(f"generators span dimension {m.ambient_dim}, ambient has {p.real_dim}")
    return m


def embedding_coordinates(big: GeneratorPresentation, vectors: Sequence) -> Matrix:
    """Rational coordinates (columns) of ``vectors`` in the generators of ``big``.

    ``vectors`` use the same entry convention as ``big.vectors``. Raises
    ``ModuleValidationError`` if some vector is not a rational combination.
    """
    k = big.field
    w = big.realified()
    targets = GeneratorPresentation(k, big.ambient, big.dim, tuple(vectors)).realified()
    a = mx.from_columns(w)  # real_dim x k_big, field entries
    b = mx.from_columns(targets)
    fa = flatten_rows(a, k)
    fb = flatten_rows(b, k)
    res = mx.solve(fa, fb)
    if res is None:
        raise ModuleValidationError("vector is not in the rational span of the generators")
    return res[0]


def submodule_index(big: GeneratorPresentation, sub: GeneratorPresentation) -> int:
    """``[M_big : M_sub]`` for a full-rank submodule given by generators."""
    coords = embedding_coordinates(big, sub.vectors)
    if not mx.is_integral(coords):
        raise ModuleValidationError("sub-generators are not integral combinations")
    c = mx.to_int(coords)
    if mx.shape(c)[0] != mx.shape(c)[1]:
        raise RankError("submodule rank differs from module rank")
    h = nf.lattice_basis(c)
    if mx.shape(h)[1] != mx.shape(c)[0]:
        raise RankError("submodule does not have full rank")
    return abs(mx.det_bareiss(h))


# -- JSON -------------------------------------------------------------------


def _entry(k: NumberField, data) -> NumberFieldElement:
    return element_from_json(k, data)


def presentation_from_json(k: NumberField, data: dict) -> GeneratorPresentation:
    ambient = data.get("ambient", "real")
    dim = int(data["dim"])
    vectors = []
    for v in data["vectors"]:
        if ambient == "complex":
            vectors.append(tuple((_entry(k, re), _entry(k, im)) for re, im in v))
        else:
            vectors.append(tuple(_entry(k, x) for x in v))
    return GeneratorPresentation(k, ambient, dim, tuple(vectors))


def module_from_json(data: dict) -> GramModule:
    k = field_from_json(data["field"]) if "field" in data else QQ
    label = data.get("label", "")
    if "gram" in data:
        gram = [[_entry(k, x) for x in row] for row in data["gram"]]
        return GramModule(k, gram, label=label)
    if "generators" in data:
        return module_from_generators(presentation_from_json(k, data["generators"]), label=label)
    raise ModuleValidationError("module JSON needs 'gram' or 'generators'")


def module_to_json(m: GramModule) -> dict:
    out: dict = {}
    if m.label:
        out["label"] = m.label
    if m.field != QQ:
        out["field"] = field_to_json(m.field)
        out["gram"] = [[x.to_json() for x in row] for row in m.gram]
    else:
        out["gram"] = [[str(x.to_fraction()) for x in row] for row in m.gram]
    return out
