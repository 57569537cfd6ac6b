"""Property suites: catalog sweeps plus seeded random maps, with per-claim tallies.

Each claim counts passes and failures; the smallest failing case (by its
sort key) is kept as the counterexample.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import catalogs as cat
from . import matrices as mx
from . import normalforms as nf
from . import polys
from .engine import (
    DEFAULT_ORACLE_CAP,
    csl_square_root_witness,
    divisibility_report,
    intersect_csm,
    is_scaled_rotated_copy,
    is_similar_sublattice_2d,
    oracle_index,
    sum_index,
)
from .gram import GramModule, lattice_from_gram
from .maps import (
    AnyMap,
    CoincidenceMap,
    SimilarityMap,
    compose,
    denominator,
    inverse,
    is_coincidence,
    is_symmetry,
    make_coincidence,
    make_similarity,
)
from .numberfield import minimal_polynomial
from .scaling import (
    coset_of,
    degree_check,
    multiplier_ring,
    phi_kernel_test,
    scal_module_of_map,
    unit_coset,
)

SUITES = ("den-sig", "scal-group", "sigma-inv", "rings")


@dataclass
class VerifyConfig:
    seed: int = 42
    random_maps: int = 200
    pairs_per_lattice: int = 100
    planar_sigma_max: int = 50
    cubic_norm_max: int = 50
    ssl_sigma_max: int = 30
    pool_size: int = 24
    oracle_cap: int = DEFAULT_ORACLE_CAP
    oracle_sigma_max: int = 1000


@dataclass
class Claim:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: Optional[dict] = None
    _key: Any = None

    def record(self, ok: bool, key: Any = None, detail: Optional[Callable[[], dict]] = None) -> bool:
        if ok:
            self.passed += 1
            return True
        self.failed += 1
        if self.counterexample is None or (key is not None and self._key is not None and key < self._key):
            self._key = key
            self.counterexample = detail() if detail else {"key": repr(key)}
        return False

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def to_json(self) -> dict:
        out = {"claim": self.name, "passed": self.passed, "failed": self.failed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteResult:
    suite: str
    claims: dict = dc_field(default_factory=dict)

    def claim(self, name: str) -> Claim:
        if name not in self.claims:
            self.claims[name] = Claim(name)
        return self.claims[name]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims.values())

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "claims": [c.to_json() for c in self.claims.values()],
        }


def _mat_json(a: mx.Matrix) -> list:
    return [[str(x) for x in row] for row in a]


def _map_detail(label: str, f: AnyMap, **extra) -> Callable[[], dict]:
    def build() -> dict:
        out = {"label": label, "module": f.module.label, "matrix": _mat_json(f.matrix)}
        out.update({k: (str(v) if not isinstance(v, (int, bool, dict, list)) else v) for k, v in extra.items()})
        return out

    return build


# -- random maps --------------------------------------------------------------


def pythagorean_rotation(rng: random.Random, d: int, bound: int = 6) -> mx.Matrix:
    """Rotation in a random coordinate plane by the angle of ``m + n i``."""
    while True:
        m, n = rng.randint(1, bound), rng.randint(-bound, bound)
        if n and math.gcd(m, n) == 1:
            break
    nrm = m * m + n * n
    c, s = Fraction(m * m - n * n, nrm), Fraction(2 * m * n, nrm)
    i, j = sorted(rng.sample(range(d), 2))
    rows = [[Fraction(int(r == q)) for q in range(d)] for r in range(d)]
    rows[i][i], rows[i][j], rows[j][i], rows[j][j] = c, -s, s, c
    return mx.to_matrix(rows)


def random_orthogonal(rng: random.Random, d: int, factors: int = 3) -> mx.Matrix:
    """Exact rational orthogonal matrix: a product of plane rotations, optionally with a reflection."""
    out = mx.identity(d, Fraction(1), Fraction(0))
    for _ in range(rng.randint(1, factors)):
        out = mx.matmul(pythagorean_rotation(rng, d), out)
    if rng.random() < 0.5:
        flip = mx.to_matrix([[Fraction(-1 if (r == q == 0) else int(r == q)) for q in range(d)] for r in range(d)])
        out = mx.matmul(flip, out)
    return out


def random_basis(rng: random.Random, d: int, bound: int = 2) -> mx.Matrix:
    """Nonsingular integer matrix; its columns span a sublattice of ``Z^d``."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)]
        for r in range(d):
            rows[r][r] += bound + 1
        p = mx.to_matrix(rows)
        if mx.det_bareiss(p) != 0:
            return p


def random_coincidence(rng: random.Random, d: int) -> CoincidenceMap:
    """Random coincidence map on ``Z^d`` or, half of the time, on a random sublattice ``P Z^d``."""
    r = random_orthogonal(rng, d)
    if rng.random() < 0.5:
        return make_coincidence(cat.standard_lattice(_CUBIC_NAMES[d]), r)
    p = random_basis(rng, d)
    gram = mx.matmul(mx.transpose(p), p)
    m = lattice_from_gram(gram, label=f"P^T P, P={_mat_json(p)}")
    t = mx.matmul(mx.matmul(mx.inverse(mx.as_fractions(p)), r), p)
    return make_coincidence(m, t)


_CUBIC_NAMES = {2: "square", 3: "cubic", 4: "hypercubic4"}


def random_maps(seed: int, count: int) -> list[tuple[str, CoincidenceMap]]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        d = (2, 3, 4)[i % 3]
        out.append((f"random[{seed}:{i}] d={d}", random_coincidence(rng, d)))
    return out


def similarity_pool(name: str, rng: random.Random, size: int) -> list[tuple[str, SimilarityMap]]:
    """Random similarity maps on a standard lattice (coincidences included)."""
    m = cat.standard_lattice(name)
    out = []
    while len(out) < size:
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        if name in ("square", "hexagonal"):
            if a == 0 and b == 0:
                continue
            mat = cat.gaussian_matrix(a, b) if name == "square" else cat.eisenstein_matrix(a, b)
            label = f"{name}:mul({a},{b})"
            if rng.random() < 0.3:
                sym = cat.lattice_symmetries(m)
                g = sym[rng.randrange(len(sym))]
                mat = mx.matmul(mat, g)
                label += "*sym"
        elif name == "cubic":
            q = (rng.randint(0, 3), rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
            if not any(q):
                continue
            mat = cat.cayley_matrix(*q)
            label = f"cubic:cayley{q}"
        elif name == "hypercubic4":
            p = tuple(rng.randint(-2, 2) for _ in range(4))
            q = tuple(rng.randint(-2, 2) for _ in range(4))
            if not any(p) or not any(q):
                continue
            choice = rng.randrange(3)
            if choice == 0:
                mat, label = cat.quaternion_left(*p), f"hyper:left{p}"
            elif choice == 1:
                mat, label = cat.quaternion_right(*q), f"hyper:right{q}"
            else:
                mat = mx.matmul(cat.quaternion_left(*p), cat.quaternion_right(*q))
                label = f"hyper:left{p}right{q}"
        else:
            raise cat.CatalogError(f"no similarity pool for {name!r}")
        out.append((label, make_similarity(m, mat)))
    return out


def module_pool(m: GramModule, rng: random.Random, size: int) -> list[tuple[str, AnyMap]]:
    """Similarity maps on a cyclotomic module: multiplications, conjugation, and rotations ``z / z̄``."""
    conj = cat.conjugation_map(m)
    out: list[tuple[str, AnyMap]] = [("conj", conj)]
    while len(out) < size:
        z = [rng.randint(-2, 2) for _ in range(4)]
        if not any(z):
            continue
        f = cat.multiplication_map(m, z)
        kind = rng.randrange(3)
        if kind == 0:
            out.append((f"mul{tuple(z)}", f))
        elif kind == 1:
            out.append((f"mul{tuple(z)}*conj", compose(f, conj)))
        else:
            zbar = compose(compose(conj, f), conj)
            out.append((f"mul{tuple(z)}/conj", compose(f, inverse(zbar))))
    return out


# -- shared checks ------------------------------------------------------------


def _sigma_key(sig: int, label: str) -> tuple:
    return (sig, label)


def catalog_maps(cfg: VerifyConfig) -> list[tuple[str, CoincidenceMap, int]]:
    """(label, map, Σ) for the planar catalogs and the primitive cubic quaternions."""
    out = []
    for name in ("square", "hexagonal"):
        for e in cat.enumerate_coincidence(name, cfg.planar_sigma_max):
            out.append((f"{name}:{e.label}", e.map, e.sigma))
    for q in cat.quaternion_params(cfg.cubic_norm_max):
        e = cat.make_entry("quaternion", q)
        out.append((f"cubic:{e.label}", e.map, e.sigma))
    return out


def _record_divisibility(res: SuiteResult, label: str, t: CoincidenceMap) -> None:
    rep = divisibility_report(t, label)
    key = _sigma_key(rep.sigma, label)
    for name, ok in rep.checks.items():
        res.claim(name).record(ok, key, _map_detail(label, t, report=rep.to_json()))
    res.claim("report_consistent").record(rep.consistent(), key, _map_detail(label, t))


def _record_den_mult(res: SuiteResult, name: str, pool: Sequence[tuple[str, SimilarityMap]], rng: random.Random, count: int) -> None:
    c = res.claim(f"den_mult_pairs[{name}]")
    for _ in range(count):
        (l1, f), (l2, g) = rng.choice(pool), rng.choice(pool)
        ratio = denominator(f) * denominator(g) / denominator(compose(f, g))
        label = f"{l1} o {l2}"
        c.record(ratio.is_positive_integer(), (label,), _map_detail(label, compose(f, g), ratio=str(ratio)))
        for lab, h in ((l1, f), (l2, g)):
            den = denominator(h)
            res.claim("den_pow_d_integer").record(
                _is_positive_integer_power(den, h.module.rank), (lab,), _map_detail(lab, h, den=str(den))
            )


def _is_positive_integer_power(x, d: int) -> bool:
    return (x**d).is_positive_integer()


# -- suites -------------------------------------------------------------------


def suite_den_sig(cfg: VerifyConfig, extra: Sequence[tuple[str, AnyMap]] = ()) -> SuiteResult:
    res = SuiteResult("den-sig")
    for label, t, sig in catalog_maps(cfg):
        _record_divisibility(res, label, t)
        key = _sigma_key(sig, label)
        den, den_inv = denominator(t).to_int(), denominator(inverse(t)).to_int()
        if label.startswith("cubic:"):
            res.claim("cubic_sigma_equals_den").record(
                sig == den == den_inv, key, _map_detail(label, t, sigma=sig, den=den, den_inv=den_inv)
            )
            res.claim("cubic_sigma_odd").record(sig % 2 == 1, key, _map_detail(label, t, sigma=sig))
        else:
            res.claim("planar_sigma_equals_den").record(
                sig == den == den_inv, key, _map_detail(label, t, sigma=sig, den=den, den_inv=den_inv)
            )
            if sig <= cfg.ssl_sigma_max:
                _record_planar_ssl(res, label, t, sig)
    for label, t in random_maps(cfg.seed, cfg.random_maps):
        _record_divisibility(res, label, t)
    rng = random.Random(cfg.seed + 1)
    for name in ("square", "hexagonal", "cubic", "hypercubic4"):
        pool = similarity_pool(name, rng, cfg.pool_size)
        _record_den_mult(res, name, pool, rng, cfg.pairs_per_lattice)
    for label, f in extra:
        _record_extra(res, label, f)
    return res


def _record_planar_ssl(res: SuiteResult, label: str, t: CoincidenceMap, sig: int) -> None:
    key = _sigma_key(sig, label)
    csl = intersect_csm(t)
    ok, factor = is_similar_sublattice_2d(t.module, csl)
    res.claim("csl_is_similar_sublattice").record(ok and factor == sig, key, _map_detail(label, t, factor=str(factor)))
    if mx.det(t.matrix) == 1:
        w = csl_square_root_witness(t)
        # den(S) S Λ is spanned by the columns of the primitive matrix of S
        den_s = denominator(w.similarity)
        image = nf.lattice_basis(w.similarity.matrix)
        res.claim("csl_square_root_witness").record(
            image == csl.basis and den_s.squared() == sig, key, _map_detail(label, t, witness=_mat_json(w.similarity.matrix))
        )
    if sig > 1 and not is_symmetry(t):
        res.claim("csl_not_scaled_copy").record(not is_scaled_rotated_copy(t), key, _map_detail(label, t))


def _record_extra(res: SuiteResult, label: str, f: AnyMap) -> None:
    """User-supplied maps: lattice coincidences get the divisibility checks, others the scal checks."""
    t = is_coincidence(f)
    if t is not None and f.module.is_lattice:
        _record_divisibility(res, label, t)
        _record_index(res, label, t, DEFAULT_ORACLE_CAP, 1000)
    else:
        _record_scal_single(res, label, f)


def _record_index(res: SuiteResult, label: str, t: CoincidenceMap, cap: int, sigma_max: int) -> None:
    csl = intersect_csm(t)
    sig = csl.index
    key = _sigma_key(sig, label)
    res.claim("sigma_inverse").record(intersect_csm(inverse(t)).index == sig, key, _map_detail(label, t, sigma=sig))
    si = sum_index(t)
    res.claim("sum_index").record(si == sig, key, _map_detail(label, t, sigma=sig, sum_index=si))
    res.claim("csl_hnf").record(nf.is_hnf(csl.basis), key, _map_detail(label, t))
    res.claim("intersection_routes_agree").record(
        _routes_agree(t), key, _map_detail(label, t)
    )
    if sig <= sigma_max and sig <= cap:
        o = oracle_index(csl.basis, cap)
        res.claim("oracle_index").record(o == sig, key, _map_detail(label, t, sigma=sig, oracle=o))


def _routes_agree(t: CoincidenceMap) -> bool:
    try:
        intersect_csm(t, cross_check=True)
    except AssertionError:
        return False
    return True


def suite_sigma_inv(cfg: VerifyConfig, extra: Sequence[tuple[str, AnyMap]] = ()) -> SuiteResult:
    res = SuiteResult("sigma-inv")
    maps = [(label, t) for label, t, _ in catalog_maps(cfg)] + random_maps(cfg.seed, cfg.random_maps)
    for label, t in maps:
        _record_index(res, label, t, cfg.oracle_cap, cfg.oracle_sigma_max)
    # modules: coincidence rotations z / z̄ on cyclotomic modules
    rng = random.Random(cfg.seed + 2)
    for n in (8, 12):
        m = cat.cyclotomic_module(n)
        for label, f in module_pool(m, rng, cfg.pool_size):
            t = is_coincidence(f)
            if t is not None:
                _record_index(res, f"Z[xi{n}]:{label}", t, cfg.oracle_cap, cfg.oracle_sigma_max)
    for label, f in extra:
        t = is_coincidence(f)
        if t is not None:
            _record_index(res, label, t, cfg.oracle_cap, cfg.oracle_sigma_max)
    return res


def scal_modules() -> list[GramModule]:
    return [
        cat.standard_lattice("square"),
        cat.cyclotomic_module(8),
        cat.cyclotomic_module(12),
    ]


def _pool_for(m: GramModule, rng: random.Random, size: int) -> list[tuple[str, AnyMap]]:
    if m.is_lattice:
        return similarity_pool(m.label, rng, size)
    return module_pool(m, rng, size)


def _record_scal_single(res: SuiteResult, label: str, f: AnyMap) -> None:
    m = f.module
    key = (label,)
    coset = coset_of(f)
    kernel = phi_kernel_test(f)
    coin = is_coincidence(f) is not None
    res.claim("phi_kernel_equals_coincidence").record(
        kernel == coin, key, _map_detail(label, f, phi_kernel=kernel, is_coincidence=coin)
    )
    res.claim("inverse_coset").record(
        (coset * coset_of(inverse(f))).is_unit(), key, _map_detail(label, f, coset=str(coset))
    )
    sm = scal_module_of_map(f)
    res.claim("scal_module_stable").record(sm.stable_under_ring(), key, _map_detail(label, f))
    res.claim("scal_module_contains_map").record(
        sm.contains_matrix(mx.as_fractions(_similarity_matrix(f))), key, _map_detail(label, f)
    )
    for beta in sm.scalars:
        rep = degree_check(beta, m.rank)
        res.claim("scal_degree_bound").record(rep.ok, key, _map_detail(label, f, degree=rep.to_json()))


def _similarity_matrix(f: AnyMap) -> mx.Matrix:
    return f.matrix if isinstance(f, SimilarityMap) else make_similarity(f.module, f.matrix).matrix


def suite_scal_group(cfg: VerifyConfig, extra: Sequence[tuple[str, AnyMap]] = ()) -> SuiteResult:
    res = SuiteResult("scal-group")
    rng = random.Random(cfg.seed + 3)
    for m in scal_modules():
        pool = _pool_for(m, rng, cfg.pool_size)
        tag = m.label
        res.claim(f"pool_size[{tag}]").record(len(pool) >= 20, (tag,), lambda: {"size": len(pool)})
        for label, f in pool:
            _record_scal_single(res, f"{tag}:{label}", f)
        cosets = [coset_of(f) for _, f in pool]
        for (l1, f), c1 in zip(pool, cosets):
            for (l2, g), c2 in zip(pool, cosets):
                label = f"{tag}:{l1} o {l2}"
                ok = coset_of(compose(f, g)) == c1 * c2
                res.claim("coset_homomorphism").record(ok, (label,), _map_detail(label, compose(f, g)))
    # the η module: the multiplication-by-η scale generates an infinite cyclic image
    em = cat.eta_module()
    eta = cat.multiplication_map(em, [0, 1, 0])
    unit = unit_coset(em)
    c = coset_of(eta)
    for n in range(1, 13):
        res.claim("eta_coset_nontrivial").record(not (c**n == unit), (n,), lambda n=n: {"power": n})
    res.claim("eta_not_coincidence").record(is_coincidence(eta) is None, (0,), _map_detail("eta", eta))
    _record_scal_single(res, "Z[eta]:mul(eta)", eta)
    for label, f in extra:
        _record_scal_single(res, label, f)
    return res


def ring_modules() -> list[GramModule]:
    return [
        cat.standard_lattice("square"),
        cat.standard_lattice("hexagonal"),
        cat.standard_lattice("cubic"),
        cat.standard_lattice("hypercubic4"),
        cat.cyclotomic_module(5),
        cat.cyclotomic_module(8),
        cat.cyclotomic_module(12),
        cat.xi8_index4_submodule(),
        cat.eta_module(),
    ]


def suite_rings(cfg: VerifyConfig, extra: Sequence[tuple[str, AnyMap]] = ()) -> SuiteResult:
    res = SuiteResult("rings")
    for m in ring_modules():
        ring = multiplier_ring(m)
        key = (m.label,)
        for name, ok in ring.checks.items():
            res.claim(f"ring_{name}").record(ok, key, lambda m=m, ring=ring: {"module": m.label, "checks": dict(ring.checks)})
        for alpha in ring.scalars:
            p = minimal_polynomial(alpha)
            ok = polys.is_integral(p) and polys.degree(p) <= m.rank * (m.rank - 1)
            res.claim("ring_degree_bound").record(ok, key, lambda m=m, p=p: {"module": m.label, "min_poly": polys.to_str(p)})
        if m.is_lattice:
            res.claim("lattice_ring_is_Z").record(ring.rank == 1, key, lambda m=m: {"module": m.label})
    sub = cat.xi8_index4_submodule()
    ring = multiplier_ring(sub)
    polys_str = [polys.to_str(p) for p in ring.minimal_polynomials()]
    res.claim("xi8_index4_ring").record(
        ring.rank == 2 and "x^2 - 8" in polys_str, ("xi8",), lambda: {"rank": ring.rank, "min_polys": polys_str}
    )
    idx = cat.xi8_index4_index()
    res.claim("xi8_index4_index").record(idx == 4, ("xi8",), lambda: {"index": idx})
    em = cat.eta_module()
    eta = cat.multiplication_map(em, [0, 1, 0])
    rep = degree_check(eta.scale, em.rank)
    res.claim("eta_scale_degree_6").record(
        rep.ok and rep.degree == 6 and rep.min_poly == polys.poly([-1, 0, 0, 0, -3, 0, 1]),
        ("eta",),
        lambda: rep.to_json(),
    )
    return res


_SUITE_FUNCS = {
    "den-sig": suite_den_sig,
    "scal-group": suite_scal_group,
    "sigma-inv": suite_sigma_inv,
    "rings": suite_rings,
}


def run_suites(
    suite: str, cfg: VerifyConfig, extra: Sequence[tuple[str, AnyMap]] = ()
) -> list[SuiteResult]:
    names = SUITES if suite == "all" else (suite,)
    unknown = [n for n in names if n not in _SUITE_FUNCS]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; known: {', '.join(SUITES)}, all")
    return [_SUITE_FUNCS[n](cfg, extra) for n in names]
