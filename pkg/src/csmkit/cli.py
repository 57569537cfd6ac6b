"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import catalogs as cat
from .engine import divisibility_report, intersect_csm, sum_index
from .gram import GramModule, ModuleValidationError, module_from_json
from .maps import (
    AnyMap,
    NotAnIsometryError,
    NotASimilarityError,
    inverse,
    is_coincidence,
    is_symmetry,
    map_from_json,
)
from .matrices import RankError
from .numberfield import FieldDomainError, FieldMismatchError
from .scaling import coset_of, multiplier_ring, ring_report
from .verify import SUITES, VerifyConfig, run_suites

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
FORMATS = ("text", "json", "csv")

BUILTIN_MODULES = {
    "square": lambda: cat.standard_lattice("square"),
    "hexagonal": lambda: cat.standard_lattice("hexagonal"),
    "cubic": lambda: cat.standard_lattice("cubic"),
    "hypercubic4": lambda: cat.standard_lattice("hypercubic4"),
    "xi5": lambda: cat.cyclotomic_module(5),
    "xi8": lambda: cat.cyclotomic_module(8),
    "xi12": lambda: cat.cyclotomic_module(12),
    "xi8-index4": cat.xi8_index4_submodule,
    "eta": cat.eta_module,
}

_INPUT_ERRORS = (
    OSError,
    json.JSONDecodeError,
    KeyError,
    TypeError,
    ValueError,
    ZeroDivisionError,
    ModuleValidationError,
    NotAnIsometryError,
    NotASimilarityError,
    RankError,
    FieldDomainError,
    FieldMismatchError,
)


class InputError(Exception):
    """Bad input file or option; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    module: Optional[str] = None
    map: Optional[str] = None
    name: Optional[str] = None
    sigma_max: int = 1
    format: str = "text"
    seed: int = 42
    suite: str = "all"
    extra_maps: Optional[str] = None


# -- loading ------------------------------------------------------------------


def load_module(spec: str) -> GramModule:
    """A module from a JSON file, or ``builtin:NAME`` for a catalog module."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in BUILTIN_MODULES:
            raise InputError(f"unknown builtin module {name!r}; known: {', '.join(BUILTIN_MODULES)}")
        return BUILTIN_MODULES[name]()
    return module_from_data(_read_json(spec))


def module_from_data(data) -> GramModule:
    if isinstance(data, str):
        return load_module(data)
    if not isinstance(data, dict):
        raise InputError("module must be a JSON object or a 'builtin:NAME' string")
    return module_from_json(data)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON ({e})") from e
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e


def load_map(m: GramModule, path: str) -> AnyMap:
    data = _read_json(path)
    if not isinstance(data, dict) or "matrix" not in data:
        raise InputError(f"{path}: map JSON needs a 'matrix'")
    return map_from_json(m, data)


# -- output helpers -------------------------------------------------------------


def _mat(a) -> list:
    return [[str(x) for x in row] for row in a]


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _dump_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _checks_str(checks: dict) -> str:
    return ";".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in checks.items())


# -- commands -------------------------------------------------------------------


def csl_report(m: GramModule, f: AnyMap, label: str = "") -> dict:
    """Everything ``csl`` prints, as plain JSON data."""
    out: dict = {"label": label, "module": m.label, "rank": m.rank, "dim": m.ambient_dim}
    t = is_coincidence(f)
    out["is_coincidence"] = t is not None
    out["coset"] = "unit" if t is not None else str(coset_of(f).representative)
    if t is None:
        return out
    csl = intersect_csm(t)
    out["sigma"] = csl.index
    out["hnf"] = _mat(csl.basis)
    out["symmetry"] = is_symmetry(t)
    if m.is_lattice:
        rep = divisibility_report(t, label)
        out["den"] = rep.den_r
        out["den_inv"] = rep.den_rinv
        out["checks"] = dict(rep.checks)
    else:
        out["checks"] = {
            "sigma_inverse": intersect_csm(inverse(t)).index == csl.index,
            "sum_index": sum_index(t) == csl.index,
        }
    return out


def cmd_csl(cfg: RunConfig) -> tuple[int, str]:
    m = load_module(cfg.module)
    f = load_map(m, cfg.map)
    rep = csl_report(m, f, label=Path(cfg.map).stem)
    if cfg.format == "json":
        return EXIT_OK, _dump_json(rep)
    if cfg.format == "csv":
        header = ["label", "is_coincidence", "coset", "sigma", "den", "den_inv", "checks"]
        row = [rep["label"], rep["is_coincidence"], rep["coset"], rep.get("sigma", ""),
               rep.get("den", ""), rep.get("den_inv", ""), _checks_str(rep.get("checks", {}))]
        return EXIT_OK, _dump_csv(header, [row])
    lines = [f"module: {rep['module'] or '(unnamed)'} (k={rep['rank']}, d={rep['dim']})",
             f"is_coincidence: {str(rep['is_coincidence']).lower()}",
             f"coset: {rep['coset']}"]
    if rep["is_coincidence"]:
        lines.append(f"sigma: {rep['sigma']}")
        lines.append("csm basis (columns, HNF):")
        lines.extend("  " + " ".join(f"{x:>6}" for x in row) for row in rep["hnf"])
        if "den" in rep:
            lines.append(f"den: {rep['den']}")
            lines.append(f"den_inv: {rep['den_inv']}")
        for name, ok in rep["checks"].items():
            lines.append(f"  {name}: {'pass' if ok else 'FAIL'}")
    return EXIT_OK, "\n".join(lines)


def catalog_rows(name: str, sigma_max: int) -> list[dict]:
    rows = []
    for e in cat.enumerate_coincidence(name, sigma_max):
        rep = divisibility_report(e.map, e.label)
        rows.append(
            {
                "label": e.label,
                "params": list(e.params),
                "sigma": e.sigma,
                "den": rep.den_r,
                "den_inv": rep.den_rinv,
                "checks_passed": rep.passed,
                "matrix": _mat(e.map.matrix),
                "csl_basis": _mat(e.csl_basis),
            }
        )
    return rows


def cmd_catalog(cfg: RunConfig) -> tuple[int, str]:
    if cfg.name not in ("square", "hexagonal", "cubic"):
        raise InputError(f"unknown catalog {cfg.name!r}; known: square, hexagonal, cubic")
    if cfg.sigma_max < 1:
        raise InputError("--max-sigma must be at least 1")
    rows = catalog_rows(cfg.name, cfg.sigma_max)
    if cfg.format == "json":
        return EXIT_OK, _dump_json({"lattice": cfg.name, "max_sigma": cfg.sigma_max, "entries": rows})
    if cfg.format == "csv":
        header = ["label", "params", "sigma", "den", "den_inv", "checks_passed"]
        body = [[r["label"], " ".join(map(str, r["params"])), r["sigma"], r["den"], r["den_inv"], r["checks_passed"]]
                for r in rows]
        return EXIT_OK, _dump_csv(header, body)
    lines = [f"{cfg.name} coincidence catalog, sigma <= {cfg.sigma_max}: {len(rows)} entries"]
    lines.append(f"{'sigma':>6} {'den':>5} {'den_inv':>7}  {'checks':<6}  label")
    for r in rows:
        lines.append(f"{r['sigma']:>6} {r['den']:>5} {r['den_inv']:>7}  {'pass' if r['checks_passed'] else 'FAIL':<6}  {r['label']}")
    return EXIT_OK, "\n".join(lines)


def cmd_ring(cfg: RunConfig) -> tuple[int, str]:
    m = load_module(cfg.module)
    rep = ring_report(multiplier_ring(m))
    rep["module"] = m.label
    if cfg.format == "json":
        return EXIT_OK, _dump_json(rep)
    if cfg.format == "csv":
        rows = [[i, b["min_poly"], " ".join(b["scalar"])] for i, b in enumerate(rep["basis"])]
        return EXIT_OK, _dump_csv(["index", "min_poly", "scalar_coords"], rows)
    lines = [f"multiplier ring of {m.label or '(unnamed)'}: rank {rep['rank']} (k={rep['k']}, d={rep['d']})"]
    for b in rep["basis"]:
        lines.append(f"  scalar with minimal polynomial {b['min_poly']}")
    if rep["rank"] == 1:
        lines.append("  ring = Z")
    for name, ok in rep["checks"].items():
        lines.append(f"  {name}: {'pass' if ok else 'FAIL'}")
    return EXIT_OK, "\n".join(lines)


def load_extra_maps(path: str) -> list:
    """``{"module": ..., "maps": [{"label", "matrix", "kind", "expect"?}]}``.

    Matrices that fail validation are kept as failed records, not input errors:
    the file asserts they are valid maps.
    """
    data = _read_json(path)
    if not isinstance(data, dict) or "maps" not in data or "module" not in data:
        raise InputError(f"{path}: extra-maps JSON needs 'module' and 'maps'")
    m = module_from_data(data["module"])
    out = []
    for i, rec in enumerate(data["maps"]):
        label = rec.get("label", f"extra[{i}]")
        try:
            f = map_from_json(m, rec)
        except (NotAnIsometryError, NotASimilarityError, RankError) as e:
            out.append((label, None, {"error": str(e), "matrix": rec.get("matrix")}))
            continue
        out.append((label, f, rec.get("expect", {})))
    return out


def _check_expectations(results, records) -> None:
    from .verify import SuiteResult

    res = SuiteResult("extra-records")
    for label, f, expect in records:
        if f is None:
            res.claim("record_is_valid_map").record(False, (label,), lambda label=label, expect=expect: {"label": label, **expect})
            continue
        res.claim("record_is_valid_map").record(True)
        if not expect:
            continue
        rep = csl_report(f.module, f, label)
        got = {k: rep.get(k) for k in expect}
        res.claim("record_matches_expectation").record(
            got == expect, (label,), lambda label=label, got=got, expect=expect: {"label": label, "expected": expect, "computed": got}
        )
    if res.claims:
        results.append(res)


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    if cfg.suite not in SUITES + ("all",):
        raise InputError(f"unknown suite {cfg.suite!r}; known: {', '.join(SUITES)}, all")
    if cfg.seed < 0 or cfg.seed >= 2**64:
        raise InputError("--seed must be an unsigned 64-bit integer")
    records = load_extra_maps(cfg.extra_maps) if cfg.extra_maps else []
    extra = [(label, f) for label, f, _ in records if f is not None]
    results = run_suites(cfg.suite, VerifyConfig(seed=cfg.seed), extra)
    _check_expectations(results, records)
    ok = all(r.ok for r in results)
    code = EXIT_OK if ok else EXIT_FAIL
    if cfg.format == "json":
        return code, _dump_json({"seed": cfg.seed, "ok": ok, "suites": [r.to_json() for r in results]})
    if cfg.format == "csv":
        rows = [[r.suite, c.name, c.passed, c.failed] for r in results for c in r.claims.values()]
        return code, _dump_csv(["suite", "claim", "passed", "failed"], rows)
    lines = []
    for r in results:
        lines.append(f"[{r.suite}] {'PASS' if r.ok else 'FAIL'}")
        for c in r.claims.values():
            lines.append(f"  {'ok  ' if c.ok else 'FAIL'} {c.name}: {c.passed} passed, {c.failed} failed")
            if c.counterexample is not None:
                lines.append("       counterexample: " + json.dumps(c.counterexample, ensure_ascii=False))
    lines.append(f"overall: {'PASS' if ok else 'FAIL'} (seed {cfg.seed})")
    return code, "\n".join(lines)


COMMANDS = {"csl": cmd_csl, "catalog": cmd_catalog, "ring": cmd_ring, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csmkit", description="Coincidence site lattices and modules, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("csl", help="coincidence site module of one map")
    c.add_argument("--module", required=True, help="module JSON file or builtin:NAME")
    c.add_argument("--map", required=True, help="map JSON file")
    c.add_argument("--format", choices=FORMATS, default="text")

    c = sub.add_parser("catalog", help="enumerate coincidence maps of a standard lattice")
    c.add_argument("--name", required=True, help="square, hexagonal or cubic")
    c.add_argument("--max-sigma", dest="sigma_max", type=int, required=True)
    c.add_argument("--format", choices=FORMATS, default="text")

    c = sub.add_parser("ring", help="multiplier ring of a module")
    c.add_argument("--module", required=True, help="module JSON file or builtin:NAME")
    c.add_argument("--format", choices=FORMATS, default="text")

    c = sub.add_parser("verify", help="run the property suites")
    c.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    c.add_argument("--seed", type=int, default=42)
    c.add_argument("--extra-maps", dest="extra_maps", help="JSON file of additional maps to verify")
    c.add_argument("--format", choices=FORMATS, default="text")
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Parse ``argv`` and return ``(exit code, output text)``."""
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), ""
    cfg = RunConfig(**{k: v for k, v in vars(ns).items()})
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as e:
        return EXIT_INPUT, f"error: {e}"
    except _INPUT_ERRORS as e:
        return EXIT_INPUT, f"error: {type(e).__name__}: {e}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    if text:
        stream = sys.stdout if code != EXIT_INPUT else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
