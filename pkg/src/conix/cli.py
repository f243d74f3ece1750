"""``intersect`` command: intersect two conics and report the four points.

Exit codes: 0 success, 1 unusable input (parse error, degenerate or identical
conics), 2 failed self-verification (residual above tolerance, methods
disagree, or an internal method failure).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import fixtures
from .canonical import intersect_canonical
from .errors import (
    AllZeroCoefficients,
    ConixError,
    DegenerateConic,
    DenominatorCollapse,
    IdenticalConics,
    ParseError,
    ZeroMatrix,
)
from .projective import (
    AsymmetricMatrixWarning,
    Conic,
    conic_from_coefficients,
    conic_from_matrix,
    normalize_affine,
)
from .result import IntersectionSet
from .selfpolar import intersect_self_polar
from .verify import match_point_sets, oracle_intersect, residual_report

METHODS = ("canonical", "selfpolar", "both", "oracle")
OUTPUTS = ("text", "json")
FILTERS = ("all", "real-affine")
REAL_TOL = 1e-9

INPUT_ERRORS = (ParseError, AllZeroCoefficients, ZeroMatrix, DegenerateConic, IdenticalConics)


@dataclass(frozen=True)
class RunConfig:
    method: str = "both"
    tolerance: float = 1e-8
    output: str = "text"
    filter: str = "all"
    fixture: str | None = None
    match_tol: float = 1e-6

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if not self.match_tol > 0:
            raise ValueError(f"match tolerance must be positive, got {self.match_tol}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.output not in OUTPUTS:
            raise ValueError(f"output must be one of {OUTPUTS}")
        if self.filter not in FILTERS:
            raise ValueError(f"filter must be one of {FILTERS}")


def _parse_number(token: str, position: int) -> complex:
    tok = token.strip().replace(" ", "")
    if not tok:
        raise ParseError(f"empty entry at position {position}", position)
    try:
        z = complex(tok.replace("i", "j"))
    except ValueError:
        raise ParseError(f"cannot read {token!r} at position {position} as a number", position) from None
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ParseError(f"non-finite entry {token!r} at position {position}", position)
    return z


def parse_conic(spec: str) -> Conic:
    """Conic from ``"a,b,c,d,e,f"`` or nine row-major matrix entries.

    Entries are real (``"-2.5"``) or complex (``"1+2i"``). Asymmetric
    matrices are symmetrized with an :class:`AsymmetricMatrixWarning`.
    """
    tokens = spec.split(",")
    values = [_parse_number(t, k + 1) for k, t in enumerate(tokens)]
    if len(values) == 6:
        return conic_from_coefficients(*values)
    if len(values) == 9:
        return conic_from_matrix(np.array(values).reshape(3, 3))
    raise ParseError(f"expected 6 coefficients or 9 matrix entries, got {len(values)}")


def _cx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _is_real_affine(point) -> bool:
    aff = normalize_affine(point)
    if aff.at_infinity:
        return False
    return all(abs(z.imag) <= REAL_TOL * max(1.0, abs(z.real)) for z in aff.coords)


def _point_record(point, multiplicity: int, res: float) -> dict:
    aff = normalize_affine(point)
    x, y, w = point.coords
    return {
        "x": _cx(x),
        "y": _cx(y),
        "w": _cx(w),
        "at_infinity": aff.at_infinity,
        "affine": None if aff.at_infinity else [_cx(c) for c in aff.coords],
        "multiplicity": multiplicity,
        "residual": res,
        "real_affine": _is_real_affine(point),
    }


def _diagnostics_record(s: IntersectionSet) -> dict:
    d = s.diagnostics
    out = {}
    for key in ("degree_drop", "resolvent_branch", "recovered_reference", "swapped", "rotation"):
        if key in d:
            out[key] = d[key]
    out["tangency"] = bool(d.get("tangency", False))
    if d.get("tangency"):
        out["tangent_point"] = [_cx(c) for c in d["tangent_point"].coords]
    if "double_contact" in d:
        out["double_contact"] = bool(d["double_contact"])
    if "offdiagonal_mass" in d:
        out["offdiagonal_mass"] = d["offdiagonal_mass"]
    if "rerouted_from" in d:
        out["rerouted_from"] = d["rerouted_from"]
    return out


def _result_record(s: IntersectionSet, C1: Conic, C2: Conic, config: RunConfig) -> dict:
    res = residual_report(C1, C2, s)
    mult = s.multiplicities()
    points = [_point_record(p, m, r) for p, m, r in zip(s.points, mult, res)]
    if config.filter == "real-affine":
        points = [p for p in points if p["real_affine"]]
    return {
        "method": s.method,
        "points": points,
        "max_residual": max(res),
        "diagnostics": _diagnostics_record(s),
    }


def _conic_record(C: Conic) -> list:
    return [[_cx(v) for v in row] for row in C.matrix]


def _solve(name: str, C1: Conic, C2: Conic, notes: list[str]) -> IntersectionSet:
    if name == "canonical":
        return intersect_canonical(C1, C2)
    if name == "oracle":
        return oracle_intersect(C1, C2)
    try:
        s = intersect_self_polar(C1, C2)
    except DenominatorCollapse as exc:
        notes.append(f"self-polar: {exc}; rerouting to the canonical method")
        s = intersect_canonical(C1, C2)
        s.diagnostics["rerouted_from"] = "self-polar"
        return s
    if s.method == "self-polar-tangent":
        t = normalize_affine(s.diagnostics["tangent_point"])
        notes.append(f"self-polar: conics touch at {_fmt_point(t)}; using the tangent path")
    return s


def run(config: RunConfig, c1spec: str | None = None, c2spec: str | None = None, stderr=None) -> tuple[int, str]:
    """Execute one invocation; returns ``(exit_code, serialized_report)``.

    Warnings (asymmetric input, tangency, reroutes) are listed under
    ``"warnings"`` in the report and also written to ``stderr`` if given.
    """
    code, report = _run(config, c1spec, c2spec)
    if stderr is not None:
        for note in report["warnings"]:
            print(f"intersect: warning: {note}", file=stderr)
    return code, _serialize(report, config)


def _run(config: RunConfig, c1spec, c2spec) -> tuple[int, dict]:
    notes: list[str] = []
    report: dict = {"method": config.method, "tolerance": config.tolerance, "warnings": notes}
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", AsymmetricMatrixWarning)
            if config.fixture is not None:
                fx = fixtures.get(config.fixture)
                C1, C2 = fx.c1, fx.c2
                report["fixture"] = fx.name
            else:
                if c1spec is None or c2spec is None:
                    raise ParseError("both --conic1 and --conic2 are required without --fixture")
                C1, C2 = parse_conic(c1spec), parse_conic(c2spec)
        notes.extend(str(w.message) for w in caught)
    except (*INPUT_ERRORS, ValueError) as exc:
        report.update(status="input-error", error=f"{type(exc).__name__}: {exc}")
        return 1, report
    report["conic1"] = _conic_record(C1)
    report["conic2"] = _conic_record(C2)

    names = ("canonical", "selfpolar") if config.method == "both" else (config.method,)
    results: dict[str, dict] = {}
    sets: list[IntersectionSet] = []
    try:
        for name in names:
            s = _solve(name, C1, C2, notes)
            sets.append(s)
            results[name] = _result_record(s, C1, C2, config)
    except INPUT_ERRORS as exc:
        report.update(status="input-error", error=f"{type(exc).__name__}: {exc}")
        return 1, report
    except ConixError as exc:
        report.update(results=results, status="internal-error", error=f"{type(exc).__name__}: {exc}")
        return 2, report
    report["results"] = results

    code = 0
    failures = []
    for name, s in zip(names, sets):
        worst = max(residual_report(C1, C2, s))
        if worst > config.tolerance:
            failures.append(f"{name}: max residual {worst:.3g} exceeds tolerance {config.tolerance:.3g}")
    if len(sets) == 2:
        m = match_point_sets(sets[0], sets[1], config.match_tol)
        report["match"] = {
            "matched": m.matched,
            "pairing": list(m.pairing),
            "max_distance": m.max_distance,
            "tolerance": config.match_tol,
        }
        if not m.matched:
            failures.append(f"methods disagree (max distance {m.max_distance:.3g})")
    if failures:
        code = 2
        report["error"] = "; ".join(failures)
    report["status"] = "ok" if code == 0 else "verification-failed"
    return code, report


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if abs(z) <= 1e-12:
        return "0"
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
        return f"{z.real:.6g}"
    if abs(z.real) <= 1e-12 * abs(z.imag):
        return f"{z.imag:.6g}i"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _fmt_point(aff) -> str:
    if aff.at_infinity:
        return "(" + " : ".join(_fmt_complex(c) for c in aff.coords) + ") at infinity"
    return "(" + ", ".join(_fmt_complex(c) for c in aff.coords) + ")"


def _text(report: dict) -> str:
    lines = []
    if "fixture" in report:
        lines.append(f"fixture: {report['fixture']}")
    if "error" in report and "results" not in report:
        lines.append(f"error: {report['error']}")
        return "\n".join(lines) + "\n"
    for name, res in report.get("results", {}).items():
        lines.append(f"method: {res['method']}")
        rows = []
        for p in res["points"]:
            if p["at_infinity"]:
                x, y, w = (complex(*p[k]) for k in "xyw")
                scale = max((x, y, w), key=abs)
                coords = [_fmt_complex(v / scale) for v in (x, y, w)]
                rows.append((coords[0], coords[1], f"w={coords[2]} (at infinity)", p))
            else:
                ax, ay = (complex(*c) for c in p["affine"])
                rows.append((_fmt_complex(ax), _fmt_complex(ay), "", p))
        wx = max([len(r[0]) for r in rows] + [1])
        wy = max([len(r[1]) for r in rows] + [1])
        lines.append(f"  {'x':>{wx}}  {'y':>{wy}}  mult  residual")
        for x, y, extra, p in rows:
            tail = f"  {extra}" if extra else ""
            lines.append(f"  {x:>{wx}}  {y:>{wy}}  {p['multiplicity']:>4}  {p['residual']:.2e}{tail}")
        diag = res["diagnostics"]
        if diag.get("tangency"):
            lines.append("  tangency detected")
        if diag.get("degree_drop"):
            lines.append(f"  quartic degree drop: {diag['degree_drop']}")
        lines.append(f"  max residual: {res['max_residual']:.3g}")
    if "match" in report:
        m = report["match"]
        verdict = "matched" if m["matched"] else "NOT matched"
        lines.append(f"cross-check: {verdict} (max distance {m['max_distance']:.3g})")
    if "error" in report:
        lines.append(f"error: {report['error']}")
    return "\n".join(lines) + "\n"


def _serialize(report: dict, config: RunConfig) -> str:
    if config.output == "json":
        return json.dumps(report, indent=2) + "\n"
    return _text(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="intersect",
        description="Intersect two conics in the complex projective plane.",
        epilog=(
            "Conics are 'a,b,c,d,e,f' for a x^2 + b xy + c y^2 + d x + e y + f = 0, "
            "or nine row-major matrix entries. Complex entries look like 1+2i. "
            "Write values starting with '-' as --conic1=-1,0,..."
        ),
    )
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--conic1")
    p.add_argument("--conic2")
    p.add_argument("--tol", type=float, default=1e-8, help="residual tolerance (default 1e-8)")
    p.add_argument("--match-tol", type=float, default=1e-6, help="cross-method match tolerance")
    p.add_argument("--output", choices=OUTPUTS, default="text")
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--fixture", choices=sorted(fixtures.FIXTURES))
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            method=args.method,
            tolerance=args.tol,
            output=args.output,
            filter=args.filter,
            fixture=args.fixture,
            match_tol=args.match_tol,
        )
    except ValueError as exc:
        print(f"intersect: {exc}", file=sys.stderr)
        return 1
    code, text = run(config, args.conic1, args.conic2, stderr=sys.stderr)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
