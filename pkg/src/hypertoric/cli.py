"""Command-line front end.

Spec files are TOML with sections ``[torus]`` (``N``, ``basis``),
``[parameter]`` (``alpha``, ``beta_re``, ``beta_im`` as ``"p/q"`` strings or
integers) and an optional ``[point]`` (``z2``/``w2`` rationals, or ``z``/``w``
as ``[re, im]`` pairs).  Indices in every report are 1-based.

Exit codes: 0 success, 1 usage, 2 parse, 3 precondition, 4 internal.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .arrangement import bounded_complex, build_arrangement, core_components, enumerate_faces
from .figures import FigureError, arrangement_svg, chamber_svg, emit_svg
from .git_stability import (ExactModuli, NumericPoint, kempf_ness_descent, moment_complex,
                            moment_real, stability_report)
from .topology import (CIRCUITS, EMPTY_INTERSECTIONS, TopologyError, cohomology_presentation,
                       component_ideal, hilbert_function, poincare_polynomial,
                       reduce_presentation)
from .torus_model import (InvalidTorus, Parameter, TorusSpec, UnsaturatedLattice,
                          enumerate_walls, is_regular_value, is_smooth, validate_spec)
from .wallcross import (WallCrossError, chamber_of, classify_crossing, enumerate_chambers,
                        period)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class PreconditionError(ValueError):
    pass


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# spec files
# --------------------------------------------------------------------------

@dataclass
class SpecFile:
    N: int
    basis: list[list[int]]
    parameter: Optional[Parameter] = None
    moduli: Optional[ExactModuli] = None
    point: Optional[NumericPoint] = None
    path: str = ""

    def torus(self) -> TorusSpec:
        try:
            return validate_spec(self.basis, N=self.N)
        except UnsaturatedLattice as exc:
            raise PreconditionError(f"{exc}; saturated basis: {exc.saturated}") from exc
        except InvalidTorus as exc:
            raise PreconditionError(str(exc)) from exc

    def require_parameter(self) -> Parameter:
        if self.parameter is None:
            raise PreconditionError("spec file has no [parameter] section")
        return self.parameter


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value: Any, where: str = "", line: Optional[int] = None) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: {value!r} is not an exact rational", line)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        if _RATIONAL.match(text):
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise ParseError(f"{where}: zero denominator in {value!r}", line)
            return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"{where}: malformed rational {value!r}", line)


def parse_rational_list(text: str) -> list[Fraction]:
    """Comma-separated rationals, as used by ``cross --to``."""
    try:
        return [parse_rational(t, "vector") for t in text.split(",") if t.strip()]
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


class _Lines:
    """Line numbers of sections, keys and bracketed rows in the raw text."""

    def __init__(self, text: str):
        self.lines = text.splitlines()

    def key(self, section: str, key: str) -> Optional[int]:
        current = None
        for no, raw in enumerate(self.lines, 1):
            s = raw.split("#", 1)[0].strip()
            if s.startswith("[") and s.endswith("]") and "=" not in s:
                current = s[1:-1].strip()
            elif current == section and re.match(rf"{re.escape(key)}\s*=", s):
                return no
        return None

    def section(self, section: str) -> Optional[int]:
        for no, raw in enumerate(self.lines, 1):
            if raw.split("#", 1)[0].strip() == f"[{section}]":
                return no
        return None

    def row(self, section: str, key: str, index: int) -> Optional[int]:
        start = self.key(section, key)
        if start is None:
            return None
        depth, seen = 0, -1
        for no in range(start, len(self.lines) + 1):
            s = self.lines[no - 1].split("#", 1)[0]
            if no == start:
                s = s.split("=", 1)[1]
            for ch in s:
                if ch == "[":
                    depth += 1
                    if depth == 2:
                        seen += 1
                        if seen == index:
                            return no
                elif ch == "]":
                    depth -= 1
                    if depth == 0:
                        return start
        return start


def parse_spec_text(text: str, path: str = "<string>") -> SpecFile:
    text = text.replace("−", "-")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ParseError(f"malformed spec: {exc}", int(m.group(1)) if m else None) from exc
    where = _Lines(text)
    torus = data.get("torus")
    if not isinstance(torus, dict):
        raise ParseError("missing [torus] section")
    if "basis" not in torus:
        raise ParseError("[torus] has no basis", where.section("torus"))
    basis = torus["basis"]
    bline = where.key("torus", "basis")
    if not isinstance(basis, list) or not all(isinstance(r, list) for r in basis):
        raise ParseError("basis must be a list of bracketed integer rows", bline)
    rows: list[list[int]] = []
    for k, row in enumerate(basis):
        rline = where.row("torus", "basis", k)
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"basis row {k + 1}: entry {x!r} is not an integer", rline)
        rows.append(list(row))
    N = torus.get("N")
    if N is None:
        if not rows:
            raise ParseError("[torus] needs N when the basis is empty", where.section("torus"))
        N = len(rows[0])
    if isinstance(N, bool) or not isinstance(N, int) or N < 0:
        raise ParseError(f"N must be a nonnegative integer, got {N!r}", where.key("torus", "N"))
    for k, row in enumerate(rows):
        if len(row) != N:
            raise ParseError(f"basis row {k + 1} has length {len(row)}, expected N={N}",
                             where.row("torus", "basis", k))
    d = len(rows)

    param = None
    if "parameter" in data:
        sec = data["parameter"]
        vals = {}
        for key in ("alpha", "beta_re", "beta_im"):
            line = where.key("parameter", key)
            raw = sec.get(key)
            if raw is None:
                if key == "alpha":
                    raise ParseError("[parameter] has no alpha", where.section("parameter"))
                vals[key] = [Fraction(0)] * d
                continue
            if not isinstance(raw, list):
                raw = [raw]
            vals[key] = [parse_rational(x, key, line) for x in raw]
            if len(vals[key]) != d:
                raise ParseError(f"{key} has length {len(vals[key])}, expected d={d}", line)
        param = Parameter(tuple(vals["alpha"]), tuple(vals["beta_re"]), tuple(vals["beta_im"]))

    moduli = point = None
    if "point" in data:
        sec = data["point"]
        if "z" in sec or "w" in sec:
            pair = {}
            for key in ("z", "w"):
                line = where.key("point", key)
                raw = sec.get(key, [[0, 0]] * N)
                try:
                    pair[key] = [complex(float(c[0]), float(c[1])) for c in raw]
                except (TypeError, ValueError, IndexError) as exc:
                    raise ParseError(f"{key} must be a list of [re, im] pairs", line) from exc
                if len(pair[key]) != N:
                    raise ParseError(f"{key} has length {len(pair[key])}, expected N={N}", line)
            point = NumericPoint.make(pair["z"], pair["w"])
            moduli = point.moduli()
        else:
            vals = {}
            for key in ("z2", "w2"):
                line = where.key("point", key)
                raw = sec.get(key, [0] * N)
                vals[key] = [parse_rational(x, key, line) for x in raw]
                if len(vals[key]) != N:
                    raise ParseError(f"{key} has length {len(vals[key])}, expected N={N}", line)
                if any(x < 0 for x in vals[key]):
                    raise ParseError(f"{key} entries must be nonnegative", line)
            moduli = ExactModuli(tuple(vals["z2"]), tuple(vals["w2"]))
    return SpecFile(N=N, basis=rows, parameter=param, moduli=moduli, point=point, path=path)


def parse_spec(path: str) -> SpecFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_spec_text(text, path)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str, float)):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj)]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _one(indices) -> list[int]:
    return [i + 1 for i in sorted(indices)]


def _sign(sign: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in sign)


def _vec(v: Sequence) -> list[str]:
    return [str(Fraction(x)) for x in v]


# --------------------------------------------------------------------------
# commands: each returns (results, summary lines, warnings)
# --------------------------------------------------------------------------

@dataclass
class Context:
    sf: SpecFile
    args: argparse.Namespace

    @property
    def spec(self) -> TorusSpec:
        return self.sf.torus()

    def regular_alpha(self, need_beta_zero: bool = False) -> Parameter:
        param = self.sf.require_parameter()
        spec = self.spec
        ok, bad = is_regular_value(spec, param if not need_beta_zero
                                   else Parameter(param.alpha, (Fraction(0),) * spec.d,
                                                  (Fraction(0),) * spec.d))
        if not ok:
            raise PreconditionError("not a regular value: alpha lies on "
                                    + ", ".join(f"W_{w.id + 1}" for w in bad))
        return param


def cmd_validate(ctx: Context):
    spec = ctx.spec
    smooth, _ = is_smooth(spec)
    res = {"N": spec.N, "d": spec.d, "n": spec.n, "basis": [list(r) for r in spec.B],
           "gale_dual": [list(r) for r in spec.A], "smooth": smooth,
           "split_indices": _one(spec.split_indices),
           "empty_hyperplanes": _one(spec.empty_hyperplane_indices)}
    return res, [f"valid torus: N={spec.N}, d={spec.d}, n={spec.n}"], []


def _walls(spec: TorusSpec):
    return [{"id": w.id + 1, "circuit": _one(w.circuit), "normal": list(w.normal),
             "ambient_normal": w.ambient_normal(spec), "span_set": _one(w.span_set)}
            for w in enumerate_walls(spec)]


def cmd_walls(ctx: Context):
    walls = _walls(ctx.spec)
    lines = [f"{len(walls)} walls"] + [
        f"W_{w['id']}: J = {{{','.join(map(str, w['circuit']))}}}, Y = {tuple(w['normal'])}"
        for w in walls]
    return {"walls": walls}, lines, []


def cmd_regular(ctx: Context):
    param = ctx.sf.require_parameter()
    ok, bad = is_regular_value(ctx.spec, param)
    res = {"regular": ok, "violating_walls": [w.id + 1 for w in bad]}
    return res, ["regular" if ok else "not regular"], []


def cmd_smooth(ctx: Context):
    ok, witness = is_smooth(ctx.spec)
    res = {"smooth": ok, "witness": _one(witness) if witness else None}
    line = "smooth" if ok else f"not smooth (witness {{{','.join(map(str, _one(witness)))}}})"
    return res, [line], []


def cmd_arrangement(ctx: Context):
    param = ctx.sf.require_parameter()
    spec = ctx.spec
    arr = build_arrangement(spec, param.alpha)
    faces = enumerate_faces(arr)
    cx = bounded_complex(arr, faces)
    by_dim = [sum(1 for f in faces if f.dim == k) for k in range(spec.n + 1)]
    res = {"hyperplanes": [{"index": H.index + 1, "normal": list(H.normal), "offset": H.offset}
                           for H in arr.hyperplanes],
           "face_counts": by_dim, "bounded_face_counts": cx.d}
    if ctx.args.svg:
        emit_svg(arrangement_svg(spec, param.alpha), ctx.args.svg)
    return res, [f"{len(faces)} faces, bounded face counts {cx.d}"], []


def cmd_betti(ctx: Context):
    param = ctx.regular_alpha(need_beta_zero=True)
    P = poincare_polynomial(ctx.spec, param.alpha)
    res = {"poincare": str(P), "betti": list(P.coefficients), "face_counts": list(P.face_counts)}
    return res, [f"P = {P}"], []


def cmd_ring(ctx: Context):
    spec = ctx.spec
    mode = CIRCUITS if ctx.args.mode == "circuits" else EMPTY_INTERSECTIONS
    alpha = None
    if mode == EMPTY_INTERSECTIONS:
        alpha = ctx.regular_alpha(need_beta_zero=True).alpha
    pres = cohomology_presentation(spec, mode, alpha)
    res = {"mode": pres.mode, "coefficients": pres.coefficient_validity,
           "linear_relations": pres.linear_strings(),
           "monomial_relations": pres.monomial_strings()}
    lines = ["linear: " + ", ".join(res["linear_relations"]),
             "monomial: " + ", ".join(res["monomial_relations"])]
    if ctx.args.reduced:
        red = reduce_presentation(pres)
        hf = hilbert_function(red, spec.n + 1)
        res["reduced"] = str(red)
        res["hilbert_function"] = list(hf.values)
        lines = [str(red)]
    return res, lines, []


def cmd_core(ctx: Context):
    param = ctx.regular_alpha(need_beta_zero=True)
    spec = ctx.spec
    arr = build_arrangement(spec, param.alpha)
    faces = enumerate_faces(arr)
    try:
        cc = core_components(arr, faces)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    comps = []
    for ch in cc.components:
        hf = hilbert_function(reduce_presentation(component_ideal(spec, param.alpha, ch.sign, arr)),
                              spec.n + 1)
        betti = list(hf.values)
        while betti and betti[-1] == 0:
            betti.pop()
        comps.append({"sign": _sign(ch.sign), "vertices": [_vec(v) for v in ch.vertices],
                      "betti": betti})
    inter = [{"components": [a + 1, b + 1], "face": _sign(f.sign) if f else None,
              "dim": f.dim if f else None} for (a, b), f in sorted(cc.intersections.items())]
    res = {"components": comps, "intersections": inter}
    return res, [f"{len(comps)} core components: " + ", ".join(c["sign"] for c in comps)], []


def cmd_chambers(ctx: Context):
    spec = ctx.spec
    param = ctx.sf.parameter
    re_, im_ = (param.beta_re, param.beta_im) if param else (None, None)
    cs = enumerate_chambers(spec, re_, im_)
    res = {"active_walls": [s + 1 for s in cs.active], "count": cs.count,
           "chambers": [{"sign": _sign(s), "witness": _vec(w)} for s, w in cs.chambers],
           "adjacent": [{"chambers": [i + 1, j + 1], "wall": s + 1}
                        for i, j, s in cs.adjacent_pairs()]}
    if param is not None:
        loc = chamber_of(spec, param.alpha, re_, im_)
        res["alpha_chamber"] = _sign(loc.sign) if loc.regular else None
        res["alpha_on_walls"] = [s + 1 for s in loc.on_walls]
    if ctx.args.svg:
        emit_svg(chamber_svg(spec, re_, im_), ctx.args.svg)
    return res, [f"{cs.count} chambers"], []


def cmd_cross(ctx: Context):
    if not ctx.args.to:
        raise UsageError("cross needs --to <alpha>")
    param = ctx.sf.require_parameter()
    target = parse_rational_list(ctx.args.to)
    spec = ctx.spec
    if len(target) != spec.d:
        raise UsageError(f"--to has length {len(target)}, expected d={spec.d}")
    rep = classify_crossing(spec, param.alpha, target, param.beta_re, param.beta_im)
    v0 = rep.v0_spec
    res = {"wall": rep.wall + 1, "circuit": _one(rep.circuit), "normal": list(rep.normal),
           "kind": rep.kind, "fiber_projective_dim": rep.fiber_projective_dim,
           "codim": rep.codim, "alpha_on_wall": _vec(rep.alpha_on_wall),
           "v0": {"N": v0.N, "d": v0.d, "n": v0.n, "basis": [list(r) for r in v0.B],
                  "columns": [c + 1 for c in rep.v0_columns],
                  "alpha": _vec(rep.v0_parameter.alpha),
                  "beta_re": _vec(rep.v0_parameter.beta_re),
                  "beta_im": _vec(rep.v0_parameter.beta_im)},
           "notes": list(rep.notes)}
    if rep.kind == "mukai_flop":
        line = (f"mukai_flop across W_{rep.wall + 1}: fiber CP^{rep.fiber_projective_dim}, "
                f"codim {rep.codim}")
    else:
        line = f"isomorphism across W_{rep.wall + 1}"
    return res, [line], []


def _moduli(ctx: Context) -> ExactModuli:
    if ctx.sf.moduli is None:
        raise PreconditionError("spec file has no [point] section")
    return ctx.sf.moduli


def cmd_stability(ctx: Context):
    param = ctx.sf.require_parameter()
    m = _moduli(ctx)
    spec = ctx.spec
    rep = stability_report(m, param.alpha, spec)
    res = {"semistable": rep.semistable, "closed_orbit": rep.closed_orbit,
           "destabilizing_direction": rep.direction, "reason": rep.reason,
           "moment_real": _vec(moment_real(m, spec))}
    word = "closed orbit" if rep.closed_orbit else "semistable" if rep.semistable else "unstable"
    return res, [word], []


def cmd_flow(ctx: Context):
    param = ctx.sf.require_parameter()
    spec = ctx.spec
    m = _moduli(ctx)
    p = ctx.sf.point if ctx.sf.point is not None else m
    beta = None
    if ctx.sf.point is not None:
        beta = [complex(float(a), float(b)) for a, b in zip(param.beta_re, param.beta_im)]
    fr = kempf_ness_descent(p, param.alpha, spec, tol=ctx.args.tol, max_iter=ctx.args.max_iter,
                            beta=beta)
    res = {"status": fr.status, "minimizer": fr.minimizer, "residual": fr.residual,
           "iterations": fr.iterations, "certificate": fr.certificate,
           "exact_residual": fr.exact_residual}
    line = fr.status
    if fr.converged:
        line += ", X* = (" + ", ".join(f"{x:.6f}" for x in fr.minimizer) + ")"
    return res, [line], fr.warnings


def cmd_period(ctx: Context):
    param = ctx.sf.require_parameter()
    pr = period(ctx.spec, param.alpha, param.beta_re, param.beta_im)
    res = {"omega_1": _vec(pr.omega_1), "omega_c_re": _vec(pr.omega_c_re),
           "omega_c_im": _vec(pr.omega_c_im)}
    return res, ["[omega_1] = (" + ", ".join(res["omega_1"]) + ")"], []


REPORT_SECTIONS = ("validate", "walls", "smooth", "regular", "arrangement", "betti", "ring",
                   "core", "chambers", "stability", "flow", "period")


def cmd_report(ctx: Context):
    ctx.spec  # invalid tori fail the whole report
    res, lines, warnings = {}, [], []
    args = argparse.Namespace(**{**vars(ctx.args), "svg": None, "mode": "circuits",
                                 "reduced": True})
    sub = Context(ctx.sf, args)
    for name in REPORT_SECTIONS:
        try:
            r, l, w = COMMANDS[name](sub)
        except (PreconditionError, TopologyError, WallCrossError, FigureError) as exc:
            warnings.append(f"{name}: skipped ({exc})")
            continue
        res[name] = r
        lines.extend(f"{name}: {x}" for x in l)
        warnings.extend(f"{name}: {x}" for x in w)
    return res, lines, warnings


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "walls": cmd_walls, "regular": cmd_regular, "smooth": cmd_smooth,
    "arrangement": cmd_arrangement, "betti": cmd_betti, "ring": cmd_ring, "core": cmd_core,
    "chambers": cmd_chambers, "cross": cmd_cross, "stability": cmd_stability, "flow": cmd_flow,
    "period": cmd_period, "report": cmd_report,
}


def run(command: str, sf: SpecFile, args: argparse.Namespace) -> dict:
    results, summary, warnings = COMMANDS[command](Context(sf, args))
    inputs = {"file": os.path.basename(sf.path), "N": sf.N, "basis": sf.basis}
    if sf.parameter is not None:
        inputs.update(alpha=list(sf.parameter.alpha), beta_re=list(sf.parameter.beta_re),
                      beta_im=list(sf.parameter.beta_im))
    return {"command": command, "inputs": inputs, "results": results, "summary": summary,
            "warnings": warnings}


def render_text(report: dict) -> str:
    out = list(report["summary"])
    for w in report["warnings"]:
        out.append(f"warning: {w}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threads(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("specfile")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=_threads, default=None,
                        help="worker count (falls back to HYPERTORIC_THREADS)")
    parser = _Parser(prog="hypertoric", description="Exact invariants of toric hyperkahler varieties.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = subs.add_parser(name, parents=[common])
        if name in ("arrangement", "chambers"):
            sp.add_argument("--svg", metavar="PATH")
        if name == "ring":
            sp.add_argument("--mode", choices=["circuits", "intersections"], default="circuits")
            sp.add_argument("--reduced", action="store_true")
        if name == "cross":
            sp.add_argument("--to", metavar="ALPHA", required=True,
                            help="target alpha as comma-separated rationals")
        if name in ("flow", "report"):
            sp.add_argument("--tol", type=float, default=1e-8)
            sp.add_argument("--max-iter", type=int, default=10 ** 5)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for attr, default in (("svg", None), ("mode", "circuits"), ("reduced", False),
                          ("to", None), ("tol", 1e-8), ("max_iter", 10 ** 5)):
        if not hasattr(args, attr):
            setattr(args, attr, default)
    if args.threads is None:
        env = os.environ.get("HYPERTORIC_THREADS")
        try:
            args.threads = _threads(env) if env else 1
        except (ValueError, argparse.ArgumentTypeError):
            print(f"hypertoric: error: bad HYPERTORIC_THREADS={env!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        sf = parse_spec(args.specfile)
        report = run(args.command, sf, args)
    except ParseError as exc:
        print(f"hypertoric: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"hypertoric: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, TopologyError, WallCrossError, FigureError, ValueError) as exc:
        print(f"hypertoric: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001
        print(f"hypertoric: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(dumps(report) if args.json else render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
