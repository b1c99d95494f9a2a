"""Command-line front end.

    clusterexp expand   --input FILE [--arc NAME] [--method M] [--format F]
    clusterexp twalks   --input FILE [--arc NAME]
    clusterexp poset    --input FILE [--arc NAME]
    clusterexp matrix   --input SHAPE
    clusterexp validate --input FILE

FILE is a surface (has "triangles") or a bare shape (has "steps").
Exit status: 0 ok, 2 bad input, 3 the methods disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .expand import MATRIX, MethodDisagreement, expand, expand_shape
from .laurent import LaurentPolynomial, ParseError, decode_var
from .oriented import is_traced, matrix_weight_polynomial, shape_to_matrix
from .poset import DEFAULT_GUARD, HARD_GUARD, GuardExceeded, InvalidSpec, ShapeSpec, closure_to_dict, poset_from_shape
from .surface import Surface, SurfaceError, arc_to_shape, cross_monomial, surface_from_dict, validate_surface
from .twalk import NotSupported, enumerate_twalks, twalk_values

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3


@dataclass
class RunConfig:
    input_path: str
    arc_name: str | None = None
    method: str = "auto"
    format: str = "text"
    boundary_ones: bool = False
    guard_override: int | None = None

    @property
    def guard(self) -> int:
        return DEFAULT_GUARD if self.guard_override is None else self.guard_override


class InputError(Exception):
    pass


def _load(path: str) -> Surface | ShapeSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if isinstance(data, dict) and "triangles" in data:
        return surface_from_dict(data)
    if isinstance(data, dict) and "steps" in data:
        return ShapeSpec.from_dict(data)
    raise InputError(f"{path}: neither a surface (needs 'triangles') nor a shape (needs 'steps')")


def _resolve_method(cfg: RunConfig, n: int) -> str:
    if cfg.method != "auto":
        if cfg.method == "all" and n > cfg.guard:
            raise GuardExceeded(f"method 'all' needs n <= {cfg.guard}, arc has {n}; use --method matrix")
        return cfg.method
    return "all" if n <= cfg.guard else MATRIX


def _structured_terms(p: LaurentPolynomial) -> list:
    return p.to_structured()


def cmd_expand(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    obj = _load(cfg.input_path)
    if isinstance(obj, ShapeSpec):
        method = _resolve_method(cfg, obj.n)
        res = expand_shape(obj, method, cfg.guard)
        name, cross = None, None
    else:
        arc = obj.arc(cfg.arc_name)
        method = _resolve_method(cfg, arc.n)
        res = expand(obj, arc, method, cfg.boundary_ones, cfg.guard)
        name, cross = arc.name, cross_monomial(obj, arc)
    poly = res.polynomial
    runs = ", ".join(res.methods_run)
    if cfg.format == "structured":
        doc = {
            "arc": name,
            "method": res.method,
            "methods_run": list(res.methods_run),
            "term_count": res.term_count,
            "timings": res.timings,
            "prefactor": None if res.prefactor is None else str(res.prefactor),
            "terms": _structured_terms(poly),
        }
        out.write(json.dumps(doc, indent=1) + "\n")
    elif cfg.format == "latex":
        lhs = f"x_{{\\mathrm{{{name}}}}}" if name else "W"
        if cross is not None and not cross.is_constant():
            body = (poly * cross).format("latex")
            out.write(f"{lhs}=\\frac{{1}}{{{cross.latex()}}}\\left({body}\\right)\n")
        else:
            out.write(f"{lhs}={poly.format('latex')}\n")
    else:
        out.write(poly.format("text") + "\n")
    err.write(f"terms: {res.term_count}  methods: {runs}\n")
    return EXIT_OK


def _bits_text(bits) -> str:
    return "(" + ",".join(str(b) for b in bits) + ")"


def cmd_twalks(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    obj = _load(cfg.input_path)
    if not isinstance(obj, Surface):
        raise InputError("twalks needs a surface file")
    arc = obj.arc(cfg.arc_name)
    _check(obj)
    walks = enumerate_twalks(obj, arc, cfg.guard)
    rows = []
    for wk in walks:
        xv, yv = twalk_values(wk, cfg.boundary_ones)
        rows.append((wk, xv, yv))
    if cfg.format == "structured":
        doc = [{"v": list(wk.bits), "walk": wk.text(), "labels": list(wk.labels()),
                "x": str(xv), "y": str(yv)} for wk, xv, yv in rows]
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        for wk, xv, yv in rows:
            if cfg.format == "latex":
                out.write(f"{_bits_text(wk.bits)} & {wk.text()} & {xv.latex()} & {yv.latex()} \\\\\n")
            else:
                out.write(f"v={_bits_text(wk.bits)}  T={wk.text()}  x={xv}  y={yv}\n")
    err.write(f"walks: {len(walks)}\n")
    return EXIT_OK


def _shape_lines(spec: ShapeSpec) -> list[str]:
    P = poset_from_shape(spec)
    covers = ", ".join(f"{a}<{b}" for a, b in sorted(P.covers))
    lines = [
        f"elements: {spec.n}",
        f"steps: {spec.steps or '-'}",
        f"closure: {json.dumps(closure_to_dict(spec.closure))}",
        f"covers: {covers or '-'}",
    ]
    lines += [f"weight {i}: {w}" for i, w in enumerate(spec.weights, start=1)]
    if spec.prefactor is not None:
        lines.append(f"prefactor: {spec.prefactor}")
    return lines


def cmd_poset(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    obj = _load(cfg.input_path)
    if isinstance(obj, ShapeSpec):
        spec = obj
    else:
        arc = obj.arc(cfg.arc_name)
        _check(obj)
        spec = arc_to_shape(obj, arc, cfg.boundary_ones)
    if cfg.format == "structured":
        doc = spec.to_dict()
        doc["covers"] = sorted(poset_from_shape(spec).covers)
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        out.write("\n".join(_shape_lines(spec)) + "\n")
    return EXIT_OK


def cmd_matrix(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    obj = _load(cfg.input_path)
    if not isinstance(obj, ShapeSpec):
        raise InputError("matrix needs a shape file")
    m = shape_to_matrix(obj)
    traced = is_traced(obj)

    def fmt(v):
        p = LaurentPolynomial.coerce(v)
        return p.format("latex" if cfg.format == "latex" else "text")

    W = matrix_weight_polynomial(obj)
    if cfg.format == "structured":
        doc = {"tail": m.tail, "entries": [[fmt(m.a), fmt(m.b)], [fmt(m.c), fmt(m.d)]],
               "read": "trace" if traced else ("top-left" if m.tail == "D" else "top-row"),
               "weight_polynomial": W.to_structured(), "term_count": len(W)}
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        out.write(f"tail: {m.tail}\n")
        out.write(f"[1,1]: {fmt(m.a)}\n[1,2]: {fmt(m.b)}\n[2,1]: {fmt(m.c)}\n[2,2]: {fmt(m.d)}\n")
        out.write(f"weight: {fmt(W)}\n")
    err.write(f"terms: {len(W)}\n")
    return EXIT_OK


def _check(s: Surface):
    probs = validate_surface(s)
    if probs:
        raise SurfaceError(probs)


def cmd_validate(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    obj = _load(cfg.input_path)
    if isinstance(obj, ShapeSpec):
        poset_from_shape(obj)
        out.write("ok\n")
        return EXIT_OK
    probs = validate_surface(obj)
    for p in probs:
        out.write(f"{p}\n")
    if probs:
        return EXIT_INPUT
    out.write(f"ok: {len(obj.triangles)} triangles, {len(obj.edges)} edges, {len(obj.arcs)} arcs\n")
    return EXIT_OK


COMMANDS = {
    "expand": cmd_expand,
    "twalks": cmd_twalks,
    "poset": cmd_poset,
    "matrix": cmd_matrix,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clusterexp", description="Cluster expansions of arcs in triangulated surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="surface or shape JSON file")
        p.add_argument("--arc", default=None, help="arc name (optional when the surface has one arc)")
        p.add_argument("--method", default="auto", choices=["auto", "all", "twalk", "poset", "matrix"])
        p.add_argument("--format", default="text", choices=["text", "structured", "latex"])
        p.add_argument("--boundary-ones", action="store_true", help="set boundary edge variables to 1")
        p.add_argument("--guard", type=int, default=None, help=f"enumeration guard (default {DEFAULT_GUARD}, max {HARD_GUARD})")
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        # integer-specialized expansions of long arcs have huge coefficients
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    if args.guard is not None and not 0 <= args.guard <= HARD_GUARD:
        err.write(f"error: --guard must be between 0 and {HARD_GUARD}\n")
        return EXIT_INPUT
    cfg = RunConfig(args.input, args.arc, args.method, args.format, args.boundary_ones, args.guard)
    try:
        return COMMANDS[args.command](cfg, out, err)
    except MethodDisagreement as exc:
        err.write(f"error: {exc}\n")
        for (a, b), diff in exc.differences.items():
            err.write(f"symmetric difference {a} vs {b}:\n")
            for exps, c in diff:
                mono = " ".join(f"{decode_var(k)}^{e}" for k, e in exps) or "1"
                err.write(f"  {c:+d} {mono}\n")
        return EXIT_DISAGREE
    except SurfaceError as exc:
        for d in exc.diagnostics:
            err.write(f"error: {d}\n")
        return EXIT_INPUT
    except KeyError as exc:
        err.write(f"error: {exc.args[0]}\n")
        return EXIT_INPUT
    except (InputError, InvalidSpec, GuardExceeded, ParseError, NotSupported, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_exit():
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
