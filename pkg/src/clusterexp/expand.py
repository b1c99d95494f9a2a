"""Cluster expansions of an arc by three independent routes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .laurent import LaurentPolynomial, Monomial
from .oriented import matrix_weight_polynomial
from .poset import ShapeSpec, poset_from_shape, weight_polynomial
from .surface import NOTCHED, ArcSpec, Surface, arc_to_shape, check_surface
from .twalk import enumerate_twalks, twalk_values

TWALK = "twalk"
POSET = "poset"
MATRIX = "matrix"
METHODS = (TWALK, POSET, MATRIX)


@dataclass
class ExpansionResult:
    polynomial: LaurentPolynomial
    method: str
    prefactor: Monomial | None = None
    timings: dict = field(default_factory=dict)
    methods_run: tuple = ()

    @property
    def term_count(self) -> int:
        return len(self.polynomial)


class MethodDisagreement(RuntimeError):
    def __init__(self, results: dict[str, LaurentPolynomial]):
        self.results = results
        names = list(results)
        base = results[names[0]]
        self.differences = {}
        for other in names[1:]:
            diff = symmetric_difference(base, results[other])
            if diff:
                self.differences[(names[0], other)] = diff
        super().__init__(f"methods disagree: {', '.join(f'{a} vs {b}' for a, b in self.differences)}")


def symmetric_difference(p: LaurentPolynomial, q: LaurentPolynomial) -> list[tuple[tuple, int]]:
    a = {(k, c) for k, c in p.items()}
    b = {(k, c) for k, c in q.items()}
    return sorted(a ^ b)


def _prefactor(spec: ShapeSpec) -> Monomial:
    return spec.prefactor if spec.prefactor is not None else Monomial(1)


def _substituted(spec: ShapeSpec, abstract: LaurentPolynomial) -> LaurentPolynomial:
    table = {i + 1: w for i, w in enumerate(spec.weights)}
    return abstract.substitute_w(table) * _prefactor(spec)


def _abstract(spec: ShapeSpec) -> ShapeSpec:
    return ShapeSpec(spec.n, spec.steps, spec.closure, (), spec.prefactor)


def shape_via_poset(spec: ShapeSpec, guard: int | None = None) -> LaurentPolynomial:
    return _substituted(spec, weight_polynomial(poset_from_shape(_abstract(spec)), guard))


def shape_via_matrix(spec: ShapeSpec) -> LaurentPolynomial:
    if all(w.is_constant() for w in spec.weights):
        return matrix_weight_polynomial(spec) * _prefactor(spec)
    return _substituted(spec, matrix_weight_polynomial(_abstract(spec)))


def _needs_prefactor(a: ArcSpec, spec: ShapeSpec):
    if a.kind == NOTCHED and spec.prefactor is None:
        raise ValueError(f"notched arc {a.name!r} needs a 'prefactor' entry")


def expand_via_twalks(s: Surface, a: ArcSpec, boundary_ones: bool = False, guard: int | None = None) -> ExpansionResult:
    t = time.perf_counter()
    monos = []
    for wk in enumerate_twalks(s, a, guard):
        xv, yv = twalk_values(wk, boundary_ones)
        monos.append(xv * yv)
    poly = LaurentPolynomial.from_monomials(monos)
    return ExpansionResult(poly, TWALK, None, {TWALK: time.perf_counter() - t}, (TWALK,))


def expand_via_poset(s: Surface, a: ArcSpec, boundary_ones: bool = False, guard: int | None = None) -> ExpansionResult:
    t = time.perf_counter()
    spec = arc_to_shape(s, a, boundary_ones)
    _needs_prefactor(a, spec)
    poly = shape_via_poset(spec, guard)
    return ExpansionResult(poly, POSET, spec.prefactor, {POSET: time.perf_counter() - t}, (POSET,))


def expand_via_matrix(s: Surface, a: ArcSpec, boundary_ones: bool = False) -> ExpansionResult:
    t = time.perf_counter()
    spec = arc_to_shape(s, a, boundary_ones)
    _needs_prefactor(a, spec)
    poly = shape_via_matrix(spec)
    return ExpansionResult(poly, MATRIX, spec.prefactor, {MATRIX: time.perf_counter() - t}, (MATRIX,))


def _agree(results: dict[str, ExpansionResult], method: str) -> ExpansionResult:
    polys = {k: r.polynomial for k, r in results.items()}
    first = next(iter(polys.values()))
    if any(p != first for p in polys.values()):
        raise MethodDisagreement(polys)
    timings = {}
    for r in results.values():
        timings.update(r.timings)
    pre = next((r.prefactor for r in results.values() if r.prefactor is not None), None)
    return ExpansionResult(first, method, pre, timings, tuple(results))


def expand_all(s: Surface, a: ArcSpec, boundary_ones: bool = False, guard: int | None = None) -> ExpansionResult:
    """Run every applicable method and insist they agree.

    Notched arcs have no walk model, so only the poset and matrix routes run.
    """
    check_surface(s)
    results = {}
    if a.kind != NOTCHED:
        results[TWALK] = expand_via_twalks(s, a, boundary_ones, guard)
    results[POSET] = expand_via_poset(s, a, boundary_ones, guard)
    results[MATRIX] = expand_via_matrix(s, a, boundary_ones)
    return _agree(results, "all")


def expand(s: Surface, a: ArcSpec, method: str = "all", boundary_ones: bool = False, guard: int | None = None) -> ExpansionResult:
    if method == "all":
        return expand_all(s, a, boundary_ones, guard)
    check_surface(s)
    if method == TWALK:
        return expand_via_twalks(s, a, boundary_ones, guard)
    if method == POSET:
        return expand_via_poset(s, a, boundary_ones, guard)
    if method == MATRIX:
        return expand_via_matrix(s, a, boundary_ones)
    raise ValueError(f"unknown method {method!r}")


def expand_shape(spec: ShapeSpec, method: str = "all", guard: int | None = None) -> ExpansionResult:
    """Prefactor times the weight polynomial of a bare shape."""
    runners = {
        POSET: lambda: shape_via_poset(spec, guard),
        MATRIX: lambda: shape_via_matrix(spec),
    }
    if method == TWALK:
        raise ValueError("a bare shape has no T-walks; use the poset or matrix method")
    chosen = list(runners) if method == "all" else [method]
    results = {}
    for m in chosen:
        if m not in runners:
            raise ValueError(f"unknown method {m!r}")
        t = time.perf_counter()
        poly = runners[m]()
        results[m] = ExpansionResult(poly, m, spec.prefactor, {m: time.perf_counter() - t}, (m,))
    if len(results) == 1:
        return next(iter(results.values()))
    return _agree(results, "all")
