"""Triangulated surfaces, arcs and the labeled shape of an arc.

Triangles list their corners and sides counterclockwise; side j joins corner
j to corner j+1.  A self-folded triangle is stored opened: its sides are
(loop, radius, alias) where the alias is a second copy of the radius with the
same label.  An arc is the ordered list of edges it crosses together with the
triangle before and after each crossing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .laurent import Monomial
from .poset import DOWN, UP, Band, BothLoops, InvalidSpec, ShapeSpec, SourceLoop, TargetLoop

INTERNAL = "internal"
BOUNDARY = "boundary"
RADIUS = "radius"
ALIAS = "alias"
EDGE_KINDS = (INTERNAL, BOUNDARY, RADIUS, ALIAS)

ORDINARY = "ordinary"
CLOSED = "closed"
NOTCHED = "notched"
ARC_KINDS = (ORDINARY, CLOSED, NOTCHED)


class SurfaceError(ValueError):
    """Raised for malformed surface data; carries the diagnostics."""

    def __init__(self, diagnostics: list["Diagnostic"]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class Edge:
    id: int
    label: int
    kind: str = INTERNAL
    loop_of: int | None = None
    alias_of: int | None = None


@dataclass(frozen=True)
class Triangle:
    id: int
    corners: tuple
    sides: tuple


@dataclass(frozen=True)
class Crossing:
    edge: int
    src: int
    dst: int


@dataclass(frozen=True)
class ArcSpec:
    name: str
    kind: str
    crossings: tuple
    start: int | str | None = None
    end: int | str | None = None
    notch: dict = field(default_factory=dict)
    edge: int | None = None
    prefactor: Monomial | None = None

    @property
    def n(self) -> int:
        return len(self.crossings)


class Surface:
    def __init__(self, edges: Iterable[Edge], triangles: Iterable[Triangle], arcs: Iterable[ArcSpec] = ()):
        self.edges = {}
        self.triangles = {}
        self._dupes = []
        for e in edges:
            if e.id in self.edges:
                self._dupes.append(("edge", e.id))
            self.edges[e.id] = e
        for t in triangles:
            if t.id in self.triangles:
                self._dupes.append(("triangle", t.id))
            self.triangles[t.id] = t
        self.arcs = {a.name: a for a in arcs}

    # lookups ----------------------------------------------------------
    def arc(self, name: str | None = None) -> ArcSpec:
        if name is None:
            if len(self.arcs) != 1:
                raise KeyError(f"surface has {len(self.arcs)} arcs; pick one of {sorted(self.arcs)}")
            return next(iter(self.arcs.values()))
        if name not in self.arcs:
            raise KeyError(f"no arc named {name!r}; known arcs: {sorted(self.arcs)}")
        return self.arcs[name]

    def side_index(self, tri: int, edge: int) -> int:
        sides = self.triangles[tri].sides
        if edge not in sides:
            raise SurfaceError([Diagnostic("side", f"edge {edge} is not a side of triangle {tri}")])
        return sides.index(edge)

    def succ(self, tri: int, edge: int) -> int:
        t = self.triangles[tri]
        return t.sides[(self.side_index(tri, edge) + 1) % 3]

    def pred(self, tri: int, edge: int) -> int:
        t = self.triangles[tri]
        return t.sides[(self.side_index(tri, edge) + 2) % 3]

    def partner(self, edge: int) -> int:
        """The other copy of a radius, or the edge itself."""
        e = self.edges[edge]
        if e.kind == ALIAS:
            return e.alias_of
        if e.kind == RADIUS:
            for other in self.edges.values():
                if other.kind == ALIAS and other.alias_of == edge:
                    return other.id
        return edge

    def is_radius(self, edge: int) -> bool:
        return self.edges[edge].kind in (RADIUS, ALIAS)

    def loop_of(self, edge: int) -> int:
        e = self.edges[edge]
        if e.kind == ALIAS:
            e = self.edges[e.alias_of]
        return e.loop_of

    def label(self, edge: int) -> int:
        return self.edges[edge].label

    def after_side(self, c: Crossing) -> int:
        return self.partner(c.edge) if self.is_radius(c.edge) else c.edge

    def occurrences(self, edge: int) -> list[tuple[int, int]]:
        return [(t.id, j) for t in sorted(self.triangles.values(), key=lambda t: t.id)
                for j, s in enumerate(t.sides) if s == edge]

    # serialisation ----------------------------------------------------
    def to_dict(self) -> dict:
        edges = []
        for e in sorted(self.edges.values(), key=lambda e: e.id):
            d = {"id": e.id, "label": e.label, "kind": e.kind}
            if e.loop_of is not None:
                d["loop_of"] = e.loop_of
            if e.alias_of is not None:
                d["alias_of"] = e.alias_of
            edges.append(d)
        tris = [{"id": t.id, "corners": list(t.corners), "sides": list(t.sides)}
                for t in sorted(self.triangles.values(), key=lambda t: t.id)]
        arcs = []
        for a in self.arcs.values():
            d = {"name": a.name, "type": a.kind}
            if a.start is not None:
                d["start_vertex"] = a.start
            if a.end is not None:
                d["end_vertex"] = a.end
            d["crossings"] = [{"edge": c.edge, "from_triangle": c.src, "to_triangle": c.dst} for c in a.crossings]
            if a.edge is not None:
                d["edge"] = a.edge
            if a.notch:
                d["notch"] = dict(a.notch)
            if a.prefactor is not None:
                d["prefactor"] = str(a.prefactor)
            arcs.append(d)
        return {"edges": edges, "triangles": tris, "arcs": arcs}


_KIND_NAMES = {
    "internal": INTERNAL,
    "boundary": BOUNDARY,
    "radius": RADIUS,
    "alias": ALIAS,
    "openedradiusalias": ALIAS,
    "opened_radius_alias": ALIAS,
}


def _crossing(c) -> Crossing:
    if isinstance(c, dict):
        return Crossing(int(c["edge"]), int(c["from_triangle"]), int(c["to_triangle"]))
    return Crossing(int(c[0]), int(c[1]), int(c[2]))


def surface_from_dict(data: dict) -> Surface:
    from .laurent import ParseError, parse_monomial

    problems = []
    if not isinstance(data, dict) or "triangles" not in data or "edges" not in data:
        raise SurfaceError([Diagnostic("schema", "surface needs 'edges' and 'triangles'")])
    edges = []
    for d in data["edges"]:
        try:
            raw = str(d.get("kind", INTERNAL))
            kind = _KIND_NAMES.get(raw.lower(), raw)
            edges.append(Edge(int(d["id"]), int(d.get("label", d["id"])), kind,
                              d.get("loop_of"), d.get("alias_of")))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            problems.append(Diagnostic("schema", f"bad edge record {d!r}: {exc}"))
    # aliases inherit their radius label unless one is given
    by_id = {e.id: e for e in edges}
    for i, e in enumerate(edges):
        if e.kind == ALIAS and e.alias_of in by_id and "label" not in data["edges"][i]:
            edges[i] = Edge(e.id, by_id[e.alias_of].label, e.kind, e.loop_of, e.alias_of)
    tris = []
    for d in data["triangles"]:
        try:
            tris.append(Triangle(int(d["id"]), tuple(d["corners"]), tuple(int(x) for x in d["sides"])))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            problems.append(Diagnostic("schema", f"bad triangle record {d!r}: {exc}"))
    arcs = []
    for d in data.get("arcs", []):
        try:
            pre = d.get("prefactor")
            arcs.append(ArcSpec(
                name=str(d["name"]),
                kind=d.get("type", d.get("kind", ORDINARY)),
                crossings=tuple(_crossing(c) for c in d.get("crossings", [])),
                start=d.get("start_vertex", d.get("start")),
                end=d.get("end_vertex", d.get("end")),
                notch=dict(d.get("notch") or {}),
                edge=d.get("edge"),
                prefactor=parse_monomial(pre) if pre is not None else None,
            ))
        except (KeyError, TypeError, ValueError, IndexError, AttributeError, ParseError) as exc:
            problems.append(Diagnostic("schema", f"bad arc record {d!r}: {exc}"))
    if problems:
        raise SurfaceError(problems)
    return Surface(edges, tris, arcs)


def load_surface(path: str | Path) -> Surface:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SurfaceError([Diagnostic("file", f"cannot read {path}: {exc}")]) from None
    return surface_from_dict(data)


def dumps_records(d: dict) -> str:
    """JSON with one record per line, so fixture diffs stay readable."""
    parts = []
    for k, v in d.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            body = ",\n".join("  " + json.dumps(r) for r in v)
            parts.append(f" {json.dumps(k)}: [\n{body}\n ]")
        else:
            parts.append(f" {json.dumps(k)}: {json.dumps(v)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save_surface(s: Surface, path: str | Path):
    with open(path, "w") as fh:
        fh.write(dumps_records(s.to_dict()))


def validate_surface(s: Surface) -> list[Diagnostic]:
    out = [Diagnostic("duplicate", f"{what} id {i} used twice") for what, i in s._dupes]
    uses: dict[int, list[tuple[int, int]]] = {e: [] for e in s.edges}
    for t in s.triangles.values():
        if len(t.corners) != 3 or len(t.sides) != 3:
            out.append(Diagnostic("triangle", f"triangle {t.id} needs three corners and three sides"))
            continue
        if len(set(t.sides)) != 3:
            out.append(Diagnostic("triangle", f"triangle {t.id} repeats a side (unopened self-folded triangle?)"))
        for j, e in enumerate(t.sides):
            if e not in s.edges:
                out.append(Diagnostic("edge", f"triangle {t.id} uses unknown edge {e}"))
            else:
                uses[e].append((t.id, j))

    def ends(tri: int, j: int):
        c = s.triangles[tri].corners
        return c[j], c[(j + 1) % 3]

    for e in s.edges.values():
        if e.kind not in EDGE_KINDS:
            out.append(Diagnostic("edge", f"edge {e.id} has unknown kind {e.kind!r}"))
            continue
        if e.label < 1:
            out.append(Diagnostic("edge", f"edge {e.id} has non-positive label"))
        u = uses[e.id]
        if e.kind == INTERNAL:
            if len(u) != 2:
                out.append(Diagnostic("edge", f"internal edge {e.id} is a side {len(u)} times, expected 2"))
            elif ends(*u[0]) != tuple(reversed(ends(*u[1]))):
                out.append(Diagnostic("orientation", f"edge {e.id} is not traversed oppositely by its triangles"))
        elif e.kind == BOUNDARY:
            if len(u) != 1:
                out.append(Diagnostic("edge", f"boundary edge {e.id} is a side {len(u)} times, expected 1"))
        elif e.kind == RADIUS:
            if e.loop_of not in s.edges:
                out.append(Diagnostic("radius", f"radius {e.id} names unknown loop {e.loop_of}"))
            alias = s.partner(e.id)
            if alias == e.id:
                out.append(Diagnostic("radius", f"radius {e.id} has no alias; call open_self_folded first"))
            elif len(u) != 1 or len(uses.get(alias, [])) != 1:
                out.append(Diagnostic("radius", f"radius {e.id} and its alias must each be a side once"))
            else:
                (t1, j1), (t2, j2) = u[0], uses[alias][0]
                if t1 != t2:
                    out.append(Diagnostic("radius", f"radius {e.id} and its alias lie in different triangles"))
                elif ends(t1, j1) != tuple(reversed(ends(t2, j2))):
                    out.append(Diagnostic("orientation", f"radius {e.id} and its alias are not opposite"))
                elif e.loop_of in s.triangles[t1].sides and s.succ(t1, e.id) != alias:
                    out.append(Diagnostic("radius", f"alias of radius {e.id} must follow it counterclockwise"))
        elif e.kind == ALIAS:
            r = s.edges.get(e.alias_of)
            if r is None or r.kind != RADIUS:
                out.append(Diagnostic("alias", f"alias {e.id} must refer to a radius"))
            elif r.label != e.label:
                out.append(Diagnostic("alias", f"alias {e.id} and radius {r.id} have different labels"))
    for a in s.arcs.values():
        out.extend(_validate_arc(s, a))
    return out


def _validate_arc(s: Surface, a: ArcSpec) -> list[Diagnostic]:
    out = []
    where = f"arc {a.name!r}"
    if a.kind not in ARC_KINDS:
        return [Diagnostic("arc", f"{where} has unknown kind {a.kind!r}")]
    if not a.crossings:
        if a.kind != ORDINARY or a.edge not in s.edges:
            out.append(Diagnostic("arc", f"{where} crosses nothing; it must be ordinary and name its edge"))
        return out
    for i, c in enumerate(a.crossings):
        if c.src not in s.triangles or c.dst not in s.triangles or c.edge not in s.edges:
            out.append(Diagnostic("arc", f"{where} crossing {i + 1} names an unknown edge or triangle"))
            return out
        if s.edges[c.edge].kind == BOUNDARY:
            out.append(Diagnostic("arc", f"{where} crosses boundary edge {c.edge}"))
        if c.edge not in s.triangles[c.src].sides:
            out.append(Diagnostic("arc", f"{where} crossing {i + 1}: edge {c.edge} is not a side of triangle {c.src}"))
        if s.after_side(c) not in s.triangles[c.dst].sides:
            out.append(Diagnostic("arc", f"{where} crossing {i + 1}: edge {c.edge} is not a side of triangle {c.dst}"))
        if i and a.crossings[i - 1].dst != c.src:
            out.append(Diagnostic("arc", f"{where} crossings {i} and {i + 1} do not share a triangle"))
        if i and s.after_side(a.crossings[i - 1]) == c.edge:
            out.append(Diagnostic("arc", f"{where} leaves triangle {c.src} through the side it entered"))
    if out:
        return out
    if a.kind == CLOSED:
        if a.crossings[-1].dst != a.crossings[0].src:
            out.append(Diagnostic("arc", f"{where} is closed but does not return to its first triangle"))
        elif s.after_side(a.crossings[-1]) == a.crossings[0].edge:
            out.append(Diagnostic("arc", f"{where} closes through the side it entered"))
    else:
        first, last = a.crossings[0], a.crossings[-1]
        if a.start is None or a.start not in s.triangles[first.src].corners:
            out.append(Diagnostic("arc", f"{where} start {a.start!r} is not a corner of triangle {first.src}"))
        if a.end is None or a.end not in s.triangles[last.dst].corners:
            out.append(Diagnostic("arc", f"{where} end {a.end!r} is not a corner of triangle {last.dst}"))
    if a.kind == NOTCHED:
        try:
            _notch_closure(a)
        except InvalidSpec as exc:
            out.append(Diagnostic("notch", f"{where}: {exc}"))
    return out


def check_surface(s: Surface) -> Surface:
    probs = validate_surface(s)
    if probs:
        raise SurfaceError(probs)
    return s


def open_self_folded(s: Surface) -> Surface:
    """Give each radius of an unopened self-folded triangle an alias side."""
    edges = dict(s.edges)
    tris = dict(s.triangles)
    next_id = max(edges) + 1
    for r in sorted((e for e in s.edges.values() if e.kind == RADIUS), key=lambda e: e.id):
        if s.partner(r.id) != r.id:
            continue
        for t in list(tris.values()):
            sides = list(t.sides)
            if sides.count(r.id) != 2:
                continue
            # the copy reached by going counterclockwise from the other one
            j = next(j for j in range(3) if sides[j] == r.id and sides[j - 1] == r.id)
            sides[j] = next_id
            tris[t.id] = Triangle(t.id, t.corners, tuple(sides))
            edges[next_id] = Edge(next_id, r.label, ALIAS, alias_of=r.id)
            next_id += 1
            break
    return Surface(edges.values(), tris.values(), s.arcs.values())


def relation_direction(s: Surface, tri: int, e_in: int, e_out: int) -> str:
    """D if e_out follows e_in counterclockwise in the triangle, else U."""
    if e_in == e_out:
        raise SurfaceError([Diagnostic("arc", f"arc enters and leaves triangle {tri} through edge {e_in}")])
    return DOWN if s.succ(tri, e_in) == e_out else UP


def step_directions(s: Surface, a: ArcSpec) -> str:
    cs = a.crossings
    return "".join(relation_direction(s, cs[i].dst, s.after_side(cs[i]), cs[i + 1].edge) for i in range(len(cs) - 1))


def _x(s: Surface, edge: int, boundary_ones: bool) -> Monomial:
    e = s.edges[edge]
    if e.kind in (RADIUS, ALIAS) or (boundary_ones and e.kind == BOUNDARY):
        return Monomial(1)
    return Monomial.var("x", e.label)


def vertex_label_x(s: Surface, a: ArcSpec, i: int, boundary_ones: bool = False) -> Monomial:
    """x-part of the label of crossing i (1-based)."""
    c = a.crossings[i - 1]
    before, after = c.edge, s.after_side(c)
    num = _x(s, s.succ(c.src, before), boundary_ones) * _x(s, s.succ(c.dst, after), boundary_ones)
    den = _x(s, s.pred(c.src, before), boundary_ones) * _x(s, s.pred(c.dst, after), boundary_ones)
    return num / den


def vertex_label_y(s: Surface, a: ArcSpec, i: int) -> Monomial:
    c = a.crossings[i - 1]
    if s.is_radius(c.edge):
        return Monomial.var("y", s.label(c.edge)) / Monomial.var("y", s.label(s.loop_of(c.edge)))
    return Monomial.var("y", s.label(c.edge))


def cross_monomial(s: Surface, a: ArcSpec) -> Monomial:
    m = Monomial(1)
    for c in a.crossings:
        m = m * Monomial.var("x", s.label(c.edge))
    return m


def _notch_closure(a: ArcSpec):
    n = a.notch
    t1, t2 = n.get("t1"), n.get("t2")
    if t1 is not None and t2 is not None:
        return BothLoops(int(t1), n["dir1"], int(t2), n["dir2"])
    if t1 is not None:
        return SourceLoop(int(t1), n["dir1"])
    if t2 is not None:
        return TargetLoop(int(t2), n["dir2"])
    raise InvalidSpec("notched arc needs t1 and/or t2 in its notch record")


def arc_to_shape(s: Surface, a: ArcSpec, boundary_ones: bool = False, abstract: bool = False) -> ShapeSpec:
    """Labeled shape of the arc.

    With abstract=True the weights are w1..wn instead of the crossing labels.
    """
    n = a.n
    steps = step_directions(s, a)
    if a.kind == CLOSED:
        last, first = a.crossings[-1], a.crossings[0]
        closure = Band(relation_direction(s, last.dst, s.after_side(last), first.edge))
    elif a.kind == NOTCHED:
        closure = _notch_closure(a)
    else:
        closure = None
    if abstract:
        weights = ()
    else:
        weights = tuple(vertex_label_x(s, a, i, boundary_ones) * vertex_label_y(s, a, i) for i in range(1, n + 1))
    if a.kind == NOTCHED:
        pre = a.prefactor
    else:
        from .twalk import minimal_twalk, twalk_values

        pre = twalk_values(minimal_twalk(s, a), boundary_ones)[0]
    return ShapeSpec(n, steps, closure, weights, pre)
