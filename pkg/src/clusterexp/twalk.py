"""T-walks: zig-zag walks along triangulation edges that follow an arc.

A walk alternates between steps along a crossed edge (one per crossing, its
direction fixed by a bit) and connecting steps inside the triangle between
two consecutive crossings.  Bit 0 runs the crossed edge counterclockwise in
the triangle before the crossing, bit 1 counterclockwise in the triangle
after it.  A bit vector gives a walk exactly when no connecting step would
have to join a corner to itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .laurent import Monomial
from .poset import DEFAULT_GUARD, HARD_GUARD, GuardExceeded
from .surface import ALIAS, BOUNDARY, CLOSED, NOTCHED, ORDINARY, ArcSpec, Diagnostic, Surface, SurfaceError, vertex_label_y


@dataclass(frozen=True)
class Step:
    edge: int
    label: int
    tail: str
    head: str
    crossing: bool
    boundary: bool = False
    alias: bool = False
    # orientation against a fixed reference direction of the underlying edge
    key: tuple = ()

    def text(self) -> str:
        return f"{self.label}̲" if self.alias else str(self.label)


@dataclass(frozen=True)
class TWalk:
    arc: str
    bits: tuple | None
    steps: tuple
    y: Monomial
    kind: str = "ordinary"

    def labels(self) -> tuple[int, ...]:
        return tuple(s.label for s in self.steps)

    def text(self) -> str:
        return "(" + ",".join(s.text() for s in self.steps) + ")"


class NotSupported(ValueError):
    pass


class _Geometry:
    """Corner indices of every possible crossing step of an arc."""

    def __init__(self, s: Surface, a: ArcSpec):
        if a.kind == NOTCHED:
            raise NotSupported("T-walks are only defined for ordinary and closed arcs")
        self.s, self.a = s, a
        self._steps: dict = {}
        self._first: dict = {}
        self.start0, self.start1, self.end0, self.end1 = [], [], [], []
        self.sides = []
        for c in a.crossings:
            j = s.side_index(c.src, c.edge)
            k = s.side_index(c.dst, s.after_side(c))
            self.sides.append((j, k))
            self.start0.append(j)
            self.start1.append((j + 1) % 3)
            self.end0.append(k)
            self.end1.append((k + 1) % 3)
        self.closed = a.kind == CLOSED
        if a.crossings and not self.closed:
            self.first_corner = _endpoint_corner(s, a.crossings[0].src, a.start, a.crossings[0].edge)
            last = a.crossings[-1]
            self.last_corner = _endpoint_corner(s, last.dst, a.end, s.after_side(last))

    def mask(self):
        return _kernels.walk_mask(self.end0, self.end1, self.start0, self.start1, self.closed)

    def _side_step(self, tri: int, j: int, forward: bool, crossing: bool) -> Step:
        memo = (tri, j, forward, crossing)
        if memo in self._steps:
            return self._steps[memo]
        s = self.s
        t = s.triangles[tri]
        edge = t.sides[j]
        tail, head = t.corners[j], t.corners[(j + 1) % 3]
        if not forward:
            tail, head = head, tail
        e = s.edges[edge]
        # reference direction: counterclockwise in the first side listing the
        # underlying edge; an alias is its radius run backwards
        base = e.alias_of if e.kind == ALIAS else edge
        if base not in self._first:
            self._first[base] = s.occurrences(base)[0]
        same = self._first[base] == (tri, j)
        st = Step(edge, e.label, tail, head, crossing, e.kind == BOUNDARY, e.kind == ALIAS, (base, forward == same))
        self._steps[memo] = st
        return st

    def _connect(self, tri: int, p: int, q: int) -> Step:
        # side joining corner p to corner q
        if (p + 1) % 3 == q:
            return self._side_step(tri, p, True, False)
        return self._side_step(tri, q, False, False)

    def walk(self, bits) -> TWalk | None:
        s, a = self.s, self.a
        cs = a.crossings
        n = len(cs)
        if n == 0:
            e = s.edges[a.edge]
            st = Step(e.id, e.label, a.start, a.end, False, e.kind == BOUNDARY, False, (e.id, True))
            return TWalk(a.name, (), (st,), Monomial(1), a.kind)
        steps = []
        first_start = self.start1[0] if bits[0] else self.start0[0]
        if not self.closed and self.first_corner != first_start:
            steps.append(self._connect(cs[0].src, self.first_corner, first_start))
        y = Monomial(1)
        for i, c in enumerate(cs):
            j, k = self.sides[i]
            if bits[i]:
                steps.append(self._side_step(c.dst, k, True, True))
                y = y * vertex_label_y(s, a, i + 1)
            else:
                steps.append(self._side_step(c.src, j, True, True))
            end = self.end1[i] if bits[i] else self.end0[i]
            if i + 1 < n or self.closed:
                nxt = (i + 1) % n
                start = self.start1[nxt] if bits[nxt] else self.start0[nxt]
                if end == start:
                    return None
                steps.append(self._connect(c.dst, end, start))
            elif end != self.last_corner:
                steps.append(self._connect(c.dst, end, self.last_corner))
        return TWalk(a.name, tuple(bits), tuple(steps), y, a.kind)


def _endpoint_corner(s: Surface, tri: int, vertex: str | None, edge: int) -> int:
    t = s.triangles[tri]
    j = s.side_index(tri, edge)
    opposite = (j + 2) % 3
    if t.corners[opposite] == vertex:
        return opposite
    for i, c in enumerate(t.corners):
        if c == vertex:
            return i
    raise SurfaceError([Diagnostic("arc", f"vertex {vertex!r} is not a corner of triangle {tri}")])


def _bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


def direction_to_walk(s: Surface, a: ArcSpec, bits) -> TWalk | None:
    """The walk for a bit vector (bit i for crossing i+1), or None."""
    if len(bits) != a.n:
        raise ValueError(f"direction vector has length {len(bits)}, arc crosses {a.n} edges")
    return _Geometry(s, a).walk(tuple(int(b) for b in bits))


def minimal_twalk(s: Surface, a: ArcSpec) -> TWalk:
    w = _Geometry(s, a).walk((0,) * a.n)
    if w is None:  # pragma: no cover - excluded by validation
        raise SurfaceError([Diagnostic("arc", f"arc {a.name!r} has no minimal walk")])
    return w


def valid_directions(s: Surface, a: ArcSpec, guard: int | None = None) -> list[int]:
    """Bit vectors (bit i for crossing i+1) that give walks, ascending."""
    g = DEFAULT_GUARD if guard is None else guard
    if g > HARD_GUARD:
        raise GuardExceeded(f"guard may not exceed {HARD_GUARD}")
    if a.n > g:
        raise GuardExceeded(f"arc crosses {a.n} edges, above the enumeration guard {g}; use the matrix method")
    if a.n == 0:
        return [0]
    geo = _Geometry(s, a)
    ok = geo.mask()
    return [int(v) for v in ok.nonzero()[0]]


def enumerate_twalks(s: Surface, a: ArcSpec, guard: int | None = None) -> list[TWalk]:
    geo = _Geometry(s, a)
    out = []
    for v in valid_directions(s, a, guard):
        wk = geo.walk(_bits(v, a.n))
        assert wk is not None
        out.append(wk)
    return out


def twalk_values(walk: TWalk, boundary_ones: bool = False) -> tuple[Monomial, Monomial]:
    """(x, y) of a walk: connecting labels over crossing labels, and y."""
    m = Monomial(1)
    for st in walk.steps:
        if boundary_ones and st.boundary:
            continue
        v = Monomial.var("x", st.label)
        m = m / v if st.crossing else m * v
    return m, walk.y


def twalk_reduce(walk: TWalk) -> TWalk:
    """Cancel steps that immediately retrace the previous one.

    A cancelled pair is always one crossing step and one connecting step, so
    the x-value is unchanged.  Only ordinary arcs reduce to T-paths.
    """
    if walk.kind != ORDINARY:
        raise NotSupported(f"cannot reduce a walk of a {walk.kind} arc")
    out: list[Step] = []
    for st in walk.steps:
        if out and out[-1].key[0] == st.key[0] and out[-1].key[1] != st.key[1]:
            out.pop()
        else:
            out.append(st)
    return TWalk(walk.arc, None, tuple(out), walk.y, walk.kind)


def walk_ideal_bijection(s: Surface, a: ArcSpec, guard: int | None = None) -> list[tuple[tuple, TWalk, frozenset]]:
    """Each walk with the ideal formed by the crossings whose bit is 1."""
    out = []
    for wk in enumerate_twalks(s, a, guard):
        ideal = frozenset(i + 1 for i, b in enumerate(wk.bits) if b)
        out.append((wk.bits, wk, ideal))
    return out
