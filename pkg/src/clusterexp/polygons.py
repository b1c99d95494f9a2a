"""Builders: surfaces from side orders, and triangulated convex polygons."""

from __future__ import annotations

import random
from typing import Sequence

from .surface import ALIAS, BOUNDARY, INTERNAL, RADIUS, ArcSpec, Crossing, Edge, Surface, Triangle


def surface_from_sides(
    sides: Sequence[Sequence[int]],
    boundary: Sequence[int] = (),
    radii: dict[int, int] | None = None,
    aliases: dict[int, int] | None = None,
    names: dict[tuple[int, int], int] | None = None,
) -> Surface:
    """Glue triangles given only their counterclockwise side lists.

    Corners are identified across every shared edge (a radius is glued to
    its alias).  radii maps radius -> loop, aliases maps alias -> radius.
    names optionally renames the vertex containing corner (triangle, j).
    """
    radii = radii or {}
    aliases = aliases or {}
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(c):
        parent.setdefault(c, c)
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a, b):
        parent[find(a)] = find(b)

    where: dict[int, list[tuple[int, int]]] = {}
    for t, ss in enumerate(sides):
        for j, e in enumerate(ss):
            find((t, j))
            where.setdefault(e, []).append((t, j))
    pairs = [occ for e, occ in where.items() if len(occ) == 2]
    for al, r in aliases.items():
        pairs.append([where[r][0], where[al][0]])
    for (t1, j1), (t2, j2) in pairs:
        union((t1, j1), (t2, (j2 + 1) % 3))
        union((t1, (j1 + 1) % 3), (t2, j2))
    roots: dict = {}
    for c in sorted(parent):
        roots.setdefault(find(c), len(roots))
    for c, nm in (names or {}).items():
        roots[find(c)] = nm
    bset = set(boundary)
    edges = []
    for e in sorted(where):
        if e in aliases:
            edges.append(Edge(e, aliases[e], ALIAS, alias_of=aliases[e]))
        elif e in radii:
            edges.append(Edge(e, e, RADIUS, loop_of=radii[e]))
        else:
            edges.append(Edge(e, e, BOUNDARY if e in bset else INTERNAL))
    tris = [Triangle(t, tuple(roots[find((t, j))] for j in range(3)), tuple(ss)) for t, ss in enumerate(sides)]
    return Surface(edges, tris)


def _chord(a: int, b: int):
    return (a, b) if a < b else (b, a)


def _crosses(c1, c2) -> bool:
    a, b = c1
    c, d = c2
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def fan(n: int, apex: int = 0) -> list[tuple[int, int]]:
    return [_chord(apex, (apex + k) % n) for k in range(2, n - 1)]


def zigzag(n: int) -> list[tuple[int, int]]:
    out = []
    lo, hi = 0, n - 1
    while hi - lo > 2:
        if len(out) % 2 == 0:
            out.append(_chord(lo + 1, hi))
            lo += 1
        else:
            out.append(_chord(lo, hi - 1))
            hi -= 1
    return out


def random_triangulation(n: int, rng: random.Random) -> list[tuple[int, int]]:
    out = []

    def split(poly):
        if len(poly) <= 3:
            return
        i = rng.randrange(len(poly))
        j = (i + rng.randrange(2, len(poly) - 1)) % len(poly)
        i, j = min(i, j), max(i, j)
        out.append(_chord(poly[i], poly[j]))
        split(poly[i : j + 1])
        split(poly[j:] + poly[: i + 1])

    split(list(range(n)))
    return out


def polygon_surface(n: int, diagonals: Sequence[tuple[int, int]]) -> Surface:
    """Convex n-gon with vertices 0..n-1 counterclockwise.

    Diagonals get ids 1..n-3 in the given order, boundary edge (i, i+1) gets
    id n-2+i.
    """
    diag = [_chord(*d) for d in diagonals]
    if len(diag) != n - 3 or len(set(diag)) != len(diag):
        raise ValueError("need n-3 distinct diagonals")
    if any(_crosses(p, q) for i, p in enumerate(diag) for q in diag[i + 1 :]):
        raise ValueError("diagonals cross")
    ids = {d: i + 1 for i, d in enumerate(diag)}
    for i in range(n):
        ids[_chord(i, (i + 1) % n)] = n - 2 + i
    edges = [Edge(i, i, INTERNAL if i <= n - 3 else BOUNDARY) for i in range(1, 2 * n - 2)]
    tris = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if {(a, b), (b, c), (a, c)} <= ids.keys():
                    tris.append(Triangle(len(tris), (a, b, c),
                                         (ids[(a, b)], ids[(b, c)], ids[(a, c)])))
    return Surface(edges, tris)


def polygon_arc(s: Surface, n: int, a: int, b: int, name: str = "gamma") -> ArcSpec:
    """The chord a -> b as an arc; it must not be an edge of the triangulation."""
    chords = {}
    for e in s.edges.values():
        t, j = s.occurrences(e.id)[0]
        cs = s.triangles[t].corners
        chords[e.id] = _chord(cs[j], cs[(j + 1) % 3])
    gamma = _chord(a, b)
    if gamma in chords.values():
        raise ValueError("arc is already an edge")
    crossed = {e for e, ch in chords.items() if _crosses(ch, gamma)}
    # the triangle at a whose opposite side is crossed
    cur = next(t for t in s.triangles.values() if a in t.corners
               and t.sides[(t.corners.index(a) + 1) % 3] in crossed)
    entered = None
    out = []
    while True:
        nxt = [e for e in cur.sides if e in crossed and e != entered]
        if not nxt:
            break
        e = nxt[0]
        other = next(t for t, _ in s.occurrences(e) if t != cur.id)
        out.append(Crossing(e, cur.id, other))
        entered = e
        cur = s.triangles[other]
    return ArcSpec(name, "ordinary", tuple(out), a, b)


def random_polygon_arc(rng: random.Random, max_n: int = 10, kind: str | None = None):
    """A random triangulated polygon with an arc crossing 1..max_n diagonals."""
    while True:
        m = rng.randint(4, max_n + 3)
        k = kind or rng.choice(["fan", "zigzag", "random"])
        if k == "fan":
            diag = fan(m, rng.randrange(m))
        elif k == "zigzag":
            diag = zigzag(m)
        else:
            diag = random_triangulation(m, rng)
        s = polygon_surface(m, diag)
        cands = [(a, b) for a in range(m) for b in range(m) if a != b
                 and (b - a) % m not in (1, m - 1) and _chord(a, b) not in set(diag)]
        if not cands:
            continue
        a, b = rng.choice(cands)
        arc = polygon_arc(s, m, a, b)
        if 1 <= arc.n <= max_n:
            return Surface(s.edges.values(), s.triangles.values(), [arc]), arc
