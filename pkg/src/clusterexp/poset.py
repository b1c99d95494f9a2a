"""Labeled posets built from step words, and their order ideals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from . import _kernels
from .laurent import LaurentPolynomial, Monomial, ParseError, parse_monomial

UP = "U"
DOWN = "D"
DEFAULT_GUARD = 24
HARD_GUARD = 28
FILTER_LIMIT = 16


class InvalidSpec(ValueError):
    pass


class GuardExceeded(ValueError):
    pass


def _check_dir(d: str, what: str) -> str:
    if d not in (UP, DOWN):
        raise InvalidSpec(f"{what} must be 'U' or 'D', got {d!r}")
    return d


@dataclass(frozen=True)
class Band:
    """Identify the two ends: dir is how element n relates to element 1."""

    dir: str


@dataclass(frozen=True)
class SourceLoop:
    """Extra relation between element t1 and element 1 (U: t1 below 1)."""

    t1: int
    dir1: str


@dataclass(frozen=True)
class TargetLoop:
    """Extra relation between element n and element t2 (D: n above t2)."""

    t2: int
    dir2: str


@dataclass(frozen=True)
class BothLoops:
    t1: int
    dir1: str
    t2: int
    dir2: str


Closure = Union[None, Band, SourceLoop, TargetLoop, BothLoops]


def closure_to_dict(c: Closure) -> dict:
    if c is None:
        return {"kind": "none"}
    if isinstance(c, Band):
        return {"kind": "band", "dir": c.dir}
    if isinstance(c, SourceLoop):
        return {"kind": "source", "t1": c.t1, "dir1": c.dir1}
    if isinstance(c, TargetLoop):
        return {"kind": "target", "t2": c.t2, "dir2": c.dir2}
    return {"kind": "both", "t1": c.t1, "dir1": c.dir1, "t2": c.t2, "dir2": c.dir2}


def closure_from_dict(d: dict | None) -> Closure:
    if d is None:
        return None
    kind = d.get("kind", "none")
    try:
        if kind == "none":
            return None
        if kind == "band":
            return Band(d["dir"])
        if kind == "source":
            return SourceLoop(int(d["t1"]), d["dir1"])
        if kind == "target":
            return TargetLoop(int(d["t2"]), d["dir2"])
        if kind == "both":
            return BothLoops(int(d["t1"]), d["dir1"], int(d["t2"]), d["dir2"])
    except KeyError as exc:
        raise InvalidSpec(f"closure {kind!r} is missing field {exc.args[0]!r}") from None
    raise InvalidSpec(f"unknown closure kind {kind!r}")


Weight = Union[Monomial, int]


@dataclass(frozen=True)
class ShapeSpec:
    """A fence given by its step word plus an optional closure.

    steps[i] (0-based) relates element i+1 to element i+2: 'D' means
    element i+1 lies above element i+2.  weights[i] belongs to element i+1.
    """

    n: int
    steps: str
    closure: Closure = None
    weights: tuple = ()
    prefactor: Monomial | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidSpec("n must be non-negative")
        if len(self.steps) != max(self.n - 1, 0):
            raise InvalidSpec(f"steps has length {len(self.steps)}, expected {max(self.n - 1, 0)}")
        for s in self.steps:
            _check_dir(s, "step")
        if not self.weights:
            object.__setattr__(self, "weights", tuple(Monomial.var("w", i) for i in range(1, self.n + 1)))
        else:
            ws = tuple(Monomial(w) if isinstance(w, int) else w for w in self.weights)
            if len(ws) != self.n:
                raise InvalidSpec(f"{len(ws)} weights given for {self.n} elements")
            object.__setattr__(self, "weights", ws)
        c = self.closure
        n = self.n
        if c is not None and n == 0:
            raise InvalidSpec("an empty fence cannot be closed")
        if isinstance(c, Band):
            _check_dir(c.dir, "band dir")
        elif isinstance(c, SourceLoop):
            _check_dir(c.dir1, "dir1")
            if not 1 <= c.t1 <= n:
                raise InvalidSpec(f"t1={c.t1} outside 1..{n}")
        elif isinstance(c, TargetLoop):
            _check_dir(c.dir2, "dir2")
            if not 1 <= c.t2 <= n:
                raise InvalidSpec(f"t2={c.t2} outside 1..{n}")
        elif isinstance(c, BothLoops):
            _check_dir(c.dir1, "dir1")
            _check_dir(c.dir2, "dir2")
            if not 1 <= c.t1 <= c.t2 <= n:
                raise InvalidSpec(f"need 1 <= t1 <= t2 <= n, got t1={c.t1} t2={c.t2}")
        elif c is not None:
            raise InvalidSpec(f"unknown closure {c!r}")

    @classmethod
    def fence(cls, steps: str, weights: Sequence[Weight] = (), closure: Closure = None):
        return cls(len(steps) + 1, steps, closure, tuple(weights))

    def relations(self) -> list[tuple[int, int]]:
        """Generating relations (a, b) meaning a lies below b, 1-based."""
        rel = []
        for i, s in enumerate(self.steps, start=1):
            rel.append((i + 1, i) if s == DOWN else (i, i + 1))
        c = self.closure

        def tie(top: int, other: int, d: str):
            # d describes how `top` relates to `other`
            if top != other:
                rel.append((other, top) if d == DOWN else (top, other))

        if isinstance(c, Band):
            tie(self.n, 1, c.dir)
        elif isinstance(c, SourceLoop):
            tie(c.t1, 1, c.dir1)
        elif isinstance(c, TargetLoop):
            tie(self.n, c.t2, c.dir2)
        elif isinstance(c, BothLoops):
            tie(c.t1, 1, c.dir1)
            tie(self.n, c.t2, c.dir2)
        return rel

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "steps": self.steps,
            "closure": closure_to_dict(self.closure),
            "weights": {str(i): str(w) for i, w in enumerate(self.weights, start=1)},
        }
        if self.prefactor is not None:
            d["prefactor"] = str(self.prefactor)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ShapeSpec":
        try:
            n = int(d["n"])
            steps = d["steps"]
        except KeyError as exc:
            raise InvalidSpec(f"shape is missing field {exc.args[0]!r}") from None
        weights = d.get("weights") or ()
        if isinstance(weights, dict):
            try:
                keys = sorted(int(k) for k in weights)
            except ValueError:
                raise InvalidSpec("weight keys must be element indices") from None
            if keys != list(range(1, n + 1)):
                raise InvalidSpec(f"weights must be given for exactly the elements 1..{n}")
            weights = [weights[str(k)] if str(k) in weights else weights[k] for k in keys]
        try:
            ws = tuple(parse_monomial(str(w)) for w in weights)
            pre = d.get("prefactor")
            pre = parse_monomial(str(pre)) if pre is not None else None
        except ParseError as exc:
            raise InvalidSpec(f"bad monomial: {exc}") from None
        return cls(n, steps, closure_from_dict(d.get("closure")), ws, pre)


class LabeledPoset:
    """Finite poset on 1..n given by its Hasse diagram, with element weights."""

    def __init__(self, n: int, covers: Iterable[tuple[int, int]], weights: Sequence[Weight] = ()):
        self.n = n
        self.covers = frozenset(covers)
        for a, b in self.covers:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise InvalidSpec(f"bad cover ({a}, {b})")
        ws = tuple(Monomial(w) if isinstance(w, int) else w for w in weights)
        self.weights = ws or tuple(Monomial.var("w", i) for i in range(1, n + 1))
        if len(self.weights) != n:
            raise InvalidSpec("one weight per element is required")
        self.below = _strict_down_sets(n, self.covers)
        for a, b in _redundant(self.covers, self.below):
            raise InvalidSpec(f"relation ({a}, {b}) is implied by others")

    @classmethod
    def from_relations(cls, n: int, relations: Iterable[tuple[int, int]], weights: Sequence[Weight] = ()):
        rel = {(a, b) for a, b in relations if a != b}
        below = _strict_down_sets(n, rel)
        return cls(n, rel - set(_redundant(rel, below)), weights)

    def leq(self, a: int, b: int) -> bool:
        return a == b or bool((self.below[b - 1] >> (a - 1)) & 1)

    def __repr__(self):
        return f"LabeledPoset(n={self.n}, covers={sorted(self.covers)})"


def _redundant(rel, below):
    """Relations implied by a chain through some other direct predecessor."""
    preds: dict[int, list[int]] = {}
    for a, b in rel:
        preds.setdefault(b, []).append(a)
    for a, b in rel:
        if any(c != a and (below[c - 1] >> (a - 1)) & 1 for c in preds[b]):
            yield a, b


def _strict_down_sets(n: int, rel) -> list[int]:
    """Bitmask of strict lower sets; raises on a cycle."""
    preds = [[] for _ in range(n)]
    indeg = [0] * n
    succs = [[] for _ in range(n)]
    for a, b in rel:
        preds[b - 1].append(a - 1)
        succs[a - 1].append(b - 1)
        indeg[b - 1] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                order.append(j)
    if len(order) != n:
        raise InvalidSpec("relations contain a cycle")
    below = [0] * n
    for i in order:
        m = 0
        for p in preds[i]:
            m |= below[p] | (1 << p)
        below[i] = m
    return below


def poset_from_shape(spec: ShapeSpec) -> LabeledPoset:
    return LabeledPoset.from_relations(spec.n, spec.relations(), spec.weights)


def _guard(n: int, guard: int | None):
    g = DEFAULT_GUARD if guard is None else guard
    if g > HARD_GUARD:
        raise GuardExceeded(f"guard may not exceed {HARD_GUARD}")
    if n > g:
        raise GuardExceeded(f"poset has {n} elements, above the enumeration guard {g}; use the matrix method")


def is_ideal(P: LabeledPoset, s: Iterable[int]) -> bool:
    mask = 0
    for v in s:
        if not 1 <= v <= P.n:
            raise ValueError(f"vertex {v} outside 1..{P.n}")
        mask |= 1 << (v - 1)
    return all(not (mask >> i) & 1 or not (P.below[i] & ~mask) for i in range(P.n))


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def ideal_masks(P: LabeledPoset, guard: int | None = None, method: str = "frontier") -> list[int]:
    """Ideals as bitmasks, ordered by size then lexicographically by members."""
    _guard(P.n, guard)
    if method == "filter":
        if P.n > max(FILTER_LIMIT, DEFAULT_GUARD if guard is None else guard):
            raise GuardExceeded("filter enumeration is limited")
        ok = _kernels.ideal_mask(P.below)
        masks = [int(s) for s in ok.nonzero()[0]]
        return sorted(masks, key=lambda m: (bin(m).count("1"), _members(m)))
    if method != "frontier":
        raise ValueError(f"unknown method {method!r}")
    out = []
    level = {0}
    while level:
        ordered = sorted(level, key=_members)
        out.extend(ordered)
        nxt = set()
        for m in ordered:
            for i in range(P.n):
                if not (m >> i) & 1 and not (P.below[i] & ~m):
                    nxt.add(m | (1 << i))
        level = nxt
    return out


def enumerate_ideals(P: LabeledPoset, guard: int | None = None, method: str = "frontier") -> list[frozenset[int]]:
    return [frozenset(_members(m)) for m in ideal_masks(P, guard, method)]


def weight_polynomial(P: LabeledPoset, guard: int | None = None) -> LaurentPolynomial:
    """Sum over order ideals of the product of member weights."""
    acc: dict = {}
    weight_of = {0: Monomial(1)}
    for m in ideal_masks(P, guard):
        if m not in weight_of:
            # drop some maximal element; that smaller ideal was seen already
            i = next(i for i in range(P.n) if (m >> i) & 1 and (m ^ (1 << i)) in weight_of)
            weight_of[m] = weight_of[m ^ (1 << i)] * P.weights[i]
        mono = weight_of[m]
        acc[mono.exps] = acc.get(mono.exps, 0) + mono.coeff
    return LaurentPolynomial(acc)
