"""2x2 weight matrices for fences with a chosen source and target.

A matrix carries the direction of its tail: the relation between the target
element and whatever gets attached after it.  For a tail pointing down the
entries are

    [[ W,            -W(target in I)         ],
     [ W(source out), -W(target in, source out)]]

and for a tail pointing up

    [[ W(target in),             W(target out)             ],
     [ W(target in, source out), W(target out, source out) ]]

where W(...) sums ideal weights under the stated membership constraint.
Entries may be any ring elements supporting + - * (ints or Laurent
polynomials), so integer specialisations run directly on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .laurent import LaurentPolynomial, Monomial
from .poset import DOWN, UP, Band, BothLoops, InvalidSpec, ShapeSpec, SourceLoop, TargetLoop


@dataclass(frozen=True)
class WeightMatrix:
    a: Any
    b: Any
    c: Any
    d: Any
    tail: str

    def __matmul__(self, other: "WeightMatrix") -> "WeightMatrix":
        return compose(self, other)

    def entries(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def read(self):
        """Weight polynomial of the whole oriented poset."""
        return self.a if self.tail == DOWN else self.a + self.b


def _ring(w):
    return w.to_poly() if isinstance(w, Monomial) else w


def mat_D(w) -> WeightMatrix:
    w = _ring(w)
    return WeightMatrix(1 + w, -w, 1 + 0 * w, 0 * w, DOWN)


def mat_U(w) -> WeightMatrix:
    w = _ring(w)
    return WeightMatrix(w, 1 + 0 * w, 0 * w, 1 + 0 * w, UP)


def mat(w, tail: str) -> WeightMatrix:
    return mat_D(w) if tail == DOWN else mat_U(w)


def compose(m: WeightMatrix, n: WeightMatrix) -> WeightMatrix:
    """Attach n's source to m's target along m's tail."""
    return WeightMatrix(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
        n.tail,
    )


def tail_flip(m: WeightMatrix) -> WeightMatrix:
    a, b, c, d = m.a, m.b, m.c, m.d
    if m.tail == DOWN:
        # right-multiply by [[0, 1], [-1, 1]]
        return WeightMatrix(-b, a + b, -d, c + d, UP)
    # right-multiply by [[1, -1], [1, 0]]
    return WeightMatrix(a + b, -a, c + d, -c, DOWN)


def with_tail(m: WeightMatrix, tail: str) -> WeightMatrix:
    return m if m.tail == tail else tail_flip(m)


def band_trace(m: WeightMatrix):
    """Close the fence by relating target to source along the tail."""
    return m.a + m.d


def source_loop(m: WeightMatrix) -> WeightMatrix:
    """Relate target to source; the new target is the old source.

    The result always has a downward tail.
    """
    a, b, c, d = m.a, m.b, m.c, m.d
    if m.tail == DOWN:
        return WeightMatrix(a + d, b - d, a + b, 0 * a, DOWN)
    return WeightMatrix(a + d, -a, d, 0 * a, DOWN)


def target_loop(m: WeightMatrix) -> WeightMatrix:
    """Relate target to source; the new source and target are both the old source."""
    a, c, d = m.a, m.c, m.d
    return WeightMatrix(a + d, c - a, c + d, 0 * a, DOWN)


def chain(weights: Sequence, steps: str, last: str) -> WeightMatrix:
    """Product of the vertex matrices; steps[i] is the tail of vertex i."""
    mats = [mat(w, t) for w, t in zip(weights, list(steps) + [last])]
    if not mats:
        raise InvalidSpec("empty chain")
    while len(mats) > 1:
        nxt = [compose(mats[i], mats[i + 1]) for i in range(0, len(mats) - 1, 2)]
        if len(mats) % 2:
            nxt.append(mats[-1])
        mats = nxt
    return mats[0]


def _ring_weights(spec: ShapeSpec, weights=None):
    if weights is not None:
        return list(weights), False
    if all(w.is_constant() for w in spec.weights):
        return [w.coeff for w in spec.weights], True
    return [w.to_poly() for w in spec.weights], False


def shape_to_matrix(spec: ShapeSpec, weights=None) -> WeightMatrix:
    """Matrix of the shape before any final reading.

    For band closures the closed shape has no matrix; this returns the open
    chain whose trace gives the weight polynomial.
    """
    ws, _ = _ring_weights(spec, weights)
    return _shape_matrix(spec, ws)


def _shape_matrix(spec: ShapeSpec, ws) -> WeightMatrix:
    n, st, c = spec.n, spec.steps, spec.closure

    def seg(lo: int, hi: int, last: str) -> WeightMatrix:
        # vertices lo..hi (1-based, inclusive); vertex hi gets tail `last`
        return chain(ws[lo - 1 : hi], st[lo - 1 : hi - 1], last)

    def after(i: int) -> str:
        return st[i - 1] if i < n else DOWN

    if c is None or isinstance(c, Band):
        return seg(1, n, c.dir if isinstance(c, Band) else DOWN)
    if isinstance(c, SourceLoop):
        s = source_loop(seg(1, c.t1, c.dir1))
        if c.t1 == n:
            return s
        return with_tail(s, st[c.t1 - 1]) @ seg(c.t1 + 1, n, DOWN)
    if isinstance(c, TargetLoop):
        t = target_loop(seg(c.t2, n, c.dir2))
        if c.t2 == 1:
            return t
        return seg(1, c.t2 - 1, after(c.t2 - 1)) @ t
    if isinstance(c, BothLoops):
        s = source_loop(seg(1, c.t1, c.dir1))
        if c.t1 == c.t2:
            # both loops share a vertex: the rest is closed back onto t1
            if c.t1 == n:
                return s
            return with_tail(s, st[c.t1 - 1]) @ seg(c.t1 + 1, n, c.dir2)
        t = target_loop(seg(c.t2, n, c.dir2))
        if c.t2 == c.t1 + 1:
            return with_tail(s, st[c.t1 - 1]) @ t
        return with_tail(s, st[c.t1 - 1]) @ seg(c.t1 + 1, c.t2 - 1, st[c.t2 - 2]) @ t
    raise InvalidSpec(f"unknown closure {c!r}")


def is_traced(spec: ShapeSpec) -> bool:
    """Whether the weight polynomial is the trace of shape_to_matrix."""
    c = spec.closure
    return isinstance(c, Band) or (isinstance(c, BothLoops) and c.t1 == c.t2 < spec.n)


def matrix_weight_polynomial(spec: ShapeSpec, weights=None):
    """Weight polynomial computed through matrix products.

    With explicit `weights` the result lives in their ring; otherwise it is a
    Laurent polynomial (constant weights are multiplied as plain ints).
    """
    ws, as_int = _ring_weights(spec, weights)
    if spec.n == 0:
        value = 1
    else:
        m = _shape_matrix(spec, ws)
        if is_traced(spec):
            value = band_trace(m)
        else:
            value = m.read()
    if weights is None and (as_int or isinstance(value, int)):
        return LaurentPolynomial.constant(int(value))
    return value
