"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
`python3 tests/test_acceptance.py`.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from clusterexp import _kernels
from clusterexp.expand import expand_all, expand_shape, shape_via_matrix, shape_via_poset
from clusterexp.laurent import LaurentPolynomial, Monomial, parse_polynomial
from clusterexp.oriented import band_trace, chain, mat_D, mat_U, matrix_weight_polynomial
from clusterexp.polygons import polygon_arc, polygon_surface, random_polygon_arc, zigzag
from clusterexp.poset import Band, BothLoops, ShapeSpec, SourceLoop, TargetLoop, enumerate_ideals, is_ideal, poset_from_shape, weight_polynomial
from clusterexp.surface import Surface, arc_to_shape
from clusterexp.twalk import direction_to_walk, enumerate_twalks, minimal_twalk, twalk_reduce, twalk_values, walk_ideal_bijection

from conftest import expected, shape, surface
from test_poset import random_shape

RESULTS: dict[int, tuple[bool, str]] = {}
SEED = 20261014
GOLDEN_LIMIT = 1.0


def record(n: int, failures: list[str], summary: str):
    ok = not failures
    RESULTS[n] = (ok, summary if ok else "; ".join(failures))
    return ok


def report_lines() -> list[str]:
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'}  {msg}" for n, (ok, msg) in sorted(RESULTS.items())]


def _warm_kernels():
    # one-time JIT compilation is not part of any measured computation
    s = surface("punctured_square.json")
    enumerate_twalks(s, s.arc("gamma"))
    enumerate_ideals(poset_from_shape(ShapeSpec(3, "UD")), method="filter")


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _same(got: LaurentPolynomial, want: LaurentPolynomial) -> bool:
    return got.format("text") == want.format("text")


# 1 -----------------------------------------------------------------------

def _golden_checks():
    _warm_kernels()
    P = parse_polynomial
    w = lambda i: P(f"w{i}")

    def disk():
        s = surface("punctured_square.json")
        r = expand_all(s, s.arc("gamma"))
        return _same(r.polynomial, expected("disk_expansion")) and len(r.methods_run) == 3 and r.term_count == 5

    def matrices():
        ws = [w(i) for i in range(1, 5)]
        down = chain(ws, "UDD", "D")
        up = chain(ws, "UDD", "U")
        want_down = [P("1+w1+w4+w1*w4+w3*w4+w1*w3*w4+w1*w2*w3*w4"), P("-w4-w1*w4-w3*w4-w1*w3*w4-w1*w2*w3*w4"),
                     P("1+w4+w3*w4"), P("-w4-w3*w4")]
        want_up = [P("w4+w1*w4+w3*w4+w1*w3*w4+w1*w2*w3*w4"), P("1+w1"), P("w4+w3*w4"), P("1")]
        got = lambda m: [LaurentPolynomial.coerce(e) for e in (m.a, m.b, m.c, m.d)]
        return all(_same(a, b) for a, b in zip(got(down) + got(up), want_down + want_up))

    def folded():
        s = surface("self_folded.json")
        a = s.arc("gamma")
        walks = [wk.text() for wk in enumerate_twalks(s, a)]
        u = "̲"
        want = ["(6,2,2,3,3,4,4%s,3,2)" % u, "(6,2,2,3,3,4,4,3,5)", "(6,2,2,3,4%s,4%s,3,3,5)" % (u, u),
                "(6,2,5,3,4,4%s,3,3,5)" % u, "(1,2,3,3,4,4%s,3,3,5)" % u]
        r = expand_all(s, a)
        return walks == want and _same(r.polynomial, expected("self_folded_expansion"))

    def band_weight():
        W = matrix_weight_polynomial(ShapeSpec(5, "UDDD", Band("U")))
        s = surface("annulus_band.json")
        spec = arc_to_shape(s, s.arc("band"), abstract=True)
        return _same(W, expected("band_weight")) and _same(matrix_weight_polynomial(spec), W) and len(W) == 8

    def band_expansion():
        s = surface("annulus_band.json")
        r = expand_all(s, s.arc("band"))
        return r.term_count == 8 and _same(r.polynomial, expected("band_expansion_reference"))

    def single():
        W = matrix_weight_polynomial(ShapeSpec(6, "DDUDU", SourceLoop(4, "U")))
        r = expand_shape(shape("single_notched.json"))
        return _same(W, expected("single_weight")) and len(W) == 15 and _same(r.polynomial, expected("single_expansion"))

    def double1():
        W = matrix_weight_polynomial(ShapeSpec(6, "DDUDU", BothLoops(4, "U", 4, "D")))
        r = expand_shape(shape("double_notched.json"))
        return _same(W, expected("double1_weight")) and len(W) == 12 and _same(r.polynomial, expected("double1_expansion"))

    def double2():
        spec = shape("double_notched_two_loops.json")
        W = expand_shape(spec).polynomial
        return _same(W, expected("double2_weight")) and len(W) == 45

    def noloop2():
        s = surface("noloop2.json")
        a = s.arc("gamma")
        W = weight_polynomial(poset_from_shape(arc_to_shape(s, a, abstract=True)))
        return len(W) == 64 and _same(W, expected("noloop2_weight")) and expand_all(s, a).term_count == 64

    return [
        ("disk expansion", disk),
        ("fence (1,2) matrices", matrices),
        ("self-folded walks and expansion", folded),
        ("band weight polynomial", band_weight),
        ("band expansion", band_expansion),
        ("single-notched", single),
        ("doubly-notched, shared vertex", double1),
        ("doubly-notched, two loops", double2),
        ("9-crossing polygon arc", noloop2),
    ]


def _band_expansion_note() -> str:
    s = surface("annulus_band.json")
    got = expand_all(s, s.arc("band")).polynomial
    ref = expected("band_expansion_reference")
    x5 = Monomial.var("x", 5)
    y4 = Monomial.var("y", 4)
    fixed = LaurentPolynomial.from_monomials(
        [m / x5 if m.exponent(y4.exps[0][0]) else m for m in ref.terms()])
    off = sum(1 for m in ref.terms() if m.exponent(y4.exps[0][0]))
    return (f"band expansion: {off} of 8 reference terms carry an extra x5 relative to the computed 8-term result; "
            f"computed result equals the reference with that factor removed: {fixed == got}")


def test_criterion_1_goldens():
    failures, slow = [], []
    for name, check in _golden_checks():
        ok, dt = _timed(check)
        if not ok:
            failures.append(_band_expansion_note() if name == "band expansion" else f"{name}: mismatch")
        if dt >= GOLDEN_LIMIT:
            slow.append(f"{name}: {dt:.2f}s")
    failures += [f"too slow: {s}" for s in slow]
    assert record(1, failures, "9 golden checks exact, each < 1 s"), RESULTS[1][1]


# 2 -----------------------------------------------------------------------

def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    failures = []
    kinds = {}
    specs = 0
    while specs < 600:
        spec = random_shape(rng, 12)
        kinds[type(spec.closure).__name__] = kinds.get(type(spec.closure).__name__, 0) + 1
        labels = ShapeSpec(spec.n, spec.steps, spec.closure,
                           tuple(Monomial.var("x", i) * Monomial.var("y", rng.randint(1, 4)) for i in range(1, spec.n + 1)))
        if shape_via_matrix(labels) != shape_via_poset(labels):
            failures.append(f"shape {spec} disagrees")
        specs += 1
    for k in ("NoneType", "Band", "SourceLoop", "TargetLoop", "BothLoops"):
        if kinds.get(k, 0) < 20:
            failures.append(f"closure {k} drawn only {kinds.get(k, 0)} times")
    arcs = 0
    for _ in range(250):
        s, a = random_polygon_arc(rng, max_n=10)
        try:
            expand_all(s, a)
        except Exception as exc:  # disagreement or any failure counts
            failures.append(f"arc {a.crossings}: {exc}")
        arcs += 1
    dt = time.perf_counter() - t0
    if dt >= 60:
        failures.append(f"suite took {dt:.1f}s")
    assert record(2, failures, f"{specs} shapes and {arcs} polygon arcs agree exactly in {dt:.1f}s"), RESULTS[2][1]


# 3 -----------------------------------------------------------------------

def _arcs_for_bijection(rng):
    out = [(surface(f), surface(f).arc(None)) for f in ("punctured_square.json", "self_folded.json", "annulus_band.json")]
    s = surface("noloop2.json")
    out.append((s, s.arc("gamma")))
    out += [random_polygon_arc(rng, max_n=10) for _ in range(250)]
    return out


def test_criterion_3_bijection():
    rng = random.Random(SEED + 1)
    bad = []
    arcs = vectors = 0
    for s, a in _arcs_for_bijection(rng):
        spec = arc_to_shape(s, a)
        P = poset_from_shape(spec)
        x0 = twalk_values(minimal_twalk(s, a))[0]
        for v in range(1 << a.n):
            bits = tuple((v >> i) & 1 for i in range(a.n))
            support = {i + 1 for i, b in enumerate(bits) if b}
            wk = direction_to_walk(s, a, bits)
            vectors += 1
            if (wk is not None) != is_ideal(P, support):
                bad.append(f"{a.name} v={bits}")
                continue
            if wk is None:
                continue
            weight = Monomial(1)
            for i in support:
                weight = weight * spec.weights[i - 1]
            xv, yv = twalk_values(wk)
            if xv != x0 * weight.family_part("x") or yv != weight.family_part("y"):
                bad.append(f"{a.name} v={bits} values")
        arcs += 1
    assert record(3, bad[:5], f"{arcs} arcs, {vectors} direction vectors, 0 counterexamples"), RESULTS[3][1]


# 4 -----------------------------------------------------------------------

def test_criterion_4_invariants():
    rng = random.Random(SEED + 2)
    failures = []
    expansions = 0
    for _ in range(150):
        s, a = random_polygon_arc(rng, max_n=10)
        p = expand_all(s, a).polynomial
        expansions += 1
        if any(c <= 0 for c in p.coefficients()):
            failures.append("non-positive coefficient")
        if minimal_twalk(s, a) is None:
            failures.append("no minimal walk")
        for wk in enumerate_twalks(s, a):
            r = twalk_reduce(wk)
            if twalk_values(r) != twalk_values(wk):
                failures.append("reduction changed x")
            steps = list(wk.steps)
            while True:
                spots = [i for i in range(len(steps) - 1)
                         if steps[i].key[0] == steps[i + 1].key[0] and steps[i].key[1] != steps[i + 1].key[1]]
                if not spots:
                    break
                i = rng.choice(spots)
                del steps[i : i + 2]
            if [x.key for x in steps] != [x.key for x in r.steps]:
                failures.append("reduction not confluent")
    for f in ("single_notched.json", "double_notched.json"):
        if any(c <= 0 for c in expand_shape(shape(f)).polynomial.coefficients()):
            failures.append(f"{f}: non-positive coefficient")
    for _ in range(200):
        n = rng.randint(1, 12)
        steps = "".join(rng.choice("UD") for _ in range(n - 1))
        last = rng.choice("UD")
        ws = [LaurentPolynomial.coerce(Monomial.var("w", i)) for i in range(1, n + 1)]
        m = chain(ws, steps, last)
        prod = LaurentPolynomial.constant(1)
        for x in ws:
            prod = prod * x
        if LaurentPolynomial.coerce(m.det()) != prod:
            failures.append(f"det of {steps}{last}")
        k = rng.randrange(n)
        word = steps + last
        rw = word[k:] + word[:k]
        if LaurentPolynomial.coerce(band_trace(m)) != LaurentPolynomial.coerce(band_trace(chain(ws[k:] + ws[:k], rw[:-1], rw[-1]))):
            failures.append(f"trace rotation of {word}")
    assert record(4, failures[:5], f"positivity, det, trace rotation, minimal walk, reduction on {expansions} arcs"), RESULTS[4][1]


# 5 -----------------------------------------------------------------------

def test_criterion_5_fibonacci():
    failures = []
    fib = [2, 3]
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 21):
        steps = "".join("UD"[i % 2] for i in range(n - 1))
        spec = ShapeSpec(n, steps, weights=(1,) * n)
        got = matrix_weight_polynomial(spec).constant_value()
        if got != fib[n - 1]:
            failures.append(f"n={n}: matrix gives {got}")
        if n <= 12:
            brute = sum(is_ideal(poset_from_shape(spec), {i + 1 for i in range(n) if (m >> i) & 1}) for m in range(1 << n))
            if brute != got:
                failures.append(f"n={n}: brute force gives {brute}")
    assert record(5, failures, "counts 2, 3, 5, ..., 17711 for n = 1..20; brute force agrees for n <= 12"), RESULTS[5][1]


# 6 -----------------------------------------------------------------------

def test_criterion_6_performance():
    _warm_kernels()
    failures = []
    n = 10_000
    spec = ShapeSpec(n, "".join("UD"[i % 2] for i in range(n - 1)), weights=(1,) * n)
    value, dt_matrix = _timed(lambda: matrix_weight_polynomial(spec))
    if dt_matrix >= 2:
        failures.append(f"10^4 fence took {dt_matrix:.2f}s")
    if len(value) != 1 or value.constant_value() <= 0:
        failures.append("10^4 fence value is not a positive integer")
    s = polygon_surface(23, zigzag(23))
    arc = next(a for a in (polygon_arc(s, 23, i, j) for i in range(23) for j in range(23)
                           if (j - i) % 23 not in (0, 1, 22) and (min(i, j), max(i, j)) not in set(zigzag(23)))
               if a.n == 20)
    s = Surface(s.edges.values(), s.triangles.values(), [arc])
    walks, dt_walks = _timed(lambda: enumerate_twalks(s, arc, guard=20))
    if dt_walks >= 30:
        failures.append(f"n=20 walk enumeration took {dt_walks:.1f}s")
    spec20 = arc_to_shape(s, arc, abstract=True)
    count = matrix_weight_polynomial(ShapeSpec(20, spec20.steps, weights=(1,) * 20)).constant_value()
    if len(walks) != count:
        failures.append(f"n=20 arc gave {len(walks)} walks, its poset has {count} ideals")
    summary = f"10^4 fence in {dt_matrix:.2f}s; {len(walks)} walks at n = 20 in {dt_walks:.1f}s ({_kernels.BACKEND} kernels)"
    assert record(6, failures, summary), RESULTS[6][1]


if __name__ == "__main__":
    tests = [test_criterion_1_goldens, test_criterion_2_oracle_equivalence, test_criterion_3_bijection,
             test_criterion_4_invariants, test_criterion_5_fibonacci, test_criterion_6_performance]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
