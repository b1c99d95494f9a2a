"""Sparse exact Laurent polynomials in the variable families x, y and w.

Coefficients are Python ints, exponents are signed 32-bit ints.  A variable
is packed into a single int code so that sorting codes gives the canonical
variable order y1 < y2 < ... < x1 < ... < w1 < ...
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, NamedTuple, Union

FAMILIES = ("y", "x", "w")
_RANK = {f: i for i, f in enumerate(FAMILIES)}
_SHIFT = 32
_EXP_MAX = 2**31 - 1
_EXP_MIN = -(2**31)


class ParseError(ValueError):
    """Malformed polynomial or monomial text; `offset` points at the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnassignedVariable(ValueError):
    def __init__(self, indices: list[int]):
        super().__init__("no value for " + ", ".join(f"w{i}" for i in indices))
        self.indices = indices


class Var(NamedTuple):
    family: str
    index: int

    @property
    def code(self) -> int:
        return var_code(self.family, self.index)

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


def var_code(family: str, index: int) -> int:
    if family not in _RANK:
        raise ValueError(f"unknown variable family {family!r}")
    if index < 1 or index >= 1 << _SHIFT:
        raise ValueError(f"variable index out of range: {index}")
    return (_RANK[family] << _SHIFT) | index


def decode_var(code: int) -> Var:
    return Var(FAMILIES[code >> _SHIFT], code & ((1 << _SHIFT) - 1))


def _check_exp(e: int) -> int:
    if e > _EXP_MAX or e < _EXP_MIN:
        raise OverflowError(f"exponent {e} outside signed 32-bit range")
    return e


def _merge(a: tuple, b: tuple, sign: int = 1) -> tuple:
    if not b:
        return a
    if not a and sign == 1:
        return b
    d = dict(a)
    for k, e in b:
        v = d.get(k, 0) + sign * e
        if v:
            d[k] = _check_exp(v)
        else:
            d.pop(k, None)
    return tuple(sorted(d.items()))


Exps = tuple  # tuple[tuple[int, int], ...] sorted by variable code, no zeros


class Monomial:
    """coeff * prod(var^exp); immutable and hashable."""

    __slots__ = ("coeff", "exps")

    def __init__(self, coeff: int = 1, exps: Exps = ()):
        self.coeff = int(coeff)
        self.exps = () if self.coeff == 0 else exps

    @classmethod
    def var(cls, family: str, index: int, power: int = 1) -> "Monomial":
        return cls(1, ((var_code(family, index), _check_exp(power)),) if power else ())

    @classmethod
    def from_dict(cls, exps: Mapping[Var | tuple[str, int] | int, int], coeff: int = 1):
        d: dict[int, int] = {}
        for k, e in exps.items():
            code = k if isinstance(k, int) else var_code(*k)
            if e:
                d[code] = _check_exp(d.get(code, 0) + e)
        return cls(coeff, tuple(sorted((k, e) for k, e in d.items() if e)))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        p = _Parser(text)
        sign = 1
        if p.peek() == "-":
            sign, p.i = -1, p.i + 1
        m = p.monomial()
        p.expect_end()
        return m * sign if sign < 0 else m

    def is_constant(self) -> bool:
        return not self.exps

    def exponent(self, v: Var | int) -> int:
        code = v if isinstance(v, int) else v.code
        for k, e in self.exps:
            if k == code:
                return e
        return 0

    def as_dict(self) -> dict[Var, int]:
        return {decode_var(k): e for k, e in self.exps}

    def family_part(self, family: str) -> "Monomial":
        r = _RANK[family]
        return Monomial(1, tuple((k, e) for k, e in self.exps if k >> _SHIFT == r))

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.coeff * other.coeff, _merge(self.exps, other.exps))
        if isinstance(other, int):
            return Monomial(self.coeff * other, self.exps)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Monomial(other)
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.coeff not in (1, -1):
            if other.coeff == 0 or self.coeff % other.coeff:
                raise ZeroDivisionError("monomial coefficient is not divisible")
        return Monomial(self.coeff // other.coeff, _merge(self.exps, other.exps, -1))

    def __pow__(self, n: int) -> "Monomial":
        if n < 0:
            if self.coeff not in (1, -1):
                raise ZeroDivisionError("cannot invert a non-unit coefficient")
            return Monomial(self.coeff**-n, tuple((k, _check_exp(e * n)) for k, e in self.exps))
        return Monomial(self.coeff**n, tuple((k, _check_exp(e * n)) for k, e in self.exps))

    def inverse(self) -> "Monomial":
        return self**-1

    def __neg__(self):
        return Monomial(-self.coeff, self.exps)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Monomial(other)
        return isinstance(other, Monomial) and self.coeff == other.coeff and self.exps == other.exps

    def __hash__(self):
        return hash((self.coeff, self.exps))

    def __repr__(self):
        return f"Monomial({self})"

    def __str__(self):
        return _term_text(self.coeff, self.exps)

    def to_poly(self) -> "LaurentPolynomial":
        return LaurentPolynomial({self.exps: self.coeff})

    def latex(self) -> str:
        return _term_latex(self.coeff, self.exps)


Scalar = Union[int, Monomial, "LaurentPolynomial"]


class LaurentPolynomial:
    """Finite sum of monomials with nonzero integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, int] | None = None):
        self._terms = {k: c for k, c in (terms or {}).items() if c}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls({(): c})

    @classmethod
    def coerce(cls, v: Scalar) -> "LaurentPolynomial":
        if isinstance(v, LaurentPolynomial):
            return v
        if isinstance(v, Monomial):
            return v.to_poly()
        if isinstance(v, int):
            return cls.constant(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to a Laurent polynomial")

    @classmethod
    def from_monomials(cls, monos: Iterable[Monomial]) -> "LaurentPolynomial":
        d: dict[Exps, int] = {}
        for m in monos:
            d[m.exps] = d.get(m.exps, 0) + m.coeff
        return cls(d)

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        p = _Parser(text)
        poly = p.polynomial()
        p.expect_end()
        return poly

    @classmethod
    def from_structured(cls, data) -> "LaurentPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        monos = []
        for t in data:
            exps = {}
            for name, e in t["exponents"].items():
                if len(name) < 2 or name[0] not in _RANK or not name[1:].isdigit():
                    raise ValueError(f"bad variable name {name!r}")
                exps[(name[0], int(name[1:]))] = int(e)
            monos.append(Monomial.from_dict(exps, int(t["coeff"])))
        return cls.from_monomials(monos)

    # inspection -------------------------------------------------------
    def terms(self) -> list[Monomial]:
        """Monomials in canonical order (lexicographic on exponent vectors)."""
        codes = sorted({k for exps in self._terms for k, _ in exps})
        pos = {k: i for i, k in enumerate(codes)}

        def key(exps):
            v = [0] * len(codes)
            for k, e in exps:
                v[pos[k]] = e
            return v

        return [Monomial(self._terms[e], e) for e in sorted(self._terms, key=key)]

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), 0)

    def coefficients(self) -> list[int]:
        return list(self._terms.values())

    def variables(self) -> list[Var]:
        return [decode_var(k) for k in sorted({k for e in self._terms for k, _ in e})]

    def items(self):
        return self._terms.items()

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Monomial)):
            other = LaurentPolynomial.coerce(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        d = dict(self._terms)
        for k, c in other._terms.items():
            d[k] = d.get(k, 0) + c
        return LaurentPolynomial(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Monomial)):
            other = LaurentPolynomial.coerce(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPolynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({k: c * other for k, c in self._terms.items()})
        if isinstance(other, Monomial):
            return LaurentPolynomial({_merge(k, other.exps): c * other.coeff for k, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if len(other._terms) < len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        d: dict[Exps, int] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = _merge(ka, kb)
                d[k] = d.get(k, 0) + ca * cb
        return LaurentPolynomial(d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Monomial(other)
        if isinstance(other, LaurentPolynomial) and len(other) == 1:
            other = other.terms()[0]
        if not isinstance(other, Monomial):
            return NotImplemented
        return LaurentPolynomial.from_monomials(m / other for m in self.terms())

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of polynomials are not Laurent polynomials")
        result, base = LaurentPolynomial.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Monomial)):
            other = LaurentPolynomial.coerce(other)
        return isinstance(other, LaurentPolynomial) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute(self, assignment: Mapping[Var | tuple[str, int] | int, Scalar]) -> "LaurentPolynomial":
        """Replace variables by monomials or polynomials.

        Variables appearing with a negative exponent must map to monomials.
        """
        table = {}
        for k, v in assignment.items():
            code = k if isinstance(k, int) else var_code(*k)
            table[code] = v
        d: dict[Exps, int] = {}
        out = LaurentPolynomial()
        for exps, c in self._terms.items():
            rest = tuple(t for t in exps if t[0] not in table)
            if len(rest) == len(exps):
                d[exps] = d.get(exps, 0) + c
                continue
            acc = LaurentPolynomial({rest: c})
            for k, e in exps:
                if k not in table:
                    continue
                v = table[k]
                if e < 0:
                    if isinstance(v, int):
                        v = Monomial(v)
                    elif isinstance(v, LaurentPolynomial):
                        if len(v) != 1:
                            raise ValueError("negative power of a non-monomial substitution")
                        v = v.terms()[0]
                    acc = acc * v**e
                else:
                    acc = acc * LaurentPolynomial.coerce(v) ** e
            out = out + acc
        return out + LaurentPolynomial(d)

    def substitute_w(self, assignment: Mapping[int, Scalar]) -> "LaurentPolynomial":
        """Replace every w-variable, keyed by index; all of them must be assigned."""
        present = {decode_var(k).index for exps in self._terms for k, _ in exps if k >> _SHIFT == _RANK["w"]}
        missing = sorted(present - set(assignment))
        if missing:
            raise UnassignedVariable(missing)
        return self.substitute({("w", i): v for i, v in assignment.items()})

    def specialize(self, codes: Iterable[int]) -> "LaurentPolynomial":
        """Set the given variables to 1."""
        drop = set(codes)
        d: dict[Exps, int] = {}
        for exps, c in self._terms.items():
            k = tuple(t for t in exps if t[0] not in drop)
            d[k] = d.get(k, 0) + c
        return LaurentPolynomial(d)

    # output -----------------------------------------------------------
    def format(self, style: str = "text") -> str:
        if style == "text":
            return _join([(m.coeff, _term_text(abs(m.coeff), m.exps)) for m in self.terms()], " + ", " - ")
        if style == "latex":
            return _join([(m.coeff, _term_latex(abs(m.coeff), m.exps)) for m in self.terms()], "+", "-")
        if style == "structured":
            return json.dumps(self.to_structured())
        raise ValueError(f"unknown format style {style!r}")

    def to_structured(self) -> list[dict]:
        return [
            {"coeff": m.coeff, "exponents": {str(decode_var(k)): e for k, e in m.exps}}
            for m in self.terms()
        ]

    def __str__(self):
        return self.format("text")

    def __repr__(self):
        return f"LaurentPolynomial({self.format('text')!r})"


def _join(parts: list[tuple[int, str]], plus: str, minus: str) -> str:
    if not parts:
        return "0"
    out = []
    for i, (c, s) in enumerate(parts):
        if i == 0:
            out.append(s if c > 0 else "-" + s)
        else:
            out.append((plus if c > 0 else minus) + s)
    return "".join(out)


def _factor_text(code: int, e: int) -> str:
    v = decode_var(code)
    return f"{v}" if e == 1 else f"{v}^{e}"


def _term_text(coeff: int, exps: Exps) -> str:
    num = [_factor_text(k, e) for k, e in _display_order(exps) if e > 0]
    den = [_factor_text(k, -e) for k, e in _display_order(exps) if e < 0]
    if coeff != 1 or not num:
        num.insert(0, str(coeff))
    s = "*".join(num)
    if den:
        s += "/" + (den[0] if len(den) == 1 else "(" + "*".join(den) + ")")
    return s


def _factor_latex(code: int, e: int) -> str:
    v = decode_var(code)
    return f"{v.family}_{{{v.index}}}" + ("" if e == 1 else f"^{{{e}}}")


def _term_latex(coeff: int, exps: Exps) -> str:
    num = "".join(_factor_latex(k, e) for k, e in _display_order(exps) if e > 0)
    den = "".join(_factor_latex(k, -e) for k, e in _display_order(exps) if e < 0)
    lead = "" if coeff == 1 else str(coeff)
    if den:
        return "\\frac{" + ((lead + num) or "1") + "}{" + den + "}"
    return lead + num if (lead or num) else "1"


def _display_order(exps: Exps):
    # x before y before w, the way cluster variables are usually written
    order = {"x": 0, "y": 1, "w": 2}
    return sorted(exps, key=lambda t: (order[FAMILIES[t[0] >> _SHIFT]], t[0]))


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def _skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self._skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect_end(self):
        if self.peek():
            raise ParseError(f"unexpected character {self.s[self.i]!r}", self.i)

    def _int(self) -> int:
        self._skip()
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise ParseError("expected an integer", j)
        return int(self.s[j:self.i])

    def _sint(self) -> int:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.s[self.i] == "-" else 1
            self.i += 1
        return sign * self._int()

    def polynomial(self) -> LaurentPolynomial:
        monos = []
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.s[self.i] == "-" else 1
            self.i += 1
        monos.append(self.monomial() * sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.s[self.i] == "-" else 1
            self.i += 1
            monos.append(self.monomial() * sign)
        return LaurentPolynomial.from_monomials(monos)

    def monomial(self) -> Monomial:
        m = self.term()
        while self.peek() in ("*", "/"):
            op = self.s[self.i]
            self.i += 1
            at = self.i
            t = self.term()
            if op == "*":
                m = m * t
            else:
                if t.coeff == 0:
                    raise ParseError("division by zero", at)
                try:
                    m = m / t
                except ZeroDivisionError:
                    raise ParseError("inexact coefficient division", at) from None
        return m

    def term(self) -> Monomial:
        c = self.peek()
        at = self.i
        if not c:
            raise ParseError("unexpected end of input", at)
        if c.isdigit():
            return Monomial(self._int())
        if c == "(":
            self.i += 1
            m = self.monomial()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.i)
            self.i += 1
            return m
        if c.isalpha():
            if c not in _RANK:
                raise ParseError(f"unknown variable family {c!r}", at)
            self.i += 1
            if not (self.i < len(self.s) and self.s[self.i].isdigit()):
                raise ParseError("expected a variable index", self.i)
            idx = self._int()
            if idx < 1:
                raise ParseError("variable index must be positive", at)
            power = 1
            if self.peek() == "^":
                self.i += 1
                power = self._sint()
            try:
                return Monomial.var(c, idx, power)
            except OverflowError as exc:
                raise ParseError(str(exc), at) from None
        raise ParseError(f"unexpected character {c!r}", at)


def parse_monomial(text: str) -> Monomial:
    return Monomial.parse(text)


def parse_polynomial(text: str) -> LaurentPolynomial:
    return LaurentPolynomial.parse(text)


def x(i: int, p: int = 1) -> Monomial:
    return Monomial.var("x", i, p)


def y(i: int, p: int = 1) -> Monomial:
    return Monomial.var("y", i, p)


def w(i: int, p: int = 1) -> Monomial:
    return Monomial.var("w", i, p)
