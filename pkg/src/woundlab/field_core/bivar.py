"""Sparse polynomials in two variables (s, t) and their fraction field.

Only what the imperfection-degree-two computations need: ring arithmetic, a
primitive-PRS gcd over F_q[s][t], exact division and p-power substitution.
"""

from __future__ import annotations

import re

from typing import Iterable

from .gf import FieldElement, FieldSpec
from .poly import DensePoly

_ATOM = re.compile(r"^[A-Za-z0-9]+(\^-?[0-9]+)?$")

__all__ = ["BivarPoly", "BivarRatFunc"]

Mono = tuple[int, int]


class BivarPoly:
    """sum c_{ij} s^i t^j with codes stored in a dict keyed by (i, j)."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: dict[Mono, int] | None = None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def from_elements(cls, field: FieldSpec, terms: dict[Mono, FieldElement | int]) -> "BivarPoly":
        codes = {}
        for m, c in terms.items():
            codes[m] = c.code if isinstance(c, FieldElement) else c % field.p
        return cls(field, codes)

    @classmethod
    def s(cls, field):
        return cls(field, {(1, 0): 1})

    @classmethod
    def t(cls, field):
        return cls(field, {(0, 1): 1})

    @classmethod
    def constant(cls, field, value):
        code = value.code if isinstance(value, FieldElement) else value % field.p
        return cls(field, {(0, 0): code})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    def degree_t(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def degree_s(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def leading(self) -> tuple[Mono, int]:
        """Leading term in lex order with t > s."""
        m = max(self.terms, key=lambda ij: (ij[1], ij[0]))
        return m, self.terms[m]

    # -- arithmetic -------------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, BivarPoly):
            if other.field is not self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return BivarPoly.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        add = self.field.add
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = add(out.get(m, 0), c)
        return BivarPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return BivarPoly(self.field, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        F = self.field
        mul, add = F.mul, F.add
        out: dict[Mono, int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = add(out.get(m, 0), mul(c1, c2))
        return BivarPoly(F, out)

    __rmul__ = __mul__

    def scale(self, code: int) -> "BivarPoly":
        mul = self.field.mul
        return BivarPoly(self.field, {m: mul(c, code) for m, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BivarPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, k: int = 1) -> "BivarPoly":
        F = self.field
        P = F.p**k
        return BivarPoly(F, {(i * P, j * P): F.frob(c, k) for (i, j), c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, BivarPoly):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == BivarPoly.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- F_q[s][t] view -----------------------------------------------------------

    def to_st(self) -> list[DensePoly]:
        F = self.field
        dt = self.degree_t()
        rows: list[list[int]] = [[] for _ in range(dt + 1)]
        for (i, j), c in self.terms.items():
            row = rows[j]
            if len(row) <= i:
                row.extend([0] * (i + 1 - len(row)))
            row[i] = c
        return [DensePoly.from_codes(F, r) for r in rows]

    @classmethod
    def from_st(cls, field: FieldSpec, rows: Iterable[DensePoly]) -> "BivarPoly":
        terms = {}
        for j, r in enumerate(rows):
            for i, c in enumerate(r.c):
                if c:
                    terms[(i, j)] = c
        return cls(field, terms)

    def gcd(self, other: "BivarPoly") -> "BivarPoly":
        """Greatest common divisor, normalized to leading coefficient 1."""
        F = self.field
        if not self:
            return other.normalized()
        if not other:
            return self.normalized()
        a, b = self.to_st(), other.to_st()
        ca, cb = _content(a), _content(b)
        c = ca.gcd(cb)
        a, b = _prim(a, ca), _prim(b, cb)
        if len(a) < len(b):
            a, b = b, a
        while len(b) > 1:
            r = _prem(a, b)
            a = b
            if not r:
                b = []
                break
            b = _prim(r, _content(r))
        if len(b) == 1:
            # b is a nonzero element of F_q[s]; after taking primitive parts it is a unit
            g = [DensePoly.constant(F, 1)]
        else:
            g = a
        g = [x * c for x in g]
        return BivarPoly.from_st(F, g).normalized()

    def normalized(self) -> "BivarPoly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(self.field.inv(c)) if c != 1 else self

    def exact_div(self, other: "BivarPoly") -> "BivarPoly":
        F = self.field
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        a = self.to_st()
        b = other.to_st()
        db = len(b) - 1
        quo = [DensePoly.from_codes(F, [])] * max(len(a) - db, 0)
        while len(a) - 1 >= db and any(x for x in a):
            k = len(a) - 1 - db
            c, r = a[-1].divmod(b[-1])
            if r:
                raise ValueError("bivariate division is not exact")
            quo[k] = c
            for j, bj in enumerate(b):
                a[k + j] = a[k + j] - c * bj
            while a and not a[-1]:
                a.pop()
        if any(x for x in a):
            raise ValueError("bivariate division is not exact")
        return BivarPoly.from_st(F, quo)

    def substitute_root(self, k: int) -> "BivarPoly | None":
        """The polynomial g with g^(p^k) = self, if every exponent is divisible by p^k."""
        F = self.field
        P = F.p**k
        out = {}
        for (i, j), c in self.terms.items():
            if i % P or j % P:
                return None
            out[(i // P, j // P)] = F.root(c, k)
        return BivarPoly(F, out)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda ij: (-(ij[0] + ij[1]), -ij[1], -ij[0])):
            c = FieldElement(self.field, self.terms[(i, j)])
            vs = []
            if i:
                vs.append("s" if i == 1 else f"s^{i}")
            if j:
                vs.append("t" if j == 1 else f"t^{j}")
            cs = str(c)
            if " + " in cs:
                cs = f"({cs})"
            if not vs:
                parts.append(cs)
            elif c == 1:
                parts.append("*".join(vs))
            else:
                parts.append("*".join([cs] + vs))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BivarPoly({self.field.name}: {self})"


def _content(rows: list[DensePoly]) -> DensePoly:
    g = None
    for r in rows:
        if r:
            g = r.monic() if g is None else g.gcd(r)
            if g.is_one():
                break
    return g if g is not None else DensePoly.constant(rows[0].field, 1)


def _prim(rows: list[DensePoly], cont: DensePoly) -> list[DensePoly]:
    if cont.is_one():
        return list(rows)
    return [r.exact_div(cont) for r in rows]


def _prem(a: list[DensePoly], b: list[DensePoly]) -> list[DensePoly]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        k = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[k + j] = a[k + j] - la * bj
        while a and not a[-1]:
            a.pop()
    return a


class BivarRatFunc:
    """An element of F_q(s, t) in lowest terms with normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: BivarPoly, den: BivarPoly | None = None, *, _reduced: bool = False):
        F = num.field
        if den is None:
            den = BivarPoly.constant(F, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = BivarPoly.constant(F, 1)
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
            _, lc = den.leading()
            if lc != 1:
                inv = F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def s(cls, field):
        return cls(BivarPoly.s(field), _reduced=True)

    @classmethod
    def t(cls, field):
        return cls(BivarPoly.t(field), _reduced=True)

    @classmethod
    def constant(cls, field, value):
        return cls(BivarPoly.constant(field, value), _reduced=True)

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _lift(self, other):
        if isinstance(other, BivarRatFunc):
            if other.field is not self.field:
                raise ValueError("different fields")
            return other
        if isinstance(other, BivarPoly):
            return BivarRatFunc(other, _reduced=True)
        if isinstance(other, (int, FieldElement)):
            return BivarRatFunc.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return BivarRatFunc(self.num + o.num, self.den)
        return BivarRatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return BivarRatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return BivarRatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return BivarRatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return BivarRatFunc(self.num**n, self.den**n, _reduced=True)

    def frobenius(self, k: int = 1):
        return BivarRatFunc(self.num.frobenius(k), self.den.frobenius(k), _reduced=True)

    def __eq__(self, other):
        if isinstance(other, BivarRatFunc):
            return self.num * other.den == other.num * self.den
        if isinstance(other, (int, FieldElement, BivarPoly)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self) -> str:
        n = self.num.to_str()
        if self.den.is_one():
            return n
        d = self.den.to_str()
        if " + " in n:
            n = f"({n})"
        if not _ATOM.match(d):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BivarRatFunc({self.field.name}: {self})"
