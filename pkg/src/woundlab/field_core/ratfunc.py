"""Rational functions F_q(t) in lowest terms."""

from __future__ import annotations

import re

from .gf import FieldElement, FieldSpec
from .poly import DensePoly, factor

_ATOM = re.compile(r"^[A-Za-z0-9]+(\^-?[0-9]+)?$")

__all__ = ["RatFunc"]


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: DensePoly, den: DensePoly | None = None, *, _reduced: bool = False):
        F = num.field
        if den is None:
            den = DensePoly.constant(F, 1)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = DensePoly.constant(F, 1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            if lc != 1:
                inv = lc.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------------

    @classmethod
    def t(cls, field: FieldSpec) -> "RatFunc":
        return cls(DensePoly.x(field), _reduced=True)

    @classmethod
    def constant(cls, field: FieldSpec, value) -> "RatFunc":
        return cls(DensePoly.constant(field, value), _reduced=True)

    @classmethod
    def from_poly(cls, poly: DensePoly) -> "RatFunc":
        return cls(poly, _reduced=True)

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # -- arithmetic -------------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise ValueError("rational functions over different fields")
            return other
        if isinstance(other, DensePoly):
            return RatFunc.from_poly(other)
        if isinstance(other, (int, FieldElement)):
            return RatFunc.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

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
        g1 = self.num.gcd(o.den) if self.num and not o.den.is_one() else None
        g2 = o.num.gcd(self.den) if o.num and not self.den.is_one() else None
        n1, d2 = (self.num.exact_div(g1), o.den.exact_div(g1)) if g1 is not None and not g1.is_one() else (self.num, o.den)
        n2, d1 = (o.num.exact_div(g2), self.den.exact_div(g2)) if g2 is not None and not g2.is_one() else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        if not num:
            return RatFunc.constant(self.field, 0)
        return RatFunc(num, den, _reduced=True) if den.lc == 1 else RatFunc(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

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

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _reduced=True)

    def frobenius(self, k: int = 1) -> "RatFunc":
        return RatFunc(self.num.frobenius(k), self.den.frobenius(k), _reduced=True)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    # -- valuations -------------------------------------------------------------

    def valuation(self, place: DensePoly | None = None) -> int:
        """Order at a monic irreducible ``place``; ``None`` means the place at infinity."""
        if not self.num:
            raise ValueError("valuation of zero")
        if place is None:
            return self.den.degree - self.num.degree
        return _order(self.num, place) - _order(self.den, place)

    def places(self) -> list[DensePoly]:
        """Finite places where the function has a zero or pole."""
        out = {}
        for part in (self.num, self.den):
            if part.degree >= 1:
                for irr, _ in factor(part):
                    out[irr.c] = irr
        return [out[k] for k in sorted(out)]

    # -- comparisons and display ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, FieldElement, DensePoly)):
            o = self._lift(other)
            return self == o
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_str(self, var: str = "t") -> str:
        n = self.num.to_str(var)
        if self.den.is_one():
            return n
        d = self.den.to_str(var)
        if " + " in n:
            n = f"({n})"
        if not _ATOM.match(d):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RatFunc({self.field.name}: {self})"


def _order(f: DensePoly, place: DensePoly) -> int:
    k = 0
    while True:
        q, r = f.divmod(place)
        if r:
            return k
        f = q
        k += 1
