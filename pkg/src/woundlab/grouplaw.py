"""The quasi-rational group u^2 + v + a v^2 = 0 over F = F_q(t), char 2.

Points are parametrized by s in P^1(F) through

    (u, v) = (s / (1 + a s^2), s^2 / (1 + a s^2)),

and the group law is s1 + s2 -> (s1 + s2) / (1 + a s1 s2).  We keep s
projectively as (x : y) with x, y in F_q[t] coprime, y monic when nonzero, so
that the sum of s and 1/(a s) (which is s = infinity, the point (0, 1/a)) needs
no special case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .field_core.pbasis import is_pth_power
from .field_core.poly import DensePoly
from .field_core.ratfunc import RatFunc

__all__ = ["QRGroup", "ParamPoint", "SquareParameterError"]


class SquareParameterError(ValueError):
    """a is a square, so u^2 + v + a v^2 does not define a wound group."""

    def __init__(self, a, root):
        super().__init__(f"a = {a} is a square: ({root})^2")
        self.root = root


@dataclass(frozen=True)
class ParamPoint:
    """s = x / y in P^1(F); (0 : 1) is the identity and (1 : 0) is s = infinity."""

    x: DensePoly
    y: DensePoly

    @classmethod
    def normalized(cls, x: DensePoly, y: DensePoly) -> "ParamPoint":
        if not x and not y:
            raise ArithmeticError("both projective coordinates vanish")
        F = x.field
        if not y:
            return cls(DensePoly.constant(F, 1), y)
        if not x:
            return cls(x, DensePoly.constant(F, 1))
        g = x.gcd(y)
        if not g.is_one():
            x, y = x.exact_div(g), y.exact_div(g)
        lc = y.lc
        if lc != 1:
            inv = lc.inverse()
            x, y = x.scale(inv), y.scale(inv)
        return cls(x, y)

    @classmethod
    def from_ratfunc(cls, s: RatFunc | None, field=None) -> "ParamPoint":
        if s is None:
            F = field
            return cls(DensePoly.constant(F, 1), DensePoly.from_codes(F, []))
        return cls.normalized(s.num, s.den)

    def is_identity(self) -> bool:
        return not self.x

    def is_infinite(self) -> bool:
        return not self.y

    def as_ratfunc(self) -> RatFunc | None:
        """s as an element of F, or None for s = infinity."""
        if not self.y:
            return None
        return RatFunc(self.x, self.y, _reduced=True)

    def same(self, other: "ParamPoint") -> bool:
        """Projective equality by cross-multiplication (valid without normalization)."""
        return self.x * other.y == other.x * self.y

    def __str__(self) -> str:
        s = self.as_ratfunc()
        return "inf" if s is None else str(s)


class QRGroup:
    """Group structure on the parameter line for a non-square a in F_q(t)."""

    def __init__(self, a: RatFunc):
        if a.field.p != 2:
            raise ValueError("the quasi-rational group law is a characteristic-2 object")
        root = is_pth_power(a)
        if root is not None:
            raise SquareParameterError(a, root)
        self.a = a
        self.field = a.field
        # a = A / B with polynomials, so that the law stays in F_q[t]
        self._A = a.num
        self._B = a.den

    def identity(self) -> ParamPoint:
        F = self.field
        return ParamPoint(DensePoly.from_codes(F, []), DensePoly.constant(F, 1))

    def infinity(self) -> ParamPoint:
        return ParamPoint.from_ratfunc(None, self.field)

    def point(self, s) -> ParamPoint:
        if s is None:
            return self.infinity()
        if isinstance(s, ParamPoint):
            return s
        if not isinstance(s, RatFunc):
            s = RatFunc.constant(self.field, s) if not isinstance(s, DensePoly) else RatFunc(s)
        return ParamPoint.from_ratfunc(s)

    def add_unreduced(self, P: ParamPoint, Q: ParamPoint) -> ParamPoint:
        """(x1 y2 + x2 y1 : y1 y2 + a x1 x2), scaled by the denominator of a; not normalized."""
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        B, A = self._B, self._A
        num = x1 * y2 + x2 * y1
        if B.is_one():
            den = y1 * y2 + A * x1 * x2
        else:
            num = B * num
            den = B * (y1 * y2) + A * x1 * x2
        if not num and not den:
            # only possible when a is a square
            raise ArithmeticError("group law denominator and numerator both vanish")
        return ParamPoint(num, den)

    def add(self, P, Q) -> ParamPoint:
        P, Q = self.point(P), self.point(Q)
        R = self.add_unreduced(P, Q)
        return ParamPoint.normalized(R.x, R.y)

    def neg(self, P) -> ParamPoint:
        return self.point(P)

    def embed(self, P) -> tuple[RatFunc, RatFunc]:
        """(u, v) on u^2 + v + a v^2 = 0."""
        P = self.point(P)
        x, y = RatFunc(P.x), RatFunc(P.y)
        D = y * y + self.a * x * x
        return x * y / D, x * x / D

    def on_curve(self, u: RatFunc, v: RatFunc) -> bool:
        return not (u * u + v + self.a * v * v)

    def sample(self, elements: Iterable[RatFunc]) -> list[ParamPoint]:
        return [self.point(s) for s in elements]
