"""Truncated Laurent series over F_q with explicit precision.

A series stores its coefficients for exponents start, start+1, ... and a
precision ``prec``: every exponent >= prec is unknown.  ``prec=None`` marks an
exact Laurent polynomial.  Arithmetic never claims more precision than the
inputs support.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .gf import FieldElement, FieldSpec
from .poly import DensePoly
from .tower import FieldTower

__all__ = ["LaurentSeries", "PrecisionError", "hensel_solve", "lift_series", "DEFAULT_PREC"]

DEFAULT_PREC = 64


class PrecisionError(ArithmeticError):
    """Raised when a result would need coefficients beyond the known precision."""


def _min(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _plus(a: int | None, b: int) -> int | None:
    return None if a is None else a + b


class LaurentSeries:
    __slots__ = ("field", "start", "c", "prec")

    def __init__(self, field: FieldSpec, start: int, codes: Sequence[int], prec: int | None):
        c = list(codes)
        if prec is not None:
            del c[max(prec - start, 0):]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        start += i
        while c and c[-1] == 0:
            c.pop()
        if not c:
            start = prec if prec is not None else 0
        self.field = field
        self.start = start
        self.c = tuple(c)
        self.prec = prec

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, prec: int | None = None) -> "LaurentSeries":
        return cls(field, 0, (), prec)

    @classmethod
    def monomial(cls, field: FieldSpec, exp: int, coeff=1, prec: int | None = None) -> "LaurentSeries":
        code = coeff.code if isinstance(coeff, FieldElement) else coeff % field.p
        return cls(field, exp, (code,), prec)

    @classmethod
    def from_dict(cls, field: FieldSpec, terms: dict[int, int], prec: int | None = None) -> "LaurentSeries":
        if not terms:
            return cls.zero(field, prec)
        lo, hi = min(terms), max(terms)
        codes = [0] * (hi - lo + 1)
        for e, x in terms.items():
            codes[e - lo] = x
        return cls(field, lo, codes, prec)

    @classmethod
    def from_poly(cls, poly: DensePoly, prec: int | None = None) -> "LaurentSeries":
        return cls(poly.field, 0, poly.c, prec)

    @classmethod
    def t(cls, field: FieldSpec) -> "LaurentSeries":
        return cls.monomial(field, 1)

    # -- accessors ----------------------------------------------------------------

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def valuation(self) -> int:
        """Exponent of the first nonzero term; a lower bound (the precision) if all known terms vanish."""
        if self.c:
            return self.start
        if self.prec is None:
            raise ValueError("valuation of exact zero")
        return self.prec

    def _val_bound(self) -> int | None:
        if self.c:
            return self.start
        return self.prec

    @property
    def end(self) -> int:
        """One past the last stored exponent."""
        return self.start + len(self.c)

    def coeff(self, i: int) -> int:
        if self.prec is not None and i >= self.prec:
            raise PrecisionError(f"coefficient of t^{i} is beyond precision O(t^{self.prec})")
        j = i - self.start
        return self.c[j] if 0 <= j < len(self.c) else 0

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.coeff(i))

    def terms(self) -> Iterator[tuple[int, int]]:
        for j, x in enumerate(self.c):
            if x:
                yield self.start + j, x

    def support(self) -> list[int]:
        return [e for e, _ in self.terms()]

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms())

    # -- arithmetic -----------------------------------------------------------------

    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.field is not self.field:
                raise ValueError(f"series over {other.field.name} and {self.field.name}")
            return other
        if isinstance(other, (int, FieldElement)):
            return LaurentSeries.monomial(self.field, 0, other)
        if isinstance(other, DensePoly):
            return LaurentSeries.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        prec = _min(self.prec, o.prec)
        if not o.c:
            return LaurentSeries(self.field, self.start, self.c, prec)
        if not self.c:
            return LaurentSeries(self.field, o.start, o.c, prec)
        lo = min(self.start, o.start)
        hi = max(self.end, o.end)
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return LaurentSeries.zero(self.field, prec)
        add = self.field.add
        out = [0] * (hi - lo)
        for e, x in self.terms():
            if e < hi:
                out[e - lo] = x
        for e, x in o.terms():
            if e < hi:
                out[e - lo] = add(out[e - lo], x)
        return LaurentSeries(self.field, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return LaurentSeries(self.field, self.start, [neg(x) for x in self.c], self.prec)

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
        va, vb = self._val_bound(), o._val_bound()
        # pessimistic precision: min(N_a + v_b, N_b + v_a)
        prec = None
        if self.prec is not None:
            prec = self.prec + vb if vb is not None else None
        if o.prec is not None:
            cand = o.prec + va if va is not None else None
            prec = _min(prec, cand)
        if not self.c or not o.c:
            if prec is None:
                # exact zero times anything exact
                return LaurentSeries.zero(self.field, None)
            return LaurentSeries.zero(self.field, prec)
        lo = self.start + o.start
        hi = self.end + o.end - 1
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return LaurentSeries.zero(self.field, prec)
        F = self.field
        mul, add = F.mul, F.add
        out = [0] * (hi - lo)
        b = o.c
        n = hi - lo
        for i, x in enumerate(self.c):
            if not x or i >= n:
                continue
            lim = min(len(b), n - i)
            for j in range(lim):
                y = b[j]
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
        return LaurentSeries(F, lo, out, prec)

    __rmul__ = __mul__

    def scale(self, code: int) -> "LaurentSeries":
        mul = self.field.mul
        return LaurentSeries(self.field, self.start, [mul(code, x) for x in self.c], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        return LaurentSeries(self.field, self.start + k, self.c, _plus(self.prec, k))

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.field, self.start, self.c, _min(self.prec, prec))

    def with_prec(self, prec: int | None) -> "LaurentSeries":
        """Reinterpret an exact polynomial at a finite precision (never raises precision)."""
        if self.prec is not None and (prec is None or prec > self.prec):
            raise PrecisionError("cannot raise the precision of an inexact series")
        return LaurentSeries(self.field, self.start, self.c, prec)

    def inverse(self, rel_prec: int | None = None) -> "LaurentSeries":
        """1/self.  Exact inputs are expanded to ``rel_prec`` terms (default DEFAULT_PREC)."""
        if not self.c:
            raise ZeroDivisionError("inverse of a series with no known nonzero term")
        F = self.field
        v = self.start
        if self.prec is None:
            if len(self.c) == 1:
                return LaurentSeries(F, -v, (F.inv(self.c[0]),), None)
            r = rel_prec if rel_prec is not None else DEFAULT_PREC
        else:
            r = self.prec - v
            if rel_prec is not None:
                r = min(r, rel_prec)
        inv0 = F.inv(self.c[0])
        mul, sub = F.mul, F.sub
        b = [0] * r
        b[0] = inv0
        a = self.c
        for n in range(1, r):
            acc = 0
            for j in range(1, min(n, len(a) - 1) + 1):
                if a[j] and b[n - j]:
                    acc = F.add(acc, mul(a[j], b[n - j]))
            b[n] = mul(sub(0, acc), inv0)
        return LaurentSeries(F, -v, b, -v + r)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.monomial(self.field, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, k: int = 1) -> "LaurentSeries":
        """self^(p^k), computed termwise."""
        F = self.field
        P = F.p**k
        terms = {e * P: F.frob(x, k) for e, x in self.terms()}
        prec = None if self.prec is None else self.prec * P
        return LaurentSeries.from_dict(F, terms, prec)

    def map_coeffs(self, fn, field: FieldSpec) -> "LaurentSeries":
        return LaurentSeries(field, self.start, [fn(x) for x in self.c], self.prec)

    def split(self, at: int = 0) -> tuple["LaurentSeries", "LaurentSeries"]:
        """(terms of exponent < at as an exact polynomial, the rest)."""
        lo = {e: x for e, x in self.terms() if e < at}
        hi = {e: x for e, x in self.terms() if e >= at}
        if self.prec is not None and self.prec < at:
            raise PrecisionError(f"terms below t^{at} not all known")
        return (LaurentSeries.from_dict(self.field, lo, None),
                LaurentSeries.from_dict(self.field, hi, self.prec))

    def component(self, j: int, k: int = 1) -> "LaurentSeries":
        """The p^k-basis component: g with sum over e = j mod p^k of c_e t^e = t^j g^(p^k)."""
        F = self.field
        P = F.p**k
        terms = {}
        for e, x in self.terms():
            if (e - j) % P == 0:
                terms[(e - j) // P] = F.root(x, k)
        prec = None if self.prec is None else -((j - self.prec) // P)
        return LaurentSeries.from_dict(F, terms, prec)

    def pth_root(self, k: int = 1) -> "LaurentSeries | None":
        """g with g^(p^k) = self, or None when some exponent is not divisible by p^k."""
        P = self.field.p**k
        if any(e % P for e, _ in self.terms()):
            return None
        return self.component(0, k)

    # -- comparison and display -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentSeries):
            return (self.field is other.field and self.prec == other.prec
                    and self.c == other.c and (not self.c or self.start == other.start))
        if isinstance(other, (int, FieldElement)):
            return self == self._lift(other)
        return NotImplemented

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of all coefficients known in both."""
        prec = _min(self.prec, other.prec)
        d = (self.truncate(prec) if prec is not None else self) - other
        return not d.c

    def __hash__(self) -> int:
        return hash((self.field.q, self.start if self.c else 0, self.c, self.prec))

    def to_str(self, var: str = "t") -> str:
        parts = []
        for e, x in self.terms():
            c = FieldElement(self.field, x)
            cs = str(c)
            if " + " in cs:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
                continue
            v = var if e == 1 else f"{var}^{e}"
            parts.append(v if x == 1 else f"{cs}*{v}")
        if self.prec is not None:
            parts.append(f"O({var}^{self.prec})")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentSeries({self.field.name}: {self})"


def lift_series(tower: FieldTower, s: LaurentSeries) -> LaurentSeries:
    """Move a series over a tower level to the tower's top field."""
    if s.field is tower.top:
        return s
    emb = tower.to_top[tower.level_of(s.field)]
    return s.map_coeffs(emb, tower.top)


def _solve_linear_part(alphas: list[int], g: LaurentSeries, N: int, tower: FieldTower) -> LaurentSeries:
    """Solve v + sum alpha_i v^(p^i) = g in F[[t]] mod t^N (alpha_i constants)."""
    F = tower.top
    p = F.p
    g0 = g.coeff(0)
    if any(alphas):
        # residue equation: an additive polynomial in c_0
        deg = p ** len(alphas)
        codes = [0] * (deg + 1)
        codes[1] = 1
        for i, a in enumerate(alphas, start=1):
            codes[p**i] = F.add(codes[p**i], a)
        codes[0] = F.neg(g0)
        root = tower.ensure_root(DensePoly.from_codes(F, codes), "residue additive equation")
        if tower.top is not F:
            F = tower.top
            emb = tower.to_top[tower.level_of(g.field)]
            g = g.map_coeffs(emb, F)
            alphas = [emb(a) for a in alphas]
        c0 = root.code
    else:
        c0 = g0
    c = [0] * N
    if N:
        c[0] = c0
    for j in range(1, N):
        acc = g.coeff(j)
        for i, a in enumerate(alphas, start=1):
            P = p**i
            if a and j % P == 0:
                prev = c[j // P]
                if prev:
                    acc = F.sub(acc, F.mul(a, F.frob(prev, i)))
        c[j] = acc
    return LaurentSeries(F, 0, c, N)


def hensel_solve(a: Sequence[LaurentSeries], f: LaurentSeries, N: int,
                 tower: FieldTower | None = None) -> LaurentSeries:
    """Solve v + sum_i a_i v^(p^i) = f in F[[t]] modulo t^N.

    Requires v(a_i) >= 0 and v(f) >= 0.  When the residue additive equation has
    no root in the current field the tower is extended; the result lives in the
    tower's top field.
    """
    if tower is None:
        tower = FieldTower(f.field)
    for x in list(a) + [f]:
        if x.prec is not None and x.prec < N:
            raise PrecisionError(f"precision exhausted: input known to O(t^{x.prec}), need O(t^{N})")
        if x.c and x.start < 0:
            raise ValueError("hensel_solve needs integral inputs")
    a = [lift_series(tower, x) for x in a]
    f = lift_series(tower, f)
    F = tower.top
    alphas = [x.coeff(0) for x in a]
    rest = [x - LaurentSeries.monomial(F, 0, FieldElement(F, c)) for x, c in zip(a, alphas)]
    v = LaurentSeries.zero(F, N)
    for _ in range(N + 1):
        g = f.truncate(N)
        for i, r in enumerate(rest, start=1):
            if r.c:
                g = g - r * v.frobenius(i)
        g = g.truncate(N)
        new = _solve_linear_part(alphas, g, N, tower)
        if new.field is not F:
            F = new.field
            emb = tower.to_top[tower.level_of(f.field)]
            f = f.map_coeffs(emb, F)
            rest = [r.map_coeffs(emb, F) for r in rest]
            alphas = [emb(x) for x in alphas]
            v = v.map_coeffs(emb, F)
        if new == v:
            break
        v = new
    return v
