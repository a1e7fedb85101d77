"""Dense univariate polynomials over a finite field, with factorization.

Coefficients are stored as field codes (see :mod:`woundlab.field_core.gf`),
lowest degree first, without trailing zeros.
"""

from __future__ import annotations

import random as _random
from typing import Iterable, Sequence

from .gf import FieldElement, FieldSpec

__all__ = ["DensePoly", "factor", "roots", "squarefree_decomposition",
           "distinct_degree_factorization", "min_root_degree"]


def _codes(field: FieldSpec, coeffs: Iterable) -> list[int]:
    out = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            if c.field is not field:
                raise ValueError(f"coefficient from {c.field.name}, expected {field.name}")
            out.append(c.code)
        elif isinstance(c, int):
            out.append(c % field.p)
        else:
            raise TypeError(f"bad coefficient {c!r}")
    return out


def _strip(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class DensePoly:
    """A polynomial sum c_i x^i over ``field``; immutable."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        self.field = field
        self.c = _strip(_codes(field, coeffs))

    @classmethod
    def from_codes(cls, field: FieldSpec, codes: Sequence[int]) -> "DensePoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = _strip(list(codes))
        return obj

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, coeff=1) -> "DensePoly":
        code = _codes(field, [coeff])[0]
        return cls.from_codes(field, [0] * degree + [code])

    @classmethod
    def x(cls, field: FieldSpec) -> "DensePoly":
        return cls.from_codes(field, [0, 1])

    @classmethod
    def constant(cls, field: FieldSpec, value) -> "DensePoly":
        return cls.from_codes(field, _codes(field, [value]))

    # -- basic accessors --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __len__(self) -> int:
        return len(self.c)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.c[i] if 0 <= i < len(self.c) else 0)

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.field, x) for x in self.c]

    @property
    def lc(self) -> FieldElement:
        return FieldElement(self.field, self.c[-1] if self.c else 0)

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def is_one(self) -> bool:
        return self.c == (1,)

    # -- arithmetic -------------------------------------------------------------

    def _lift(self, other) -> "DensePoly":
        if isinstance(other, DensePoly):
            if other.field is not self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return DensePoly.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        add = self.field.add
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add(out[i], y)
        return DensePoly.from_codes(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return DensePoly.from_codes(self.field, [neg(x) for x in self.c])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return DensePoly.from_codes(self.field, [])
        F = self.field
        mul, add = F.mul, F.add
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return DensePoly.from_codes(F, out)

    __rmul__ = __mul__

    def scale(self, s) -> "DensePoly":
        s = _codes(self.field, [s])[0]
        mul = self.field.mul
        return DensePoly.from_codes(self.field, [mul(s, x) for x in self.c])

    def __pow__(self, n: int) -> "DensePoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = DensePoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        mul, sub = F.mul, F.sub
        inv = F.inv(other.c[-1])
        r = list(self.c)
        db = len(other.c) - 1
        if len(r) - 1 < db:
            return DensePoly.from_codes(F, []), self
        qt = [0] * (len(r) - db)
        b = other.c
        for k in range(len(r) - 1 - db, -1, -1):
            coef = mul(r[k + db], inv)
            qt[k] = coef
            if coef:
                for j, y in enumerate(b):
                    if y:
                        r[k + j] = sub(r[k + j], mul(coef, y))
        return DensePoly.from_codes(F, qt), DensePoly.from_codes(F, r[:db])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other: "DensePoly") -> "DensePoly":
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "DensePoly":
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(FieldElement(self.field, self.field.inv(self.c[-1])))

    def gcd(self, other: "DensePoly") -> "DensePoly":
        a, b = self, other
        while b.c:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def xgcd(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly", "DensePoly"]:
        """(g, s, t) with s*self + t*other = g, g monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = DensePoly.constant(F, 1), DensePoly.from_codes(F, [])
        t0, t1 = DensePoly.from_codes(F, []), DensePoly.constant(F, 1)
        while r1.c:
            qt, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if not r0.c:
            return r0, s0, t0
        inv = FieldElement(F, F.inv(r0.c[-1]))
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def powmod(self, n: int, mod: "DensePoly") -> "DensePoly":
        result = DensePoly.constant(self.field, 1) % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            n >>= 1
            if n:
                base = (base * base) % mod
        return result

    def derivative(self) -> "DensePoly":
        F = self.field
        return DensePoly.from_codes(F, [F.mul(x, i % F.p) for i, x in enumerate(self.c)][1:])

    def __call__(self, x):
        """Horner evaluation at a field element (or anything supporting + and *)."""
        if isinstance(x, FieldElement):
            F = self.field
            mul, add = F.mul, F.add
            acc = 0
            for coef in reversed(self.c):
                acc = add(mul(acc, x.code), coef)
            return FieldElement(F, acc)
        acc = None
        for coef in reversed(self.coeffs):
            acc = coef if acc is None else acc * x + coef
        return acc if acc is not None else self.field.zero

    def compose(self, other: "DensePoly") -> "DensePoly":
        acc = DensePoly.from_codes(self.field, [])
        for coef in reversed(self.c):
            acc = acc * other + DensePoly.from_codes(self.field, [coef])
        return acc

    def frobenius(self, k: int = 1) -> "DensePoly":
        """self^(p^k): coefficients raised to p^k, exponents multiplied by p^k."""
        F = self.field
        P = F.p**k
        out = [0] * ((len(self.c) - 1) * P + 1) if self.c else []
        for i, x in enumerate(self.c):
            if x:
                out[i * P] = F.frob(x, k)
        return DensePoly.from_codes(F, out)

    def map_coeffs(self, fn, field: FieldSpec | None = None) -> "DensePoly":
        """Apply a code -> code map to every coefficient (used by embeddings)."""
        return DensePoly.from_codes(field or self.field, [fn(x) for x in self.c])

    def shift(self, k: int) -> "DensePoly":
        if k < 0:
            raise ValueError("negative shift")
        return DensePoly.from_codes(self.field, [0] * k + list(self.c)) if self.c else self

    # -- comparisons and display ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, DensePoly):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, FieldElement)):
            return self == DensePoly.constant(self.field, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.c))

    def to_str(self, var: str = "t") -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            x = self.c[i]
            if x:
                terms.append(_term(FieldElement(self.field, x), var, i))
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"DensePoly({self.field.name}: {self})"

    def __reduce__(self):
        return (DensePoly.from_codes, (self.field, self.c))


def _term(c: FieldElement, var: str, i: int) -> str:
    cs = str(c)
    if c.field.e > 1 and " + " in cs:
        cs = f"({cs})"
    if i == 0:
        return cs
    v = var if i == 1 else f"{var}^{i}"
    return v if c == 1 else f"{cs}*{v}"


# --- factorization over F_q ---------------------------------------------------

def squarefree_decomposition(f: DensePoly) -> list[tuple[DensePoly, int]]:
    """Yun-style square-free decomposition in characteristic p; f monic."""
    F = f.field
    p = F.p
    f = f.monic()
    out: list[tuple[DensePoly, int]] = []
    if f.degree < 1:
        return out

    def rec(g: DensePoly, mult: int):
        if g.degree < 1:
            return
        d = g.derivative()
        if not d:
            # g is a p-th power: take the root coefficientwise
            root = DensePoly.from_codes(F, [F.root(x) for x in g.c[::p]])
            rec(root, mult * p)
            return
        c = g.gcd(d)
        w = g.exact_div(c)
        i = 1
        while w.degree >= 1:
            y = w.gcd(c)
            z = w.exact_div(y)
            if z.degree >= 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = c.exact_div(y)
        if c.degree >= 1:
            root = DensePoly.from_codes(F, [F.root(x) for x in c.c[::p]])
            rec(root, mult * p)

    rec(f, 1)
    return out


def distinct_degree_factorization(f: DensePoly) -> list[tuple[DensePoly, int]]:
    """Split a square-free monic f into products of irreducibles of equal degree."""
    F = f.field
    x = DensePoly.x(F)
    out = []
    h = x
    d = 0
    f = f.monic()
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.q, f)
        g = f.gcd(h - x)
        if g.degree >= 1:
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree >= 1:
        out.append((f, f.degree))
    return out


def _equal_degree_split(f: DensePoly, d: int, rng: _random.Random) -> list[DensePoly]:
    F = f.field
    n = f.degree
    if n == d:
        return [f.monic()]
    while True:
        r = DensePoly.from_codes(F, [rng.randrange(F.q) for _ in range(n)])
        if r.degree < 1:
            continue
        if F.p == 2:
            # trace map to F_2 over F_{q^d}
            t = r
            acc = r
            for _ in range(F.e * d - 1):
                t = (t * t) % f
                acc = acc + t
            g = f.gcd(acc)
        else:
            g = f.gcd(r.powmod((F.q**d - 1) // 2, f) - 1)
        if 0 < g.degree < n:
            return (_equal_degree_split(g, d, rng)
                    + _equal_degree_split(f.exact_div(g), d, rng))


def factor(f: DensePoly, seed: int = 0) -> list[tuple[DensePoly, int]]:
    """Monic irreducible factors with multiplicity, sorted by (degree, coefficients)."""
    rng = _random.Random(seed)
    out = []
    for part, mult in squarefree_decomposition(f):
        for group, d in distinct_degree_factorization(part):
            for irr in _equal_degree_split(group, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda pm: (pm[0].degree, pm[0].c, pm[1]))
    return out


def roots(f: DensePoly, seed: int = 0) -> list[FieldElement]:
    """Distinct roots of f in its coefficient field, sorted by code."""
    F = f.field
    if not f:
        raise ValueError("every element is a root of the zero polynomial")
    if f.degree < 1:
        return []
    x = DensePoly.x(F)
    g = f.monic().gcd(x.powmod(F.q, f.monic()) - x)
    if g.degree < 1:
        return []
    rng = _random.Random(seed)
    lin = _equal_degree_split(g, 1, rng)
    return sorted((FieldElement(F, F.neg(h.c[0])) for h in lin), key=lambda r: r.code)


def min_root_degree(f: DensePoly) -> int:
    """Smallest d such that f has a root in F_{q^d}."""
    parts = squarefree_decomposition(f)
    best = None
    for part, _ in parts:
        for _, d in distinct_degree_factorization(part):
            best = d if best is None else min(best, d)
    if best is None:
        raise ValueError("constant polynomial has no roots")
    return best
