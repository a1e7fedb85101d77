"""Finite fields F_{p^e} in a polynomial basis.

An element of F_q, q = p^e, is stored as an integer *code* in [0, q): the
base-p digits of the code are the coefficients of the element written as a
polynomial in the generator ``w`` (digit i is the coefficient of w^i).  Every
container in this package (polynomials, series, matrices) stores codes and
calls back into its :class:`FieldSpec` for arithmetic; :class:`FieldElement`
is the user-facing scalar wrapper.

For q <= TABLE_LIMIT a FieldSpec builds log/exp/Zech tables from a primitive
element, which makes all operations O(1).  Larger fields (up to the ceiling)
fall back to digit-vector arithmetic.  Both paths are exact and are checked
against each other in the test suite.
"""

from __future__ import annotations

import random as _random
from functools import reduce
from typing import Iterable, Iterator, Sequence

__all__ = [
    "FIELD_CEILING",
    "FieldCeilingError",
    "FieldSpec",
    "FieldElement",
    "GF",
    "pth_root",
]

FIELD_CEILING = 2**20
TABLE_LIMIT = 2**16

SUPPORTED_CHARACTERISTICS = (2, 3, 5, 7)


class FieldCeilingError(ValueError):
    """Raised when a field larger than the configured ceiling is requested."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over the prime field as little-endian lists of ints ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
        _trim(a)
    return _trim(a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(base, n, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while n:
        if n & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        n >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible_over_prime_field(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    e = len(modulus) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    # x^(p^e) == x mod f
    if _psub(_ppowmod(x, p**e, modulus, p), x, p):
        return False
    for r in _prime_factors(e):
        h = _psub(_ppowmod(x, p ** (e // r), modulus, p), x, p)
        if len(_pgcd(modulus, h, p)) > 1:
            return False
    return True


def _is_primitive_modulus(modulus, p):
    e = len(modulus) - 1
    q1 = p**e - 1
    for r in _prime_factors(q1):
        if _ppowmod([0, 1], q1 // r, modulus, p) == [1]:
            return False
    return True


def _first_modulus(p: int, e: int, primitive: bool = True) -> tuple[int, ...]:
    """First monic irreducible (primitive if requested) polynomial of degree e,
    ordered by the integer code of its lower coefficients."""
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        if low[0] == 0:
            continue
        m = tuple(low) + (1,)
        if is_irreducible_over_prime_field(m, p) and (not primitive or _is_primitive_modulus(m, p)):
            return m
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


_SPEC_CACHE: dict[tuple[int, tuple[int, ...]], "FieldSpec"] = {}


def GF(p: int, e: int = 1, modulus: Sequence[int] | None = None, *,
       ceiling: int = FIELD_CEILING) -> "FieldSpec":
    """Return the (interned) field F_{p^e}.

    ``modulus`` lists the coefficients of the defining polynomial from the
    constant term up, leading 1 included.  Without it the first primitive
    polynomial of degree e is used.
    """
    if not _is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if modulus is None:
        if p**e > ceiling:
            raise FieldCeilingError(f"F_{p}^{e} exceeds the field ceiling {ceiling}")
        modulus = _first_modulus(p, e)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) == 2 and modulus[-1] == 1:
        modulus = (0, 1)  # prime fields have a single canonical spec
    if not modulus or modulus[-1] != 1:
        raise ValueError("defining polynomial must be monic")
    e = len(modulus) - 1
    if p**e > ceiling:
        raise FieldCeilingError(f"F_{p}^{e} exceeds the field ceiling {ceiling}")
    key = (p, modulus)
    spec = _SPEC_CACHE.get(key)
    if spec is None:
        if not is_irreducible_over_prime_field(modulus, p):
            raise ValueError(f"{modulus} is not irreducible over F_{p}")
        spec = FieldSpec(p, modulus)
        _SPEC_CACHE[key] = spec
    return spec


class FieldSpec:
    """The finite field F_p[w]/(modulus).  Obtain instances through :func:`GF`."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.modulus = modulus
        self.e = len(modulus) - 1
        self.q = p**self.e
        self._pows = [p**i for i in range(self.e + 1)]
        self._tables = False
        self._neg_one_log = None
        if self.e > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)

    # -- construction helpers -------------------------------------------------

    def _build_tables(self):
        q, p = self.q, self.p
        g = self._find_generator()
        step = self._times_w if g == p else (lambda x: self._mul_slow(x, g))
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = step(x)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        zech = [-1] * (q - 1)
        for d in range(q - 1):
            c = exp[d]
            c1 = c - c % p + (c % p + 1) % p
            zech[d] = log[c1] if c1 else -1
        self._exp, self._log, self._zech = exp, log, zech
        self._tables = True
        self._neg_one_log = 0 if p == 2 else (q - 1) // 2

    def _times_w(self, x: int) -> int:
        p, e = self.p, self.e
        top = x // self._pows[e - 1]
        x = (x - top * self._pows[e - 1]) * p
        if top:
            x = self._add_slow(x, self.from_digits((-top * c) % p for c in self.modulus[:e]))
        return x

    def _find_generator(self) -> int:
        factors = _prime_factors(self.q - 1)
        if self.e > 1 and _is_primitive_modulus(self.modulus, self.p):
            return self.p  # the code of w
        for g in range(1, self.q):
            if all(self._pow_slow(g, (self.q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("multiplicative group has no generator")

    # -- digit conversion -----------------------------------------------------

    def digits(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(code % p)
            code //= p
        return out

    def from_digits(self, digits: Iterable[int]) -> int:
        p = self.p
        code = 0
        for i, d in enumerate(digits):
            code += (int(d) % p) * self._pows[i]
        return code

    # -- slow (table-free) arithmetic ----------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        prod = _pmul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        return self.from_digits(_pmod(prod, self.modulus, self.p))

    def _pow_slow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            n >>= 1
        return result

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        return self.from_digits((x + y) % p for x, y in zip(self.digits(a), self.digits(b)))

    def _neg_slow(self, a: int) -> int:
        p = self.p
        return self.from_digits((-x) % p for x in self.digits(a))

    # -- code arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % p
        if not a:
            return b
        if not b:
            return a
        if self._tables:
            log = self._log
            la, lb = log[a], log[b]
            z = self._zech[(lb - la) % (self.q - 1)]
            if z < 0:
                return 0
            return self._exp[la + z]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.e == 1:
            return self.p - a
        if self._tables:
            return self._exp[self._log[a] + self._neg_one_log]
        return self._neg_slow(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.e == 1:
            return a * b % self.p
        if self._tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._tables:
            return self._exp[(self.q - 1) - self._log[a]]
        return self._pow_slow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if not a:
            return 0
        if self.e == 1:
            return pow(a, n % (self.p - 1) or (self.p - 1), self.p)
        if self._tables:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        return self._pow_slow(a, n % (self.q - 1) or (self.q - 1))

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        k %= self.e
        if k == 0 or a in (0, 1):
            return a
        return self.pow(a, self.p**k)

    def root(self, a: int, k: int = 1) -> int:
        """The unique b with b^(p^k) = a."""
        return self.frob(a, (-k) % self.e)

    # -- elements -------------------------------------------------------------

    @property
    def name(self) -> str:
        return f"F{self.q}"

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, self.from_digits([0, 1]) if self.e > 1 else (-self.modulus[0]) % self.p)

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise ValueError(f"element of {x.field} is not in {self}")
            return x
        if isinstance(x, int):
            return FieldElement(self, x % self.p)
        if isinstance(x, (list, tuple)):
            if len(x) > self.e:
                raise ValueError("too many coordinates")
            return FieldElement(self, self.from_digits(x))
        raise TypeError(f"cannot convert {x!r} to {self}")

    def from_code(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    def random(self, rng: _random.Random | None = None, nonzero: bool = False) -> "FieldElement":
        rng = rng or _random
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randrange(lo, self.q))

    def contains_subfield(self, degree: int) -> bool:
        return self.e % degree == 0

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        mod = " + ".join(_mono_str(c, i, "w") for i, c in reversed(list(enumerate(self.modulus))) if c)
        return f"GF({self.p}^{self.e}, {mod})"

    def __reduce__(self):
        return (GF, (self.p, self.e, self.modulus))


def _mono_str(c: int, i: int, var: str) -> str:
    if i == 0:
        return str(c)
    v = var if i == 1 else f"{var}^{i}"
    return v if c == 1 else f"{c}*{v}"


class FieldElement:
    """An immutable element of a finite field."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError(f"mixing {self.field.name} and {other.field.name}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(b, self.code))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frob(self.code, k))

    def pth_root(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.root(self.code, k))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.modulus, self.code))

    def __str__(self) -> str:
        f = self.field
        if f.e == 1:
            return str(self.code)
        d = f.digits(self.code)
        terms = [_mono_str(c, i, "w") for i in range(f.e - 1, -1, -1) if (c := d[i])]
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"{self.field.name}({self})"

    def __reduce__(self):
        return (FieldElement, (self.field, self.code))


def pth_root(x: FieldElement) -> FieldElement:
    """The unique y with y^p = x (Frobenius is bijective on F_q)."""
    return x.pth_root()


def prod(items: Iterable[FieldElement], one: FieldElement) -> FieldElement:
    return reduce(lambda a, b: a * b, items, one)
