"""Text syntax for field elements, series, rational functions, forms and equations.

Grammar (whitespace ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    atom    := INT | VAR | '(' expr ')' | 'O' '(' 't' '^' exponent ')'
    exponent:= ['-'] INT | '(' ['-'] INT ')'

Variables are t, s, t0, t1, u, v and the field generator w.  Values are kept
as quotients of sparse Laurent polynomials until converted to a concrete type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from ..field_core.bivar import BivarPoly, BivarRatFunc
from ..field_core.gf import FieldElement, FieldSpec, GF
from ..field_core.laurent import LaurentSeries
from ..field_core.poly import DensePoly
from ..field_core.ratfunc import RatFunc
from ..hassewitt import BinaryForm
from ..ppoly import RussellEquation

__all__ = [
    "ExprSyntaxError", "UnknownVariable", "Parsed", "parse", "parse_expression", "parse_field",
    "parse_russell", "format_value", "VARS",
]

VARS = ("s", "t", "t0", "t1", "u", "v")
_IDX = {name: i for i, name in enumerate(VARS)}
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


class UnknownVariable(ExprSyntaxError):
    pass


# --- sparse Laurent polynomials ------------------------------------------------------
# dict {exponent tuple over VARS: field code}

def _sp_add(F: FieldSpec, a: dict, b: dict) -> dict:
    out = dict(a)
    for k, x in b.items():
        y = F.add(out.get(k, 0), x)
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def _sp_neg(F: FieldSpec, a: dict) -> dict:
    return {k: F.neg(x) for k, x in a.items()}


def _sp_mul(F: FieldSpec, a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, x in a.items():
        for kb, y in b.items():
            k = tuple(i + j for i, j in zip(ka, kb))
            z = F.add(out.get(k, 0), F.mul(x, y))
            if z:
                out[k] = z
            else:
                out.pop(k, None)
    return out


def _sp_const(F: FieldSpec, code: int) -> dict:
    return {(0,) * len(VARS): code} if code else {}


def _sp_monomial_inverse(F: FieldSpec, a: dict) -> dict | None:
    if len(a) != 1:
        return None
    (k, x), = a.items()
    return {tuple(-i for i in k): F.inv(x)}


@dataclass
class Parsed:
    """num / den as sparse Laurent polynomials, plus an optional O(t^N) bound."""

    field: FieldSpec
    num: dict
    den: dict
    prec: int | None = None

    def variables(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for k in poly:
                used.update(VARS[i] for i, e in enumerate(k) if e)
        return used

    # arithmetic used by the parser

    def _combine(self, other: "Parsed", sign: int) -> "Parsed":
        F = self.field
        b = other.num if sign > 0 else _sp_neg(F, other.num)
        prec = _pmin(self.prec, other.prec)
        if self.den == other.den:
            return Parsed(F, _sp_add(F, self.num, b), self.den, prec)
        num = _sp_add(F, _sp_mul(F, self.num, other.den), _sp_mul(F, b, self.den))
        return Parsed(F, num, _sp_mul(F, self.den, other.den), prec)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, other):
        F = self.field
        return Parsed(F, _sp_mul(F, self.num, other.num), _sp_mul(F, self.den, other.den),
                      _pmin(self.prec, other.prec))._absorb()

    def inverse(self) -> "Parsed":
        if not self.num:
            raise ZeroDivisionError("division by zero in expression")
        return Parsed(self.field, self.den, self.num, self.prec)._absorb()

    def __pow__(self, n: int) -> "Parsed":
        base = self if n >= 0 else self.inverse()
        out = Parsed(self.field, _sp_const(self.field, 1), _sp_const(self.field, 1))
        for _ in range(abs(n)):
            out = out * base
        return out

    def _absorb(self) -> "Parsed":
        """Fold a monomial denominator into the numerator as negative exponents."""
        inv = _sp_monomial_inverse(self.field, self.den)
        if inv is None:
            return self
        return Parsed(self.field, _sp_mul(self.field, self.num, inv), _sp_const(self.field, 1), self.prec)

    # conversions

    def _require(self, allowed: set[str], what: str) -> None:
        extra = self.variables() - allowed
        if extra:
            raise ValueError(f"{what} cannot contain {', '.join(sorted(extra))}")

    def _no_prec(self, what: str) -> None:
        if self.prec is not None:
            raise ValueError(f"{what} cannot carry an O(t^N) term")

    def to_element(self) -> FieldElement:
        self._require(set(), "a field element")
        self._no_prec("a field element")
        F = self.field
        n = self.num.get((0,) * len(VARS), 0)
        d = self.den.get((0,) * len(VARS), 0)
        return FieldElement(F, F.div(n, d))

    def _univariate(self, poly: dict, var: str) -> dict[int, int]:
        i = _IDX[var]
        return {k[i]: x for k, x in poly.items()}

    def to_ratfunc(self) -> RatFunc:
        self._require({"t"}, "a rational function in t")
        self._no_prec("a rational function")
        F = self.field
        num, den = self._univariate(self.num, "t"), self._univariate(self.den, "t")
        low = min(list(num) + list(den) + [0])
        return RatFunc(_dense(F, num, -low), _dense(F, den, -low))

    def to_bivar(self) -> BivarRatFunc:
        self._require({"s", "t"}, "a rational function in s, t")
        self._no_prec("a rational function")
        F = self.field
        i, j = _IDX["s"], _IDX["t"]
        polys = [{(k[i], k[j]): x for k, x in p.items()} for p in (self.num, self.den)]
        ls = min([k[0] for p in polys for k in p] + [0])
        lt = min([k[1] for p in polys for k in p] + [0])
        num, den = (BivarPoly(F, {(a - ls, b - lt): x for (a, b), x in p.items()}) for p in polys)
        return BivarRatFunc(num, den)

    def to_laurent(self, prec: int | None = None) -> LaurentSeries:
        """Exact unless an O(t^N) term was written or the denominator must be expanded."""
        self._require({"t"}, "a Laurent series in t")
        F = self.field
        N = self.prec if self.prec is not None else None
        num = LaurentSeries.from_dict(F, self._univariate(self.num, "t"))
        den_terms = self._univariate(self.den, "t")
        if len(den_terms) == 1:
            (e, x), = den_terms.items()
            out = num.shift(-e).scale(F.inv(x))
        else:
            if N is None and prec is None:
                raise ValueError("expanding a non-monomial denominator needs a precision")
            bound = N if N is not None else prec
            den = LaurentSeries.from_dict(F, den_terms)
            rel = bound - num.valuation() + den.valuation() if num else 1
            out = num * den.inverse(max(rel, 1))
            out = out.with_prec(bound) if out.prec is None or out.prec > bound else out
        if N is not None:
            out = out.with_prec(N)
        return out

    def to_binary_form(self, degree: int | None = None) -> BinaryForm:
        self._require({"t0", "t1"}, "a binary form")
        self._no_prec("a binary form")
        F = self.field
        if len(self.den) != 1 or next(iter(self.den)) != (0,) * len(VARS):
            raise ValueError("a binary form has no denominator")
        i0, i1 = _IDX["t0"], _IDX["t1"]
        degs = {k[i0] + k[i1] for k in self.num}
        if any(k[i0] < 0 or k[i1] < 0 for k in self.num):
            raise ValueError("a binary form has nonnegative exponents")
        if len(degs) > 1:
            raise ValueError(f"binary form is not homogeneous (degrees {sorted(degs)})")
        N = degs.pop() if degs else degree
        if N is None:
            raise ValueError("the zero binary form needs an explicit degree")
        if degree is not None and N != degree:
            raise ValueError(f"binary form has degree {N}, expected {degree}")
        inv = F.inv(next(iter(self.den.values())))
        return BinaryForm.from_terms(F, N, {k[i0]: F.mul(x, inv) for k, x in self.num.items()})

    def to_russell(self, coeffs: str = "auto", prec: int | None = None) -> RussellEquation:
        """u^(p^n) + v + sum a_i v^(p^i); coefficients as RatFunc, BivarRatFunc or LaurentSeries."""
        F = self.field
        p = F.p
        iu, iv = _IDX["u"], _IDX["v"]
        for k in self.den:
            if k[iu] or k[iv]:
                raise ValueError("u and v cannot appear in a denominator")
        groups: dict[tuple[int, int], dict] = {}
        for k, x in self.num.items():
            key = (k[iu], k[iv])
            rest = tuple(0 if i in (iu, iv) else e for i, e in enumerate(k))
            groups.setdefault(key, {})[rest] = x
        for (eu, ev) in groups:
            if (eu and ev) or not (eu or ev):
                raise ValueError("every term must involve exactly one of u, v")
            if not _is_p_power(p, eu or ev):
                raise ValueError(f"exponent {eu or ev} is not a power of {p}")
        us = [eu for (eu, ev) in groups if eu]
        if len(us) != 1:
            raise ValueError("exactly one u^(p^n) term expected")
        n = _plog(p, us[0])
        if n < 1:
            raise ValueError("height n must be at least 1")
        vs = sorted(_plog(p, ev) for (eu, ev) in groups if ev)
        if not vs or vs[0] != 0:
            raise ValueError("the linear term v is missing")
        vals = {key: Parsed(F, g, self.den, self.prec) for key, g in groups.items()}
        one = Parsed(F, _sp_const(F, 1), _sp_const(F, 1))
        for key in [(us[0], 0), (0, 1)]:
            if not _same(vals[key], one):
                raise ValueError("u^(p^n) and v must have coefficient 1")
        m = vs[-1]
        if coeffs == "auto":
            used = set().union(*(v.variables() for v in vals.values()))
            coeffs = "laurent" if self.prec is not None else ("bivar" if "s" in used else "ratfunc")
        conv = {
            "ratfunc": lambda x: x.to_ratfunc(),
            "bivar": lambda x: x.to_bivar(),
            "laurent": lambda x: x.to_laurent(prec),
        }[coeffs]
        zero = Parsed(F, {}, _sp_const(F, 1))
        a = tuple(conv(vals.get((0, p**i), zero)) for i in range(1, m + 1))
        return RussellEquation(p, n, a)


def _same(x: Parsed, y: Parsed) -> bool:
    d = x - y
    return not d.num


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _dense(F: FieldSpec, terms: dict[int, int], shift: int) -> DensePoly:
    if not terms:
        return DensePoly.from_codes(F, [])
    top = max(terms) + shift
    codes = [0] * (top + 1)
    for e, x in terms.items():
        codes[e + shift] = x
    return DensePoly.from_codes(F, codes)


def _is_p_power(p: int, e: int) -> bool:
    while e > 1 and e % p == 0:
        e //= p
    return e == 1


def _plog(p: int, e: int) -> int:
    j = 0
    while e > 1:
        e //= p
        j += 1
    return j


# --- parser -------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if mt is None or mt.end() == pos:
                break
            if mt.group(1) is not None:
                self.toks.append(("int", mt.group(1), mt.start(1)))
            elif mt.group(2) is not None:
                self.toks.append(("name", mt.group(2), mt.start(2)))
            elif mt.group(3) is not None:
                if mt.group(3).strip():
                    self.toks.append(("op", mt.group(3), mt.start(3)))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value:
            raise ExprSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, self.text, tok[2])

    def const(self, code: int) -> Parsed:
        F = self.field
        return Parsed(F, _sp_const(F, code), _sp_const(F, 1))

    def parse(self) -> Parsed:
        if not self.toks:
            raise self.error("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> Parsed:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Parsed:
        out = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if not rhs.num:
                    raise self.error("division by zero")
                out = out * rhs.inverse()
        return out

    def unary(self) -> Parsed:
        if self.peek()[1] == "-":
            self.take()
            return self.const(0) - self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Parsed:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            e = self.exponent()
            if e < 0 and not base.num:
                raise self.error("zero to a negative power")
            base = base**e
        return base

    def exponent(self) -> int:
        paren = self.peek()[1] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise ExprSyntaxError("exponent must be an integer", self.text, tok[2])
        if paren:
            self.expect(")")
        return sign * int(tok[1])

    def atom(self) -> Parsed:
        tok = self.take()
        kind, val, pos = tok
        F = self.field
        if kind == "int":
            return self.const(int(val) % F.p)
        if kind == "name":
            if val == "O":
                self.expect("(")
                v = self.take()
                if v[1] != "t":
                    raise ExprSyntaxError("O(...) takes a power of t", self.text, v[2])
                N = 1
                if self.peek()[1] == "^":
                    self.take()
                    N = self.exponent()
                self.expect(")")
                return Parsed(F, {}, _sp_const(F, 1), N)
            if val == "w":
                if F.e == 1:
                    raise UnknownVariable(f"w is not defined over the prime field {F.name}", self.text, pos)
                return self.const(F.gen.code)
            if val not in _IDX:
                raise UnknownVariable(f"unknown variable {val!r}", self.text, pos)
            k = [0] * len(VARS)
            k[_IDX[val]] = 1
            return Parsed(F, {tuple(k): 1}, _sp_const(F, 1))
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", self.text, pos)
        raise ExprSyntaxError(f"unexpected {val!r}", self.text, pos)


def parse(text: str, field: FieldSpec) -> Parsed:
    return _Parser(text, field).parse()


def parse_expression(text: str, field: FieldSpec, prec: int | None = None) -> Any:
    """Parse and convert to the most specific type the variables allow."""
    x = parse(text, field)
    used = x.variables()
    if used & {"u", "v"}:
        return x.to_russell(prec=prec)
    if used and used <= {"t0", "t1"}:
        return x.to_binary_form()
    if used <= {"t"}:
        negative = any(k[_IDX["t"]] < 0 for k in x.num)
        if x.prec is not None or (negative and len(x.den) == 1):
            return x.to_laurent(prec)
        if not used:
            return x.to_element()
        return x.to_ratfunc()
    if used <= {"s", "t"}:
        return x.to_bivar()
    raise ValueError(f"cannot mix variables {', '.join(sorted(used))}")


_SHORT = re.compile(r"\s*p\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s+a\s*=\s*\[(.*)\]\s*$", re.S)


def parse_russell(text: str, field: FieldSpec | None = None, coeffs: str = "auto",
                  prec: int | None = None) -> RussellEquation:
    """Either a full equation 'u^3+v+t*v^3' or the short form 'p=3 n=1 a=[t]'."""
    m = _SHORT.match(text)
    if m is None:
        if field is None:
            raise ValueError("an equation without p=... needs a field")
        return parse(text, field).to_russell(coeffs, prec)
    p, n = int(m.group(1)), int(m.group(2))
    F = field if field is not None else GF(p)
    if F.p != p:
        raise ValueError(f"p={p} does not match the field {F.name}")
    items = _split_top(m.group(3))
    if not items:
        raise ValueError("a=[...] needs at least one coefficient")
    terms = ["u" if n == 0 else f"u^{p**n}", "v"]
    terms += [f"({c})*v^{p**i}" for i, c in enumerate(items, start=1)]
    R = parse(" + ".join(terms), F).to_russell(coeffs, prec)
    if R.m != len(items):
        raise ValueError("the last coefficient a_m must be nonzero")
    return RussellEquation(p, n, R.a)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    return parts


def parse_field(text: str) -> FieldSpec:
    """'F9', 'F4:w^2+w+1', 'GF(8)' or a bare prime power."""
    m = re.fullmatch(r"\s*(?:F|GF\(?)?\s*(\d+)\)?\s*(?::\s*(.+))?", text)
    if not m:
        raise ValueError(f"cannot read field {text!r}")
    q = int(m.group(1))
    p, e = _prime_power(q)
    if m.group(2) is None:
        return GF(p, e)
    modulus = _parse_modulus(m.group(2), p, e)
    return GF(p, e, modulus)


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ValueError("field size must be a prime power")
    return p, e


def _parse_modulus(text: str, p: int, e: int) -> tuple[int, ...]:
    # read the modulus as a polynomial in w over F_p, using t as a stand-in variable
    x = parse(text.replace("w", "t"), GF(p))
    F = x.to_ratfunc()
    if not F.den.is_one():
        raise ValueError("modulus must be a polynomial")
    c = F.num.c
    if len(c) != e + 1:
        raise ValueError(f"modulus must have degree {e}")
    if c[-1] != 1:
        raise ValueError("modulus must be monic")
    return tuple(c)


def format_value(x: Any) -> str:
    if isinstance(x, (LaurentSeries, RatFunc)):
        return x.to_str("t")
    if hasattr(x, "to_str"):
        return x.to_str()
    return str(x)
