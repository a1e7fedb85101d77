"""Torsor classes of one-dimensional forms of G_a over K = k((t)).

A torsor of Phi(u, v) = u^(p^n) + v + a_1 v^p + ... + a_m v^(p^m) is given by
Phi(u, v) + f = 0 and its class is f modulo Phi(K + K).  For a = w t^k with k
in the supported ranges, :func:`reduce` rewrites f to the unique representative
supported on the terminal exponents

    e > k/(p^m - 1),   p^n does not divide e,   p^m does not divide e + k

(exponents written as t^(-e)).  Three kinds of moves subtract elements of
Phi(K + K); each strictly lowers the depth of the deepest non-terminal term,
and the trace records the measure before and after every move.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Sequence

from .field_core.gf import FieldElement, FieldSpec, GF
from .field_core.laurent import DEFAULT_PREC, LaurentSeries, PrecisionError, hensel_solve, lift_series
from .field_core.poly import DensePoly
from .field_core.tower import FieldTower

__all__ = [
    "LocalRussell", "TorsorClass", "NormalForm", "Move", "ReductionTrace", "UnsupportedShape",
    "ShapeDefect", "phi_image", "reduce", "is_trivial", "replay", "lang_shape", "random_class",
]


class UnsupportedShape(ValueError):
    pass


class ShapeDefect(ArithmeticError):
    """A reduction ended outside the terminal exponent set."""


# supported (p, n, m) -> allowed k, for a = w t^k with no middle terms
_UNIQUE = {
    (3, 1, 1): (1, 2, 4, 5),
    (2, 1, 2): (1, 3, 5),
    (2, 2, 1): (1, 3),
}


@dataclass(frozen=True)
class LocalRussell:
    """u^(p^n) + v + a_1 v^p + ... + a_m v^(p^m) over k((t)) with v(a_i) >= 0."""

    p: int
    n: int
    a: tuple                 # LaurentSeries a_1..a_m (exact)
    k: int | None = None     # set when a = w t^k is a monomial with no middle terms
    unit: int = 1            # the constant w, as a field code

    @classmethod
    def monomial(cls, p: int, n: int, m: int, k: int, field: FieldSpec | None = None,
                 unit: int = 1) -> "LocalRussell":
        F = field or GF(p)
        if F.p != p:
            raise ValueError("field characteristic does not match p")
        if k < 0:
            raise ValueError("integral model needs k >= 0")
        if not unit:
            raise ValueError("unit must be nonzero")
        zero = LaurentSeries.zero(F)
        a = tuple([zero] * (m - 1) + [LaurentSeries.monomial(F, k, FieldElement(F, unit))])
        return cls(p, n, a, k, unit)

    @classmethod
    def general(cls, p: int, n: int, a: Sequence[LaurentSeries]) -> "LocalRussell":
        a = tuple(a)
        if not a or not a[-1]:
            raise ValueError("a_m must be nonzero")
        for x in a:
            if x.c and x.start < 0:
                raise ValueError("integral model needs v(a_i) >= 0")
        F = a[-1].field
        mids = [x for x in a[:-1] if x]
        last = a[-1]
        if not mids and last.is_exact() and len(last.c) == 1:
            return cls(p, n, a, last.start, last.c[0])
        return cls(p, n, a, None)

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def field(self) -> FieldSpec:
        return self.a[-1].field

    def is_monomial(self) -> bool:
        return self.k is not None

    def is_quasi_rational(self) -> bool:
        return (self.p, self.n, self.m) == (2, 1, 1) and self.is_monomial() and self.k % 2 == 1

    def supported_unique(self) -> bool:
        return self.is_monomial() and self.k in _UNIQUE.get((self.p, self.n, self.m), ())

    def reducible(self) -> bool:
        return self.supported_unique() or self.is_quasi_rational()

    def shift_step(self) -> int:
        """k changes in steps of p^n (p^m - 1) under (u, v) -> (t^g u, t^(p^n g) v)."""
        return self.p**self.n * (self.p**self.m - 1)

    def terminal(self, e: int) -> bool:
        """Is t^(-e) a terminal exponent (e > 0)?"""
        P, Q, k = self.p**self.n, self.p**self.m, self.k
        return e * (Q - 1) > k and e % P != 0 and (e + k) % Q != 0

    def lift_to(self, tower: FieldTower) -> "LocalRussell":
        a = tuple(lift_series(tower, x) for x in self.a)
        unit = tower.lift(self.unit, self.field) if self.is_monomial() else self.unit
        return LocalRussell(self.p, self.n, a, self.k, unit)

    def describe(self) -> str:
        parts = [f"u^{self.p**self.n}", "v"]
        for i, x in enumerate(self.a, start=1):
            if x:
                parts.append(f"({x.to_str()})*v^{self.p**i}")
        return " + ".join(parts)


def lang_shape(model: LocalRussell) -> tuple[int, int]:
    """(offset, step) of the terminal exponent set {offset + step*s}."""
    if not model.supported_unique():
        raise UnsupportedShape("no terminal shape for this model")
    step = model.p ** max(model.n, model.m)
    e = 1
    while not model.terminal(e):
        e += 1
    return e, step


def phi_image(model: LocalRussell, u: LaurentSeries, v: LaurentSeries) -> LaurentSeries:
    """u^(p^n) + v + sum a_i v^(p^i), with the precision of the inputs tracked."""
    if u.field is not v.field or model.field is not u.field:
        raise ValueError("phi_image arguments live in different fields")
    out = u.frobenius(model.n) + v
    for i, a in enumerate(model.a, start=1):
        if a:
            out = out + a * v.frobenius(i)
    return out


@dataclass
class TorsorClass:
    model: LocalRussell
    f: LaurentSeries

    @property
    def precision(self) -> int | None:
        return self.f.prec


@dataclass
class Move:
    kind: str                       # u-move | v-move | v-self | hensel | field-extension | normalize
    exponent: int | None            # exponent acted on (t^exponent)
    equation: str
    u: LaurentSeries | None = None
    v: LaurentSeries | None = None
    measure_before: tuple | None = None
    measure_after: tuple | None = None

    def as_dict(self, fmt=None) -> dict:
        fmt = fmt or (lambda s: s.to_str())
        d: dict[str, Any] = {"kind": self.kind, "equation": self.equation}
        if self.exponent is not None:
            d["exponent"] = self.exponent
        if self.u is not None and self.u.c:
            d["u"] = fmt(self.u)
        if self.v is not None and self.v.c:
            d["v"] = fmt(self.v)
        if self.measure_before is not None:
            d["measure_before"] = list(self.measure_before)
            d["measure_after"] = list(self.measure_after)
        return d


@dataclass
class ReductionTrace:
    moves: list[Move] = field(default_factory=list)
    shift: int = 0                  # f was multiplied by t^(-shift) by k-normalization

    def terminates(self) -> bool:
        """Every rewriting move strictly lowers the lexicographic measure."""
        ms = [mv for mv in self.moves if mv.measure_before is not None]
        return all(mv.measure_after < mv.measure_before for mv in ms)

    def __len__(self):
        return len(self.moves)


@dataclass
class NormalForm:
    reduced: LaurentSeries          # exact polynomial in t^-1 over the working top field
    trivial: bool
    model: LocalRussell
    precision: int
    trace: ReductionTrace
    tower: FieldTower
    start: LaurentSeries            # f after k-normalization, over the top field
    lang_k: int | None = None
    lang_n: int | None = None

    def base_coefficients(self) -> dict[int, int]:
        """Coefficients of the reduced form descended to the base field (codes)."""
        out = {}
        for e, x in self.reduced.terms():
            y = self.tower.descend(x, self.tower.base)
            if y is None:
                raise ArithmeticError("normal form coefficient outside the base field")
            out[e] = y
        return out

    def base_series(self) -> LaurentSeries:
        return LaurentSeries.from_dict(self.tower.base, self.base_coefficients())

    def support(self) -> list[int]:
        return self.reduced.support()

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (self.tower.base is other.tower.base
                and self.base_coefficients() == other.base_coefficients())


def _measure(model: LocalRussell, f: LaurentSeries) -> tuple[int, int]:
    depths = [-e for e, _ in f.terms() if e < 0 and not model.terminal(-e)]
    if not depths:
        return (0, 0)
    top = max(depths)
    return (top, depths.count(top))


def _mono(F: FieldSpec, exp: int, code: int) -> LaurentSeries:
    return LaurentSeries(F, exp, (code,), None)


def _normalize_k(model: LocalRussell, f: LaurentSeries) -> tuple[LocalRussell, LaurentSeries, int]:
    """Shift k into the supported range by (u, v) -> (t^g u, t^(p^n g) v)."""
    if model.reducible():
        return model, f, 0
    allowed = _UNIQUE.get((model.p, model.n, model.m))
    if not model.is_monomial() or not allowed:
        raise UnsupportedShape(f"no canonical reducer for {model.describe()}")
    step = model.shift_step()
    for k0 in allowed:
        if (model.k - k0) % step == 0:
            gamma = model.p**model.n * ((k0 - model.k) // step)
            new = LocalRussell.monomial(model.p, model.n, model.m, k0, model.field, model.unit)
            return new, f.shift(-gamma), gamma
    raise UnsupportedShape(f"k = {model.k} is not equivalent to a supported exponent")


def reduce(T: TorsorClass, prec: int | None = None, tower: FieldTower | None = None) -> NormalForm:
    """Canonical representative of the class of f, with a replayable trace."""
    model, f, gamma = _normalize_k(T.model, T.f)
    N = f.prec if f.prec is not None else (prec if prec is not None else DEFAULT_PREC)
    if f.prec is None:
        f = f.with_prec(N)
    elif prec is not None and prec < N:
        f = f.truncate(prec)
        N = prec
    P, Q = model.p**model.n, model.p**model.m
    need = 2 * model.p ** max(model.n, model.m)
    if N < need:
        raise PrecisionError(f"precision O(t^{N}) is too close to the normal form window; "
                             f"need at least O(t^{need})")
    if tower is None:
        tower = FieldTower(f.field)
    start = f
    f = lift_series(tower, f)
    seen = len(tower.events)
    trace = ReductionTrace(shift=gamma)
    if gamma:
        trace.moves.append(Move("normalize", None, f"k -> {model.k}, f -> f*t^{-gamma}"))
    work = model.lift_to(tower)
    F = tower.top

    def sync_field():
        nonlocal F, work, f, seen
        if tower.top is not F:
            for ev in tower.events[seen:]:
                trace.moves.append(Move("field-extension", None,
                                        f"{ev.from_field} -> {ev.to_field}: {ev.detail}"))
            seen = len(tower.events)
            emb = tower.to_top[tower.level_of(F)]
            f = f.map_coeffs(emb, tower.top)
            F = tower.top
            work = model.lift_to(tower)

    while True:
        before = _measure(work, f)
        if before == (0, 0):
            break
        e = before[0]
        d = f.coeff(-e)
        k, w = work.k, work.unit
        u = v = None
        if e % P == 0:
            r = F.root(d, model.n)
            u = _mono(F, -(e // P), r)
            kind, eq = "u-move", f"u^{P} = ({FieldElement(F, d)})*t^{-e}"
        elif e * (Q - 1) < k:
            v = _mono(F, -e, d)
            kind, eq = "v-move", f"v = ({FieldElement(F, d)})*t^{-e}, companion at t^{k - Q * e}"
        elif e * (Q - 1) == k:
            # c + w c^Q = d
            codes = [0] * (Q + 1)
            codes[1] = 1
            codes[Q] = w
            codes[0] = F.neg(d)
            root = tower.ensure_root(DensePoly.from_codes(F, codes), f"c + w*c^{Q} = d at t^{-e}")
            sync_field()
            d = f.coeff(-e)
            v = _mono(F, -e, root.code)
            kind, eq = "v-self", f"c + ({FieldElement(F, work.unit)})*c^{Q} = {FieldElement(F, d)}"
        elif (e + k) % Q == 0:
            l = (e + k) // Q
            c = F.root(F.div(d, w), model.m)
            v = _mono(F, -l, c)
            kind, eq = "v-move", f"v = ({FieldElement(F, c)})*t^{-l}, companion cancels t^{-e}"
        else:
            raise AssertionError("deepest non-terminal exponent admits no move")
        zero = LaurentSeries.zero(F)
        u = u if u is not None else zero
        v = v if v is not None else zero
        f = f - phi_image(work, u, v)
        after = _measure(work, f)
        trace.moves.append(Move(kind, -e, eq, u, v, before, after))
        if not after < before:
            raise AssertionError("reduction measure did not decrease")

    neg, nonneg = f.split(0)
    if nonneg.c:
        vh = hensel_solve(list(work.a), nonneg, N, tower)
        sync_field()
        vh = lift_series(tower, vh)
        f = lift_series(tower, f) - phi_image(work, LaurentSeries.zero(F, N), vh)
        trace.moves.append(Move("hensel", 0, "v + a v^Q = nonnegative part", None, vh))
        neg, nonneg = f.split(0)
        if nonneg.c:
            raise ArithmeticError("Hensel step left a nonnegative remainder")

    # lift stored moves to the final top field so the trace replays there
    for mv in trace.moves:
        if mv.u is not None:
            mv.u = lift_series(tower, mv.u)
        if mv.v is not None:
            mv.v = lift_series(tower, mv.v)
    start = lift_series(tower, start)
    reduced = lift_series(tower, neg)
    nf = NormalForm(reduced, not reduced.c, model, N, trace, tower, start)
    if model.supported_unique() and reduced.c:
        offset, step = lang_shape(model)
        sup = [-e for e in reduced.support()]
        if any(e < offset or (e - offset) % step for e in sup):
            raise ShapeDefect(f"reduced support {sorted(sup)} escapes {{{offset} + {step}s}}")
        nf.lang_k = offset
        nf.lang_n = (max(sup) - offset) // step
    return nf


def replay(nf: NormalForm) -> LaurentSeries:
    """start - sum Phi(u_i, v_i) over the recorded moves."""
    work = nf.model.lift_to(nf.tower)
    F = nf.tower.top
    g = nf.start
    zero = LaurentSeries.zero(F)
    for mv in nf.trace.moves:
        if mv.u is None and mv.v is None:
            continue
        u = mv.u if mv.u is not None else zero
        v = mv.v if mv.v is not None else zero
        g = g - phi_image(work, u, v)
    return g


def is_trivial(T: TorsorClass, search_bound: int = 6, prec: int | None = None) -> bool | str:
    """True / False for reducible models; True or "unknown" from a bounded search otherwise."""
    model = T.model
    try:
        nf = reduce(T, prec)
        return nf.trivial
    except UnsupportedShape:
        pass
    # absorb the integral part, then look for v with exponents in [-B, -1] over the base field
    F = T.f.field
    P = model.p**model.n
    N = T.f.prec if T.f.prec is not None else (prec or DEFAULT_PREC)
    neg, _ = T.f.split(0)
    zero = LaurentSeries.zero(F)
    if _only_pth_powers(neg, P):
        return True
    B = search_bound
    while F.q**B > 1 << 16 and B > 1:
        B -= 1
    for codes in product(range(F.q), repeat=B):
        if not any(codes):
            continue
        v = LaurentSeries.from_dict(F, {-(j + 1): c for j, c in enumerate(codes) if c})
        g, _ = (neg - phi_image(model, zero, v)).split(0)
        if _only_pth_powers(g, P):
            return True
    return "unknown"


def _only_pth_powers(g: LaurentSeries, P: int) -> bool:
    return all(e % P == 0 for e in g.support())


def random_class(model: LocalRussell, depth: int, prec: int, rng: _random.Random) -> TorsorClass:
    F = model.field
    terms = {e: rng.randrange(F.q) for e in range(-depth, prec)}
    return TorsorClass(model, LaurentSeries.from_dict(F, terms, prec))
