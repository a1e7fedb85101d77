"""p-basis decompositions and the inseparability tests built on them.

Over F = F_q(t) every f has a unique expansion f = sum_j t^j g_j^P (0 <= j < P,
P = p^k), and over F_q(s, t) the same holds with the monomials s^i t^j.  The
g_j are the *components* of f.  Whether f is a P-th power, the degree of a
purely inseparable extension F(a_1^{1/P}, ...) and membership in F^2 + F^2 a
all reduce to linear algebra on component vectors.
"""

from __future__ import annotations

from typing import Sequence, Union

from .bivar import BivarPoly, BivarRatFunc
from .laurent import LaurentSeries
from .poly import DensePoly
from .ratfunc import RatFunc

__all__ = ["components", "is_pth_power", "radical_degree", "membership_F2_plus_F2a", "basis_indices"]

Elem = Union[RatFunc, BivarRatFunc, LaurentSeries]


def basis_indices(f: Elem, k: int = 1) -> list:
    P = f.field.p**k
    if isinstance(f, BivarRatFunc):
        return [(i, j) for i in range(P) for j in range(P)]
    return list(range(P))


def _poly_components(H: DensePoly, P: int, k: int) -> dict[int, DensePoly]:
    F = H.field
    out = {}
    for j in range(P):
        codes = [F.root(x, k) for x in H.c[j::P]]
        g = DensePoly.from_codes(F, codes)
        if g:
            out[j] = g
    return out


def _bivar_components(H: BivarPoly, P: int, k: int) -> dict[tuple[int, int], BivarPoly]:
    F = H.field
    groups: dict[tuple[int, int], dict] = {}
    for (i, j), x in H.terms.items():
        groups.setdefault((i % P, j % P), {})[(i // P, j // P)] = F.root(x, k)
    return {key: BivarPoly(F, terms) for key, terms in groups.items()}


def components(f: Elem, k: int = 1) -> dict:
    """Nonzero components of f with respect to the p^k-basis, keyed by basis index."""
    F = f.field
    P = F.p**k
    if isinstance(f, LaurentSeries):
        out = {}
        for j in range(P):
            g = f.component(j, k)
            if g.c:
                out[j] = g
        return out
    if isinstance(f, RatFunc):
        D = f.den
        H = f.num * D ** (P - 1) if not D.is_one() else f.num
        return {j: RatFunc(g, D) for j, g in _poly_components(H, P, k).items()}
    if isinstance(f, BivarRatFunc):
        D = f.den
        H = f.num * D ** (P - 1) if not D.is_one() else f.num
        return {key: BivarRatFunc(g, D) for key, g in _bivar_components(H, P, k).items()}
    raise TypeError(f"no p-basis for {type(f).__name__}")


def _zero_index(f: Elem):
    return (0, 0) if isinstance(f, BivarRatFunc) else 0


def is_pth_power(f: Elem, k: int = 1) -> Elem | None:
    """g with g^(p^k) = f, or None if f is not a p^k-th power."""
    comps = components(f, k)
    z = _zero_index(f)
    if any(key != z for key in comps):
        return None
    if z in comps:
        return comps[z]
    if isinstance(f, LaurentSeries):
        return f.component(0, k)
    return type(f).constant(f.field, 0)


class _Echelon:
    """Incremental row echelon form over a field given by Python operators."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[tuple[int, list]] = []   # (pivot column, row with pivot 1)

    def reduce(self, v: list) -> list:
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, row)]
        return v

    def add(self, v: list) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv if x else x for x in v]
        # keep earlier rows reduced against the new pivot
        new_rows = []
        for p, row in self.rows:
            c = row[piv]
            if c:
                row = [x - c * y if y else x for x, y in zip(row, v)]
            new_rows.append((p, row))
        new_rows.append((piv, v))
        self.rows = new_rows
        return True

    def __len__(self):
        return len(self.rows)


def _vector(f: Elem, k: int, idx: list, zero) -> list:
    comps = components(f, k)
    return [comps.get(i, zero) for i in idx]


def _root_depth(a: Elem, k: int) -> int:
    """Largest s <= k with a a p^s-th power."""
    s = 0
    while s < k:
        r = is_pth_power(a)
        if r is None:
            break
        a, s = r, s + 1
    return s


def radical_degree(elems: Sequence[Elem], k: int = 1, *, one: Elem | None = None) -> int:
    """[F(a_1^{1/p^k}, ..., a_m^{1/p^k}) : F].

    Equal to dim over E = F^{p^k} of the algebra E[a_1, ..., a_m]; E-linear
    independence of elements is F-linear independence of their component
    vectors, so the span is grown by multiplication until it is closed.
    """
    elems = [a for a in elems if a]
    if not elems:
        return 1
    sample = elems[0]
    F = sample.field
    if one is None and not isinstance(sample, BivarRatFunc):
        # one variable: the fields between F and F^{1/P} form a chain
        return F.p ** (k - min(_root_depth(a, k) for a in elems))
    if one is None:
        one = type(sample).constant(F, 1) if not isinstance(sample, LaurentSeries) \
            else LaurentSeries.monomial(F, 0, 1)
    zero = one - one
    idx = basis_indices(sample, k)
    ech = _Echelon(len(idx))
    span = [one]
    ech.add(_vector(one, k, idx, zero))
    grew = True
    while grew:
        grew = False
        for a in elems:
            for w in list(span):
                x = w * a
                if ech.add(_vector(x, k, idx, zero)):
                    span.append(x)
                    grew = True
    return len(ech)


def membership_F2_plus_F2a(b: Elem, a: Elem) -> tuple[Elem, Elem] | None:
    """(alpha, beta) with b = a*alpha^2 + beta^2, or None if b is not in F^2 + F^2*a.

    Characteristic 2; a must not be a square.
    """
    F = a.field
    if F.p != 2:
        raise ValueError("membership_F2_plus_F2a needs characteristic 2")
    A = components(a)
    B = components(b)
    z = _zero_index(a)
    zero = a - a
    keys = [e for e in A if e != z]
    if not keys:
        raise ValueError("a is a square")
    e0 = keys[0]
    alpha = B.get(e0, zero) / A[e0]
    for e in set(A) | set(B):
        if e == z:
            continue
        if B.get(e, zero) != A.get(e, zero) * alpha:
            return None
    beta = B.get(z, zero) - A.get(z, zero) * alpha
    return alpha, beta
