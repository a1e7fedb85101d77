"""Seeded property checks run by verify-paper.

Each check returns a JSON-ready dict with at least ``count`` and
``mismatches``; the corpus states the expected values.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Callable

from ..field_core.gf import GF
from ..field_core.laurent import LaurentSeries
from ..field_core.poly import DensePoly
from ..field_core.ratfunc import RatFunc
from ..grouplaw import QRGroup
from ..hassewitt import iterate_oracle, random_matrix, stable_rank_certified
from ..ppoly import RussellEquation, compactify, dehomogenize
from ..torsor_local import LocalRussell, TorsorClass, phi_image, random_class, reduce

__all__ = ["CHECKS", "run_check", "image_member_bounded", "random_ratfunc", "group_sample"]


def _stable_rank_oracle(count: int, seed: int) -> dict:
    rng = random.Random(seed)
    fields = [GF(3), GF(2, 2), GF(3, 2)]
    bad = 0
    for i in range(count):
        F = fields[i % len(fields)]
        A = random_matrix(F, rng.randint(1, 8), 1, rng, rng.random())
        r, stable = stable_rank_certified(A)
        if r != iterate_oracle(A) or not stable:
            bad += 1
    return {"count": count, "mismatches": bad}


def _genus0_torsors(count: int, seed: int, prec: int = 40) -> dict:
    rng = random.Random(seed)
    model = LocalRussell.monomial(2, 1, 1, 1)
    bad = 0
    for _ in range(count):
        T = random_class(model, rng.randint(1, 12), prec, rng)
        if reduce(T).reduced:
            bad += 1
    return {"count": count, "mismatches": bad}


# depth sets {offset + 4s} for the p = 2 unique shapes, read off the local normal forms
_P2_SHAPES = {
    (1, 2, 1): 1, (1, 2, 3): 3, (1, 2, 5): 5,
    (2, 1, 1): 2, (2, 1, 3): 6,
}


def _lang_shapes(count: int, seed: int) -> dict:
    rng = random.Random(seed)
    cases = [((3, 1, 1, k), k, 3) for k in (1, 2, 4, 5)]
    cases += [((2, n, m, k), off, 4) for (n, m, k), off in _P2_SHAPES.items()]
    bad = 0
    total = 0
    for (p, n, m, k), off, step in cases:
        model = LocalRussell.monomial(p, n, m, k)
        for _ in range(count):
            T = random_class(model, rng.randint(1, 15), 2 * p ** max(n, m) + 4, rng)
            total += 1
            if any((-e - off) % step or -e < off for e in reduce(T).support()):
                bad += 1
    # the explicit p = 3, k = 1 example: t^-2 reduces to 2 t^-1, and the difference is in the image
    F = GF(3)
    model = LocalRussell.monomial(3, 1, 1, 1)
    f = LaurentSeries.monomial(F, -2, 1)
    nf = reduce(TorsorClass(model, f.with_prec(12)))
    expected = LaurentSeries.from_dict(F, {-1: 2})
    example_ok = nf.base_series() == expected and image_member_bounded(model, f - expected, 2)
    return {"count": total, "mismatches": bad, "example": example_ok}


def image_member_bounded(model: LocalRussell, g: LaurentSeries, bound: int) -> bool:
    """Is the polar part of g equal to that of phi(u, v) for u, v supported on [-bound, -1]?"""
    F = model.field
    target, _ = g.split(0)
    for cu in product(range(F.q), repeat=bound):
        u = LaurentSeries.from_dict(F, {-(j + 1): c for j, c in enumerate(cu) if c})
        for cv in product(range(F.q), repeat=bound):
            v = LaurentSeries.from_dict(F, {-(j + 1): c for j, c in enumerate(cv) if c})
            polar, _ = phi_image(model, u, v).split(0)
            if polar == target:
                return True
    return False


_COSET_SHAPES = [(3, 1, 1, k) for k in (1, 2, 4, 5)] + [(2, 1, 2, k) for k in (1, 3, 5)] \
    + [(2, 2, 1, k) for k in (1, 3)] + [(2, 1, 1, 1)]


def _coset_invariance(count: int, seed: int) -> dict:
    rng = random.Random(seed)
    bad = 0
    total = 0
    for p, n, m, k in _COSET_SHAPES:
        model = LocalRussell.monomial(p, n, m, k)
        F = model.field
        prec = 2 * p ** max(n, m) + 4
        for _ in range(count):
            T = random_class(model, rng.randint(1, 10), prec, rng)
            u = _random_series(F, rng, prec)
            v = _random_series(F, rng, prec)
            shifted = TorsorClass(model, T.f + phi_image(model, u, v))
            total += 1
            if reduce(T) != reduce(shifted):
                bad += 1
    return {"count": total, "mismatches": bad}


def _random_series(F, rng: random.Random, prec: int) -> LaurentSeries:
    lo = -rng.randint(0, 6)
    return LaurentSeries.from_dict(F, {e: rng.randrange(F.q) for e in range(lo, prec)}, prec)


def random_ratfunc(F, rng: random.Random, degree: int = 2) -> RatFunc:
    while True:
        num = DensePoly.from_codes(F, [rng.randrange(F.q) for _ in range(rng.randint(0, degree) + 1)])
        den = DensePoly.from_codes(F, [rng.randrange(F.q) for _ in range(rng.randint(0, degree) + 1)])
        if den:
            return RatFunc(num, den)


def group_sample(G: QRGroup, size: int, seed: int) -> list:
    """identity, infinity, 1, 1/a, then random parameters of small degree (distinct)."""
    rng = random.Random(seed)
    F = G.field
    pts = [G.identity(), G.infinity(), G.point(RatFunc.constant(F, 1)), G.point(G.a.inverse())]
    while len(pts) < size:
        P = G.point(random_ratfunc(F, rng))
        if not any(P.same(Q) for Q in pts):
            pts.append(P)
    return pts


def _group_axioms(size: int, seed: int) -> dict:
    F = GF(2, 3)
    G = QRGroup(RatFunc.t(F))
    pts = group_sample(G, size, seed)
    N = len(pts)
    table = [[G.add(pts[i], pts[j]) if j >= i else None for j in range(N)] for i in range(N)]
    for i in range(N):
        for j in range(i):
            table[i][j] = table[j][i]
    bad = 0
    e = G.identity()
    for i in range(N):
        if not table[i][i].is_identity():
            bad += 1
        if not G.add(pts[i], e).same(pts[i]):
            bad += 1
        for j in range(N):
            if not table[i][j].same(G.add_unreduced(pts[j], pts[i])):
                bad += 1
    for i, j, k in product(range(N), repeat=3):
        left = G.add_unreduced(table[i][j], pts[k])
        right = G.add_unreduced(pts[i], table[j][k])
        if not left.same(right):
            bad += 1
    return {"count": N**3, "mismatches": bad}


def _derivative_zero(f: RatFunc) -> bool:
    """Over F_q(t) a function is a p-th power iff its t-derivative vanishes."""
    return f.num.derivative() * f.den == f.num * f.den.derivative()


def _compactification(count: int, seed: int) -> dict:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        p = rng.choice([2, 3])
        F = GF(p)
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        a = []
        for i in range(m):
            x = random_ratfunc(F, rng)
            if rng.random() < 0.3:
                x = x ** p
            a.append(x)
        while not a[-1]:
            a[-1] = random_ratfunc(F, rng)
        R = RussellEquation(p, n, tuple(a))
        rep = compactify(R)
        ok = all(mo.weighted_degree(rep.weights) == p ** max(n, m) for mo in rep.monomials)
        ok = ok and dehomogenize(rep) == R.to_ppoly()
        ok = ok and rep.regular == (not _derivative_zero(a[-1]))
        if not ok:
            bad += 1
    return {"count": count, "mismatches": bad}


CHECKS: dict[str, Callable[..., dict]] = {
    "stable-rank-oracle": _stable_rank_oracle,
    "genus0-torsors": _genus0_torsors,
    "lang-shapes": _lang_shapes,
    "coset-invariance": _coset_invariance,
    "group-axioms": _group_axioms,
    "compactification": _compactification,
}


def run_check(name: str, **kwargs) -> dict:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; known: {', '.join(sorted(CHECKS))}")
    return CHECKS[name](**kwargs)
