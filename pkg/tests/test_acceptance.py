"""Acceptance criteria 1-10.

Each test prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line and then asserts.  Run directly with ``python tests/test_acceptance.py``
for the summary lines alone.
"""

import itertools
import random
import time

import pytest

from woundlab.field_core import GF, DensePoly, LaurentSeries, RatFunc
from woundlab.field_core.laurent import lift_series
from woundlab.grouplaw import QRGroup
from woundlab.hassewitt import BinaryForm, build_matrix, cohomology_report, stable_rank, stable_rank_certified
from woundlab.hassewitt import SemilinearMatrix
from woundlab.ppoly import RussellEquation, classify, compactify, dehomogenize, genus
from woundlab.torsor_local import LocalRussell, TorsorClass, phi_image, reduce
from woundlab.cli.expr import parse

from oracles import expand_oracle, image_search, is_pth_power_by_derivative, iterate_rank

RESULTS = {}


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        RESULTS[n] = ok
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail
    return emit


# --- helpers ---------------------------------------------------------------------------

def certificate_residue(nf):
    """start - Phi(sum u, sum v) over the recorded moves; equals the reduced form iff the trace is sound."""
    model = nf.model.lift_to(nf.tower)
    F = nf.tower.top
    U = V = LaurentSeries.zero(F)
    for mv in nf.trace.moves:
        if mv.u is not None:
            U = U + mv.u
        if mv.v is not None:
            V = V + mv.v
    return nf.start - phi_image(model, U, V)


def residue_ok(nf):
    g = certificate_residue(nf)
    neg, nonneg = g.split(0)
    return neg == nf.reduced and not nonneg.support()


def random_series(F, rng, depth, prec):
    return LaurentSeries.from_dict(F, {e: rng.randrange(F.q) for e in range(-depth, prec)}, prec)


def in_shape(support, offset, step):
    return all(-e >= offset and (-e - offset) % step == 0 for e in support)


# --- criteria --------------------------------------------------------------------------

def test_criterion_1_genus_table(report):
    table = {(3, 1, 1): 1, (2, 1, 2): 1, (2, 2, 1): 1, (2, 2, 2): 3, (2, 1, 1): 0}
    got = {k: genus(*k) for k in table}
    bad = {k: v for k, v in got.items() if v != table[k]}
    report(1, not bad, f"genus table {sorted(got.items())}" + (f"; mismatches {bad}" if bad else ""))


def test_criterion_2_classification(report):
    cases = [
        ("u^3+v+t*v^3", GF(3), ("QuasiElliptic", "2")),
        ("u^4+v+t*v^2", GF(2), ("QuasiElliptic", "1b")),
        ("u^2+v+t*v^2", GF(2), ("QuasiRational", None)),
        ("u^4+v+s*v^2+t^2*v^4", GF(2), ("QuasiElliptic", "1c")),
    ]
    got, bad = [], []
    for text, F, want in cases:
        c = classify(parse(text, F).to_russell())
        got.append(c.label())
        if (c.tag, c.case) != want:
            bad.append((text, c.label()))
    report(2, not bad, f"tags {got}" + (f"; mismatches {bad}" if bad else ""))


FERMAT = BinaryForm.from_terms(GF(3), 12, {2: 1, 10: 1})
SECOND_K3 = BinaryForm.from_terms(GF(3), 12, {2: 1, 5: 1, 8: 1, 10: 1})


def test_criterion_3_fermat_quartic(report):
    t0 = time.perf_counter()
    a = parse("t0^2*t1^2*(t0^8+t1^8)", GF(3)).to_binary_form()
    rep = cohomology_report(3, 1, 1, 2, a)
    elapsed = time.perf_counter() - t0
    A = build_matrix(3, 1, 1, 2, a)
    columns_ok = all(
        {j: A.entries[j - 1][i - 1] for j in range(1, 6) if A.entries[j - 1][i - 1]} == col
        for i, col in enumerate(expand_oracle(3, 1, 1, 2, a), start=1))
    r_oracle = iterate_rank(A.field, A.rows(), 1)
    ok = (a == FERMAT and rep.d == 5 and rep.r == 4 and r_oracle == 4 and columns_ok
          and rep.h1G_str() == "(Z/3Z)^4" and rep.h2 == 0 and elapsed < 1.0)
    report(3, ok, f"d={rep.d}, r={rep.r} (iteration oracle {r_oracle}), H^1(C,G)={rep.h1G_str()}, "
                  f"matrix columns match expansion: {columns_ok}, {elapsed * 1000:.0f} ms")


def test_criterion_4_second_k3(report):
    A = build_matrix(3, 1, 1, 2, SECOND_K3)
    r = stable_rank(A)
    r_oracle = iterate_rank(A.field, A.rows(), 1)
    report(4, r == 4 and r_oracle == 4, f"stable rank {r} (iteration oracle {r_oracle})")


def test_criterion_5_stable_rank_oracle(report):
    rng = random.Random(5)
    fields = [(GF(3), 1), (GF(2, 2), 1), (GF(3, 2), 1), (GF(3, 2), 2)]
    mismatches = unstable = 0
    for i in range(200):
        F, tw = fields[i % len(fields)]
        d = rng.randint(1, 8)
        density = rng.choice([0.15, 0.3, 0.5, 0.8])
        rows = [[rng.randrange(1, F.q) if rng.random() < density else 0 for _ in range(d)] for _ in range(d)]
        A = SemilinearMatrix.from_rows(F, rows, tw)
        r, certified = stable_rank_certified(A)
        if r != iterate_rank(F, rows, tw):
            mismatches += 1
        if not certified or iterate_rank(F, rows, tw, d) != iterate_rank(F, rows, tw, d + 1):
            unstable += 1
    report(5, mismatches == 0 and unstable == 0,
           f"200 matrices over F3/F4/F9, d<=8: {mismatches} product/iteration mismatches, "
           f"{unstable} rank(Pi_d) != rank(Pi_d+1)")


def test_criterion_6_genus0_torsors(report):
    rng = random.Random(6)
    F2 = GF(2)
    M = LocalRussell.monomial(2, 1, 1, 1)
    nontrivial = bad_certificate = 0
    for _ in range(100):
        f = random_series(F2, rng, rng.randint(1, 30), 40)
        nf = reduce(TorsorClass(M, f))
        if not nf.trivial:
            nontrivial += 1
        if not residue_ok(nf):
            bad_certificate += 1
    report(6, nontrivial == 0 and bad_certificate == 0,
           f"100 classes for u^2+v+t*v^2 at O(t^40): {nontrivial} nonzero, "
           f"{bad_certificate} with f != Phi(U, V)")


def test_criterion_7_lang_shapes(report):
    rng = random.Random(7)
    F3 = GF(3)
    shapes = [(3, 1, 1, k, k, 3) for k in (1, 2, 4, 5)]
    shapes += [(2, 1, 2, k, k, 4) for k in (1, 3, 5)]          # cases (1), (2), (3)
    shapes += [(2, 2, 1, 1, 2, 4), (2, 2, 1, 3, 6, 4)]         # cases (7), (9)
    escapes = bad_certificate = 0
    for p, n, m, k, offset, step in shapes:
        M = LocalRussell.monomial(p, n, m, k)
        for _ in range(50):
            nf = reduce(TorsorClass(M, random_series(M.field, rng, rng.randint(1, 20), 48)))
            if not in_shape(nf.support(), offset, step):
                escapes += 1
            if not residue_ok(nf):
                bad_certificate += 1
    M = LocalRussell.monomial(3, 1, 1, 1)
    t2 = LaurentSeries.from_dict(F3, {-2: 1}, 40)
    nf = reduce(TorsorClass(M, t2))
    example = nf.base_coefficients() == {-1: 2}
    brute = (image_search(M, LaurentSeries.from_dict(F3, {-2: 1, -1: -2 % 3}), 2) is not None
             and image_search(M, LaurentSeries.from_dict(F3, {-2: 1}), 2) is None)
    ok = escapes == 0 and bad_certificate == 0 and example and brute
    report(7, ok, f"{50 * len(shapes)} classes over {len(shapes)} shapes: {escapes} escape the terminal set, "
                  f"{bad_certificate} unsound traces; reduce(t^-2) = {nf.base_series().to_str()} "
                  f"(brute force agrees: {brute})")


def test_criterion_8_coset_invariance(report):
    rng = random.Random(8)
    shapes = [(3, 1, 1, k) for k in (1, 2, 4, 5)] + [(2, 1, 2, k) for k in (1, 3, 5)] + [(2, 2, 1, 1), (2, 2, 1, 3)]
    differ = 0
    for p, n, m, k in shapes:
        M = LocalRussell.monomial(p, n, m, k)
        F = M.field
        for _ in range(100):
            f = random_series(F, rng, rng.randint(1, 12), 40)
            u = random_series(F, rng, rng.randint(0, 6), 40)
            v = random_series(F, rng, rng.randint(0, 6), 40)
            if reduce(TorsorClass(M, f)) != reduce(TorsorClass(M, f + phi_image(M, u, v))):
                differ += 1
    report(8, differ == 0, f"100 (f, u, v) per shape over {len(shapes)} shapes: {differ} normal forms differ")


def test_criterion_9_group_axioms(report):
    F8 = GF(2, 3)
    t = RatFunc.t(F8)
    G = QRGroup(t)
    rng = random.Random(9)
    pts = [G.identity(), G.infinity(), G.point(1)]
    seen = {str(P) for P in pts}
    while len(pts) < 30:
        num = DensePoly.from_codes(F8, [rng.randrange(8) for _ in range(3)])
        den = DensePoly.from_codes(F8, [rng.randrange(8) for _ in range(2)] + [1])
        P = G.point(RatFunc(num, den))
        if str(P) not in seen:
            seen.add(str(P))
            pts.append(P)
    n = len(pts)
    S = {(i, j): G.add(pts[i], pts[j]) for i in range(n) for j in range(n)}
    e = G.identity()
    comm = sum(S[i, j] != S[j, i] for i in range(n) for j in range(n))
    ident = sum(S[i, 0] != pts[i] for i in range(n))
    inverse = sum(S[i, i] != e for i in range(n))
    assoc = 0
    for i, j, k in itertools.product(range(n), repeat=3):
        # projective comparison of (x + y) + z and x + (y + z)
        if not G.add_unreduced(S[i, j], pts[k]).same(G.add_unreduced(pts[i], S[j, k])):
            assoc += 1
    ok = pts[0] == e and not (comm or ident or inverse or assoc)
    report(9, ok, f"{n} parameters over F8(t), a=t: {n**3} triples, failures assoc={assoc} comm={comm} "
                  f"identity={ident} self-inverse={inverse}")


def test_criterion_10_compactification(report):
    rng = random.Random(10)
    nonuniform = wrong_degree = not_recovered = regular_wrong = 0
    for _ in range(20):
        p = rng.choice([2, 3])
        F = GF(p)
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        a = []
        for _ in range(m):
            num = DensePoly.from_codes(F, [rng.randrange(p) for _ in range(3)])
            den = DensePoly.from_codes(F, [rng.randrange(p) for _ in range(2)] + [1])
            a.append(RatFunc(num, den))
        if rng.random() < 0.3:
            a[-1] = a[-1] ** p                                  # force some non-regular cases
        if not a[-1]:
            a[-1] = RatFunc.t(F)
        eq = RussellEquation(p, n, tuple(a))
        rep = compactify(eq)
        target = p ** max(n, m)
        if rep.degree != target:
            wrong_degree += 1
        if any(sum(e * w for e, w in zip(mo.exps, rep.weights)) != target for mo in rep.monomials):
            nonuniform += 1
        # set t0 = 1 by hand: t2 -> u, t1 -> v
        terms = {}
        for mo in rep.monomials:
            key = (mo.exps[2], mo.exps[1])
            terms[key] = terms.get(key, 0) + mo.coeff
        want = {(p**n, 0): 1, (0, 1): 1}
        for i, c in enumerate(a, start=1):
            if c:
                want[(0, p**i)] = want.get((0, p**i), 0) + c
        if {k: v for k, v in terms.items() if v} != want or dehomogenize(rep) != eq.to_ppoly():
            not_recovered += 1
        if rep.regular != (not is_pth_power_by_derivative(a[-1])):
            regular_wrong += 1
    ok = not (nonuniform or wrong_degree or not_recovered or regular_wrong)
    report(10, ok, f"20 equations: {nonuniform} non-uniform, {wrong_degree} wrong degree, "
                   f"{not_recovered} not recovered, {regular_wrong} regular flags wrong")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
