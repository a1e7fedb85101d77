"""Semilinear operators on H^1 of a negative line bundle over P^1.

For k >= 1 the group H^1(P^1, O(-p^n k)) has the basis of negative Laurent
monomials

    e_i = t0^(-i) t1^(-(p^n k - i)),   i = 1 .. d,   d = p^n k - 1,

and a binary form a of degree k p^n (p^m - 1) acts by e_i -> a * e_i^(p^m),
dropping every monomial with a nonnegative exponent.  The result is a p^m-linear
map; its matrix (columns are images) has entry c_(p^m i - j) in row j, column i.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .field_core.gf import FieldCeilingError, FieldElement, FieldSpec, GF, FIELD_CEILING
from .field_core.linalg import identity, matmul, matvec, nullspace, rank
from .field_core.tower import Embedding

__all__ = [
    "BinaryForm", "SemilinearMatrix", "CohomologyReport", "DegreeMismatch",
    "build_matrix", "truncated_image", "stable_rank", "stable_rank_certified", "iterate_oracle",
    "fixed_points", "fixed_point_basis", "cohomology_report", "random_matrix",
]


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class BinaryForm:
    """sum c_i t0^i t1^(N - i); coefficients stored as field codes."""

    field: FieldSpec
    degree: int
    c: tuple

    def __post_init__(self):
        if len(self.c) != self.degree + 1:
            raise ValueError("a binary form of degree N has N + 1 coefficients")

    @classmethod
    def from_terms(cls, field: FieldSpec, degree: int, terms: dict[int, int]) -> "BinaryForm":
        c = [0] * (degree + 1)
        for i, x in terms.items():
            if not 0 <= i <= degree:
                raise ValueError(f"t0-exponent {i} outside 0..{degree}")
            c[i] = field.add(c[i], x)
        return cls(field, degree, tuple(c))

    @classmethod
    def zero(cls, field: FieldSpec, degree: int) -> "BinaryForm":
        return cls(field, degree, (0,) * (degree + 1))

    def coeff(self, i: int) -> int:
        return self.c[i] if 0 <= i <= self.degree else 0

    def terms(self) -> dict[int, int]:
        return {i: x for i, x in enumerate(self.c) if x}

    def to_str(self) -> str:
        parts = []
        N = self.degree
        for i in range(N, -1, -1):
            x = self.c[i]
            if not x:
                continue
            vs = []
            if i:
                vs.append("t0" if i == 1 else f"t0^{i}")
            if N - i:
                vs.append("t1" if N - i == 1 else f"t1^{N - i}")
            cs = str(FieldElement(self.field, x))
            if " + " in cs:
                cs = f"({cs})"
            if x == 1 and vs:
                parts.append("*".join(vs))
            else:
                parts.append("*".join([cs] + vs))
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_str()


@dataclass(frozen=True)
class SemilinearMatrix:
    """A p^twist-linear operator x -> A x^(p^twist) on F^d (columns are images of e_i)."""

    field: FieldSpec
    entries: tuple               # tuple of row tuples of codes
    twist: int                   # semilinearity degree is p^twist

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]], twist: int) -> "SemilinearMatrix":
        return cls(field, tuple(tuple(r) for r in rows), twist)

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def q(self) -> int:
        return self.field.p**self.twist

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def frob_rows(self, j: int) -> list[list[int]]:
        """A^(q^j): every entry raised to the q^j-th power."""
        F = self.field
        k = self.twist * j
        return [[F.frob(x, k) for x in r] for r in self.entries]

    def apply(self, x: Sequence[int]) -> list[int]:
        F = self.field
        return matvec(F, self.entries, [F.frob(c, self.twist) for c in x])

    def product(self, j: int) -> list[list[int]]:
        """Pi_j = A A^(q) ... A^(q^(j-1))."""
        out = identity(self.d)
        for i in range(j):
            out = matmul(self.field, out, self.frob_rows(i))
        return out

    def entry(self, row: int, col: int) -> FieldElement:
        """1-based access matching the e_1..e_d basis."""
        return FieldElement(self.field, self.entries[row - 1][col - 1])


def _check_degree(p: int, n: int, m: int, k: int, a: BinaryForm) -> None:
    expected = k * p**n * (p**m - 1)
    if a.degree != expected:
        raise DegreeMismatch(f"binary form has degree {a.degree}, expected k p^n (p^m - 1) = {expected}")
    if a.field.p != p:
        raise DegreeMismatch("binary form over a field of the wrong characteristic")


def build_matrix(p: int, n: int, m: int, k: int, a: BinaryForm) -> SemilinearMatrix:
    _check_degree(p, n, m, k, a)
    P, Q = p**n, p**m
    d = P * k - 1
    rows = [[a.coeff(Q * i - j) for i in range(1, d + 1)] for j in range(1, d + 1)]
    return SemilinearMatrix.from_rows(a.field, rows, m)


def truncated_image(p: int, n: int, m: int, k: int, a: BinaryForm, i: int) -> dict[int, int]:
    """Direct expansion of a * e_i^(p^m), keeping monomials with both exponents negative.

    Returned as {j: coefficient} for the surviving e_j; independent of the
    closed-form entry rule used by :func:`build_matrix`.
    """
    P, Q = p**n, p**m
    F = a.field
    out: dict[int, int] = {}
    e0, e1 = -Q * i, -Q * (P * k - i)
    for l, c in a.terms().items():
        x0, x1 = l + e0, (a.degree - l) + e1
        if x0 < 0 and x1 < 0:
            if x0 + x1 != -P * k:
                raise ArithmeticError("image monomial has the wrong total degree")
            j = -x0
            out[j] = F.add(out.get(j, 0), c)
    return {j: x for j, x in out.items() if x}


def stable_rank(A: SemilinearMatrix) -> int:
    """rank of A A^(q) ... A^(q^(d-1))."""
    if A.d == 0:
        return 0
    return rank(A.field, A.product(A.d))


def stable_rank_certified(A: SemilinearMatrix) -> tuple[int, bool]:
    """(stable rank, whether rank Pi_d equals rank Pi_(d+1))."""
    if A.d == 0:
        return 0, True
    Pd = A.product(A.d)
    Pd1 = matmul(A.field, Pd, A.frob_rows(A.d))
    r = rank(A.field, Pd)
    return r, r == rank(A.field, Pd1)


def iterate_oracle(A: SemilinearMatrix) -> int:
    """Apply phi d times to each standard basis vector; rank of the images."""
    d = A.d
    images = []
    for i in range(d):
        x = [1 if j == i else 0 for j in range(d)]
        for _ in range(d):
            x = A.apply(x)
        images.append(x)
    return rank(A.field, images) if images else 0


def _extension_degrees(A: SemilinearMatrix, ceiling: int):
    base = A.field.e * A.twist // gcd(A.field.e, A.twist)
    s = 1
    while A.field.p ** (base * s) <= ceiling:
        yield base * s
        s += 1


def fixed_points(A: SemilinearMatrix, e: int) -> tuple[FieldSpec, list[list[int]]]:
    """F_p-basis of {x in F_Q^d : phi(x) = x} for Q = p^e (e a multiple of the base degree)."""
    p = A.field.p
    if e % A.field.e:
        raise ValueError("the extension must contain the base field")
    FQ = GF(p, e)
    emb = Embedding.find(A.field, FQ)
    M = SemilinearMatrix.from_rows(FQ, [[emb(x) for x in row] for row in A.entries], A.twist)
    cols = []
    for i in range(A.d):
        for s in range(e):
            x = [0] * A.d
            x[i] = FQ.from_digits([0] * s + [1])
            diff = [FQ.sub(y, z) for y, z in zip(M.apply(x), x)]
            cols.append([dig for c in diff for dig in FQ.digits(c)])
    # phi - id is F_p-linear; its matrix has the images of the F_p-basis as columns
    mat = [list(row) for row in zip(*cols)]
    ker = nullspace(GF(p), mat, len(cols))
    return FQ, [[FQ.from_digits(v[i * e:(i + 1) * e]) for i in range(A.d)] for v in ker]


def fixed_point_basis(A: SemilinearMatrix, ceiling: int = FIELD_CEILING) -> tuple[FieldSpec, list[list[int]]]:
    """A basis over F_(p^twist) of the solutions of phi(x) = x.

    Searches fields F_Q containing the base field and F_(p^twist) until the
    fixed points form an F_p-space of dimension twist * (stable rank).  The
    required Q can be enormous (it grows with the order of phi on V_ss), in
    which case FieldCeilingError is raised.
    """
    r = stable_rank(A)
    if r == 0:
        return A.field, []
    target = A.twist * r
    for e in _extension_degrees(A, ceiling):
        FQ, vecs = fixed_points(A, e)
        if len(vecs) < target:
            continue
        basis: list[list[int]] = []
        for v in vecs:
            if rank(FQ, basis + [v]) > len(basis):
                basis.append(v)
            if len(basis) == r:
                break
        return FQ, basis
    raise FieldCeilingError("fixed points not all defined below the field ceiling")


@dataclass
class CohomologyReport:
    d: int
    r: int
    p: int
    m: int
    k: int
    experimental: bool
    certified: bool
    kernel_field: FieldSpec | None = None
    kernel_basis: list = field(default_factory=list)

    @property
    def h1G(self) -> dict:
        return {"torsion": self.p**self.m, "rank": self.r}

    @property
    def h2(self) -> int:
        return 0

    @property
    def h1L_dim(self) -> int:
        return self.k - 1

    def h1G_str(self) -> str:
        if self.r == 0:
            return "0"
        return f"(Z/{self.p**self.m}Z)^{self.r}"

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "h1G": self.h1G,
            "h2": self.h2,
            "h1L_dim": self.h1L_dim,
            "experimental": self.experimental,
        }


def cohomology_report(p: int, n: int, m: int, k: int, a: BinaryForm, kernel: bool = False) -> CohomologyReport:
    A = build_matrix(p, n, m, k, a)
    r, ok = stable_rank_certified(A)
    rep = CohomologyReport(d=A.d, r=r, p=p, m=m, k=k, experimental=(p, n, m) != (3, 1, 1), certified=ok)
    if kernel:
        rep.kernel_field, rep.kernel_basis = fixed_point_basis(A)
    return rep


def random_matrix(field: FieldSpec, d: int, twist: int, rng: _random.Random, density: float = 0.5) -> SemilinearMatrix:
    rows = [[rng.randrange(1, field.q) if rng.random() < density else 0 for _ in range(d)] for _ in range(d)]
    return SemilinearMatrix.from_rows(field, rows, twist)
