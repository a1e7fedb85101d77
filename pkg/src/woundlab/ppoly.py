"""Additive polynomials, Russell equations, genus and classification.

A :class:`PPolynomial` in variables x_0..x_r is sum_i sum_j c_j^(i) x_i^(p^j),
with coefficients in F_q(t), F_q(s, t) or F_q((t)).  A :class:`RussellEquation`
is the one-dimensional normal form u^(p^n) + v + a_1 v^p + ... + a_m v^(p^m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Sequence

from .field_core.bivar import BivarRatFunc
from .field_core.gf import FieldElement, FieldSpec
from .field_core.laurent import LaurentSeries
from .field_core.pbasis import is_pth_power, membership_F2_plus_F2a, radical_degree
from .field_core.poly import DensePoly
from .field_core.ratfunc import RatFunc

__all__ = [
    "PPolynomial", "RussellEquation", "MalformedEquation", "WoundResult", "Classification",
    "Case1cReport", "WeightedMonomial", "CompactificationReport",
    "principal_part", "is_separable", "is_wound", "genus", "splitting_degree", "classify",
    "reduce_case_1c", "compactify", "dehomogenize",
]


class MalformedEquation(ValueError):
    pass


def _frob(x, j: int):
    if j == 0:
        return x
    if hasattr(x, "frobenius"):
        return x.frobenius(j)
    return x ** (x.field.p**j)


def _is_zero(x) -> bool:
    return not x


def _one_like(x):
    if isinstance(x, LaurentSeries):
        return LaurentSeries.monomial(x.field, 0, 1)
    return type(x).constant(x.field, 1)


def _zero_like(x):
    return x - x


class PPolynomial:
    """sum over variables i and j <= k_i of c_j^(i) x_i^(p^j)."""

    def __init__(self, p: int, coeffs: Sequence[Sequence[Any]], names: Sequence[str] | None = None):
        sample = next((c for cs in coeffs for c in cs if not isinstance(c, int)), None)
        blocks = []
        for i, cs in enumerate(coeffs):
            cs = [_one_like(sample) * c if isinstance(c, int) and sample is not None else c
                  for c in cs]
            while cs and _is_zero(cs[-1]):
                cs.pop()
            if not cs:
                raise MalformedEquation(f"variable {i} has no nonzero coefficient")
            blocks.append(tuple(cs))
        self.p = p
        self.coeffs = tuple(blocks)
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(len(blocks)))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(len(cs) - 1 for cs in self.coeffs)

    def sample_coeff(self):
        for cs in self.coeffs:
            for c in cs:
                if not _is_zero(c):
                    return c
        raise MalformedEquation("zero p-polynomial")

    def evaluate(self, xs: Sequence[Any]):
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} values")
        total = None
        for cs, x in zip(self.coeffs, xs):
            for j, c in enumerate(cs):
                if _is_zero(c):
                    continue
                term = c * _frob(x, j)
                total = term if total is None else total + term
        return total

    def __eq__(self, other):
        if not isinstance(other, PPolynomial):
            return NotImplemented
        if self.p != other.p or self.nvars != other.nvars:
            return False
        return all(len(a) == len(b) and all(x == y for x, y in zip(a, b))
                   for a, b in zip(self.coeffs, other.coeffs))

    def to_str(self, fmt: Callable[[Any], str] = str) -> str:
        parts = []
        for name, cs in zip(self.names, self.coeffs):
            for j, c in enumerate(cs):
                if _is_zero(c):
                    continue
                e = self.p**j
                mono = name if e == 1 else f"{name}^{e}"
                cs_ = fmt(c)
                if cs_ == "1":
                    parts.append(mono)
                else:
                    if not cs_.replace("^", "").isalnum():
                        cs_ = f"({cs_})"
                    parts.append(f"{cs_}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"PPolynomial(p={self.p}: {self})"


def principal_part(phi: PPolynomial) -> PPolynomial:
    blocks = []
    for cs in phi.coeffs:
        z = _zero_like(cs[-1])
        blocks.append([z] * (len(cs) - 1) + [cs[-1]])
    return PPolynomial(phi.p, blocks, phi.names)


def is_separable(phi: PPolynomial) -> bool:
    return any(not _is_zero(cs[0]) for cs in phi.coeffs)


@dataclass(frozen=True)
class RussellEquation:
    """u^(p^n) + v + a_1 v^p + ... + a_m v^(p^m)."""

    p: int
    n: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def field(self) -> FieldSpec:
        return self.a[-1].field

    def validate(self) -> None:
        if self.n < 1:
            raise MalformedEquation("height n must be at least 1")
        if not self.a:
            raise MalformedEquation("need at least one coefficient a_1")
        if _is_zero(self.a[-1]):
            raise MalformedEquation("leading coefficient a_m is zero")
        if self.field.p != self.p:
            raise MalformedEquation(f"coefficients have characteristic {self.field.p}, expected {self.p}")

    def to_ppoly(self) -> PPolynomial:
        self.validate()
        one = _one_like(self.a[-1])
        zero = _zero_like(one)
        return PPolynomial(self.p, [[zero] * self.n + [one], [one] + list(self.a)], ("u", "v"))

    def evaluate(self, u, v):
        return self.to_ppoly().evaluate([u, v])

    def with_coeffs(self, a) -> "RussellEquation":
        return RussellEquation(self.p, self.n, tuple(a))

    def to_str(self, fmt: Callable[[Any], str] = str) -> str:
        return self.to_ppoly().to_str(fmt)

    def __str__(self):
        return self.to_str()


def _russell_shape(phi: PPolynomial) -> RussellEquation | None:
    """Recognize u^(p^n) + v + sum a_i v^(p^i) (either variable order)."""
    if phi.nvars != 2:
        return None
    for iu, iv in ((0, 1), (1, 0)):
        cu, cv = phi.coeffs[iu], phi.coeffs[iv]
        n = len(cu) - 1
        if n < 1 or len(cv) < 2:
            continue
        if any(not _is_zero(c) for c in cu[:-1]) or cu[-1] != 1 or cv[0] != 1:
            continue
        return RussellEquation(phi.p, n, tuple(cv[1:]))
    return None


# --- genus and splitting -------------------------------------------------------

def genus(p: int, n: int, m: int) -> int:
    """Arithmetic genus (p^min - 1)(p^max - 2)/2 of the weighted compactification."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    lo, hi = min(n, m), max(n, m)
    return (p**lo - 1) * (p**hi - 2) // 2


def splitting_degree(R: RussellEquation) -> int:
    """[F(a_1^{1/p^n}, ..., a_m^{1/p^n}) : F]."""
    R.validate()
    return radical_degree(list(R.a), R.n)


# --- woundness -------------------------------------------------------------------

@dataclass
class WoundResult:
    verdict: str                      # "Wound" | "NotWound" | "Unknown"
    reason: str
    witness: tuple | None = None      # additive parametrization s -> (x_i(s)) for NotWound
    principal_zero: tuple | None = None

    def __bool__(self):
        return self.verdict == "Wound"


def _valuations(c) -> dict:
    """Valuations of c at the places we can enumerate."""
    if isinstance(c, LaurentSeries):
        return {"t": c.valuation()}
    if isinstance(c, RatFunc):
        out = {"inf": c.valuation(None)}
        for pl in c.places():
            out[pl.c] = c.valuation(pl)
        return out
    return {}


def _places(cs) -> list:
    keys = set()
    for c in cs:
        keys.update(_valuations(c))
    return sorted(keys, key=repr)


def _valuation_at(c, place):
    if isinstance(c, LaurentSeries):
        return c.valuation()
    if place == "inf":
        return c.valuation(None)
    return c.valuation(DensePoly.from_codes(c.field, list(place)))


def _principal_zero_two(phi: PPolynomial):
    """Exact zero test for c1 x^(P1) + c2 y^(P2); returns (x, y) or None."""
    (k1, k2) = phi.heights
    c1, c2 = phi.coeffs[0][-1], phi.coeffs[1][-1]
    if k1 <= k2:
        z = is_pth_power(-c2 / c1, k1)
        return None if z is None else (z, _one_like(c1))
    z = is_pth_power(-c1 / c2, k2)
    return None if z is None else (_one_like(c1), z)


def _search_principal_zero(phi: PPolynomial, bound: int):
    """Zeros of the principal part with polynomial entries of degree <= bound over F_q."""
    sample = phi.sample_coeff()
    if not isinstance(sample, RatFunc):
        return None
    F = sample.field
    if F.q ** ((bound + 1) * phi.nvars) > 200_000:
        bound = 0
    polys = [RatFunc(DensePoly.from_codes(F, list(c))) for c in product(range(F.q), repeat=bound + 1)]
    pp = principal_part(phi)
    for xs in product(polys, repeat=phi.nvars):
        if all(_is_zero(x) for x in xs):
            continue
        if _is_zero(pp.evaluate(list(xs))):
            return tuple(xs)
    return None


def _pure_principal(phi: PPolynomial) -> bool:
    return all(all(_is_zero(c) for c in cs[:-1]) for cs in phi.coeffs)


def is_wound(phi: PPolynomial, search: int = 1) -> WoundResult:
    """Three-valued woundness check.

    Wound is claimed only when the principal part provably has no nontrivial
    zero (exact power test for two variables, valuations otherwise).  NotWound
    is claimed only with an additive parametrization that is verified to lie
    on the group.
    """
    pp = principal_part(phi)
    ks = phi.heights
    kmin = min(ks)
    zero = None
    if phi.nvars == 2:
        zero = _principal_zero_two(phi)
        if zero is None:
            return WoundResult("Wound", "principal part has no nontrivial zero")
    else:
        tops = [cs[-1] for cs in phi.coeffs]
        P = phi.p**kmin
        for place in _places(tops):
            vals = [_valuation_at(c, place) % P for c in tops]
            if len(set(vals)) == len(vals):
                return WoundResult("Wound", "principal part coefficients have distinct valuations "
                                            f"mod {P} at a place, so it has no nontrivial zero")
        zero = _search_principal_zero(phi, search)

    R = _russell_shape(phi)
    if R is not None and splitting_degree(R) == 1:
        witness = _russell_parametrization(R, phi)
        return WoundResult("NotWound", "Russell equation splits over the base field",
                           witness=witness, principal_zero=zero)

    if zero is not None and _pure_principal(phi):
        K = max(ks)
        # s -> (x_i s^(p^(K - k_i))) lands in the zero set
        witness = tuple((x, K - k) for x, k in zip(zero, ks))
        if _check_monomial_param(phi, witness):
            return WoundResult("NotWound", "principal part has a zero and the polynomial is its "
                                           "own principal part", witness=witness, principal_zero=zero)
    return WoundResult("Unknown", "principal part has a zero; the criterion is not conclusive",
                       principal_zero=zero)


def _check_monomial_param(phi: PPolynomial, witness) -> bool:
    # each entry x s^(p^e): substitute symbolically by collecting coefficients per power of s
    sums: dict[int, Any] = {}
    for (x, e), cs in zip(witness, phi.coeffs):
        for j, c in enumerate(cs):
            if _is_zero(c):
                continue
            term = c * _frob(x, j)
            key = e + j
            sums[key] = term if key not in sums else sums[key] + term
    return all(_is_zero(v) for v in sums.values())


def _russell_parametrization(R: RussellEquation, phi: PPolynomial):
    """For a split equation a_i = b_i^(p^n): s -> (u, v) = (-(s + sum b_i s^(p^i)), s^(p^n)).

    Returned as ((u coefficients by p-power), (v coefficients by p-power)), verified.
    """
    bs = [is_pth_power(a, R.n) for a in R.a]
    one = _one_like(R.a[-1])
    zero = _zero_like(one)
    u = [-one] + [-b for b in bs]
    v = [zero] * R.n + [one]
    # verify: u^(p^n) + v + sum a_i v^(p^i) as an additive polynomial in s
    coeff: dict[int, Any] = {}

    def add(k, c):
        coeff[k] = c if k not in coeff else coeff[k] + c

    for j, c in enumerate(u):
        add(j + R.n, _frob(c, R.n))
    for j, c in enumerate(v):
        add(j, c)
        for i, a in enumerate(R.a, start=1):
            add(j + i, a * _frob(c, i))
    if not all(_is_zero(x) for x in coeff.values()):
        raise ArithmeticError("parametrization check failed")
    return tuple(u), tuple(v)


# --- classification -----------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    tag: str                      # SplitsToGa | QuasiRational | QuasiElliptic | HigherGenus | Undetermined
    case: str | None = None       # 1a | 1b | 1c | 2 for QuasiElliptic
    genus: int | None = None
    reason: str = ""

    def label(self) -> str:
        if self.tag == "QuasiElliptic":
            return f"QuasiElliptic({self.case})"
        if self.tag == "HigherGenus":
            return f"HigherGenus({self.genus})"
        return self.tag

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"tag": self.tag}
        if self.case is not None:
            d["case"] = self.case
        if self.genus is not None:
            d["genus"] = self.genus
        if self.reason:
            d["reason"] = self.reason
        return d


def classify(R: RussellEquation) -> Classification:
    R.validate()
    p, n, m, a = R.p, R.n, R.m, R.a
    if splitting_degree(R) == 1:
        return Classification("SplitsToGa", reason="all a_i are p^n-th powers")
    regular = is_pth_power(a[-1]) is None
    if p == 2:
        if (n, m) == (1, 1):
            return Classification("QuasiRational", genus=0)
        if (n, m) == (1, 2):
            if not regular:
                return Classification("Undetermined", reason="a_2 is a square; compactification not regular")
            if radical_degree(list(a), 1) == 2:
                return Classification("QuasiElliptic", "1a", 1)
            return Classification("Undetermined", reason="genus one but [F(a_1^{1/2}, a_2^{1/2}):F] = 4")
        if (n, m) == (2, 1):
            if regular:
                return Classification("QuasiElliptic", "1b", 1)
            return Classification("Undetermined", reason="a is a square; compactification not regular")
        if (n, m) == (2, 2):
            if regular:
                return Classification("HigherGenus", genus=genus(2, 2, 2))
            c = is_pth_power(a[1])
            rep = reduce_case_1c(a[0], c)
            if rep.genus0:
                return Classification("QuasiRational", genus=0, reason="a_1 is a square")
            if rep.reduces_to_1b:
                return Classification("QuasiElliptic", "1b", 1,
                                      reason="c lies in F^2 + F^2 a_1")
            return Classification("QuasiElliptic", "1c", 1)
    if p == 3 and (n, m) == (1, 1):
        return Classification("QuasiElliptic", "2", 1)
    if regular:
        g = genus(p, n, m)
        return Classification("HigherGenus", genus=g)
    return Classification("Undetermined", reason="compactification not regular")


@dataclass
class Case1cReport:
    a: Any
    c: Any
    genus0: bool
    reduces_to_1b: bool
    witness: tuple | None = None

    @property
    def cubic(self) -> tuple:
        """(a, c) for y^2 + x^3 + a x + c."""
        return self.a, self.c


def reduce_case_1c(a, c) -> Case1cReport:
    """Cubic model y^2 + x^3 + a x + c of u^4 + v + a v^2 + c^2 v^4 with its degeneration flags."""
    if a.field.p != 2:
        raise ValueError("case 1(c) lives in characteristic 2")
    if is_pth_power(a) is not None:
        return Case1cReport(a, c, True, False)
    wit = membership_F2_plus_F2a(c, a)
    return Case1cReport(a, c, False, wit is not None, wit)


# --- compactification -------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedMonomial:
    coeff: Any
    exps: tuple[int, int, int]     # exponents of t0, t1, t2

    def weighted_degree(self, weights) -> int:
        return sum(e * w for e, w in zip(self.exps, weights))


@dataclass
class CompactificationReport:
    p: int
    n: int
    m: int
    weights: tuple[int, int, int]
    degree: int
    monomials: list[WeightedMonomial]
    regular: bool
    boundary_degree: int
    canonical_degree: int
    genus: int
    coeffs: tuple = field(default_factory=tuple)

    def uniform(self) -> bool:
        return all(mo.weighted_degree(self.weights) == self.degree for mo in self.monomials)

    def to_str(self, fmt: Callable[[Any], str] = str) -> str:
        parts = []
        for mo in self.monomials:
            vs = [f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in enumerate(mo.exps) if e]
            cs = fmt(mo.coeff)
            if cs == "1":
                parts.append("*".join(vs))
            else:
                if not cs.replace("^", "").isalnum():
                    cs = f"({cs})"
                parts.append("*".join([cs] + vs))
        return " + ".join(parts)


def compactify(R: RussellEquation) -> CompactificationReport:
    """Weighted homogenization of the Russell curve by clearing denominators."""
    R.validate()
    p, n, m = R.p, R.n, R.m
    one = _one_like(R.a[-1])
    mons = []
    if n <= m:
        D = p**m
        weights = (1, 1, p ** (m - n))
        mons.append(WeightedMonomial(one, (0, 0, p**n)))
        mons.append(WeightedMonomial(one, (D - 1, 1, 0)))
        for i, a in enumerate(R.a, start=1):
            if not _is_zero(a):
                mons.append(WeightedMonomial(a, (D - p**i, p**i, 0)))
    else:
        D = p**n
        w = p ** (n - m)
        weights = (1, w, 1)
        mons.append(WeightedMonomial(one, (0, 0, p**n)))
        mons.append(WeightedMonomial(one, (D - w, 1, 0)))
        for i, a in enumerate(R.a, start=1):
            if not _is_zero(a):
                mons.append(WeightedMonomial(a, (D - w * p**i, p**i, 0)))
    rep = CompactificationReport(
        p=p, n=n, m=m, weights=weights, degree=D, monomials=mons,
        regular=is_pth_power(R.a[-1]) is None,
        boundary_degree=radical_degree([R.a[-1]], n),
        canonical_degree=-2 - p ** (max(n, m) - min(n, m)) + p ** max(n, m),
        genus=genus(p, n, m),
        coeffs=R.a,
    )
    if not rep.uniform():
        raise ArithmeticError("homogenized equation is not weighted homogeneous")
    return rep


def dehomogenize(rep: CompactificationReport) -> PPolynomial:
    """Set t0 = 1 and read the result as a p-polynomial in (u, v) = (t2, t1)."""
    sample = rep.monomials[0].coeff
    zero = _zero_like(sample)
    u: dict[int, Any] = {}
    v: dict[int, Any] = {}
    for mo in rep.monomials:
        _, e1, e2 = mo.exps
        if e1 and e2:
            raise ArithmeticError("mixed monomial in a p-polynomial")
        if e2:
            j = _plog(rep.p, e2)
            u[j] = mo.coeff if j not in u else u[j] + mo.coeff
        elif e1:
            j = _plog(rep.p, e1)
            v[j] = mo.coeff if j not in v else v[j] + mo.coeff
        else:
            raise ArithmeticError("constant monomial in a p-polynomial")
    ub = [u.get(j, zero) for j in range(max(u) + 1)]
    vb = [v.get(j, zero) for j in range(max(v) + 1)]
    return PPolynomial(rep.p, [ub, vb], ("u", "v"))


def _plog(p: int, e: int) -> int:
    j = 0
    while e % p == 0 and e > 1:
        e //= p
        j += 1
    if e != 1:
        raise ArithmeticError(f"exponent {e} is not a power of {p}")
    return j
