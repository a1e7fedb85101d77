"""A lazily grown tower of finite fields standing in for an algebraic closure.

Computations that need a root which the current top field lacks call
:meth:`FieldTower.ensure_root`; the tower then adjoins the smallest splitting
step and records it.  Values created at lower levels are moved up with
:meth:`FieldTower.lift`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gf import FIELD_CEILING, FieldCeilingError, FieldElement, FieldSpec, GF
from .linalg import solve
from .poly import DensePoly, min_root_degree, roots

__all__ = ["Embedding", "FieldTower", "TowerEvent"]


class Embedding:
    """Field homomorphism src -> dst determined by the image of src's generator."""

    def __init__(self, src: FieldSpec, dst: FieldSpec, image: int):
        if src.p != dst.p or dst.e % src.e:
            raise ValueError(f"no embedding {src.name} -> {dst.name}")
        self.src = src
        self.dst = dst
        self.image = image
        # images of the power basis 1, w, ..., w^(e-1)
        basis = [1]
        for _ in range(src.e - 1):
            basis.append(dst.mul(basis[-1], image))
        self._basis = basis
        self._cache: dict[int, int] = {}
        if not self._check():
            raise ValueError("generator image is not a root of the source modulus")

    def _check(self) -> bool:
        acc = 0
        x = 1
        for c in self.src.modulus:
            acc = self.dst.add(acc, self.dst.mul(c, x))
            x = self.dst.mul(x, self.image)
        return acc == 0

    def __call__(self, code: int) -> int:
        if code < self.src.p:
            return code
        out = self._cache.get(code)
        if out is None:
            dst = self.dst
            out = 0
            for d, b in zip(self.src.digits(code), self._basis):
                if d:
                    out = dst.add(out, dst.mul(d, b))
            self._cache[code] = out
        return out

    def element(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.dst, self(x.code))

    def compose(self, after: "Embedding") -> "Embedding":
        """after o self."""
        return Embedding(self.src, after.dst, after(self.image))

    @classmethod
    def identity(cls, F: FieldSpec) -> "Embedding":
        return cls(F, F, F.gen.code)

    @classmethod
    def find(cls, src: FieldSpec, dst: FieldSpec) -> "Embedding":
        """The embedding sending w to the smallest-code root of src's modulus in dst."""
        if src is dst:
            return cls.identity(src)
        if src.e == 1:
            return cls(src, dst, 0)
        mod = DensePoly.from_codes(dst, list(src.modulus))
        rts = roots(mod)
        if not rts:
            raise ValueError(f"{src.name} does not embed in {dst.name}")
        return cls(src, dst, rts[0].code)


@dataclass
class TowerEvent:
    kind: str
    detail: str
    from_field: str
    to_field: str

    def as_dict(self) -> dict:
        return {"kind": self.kind, "detail": self.detail, "from": self.from_field, "to": self.to_field}


@dataclass
class FieldTower:
    """Base field plus the chain of extensions adjoined so far."""

    base: FieldSpec
    ceiling: int = FIELD_CEILING
    levels: list[FieldSpec] = dc_field(default_factory=list)
    to_top: list[Embedding] = dc_field(default_factory=list)
    events: list[TowerEvent] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.levels:
            self.levels = [self.base]
            self.to_top = [Embedding.identity(self.base)]

    @property
    def top(self) -> FieldSpec:
        return self.levels[-1]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level_of(self, F: FieldSpec) -> int:
        for i, L in enumerate(self.levels):
            if L is F:
                return i
        raise ValueError(f"{F.name} is not a level of this tower")

    def extend(self, degree: int, reason: str = "") -> FieldSpec:
        """Adjoin an extension of the given relative degree on top."""
        if degree <= 1:
            return self.top
        old = self.top
        new_e = old.e * degree
        if old.p**new_e > self.ceiling:
            raise FieldCeilingError(
                f"extension to F_{old.p}^{new_e} exceeds the field ceiling {self.ceiling}")
        new = GF(old.p, new_e, ceiling=self.ceiling)
        step = Embedding.find(old, new)
        self.to_top = [emb.compose(step) for emb in self.to_top] + [Embedding.identity(new)]
        self.levels.append(new)
        self.events.append(TowerEvent("field-extension", reason, old.name, new.name))
        return new

    def lift(self, code: int, src: FieldSpec) -> int:
        """Image in the top field of an element of a tower level."""
        return self.to_top[self.level_of(src)](code)

    def lift_element(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.top, self.lift(x.code, x.field))

    def lift_poly(self, f: DensePoly) -> DensePoly:
        if f.field is self.top:
            return f
        emb = self.to_top[self.level_of(f.field)]
        return f.map_coeffs(emb, self.top)

    def descend(self, code: int, target: FieldSpec | None = None) -> int | None:
        """Preimage in ``target`` (default: the base) of a top-field element, or None."""
        target = target or self.base
        emb = self.to_top[self.level_of(target)]
        top = self.top
        if target is top:
            return code
        cols = [top.digits(b) for b in emb._basis]
        rows = [[c[i] for c in cols] for i in range(top.e)]
        x = solve(GF(top.p), rows, top.digits(code))
        if x is None:
            return None
        return target.from_digits(x)

    def ensure_root(self, f: DensePoly, reason: str = "") -> FieldElement:
        """A root of f in the top field, extending the tower if necessary.

        f may have coefficients in any tower level; the returned root lives in
        the (possibly new) top field and is the smallest-code root there.
        """
        g = self.lift_poly(f)
        rts = roots(g)
        if not rts:
            d = min_root_degree(g)
            self.extend(d, reason or f"root of degree-{g.degree} polynomial")
            g = self.lift_poly(g)
            rts = roots(g)
        if not rts:
            raise ArithmeticError("splitting step failed to produce a root")
        return rts[0]
