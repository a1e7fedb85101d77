"""Normal forms of torsor classes over k((t))."""

from woundlab.field_core import GF, LaurentSeries
from woundlab.torsor_local import LocalRussell, TorsorClass, is_trivial, lang_shape, reduce

F3 = GF(3)
M = LocalRussell.monomial(3, 1, 1, 1)     # u^3 + v + t v^3
print(M.describe(), "terminal exponents", lang_shape(M))

for terms in [{2: 1}, {-3: 1}, {-2: 1}, {-7: 1, -5: 2, -2: 1}]:
    f = LaurentSeries.from_dict(F3, terms, 40)
    nf = reduce(TorsorClass(M, f))
    print(f"{f.to_str():28s} -> {nf.base_series().to_str() or '0'}")
    for mv in nf.trace.moves:
        print("    ", mv.kind, mv.equation)

print("t^-1 trivial?", is_trivial(TorsorClass(M, LaurentSeries.from_dict(F3, {-1: 1}, 40))))

# genus 0: every class dies
Q = LocalRussell.monomial(2, 1, 1, 1)
f = LaurentSeries.from_dict(GF(2), {-9: 1, -4: 1, -1: 1, 3: 1}, 40)
print(Q.describe(), f.to_str(), "trivial:", reduce(TorsorClass(Q, f)).trivial)

# a field extension is taken when a self-move has no rational solution
M2 = LocalRussell.monomial(3, 1, 1, 2, unit=2)
nf = reduce(TorsorClass(M2, LaurentSeries.from_dict(F3, {-1: 1}, 30)))
print([ev.as_dict() for ev in nf.tower.events])
