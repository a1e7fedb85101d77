"""Classifying one-dimensional wound groups by their Russell equations."""

from woundlab.cli.expr import parse
from woundlab.field_core import GF
from woundlab.ppoly import classify, compactify, genus, is_wound, splitting_degree

F2, F3 = GF(2), GF(3)

# genus depends only on (p, n, m)
for pnm in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 2), (5, 1, 1)]:
    print("genus", pnm, "=", genus(*pnm))

equations = [
    ("u^2+v+t*v^2", F2),
    ("u^3+v+t*v^3", F3),
    ("u^4+v+t*v^2", F2),
    ("u^2+v+(t+1)*v^2+t*v^4", F2),
    ("u^4+v+s*v^2+t^2*v^4", F2),
    ("u^2+v+t^2*v^2", F2),      # a square coefficient: splits
]
for text, F in equations:
    R = parse(text, F).to_russell()
    c = classify(R)
    print(f"{text:28s} {c.label():20s} splitting degree {splitting_degree(R)}")

# the wound test looks at the principal part; a zero there is only a hint
R = parse("u^3+v+t*v^3", F3).to_russell()
print(is_wound(R.to_ppoly()))

# weighted compactifications, regular exactly when a_m is not a p-th power
for text, F in [("u^3+v+t*v^3", F3), ("u^2+v+(t+1)*v^2+t*v^4", F2), ("u^2+v+t*v^2+t^2*v^4", F2)]:
    rep = compactify(parse(text, F).to_russell())
    print(f"{rep.to_str():40s} weights {rep.weights} degree {rep.degree} regular {rep.regular}")
