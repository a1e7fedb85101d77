"""Stable ranks of the semilinear operator for two quasi-elliptic K3 surfaces."""

import random

from woundlab.cli.expr import parse
from woundlab.field_core import GF
from woundlab.hassewitt import build_matrix, cohomology_report, iterate_oracle, random_matrix, stable_rank

F3 = GF(3)

for text in ["t0^2*t1^2*(t0^8+t1^8)", "t0^2*t1^10+t0^5*t1^7+t0^8*t1^4+t0^10*t1^2"]:
    a = parse(text, F3).to_binary_form()
    A = build_matrix(3, 1, 1, 2, a)
    for row in A.rows():
        print("   ", row)
    rep = cohomology_report(3, 1, 1, 2, a)
    print(text, "->", rep.as_dict(), rep.h1G_str())

# matrix product against direct iteration
rng = random.Random(0)
F9 = GF(3, 2)
for _ in range(5):
    A = random_matrix(F9, rng.randint(2, 6), 1, rng)
    print("d =", A.d, "product rank", stable_rank(A), "iteration rank", iterate_oracle(A))

rep = cohomology_report(3, 1, 1, 2, parse("t0^2*t1^2*(t0^8+t1^8)", F3).to_binary_form(), kernel=True)
print("fixed points over", rep.kernel_field.name, "basis size", len(rep.kernel_basis))
