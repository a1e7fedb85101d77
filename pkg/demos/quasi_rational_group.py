"""The group u^2 + v + a v^2 = 0 in characteristic 2, through its parameter."""

from woundlab.field_core import GF, RatFunc
from woundlab.grouplaw import QRGroup, SquareParameterError

F2 = GF(2)
t = RatFunc.t(F2)
G = QRGroup(t)

s = G.add(1, t)
print("1 + t =", s)                       # 1/(t + 1)
print("t + t =", G.add(t, t))             # every point is 2-torsion
print("1 + 1/t =", G.add(1, 1 / t))       # the point at s = infinity

# the parameter map lands on the curve, and the law is addition of (u, v)
u1, v1 = G.embed(1)
u2, v2 = G.embed(t)
u, v = G.embed(s)
print("on curve:", G.on_curve(u, v), " additive:", (u, v) == (u1 + u2, v1 + v2))

try:
    QRGroup(t**2 + 1)
except SquareParameterError as exc:
    print("rejected:", exc)
