"""
Classifying two-cycle potentials and walking their flop graph
=============================================================

Potentials in two loops x, y with a crossing term fall into seven
normal forms. Each finite-dimensional class sits in a small graph:
flopping one of the three curves moves to another class (or off the
chart), and the closure of that walk is the derived orbit.
"""

from qpcalc import (
    QQ,
    apq_orbit,
    classify,
    derived_orbit,
    fingerprint,
    flop,
    gv_set,
    lambda_orbit,
    mu_orbit,
    NotOnQ,
    xy_potential,
)

D = 12

# x^2 + xy + (1/3) y^2 lands in the one-parameter family
f = xy_potential(D, {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): QQ(1, 3)})
cls = classify(f)
print("class:", cls)
print("normalizer scale:", cls.normalizer_scale)
print("enumerative invariants:", gv_set(cls))

# flopping the middle curve inverts the parameter against 16
middle = flop(cls, 2)
print("flop at curve 2:", middle)
print("flopping back returns:", flop(middle, 2).key() == cls.key())

# the six-element parameter orbit, and the full class orbit it generates
print("parameter orbit:", sorted(str(v) for v in lambda_orbit(QQ(1, 3))))
members, off_legs = derived_orbit(cls)
print("derived orbit:", [m.key() for m in members], "off-chart legs:", off_legs)

# classes related by flops share quotient dimensions
prints = {fingerprint(xy_potential(14, dict_for)).total for dict_for in [
    {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): QQ(1, 3)},
    {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): QQ(3, 16)},
]}
print("orbit members share the dimension pair:", prints)

# a power family member flops into the two-parameter family
cube = classify(xy_potential(D, {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): QQ(1, 4), (0, 3): QQ(1)}))
print("cubic class:", cube)
print("its curve-1 flop:", flop(cube, 1))
print("its curve-2 flop:", flop(cube, 2))

# quaternion-type parameters carry the anharmonic six-element orbit
print("mu orbit of 1/2:", sorted(str(v) for v in mu_orbit(QQ(1, 2))))
print("(2,2) family at mu=2:", apq_orbit(2, 2, QQ(2)))
print("(3,2) family at mu=1:", apq_orbit(3, 2, QQ(1)))
