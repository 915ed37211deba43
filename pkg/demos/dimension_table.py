"""
Dimensions of cycle-derivative quotients
========================================

Build two-cycle potentials on the loopless three-vertex doubled path,
quotient the path algebra by all cyclic derivatives, and count the
surviving monomials degree by degree. Finite answers come with an
emptiness certificate; unbounded families are reported as lower bounds.
"""

from qpcalc import QQ, jacobi_relations, jdim, jdim_oracle, xy_potential

# x^2 + xy + lam*y^2 has dimension 20 for every valid lam, with both
# end-vertex quotients of dimension 6
for lam in (QQ(1), QQ(2), QQ(-1), QQ(1, 3)):
    f = xy_potential(12, {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): lam})
    report = jdim(f)
    ends = [jdim(f, quotient_vertices=(v,)).value for v in (1, 3)]
    print(f"lam={lam}: dim={report.value} ({report.certificate}), ends={ends}")

# x^p + xy + y^q follows the closed form 4p + 4q + 4
for p, q in ((2, 3), (3, 3), (3, 4)):
    f = xy_potential(12, {(p, 0): QQ(1), (1, 1): QQ(1), (0, q): QQ(1)})
    print(f"(p,q)=({p},{q}): dim={jdim(f).value} = 4*{p}+4*{q}+4")

# an independent oracle: span all relation products against all short
# paths and subtract the rank
f = xy_potential(12, {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): QQ(1)})
print("oracle agrees:", jdim_oracle(f.quiver, jacobi_relations(f), 12) == jdim(f).value)

# the crossing term alone never stabilizes: the counts keep growing, so
# only lower bounds are ever certified
for D in (8, 10, 12):
    report = jdim(xy_potential(D, {(1, 1): QQ(1)}))
    print(f"xy at D={D}: >= {report.value} ({report.certificate})")
