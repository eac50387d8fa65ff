"""Tour of the three-dimensional family: brackets, Levi-Civita connection,
the fundamental tensor F and the class of both manifolds.

Run: python demos/01_family_tour.py
"""
# %% build an instance; parameters are exact rationals
from fractions import Fraction

from apapr import FamilyParams, analyze, build_family

params = FamilyParams(1, (Fraction(1), Fraction(2)))
inst = build_family(params)
print("brackets [E_i,E_j] = value E_k:", inst.frame.to_triples())

# %% everything downstream comes out of one analysis pass
an = analyze(inst)
# entries ((k, i, j), value) mean nabla_{E_i} E_j has component value along E_k
print("nabla:", [(idx, str(v)) for idx, v in an.nabla.nonzero()])
print("g~ =", an.inst.g_tilde.to_nested())

# %% F(x,y,z) = g((nabla_x phi)y, z), nonzero components only
for idx, v in an.fund.F.nonzero():
    print(f"F{''.join(map(str, idx))} = {v}")

# %% classes: the g-manifold and the g~-manifold, each from its own F
print("class of (phi, xi, eta, g): ", an.membership.name)
print("class of (phi, xi, eta, g~):", an.membership_tilde.name)

# %% the same table over the four sign cases
for a in [(1, 1), (0, 1), (1, 0), (0, 0)]:
    m = analyze(build_family(FamilyParams(1, a)))
    print(a, m.membership.name, "|", m.membership_tilde.name)
