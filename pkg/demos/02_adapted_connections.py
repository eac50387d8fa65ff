"""The pair of adapted connections on the family and on a random instance:
coefficients, torsion, curvature and sectional curvatures.

Run: python demos/02_adapted_connections.py
"""
# %%
import numpy as np

from apapr import FamilyParams, analyze, build_family
from apapr.curvature import section_analysis
from apapr.generators import random_instance

an = analyze(build_family(FamilyParams(1, (1, 2))))
pair = an.pair

# %% nabla|| kills every frame derivative; nabla~|| only does when a1 = 0
print("nabla||  nonzero:", pair.nabla_par.nonzero())
print("nabla~|| nonzero:", pair.nabla_tilde_par.nonzero())

# %% torsion of nabla|| against minus the bracket
C = an.inst.frame.structure_constants
print("T|| = -[.,.]:", bool((pair.T_par.components == -C).all()))

# %% curvature: Levi-Civita versus adapted
for name in ("nabla", "nabla_tilde", "nabla_par", "nabla_tilde_par"):
    c = getattr(an.curvatures, name)
    print(f"{name:16s} tau = {c.tau!s:>4}  flat = {c.is_flat()}")

# %% sectional curvature of the phi-holomorphic plane span{E1, E2}
E = np.eye(3, dtype=int).astype(object)
rep = section_analysis(an.inst, an.curvatures, pair, E[1], E[2])
print(rep.section_type, "k =", rep.k, "k|| =", rep.k_par, "k~ =", rep.k_tilde, "k~|| =", rep.k_tilde_par)

# %% on a generic instance the relations still hold, with nothing vanishing
gen = analyze(random_instance(7, n=1))
print("generic class:", gen.membership.name, "|", gen.membership_tilde.name)
print("curvature relations hold:", all(r.holds for r in gen.curvature_relations))
print("h/v identities hold:", all(gen.hv.values()))
