"""Self-linking numbers of null-homologous knots.

A (p, q) curve on the Clifford torus with p even projects to a knot whose
two lifts are parallel torus curves, so its self-linking number is p*q.
Knots inside one affine chart always give zero.
"""
from rp3link import RunConfig, oracle_selflink, samples, self_linking
from rp3link.curves import random_curve

for p, q in [(2, 1), (2, 3), (4, 1), (2, 5)]:
    k = samples.torus_knot(p, q, 60)
    rep = self_linking(k, RunConfig(trials=3))
    print(f"torus ({p},{q}): sl={rep.sl} (included {len(rep.included)}, "
          f"excluded {len(rep.excluded)}), oracle {oracle_selflink(k)}")

for name, k in [("affine unknot", samples.affine_unknot()),
                ("affine trefoil", samples.affine_trefoil())]:
    print(f"{name}: sl={self_linking(k).sl}")

values = [self_linking(random_curve(s, 24, 0, scale=4.0)).sl for s in range(12)]
print("random knots:", values)
