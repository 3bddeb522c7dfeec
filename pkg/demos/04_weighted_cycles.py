"""Linking of weighted multi-component cycles.

A side is a list of curves with integer weights; d adds up the pairwise
degrees with the product of the weights.
"""
from rp3link import RunConfig, linking_number, samples

a, b = samples.hopf_affine()
far = samples.affine_lift(a.vertices[:, 1:] / a.vertices[:, :1] + [4.0, 0, 0], "C")
cfg = RunConfig(trials=3)
for m in range(-2, 4):
    print(f"weight {m:+d} on A: d = {linking_number([a.with_weight(m)], [b], cfg).d}")
print("A + 3C against B:", linking_number([a, far.with_weight(3)], [b], cfg).d)
