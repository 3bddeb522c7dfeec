"""Two disjoint projective lines link with lk = 1/2.

Each line is drawn as an octagon of stored lifts whose lift path ends at the
antipode of its start (closure -1).  Any generic viewpoint sees an odd number
of lines meeting both curves, and the signed count is always the same.
"""
from rp3link import RunConfig, linking_number, samples

a, b = samples.lines(8)
rep = linking_number(a, b, RunConfig(seed=2, trials=12))
print(f"d = {rep.d}, lk = {rep.lk}")
print("degree per viewpoint:", rep.trial_degrees)

print("\ncrossings seen from the first viewpoint")
print("  edge_a      s  edge_b      u  sign   alpha    beta")
for c in rep.crossings:
    print(f"  {c.i:6d} {c.s:6.3f}  {c.j:6d} {c.u:6.3f}  {c.sign:+4d}  {c.alpha:+.3f}  {c.beta:+.3f}")
