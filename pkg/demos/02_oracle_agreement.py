"""Line counting against the double-cover oracle on random pairs.

The oracle lifts both curves to S^3, projects stereographically and counts
crossings in a planar diagram.  It shares nothing with the line counter
except the determinant and chart helpers.
"""
import sys
from collections import Counter

from rp3link import RunConfig, curves, linking_number, oracle_degree, samples

n = int(sys.argv[1]) if len(sys.argv) > 1 else 20
seen = Counter()
for seed in range(n):
    cls1, cls2 = divmod(seed % 4, 2)
    a, b = samples.random_pair(seed, 24, 32, cls1, cls2, scale=4.0)
    d = linking_number(a, b, RunConfig(seed=seed)).d
    ref = oracle_degree(a, b, seed)
    seen[d] += 1
    flag = "ok" if d == ref else "MISMATCH"
    print(f"seed {seed:3d} classes ({cls1},{cls2})  d={d:+d}  oracle={ref:+d}  {flag}")
    assert d % 2 == curves.homology_class(a) * curves.homology_class(b)
print("distribution of d:", dict(sorted(seen.items())))
