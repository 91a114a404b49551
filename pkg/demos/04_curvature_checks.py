"""Curvature of the Fubini-Study metric and of the prolongation connections."""

import numpy as np

from killtensors.geomlab import fs_chart, run_battery, sphere_chart

f = fs_chart(1)
print("CP_1 scalar curvature at the origin:", round(f.scalar_curvature, 12))

f = fs_chart(2, [0.3, -0.2, 0.5, 0.1])
print("CP_2 Ricci / g:", np.round(f.ricci / f.metric, 12).diagonal())

s = sphere_chart(2, [0.4, -0.3])
print("S^2 Gaussian curvature:", round(s.scalar_curvature / 2, 12))

for space, n in [("sphere", 2), ("sphere", 3), ("cpn", 1), ("cpn", 2)]:
    print(f"\n{space} n={n}")
    for r in run_battery(space, n, samples=3, seed=1):
        print("  " + r.line())
