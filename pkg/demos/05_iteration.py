"""The map (f, g) -> (g, (g^3 + 1)/f) turns one family into the next.

Run with ``python3 demos/05_iteration.py``.
"""

from __future__ import annotations

import math

from cyclic_cubics import get_family, iterate_chain

chain = iterate_chain(get_family("B_n"), 6)
for pair, ratio in zip(chain.families, chain.ratios):
    print(f"deg f = {pair.f.degree:4d}, deg g = {pair.g.degree:4d}, ratio {ratio:.6f}")
print("limit (3 + sqrt 5)/2 =", (3 + math.sqrt(5)) / 2)

for name, steps in (("L_n", 2), ("L_n", -3), ("K_n", -2)):
    c = iterate_chain(get_family(name), steps)
    print(name, steps, "->", [(str(p.f), str(p.g)) for p in c.families], c.stopped or "")
