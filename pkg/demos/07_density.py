"""How often is 3a + lambda^2 squarefree along B_n?

Run with ``python3 demos/07_density.py [N]``; the default N = 10000 takes
a few seconds.
"""

from __future__ import annotations

import sys

from cyclic_cubics import density_scan, get_family

top = int(sys.argv[1]) if len(sys.argv) > 1 else 10**4
res = density_scan(get_family("B_n"), range(1, top))
print(f"0 < n < {top}: {res.count_squarefree}/{res.count_total} squarefree = {res.fraction:.5f}")
