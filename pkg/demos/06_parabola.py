"""Square discriminants in the (a, lambda) plane, and the parabola among them.

Run with ``python3 demos/06_parabola.py``; the CSV goes to stdout.
"""

from __future__ import annotations

import sys

from cyclic_cubics.cli import main

# same as: cyclic-cubics plotscan --a-range=-120..0 --lambda-range 0..110
main(["plotscan", "--a-range=-120..0", "--lambda-range", "0..110"], out=sys.stdout)
print("# parabola points (-n^2+2n-6, n^2+5):", [(-k * k + 2 * k - 6, k * k + 5) for k in range(2, 11)],
      file=sys.stderr)
