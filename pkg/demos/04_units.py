"""Certifying fundamental units with the regulator bound.

Run with ``python3 demos/04_units.py``.
"""

from __future__ import annotations

from cyclic_cubics import analyze_units, brute_force_index, get_family, instantiate, regulator_collision_check

B = get_family("B_n")

rep = analyze_units(B, 2)
print(f"B_2: R_P = {rep.R_P:.6f}, D = {rep.discriminant_used}, Cusick bound {rep.R_K_lower:.6f}")
print(f"     index <= {rep.index_bound}, verdict {rep.label}")

# %% The exception: B_{-1}. The bound allows index 3, and a search finds it.
rep = analyze_units(B, -1)
print(f"B_-1: bound {rep.index_bound} -> {rep.label}; brute force index =",
      brute_force_index(instantiate(B, -1), 10))

# %% The B_2 units do not appear among the older families.
print("collisions with S_n, L_n, K_n:", regulator_collision_check(analyze_units(B, 2)))
