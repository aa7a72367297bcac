"""From a cubic to a point on W, and from there to X(3).

Run with ``python3 demos/02_surface.py``.
"""

from __future__ import annotations

from cyclic_cubics import X3Point, family_to_w, get_family, projective_eq, w_to_x3
from cyclic_cubics.surface import reconstruct_from_cubic

for name in ("S_n", "L_n", "K_n", "B_n"):
    pair = get_family(name)
    w = family_to_w(pair)
    q = w_to_x3(w)
    same = projective_eq(q, X3Point(pair.f, pair.g, 1, pair.lam))
    print(f"{name}: W = [{w.a} : {w.b} : 1; {w.lam}]")
    print(f"     X(3) = [{q.x} : {q.y} : {q.z}]  equals [f : g : 1]? {same}")

# %% Going back: any cubic with square discriminant gives a point (f, g, h).
print("B_2 from its coefficients:", reconstruct_from_cubic(309, -10))
