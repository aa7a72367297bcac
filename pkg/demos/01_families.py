"""Building a family of cyclic cubics from a pair (f, g).

Run with ``python3 demos/01_families.py``.
"""

from __future__ import annotations

from cyclic_cubics import check_condition, get_family, instantiate, make_family, registry
from cyclic_cubics.intpoly import N as n

# %% The integrality condition: (f^3 + g^3 + 1)/(f g) must be a polynomial.
lam = check_condition(-(n**2), n**3 - 1)
print("lambda for (-n^2, n^3-1):", lam)

# %% A family carries its cubic, discriminant root and Galois matrix.
B = make_family(-(n**2), n**3 - 1, name="B_n")
print("a       =", B.a)
print("sqrt(D) =", B.sqrt_dp)
print("G       =", [[str(x) for x in row] for row in B.galois])

# %% Specializing at n gives an ordinary cubic.
for k in (-1, 2, 3):
    inst = instantiate(B, k)
    print(f"B_{k}: {inst.poly.to_str('X')}  (3a+lam^2 = {inst.value_3a_l2})")

# %% The named families, with their notes.
for name, pair in registry().items():
    notes = "; ".join(pair.notes) or "-"
    print(f"{name:12s} f={pair.f!s:8s} g={pair.g!s:12s} lambda={pair.lam!s:18s} {notes}")

# %% Shanks's family has f = 0, so lambda has to be supplied.
S = get_family("S_n")
print("S_n lambda override:", S.lambda_override, "->", instantiate(S, 5).poly.to_str("X"))
