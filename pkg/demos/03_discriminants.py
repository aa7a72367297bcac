"""Field discriminants from the cubefree part of 3a + lambda^2.

Run with ``python3 demos/03_discriminants.py``.
"""

from __future__ import annotations

from cyclic_cubics import get_family, ramified_primes
from cyclic_cubics.discriminant import disc_Bn_closed_form, exceptional_resultant

B = get_family("B_n")
print("res(f^3-1, g^3-1) for B_n:", exceptional_resultant(B))

for k in range(1, 13):
    rep = ramified_primes(B, k)
    primes = ", ".join(f"{r.p} ({r.reason.value})" for r in rep.ramified) or "none"
    print(f"n={k:2d}  3a+lam^2 = {rep.factorization!s:22s} b={rep.cubefree_b:<12d} 3: {rep.three_status.value:10s}"
          f" ramified: {primes}")
    assert rep.D == disc_Bn_closed_form(k)

# %% A family whose exceptional set is infinite: every split prime is checked by valuation.
K = get_family("K_{-n,n-1}")
rep = ramified_primes(K, -22)
print("K_{-n,n-1} at n=-22:", rep.factorization, "-> D =", rep.D)
