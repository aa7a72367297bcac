"""Field discriminants of the cubics at a fixed parameter value.

Only primes dividing ``sqrt(D_P) = (f - g)(3a + lam^2)`` can ramify, and a
prime p != 3 that ramifies contributes exactly p^2 (3 contributes 3^4).
Lifting to Q(w), the field becomes Q(w, alpha^(1/3)) with Kummer generator
``alpha = (f + wg)^3 beta^2 conj(beta)``, so a prime of Z[w] ramifies
exactly when it divides alpha to a power that is not a multiple of 3.
From this:

* p = 2 mod 3 is inert in Z[w] and never ramifies;
* p = 1 mod 3 not dividing res(f^3 - 1, g^3 - 1) ramifies iff it divides
  the cubefree part b of 3a + lam^2 = b c^3;
* the finitely many p = 1 mod 3 dividing that resultant are settled by
  computing valuations of beta directly;
* p = 3 is decided from P mod 3 and an Eisenstein test, with an exact
  rule for the (-n^2, n^3 - 1) family; anything left over goes to a
  congruence test on alpha modulo powers of 1 - w.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from .eisenstein import Eisenstein, beta, split_prime, valuation
from .errors import IncompleteFactorization, ZeroInput
from .factoring import (
    DEFAULT_RHO_BUDGET,
    DEFAULT_TRIAL_BOUND,
    Factorization,
    cubefree_decompose,
    factor,
)
from .family import FamilyPair, get_family, instantiate
from .intpoly import IntPoly, N, resultant

__all__ = [
    "Reason",
    "ThreeStatus",
    "RamifiedPrime",
    "DiscriminantReport",
    "factor_3a_l2",
    "disc_if_squarefree",
    "decide_three",
    "ramified_primes",
    "disc_Bn_closed_form",
    "exceptional_resultant",
    "report_to_json",
]

B_FACTORS = (N**4 - 3 * N + 3, N**4 + 3 * N**3 + 6 * N**2 + 6 * N + 3)


class Reason(str, Enum):
    SQUAREFREE = "squarefree"
    SPLIT_NONCUBE = "split-noncube"
    EXCEPTIONAL = "exceptional-valuation"


class ThreeStatus(str, Enum):
    UNRAMIFIED = "unramified"
    RAMIFIED81 = "ramified81"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class RamifiedPrime:
    p: int
    reason: Reason


@dataclass(frozen=True)
class DiscriminantReport:
    n: int
    value_3a_l2: int
    factorization: Factorization
    cubefree_b: int
    cube_c: int
    ramified: tuple[RamifiedPrime, ...]
    unramified: tuple[int, ...]
    three_status: ThreeStatus
    D: Optional[int]
    exceptional: tuple[int, ...] = ()

    @property
    def ramified_primes(self) -> list[int]:
        ps = [r.p for r in self.ramified]
        if self.three_status is ThreeStatus.RAMIFIED81:
            ps = sorted(ps + [3])
        return ps

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factorization.factors)


def _merge(facs: list[Factorization]) -> Factorization:
    exps: dict[int, int] = {}
    sign, cof = 1, 1
    for fac in facs:
        sign *= fac.sign
        cof *= fac.cofactor
        for p, e in fac.factors:
            exps[p] = exps.get(p, 0) + e
    return Factorization(tuple(sorted(exps.items())), sign, cof)


def factor_3a_l2(pair: FamilyPair, n: int, trial_bound: int = DEFAULT_TRIAL_BOUND,
                 rho_budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    """Factor 3a + lam^2 at n, one known polynomial factor at a time when the family has them."""
    polys = pair.factors_3a_l2 or (pair.value_3a_l2,)
    vals = [p(n) for p in polys]
    if any(v == 0 for v in vals):
        raise ValueError(f"3a + lam^2 vanishes at n={n}")
    return _merge([factor(v, trial_bound, rho_budget) for v in vals])


def _require_irreducible(pair: FamilyPair, n: int):
    inst = instantiate(pair, n)
    if not inst.irreducible:
        raise ValueError(f"{pair.label} is reducible at n={n}")
    return inst


def disc_if_squarefree(pair: FamilyPair, n: int, **budget) -> Optional[int]:
    """(3a + lam^2)^2 when 3a + lam^2 is squarefree at n, else None."""
    inst = _require_irreducible(pair, n)
    fac = factor_3a_l2(pair, n, **budget)
    if not fac.complete:
        raise IncompleteFactorization(f"3a+lam^2 at n={n}: unfactored part {fac.cofactor}")
    if all(e == 1 for _, e in fac.factors):
        return inst.value_3a_l2**2
    return None


@lru_cache(maxsize=64)
def _exceptional_resultant_cached(f: IntPoly, g: IntPoly) -> int:
    try:
        return resultant(f**3 - 1, g**3 - 1)
    except ZeroInput:
        return 0


def exceptional_resultant(pair: FamilyPair) -> int:
    """res(f^3 - 1, g^3 - 1); 0 means no finite exceptional set is available."""
    return _exceptional_resultant_cached(pair.f, pair.g)


def _is_b_family(pair: FamilyPair) -> bool:
    b = get_family("B_n")
    return pair.same_pair(b) and pair.lam == b.lam


def _eisenstein_at_3(a: int, lam: int, shift: int) -> bool:
    c2 = 3 * shift + a
    c1 = 3 * shift * shift + 2 * a * shift + lam
    c0 = ((shift + a) * shift + lam) * shift - 1
    return c2 % 3 == 0 and c1 % 3 == 0 and c0 % 3 == 0 and c0 % 9 != 0


LAMBDA3 = Eisenstein(1, -1)  # 1 - w, the prime above 3


def _kummer_ramified_at_3(pair: FamilyPair, n: int) -> bool:
    """Ramification of 1 - w in Q(w, alpha^(1/3)), which matches that of 3 in the cubic field.

    With alpha a (1-w)-unit, the extension is unramified at 1 - w exactly when
    alpha is congruent to a cube modulo (1 - w)^3.
    """
    f, g, lam = pair.f(n), pair.g(n), pair.lam(n)
    b = Eisenstein(lam - 3 * f, -3 * (f - g))
    alpha = Eisenstein(f, g) ** 3 * b * b * b.conj()
    v = valuation(alpha, LAMBDA3)
    if v % 3:
        return True
    unit = alpha.exact_div(LAMBDA3**v)
    # residues mod 9 cover Z[w] / (1-w)^3, since 9 is (1-w)^4 up to a unit
    for s in range(9):
        for t in range(9):
            d = Eisenstein(s, t) ** 3 - unit
            if d.is_zero() or valuation(d, LAMBDA3) >= 3:
                return False
    return True


def decide_three(pair: FamilyPair, n: int, kummer: bool = True) -> ThreeStatus:
    """Whether 3 ramifies at n. With ``kummer=False`` the answer may be UNDETERMINED."""
    a, lam = pair.a(n), pair.lam(n)
    v = 3 * a + lam * lam
    if v % 3:
        return ThreeStatus.UNRAMIFIED
    if _is_b_family(pair):
        # 3 | D_P <=> 3 | n <=> v_3(3a+lam^2) = 2 <=> 3 | b, and then P(X+1) is 3-Eisenstein
        return ThreeStatus.RAMIFIED81 if n % 3 == 0 else ThreeStatus.UNRAMIFIED
    # a totally ramified 3 forces P = (X - r)^3 = X^3 - r mod 3, i.e. r = 1 and 3 | a, 3 | lam
    if a % 3 or lam % 3:
        return ThreeStatus.UNRAMIFIED
    if any(_eisenstein_at_3(a, lam, s) for s in (1, 4, 7)):
        return ThreeStatus.RAMIFIED81
    if kummer:
        return ThreeStatus.RAMIFIED81 if _kummer_ramified_at_3(pair, n) else ThreeStatus.UNRAMIFIED
    return ThreeStatus.UNDETERMINED


def _three_generic(pair: FamilyPair, n: int) -> ThreeStatus:
    """decide_three without the family-specific rule; used to cross-check it."""
    a, lam = pair.a(n), pair.lam(n)
    if (3 * a + lam * lam) % 3 or a % 3 or lam % 3:
        return ThreeStatus.UNRAMIFIED
    if any(_eisenstein_at_3(a, lam, s) for s in (1, 4, 7)):
        return ThreeStatus.RAMIFIED81
    return ThreeStatus.UNDETERMINED


def _alpha_valuation_mod3(beta_n: Eisenstein, p: int) -> int:
    """v_pi(alpha) mod 3 for a prime pi above the split prime p; (f+wg)^3 drops out."""
    pi = split_prime(p).pi
    v1 = valuation(beta_n, pi)
    v2 = valuation(beta_n, pi.conj())
    return (2 * v1 + v2) % 3


def ramified_primes(pair: FamilyPair, n: int, trial_bound: int = DEFAULT_TRIAL_BOUND,
                    rho_budget: int = DEFAULT_RHO_BUDGET, kummer: bool = True) -> DiscriminantReport:
    inst = _require_irreducible(pair, n)
    value = inst.value_3a_l2
    fac = factor_3a_l2(pair, n, trial_bound, rho_budget)
    if not fac.complete:
        raise IncompleteFactorization(f"3a+lam^2 at n={n}: unfactored part {fac.cofactor}")
    b, c = cubefree_decompose(fac)
    squarefree = all(e == 1 for _, e in fac.factors)
    res = exceptional_resultant(pair)
    beta_n = beta(pair).at(n)

    ramified: list[RamifiedPrime] = []
    unramified: list[int] = []
    exceptional: list[int] = []
    for p, e in fac.factors:
        if p == 3:
            continue
        if p % 3 == 2:
            unramified.append(p)
        elif squarefree:
            ramified.append(RamifiedPrime(p, Reason.SQUAREFREE))
        elif res == 0 or res % p == 0:
            exceptional.append(p)
            if _alpha_valuation_mod3(beta_n, p):
                ramified.append(RamifiedPrime(p, Reason.EXCEPTIONAL))
            else:
                unramified.append(p)
        elif e % 3:
            ramified.append(RamifiedPrime(p, Reason.SPLIT_NONCUBE))
        else:
            unramified.append(p)

    three = decide_three(pair, n, kummer=kummer)
    D: Optional[int] = None
    if three is not ThreeStatus.UNDETERMINED:
        D = 81 if three is ThreeStatus.RAMIFIED81 else 1
        for r in ramified:
            D *= r.p**2
    return DiscriminantReport(
        n=n,
        value_3a_l2=value,
        factorization=fac,
        cubefree_b=b,
        cube_c=c,
        ramified=tuple(ramified),
        unramified=tuple(unramified),
        three_status=three,
        D=D,
        exceptional=tuple(exceptional),
    )


def disc_Bn_closed_form(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND,
                        rho_budget: int = DEFAULT_RHO_BUDGET) -> int:
    """81^delta * prod p^2 over p = 1 mod 3 dividing the cubefree part b, delta = [3 | b]."""
    fac = _merge([factor(p(n), trial_bound, rho_budget) for p in B_FACTORS])
    b, _ = cubefree_decompose(fac)
    D = 81 if b % 3 == 0 else 1
    for p, _ in fac.factors:
        if p % 3 == 1 and b % p == 0:
            D *= p * p
    return D


def report_to_json(rep: DiscriminantReport) -> dict:
    return {
        "n": rep.n,
        "value_3a_l2": str(rep.value_3a_l2),
        "factorization": str(rep.factorization),
        "cubefree_b": str(rep.cubefree_b),
        "cube_c": str(rep.cube_c),
        "ramified": [{"p": r.p, "reason": r.reason.value} for r in rep.ramified],
        "unramified": list(rep.unramified),
        "exceptional": list(rep.exceptional),
        "three_status": rep.three_status.value,
        "D": str(rep.D) if rep.D is not None else "undetermined",
    }
