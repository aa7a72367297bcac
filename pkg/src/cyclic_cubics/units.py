"""Regulators and fundamental-unit certificates for the cubic at fixed n.

The roots theta1, theta2 = G(theta1), theta3 = G(theta2) are units of norm
1. Their regulator R_P bounds the index of the group they generate:

    [E_K : E_P] = R_P / R_K <= R_P / ((1/16) log^2(D/4)),

using Cusick's lower bound for the regulator R_K of a totally real cubic
field of discriminant D. The index of a subgroup of the unit group of a
cyclic cubic field is a norm from Z[w], so it is never 2; any bound below
3 therefore proves that theta1, theta2 are fundamental units.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import mpmath

from .discriminant import ramified_primes
from .errors import DegenerateRoots, DomainError, IncompleteFactorization, OracleInconclusive, PrecisionExhausted
from .factoring import DEFAULT_RHO_BUDGET, DEFAULT_TRIAL_BOUND, is_squarefree
from .family import CubicInstance, FamilyPair, get_family, instantiate
from .intpoly import IntPoly, resultant
from .roots import DEFAULT_PRECISION, RootTriple, isolate_roots

__all__ = [
    "RootTriple",
    "isolate_roots",
    "Verdict",
    "UnitReport",
    "regulator_RP",
    "cusick_lower_bound",
    "index_verdict",
    "analyze_units",
    "brute_force_index",
    "DensityResult",
    "density_scan",
    "squarefree_at",
    "CollisionMatch",
    "regulator_collision_check",
    "default_collision_window",
    "asymptotic_index_ratio",
    "unit_report_to_json",
    "EPS_GUARD",
]

EPS_GUARD = 1e-9


class Verdict(str, Enum):
    FUNDAMENTAL = "fundamental"
    INDEX_AT_MOST = "index-at-most"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class UnitReport:
    n: int
    R_P: float
    R_K_lower: Optional[float]
    index_bound: Optional[int]
    verdict: Verdict
    discriminant_used: Optional[int]
    roots: Optional[RootTriple] = None
    family: str = ""

    @property
    def label(self) -> str:
        if self.verdict is Verdict.INDEX_AT_MOST:
            return f"IndexAtMost({self.index_bound})"
        return self.verdict.value


def _logs(roots: RootTriple):
    return [mpmath.log(abs(t)) for t in roots]


def regulator_RP(roots: RootTriple) -> mpmath.mpf:
    """|log|t1| log|t3| - log|t2|^2|, the covolume of the lattice of root units."""
    with mpmath.workprec(roots.precision_bits):
        tol = mpmath.ldexp(1, -(roots.precision_bits // 2))
        if any(abs(abs(t) - 1) < tol for t in roots):
            raise DegenerateRoots("a root has absolute value 1")
        l1, l2, l3 = _logs(roots)
        return abs(l1 * l3 - l2 * l2)


def cusick_lower_bound(D: int) -> mpmath.mpf:
    """(1/16) log^2(D/4), a lower bound for the regulator of a totally real cubic field."""
    if D <= 4:
        raise DomainError(f"the bound needs D > 4, got {D}")
    return mpmath.log(mpmath.mpf(D) / 4) ** 2 / 16


def index_verdict(R_P, R_K_lower, guard: float = EPS_GUARD) -> tuple[int, Verdict]:
    """Integer bound on [E_K : E_P] and the verdict it supports."""
    if R_K_lower <= 0:
        raise DomainError("lower regulator bound must be positive")
    bound = int(mpmath.floor(mpmath.mpf(R_P) / R_K_lower + guard))
    if bound < 3:
        # the index is a norm from Z[w]: 1, 3, 4, 7, ..., never 2
        return bound, Verdict.FUNDAMENTAL
    if bound == 3:
        return bound, Verdict.INDEX_AT_MOST
    return bound, Verdict.INCONCLUSIVE


def analyze_units(pair: FamilyPair, n: int, precision: int = DEFAULT_PRECISION,
                  trial_bound: int = DEFAULT_TRIAL_BOUND) -> UnitReport:
    inst = instantiate(pair, n)
    if not inst.irreducible:
        raise ValueError(f"{inst} is reducible")
    roots = isolate_roots(inst, precision)
    rp = regulator_RP(roots)
    D = ramified_primes(pair, n, trial_bound=trial_bound).D
    if D is None or D <= 4:
        return UnitReport(n, float(rp), None, None, Verdict.INCONCLUSIVE, D, roots, pair.label)
    rk = cusick_lower_bound(D)
    bound, verdict = index_verdict(rp, rk)
    return UnitReport(n, float(rp), float(rk), bound, verdict, D, roots, pair.label)


def asymptotic_index_ratio(rho: float) -> float:
    """Limit of R_P / R_K_lower when deg f = rho * deg g and n grows."""
    return (7 - 5 * rho + rho * rho) / (4 - 4 * rho + rho * rho)


# -- brute-force oracle ------------------------------------------------------


def _hnf_insert(basis: list[tuple[int, int]], v: tuple[int, int]) -> list[tuple[int, int]]:
    """Upper-triangular basis [(a, b), (0, d)] of the lattice spanned by basis + v."""
    rows = list(basis) + [v]
    # eliminate the first coordinate by repeated gcd steps
    pivot = (0, 0)
    rest = []
    for r in rows:
        if r[0] == 0:
            rest.append(r)
            continue
        if pivot[0] == 0:
            pivot = r
            continue
        g, x, y = _xgcd(pivot[0], r[0])
        new_pivot = (g, x * pivot[1] + y * r[1])
        other = (0, (r[0] // g) * pivot[1] - (pivot[0] // g) * r[1])
        pivot = new_pivot
        rest.append(other)
    d = 0
    for r in rest:
        d = math.gcd(d, r[1])
    if pivot[0] < 0:
        pivot = (-pivot[0], -pivot[1])
    if d:
        pivot = (pivot[0], pivot[1] % d)
    return [pivot, (0, d)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def brute_force_index(inst: CubicInstance, coeff_bound: int = 10, precision: int = DEFAULT_PRECISION,
                      max_denominator: int = 1000) -> int:
    """Index of <theta1, theta2> in the group generated by all small units found.

    Every x + y t + z t^2 with |x|, |y|, |z| <= coeff_bound is tested; the
    norm is exact (resultant with the minimal polynomial). Units are written
    in the basis of log-embeddings of theta1, theta2; their coordinates are
    snapped to rationals, and the index of Z^2 in the lattice they span is
    returned. This is a lower bound for the true index.
    """
    if not inst.irreducible:
        raise ValueError(f"{inst} is reducible")
    P = inst.poly
    roots = isolate_roots(inst, precision)
    snap_tol = mpmath.ldexp(1, -(roots.precision_bits // 3))
    with mpmath.workprec(roots.precision_bits):
        t1, t2, t3 = roots
        l1, l2, l3 = _logs(roots)
        det = l1 * l3 - l2 * l2
        if abs(det) < snap_tol:
            raise DegenerateRoots("root units are dependent")
        coords: list[tuple[Fraction, Fraction]] = []
        B = coeff_bound
        for x in range(-B, B + 1):
            for y in range(-B, B + 1):
                for z in range(-B, B + 1):
                    if y == 0 and z == 0:
                        continue  # rational integers: only +-1, which log-embed to 0
                    if (x, y, z) < (0, 0, 0) and (-x, -y, -z) >= (0, 0, 0):
                        continue  # e and -e embed identically
                    if abs(resultant(P, IntPoly((x, y, z)))) != 1:
                        continue
                    e1 = mpmath.log(abs(x + y * t1 + z * t1 * t1))
                    e2 = mpmath.log(abs(x + y * t2 + z * t2 * t2))
                    # solve c1*(l1, l2) + c2*(l2, l3) = (e1, e2)
                    c1 = (e1 * l3 - e2 * l2) / det
                    c2 = (l1 * e2 - l2 * e1) / det
                    pair = []
                    for c in (c1, c2):
                        fr = Fraction(mpmath.nstr(c, 40, strip_zeros=False)).limit_denominator(max_denominator)
                        if abs(c - mpmath.mpf(fr.numerator) / fr.denominator) > snap_tol:
                            raise OracleInconclusive(f"unit {(x, y, z)} is not a rational combination of the roots")
                        pair.append(fr)
                    coords.append((pair[0], pair[1]))
    den = 1
    for c1, c2 in coords:
        den = math.lcm(den, c1.denominator, c2.denominator)
    basis = [(den, 0), (0, den)]
    for c1, c2 in coords:
        basis = _hnf_insert(basis, (int(c1 * den), int(c2 * den)))
    covol = abs(basis[0][0] * basis[1][1])
    index, rem = divmod(den * den, covol)
    if rem:  # pragma: no cover - Z^2 is a sublattice by construction
        raise OracleInconclusive("non-integral index")
    return index


# -- squarefree density --------------------------------------------------------


@dataclass(frozen=True)
class DensityResult:
    count_squarefree: int
    count_total: int
    skipped: tuple[int, ...] = ()
    incomplete: tuple[int, ...] = field(default=())

    @property
    def fraction(self) -> Optional[float]:
        return self.count_squarefree / self.count_total if self.count_total else None


def squarefree_at(pair: FamilyPair, n: int, trial_bound: int = DEFAULT_TRIAL_BOUND,
                  rho_budget: int = DEFAULT_RHO_BUDGET) -> bool:
    """Squarefreeness of 3a + lam^2 at n, factor by factor when the family carries a factorization."""
    polys = pair.factors_3a_l2 or (pair.value_3a_l2,)
    vals = [abs(p(n)) for p in polys]
    if any(v == 0 for v in vals):
        raise ValueError(f"3a + lam^2 vanishes at n={n}")
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if math.gcd(vals[i], vals[j]) != 1:
                return False
    return all(is_squarefree(v, trial_bound, rho_budget) for v in vals)


def _scan_chunk(args) -> list[tuple[int, Optional[bool], bool]]:
    pair, ns, trial_bound, rho_budget = args
    out = []
    for n in ns:
        inst = instantiate(pair, n)
        if not inst.irreducible:
            out.append((n, None, False))
            continue
        try:
            out.append((n, squarefree_at(pair, n, trial_bound, rho_budget), False))
        except IncompleteFactorization:
            out.append((n, None, True))
    return out


def density_scan(pair: FamilyPair, n_range: Iterable[int], trial_bound: int = DEFAULT_TRIAL_BOUND,
                 rho_budget: int = DEFAULT_RHO_BUDGET, workers: int = 1) -> DensityResult:
    """How often 3a + lam^2 is squarefree over n_range; reducible n are skipped."""
    ns = list(n_range)
    if workers > 1 and len(ns) > 1:
        size = max(1, math.ceil(len(ns) / (4 * workers)))
        chunks = [(pair, ns[i:i + size], trial_bound, rho_budget) for i in range(0, len(ns), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = [r for part in ex.map(_scan_chunk, chunks) for r in part]
    else:
        rows = _scan_chunk((pair, ns, trial_bound, rho_budget))
    sf = sum(1 for _, s, _ in rows if s)
    total = sum(1 for _, s, _ in rows if s is not None)
    skipped = tuple(n for n, s, inc in rows if s is None and not inc)
    incomplete = tuple(n for n, s, inc in rows if inc)
    return DensityResult(sf, total, skipped, incomplete)


# -- regulator comparison ------------------------------------------------------


@dataclass(frozen=True)
class CollisionMatch:
    family: str
    n: int
    R_P: float
    difference: float


def default_collision_window() -> dict[str, range]:
    """S_n up to |n| = 150; L_n and K_n for |n| < 10."""
    return {"S_n": range(-150, 151), "L_n": range(-9, 10), "K_n": range(-9, 10)}


def regulator_collision_check(report: UnitReport | float, window: Mapping[str, Sequence[int]] | None = None,
                              tol: float = 1e-6, precision: int = DEFAULT_PRECISION,
                              families: Mapping[str, FamilyPair] | None = None) -> list[CollisionMatch]:
    """Instances in the window whose root regulator is within tol of the given one.

    ``report`` is a UnitReport or a bare R_P value. The default window is the
    finite range outside which Cusick's bound already rules out a collision
    with B_2; ``families`` maps window keys to pairs not in the registry.
    """
    window = window if window is not None else default_collision_window()
    matches = []
    if isinstance(report, UnitReport):
        target = regulator_RP(report.roots) if report.roots is not None else mpmath.mpf(report.R_P)
    else:
        target = mpmath.mpf(report)
    for name, ns in window.items():
        pair = families[name] if families and name in families else get_family(name)
        for n in ns:
            inst = instantiate(pair, n)
            if not inst.irreducible:
                continue
            try:
                rp = regulator_RP(isolate_roots(inst, precision))
            except (DegenerateRoots, PrecisionExhausted):
                continue
            diff = abs(rp - target)
            if diff <= tol:
                matches.append(CollisionMatch(name, n, float(rp), float(diff)))
    return matches


def unit_report_to_json(rep: UnitReport) -> dict:
    out = {
        "family": rep.family,
        "n": rep.n,
        "R_P": mpmath.nstr(mpmath.mpf(rep.R_P), 15),
        "R_K_lower": None if rep.R_K_lower is None else mpmath.nstr(mpmath.mpf(rep.R_K_lower), 15),
        "index_bound": rep.index_bound,
        "verdict": rep.label,
        "discriminant_used": None if rep.discriminant_used is None else str(rep.discriminant_used),
    }
    if rep.roots is not None:
        out["roots"] = [mpmath.nstr(t, 30) for t in rep.roots]
    return out
