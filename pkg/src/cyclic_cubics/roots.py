"""Real roots of X^3 + aX^2 + lam X - 1 to high precision.

The two critical points split the line into three monotone pieces, each
holding one root. Each root is bracketed exactly there and refined by a
bisection-safeguarded Newton iteration in mpmath. The result is ordered
along the Galois orbit: theta2 = G(theta1), theta3 = G(theta2).
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import PrecisionExhausted
from .family import CubicInstance, galois_apply

__all__ = ["RootTriple", "isolate_roots", "DEFAULT_PRECISION", "MAX_PRECISION"]

DEFAULT_PRECISION = 192
MAX_PRECISION = 1024


@dataclass(frozen=True)
class RootTriple:
    theta1: mpf
    theta2: mpf
    theta3: mpf
    precision_bits: int
    bracketed: bool  # theta1 found in (-a-1, -a+1) rather than as the most negative root

    def __iter__(self):
        return iter((self.theta1, self.theta2, self.theta3))


def _eval(a, lam, x):
    return ((x + a) * x + lam) * x - 1


def _deriv(a, lam, x):
    return (3 * x + 2 * a) * x + lam


def _refine(a, lam, lo, hi, prec):
    """Root of the cubic in [lo, hi], where it is monotone and changes sign."""
    flo = _eval(a, lam, lo)
    if flo == 0:
        return lo
    fhi = _eval(a, lam, hi)
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise PrecisionExhausted("lost the sign change while bracketing")
    increasing = fhi > 0
    x = (lo + hi) / 2
    tol = mpmath.ldexp(1, -prec + 6)
    for _ in range(8 * prec):
        fx = _eval(a, lam, x)
        if fx == 0:
            return x
        if (fx > 0) == increasing:
            hi = x
        else:
            lo = x
        d = _deriv(a, lam, x)
        step_ok = False
        if d != 0:
            nx = x - fx / d
            if lo < nx < hi:
                step_ok = True
        if not step_ok:
            nx = (lo + hi) / 2
        if abs(nx - x) <= tol * max(1, abs(x)):
            return nx
        x = nx
    raise PrecisionExhausted("root refinement did not converge")


def _residual_ok(a, lam, x, prec) -> bool:
    scale = abs(x) ** 3 + abs(a) * x**2 + abs(lam) * abs(x) + 1
    return abs(_eval(a, lam, x)) <= mpmath.ldexp(scale, -(prec // 2))


def _attempt(inst: CubicInstance, prec: int) -> RootTriple | None:
    a, lam = inst.a_val, inst.lambda_val
    with mpmath.workprec(prec):
        A, L = mpf(a), mpf(lam)
        crit_disc = A * A - 3 * L
        if crit_disc <= 0:
            raise PrecisionExhausted("cubic is not increasing-decreasing-increasing; no three real roots")
        sq = mpmath.sqrt(crit_disc)
        c1, c2 = (-A - sq) / 3, (-A + sq) / 3
        bound = mpf(1 + max(abs(a), abs(lam), 1))
        roots = [
            _refine(A, L, -bound, c1, prec),
            _refine(A, L, c1, c2, prec),
            _refine(A, L, c2, bound, prec),
        ]
        if not all(_residual_ok(A, L, r, prec) for r in roots):
            return None

        # P(-a-1) = -a^2 + o(a^2) and P(-a+1) = a^2 + o(a^2) once a dominates lam
        def p_exact(x: int) -> int:
            return ((x + a) * x + lam) * x - 1

        bracketed = p_exact(-a - 1) < 0 < p_exact(-a + 1)
        if bracketed:
            t1 = next((r for r in roots if -a - 1 < r < -a + 1), None)
            if t1 is None:
                bracketed = False
        if not bracketed:
            t1 = roots[0]
        img = galois_apply(inst.family, inst.n, t1)
        rest = [r for r in roots if r is not t1]
        t2 = min(rest, key=lambda r: abs(r - img))
        t3 = next(r for r in rest if r is not t2)
        tol = mpmath.ldexp(1, -(prec // 3))
        if abs(t2 - img) > tol * max(1, abs(t2)):
            return None
        img2 = galois_apply(inst.family, inst.n, t2)
        if abs(t3 - img2) > tol * max(1, abs(t3)):
            return None
        if abs(t1 * t2 * t3 - 1) > tol:
            return None
        return RootTriple(t1, t2, t3, prec, bracketed)


def isolate_roots(inst: CubicInstance, precision: int = DEFAULT_PRECISION,
                  max_precision: int = MAX_PRECISION) -> RootTriple:
    """Roots of an irreducible instance, doubling the precision until the residual checks pass."""
    if not inst.irreducible:
        raise ValueError(f"{inst} is reducible")
    prec = precision
    while prec <= max_precision:
        res = _attempt(inst, prec)
        if res is not None:
            return res
        prec *= 2
    raise PrecisionExhausted(f"roots of {inst} not resolved at {max_precision} bits")
