"""Arithmetic in Z[w], w a primitive cube root of unity.

Elements are ``u + v*w`` with ``w^2 = -1 - w``. The conjugate of
``u + v*w`` is ``(u - v) - v*w`` and the norm is ``u^2 - u v + v^2``.
Components are ints for a fixed parameter value or IntPolys for a whole
family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import mpmath

from .errors import NotDivisible, NotPrime, ZeroElement
from .family import CubicInstance, FamilyPair, galois_apply
from .intpoly import IntPoly
from .roots import DEFAULT_PRECISION, isolate_roots

__all__ = [
    "Eisenstein",
    "EisensteinElem",
    "EisensteinPolyElem",
    "Splitting",
    "beta",
    "alpha_symbolic",
    "alpha_forms",
    "alpha_numeric",
    "omega",
    "split_prime",
    "valuation",
    "is_prime",
]

Ring = Union[int, IntPoly]


@dataclass(frozen=True)
class Eisenstein:
    u: Ring
    v: Ring

    def __add__(self, o: Eisenstein | int) -> Eisenstein:
        o = _lift(o)
        return Eisenstein(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self) -> Eisenstein:
        return Eisenstein(-self.u, -self.v)

    def __sub__(self, o: Eisenstein | int) -> Eisenstein:
        return self + (-_lift(o))

    def __mul__(self, o: Eisenstein | Ring) -> Eisenstein:
        if not isinstance(o, Eisenstein):
            return Eisenstein(self.u * o, self.v * o)
        # (u + v w)(s + t w) = us - vt + (ut + vs - vt) w
        u, v, s, t = self.u, self.v, o.u, o.v
        vt = v * t
        return Eisenstein(u * s - vt, u * t + v * s - vt)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Eisenstein:
        if e < 0:
            raise ValueError("negative exponent")
        out = Eisenstein(1, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def conj(self) -> Eisenstein:
        return Eisenstein(self.u - self.v, -self.v)

    def norm(self) -> Ring:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def at(self, n: int) -> Eisenstein:
        """Specialize polynomial components at n."""
        return Eisenstein(_ev(self.u, n), _ev(self.v, n))

    def divides(self, x: Eisenstein) -> bool:
        try:
            x.exact_div(self)
        except NotDivisible:
            return False
        return True

    def exact_div(self, d: Eisenstein) -> Eisenstein:
        """self / d for integer components; NotDivisible when the quotient leaves Z[w]."""
        nd = d.norm()
        if nd == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        p = self * d.conj()
        qu, ru = divmod(p.u, nd)
        qv, rv = divmod(p.v, nd)
        if ru or rv:
            raise NotDivisible(f"{d} does not divide {self}")
        return Eisenstein(qu, qv)

    def to_complex(self):
        w = omega()
        return mpmath.mpf(self.u) + mpmath.mpf(self.v) * w

    def to_json(self) -> dict:
        return {"u": str(self.u), "v": str(self.v)}

    def __str__(self) -> str:
        return f"({self.u}) + ({self.v})w"


EisensteinElem = Eisenstein
EisensteinPolyElem = Eisenstein


def _lift(x) -> Eisenstein:
    return x if isinstance(x, Eisenstein) else Eisenstein(x, 0)


def _ev(x: Ring, n: int) -> int:
    return x(n) if isinstance(x, IntPoly) else x


def omega():
    """exp(2 pi i / 3) at the current mpmath precision."""
    return mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)


def beta(pair: FamilyPair) -> Eisenstein:
    """lam - 3f - 3w(f - g); its norm is 3a + lam^2."""
    b = Eisenstein(pair.lam - 3 * pair.f, -3 * (pair.f - pair.g))
    if b.norm() != pair.value_3a_l2:
        raise ArithmeticError(f"norm(beta) != 3a + lam^2 for {pair.label}")
    return b


def alpha_forms(pair: FamilyPair) -> tuple[Eisenstein, Eisenstein]:
    """The Kummer generator as (f+wg)^3 (3a+lam^2) beta and as (f+wg)^3 beta^2 conj(beta)."""
    b = beta(pair)
    fw3 = Eisenstein(pair.f, pair.g) ** 3
    return fw3 * b * pair.value_3a_l2, fw3 * b * b * b.conj()


def alpha_symbolic(pair: FamilyPair) -> Eisenstein:
    first, second = alpha_forms(pair)
    if first != second:
        raise ArithmeticError("the two expressions for the Kummer generator disagree")
    return first


def alpha_numeric(inst: CubicInstance, precision: int = DEFAULT_PRECISION, reverse: bool = False):
    """(theta + w G(theta) + w^2 G^2(theta))^3 from the numerically isolated roots.

    With ``reverse`` the orbit is walked as (theta, G^2 theta, G theta),
    which yields the complex conjugate.
    """
    roots = isolate_roots(inst, precision)
    with mpmath.workprec(roots.precision_bits):
        t1 = roots.theta1
        t2 = galois_apply(inst.family, inst.n, t1)
        t3 = galois_apply(inst.family, inst.n, t2)
        if reverse:
            t2, t3 = t3, t2
        w = omega()
        return (t1 + w * t2 + w * w * t3) ** 3


def is_prime(p: int) -> bool:
    from .factoring import is_probable_prime

    return is_probable_prime(p)


class Splitting(Enum):
    INERT = "inert"
    SPLIT = "split"
    RAMIFIED3 = "ramified3"


@dataclass(frozen=True)
class PrimeDecomposition:
    p: int
    kind: Splitting
    pi: Eisenstein | None = None  # a prime of norm p when split

    def to_json(self) -> dict:
        out = {"p": self.p, "kind": self.kind.value}
        if self.pi is not None:
            out["pi"] = self.pi.to_json()
        return out


def split_prime(p: int) -> PrimeDecomposition:
    if p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 3:
        return PrimeDecomposition(3, Splitting.RAMIFIED3, Eisenstein(1, -1))  # 1 - w has norm 3
    if p % 3 == 2:
        return PrimeDecomposition(p, Splitting.INERT)
    # u^2 - uv + v^2 = p  <=>  (2u - v)^2 + 3v^2 = 4p, so 3v^2 <= 4p
    vmax = math.isqrt(4 * p // 3) + 1
    for v in range(1, vmax + 1):
        d = 4 * p - 3 * v * v
        if d < 0:
            break
        r = math.isqrt(d)
        if r * r == d and (v + r) % 2 == 0:
            return PrimeDecomposition(p, Splitting.SPLIT, Eisenstein((v + r) // 2, v))
    raise AssertionError(f"no element of norm {p} found")  # pragma: no cover


def valuation(x: Eisenstein, pi: Eisenstein) -> int:
    """Largest k with pi^k dividing x in Z[w]."""
    if x.is_zero():
        raise ZeroElement("valuation of zero")
    if pi.norm() <= 1:
        raise ValueError(f"{pi} is a unit")
    k = 0
    while True:
        try:
            x = x.exact_div(pi)
        except NotDivisible:
            return k
        k += 1
