"""The Weierstrass surface W and the Hesse model X(3).

A cubic ``X^3 + aX^2 + lam X - 1`` with square discriminant ``b^2`` is a
point ``[a : b : 1; lam]`` on

    W:    b^2 c = 4a^3 + lam^2 a^2 c - 18 lam a c^2 - (4 lam^3 + 27) c^3

and the linear change of coordinates

    x = -lam a + b - 9c,   y = -lam a - b - 9c,   z = 6a + 2 lam^2 c

carries it onto ``X(3): x^3 + y^3 + z^3 = lam x y z``. Coordinates may be
plain ints (a fixed parameter value) or IntPolys (a whole family); the
same code handles both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import NonIntegralLambda, NotDivisible, OffSurface
from .family import FamilyPair
from .intpoly import IntPoly, exact_div

__all__ = [
    "WPoint",
    "X3Point",
    "GeneralizedCubic",
    "on_w",
    "on_x3",
    "projective_eq",
    "w_to_x3",
    "family_to_w",
    "x3_to_family",
    "reconstruct_from_cubic",
    "point_to_json",
]

Ring = Union[int, IntPoly]


@dataclass(frozen=True)
class WPoint:
    a: Ring
    b: Ring
    c: Ring
    lam: Ring

    @property
    def coords(self) -> tuple[Ring, Ring, Ring]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class X3Point:
    x: Ring
    y: Ring
    z: Ring
    lam: Ring

    @property
    def coords(self) -> tuple[Ring, Ring, Ring]:
        return (self.x, self.y, self.z)


def _is_zero(v: Ring) -> bool:
    return v == 0


def on_w(p: WPoint) -> bool:
    a, b, c, lam = p.a, p.b, p.c, p.lam
    lhs = b * b * c
    rhs = 4 * a**3 + lam**2 * a**2 * c - 18 * lam * a * c**2 - (4 * lam**3 + 27) * c**3
    return _is_zero(lhs - rhs)


def on_x3(p: X3Point) -> bool:
    return _is_zero(p.x**3 + p.y**3 + p.z**3 - p.lam * p.x * p.y * p.z)


def projective_eq(p: WPoint | X3Point, q: WPoint | X3Point) -> bool:
    """Equality of homogeneous coordinates by cross-multiplication, same lambda."""
    if type(p) is not type(q) or not _is_zero(p.lam - q.lam):
        return False
    u, v = p.coords, q.coords
    if all(_is_zero(t) for t in u) or all(_is_zero(t) for t in v):
        return False
    return all(_is_zero(u[i] * v[j] - u[j] * v[i]) for i in range(3) for j in range(i + 1, 3))


def w_to_x3(p: WPoint) -> X3Point:
    if not on_w(p):
        raise OffSurface(f"{p} is not on W")
    a, b, c, lam = p.a, p.b, p.c, p.lam
    q = X3Point(
        x=-lam * a + b - 9 * c,
        y=-lam * a - b - 9 * c,
        z=6 * a + 2 * lam**2 * c,
        lam=lam,
    )
    if not on_x3(q):  # pragma: no cover - the map is exact
        raise OffSurface("image is not on X(3)")
    return q


def family_to_w(pair: FamilyPair) -> WPoint:
    p = WPoint(a=pair.a, b=pair.sqrt_dp, c=IntPoly.const(1), lam=pair.lam)
    if not on_w(p):
        raise OffSurface(f"{pair.label} does not land on W")
    return p


@dataclass(frozen=True)
class GeneralizedCubic:
    """X^3 + (a_num/a_den) X^2 + lam X - 1 coming from an X(3) point [f : g : h; lam]."""

    f: Ring
    g: Ring
    h: Ring
    lam: Ring
    a_num: Ring
    a_den: Ring
    a: Optional[Ring]

    @property
    def integral(self) -> bool:
        """Integer coefficients, so the roots are algebraic integers (units, by the constant term)."""
        return self.a is not None

    def coefficients(self) -> tuple:
        """(X^2, X, 1) coefficients; the X^2 one is a Fraction when not integral at fixed n."""
        if self.a is not None:
            return (self.a, self.lam, -1)
        if isinstance(self.a_num, int):
            return (Fraction(self.a_num, self.a_den), self.lam, -1)
        return ((self.a_num, self.a_den), self.lam, -1)


def _try_div(num: Ring, den: Ring) -> Optional[Ring]:
    if isinstance(num, IntPoly) or isinstance(den, IntPoly):
        try:
            return exact_div(num, den)
        except NotDivisible:
            return None
    q, r = divmod(num, den)
    return None if r else q


def x3_to_family(f: Ring, g: Ring, h: Ring, lam: Ring | None = None) -> GeneralizedCubic:
    """Rebuild the cubic whose Galois action is [[f, -h], [(f^2+g^2-fg)/h, -g]]."""
    if any(_is_zero(t) for t in (f, g, h)):
        raise ValueError("reconstruction needs f*g*h != 0")
    s3 = f**3 + g**3 + h**3
    if lam is None:
        lam = _try_div(s3, f * g * h)
        if lam is None:
            raise NonIntegralLambda(f"(f^3+g^3+h^3)/(fgh) is not integral for ({f}, {g}, {h})")
    elif not _is_zero(s3 - lam * f * g * h):
        raise OffSurface(f"[{f} : {g} : {h}; {lam}] is not on X(3)")
    a_num = 3 * (f**2 + g**2 - f * g) - lam * h * (f + g)
    a_den = h**2
    return GeneralizedCubic(f=f, g=g, h=h, lam=lam, a_num=a_num, a_den=a_den, a=_try_div(a_num, a_den))


def reconstruct_from_cubic(a: int, lam: int) -> Optional[tuple[int, int, int]]:
    """Primitive X(3) triple (f, g, h) for X^3 + aX^2 + lam X - 1, if its discriminant is a nonzero square.

    The positive square root is used, so a pair comes back as (f, g) or as
    (g, f); both give the same cubic.
    """
    disc = 4 * a**3 + lam**2 * a**2 - 18 * lam * a - 4 * lam**3 - 27
    if disc <= 0:
        return None
    b = math.isqrt(disc)
    if b * b != disc:
        return None
    q = w_to_x3(WPoint(a, b, 1, lam))
    d = math.gcd(q.x, q.y, q.z)
    x, y, z = q.x // d, q.y // d, q.z // d
    if z < 0 or (z == 0 and (y < 0 or (y == 0 and x < 0))):
        x, y, z = -x, -y, -z
    return (x, y, z)


def point_to_json(p: WPoint | X3Point) -> dict:
    model = "W" if isinstance(p, WPoint) else "X3"
    return {"model": model, "coords": [str(t) for t in p.coords], "lambda": str(p.lam)}
