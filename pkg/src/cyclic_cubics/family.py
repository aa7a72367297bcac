"""One-parameter families of cyclic cubics built from a pair (f, g).

When ``lam = (f^3 + g^3 + 1) / (f g)`` is a polynomial with integer
coefficients, the cubic

    P(X) = X^3 + a X^2 + lam X - 1,   a = 3(f^2 + g^2 - f g) - lam (f + g)

has square discriminant ``((f - g)(3a + lam^2))^2`` and its Galois group
acts on the roots through ``theta -> (f theta - 1) / ((f^2+g^2-fg) theta - g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    Degenerate,
    DegenerateDiscriminant,
    NotAFamily,
    NotDivisible,
    PoleHit,
    ZeroPivot,
)
from .intpoly import IntPoly, N, discriminant_poly, exact_div, parse

__all__ = [
    "FamilyPair",
    "CubicInstance",
    "Chain",
    "check_condition",
    "make_family",
    "galois_apply",
    "verify_galois_symbolic",
    "instantiate",
    "iterate_forward",
    "iterate_backward",
    "iterate_chain",
    "registry",
    "get_family",
    "mat_mul",
    "mat_cube",
    "is_scalar_matrix",
    "family_to_json",
    "family_from_json",
]

Matrix = tuple[tuple[IntPoly, IntPoly], tuple[IntPoly, IntPoly]]

LAMBDA_ERRATUM_NOTE = (
    "lambda = n^3-4n, sometimes quoted for this pair, is wrong: exact division "
    "gives -n^4+3*n, which matches the X coefficient of the cubic and sqrt(D_P)"
)
UNIT_CERT_NOTE = "unit-index certificate inapplicable: needs f != 0 and deg f < deg g"


def _deg_key(p: IntPoly) -> int:
    return -1 if p.is_zero() else p.degree


def mat_mul(m1: Matrix, m2: Matrix) -> Matrix:
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_cube(m: Matrix) -> Matrix:
    return mat_mul(mat_mul(m, m), m)


def is_scalar_matrix(m: Matrix) -> bool:
    return m[0][1].is_zero() and m[1][0].is_zero() and m[0][0] == m[1][1]


@dataclass(frozen=True)
class FamilyPair:
    f: IntPoly
    g: IntPoly
    lam: IntPoly
    a: IntPoly
    sqrt_dp: IntPoly
    galois: Matrix
    lambda_override: Optional[IntPoly] = None
    name: Optional[str] = None
    swapped: bool = False
    factors_3a_l2: Optional[tuple[IntPoly, ...]] = None
    notes: tuple[str, ...] = field(default=())

    @property
    def value_3a_l2(self) -> IntPoly:
        return 3 * self.a + self.lam**2

    @property
    def ordered(self) -> tuple[IntPoly, IntPoly]:
        """(f, g) in the order the caller supplied them."""
        return (self.g, self.f) if self.swapped else (self.f, self.g)

    @property
    def is_degenerate(self) -> bool:
        return (self.f * self.g).is_zero()

    @property
    def unit_certificate_applicable(self) -> bool:
        """The asymptotic unit-index argument needs f != 0 and deg f < deg g."""
        return not self.f.is_zero() and self.f.degree < self.g.degree

    @property
    def label(self) -> str:
        return self.name or f"({self.f}, {self.g})"

    def same_pair(self, other: FamilyPair) -> bool:
        return self.f == other.f and self.g == other.g

    def cubic_at(self, n: int) -> IntPoly:
        return IntPoly((-1, self.lam(n), self.a(n), 1))


@dataclass(frozen=True)
class CubicInstance:
    n: int
    a_val: int
    lambda_val: int
    family: FamilyPair
    irreducible: bool

    @property
    def poly(self) -> IntPoly:
        """X^3 + a X^2 + lam X - 1 at this n, as a polynomial in X."""
        return IntPoly((-1, self.lambda_val, self.a_val, 1))

    @property
    def f_val(self) -> int:
        return self.family.f(self.n)

    @property
    def g_val(self) -> int:
        return self.family.g(self.n)

    @property
    def value_3a_l2(self) -> int:
        return 3 * self.a_val + self.lambda_val**2

    def __str__(self) -> str:
        return f"{self.family.label} at n={self.n}: {self.poly.to_str('X')}"


def check_condition(f: IntPoly | int, g: IntPoly | int) -> IntPoly:
    """Return lam = (f^3 + g^3 + 1) / (f g), insisting on integer coefficients."""
    f, g = IntPoly.coerce(f), IntPoly.coerce(g)
    fg = f * g
    if fg.is_zero():
        raise Degenerate(f"f*g = 0 for (f, g) = ({f}, {g}); supply a lambda override")
    try:
        return exact_div(f**3 + g**3 + 1, fg)
    except NotDivisible as exc:
        raise NotAFamily(f"(f^3+g^3+1)/(fg) is not integral for (f, g) = ({f}, {g})") from exc


def make_family(
    f: IntPoly | int,
    g: IntPoly | int,
    override: IntPoly | int | None = None,
    *,
    name: str | None = None,
    factors: Sequence[IntPoly] | None = None,
    notes: Sequence[str] = (),
) -> FamilyPair:
    f, g = IntPoly.coerce(f), IntPoly.coerce(g)
    if f == g:
        raise DegenerateDiscriminant(f"f = g = {f}: the discriminant vanishes")
    if (f * g).is_zero():
        if override is None:
            raise Degenerate(f"f*g = 0 for (f, g) = ({f}, {g}); supply a lambda override")
        lam = IntPoly.coerce(override)
    else:
        if override is not None:
            raise NotAFamily("a lambda override is only accepted when f*g = 0")
        lam = check_condition(f, g)
    swapped = _deg_key(f) > _deg_key(g)
    if swapped:
        f, g = g, f

    s = f**2 + g**2 - f * g
    a = 3 * s - lam * (f + g)
    sqrt_dp = (f - g) * (3 * a + lam**2)
    galois: Matrix = ((f, IntPoly.const(-1)), (s, -g))

    if sqrt_dp**2 != discriminant_poly(a, lam):
        raise NotAFamily(f"square-discriminant identity fails for ({f}, {g}, lam={lam})")
    if not is_scalar_matrix(mat_cube(galois)):
        raise NotAFamily("Galois matrix does not have order 3")

    fac: tuple[IntPoly, ...] | None = None
    if factors is not None:
        fac = tuple(IntPoly.coerce(p) for p in factors)
        prod = IntPoly.const(1)
        for p in fac:
            prod = prod * p
        if prod != 3 * a + lam**2:
            raise ValueError("supplied factors do not multiply to 3a + lam^2")

    notes = tuple(notes)
    if f.is_zero() or f.degree >= g.degree:
        notes += (UNIT_CERT_NOTE,)
    return FamilyPair(
        f=f,
        g=g,
        lam=lam,
        a=a,
        sqrt_dp=sqrt_dp,
        galois=galois,
        lambda_override=IntPoly.coerce(override) if override is not None else None,
        name=name,
        swapped=swapped,
        factors_3a_l2=fac,
        notes=notes,
    )


def galois_apply(pair: FamilyPair, n: int, theta, matrix: Matrix | None = None):
    """Image of a root under the order-3 fractional linear map at parameter n."""
    (p, q), (r, s) = matrix or pair.galois
    den = r(n) * theta + s(n)
    if den == 0:
        raise PoleHit(f"pole of the Galois map at theta={theta}")
    return (p(n) * theta + q(n)) / den


def verify_galois_symbolic(pair: FamilyPair, n: int, matrix: Matrix | None = None) -> bool:
    """Exact check that P(G(X)) vanishes modulo P(X) after clearing denominators."""
    (p, q), (r, s) = matrix or pair.galois
    P = pair.cubic_at(n)
    num = IntPoly((q(n), p(n)))
    den = IntPoly((s(n), r(n)))
    a, lam = P.coeffs[2], P.coeffs[1]
    cleared = num**3 + a * num**2 * den + lam * num * den**2 - den**3
    try:
        exact_div(cleared, P)
    except NotDivisible:
        return False
    return True


def instantiate(pair: FamilyPair, n: int) -> CubicInstance:
    a_val, lam_val = pair.a(n), pair.lam(n)
    # monic with constant term -1: the only candidate rational roots are +-1
    irreducible = a_val + lam_val != 0 and a_val - lam_val - 2 != 0
    return CubicInstance(n=n, a_val=a_val, lambda_val=lam_val, family=pair, irreducible=irreducible)


def _iteration_step(F: IntPoly, G: IntPoly) -> tuple[IntPoly, IntPoly, IntPoly]:
    """(F, G) -> (G, K, lam') with K = (G^3+1)/F and lam' = (F^3 + (G^3+1)^2)/(F^2 G)."""
    if F.is_zero() or G.is_zero():
        raise ZeroPivot(f"zero pivot in ({F}, {G})")
    K = exact_div(G**3 + 1, F)
    lam_new = exact_div(F**3 + (G**3 + 1) ** 2, F**2 * G)
    return G, K, lam_new


def _rebuild(f: IntPoly, g: IntPoly, lam: IntPoly, name: str | None, notes: tuple[str, ...]) -> FamilyPair:
    if (f * g).is_zero():
        return make_family(f, g, override=lam, name=name, notes=notes)
    pair = make_family(f, g, name=name, notes=notes)
    if pair.lam != lam:  # pragma: no cover - would contradict the closure identity
        raise NotAFamily("iterated lambda disagrees with the integrality quotient")
    return pair


def iterate_forward(pair: FamilyPair) -> FamilyPair:
    """(f, g) -> (g, (g^3 + 1)/f)."""
    if pair.is_degenerate:
        raise ZeroPivot(f"{pair.label} has f*g = 0; the iteration stops here")
    g, k, lam = _iteration_step(pair.f, pair.g)
    name = f"{pair.name}>" if pair.name else None
    return _rebuild(g, k, lam, name, (f"forward image of {pair.label}",))


def iterate_backward(pair: FamilyPair) -> FamilyPair:
    """(f, g) -> ((f^3 + 1)/g, f)."""
    if pair.is_degenerate:
        raise ZeroPivot(f"{pair.label} has f*g = 0; the iteration stops here")
    f, k, lam = _iteration_step(pair.g, pair.f)
    name = f"<{pair.name}" if pair.name else None
    return _rebuild(k, f, lam, name, (f"backward image of {pair.label}",))


@dataclass(frozen=True)
class Chain:
    families: tuple[FamilyPair, ...]
    ratios: tuple[float | None, ...]
    stopped: str | None = None

    def degrees(self) -> list[tuple[int | None, int | None]]:
        return [(p.f.degree, p.g.degree) for p in self.families]


def _ratio(pair: FamilyPair) -> float | None:
    df = pair.f.degree
    if not df:
        return None
    return pair.g.degree / df


def iterate_chain(pair: FamilyPair, steps: int) -> Chain:
    """Iterate forwards (steps > 0) or backwards (steps < 0), stopping at a zero pivot."""
    step = iterate_forward if steps >= 0 else iterate_backward
    fams = [pair]
    stopped = None
    for _ in range(abs(steps)):
        try:
            fams.append(step(fams[-1]))
        except ZeroPivot as exc:
            stopped = str(exc)
            break
    return Chain(tuple(fams), tuple(_ratio(p) for p in fams), stopped)


def _build_registry() -> dict[str, FamilyPair]:
    n = N
    return {
        "S_n": make_family(0, -1, override=n, name="S_n", factors=[n**2 + 3 * n + 9],
                           notes=("lambda = n chosen for the 0/0 case",)),
        "L_n": make_family(-1, -n, name="L_n", factors=[n**2 + 3, n**2 - 3 * n + 3]),
        "K_n": make_family(-n, -(n**2) - n - 1, name="K_n", factors=[n**2 + 3, n**4 + n**3 + 4 * n**2 + 3]),
        "K'_n": make_family(-n, n**3 - 1, name="K'_n"),
        "B_n": make_family(-(n**2), n**3 - 1, name="B_n",
                           factors=[n**4 - 3 * n + 3, n**4 + 3 * n**3 + 6 * n**2 + 6 * n + 3],
                           notes=(LAMBDA_ERRATUM_NOTE,)),
        "K_{-n,n-1}": make_family(-n, n - 1, name="K_{-n,n-1}",
                                  notes=("lambda = 3; the roots always have index 3 in the full unit group",)),
    }


_REGISTRY: dict[str, FamilyPair] | None = None


def registry() -> dict[str, FamilyPair]:
    """The named families, each validated on construction."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build_registry()
    return dict(_REGISTRY)


_ALIASES = {"S": "S_n", "L": "L_n", "K": "K_n", "K'": "K'_n", "Kp": "K'_n", "Kprime": "K'_n",
            "B": "B_n", "K_{-n,n-1}": "K_{-n,n-1}", "Kneg": "K_{-n,n-1}"}


def get_family(name: str) -> FamilyPair:
    reg = registry()
    key = name if name in reg else _ALIASES.get(name, name)
    try:
        return reg[key]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(reg)}") from None


def family_to_json(pair: FamilyPair) -> dict:
    out: dict = {}
    if pair.name:
        out["name"] = pair.name
    out.update(
        f=str(pair.f),
        g=str(pair.g),
        **{"lambda": str(pair.lam)},
        a=str(pair.a),
        sqrt_dp=str(pair.sqrt_dp),
        galois=[[str(x) for x in row] for row in pair.galois],
        notes=list(pair.notes) + (["f and g swapped so that deg f <= deg g"] if pair.swapped else []),
    )
    return out


def family_from_json(d: dict) -> FamilyPair:
    """Rebuild and re-validate a family; lambda is trusted only as the f*g = 0 override."""
    f, g = parse(d["f"]), parse(d["g"])
    lam = parse(d["lambda"]) if "lambda" in d else None
    if (f * g).is_zero():
        pair = make_family(f, g, override=lam, name=d.get("name"))
    else:
        pair = make_family(f, g, name=d.get("name"))
        if lam is not None and lam != pair.lam:
            raise NotAFamily(f"stated lambda {lam} disagrees with computed {pair.lam}")
    return pair
