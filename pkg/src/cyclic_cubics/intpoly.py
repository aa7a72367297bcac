"""Dense univariate polynomials over the integers.

Coefficients are plain Python ints, so values never overflow. An
``IntPoly`` is immutable; coefficient ``i`` multiplies ``n**i``. The same
class is used for polynomials in the family parameter ``n`` and for the
cubic in ``X`` once ``n`` has been fixed -- the variable name only matters
for printing and parsing.

The degree of the zero polynomial is ``None``. It is deliberately not an
integer, so that degree formulas such as ``2*deg(g) - deg(f)`` blow up
instead of quietly returning nonsense.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NotDivisible, ParseError, ZeroInput

try:  # GMP multiplication is asymptotically faster than CPython's Karatsuba
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

__all__ = [
    "IntPoly",
    "N",
    "add",
    "sub",
    "mul",
    "exact_div",
    "evaluate",
    "resultant",
    "sylvester_resultant",
    "discriminant_poly",
    "cubic_discriminant_via_resultant",
    "gcd",
    "parse",
]

Coercible = Union["IntPoly", int]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


_KRONECKER_CUTOFF = 24


def _pack(coeffs: Sequence[int], width: int) -> int:
    """sum c_i * 2^(8*width*i) for nonnegative c_i < 2^(8*width)."""
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product coefficients via one big-integer multiplication (Kronecker substitution).

    Each output coefficient is bounded by ``max|a| * max|b| * min(len)``; a
    slot of twice that width holds it after adding a half-slot offset,
    which makes every packed digit nonnegative.
    """
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    half = 1 << (8 * width - 1)
    shift = half  # moves each coefficient of the product into [0, 2^(8*width))
    # (A+ - A-)(B+ - B-) with nonnegative packed parts
    ap = _pack([x if x > 0 else 0 for x in a], width)
    am = _pack([-x if x < 0 else 0 for x in a], width)
    bp = _pack([x if x > 0 else 0 for x in b], width)
    bm = _pack([-x if x < 0 else 0 for x in b], width)
    m = len(a) + len(b) - 1
    offset = _pack([shift] * m, width)
    c = int(_big(ap - am) * _big(bp - bm)) + offset
    raw = c.to_bytes(width * m, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") - shift for i in range(m)]


class IntPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        self._c = _strip(coeffs)

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, coeff: int = 1) -> IntPoly:
        return cls([0] * deg + [coeff])

    @staticmethod
    def coerce(x: Coercible) -> IntPoly:
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly((x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int | None:
        return len(self._c) - 1 if self._c else None

    @property
    def leading_coeff(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def content(self) -> int:
        """Non-negative gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self._c) if self._c else 0

    def primitive_part(self) -> IntPoly:
        c = self.content()
        if c == 0:
            return self
        if self.leading_coeff < 0:
            c = -c
        return IntPoly(x // c for x in self._c)

    # -- ring operations ------------------------------------------------

    def __add__(self, other: Coercible) -> IntPoly:
        try:
            o = IntPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-x for x in self._c)

    def __pos__(self) -> IntPoly:
        return self

    def __sub__(self, other: Coercible) -> IntPoly:
        try:
            o = IntPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coercible) -> IntPoly:
        return IntPoly.coerce(other) - self

    def __mul__(self, other: Coercible) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(x * other for x in self._c)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return IntPoly()
        if min(len(a), len(b)) > _KRONECKER_CUTOFF:
            return IntPoly(_kronecker_mul(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __floordiv__(self, other: Coercible) -> IntPoly:
        return exact_div(self, IntPoly.coerce(other))

    # -- comparison and hashing ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(("IntPoly", self._c))

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- evaluation and calculus ---------------------------------------

    def __call__(self, x):
        """Horner evaluation; ``x`` may be an int, an IntPoly, or an mpmath number."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self._c) if i)

    def compose(self, inner: Coercible) -> IntPoly:
        """Return ``self(inner(n))``."""
        inner = IntPoly.coerce(inner)
        acc = IntPoly()
        for c in reversed(self._c):
            acc = acc * inner + c
        return acc

    def shift(self, k: int) -> IntPoly:
        """``self(n + k)``."""
        return self.compose(IntPoly((k, 1)))

    def reduce_mod(self, m: int) -> IntPoly:
        return IntPoly(c % m for c in self._c)

    # -- text format ----------------------------------------------------

    def to_str(self, var: str = "n") -> str:
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(sign + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"IntPoly({self.to_str()!r})"


N = IntPoly((0, 1))


def add(p: Coercible, q: Coercible) -> IntPoly:
    return IntPoly.coerce(p) + q


def sub(p: Coercible, q: Coercible) -> IntPoly:
    return IntPoly.coerce(p) - q


def mul(p: Coercible, q: Coercible) -> IntPoly:
    return IntPoly.coerce(p) * IntPoly.coerce(q)


def evaluate(p: Coercible, n: int) -> int:
    return IntPoly.coerce(p)(n)


def exact_div(p: Coercible, q: Coercible) -> IntPoly:
    """Quotient ``d`` with ``p == q*d`` over the integers.

    Raises NotDivisible when the remainder is nonzero or some quotient
    coefficient is not an integer.
    """
    p, q = IntPoly.coerce(p), IntPoly.coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return IntPoly()
    dq = q.degree
    lq = q.leading_coeff
    rem = list(p.coeffs)
    if len(rem) - 1 < dq:
        raise NotDivisible(f"{p} is not divisible by {q}")
    quot = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        qc, r = divmod(c, lq)
        if r:
            raise NotDivisible(f"{p} is not divisible by {q} over the integers")
        quot[k - dq] = qc
        for j, y in enumerate(q.coeffs):
            rem[k - dq + j] -= qc * y
    if any(rem):
        raise NotDivisible(f"{p} is not divisible by {q}")
    d = IntPoly(quot)
    if q * d != p:  # pragma: no cover - guards the loop above
        raise NotDivisible("multiplication-back check failed")
    return d


def pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Remainder of ``lc(b)**(deg a - deg b + 1) * a`` on division by ``b``."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    if a.is_zero() or a.degree < b.degree:
        return a
    db, lb = b.degree, b.leading_coeff
    r = list(a.coeffs)
    e = a.degree - db + 1
    while len(r) - 1 >= db and any(r):
        k = len(r) - 1
        c = r[k]
        r = [lb * x for x in r]
        for j, y in enumerate(b.coeffs):
            r[k - db + j] -= c * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    out = IntPoly(r)
    return out * lb**e if e > 0 else out


def gcd(p: Coercible, q: Coercible) -> IntPoly:
    """Greatest common divisor over Z[n], normalized to a positive leading coefficient."""
    a, b = IntPoly.coerce(p), IntPoly.coerce(q)
    if a.is_zero():
        return b.primitive_part() * b.content() if b else b
    if b.is_zero():
        return a.primitive_part() * a.content()
    c = math.gcd(a.content(), b.content())
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_rem(a, b)
        a, b = b, r.primitive_part() if r else r
    return a.primitive_part() * c


def resultant(p: Coercible, q: Coercible) -> int:
    """Resultant via the subresultant remainder sequence."""
    A, B = IntPoly.coerce(p), IntPoly.coerce(q)
    if A.is_zero() or B.is_zero():
        raise ZeroInput("resultant of a zero polynomial")
    a, b = A.content(), B.content()
    A = IntPoly(x // a for x in A.coeffs)
    B = IntPoly(x // b for x in B.coeffs)
    t = a ** B.degree * b ** A.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    g = h = 1
    while B.degree > 0:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_rem(A, B)
        A = B
        if R.is_zero():
            return 0
        B = exact_div(R, g * h**delta)
        g = A.leading_coeff
        h = g**delta // h ** (delta - 1) if delta else h
    h_final = Fraction(B.leading_coeff) ** A.degree / Fraction(h) ** (A.degree - 1)
    assert h_final.denominator == 1
    return s * t * int(h_final)


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_resultant(p: Coercible, q: Coercible) -> int:
    """Resultant as the Sylvester determinant (fraction-free elimination)."""
    A, B = IntPoly.coerce(p), IntPoly.coerce(q)
    if A.is_zero() or B.is_zero():
        raise ZeroInput("resultant of a zero polynomial")
    m, k = A.degree, B.degree
    size = m + k
    a = list(reversed(A.coeffs))
    b = list(reversed(B.coeffs))
    rows = []
    for i in range(k):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - k - 1 - i))
    return _bareiss_det(rows)


def discriminant_poly(a: Coercible, lam: Coercible) -> IntPoly:
    """Discriminant of ``X^3 + a X^2 + lam X - 1`` as a polynomial in n."""
    a, lam = IntPoly.coerce(a), IntPoly.coerce(lam)
    return 4 * a**3 + lam**2 * a**2 - 18 * lam * a - 4 * lam**3 - 27


def cubic_discriminant_via_resultant(a: int, lam: int) -> int:
    """Same discriminant at fixed n, through -res_X(P, P')."""
    P = IntPoly((-1, lam, a, 1))
    return -resultant(P, P.derivative())


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+)\s*(?:\*\s*)?)?
        (?:([A-Za-z_]\w*)\s*(?:(?:\^|\*\*)\s*(\d+))?)?
        \s*""",
    re.VERBOSE,
)


def parse(text: str, var: str = "n") -> IntPoly:
    """Parse sparse signed terms such as ``"-n^4+3*n"``.

    The printer's output always parses back to the same polynomial, and a
    canonical string prints back to itself.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    coeffs: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        sign, num, name, exp = m.groups()
        if sign is None and not first:
            raise ParseError(f"missing sign before term at offset {pos} in {text!r}")
        if num is None and name is None:
            raise ParseError(f"empty term at offset {pos} in {text!r}")
        if name is not None and name != var:
            raise ParseError(f"unexpected variable {name!r} (expected {var!r})")
        if exp is not None and name is None:
            raise ParseError(f"exponent without variable in {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        d = 0 if name is None else (int(exp) if exp is not None else 1)
        coeffs[d] = coeffs.get(d, 0) + c
        pos = m.end()
        first = False
    top = max(coeffs) if coeffs else 0
    return IntPoly(coeffs.get(i, 0) for i in range(top + 1))


def coerce_seq(xs: Sequence[Coercible]) -> list[IntPoly]:
    return [IntPoly.coerce(x) for x in xs]
