from __future__ import annotations

import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_cubics.eisenstein import (
    Eisenstein,
    Splitting,
    alpha_forms,
    alpha_numeric,
    alpha_symbolic,
    beta,
    omega,
    split_prime,
    valuation,
)
from cyclic_cubics.errors import NotDivisible, NotPrime, ZeroElement
from cyclic_cubics.family import get_family, instantiate
from cyclic_cubics.factoring import primes_up_to

elems = st.builds(Eisenstein, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))


def test_norm_multiplicative_500_pairs():
    rng = random.Random(3)
    for _ in range(500):
        x = Eisenstein(rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9))
        y = Eisenstein(rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9))
        assert (x * y).norm() == x.norm() * y.norm()


@given(elems, elems)
def test_ring_laws(x, y):
    assert x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()
    assert x * x.conj() == Eisenstein(x.norm(), 0)


@given(elems)
def test_complex_embedding(x):
    z = x.to_complex()
    assert abs(abs(z) ** 2 - x.norm()) < 1e-6 * max(1, x.norm())


def test_omega_is_a_cube_root_of_unity():
    w = Eisenstein(0, 1)
    assert w**3 == Eisenstein(1, 0)
    assert w * w == Eisenstein(-1, -1)
    assert abs(omega() ** 3 - 1) < 1e-14


def test_exact_div():
    x, y = Eisenstein(7, 3), Eisenstein(-2, 5)
    assert (x * y).exact_div(y) == x
    with pytest.raises(NotDivisible):
        Eisenstein(1, 0).exact_div(Eisenstein(1, -1))
    assert Eisenstein(1, -1).divides(Eisenstein(3, 0))


@pytest.mark.parametrize("p", [q for q in primes_up_to(400)])
def test_split_prime(p):
    d = split_prime(p)
    if p == 3:
        assert d.kind is Splitting.RAMIFIED3 and d.pi.norm() == 3
    elif p % 3 == 2:
        assert d.kind is Splitting.INERT and d.pi is None
    else:
        assert d.kind is Splitting.SPLIT and d.pi.norm() == p


def test_split_prime_rejects_composites():
    with pytest.raises(NotPrime):
        split_prime(91)


def test_valuation():
    pi = split_prime(7).pi
    x = pi**3 * pi.conj() * Eisenstein(2, 0)
    assert valuation(x, pi) == 3
    assert valuation(x, pi.conj()) == 1
    assert valuation(Eisenstein(9, 0), Eisenstein(1, -1)) == 4
    with pytest.raises(ZeroElement):
        valuation(Eisenstein(0, 0), pi)


def test_beta_norm(named_family):
    b = beta(named_family)
    assert b.norm() == 3 * named_family.a + named_family.lam**2


def test_alpha_forms_agree(named_family):
    first, second = alpha_forms(named_family)
    assert first == second
    assert alpha_symbolic(named_family) == first


@pytest.mark.parametrize("name", ["S_n", "L_n", "K_n", "B_n"])
@pytest.mark.parametrize("k", [-3, 2, 4])
def test_alpha_numeric_matches_symbolic(name, k):
    p = get_family(name)
    inst = instantiate(p, k)
    if not inst.irreducible:
        pytest.skip("reducible")
    exact = alpha_symbolic(p).at(k)
    with mpmath.workprec(256):
        num = alpha_numeric(inst, 256)
        rev = alpha_numeric(inst, 256, reverse=True)
        z = exact.to_complex()
        zbar = exact.conj().to_complex()
        scale = max(1, abs(z))
        # the orbit direction fixes alpha up to complex conjugation
        assert min(abs(num - z), abs(num - zbar)) < 1e-25 * scale
        assert abs(rev - mpmath.conj(num)) < 1e-25 * scale
