from __future__ import annotations

import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_cubics.errors import Degenerate, DegenerateDiscriminant, NotAFamily, PoleHit, ZeroPivot
from cyclic_cubics.family import (
    LAMBDA_ERRATUM_NOTE,
    UNIT_CERT_NOTE,
    check_condition,
    family_from_json,
    family_to_json,
    galois_apply,
    get_family,
    instantiate,
    is_scalar_matrix,
    iterate_backward,
    iterate_chain,
    iterate_forward,
    make_family,
    mat_cube,
    registry,
    verify_galois_symbolic,
)
from cyclic_cubics.intpoly import IntPoly, N, discriminant_poly, parse
from cyclic_cubics.roots import isolate_roots

n = N


def test_registry_identities(named_family):
    p = named_family
    f, g, lam = p.f, p.g, p.lam
    assert p.a == 3 * (f**2 + g**2 - f * g) - lam * (f + g)
    assert discriminant_poly(p.a, lam) == (f - g) ** 2 * (3 * p.a + lam**2) ** 2
    assert is_scalar_matrix(mat_cube(p.galois))
    if not (f * g).is_zero():
        assert lam * f * g == f**3 + g**3 + 1


def test_galois_cube_is_scalar_minus_f_minus_g_cubed(named_family):
    cube = mat_cube(named_family.galois)
    d = named_family.f - named_family.g
    assert cube[0][0] == -(d**3)


@pytest.mark.parametrize("name, lam, value", [
    ("S_n", n, n**2 + 3 * n + 9),
    ("L_n", -(n**2), (n**2 + 3) * (n**2 - 3 * n + 3)),
    ("K_n", -(n**3) - 2 * n**2 - 3 * n - 3, (n**2 + 3) * (n**4 + n**3 + 4 * n**2 + 3)),
    ("B_n", -(n**4) + 3 * n, (n**4 - 3 * n + 3) * (n**4 + 3 * n**3 + 6 * n**2 + 6 * n + 3)),
    ("K_{-n,n-1}", IntPoly.const(3), None),
])
def test_table_columns(name, lam, value):
    p = get_family(name)
    assert p.lam == lam
    if value is not None:
        assert p.value_3a_l2 == value


def test_published_cubics():
    assert get_family("S_n").cubic_at(5) == parse("X^3+8*X^2+5*X-1", "X")
    L = get_family("L_n")
    assert L.a == -(n**3 - 2 * n**2 + 3 * n - 3)
    B = get_family("B_n")
    assert B.a == parse("n^7+2*n^6+3*n^5-n^4-3*n^3-3*n^2+3*n+3")
    assert B.sqrt_dp == -(n**3 + n**2 - 1) * (n**4 - 3 * n + 3) * (n**4 + 3 * n**3 + 6 * n**2 + 6 * n + 3)
    assert B.cubic_at(2) == parse("X^3+309*X^2-10*X-1", "X")
    assert B.cubic_at(-1) == parse("X^3-3*X^2-4*X-1", "X")


def test_lambda_erratum():
    B = get_family("B_n")
    assert LAMBDA_ERRATUM_NOTE in B.notes
    assert check_condition(-(n**2), n**3 - 1) == -(n**4) + 3 * n
    assert check_condition(-(n**2), n**3 - 1) != n**3 - 4 * n


def test_check_condition_rejects():
    with pytest.raises(NotAFamily):
        check_condition(n, n + 1)
    with pytest.raises(Degenerate):
        check_condition(0, n)


def test_make_family_errors():
    with pytest.raises(DegenerateDiscriminant):
        make_family(n, n)
    with pytest.raises(Degenerate):
        make_family(0, -1)
    with pytest.raises(NotAFamily):
        make_family(-1, -n, override=n)


def test_swap_canonicalizes_degrees():
    p = make_family(-(n**2) - n - 1, -n)
    assert p.swapped and p.f == -n
    assert p.same_pair(get_family("K_n"))


def test_unit_certificate_flag():
    assert not get_family("S_n").unit_certificate_applicable
    assert not get_family("K_{-n,n-1}").unit_certificate_applicable
    assert UNIT_CERT_NOTE in get_family("K_{-n,n-1}").notes
    for name in ("L_n", "K_n", "K'_n", "B_n"):
        assert get_family(name).unit_certificate_applicable


@pytest.mark.parametrize("k", [-7, -3, -1, 2, 5, 11])
def test_galois_symbolic(named_family, k):
    if instantiate(named_family, k).irreducible:
        assert verify_galois_symbolic(named_family, k)


def test_galois_orbit_numeric(named_family):
    for k in (-6, -2, 3, 7):
        inst = instantiate(named_family, k)
        if not inst.irreducible:
            continue
        r = isolate_roots(inst)
        with mpmath.workprec(r.precision_bits):
            t2 = galois_apply(named_family, k, r.theta1)
            t3 = galois_apply(named_family, k, t2)
            assert abs(t2 - r.theta2) < 1e-30 * max(1, abs(t2))
            assert abs(galois_apply(named_family, k, t3) - r.theta1) < 1e-25 * max(1, abs(r.theta1))


def test_galois_pole():
    S = get_family("S_n")
    # G(t) = (0*t - 1)/(1*t + 1) has its pole at t = -1
    with pytest.raises(PoleHit):
        galois_apply(S, 4, -1)


def test_reducible_instances_are_flagged():
    inst = instantiate(get_family("L_n"), 1)
    assert inst.poly(1) == 0
    assert not inst.irreducible
    with pytest.raises(ValueError):
        isolate_roots(inst)


@given(st.integers(-200, 200))
def test_irreducible_flag_matches_rational_roots(k):
    inst = instantiate(get_family("B_n"), k)
    P = inst.poly
    assert inst.irreducible == (P(1) != 0 and P(-1) != 0)


def test_forward_chains():
    assert iterate_forward(get_family("L_n")).same_pair(get_family("K'_n"))
    B = get_family("B_n")
    f1 = iterate_forward(B)
    assert f1.f == n**3 - 1 and f1.g == -(n**7) + 3 * n**4 - 3 * n
    chain = iterate_chain(B, 3)
    assert [p.g.degree for p in chain.families] == [3, 7, 18, 47]
    assert chain.families[3].g.leading_coeff == 1
    assert chain.families[2].g.leading_coeff == -1


def test_backward_chains():
    K = get_family("K_n")
    back = iterate_backward(K)
    assert back.same_pair(make_family(n - 1, -n))
    assert back.lam == 3
    assert not back.unit_certificate_applicable
    # two steps back return to K_n, reparametrized by n -> 1 - n
    again = iterate_backward(back)
    assert again.f == K.f.compose(1 - n) and again.g == K.g.compose(1 - n)
    B = get_family("B_n")
    bb = iterate_backward(B)
    assert bb.f == B.f.compose(-n) and bb.g == B.g.compose(-n)
    S = iterate_backward(get_family("L_n"))
    assert (S.f * S.g).is_zero()
    chain = iterate_chain(get_family("L_n"), -3)
    assert len(chain.families) == 2 and chain.stopped


def test_iteration_on_degenerate_raises():
    with pytest.raises(ZeroPivot):
        iterate_forward(get_family("S_n"))


def test_golden_ratio_limit():
    chain = iterate_chain(get_family("B_n"), 6)
    assert abs(chain.ratios[-1] - (3 + math.sqrt(5)) / 2) / ((3 + math.sqrt(5)) / 2) < 0.01


def test_json_round_trip(named_family):
    d = family_to_json(named_family)
    assert set(d) >= {"f", "g", "lambda", "a", "sqrt_dp", "galois", "notes"}
    back = family_from_json(d)
    assert back.same_pair(named_family) and back.lam == named_family.lam


def test_json_rejects_inconsistent_lambda():
    d = family_to_json(get_family("B_n"))
    d["lambda"] = "n^3-4*n"
    with pytest.raises(NotAFamily):
        family_from_json(d)


def test_registry_is_a_copy():
    r = registry()
    r.pop("S_n")
    assert "S_n" in registry()
