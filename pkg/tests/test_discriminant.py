from __future__ import annotations

import pytest
import sympy
from sympy.polys.numberfields.basis import round_two

from cyclic_cubics.discriminant import (
    Reason,
    ThreeStatus,
    _three_generic,
    decide_three,
    disc_Bn_closed_form,
    disc_if_squarefree,
    exceptional_resultant,
    ramified_primes,
    report_to_json,
)
from cyclic_cubics.errors import IncompleteFactorization
from cyclic_cubics.family import get_family, instantiate, registry

X = sympy.Symbol("X")


def field_discriminant(inst) -> int:
    """Independent oracle: sympy's round-two maximal order."""
    P = sum(c * X**i for i, c in enumerate(inst.poly.coeffs))
    return int(round_two(sympy.Poly(P, X))[1])


@pytest.mark.parametrize("name", list(registry()))
def test_against_round_two(name):
    p = registry()[name]
    for k in range(-15, 16):
        inst = instantiate(p, k)
        if not inst.irreducible:
            continue
        rep = ramified_primes(p, k)
        assert rep.D == field_discriminant(inst), (name, k)


def test_b_family_against_round_two_1_to_200():
    B = get_family("B_n")
    for k in range(1, 201):
        assert ramified_primes(B, k).D == field_discriminant(instantiate(B, k)), k


def test_spot_values():
    B = get_family("B_n")
    assert ramified_primes(B, 2).D == 13**2 * 79**2 == 1054729
    assert ramified_primes(B, 3).D == 81 * 79**2
    assert disc_Bn_closed_form(2) == 13**2 * 79**2
    assert disc_Bn_closed_form(3) == 81 * 79**2


def test_closed_form_agrees_with_general_algorithm():
    B = get_family("B_n")
    for k in range(1, 201):
        assert disc_Bn_closed_form(k) == ramified_primes(B, k).D, k


def test_squarefree_fast_path():
    B = get_family("B_n")
    assert disc_if_squarefree(B, 2) == 1027**2
    S = get_family("S_n")
    assert disc_if_squarefree(S, 5) is None  # 49


def test_exceptional_resultants():
    assert exceptional_resultant(get_family("B_n")) == -(5**3)
    assert exceptional_resultant(get_family("S_n")) == 1  # f^3 - 1 and g^3 - 1 are constants
    # -n^3 - 1 and (n-1)^3 - 1 share the root n = -w^2, so every split prime is exceptional
    assert exceptional_resultant(get_family("K_{-n,n-1}")) == 0


def test_reason_tags():
    rep = ramified_primes(get_family("B_n"), 2)
    assert {r.reason for r in rep.ramified} == {Reason.SQUAREFREE}
    rep = ramified_primes(get_family("S_n"), 5)  # 3a + lam^2 = 49 = 7^2
    assert [(r.p, r.reason) for r in rep.ramified] == [(7, Reason.SPLIT_NONCUBE)]
    rep = ramified_primes(get_family("K_{-n,n-1}"), -22)  # 3^4 * 13^2
    assert [(r.p, r.reason) for r in rep.ramified] == [(13, Reason.EXCEPTIONAL)]
    assert rep.D == 169


def test_three_rule_for_b_family_matches_generic():
    B = get_family("B_n")
    for k in range(-60, 61):
        if not instantiate(B, k).irreducible:
            continue
        generic = _three_generic(B, k)
        specific = decide_three(B, k)
        assert generic is ThreeStatus.UNDETERMINED or generic is specific
        assert specific is (ThreeStatus.RAMIFIED81 if k % 3 == 0 else ThreeStatus.UNRAMIFIED)


def test_three_without_kummer_can_be_undetermined():
    statuses = {
        decide_three(p, k, kummer=False)
        for p in registry().values()
        for k in range(-30, 31)
        if instantiate(p, k).irreducible
    }
    assert ThreeStatus.UNDETERMINED in statuses


def test_three_with_kummer_is_always_decided():
    for p in registry().values():
        for k in range(-30, 31):
            if instantiate(p, k).irreducible:
                assert decide_three(p, k) is not ThreeStatus.UNDETERMINED


def test_incomplete_factorization_raises():
    with pytest.raises(IncompleteFactorization):
        ramified_primes(get_family("B_n"), 10**6 + 1, trial_bound=10, rho_budget=1)


def test_reducible_raises():
    with pytest.raises(ValueError):
        ramified_primes(get_family("L_n"), 1)


def test_json_report():
    d = report_to_json(ramified_primes(get_family("B_n"), 2))
    assert d["D"] == "1054729"
    assert d["ramified"] == [{"p": 13, "reason": "squarefree"}, {"p": 79, "reason": "squarefree"}]
