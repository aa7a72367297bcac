from __future__ import annotations

import itertools
import math

import mpmath
import numpy as np
import pytest

from cyclic_cubics.errors import DegenerateRoots, DomainError
from cyclic_cubics.family import get_family, instantiate, registry
from cyclic_cubics.roots import RootTriple, isolate_roots
from cyclic_cubics.units import (
    Verdict,
    analyze_units,
    asymptotic_index_ratio,
    brute_force_index,
    cusick_lower_bound,
    density_scan,
    index_verdict,
    regulator_collision_check,
    regulator_RP,
    unit_report_to_json,
)

B = get_family("B_n")
S = get_family("S_n")


def test_b2_root_bracket():
    inst = instantiate(B, 2)
    assert inst.poly(-310) == -93001 and inst.poly(-308) == 97943
    r = isolate_roots(inst)
    assert r.bracketed and -310 < r.theta1 < -308


@pytest.mark.parametrize("name", list(registry()))
def test_roots_residual_vieta_and_log_sum(name):
    p = registry()[name]
    for k in (-9, -2, 3, 8, 40):
        inst = instantiate(p, k)
        if not inst.irreducible:
            continue
        r = isolate_roots(inst)
        with mpmath.workprec(r.precision_bits):
            assert abs(r.theta1 * r.theta2 * r.theta3 - 1) < 1e-40
            assert abs(sum(mpmath.log(abs(t)) for t in r)) < 1e-40
            for t in r:
                assert abs(inst.poly(t)) < mpmath.mpf(2) ** (-r.precision_bits // 2) * max(1, abs(t) ** 3)


def test_regulator_b2():
    rep = analyze_units(B, 2)
    assert abs(rep.R_P - 24.733) < 1e-3
    assert rep.discriminant_used == 1027**2
    assert abs(rep.R_K_lower - 9.738) < 1e-3
    assert rep.index_bound == 2 and rep.verdict is Verdict.FUNDAMENTAL


def test_regulator_permutation_invariance():
    r = isolate_roots(instantiate(B, 7))
    base = regulator_RP(r)
    for perm in itertools.permutations(r):
        assert abs(regulator_RP(RootTriple(*perm, r.precision_bits, r.bracketed)) - base) < 1e-40


def test_regulator_degenerate_roots():
    one = mpmath.mpf(1)
    with pytest.raises(DegenerateRoots):
        regulator_RP(RootTriple(one, mpmath.mpf(2), mpmath.mpf(0.5), 192, False))


def test_shanks_regulator_asymptotic():
    k = 10**5
    rp = regulator_RP(isolate_roots(instantiate(S, k)))
    assert abs(rp / math.log(k) ** 2 - 1) < 0.05


def test_b_root_slopes():
    slopes = {}
    for k in (10**2, 10**3, 10**4):
        r = isolate_roots(instantiate(B, k))
        slopes[k] = [float(mpmath.log(abs(t)) / math.log(k)) for t in r]
    final = slopes[10**4]
    for got, want in zip(final, (7, -4, -3)):
        assert abs(got - want) < 0.1 * abs(want)
    # and they approach the limits
    assert abs(slopes[10**4][0] - 7) < abs(slopes[10**2][0] - 7)


def test_cusick_bound_values():
    assert abs(cusick_lower_bound(1027**2) - 9.738) < 1e-3
    # (1/16) ln^2(49/4) = 0.392354..., quoted elsewhere rounded as 0.3925
    assert abs(cusick_lower_bound(49) - 0.392354) < 1e-6
    values = [cusick_lower_bound(d) for d in range(5, 2000, 37)]
    assert all(x < y for x, y in zip(values, values[1:]))
    with pytest.raises(DomainError):
        cusick_lower_bound(4)


def test_index_verdicts():
    assert index_verdict(24.733, 9.738) == (2, Verdict.FUNDAMENTAL)
    assert index_verdict(3.0, 1.0) == (3, Verdict.INDEX_AT_MOST)
    assert index_verdict(2.9999999999, 1.0) == (3, Verdict.INDEX_AT_MOST)  # the guard errs towards caution
    assert index_verdict(5.0, 1.0)[1] is Verdict.INCONCLUSIVE
    with pytest.raises(DomainError):
        index_verdict(1.0, 0)


def test_b_minus_one_is_not_certified():
    rep = analyze_units(B, -1)
    assert rep.verdict is not Verdict.FUNDAMENTAL


def test_asymptotic_ratio_below_three():
    for rho in np.linspace(0, 0.999, 200):
        assert asymptotic_index_ratio(float(rho)) < 3


def test_brute_force_index():
    assert brute_force_index(instantiate(B, -1), 10) == 3
    assert brute_force_index(instantiate(S, 1), 10) == 1


def test_brute_force_agrees_with_certified_instances():
    certified = []
    for name in ("S_n", "L_n", "K_n", "B_n"):
        p = get_family(name)
        for k in range(-3, 4):
            inst = instantiate(p, k)
            if inst.irreducible and max(abs(inst.a_val), abs(inst.lambda_val)) < 60:
                if analyze_units(p, k).verdict is Verdict.FUNDAMENTAL:
                    certified.append(inst)
    assert len(certified) >= 10
    for inst in certified[:10]:
        assert brute_force_index(inst, 6) == 1, inst


def test_density_scan_small():
    res = density_scan(S, range(1, 100))
    assert (res.count_squarefree, res.count_total) == (64, 99)  # frozen from the factorization oracle
    empty = density_scan(S, range(0))
    assert empty.count_total == 0 and empty.fraction is None


def test_density_scan_skips_reducible():
    res = density_scan(get_family("L_n"), range(-2, 3))
    assert res.skipped == (1,)
    assert res.count_total == 4


def test_density_scan_parallel_matches_serial():
    a = density_scan(B, range(1, 300))
    b = density_scan(B, range(1, 300), workers=2)
    assert a == b


def test_collision_check():
    rep = analyze_units(B, 2)
    assert regulator_collision_check(rep, {"S_n": range(-20, 21), "L_n": range(-3, 4)}) == []
    same = regulator_collision_check(analyze_units(S, 7), {"S_n": [7]})
    assert len(same) == 1 and same[0].difference < 1e-30
    everything = regulator_collision_check(rep, {"L_n": range(2, 5)}, tol=1e6)
    assert [m.n for m in everything] == [2, 3, 4]


def test_unit_report_json():
    d = unit_report_to_json(analyze_units(B, 2))
    assert d["verdict"] == "fundamental" and d["discriminant_used"] == "1054729"
