import random
from itertools import product

import pytest

from regentail.finsets import FinSubset
from regentail.forcing import Budget
from regentail.groups import ConeGroup
from regentail.regularise import (
    cycle_extract,
    default_pool,
    l_holds,
    lcd_decide,
    prufer_check,
    prufer_search,
    regular_entails_decidable,
    replay_cone,
    replay_lorenzen,
)
from regentail.systems import MinimalSystem


def brute_lcd(g, A, bound=120):
    """Independent oracle: exhaustive coefficient vectors up to `bound`."""
    vecs = list(A)
    k = len(vecs)
    for ns in product(range(bound + 1), repeat=k):
        if not any(ns):
            continue
        total = g.zero
        for n, a in zip(ns, vecs):
            total = g.add(total, g.scale(a, n))
        if g.leq(total, g.zero):
            return True
    return False


def test_default_pool(zmod60):
    pool = default_pool(zmod60, FinSubset.of(-1), 0)
    assert pool == (1,)
    pool2 = default_pool(zmod60, FinSubset.of(3, 10), 0, extras=(7,))
    assert set(pool2) == {3, 10, 7}


def test_l_holds_semigroup(sm60):
    v = l_holds(sm60, FinSubset.of(-1), 0, pool=(1,))
    assert v.is_holds
    cert = v.certificate
    assert cert.xs == (1,)
    ks = {br.signs[0]: br.ks[0] for br in cert.branches}
    assert ks == {1: 59, -1: 1}
    assert replay_lorenzen(sm60, cert, FinSubset.of(-1), 0)


def test_l_holds_trivial_n0(sm60):
    v = l_holds(sm60, FinSubset.of(-60), 0)
    assert v.is_holds
    assert v.certificate.xs == ()
    assert replay_lorenzen(sm60, v.certificate, FinSubset.of(-60), 0)


def test_l_holds_unknown_on_refutable(sm60):
    v = l_holds(sm60, FinSubset.of(1), 0, budget=Budget(k_max=16, n_max=2))
    assert v.is_unknown


def test_l_holds_dedekind(dedekind, field, yz):
    y, z = yz
    v = l_holds(dedekind, FinSubset.of(z), field.one, pool=(y,))
    assert v.is_holds
    assert replay_lorenzen(dedekind, v.certificate, FinSubset.of(z), field.one)


def test_l_holds_agrees_with_lcd(sm60, zmod60):
    """Soundness cross-check: every Holds is confirmed by the decision."""
    rng = random.Random(67)
    for _ in range(80):
        A = FinSubset(rng.randint(-40, 40) for _ in range(rng.randint(1, 2)))
        v = l_holds(sm60, A, 0, budget=Budget(k_max=64, n_max=2))
        dec = lcd_decide(zmod60, A)
        if v.is_holds:
            assert dec.positive
        if not dec.positive:
            assert not v.is_holds


def test_single_element_elimination(sm60, zmod60):
    """L(S_M)({a} |- 0) implies n*a <= 0 for some n > 0."""
    for a in range(-10, 11):
        v = l_holds(sm60, FinSubset.of(a), 0)
        dec = lcd_decide(zmod60, FinSubset.of(a))
        assert v.is_holds == dec.positive
        if dec.positive and a != 0:
            n = sum(dec.coeffs)
            assert n > 0 and zmod60.leq(zmod60.scale(a, n), 0)


def test_prufer_check_examples(sm60):
    B = FinSubset(range(-59, 1))
    assert prufer_check(sm60, FinSubset.of(-1), B)
    assert prufer_check(sm60, FinSubset.of(0), FinSubset.of(0))
    rng = random.Random(71)
    for _ in range(200):
        Bs = FinSubset(rng.randint(-120, 120) for _ in range(rng.randint(1, 8)))
        assert not prufer_check(sm60, FinSubset.of(1), Bs)


def test_prufer_search_progression(sm60):
    found = prufer_search(sm60, FinSubset.of(-1))
    assert found is not None
    assert prufer_check(sm60, FinSubset.of(-1), found.witness)
    assert found.witness == FinSubset(range(-59, 1))
    assert prufer_search(sm60, FinSubset.of(0)).witness == FinSubset.of(0)


def test_prufer_search_absent_on_discrete(sm_discrete):
    out = prufer_search(sm_discrete, FinSubset.of(1),
                        candidates=range(-6, 7), size_cap=3)
    assert out is None


def test_prufer_implies_lorenzen(sm60):
    """Witness exists iff the certificate search succeeds (shipped scale)."""
    for a in range(-10, 0):
        found = prufer_search(sm60, FinSubset.of(a))
        assert found is not None
        v = l_holds(sm60, FinSubset.of(a), 0)
        assert v.is_holds


def test_cycle_extract(sm60):
    cert = cycle_extract(sm60, -1, FinSubset(range(-59, 1)))
    assert cert.n == 60
    assert cycle_extract(sm60, 0, FinSubset.of(0)).n == 1
    cert3 = cycle_extract(sm60, -20, FinSubset.of(0, -20, -40))
    assert cert3.n == 3
    with pytest.raises(ValueError):
        cycle_extract(sm60, 1, FinSubset.of(0, 1))


def test_lcd_examples(zmod60):
    dec = lcd_decide(zmod60, FinSubset.of(-1))
    assert dec.positive and dec.coeffs == (60,)
    assert lcd_decide(zmod60, FinSubset.of(0)).positive
    neg = lcd_decide(zmod60, FinSubset.of(1))
    assert not neg.positive
    assert neg.functional is not None
    assert replay_cone(zmod60, neg, FinSubset.of(1))


def test_lcd_matches_brute_force_z():
    g = ConeGroup(1, (60,))
    rng = random.Random(73)
    for _ in range(60):
        A = FinSubset(rng.randint(-30, 30) for _ in range(rng.randint(1, 2)))
        dec = lcd_decide(g, A)
        assert dec.positive == brute_lcd(g, A), A
        assert replay_cone(g, dec, A)


def test_lcd_matches_brute_force_z2():
    g = ConeGroup(2, [(1, 0), (1, 2)])
    rng = random.Random(79)
    for _ in range(40):
        A = FinSubset(
            (rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(rng.randint(1, 2))
        )
        dec = lcd_decide(g, A)
        assert dec.positive == brute_lcd(g, A, bound=60), A
        assert replay_cone(g, dec, A)


def test_regular_entails_linear_order(zmod60):
    assert regular_entails_decidable(zmod60, FinSubset.of(0), FinSubset.of(1))
    assert not regular_entails_decidable(zmod60, FinSubset.of(1), FinSubset.of(0))
    assert regular_entails_decidable(zmod60, FinSubset.of(20), FinSubset.of(0))
    A = FinSubset.of(5, 7)
    assert regular_entails_decidable(zmod60, A, A)


def test_replay_cone_rejects_tampered(zmod60):
    dec = lcd_decide(zmod60, FinSubset.of(-1))
    from dataclasses import replace

    assert not replay_cone(zmod60, replace(dec, coeffs=(59,)), FinSubset.of(-1))
    assert not replay_cone(zmod60, replace(dec, cone_coeffs=(2,)), FinSubset.of(-1))
    assert not replay_cone(zmod60, replace(dec, coeffs=(0,)), FinSubset.of(-1))


def test_replay_lorenzen_rejects_tampered(sm60):
    v = l_holds(sm60, FinSubset.of(-1), 0, pool=(1,))
    cert = v.certificate
    from dataclasses import replace

    # drop a branch: sign cover incomplete
    assert not replay_lorenzen(
        sm60, replace(cert, branches=cert.branches[:1]), FinSubset.of(-1), 0
    )
    # shrink a depth: the +1 branch misses -60
    short = tuple(
        replace(br, ks=(58,)) if br.signs == (1,) else br for br in cert.branches
    )
    assert not replay_lorenzen(sm60, replace(cert, branches=short), FinSubset.of(-1), 0)
