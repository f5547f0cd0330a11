import random

import pytest

from regentail.finsets import FinSubset
from regentail.forcing import (
    Budget,
    ForcedSystem,
    expand_chain,
    min_chain_depth,
    offset_box,
    replay_compose,
    replay_t,
    replay_u,
    t_compose_holds,
    t_force_holds,
    u_force_holds,
)
from regentail.systems import IntersectionSystem, MinimalSystem, check_system_axioms


def brute_min_k(S, x, A, target, k_max):
    """Independent oracle: rebuild every chain set from scratch."""
    targets = target.elems if isinstance(target, FinSubset) else (target,)
    for k in range(k_max + 1):
        chain = expand_chain(S.group, A, x, k)
        if all(S.holds(chain, b) for b in targets):
            return k
    return None


def test_expand_chain(zmod60):
    A = FinSubset.of(3)
    assert expand_chain(zmod60, A, -7, 3) == FinSubset.of(3, 10, 17, 24)


def test_t_force_semigroup_joint_target(sm60):
    v = t_force_holds(sm60, -7, FinSubset.of(3), FinSubset.of(130, 84), Budget(k_max=10))
    assert v.is_holds
    assert v.certificate.k == 3
    assert v.certificate.chain == FinSubset.of(3, 10, 17, 24)
    assert brute_min_k(sm60, -7, FinSubset.of(3), FinSubset.of(130, 84), 10) == 3


def test_t_force_minimal_k_single_targets(sm60):
    assert t_force_holds(sm60, -7, FinSubset.of(3), 84).certificate.k == 3
    assert t_force_holds(sm60, -7, FinSubset.of(3), 130).certificate.k == 1
    assert brute_min_k(sm60, -7, FinSubset.of(3), 130, 10) == 1


def test_t_force_k0_embedding(sm60):
    # S itself already holds: depth 0
    v = t_force_holds(sm60, 5, FinSubset.of(10, 24), 130)
    assert v.is_holds and v.certificate.k == 0


def test_t_force_unknown(sm60):
    v = t_force_holds(sm60, -7, FinSubset.of(3), 130, Budget(k_max=0))
    assert v.is_unknown


def test_t_force_multiplicative_chain(dedekind, field, yz):
    y, z = yz
    v = t_force_holds(dedekind, y, FinSubset.of(z), field.one, Budget(k_max=8))
    # on the shipped instance already the depth-1 chain {z, z^2} contains 1
    assert v.is_holds and v.certificate.k == 1
    assert brute_min_k(dedekind, y, FinSubset.of(z), field.one, 8) == 1


def test_chain_monotonicity(sm60):
    """If the depth-k chain works, every deeper chain works."""
    rng = random.Random(43)
    for _ in range(100):
        A = FinSubset(rng.randint(-30, 30) for _ in range(rng.randint(1, 3)))
        x = rng.choice([1, -1, 7, -7, 20])
        b = rng.randint(-30, 30)
        k = brute_min_k(sm60, x, A, b, 12)
        if k is None:
            continue
        for k2 in range(k, min(k + 3, 13)):
            chain = expand_chain(sm60.group, A, x, k2)
            assert sm60.holds(chain, b)


def test_u_force_branch_depths(sm60):
    v = u_force_holds(sm60, 1, FinSubset.of(-1), 0)
    assert v.is_holds
    assert v.certificate.pos.k == 59       # chain -1, -2, ..., -60
    assert v.certificate.neg.k == 1        # chain -1, 0
    assert brute_min_k(sm60, 1, FinSubset.of(-1), 0, 64) == 59
    assert brute_min_k(sm60, -1, FinSubset.of(-1), 0, 64) == 1


def test_u_force_trivial(sm60):
    v = u_force_holds(sm60, 7, FinSubset.of(10, 24), 130)
    assert v.is_holds
    assert v.certificate.pos.k == 0 and v.certificate.neg.k == 0


def test_compose_single_matches_t_force(sm60):
    rng = random.Random(47)
    for _ in range(50):
        A = FinSubset(rng.randint(-20, 20) for _ in range(rng.randint(1, 2)))
        x = rng.choice([1, -1, 3, -3, 7])
        b = rng.randint(-20, 20)
        single = t_force_holds(sm60, x, A, b, Budget(k_max=16))
        composed = t_compose_holds(sm60, [x], A, b, Budget(k_max=16))
        assert single.status == composed.status
        if single.is_holds:
            assert (single.certificate.k,) == composed.certificate.ks


def test_compose_commutation(sm60):
    rng = random.Random(53)
    budget = Budget(k_max=10)
    for _ in range(40):
        A = FinSubset(rng.randint(-15, 15) for _ in range(rng.randint(1, 2)))
        x, y = rng.choice([1, -1, 3, 7]), rng.choice([2, -2, 5])
        b = rng.randint(-15, 15)
        v1 = t_compose_holds(sm60, [x, y], A, b, budget)
        v2 = t_compose_holds(sm60, [y, x], A, b, budget)
        assert v1.status == v2.status


def test_compose_example(sm60):
    v = t_compose_holds(sm60, [1, -1], FinSubset.of(-1), 0, Budget(k_max=64))
    assert v.is_holds


def test_intersection_law(sm60, zmod60):
    """T_x(S & S') agrees with T_x(S) & T_x(S') on samples."""
    rng = random.Random(59)
    S2 = MinimalSystem(zmod60)
    inter = IntersectionSystem(sm60, S2)
    for _ in range(60):
        A = FinSubset(rng.randint(-20, 20) for _ in range(rng.randint(1, 2)))
        x = rng.choice([1, -1, 7, -20])
        b = rng.randint(-20, 20)
        both = t_force_holds(inter, x, A, b, Budget(k_max=12))
        left = t_force_holds(sm60, x, A, b, Budget(k_max=12))
        right = t_force_holds(S2, x, A, b, Budget(k_max=12))
        assert both.is_holds == (left.is_holds and right.is_holds)


def test_forced_system_satisfies_axioms(sm60, samplers):
    forced = ForcedSystem(sm60, -7, Budget(k_max=16))
    report = check_system_axioms(forced, samplers["exa1"], 120, seed=3)
    assert report.ok, report.violations()


def test_forced_system_contains_base(sm60, samplers):
    rng = random.Random(61)
    forced = ForcedSystem(sm60, -7, Budget(k_max=8))
    sampler = samplers["exa1"]
    for _ in range(100):
        A = FinSubset(sampler.element(rng) for _ in range(rng.randint(1, 3)))
        b = sampler.element(rng)
        if sm60.holds(A, b):
            assert forced.holds(A, b)


def test_min_chain_depth_two_point_gap(sm60):
    d = min_chain_depth(sm60, -7, FinSubset.of(3), FinSubset.of(130, 84), k_max=10)
    assert d.k == 3 and not d.two_point_holds
    d0 = min_chain_depth(sm60, -7, FinSubset.of(10, 24), 130, k_max=10)
    assert d0.k == 0 and d0.two_point_holds
    assert min_chain_depth(sm60, -7, FinSubset.of(3), 1, k_max=4) is None


def test_min_chain_depth_demo_instance():
    from regentail.groups import DivisibilityGroup
    from regentail.instances import CHAIN_DEMO_MIN_POLY, integral_generator_y
    from regentail.numberring import CubicField
    from regentail.systems import DedekindSystem

    f = CubicField(CHAIN_DEMO_MIN_POLY)
    g = DivisibilityGroup(f)
    S = DedekindSystem(g)
    y = integral_generator_y(f)
    z = f.inv(y)
    d = min_chain_depth(S, y, FinSubset.of(z), f.one, k_max=8)
    assert d.k == 2 and not d.two_point_holds


def test_offset_box_cached(zmod60):
    b1 = offset_box(zmod60, (3, 5), 2)
    b2 = offset_box(zmod60, (3, 5), 2)
    assert b1 is b2
    assert set(b1.items) == {0, 3, 6, 5, 8, 11, 10, 13, 16}


def test_replays(sm60):
    v = t_force_holds(sm60, -7, FinSubset.of(3), FinSubset.of(130, 84))
    assert replay_t(sm60, v.certificate, FinSubset.of(3), FinSubset.of(130, 84))
    # tamper: depth off by one no longer matches the stored chain
    from dataclasses import replace

    bad = replace(v.certificate, k=2)
    assert not replay_t(sm60, bad, FinSubset.of(3), FinSubset.of(130, 84))

    u = u_force_holds(sm60, 1, FinSubset.of(-1), 0)
    assert replay_u(sm60, u.certificate, FinSubset.of(-1), 0)
    bad_u = replace(u.certificate, pos=replace(u.certificate.pos, k=58,
                    chain=expand_chain(sm60.group, FinSubset.of(-1), 1, 58)))
    assert not replay_u(sm60, bad_u, FinSubset.of(-1), 0)

    c = t_compose_holds(sm60, [1, -1], FinSubset.of(-1), 0, Budget(k_max=64))
    assert replay_compose(sm60, c.certificate, FinSubset.of(-1), 0)
    bad_c = replace(c.certificate, ks=(0,) * len(c.certificate.ks))
    assert not replay_compose(sm60, bad_c, FinSubset.of(-1), 0)


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(k_max=-1)
