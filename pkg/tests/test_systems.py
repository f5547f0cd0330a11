import random

import pytest

from regentail.finsets import FinSubset, diff_set, minkowski, translate
from regentail.systems import (
    DedekindSystem,
    IntersectionSystem,
    MinimalSystem,
    SystemOfIdeals,
    check_system_axioms,
    meet_leq,
    sm_holds,
)


def test_finsubset_canonical():
    A = FinSubset([3, 1, 3, 2])
    assert A.elems == (1, 2, 3)
    assert FinSubset.of(2, 1, 3) == A
    assert hash(FinSubset.of(1, 2, 3)) == hash(A)
    assert 2 in A and 5 not in A
    with pytest.raises(ValueError):
        FinSubset([])
    with pytest.raises(AttributeError):
        A.elems = ()


def test_set_ops(zmod60):
    A = FinSubset.of(1, 2)
    B = FinSubset.of(10, 20)
    assert minkowski(zmod60, A, B) == FinSubset.of(11, 21, 12, 22)
    assert translate(zmod60, A, 5) == FinSubset.of(6, 7)
    assert diff_set(zmod60, A, B) == FinSubset.of(-9, -19, -8, -18)


def test_sm_examples(zmod60, sm60):
    assert sm_holds(zmod60, FinSubset.of(10, 24), 130)
    assert sm_holds(zmod60, FinSubset.of(5), 5)
    assert not sm_holds(zmod60, FinSubset.of(3, 24), 130)


def test_meet_leq_examples(sm60):
    assert meet_leq(sm60, FinSubset.of(10, 24), FinSubset.of(130, 84))
    assert meet_leq(sm60, FinSubset.of(3), FinSubset.of(3))
    assert not meet_leq(sm60, FinSubset.of(3, 24), FinSubset.of(130, 84))


def test_dedekind_examples(dedekind, field, yz):
    y, z = yz
    z2, z3 = field.pow(z, 2), field.pow(z, 3)
    assert dedekind.holds(FinSubset.of(z, z2, z3), field.one)
    assert dedekind.holds(FinSubset.of(z), z)
    assert not dedekind.holds(FinSubset.of(z), field.one)
    # the shipped instance has 1 in both (z, z^2) and (z, z^3)
    assert dedekind.holds(FinSubset.of(z, z2), field.one)
    assert dedekind.holds(FinSubset.of(z, z3), field.one)


def test_dedekind_requires_divisibility(zmod60):
    with pytest.raises(ValueError):
        DedekindSystem(zmod60)


def test_sm_is_least(sm60, dedekind, divgroup, yz, field):
    """Whenever S_M relates A to b, so does any system (sampled on Dedekind)."""
    rng = random.Random(41)
    sm_div = MinimalSystem(divgroup)
    y, z = yz
    pool = [field.one, y, z, field.t, field.mul(y, y), field.add(field.one, field.t)]
    tested = 0
    for _ in range(300):
        A = FinSubset(rng.choice(pool) for _ in range(rng.randint(1, 3)))
        b = rng.choice(pool)
        if sm_div.holds(A, b):
            tested += 1
            assert dedekind.holds(A, b)
    assert tested > 10


def test_system_axioms_sm(sm60, samplers):
    report = check_system_axioms(sm60, samplers["exa1"], 300, seed=11)
    assert report.ok, report.violations()
    by_name = {l.name: l for l in report.laws}
    assert by_name["S2 cut"].tested > 0
    assert by_name["P'2 cut"].tested > 0


def test_system_axioms_dedekind(dedekind, samplers):
    report = check_system_axioms(dedekind, samplers["exa2"], 100, seed=13)
    assert report.ok, report.violations()


def test_broken_system_reported(zmod60, samplers):
    class Broken(SystemOfIdeals):
        """Drops translation invariance: the relation only fires below 50."""

        name = "broken"

        def _holds(self, A, b):
            return any(self.group.leq(a, b) for a in A) and abs(b) <= 50

    report = check_system_axioms(Broken(zmod60), samplers["exa1"], 400, seed=17)
    assert not report.ok
    names = [name for name, _ in report.violations()]
    assert any("S4" in n for n in names)


def test_intersection_system(sm60, zmod60):
    both = IntersectionSystem(sm60, sm60)
    A = FinSubset.of(10, 24)
    assert both.holds(A, 130) == sm60.holds(A, 130)
    assert both.name == "sm&sm"


def test_chain_state_matches_holds(sm60, dedekind, field, yz):
    """Incremental chain accumulators agree with direct evaluation."""
    y, z = yz
    st = sm60.chain_begin(130)
    st.push([3])
    assert st.query() == sm60.holds(FinSubset.of(3), 130)
    st.push([10])
    assert st.query() == sm60.holds(FinSubset.of(3, 10), 130)

    st = dedekind.chain_begin(field.one)
    st.push([z])
    assert st.query() == dedekind.holds(FinSubset.of(z), field.one)
    st.push([field.pow(z, 2), field.pow(z, 3)])
    assert st.query() == dedekind.holds(
        FinSubset.of(z, field.pow(z, 2), field.pow(z, 3)), field.one
    )
