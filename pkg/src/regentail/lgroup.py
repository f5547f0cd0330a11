"""Formal meets, their monoid preorder, and the Grothendieck l-group.

A FinSubset A is read as the formal meet of its elements; the monoid
operation is the Minkowski sum and the meet is union, preordered by
"/\\A <= /\\B iff A |- b for every b in B".  When the entailment relation is
regular this monoid is cancellative and embeds in its Grothendieck l-group,
modelled here by difference pairs (A, B) standing for /\\A - /\\B.

Over the discrete-Z backend the l-group has an explicit normal form: the
pair map e -> (min A - min B, max A - max B) is an order isomorphism onto
Z x Z-degrees (second coordinate conversely ordered), and the canonical
morphism sends m to (m, m).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .finsets import FinSubset, as_finsubset, minkowski
from .forcing import Verdict
from .systems import AxiomReport, LawStat
from .entailment import RegularEntailment


def meet_monoid_leq(E: RegularEntailment, A, B) -> Verdict:
    """/\\A <= /\\B: the conjunction of A |- {b} over b in B."""
    A = as_finsubset(A)
    unknown = False
    for b in as_finsubset(B):
        v = E.entails(A, FinSubset.of(b))
        if v.is_refuted:
            return Verdict.refuted(detail=f"A |- {b!r} fails")
        if v.is_unknown:
            unknown = True
    if unknown:
        return Verdict.unknown("some conjunct exhausted its budget")
    return Verdict.holds("meet-monoid")


@dataclass(frozen=True)
class LGroupElement:
    """Formal difference /\\pos - /\\neg of formal meets."""

    pos: FinSubset
    neg: FinSubset


def phi(g, a) -> LGroupElement:
    """The natural morphism from the group: a -> /\\{a} - /\\{0}."""
    return LGroupElement(FinSubset.of(a), FinSubset.of(g.zero))


def lg_add(g, e1: LGroupElement, e2: LGroupElement) -> LGroupElement:
    return LGroupElement(minkowski(g, e1.pos, e2.pos), minkowski(g, e1.neg, e2.neg))


def lg_neg(e: LGroupElement) -> LGroupElement:
    return LGroupElement(e.neg, e.pos)


def lg_sub(g, e1: LGroupElement, e2: LGroupElement) -> LGroupElement:
    return lg_add(g, e1, lg_neg(e2))


def lg_meet(g, e1: LGroupElement, e2: LGroupElement) -> LGroupElement:
    # (A,B) /\ (C,D) = ((A+D) u (C+B), B+D)
    left = minkowski(g, e1.pos, e2.neg).union(minkowski(g, e2.pos, e1.neg))
    return LGroupElement(left, minkowski(g, e1.neg, e2.neg))


def lg_join(g, e1: LGroupElement, e2: LGroupElement) -> LGroupElement:
    return lg_neg(lg_meet(g, lg_neg(e1), lg_neg(e2)))


def lg_leq(E: RegularEntailment, e1: LGroupElement, e2: LGroupElement) -> Verdict:
    """(A,B) <= (C,D) iff /\\(A+D) <= /\\(C+B) in the meet-monoid."""
    g = E.group
    return meet_monoid_leq(E, minkowski(g, e1.pos, e2.neg), minkowski(g, e2.pos, e1.neg))


def lg_eq(E: RegularEntailment, e1: LGroupElement, e2: LGroupElement) -> Verdict:
    a = lg_leq(E, e1, e2)
    if a.is_refuted:
        return a
    b = lg_leq(E, e2, e1)
    if b.is_refuted:
        return b
    if a.is_unknown or b.is_unknown:
        return Verdict.unknown("equivalence test unresolved")
    return Verdict.holds("mutual")


def to_pair(e: LGroupElement) -> tuple[int, int]:
    """Normal form over the discrete-Z backend: (min-part, max-part).

    An order-isomorphism invariant: two elements are equivalent iff their
    pairs agree, addition is componentwise, and the order is the product of
    the usual and the converse order.
    """
    if not all(isinstance(v, int) for v in tuple(e.pos) + tuple(e.neg)):
        raise ValueError("pair normal form is defined over the discrete Z instance")
    return (min(e.pos) - min(e.neg), max(e.pos) - max(e.neg))


def pair_element(m: int, n: int) -> LGroupElement:
    """A canonical discrete-Z element with to_pair == (m, n)."""
    if m <= n:
        return LGroupElement(FinSubset.of(m, n), FinSubset.of(0))
    return LGroupElement(FinSubset.of(0), FinSubset.of(-m, -n))


def check_cancellative(E: RegularEntailment, sampler, n: int, seed: int = 2024,
                       probes=()) -> AxiomReport:
    """Sampled check that X + A <= X + B forces A <= B in the meet-monoid.

    This holds exactly when the backing relation is regular; `probes` are
    explicit (X, A, B) triples checked before the random samples so known
    counterexamples of non-regular backends are reported deterministically.
    """
    rng = random.Random(seed)
    g = E.group
    law = LawStat("cancellation X+A <= X+B => A <= B")

    def tri(v: Verdict):
        return True if v.is_holds else False if v.is_refuted else None

    def run_case(X, A, B):
        prem = tri(meet_monoid_leq(E, minkowski(g, X, A), minkowski(g, X, B)))
        conc = tri(meet_monoid_leq(E, A, B))
        law.check_opt(prem, conc, (X, A, B))

    for X, A, B in probes:
        run_case(as_finsubset(X), as_finsubset(A), as_finsubset(B))
    for _ in range(n):
        X = FinSubset(sampler.element(rng) for _ in range(rng.randint(1, 3)))
        A = FinSubset(sampler.element(rng) for _ in range(rng.randint(1, 3)))
        B = FinSubset(sampler.element(rng) for _ in range(rng.randint(1, 3)))
        run_case(X, A, B)
    return AxiomReport(f"cancellativity: {E.name}", seed, n, [law])
