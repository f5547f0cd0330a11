"""Regular entailment relations between nonempty finite subsets.

A regular entailment relation satisfies

  (R1)  A |- B  if  A >= A', B >= B' and A' |- B'     (weakening)
  (R2)  A |- B  if  A,x |- B  and  A |- B,x           (cut)
  (R3)  a |- b  if  a <= b in G
  (R4)  A |- B  if  A+x |- B+x                        (translation)
  (R5)  a+x, b+y |- a+b, x+y                          (regularity)

and is determined by its restriction R(A) := A |- 0 through
A |- B iff R(A - B); every backend here evaluates that difference form, so
translation invariance is structural.  Three backends are provided:

* :class:`ConeOrderEntailment` -- the full decision for the regularisation
  of S_M over cone-preordered Z^d (exact, certificates both ways);
* :class:`IntervalOrderEntailment` -- the closed form over discrete Z:
  A |- B iff min A <= max B and max A >= min B (formal meets behave as the
  integer intervals [min, max] ordered by inclusion);
* :class:`RegularisedSearchEntailment` -- the budgeted certificate search
  over an arbitrary system of ideals (semi-decision: Holds or Unknown).

:class:`MeetOrderEntailment` wraps a raw system's meet preorder without
regularising; it is generally *not* regular and serves as the negative
control in the axiom suites.
"""

from __future__ import annotations

import random

from .finsets import FinSubset, as_finsubset, diff_set, minkowski, translate
from .forcing import Budget, DEFAULT_BUDGET, Verdict
from .groups import ConeGroup, DiscreteGroup
from .regularise import l_holds, lcd_decide
from .systems import AxiomReport, LawStat, SystemOfIdeals, meet_leq


class RegularEntailment:
    name = "abstract"

    def __init__(self, group):
        self.group = group

    def entails(self, A, B) -> Verdict:
        raise NotImplementedError

    def r_holds(self, A) -> Verdict:
        """R(A) = A |- 0."""
        return self.entails(A, FinSubset.of(self.group.zero))


class ConeOrderEntailment(RegularEntailment):
    """Decidable backend: A |- B iff the cone decision for A - B is positive."""

    name = "cone-order"

    def __init__(self, group: ConeGroup):
        if not isinstance(group, ConeGroup):
            raise ValueError("cone backend needs a cone-preordered Z^d group")
        super().__init__(group)

    def entails(self, A, B) -> Verdict:
        A = as_finsubset(A)
        B = as_finsubset(B)
        decision = lcd_decide(self.group, diff_set(self.group, A, B))
        if decision.positive:
            return Verdict.holds(decision)
        return Verdict.refuted(decision)


class IntervalOrderEntailment(RegularEntailment):
    """Closed form of the regularisation over discrete Z."""

    name = "interval-order"

    def __init__(self, group: DiscreteGroup):
        if not isinstance(group, DiscreteGroup):
            raise ValueError("interval backend needs the discrete Z group")
        super().__init__(group)

    def entails(self, A, B) -> Verdict:
        A = as_finsubset(A)
        B = as_finsubset(B)
        ok = min(A) <= max(B) and max(A) >= min(B)
        return Verdict.holds("interval") if ok else Verdict.refuted()


class RegularisedSearchEntailment(RegularEntailment):
    """Budgeted certificate search for L(S); never refutes."""

    name = "regularised-search"

    def __init__(self, system: SystemOfIdeals, budget: Budget = DEFAULT_BUDGET,
                 pool_extras=()):
        super().__init__(system.group)
        self.system = system
        self.budget = budget
        self.pool_extras = tuple(pool_extras)

    def entails(self, A, B) -> Verdict:
        A = as_finsubset(A)
        B = as_finsubset(B)
        g = self.group
        C = diff_set(g, A, B)
        pool = None
        if self.pool_extras:
            from .regularise import default_pool

            pool = default_pool(g, C, g.zero, extras=self.pool_extras)
        return l_holds(self.system, C, g.zero, pool=pool, budget=self.budget)


class MeetOrderEntailment(RegularEntailment):
    """The raw meet preorder of a system, not regularised (negative control)."""

    name = "raw-meet"

    def __init__(self, system: SystemOfIdeals):
        super().__init__(system.group)
        self.system = system

    def entails(self, A, B) -> Verdict:
        ok = meet_leq(self.system, as_finsubset(A), as_finsubset(B))
        return Verdict.holds("meet-leq") if ok else Verdict.refuted()


def entails(E: RegularEntailment, A, B) -> Verdict:
    return E.entails(A, B)


def _tri(v: Verdict):
    if v.is_holds:
        return True
    if v.is_refuted:
        return False
    return None


def _subset(sampler, rng, max_size=3):
    return FinSubset(sampler.element(rng) for _ in range(rng.randint(1, max_size)))


def check_regular_axioms(E: RegularEntailment, sampler, n: int, seed: int = 2024) -> AxiomReport:
    """Sampled R1-R5 plus the predicate form P1, P2, P3, P5.

    Unknown verdicts are counted as unresolved, never as violations; the
    report carries the seed for reproducibility.
    """
    rng = random.Random(seed)
    g = E.group
    zero = g.zero
    r1 = LawStat("R1 weakening")
    r2 = LawStat("R2 cut")
    r3 = LawStat("R3 order")
    r4 = LawStat("R4 translation")
    r5 = LawStat("R5 regularity")
    p1 = LawStat("P1 weakening")
    p2 = LawStat("P2 cut")
    p3 = LawStat("P3 order")
    p5 = LawStat("P5 regularity")

    def R(A):
        return _tri(E.r_holds(A))

    for _ in range(n):
        A = _subset(sampler, rng)
        B = _subset(sampler, rng)
        x = sampler.element(rng)
        y = sampler.element(rng)

        supA = A.union([sampler.element(rng)])
        supB = B.union([sampler.element(rng)])
        r1.check_opt(_tri(E.entails(A, B)), _tri(E.entails(supA, supB)), (A, B))

        prem1 = _tri(E.entails(A.with_element(x), B))
        prem2 = _tri(E.entails(A, B.with_element(x)))
        both = None if (prem1 is None or prem2 is None) else (prem1 and prem2)
        r2.check_opt(both, _tri(E.entails(A, B)), (A, B, x))

        a = sampler.element(rng)
        up = sampler.above(rng, a)
        r3.check_opt(g.leq(a, up), _tri(E.entails(FinSubset.of(a), FinSubset.of(up))), (a, up))

        lhs = _tri(E.entails(A, B))
        rhs = _tri(E.entails(translate(g, A, x), translate(g, B, x)))
        r4.check_opt(
            None if (lhs is None or rhs is None) else True,
            None if (lhs is None or rhs is None) else lhs == rhs,
            (A, B, x),
        )

        b = sampler.element(rng)
        left = FinSubset.of(g.add(a, x), g.add(b, y))
        right = FinSubset.of(g.add(a, b), g.add(x, y))
        r5.check_opt(True, _tri(E.entails(left, right)), (a, b, x, y))

        p1.check_opt(R(A), R(supA), (A, supA))

        AB = minkowski(g, A, B)
        prem = None
        pa, pb = R(AB.union(A)), R(AB.union(B))
        if pa is not None and pb is not None:
            prem = pa and pb
        p2.check_opt(prem, R(AB), (A, B))

        dn = g.sub(a, up)
        p3.check_opt(g.leq(dn, zero), R(FinSubset.of(dn)), (dn,))

        p5.check_opt(True, R(FinSubset.of(x, g.neg(x))), (x,))
    return AxiomReport(f"regular axioms: {E.name}", seed, n,
                       [r1, r2, r3, r4, r5, p1, p2, p3, p5])


def check_derived_lemmas(E: RegularEntailment, sampler, n: int, seed: int = 2024,
                         p_bound: int = 8) -> AxiomReport:
    """Sampled checks of the consequences that hold in any regular relation:

    * a,b |- a+x, b-x (and its converse),
    * A, A+x |- B  iff  A |- B, B-x,
    * a, a+qx |- a+px for 0 <= p <= q,
    * if A |-_x B and A |-_{-x} B then A |- B (the forced relations read
      through their chain description, searched up to p_bound),
    * if A+b_1,...,A+b_m |- b_j for all j then A |- 0,
    * a_1 + ... + a_n = 0 implies a_1,...,a_n |- 0.
    """
    rng = random.Random(seed)
    g = E.group
    main1 = LawStat("main1 a,b |- a+x,b-x")
    main1c = LawStat("main1 converse")
    lem_r2 = LawStat("chain shift: A,A+x |- B iff A |- B,B-x")
    conv = LawStat("convexity a,a+qx |- a+px")
    main3 = LawStat("case split on the sign of x")
    cancel = LawStat("cancellation")
    zsum = LawStat("zero-sum entails 0")

    def ent(X, Y):
        return _tri(E.entails(X, Y))

    for _ in range(n):
        a = sampler.element(rng)
        b = sampler.element(rng)
        x = sampler.element(rng)
        A = _subset(sampler, rng)
        B = _subset(sampler, rng)

        left = FinSubset.of(a, b)
        right = FinSubset.of(g.add(a, x), g.sub(b, x))
        main1.check_opt(True, ent(left, right), (a, b, x))
        main1c.check_opt(True, ent(right, left), (a, b, x))

        lhs = ent(A.union(translate(g, A, x)), B)
        rhs = ent(A, B.union(translate(g, B, g.neg(x))))
        lem_r2.check_opt(
            None if (lhs is None or rhs is None) else True,
            None if (lhs is None or rhs is None) else lhs == rhs,
            (A, B, x),
        )

        q = rng.randint(0, 4)
        p = rng.randint(0, q)
        conv.check_opt(
            True,
            ent(FinSubset.of(a, g.add(a, g.scale(x, q))), FinSubset.of(g.add(a, g.scale(x, p)))),
            (a, x, p, q),
        )

        def forced(sign):
            for pw in range(p_bound + 1):
                shifted = A.union(translate(g, A, g.scale(x, sign * pw)))
                res = ent(shifted, B)
                if res:
                    return True
                if res is None:
                    return None
            return False

        fp, fn = forced(1), forced(-1)
        prem = None if (fp is None or fn is None) else (fp and fn)
        main3.check_opt(prem, ent(A, B), (A, B, x))

        bs = FinSubset(sampler.element(rng) for _ in range(rng.randint(1, 2)))
        shifted_all = FinSubset(g.add(u, bj) for u in A for bj in bs)
        prems = [ent(shifted_all, FinSubset.of(bj)) for bj in bs]
        prem = None if any(v is None for v in prems) else all(prems)
        cancel.check_opt(prem, _tri(E.r_holds(A)), (A, bs))

        parts = [sampler.element(rng) for _ in range(rng.randint(1, 3))]
        total = g.zero
        for u in parts:
            total = g.add(total, u)
        parts.append(g.neg(total))
        zsum.check_opt(True, _tri(E.r_holds(FinSubset(parts))), (tuple(parts),))
    return AxiomReport(f"derived lemmas: {E.name}", seed, n,
                       [main1, main1c, lem_r2, conv, main3, cancel, zsum])
