"""Equivariant systems of ideals: a decidable relation  A |> b  between
nonempty finite subsets and elements, satisfying

  (S1)  A |> x  if  A >= A'  and  A' |> x          (weakening)
  (S2)  A |> x  if  A,y |> x  and  A |> y          (cut)
  (S3)  a |> x  if  a <= x in G
  (S4)  A |> x  iff  A+y |> x+y                    (translation)

Shipped instances: the least system S_M (some element of A is <= b) and the
Dedekind system over a cubic order (b lies in the fractional ideal generated
by A).  `meet_leq` extends a system to the preorder of formal meets, which
together with the Minkowski sum is the meet-monoid the system generates.

Systems also expose two bulk-evaluation hooks used by the forcing searches:
an incremental chain accumulator (`chain_begin` / ChainState) and
`box_holds`, which evaluates the system on a union of translated copies of
a set.  The default implementations just materialize the sets; instances
override them where an exact shortcut exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .finsets import FinSubset, as_finsubset, translate
from .numberring import ideal_contains, ideal_extend, ideal_from_generators


class ChainState:
    """Incremental accumulator for growing chain sets; query() must equal
    holds() on the union of everything pushed so far."""

    def push(self, elems):
        raise NotImplementedError

    def query(self) -> bool:
        raise NotImplementedError


class _GenericChain(ChainState):
    def __init__(self, system, b):
        self.system = system
        self.b = b
        self.acc = set()
        self._dirty = True
        self._value = False

    def push(self, elems):
        before = len(self.acc)
        self.acc.update(elems)
        if len(self.acc) != before:
            self._dirty = True

    def query(self):
        if self._dirty:
            self._value = self.system.holds(FinSubset(self.acc), self.b)
            self._dirty = False
        return self._value


class SystemOfIdeals:
    """Base class; concrete systems implement `_holds`."""

    name = "abstract"

    def __init__(self, group):
        self.group = group

    def holds(self, A, b) -> bool:
        return self._holds(as_finsubset(A), b)

    def _holds(self, A: FinSubset, b) -> bool:
        raise NotImplementedError

    # -- bulk hooks -------------------------------------------------------

    def chain_begin(self, b) -> ChainState:
        return _GenericChain(self, b)

    def box_holds(self, A: FinSubset, offsets, b) -> bool:
        """holds() on the union of A - o over o in `offsets`."""
        g = self.group
        return self._holds(FinSubset(g.sub(a, o) for a in A for o in offsets), b)

    def __repr__(self):
        return f"{type(self).__name__}({self.group!r})"


class _MinimalChain(ChainState):
    __slots__ = ("system", "b", "found")

    def __init__(self, system, b):
        self.system = system
        self.b = b
        self.found = False

    def push(self, elems):
        if not self.found:
            leq = self.system.group.leq
            b = self.b
            self.found = any(leq(e, b) for e in elems)

    def query(self):
        return self.found


class MinimalSystem(SystemOfIdeals):
    """The least equivariant system of ideals: A |> b iff some a in A has a <= b."""

    name = "sm"

    def _holds(self, A, b):
        leq = self.group.leq
        return any(leq(a, b) for a in A)

    def chain_begin(self, b):
        return _MinimalChain(self, b)

    def box_holds(self, A, offsets, b):
        g = self.group
        if g.order_is_equality:
            # a - o <= b  iff  o == a - b
            wants = {g.sub(a, b) for a in A}
            return not wants.isdisjoint(offsets.as_set)
        leq, sub = g.leq, g.sub
        return any(leq(sub(a, o), b) for a in A for o in offsets)


class _DedekindChain(ChainState):
    __slots__ = ("system", "b", "ideal", "_value", "_dirty")

    def __init__(self, system, b):
        self.system = system
        self.b = b
        self.ideal = None
        self._value = False
        self._dirty = False

    def push(self, elems):
        elems = list(elems)
        if not elems:
            return
        if self.ideal is None:
            self.ideal = ideal_from_generators(self.system.group.field, elems)
        else:
            self.ideal = ideal_extend(self.ideal, elems)
        self._dirty = True

    def query(self):
        if self._dirty:
            self._value = ideal_contains(self.ideal, self.b) is not None
            self._dirty = False
        return self._value


class DedekindSystem(SystemOfIdeals):
    """A |> b iff b lies in the fractional ideal generated by A over the order."""

    name = "dedekind"

    def __init__(self, group):
        if group.kind != "divisibility":
            raise ValueError("the Dedekind system needs a divisibility group")
        super().__init__(group)
        self._ideal_cache: dict[FinSubset, object] = {}

    def ideal_of(self, A: FinSubset):
        ideal = self._ideal_cache.get(A)
        if ideal is None:
            ideal = ideal_from_generators(self.group.field, list(A))
            self._ideal_cache[A] = ideal
        return ideal

    def _holds(self, A, b):
        return ideal_contains(self.ideal_of(A), b) is not None

    def containment_certificate(self, A, b):
        """Integer coordinates of b in the HNF basis of (A), or None."""
        return ideal_contains(self.ideal_of(as_finsubset(A)), b)

    def chain_begin(self, b):
        return _DedekindChain(self, b)


class IntersectionSystem(SystemOfIdeals):
    """Pointwise conjunction of systems (systems are closed under intersection)."""

    def __init__(self, *systems):
        groups = {id(s.group) for s in systems}
        if len(groups) != 1:
            raise ValueError("intersection needs systems over one group")
        super().__init__(systems[0].group)
        self.systems = tuple(systems)
        self.name = "&".join(s.name for s in systems)

    def _holds(self, A, b):
        return all(s._holds(A, b) for s in self.systems)


def sm_holds(g, A, b) -> bool:
    return MinimalSystem(g).holds(A, b)


def dedekind_holds(system: DedekindSystem, A, b) -> bool:
    return system.holds(A, b)


def meet_leq(S: SystemOfIdeals, A, B) -> bool:
    """/\\A <= /\\B in the meet-monoid generated by S:  A |> b for every b in B."""
    A = as_finsubset(A)
    return all(S.holds(A, b) for b in as_finsubset(B))


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class LawStat:
    name: str
    tested: int = 0
    vacuous: int = 0
    unresolved: int = 0
    violations: list = field(default_factory=list)

    def check(self, premise: bool, conclusion: bool, witness):
        if not premise:
            self.vacuous += 1
            return
        self.tested += 1
        if not conclusion:
            if len(self.violations) < 5:
                self.violations.append(witness)

    def check_opt(self, premise, conclusion, witness):
        """Like check, but None means an Unknown verdict: counted, never failed."""
        if premise is None or (premise and conclusion is None):
            self.unresolved += 1
            return
        self.check(premise, conclusion, witness)


@dataclass
class AxiomReport:
    subject: str
    seed: int
    samples: int
    laws: list[LawStat]

    @property
    def ok(self) -> bool:
        return not any(l.violations for l in self.laws)

    def violations(self):
        return [(l.name, w) for l in self.laws for w in l.violations]

    def to_dict(self):
        return {
            "subject": self.subject,
            "seed": self.seed,
            "samples": self.samples,
            "ok": self.ok,
            "laws": [
                {
                    "name": l.name,
                    "tested": l.tested,
                    "vacuous": l.vacuous,
                    "unresolved": l.unresolved,
                    "violations": [repr(w) for w in l.violations],
                }
                for l in self.laws
            ],
        }


def _sample_subset(sampler, rng, max_size=3):
    size = rng.randint(1, max_size)
    return FinSubset(sampler.element(rng) for _ in range(size))


def check_system_axioms(S: SystemOfIdeals, sampler, n: int, seed: int = 2024) -> AxiomReport:
    """Sampled check of S1-S4 and the predicate form P1, P'2, P3.

    `sampler` provides element(rng) and above(rng, a) (some x with a <= x).
    The predicate form is S(A) := holds(A, 0).
    """
    rng = random.Random(seed)
    g = S.group
    zero = g.zero
    s1 = LawStat("S1 weakening")
    s2 = LawStat("S2 cut")
    s3 = LawStat("S3 order")
    s4 = LawStat("S4 translation")
    p1 = LawStat("P1 weakening")
    p2 = LawStat("P'2 cut")
    p3 = LawStat("P3 order")
    for _ in range(n):
        A = _sample_subset(sampler, rng)
        b = sampler.element(rng)
        y = sampler.element(rng)
        x = sampler.element(rng)

        sup = A.union([sampler.element(rng)])
        s1.check(S.holds(A, b), S.holds(sup, b), (A, sup, b))

        s2.check(
            S.holds(A.with_element(y), x) and S.holds(A, y),
            S.holds(A, x),
            (A, y, x),
        )

        a = sampler.element(rng)
        up = sampler.above(rng, a)
        s3.check(g.leq(a, up), S.holds(FinSubset.of(a), up), (a, up))

        lhs = S.holds(A, b)
        rhs = S.holds(translate(g, A, y), g.add(b, y))
        s4.check(True, lhs == rhs, (A, b, y))

        p1.check(S.holds(A, zero), S.holds(sup, zero), (A, sup))

        u = sampler.element(rng)
        p2.check(
            S.holds(A.with_element(u), zero) and S.holds(translate(g, A, g.neg(u)), zero),
            S.holds(A, zero),
            (A, u),
        )

        dn = g.sub(a, up)  # dn <= 0 by translation of a <= up
        p3.check(g.leq(dn, zero), S.holds(FinSubset.of(dn), zero), (dn,))
    return AxiomReport(f"system axioms: {S.name}", seed, n, [s1, s2, s3, s4, p1, p2, p3])
