"""Forcing operators on equivariant systems of ideals.

T_x(S) is the least equivariant system containing S in which x <= 0 holds;
it is characterized by finite chains:  T_x(S) relates A to b iff some k >= 0
has  S(A, A-x, ..., A-kx) |> b.  U_x(S) = T_x(S) /\\ T_{-x}(S) forces a case
split on the sign of x.  The existential k is unbounded in principle, so the
searches here are budgeted: a Holds verdict carries a replayable certificate,
Unknown only ever means "not found within the budget", and refutations are
left to the decision procedures in `regularise`.

Chain expansions grow monotonically in every depth, and systems satisfy
weakening, so (a) minimal depths are found by ascending scans and (b) a
whole budget box can be rejected by evaluating its maximal expansion once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .finsets import FinSubset, as_finsubset
from .systems import SystemOfIdeals

HOLDS = "holds"
REFUTED = "refuted"
UNKNOWN = "unknown"

#: largest number of box points the searches will materialize eagerly
BOX_LIMIT = 100_000


@dataclass(frozen=True)
class Budget:
    """Search bounds: chain depth per forcing step, forcing elements per claim."""

    k_max: int = 128
    n_max: int = 2

    def __post_init__(self):
        if self.k_max < 0 or self.n_max < 0:
            raise ValueError("budget bounds must be nonnegative")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Verdict:
    """Three-valued query result; Holds always carries a replayable certificate."""

    status: str
    certificate: Any = None
    detail: str = ""

    @classmethod
    def holds(cls, certificate, detail=""):
        return cls(HOLDS, certificate, detail)

    @classmethod
    def refuted(cls, certificate=None, detail=""):
        return cls(REFUTED, certificate, detail)

    @classmethod
    def unknown(cls, detail=""):
        return cls(UNKNOWN, None, detail)

    @property
    def is_holds(self):
        return self.status == HOLDS

    @property
    def is_refuted(self):
        return self.status == REFUTED

    @property
    def is_unknown(self):
        return self.status == UNKNOWN


@dataclass(frozen=True)
class TCertificate:
    """Witness for T_x(S): replaying the base system on `chain` must succeed."""

    x: Any
    k: int
    chain: FinSubset


@dataclass(frozen=True)
class UCertificate:
    x: Any
    pos: TCertificate
    neg: TCertificate


@dataclass(frozen=True)
class ComposeCertificate:
    """Witness for a nested composition T_{x1}(...T_{xn}(S)...), one depth per level."""

    xs: tuple
    ks: tuple
    chain: FinSubset


class OffsetBox:
    """All sums j1*y1 + ... + jn*yn with 0 <= j_i <= k_max, as tuple + set."""

    __slots__ = ("items", "as_set")

    def __init__(self, items):
        self.items = tuple(items)
        self.as_set = frozenset(self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


def offset_box(g, ys: tuple, k_max: int) -> OffsetBox:
    cache = g._box_cache
    key = (ys, k_max)
    box = cache.get(key)
    if box is None:
        offs = {g.zero}
        for y in ys:
            prog = [g.scale(y, j) for j in range(k_max + 1)]
            offs = {g.add(o, p) for o in offs for p in prog}
        box = OffsetBox(sorted(offs))
        cache[key] = box
    return box


def _targets(target) -> tuple:
    if isinstance(target, FinSubset):
        return target.elems
    return (target,)


def expand_chain(g, A: FinSubset, x, k: int) -> FinSubset:
    """A u A-x u ... u A-kx."""
    elems = set(A)
    frontier = tuple(A)
    for _ in range(k):
        frontier = tuple(g.sub(e, x) for e in frontier)
        elems.update(frontier)
    return FinSubset(elems)


def t_force_holds(S: SystemOfIdeals, x, A, target, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Least k <= k_max with S(A u A-x u ... u A-kx) |> target, else Unknown.

    `target` is a single element, or a FinSubset for the joint (meet) query;
    chain sets only grow with k, so the reported k is minimal.
    """
    A = as_finsubset(A)
    g = S.group
    targets = _targets(target)
    states = [S.chain_begin(b) for b in targets]
    seen = set(A)
    frontier = tuple(A)
    for k in range(budget.k_max + 1):
        if k == 0:
            fresh = frontier
        else:
            frontier = tuple(g.sub(e, x) for e in frontier)
            fresh = tuple(e for e in frontier if e not in seen)
            seen.update(fresh)
        if fresh:
            for st in states:
                st.push(fresh)
        if all(st.query() for st in states):
            return Verdict.holds(TCertificate(x=x, k=k, chain=FinSubset(seen)))
    return Verdict.unknown(f"no chain of depth <= {budget.k_max} certifies the claim")


def u_force_holds(S: SystemOfIdeals, x, A, target, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Holds iff both the T_x and T_{-x} searches succeed; certificate pairs them."""
    pos = t_force_holds(S, x, A, target, budget)
    if not pos.is_holds:
        return Verdict.unknown("T_{+x} branch exhausted its budget")
    neg = t_force_holds(S, S.group.neg(x), A, target, budget)
    if not neg.is_holds:
        return Verdict.unknown("T_{-x} branch exhausted its budget")
    return Verdict.holds(UCertificate(x=x, pos=pos.certificate, neg=neg.certificate))


def box_viable(n_levels: int, k_max: int) -> bool:
    return (k_max + 1) ** n_levels <= BOX_LIMIT


def compose_box_holds(S: SystemOfIdeals, ys: tuple, A: FinSubset, targets, k_max: int) -> bool:
    """Evaluate the maximal (full-box) expansion of the composition.

    Equivalent to "some depth vector within the budget succeeds", by
    monotonicity of chain expansions and weakening of S.
    """
    box = offset_box(S.group, ys, k_max)
    return all(S.box_holds(A, box, b) for b in targets)


def compose_min_ks(S: SystemOfIdeals, ys: tuple, A: FinSubset, targets, k_max: int):
    """Lexicographically minimal (k1..kn) with the nested chains succeeding, or None."""
    g = S.group

    def rec(level, base_elems):
        y = ys[level]
        if level == len(ys) - 1:
            states = [S.chain_begin(b) for b in targets]
            seen = set(base_elems)
            frontier = base_elems
            for k in range(k_max + 1):
                if k == 0:
                    fresh = frontier
                else:
                    frontier = tuple(g.sub(e, y) for e in frontier)
                    fresh = tuple(e for e in frontier if e not in seen)
                    seen.update(fresh)
                if fresh:
                    for st in states:
                        st.push(fresh)
                if all(st.query() for st in states):
                    return (k,)
            return None
        seen = set(base_elems)
        frontier = base_elems
        for k in range(k_max + 1):
            if k:
                frontier = tuple(g.sub(e, y) for e in frontier)
                seen.update(frontier)
            sub = rec(level + 1, tuple(sorted(seen)))
            if sub is not None:
                return (k,) + sub
        return None

    if not ys:
        ok = all(S.holds(A, b) for b in targets)
        return () if ok else None
    return rec(0, tuple(A))


def compose_expansion(g, A: FinSubset, ys: tuple, ks: tuple) -> FinSubset:
    elems = set(A)
    for y, k in zip(ys, ks):
        frontier = set(elems)
        cur = set(elems)
        for _ in range(k):
            cur = {g.sub(e, y) for e in cur}
            frontier |= cur
        elems = frontier
    return FinSubset(elems)


def t_compose_holds(S: SystemOfIdeals, xs, A, target, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Nested application T_{x1}(...T_{xn}(S)...); Holds carries one k per level.

    The T operators commute, so the status is independent of the order of
    `xs` whenever both orders are fully searched; the depth vector reported
    is the lexicographically minimal one for the given order.
    """
    xs = tuple(xs)
    if not xs:
        raise ValueError("xs must be nonempty")
    A = as_finsubset(A)
    targets = _targets(target)
    k_max = budget.k_max
    if box_viable(len(xs), k_max) and not compose_box_holds(S, xs, A, targets, k_max):
        return Verdict.unknown(f"no depth vector <= {k_max} per level certifies the claim")
    ks = compose_min_ks(S, xs, A, targets, k_max)
    if ks is None:
        return Verdict.unknown(f"no depth vector <= {k_max} per level certifies the claim")
    chain = compose_expansion(S.group, A, xs, ks)
    return Verdict.holds(ComposeCertificate(xs=xs, ks=ks, chain=chain))


@dataclass(frozen=True)
class ChainDepth:
    k: int
    two_point_holds: bool


def min_chain_depth(S: SystemOfIdeals, x, A, target, k_max: int = 128):
    """Least full-chain depth, plus whether the two-point set A u (A-kx)
    alone already succeeds (in general it does not; the intermediate chain
    elements matter)."""
    verdict = t_force_holds(S, x, A, target, Budget(k_max=k_max, n_max=0))
    if not verdict.is_holds:
        return None
    k = verdict.certificate.k
    A = as_finsubset(A)
    g = S.group
    two_point = A.union(FinSubset(g.sub(a, g.scale(x, k)) for a in A))
    ok = all(S.holds(two_point, b) for b in _targets(target))
    return ChainDepth(k=k, two_point_holds=ok)


class ForcedSystem(SystemOfIdeals):
    """T_x(S) truncated at a fixed budget, packaged as a decidable system.

    The truncation is sound (holds implies T_x(S) holds) but not complete;
    it exists so the axiom checkers can sample forced systems directly.
    """

    def __init__(self, base: SystemOfIdeals, x, budget: Budget = DEFAULT_BUDGET):
        super().__init__(base.group)
        self.base = base
        self.x = x
        self.budget = budget
        self.name = f"T[{x!r}]({base.name})@{budget.k_max}"

    def _holds(self, A, b):
        return t_force_holds(self.base, self.x, A, b, self.budget).is_holds


# ---------------------------------------------------------------------------
# certificate replay (verification side; no search)


def replay_t(S: SystemOfIdeals, cert: TCertificate, A, target) -> bool:
    A = as_finsubset(A)
    if cert.k < 0:
        return False
    expected = expand_chain(S.group, A, cert.x, cert.k)
    if expected != cert.chain:
        return False
    return all(S.holds(cert.chain, b) for b in _targets(target))


def replay_u(S: SystemOfIdeals, cert: UCertificate, A, target) -> bool:
    g = S.group
    if cert.pos.x != cert.x or cert.neg.x != g.neg(cert.x):
        return False
    return replay_t(S, cert.pos, A, target) and replay_t(S, cert.neg, A, target)


def replay_compose(S: SystemOfIdeals, cert: ComposeCertificate, A, target) -> bool:
    A = as_finsubset(A)
    if len(cert.ks) != len(cert.xs) or any(k < 0 for k in cert.ks):
        return False
    expected = compose_expansion(S.group, A, cert.xs, cert.ks)
    if expected != cert.chain:
        return False
    return all(S.holds(cert.chain, b) for b in _targets(target))
