"""Decidable preordered commutative groups.

Three instances:

* :class:`ConeGroup` -- Z^d with a <= b iff b - a lies in the monoid
  generated by a finite list of "positive" integer vectors.  Rank-1
  elements are plain ints, higher ranks use int tuples.
* :class:`DiscreteGroup` -- Z preordered by equality (the cone group with
  no positive generators).
* :class:`DivisibilityGroup` -- nonzero elements of a cubic field, written
  multiplicatively, with a <= b iff b/a lies in the order O.

All elements are immutable values, all operations are pure, and the
preorders are decided exactly; cone membership is integer-exact on the
paths described in :func:`cone_membership`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import ratlin
from .numberring import CubicField

#: documented bound for the exhaustive fallback in cone_membership
DEFAULT_SEARCH_BOUND = 128


def _as_vector(v, rank):
    if rank == 1:
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"rank-1 elements are ints, got {v!r}")
        return v
    t = tuple(int(x) for x in v)
    if len(t) != rank:
        raise ValueError(f"expected a vector of length {rank}, got {v!r}")
    return t


class PreorderedGroup:
    """Common interface: abelian group operations plus a decidable preorder."""

    kind = "abstract"

    def element(self, raw):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, n: int):
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def order_is_equality(self) -> bool:
        return False


class ConeGroup(PreorderedGroup):
    kind = "cone-zd"

    def __init__(self, rank: int, positives=()):
        rank = int(rank)
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        self.positives = tuple(_as_vector(p, rank) for p in positives)
        self._zero = 0 if rank == 1 else (0,) * rank
        self._member_cache: dict = {}
        self._box_cache: dict = {}
        self._lcd_cache: dict = {}

    def __repr__(self):
        return f"ConeGroup(rank={self.rank}, positives={list(self.positives)})"

    @property
    def zero(self):
        return self._zero

    @property
    def order_is_equality(self):
        return not self.positives

    def element(self, raw):
        return _as_vector(raw, self.rank)

    def add(self, a, b):
        if self.rank == 1:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        if self.rank == 1:
            return -a
        return tuple(-x for x in a)

    def scale(self, a, n: int):
        if self.rank == 1:
            return a * n
        return tuple(x * n for x in a)

    def leq(self, a, b) -> bool:
        delta = self.sub(b, a)
        hit = self._member_cache.get(delta, _MISS)
        if hit is _MISS:
            hit = cone_membership(self.positives, delta, rank=self.rank) is not None
            self._member_cache[delta] = hit
        return hit


_MISS = object()


class DiscreteGroup(ConeGroup):
    """Z preordered by x = y."""

    kind = "discrete-z"

    def __init__(self):
        super().__init__(1, ())

    def __repr__(self):
        return "DiscreteGroup()"


class DivisibilityGroup(PreorderedGroup):
    """Divisibility group of a cubic order, written multiplicatively.

    The group operation is field multiplication (so `zero` is 1 and `neg`
    is inversion) and a <= b iff b/a lies in O.  Elements are identified up
    to units of O only through the preorder; no unit normalization is done.
    """

    kind = "divisibility"

    def __init__(self, field: CubicField):
        self.field = field
        self._box_cache: dict = {}

    def __repr__(self):
        return f"DivisibilityGroup({self.field!r})"

    @property
    def zero(self):
        return self.field.one

    def element(self, raw):
        el = self.field.of(*raw) if not isinstance(raw, tuple) else tuple(Fraction(c) for c in raw)
        if len(el) != 3:
            raise ValueError("field elements have three coordinates")
        if el == self.field.zero:
            raise ValueError("0 is not a member of the divisibility group")
        return el

    def add(self, a, b):
        return self.field.mul(a, b)

    def neg(self, a):
        return self.field.inv(a)

    def scale(self, a, n: int):
        return self.field.pow(a, n)

    def leq(self, a, b) -> bool:
        return self.field.is_in_order(self.field.div(b, a))


# ---------------------------------------------------------------------------
# cone membership


def cone_membership(positives, v, *, rank=None, search_bound=DEFAULT_SEARCH_BOUND):
    """Nonnegative integer coefficients m with sum(m_j * p_j) = v, or None.

    Exact (complete) decisions:
      * rationally infeasible instances (refuted by phase-1 simplex),
      * rank 1 (same-sign generators via reachability DP, mixed signs via a
        gcd construction),
      * generator lists whose matrix has full column rank (unique rational
        solution, checked for integrality and nonnegativity).

    Anything else falls back to exhaustive search over coefficient vectors
    of total sum <= `search_bound` (default 128); a None from that path
    means "no representation within the documented bound".  Returned
    coefficients always replay exactly.
    """
    positives = tuple(positives)
    if rank is None:
        probe = positives[0] if positives else v
        rank = 1 if isinstance(probe, int) else len(probe)
    positives = tuple(_as_vector(p, rank) for p in positives)
    v = _as_vector(v, rank)
    k = len(positives)
    zero = 0 if rank == 1 else (0,) * rank
    if v == zero:
        return [0] * k
    if k == 0:
        return None
    if rank == 1:
        return _membership_rank1(positives, v)
    cols = [[p[i] for p in positives] for i in range(rank)]
    status, _ = ratlin.feasible_point(cols, list(v))
    if status == "infeasible":
        return None
    status, sol = ratlin.solve_unique(cols, list(v))
    if status == "inconsistent":
        return None
    if status == "unique":
        if all(s.denominator == 1 and s >= 0 for s in sol):
            return [int(s) for s in sol]
        return None
    return _membership_search(positives, v, zero, search_bound)


def _membership_search(positives, v, zero, bound):
    # bounded exhaustive search, ascending total coefficient sum
    k = len(positives)

    def rec(idx, remaining, acc, coeffs):
        if idx == k - 1:
            # last coefficient forced by remaining budget? try all leftovers
            for c in range(remaining + 1):
                cand = tuple(acc[i] + c * positives[idx][i] for i in range(len(zero)))
                if cand == v:
                    return coeffs + [c]
            return None
        for c in range(remaining + 1):
            out = rec(idx + 1, remaining - c,
                      tuple(acc[i] + c * positives[idx][i] for i in range(len(zero))),
                      coeffs + [c])
            if out is not None:
                return out
        return None

    for total in range(1, bound + 1):
        out = rec(0, total, zero, [])
        if out is not None:
            return out
    return None


_dp_tables: dict = {}


def _membership_rank1(positives, v):
    pos = [(i, p) for i, p in enumerate(positives) if p > 0]
    neg = [(i, p) for i, p in enumerate(positives) if p < 0]
    k = len(positives)
    if pos and neg:
        return _mixed_sign_rank1(positives, v)
    if not pos and not neg:
        return None  # all generators zero, v != 0
    if neg:
        # mirror onto the positive case
        mirror = _membership_rank1(tuple(-p for p in positives), -v)
        return mirror
    if v < 0:
        return None
    gens = tuple(p for _, p in pos)
    table = _dp_tables.setdefault(gens, [0])  # table[s] = 1 + generator index, 0 unreachable
    # table[0] means "reachable with no steps"; encode reachable-root as -1
    if len(table) == 1:
        table[0] = -1
    while len(table) <= v:
        s = len(table)
        entry = 0
        for gi, p in enumerate(gens):
            if s >= p and table[s - p] != 0:
                entry = gi + 1
                break
        table.append(entry)
    if table[v] == 0:
        return None
    coeffs = [0] * k
    s = v
    while s:
        gi = table[s] - 1
        coeffs[pos[gi][0]] += 1
        s -= pos[gi][1]
    return coeffs


def _mixed_sign_rank1(positives, v):
    """Mixed-sign rank-1 membership: the monoid equals gcd(positives) * Z."""
    g = ratlin.gcd_list(p for p in positives if p)
    if v % g != 0:
        return None
    # unrestricted integer combination via running extended gcd
    nonzero = [(i, p) for i, p in enumerate(positives) if p]
    combo = {nonzero[0][0]: 1}
    cur = nonzero[0][1]
    for i, p in nonzero[1:]:
        gg, s, t = ratlin.xgcd(cur, p)
        combo = {j: c * s for j, c in combo.items()}
        combo[i] = combo.get(i, 0) + t
        cur = gg
        if cur == g:
            break
    scale = v // cur
    coeffs = [0] * len(positives)
    for j, c in combo.items():
        coeffs[j] = c * scale
    # clear negative coefficients using a positive/negative generator pair:
    # t*(-q)*p_j + t*p_j*q = 0 keeps the value fixed.
    p_idx, p_val = next((i, p) for i, p in enumerate(positives) if p > 0)
    q_idx, q_val = next((i, p) for i, p in enumerate(positives) if p < 0)
    for j in range(len(positives)):
        if j in (p_idx, q_idx) or coeffs[j] >= 0:
            continue
        pj = positives[j]
        if pj > 0:
            step = -q_val
            t = (-coeffs[j] + step - 1) // step
            coeffs[j] += t * step
            coeffs[q_idx] += t * pj
        else:
            step = p_val
            t = (-coeffs[j] + step - 1) // step
            coeffs[j] += t * step
            coeffs[p_idx] += t * (-pj)
    if coeffs[p_idx] < 0:
        step = -q_val
        t = (-coeffs[p_idx] + step - 1) // step
        coeffs[p_idx] += t * step
        coeffs[q_idx] += t * p_val
    if coeffs[q_idx] < 0:
        step = p_val
        t = (-coeffs[q_idx] + step - 1) // step
        coeffs[q_idx] += t * step
        coeffs[p_idx] += t * (-q_val)
    assert all(c >= 0 for c in coeffs)
    assert sum(c * p for c, p in zip(coeffs, positives)) == v
    return coeffs
