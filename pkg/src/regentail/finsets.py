"""Nonempty finite subsets of group elements, plus the group-aware set ops.

A FinSubset stores its elements sorted and deduplicated under canonical
equality, so union, Minkowski sum and translation are deterministic and the
container is usable as a cache key.
"""

from __future__ import annotations


class FinSubset:
    """Canonical nonempty finite set of elements of one group instance."""

    __slots__ = ("elems",)

    def __init__(self, iterable):
        elems = tuple(sorted(set(iterable)))
        if not elems:
            raise ValueError("FinSubset must be nonempty")
        object.__setattr__(self, "elems", elems)

    @classmethod
    def of(cls, *elems):
        return cls(elems)

    def __setattr__(self, *_):
        raise AttributeError("FinSubset is immutable")

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __contains__(self, x):
        return x in self.elems

    def __eq__(self, other):
        return isinstance(other, FinSubset) and self.elems == other.elems

    def __hash__(self):
        return hash(self.elems)

    def __repr__(self):
        return "{" + ", ".join(repr(e) for e in self.elems) + "}"

    def union(self, other) -> "FinSubset":
        return FinSubset(self.elems + tuple(other))

    def with_element(self, x) -> "FinSubset":
        return FinSubset(self.elems + (x,))


def as_finsubset(value) -> FinSubset:
    if isinstance(value, FinSubset):
        return value
    return FinSubset(value)


def translate(g, A: FinSubset, x) -> FinSubset:
    """A + x."""
    return FinSubset(g.add(a, x) for a in A)


def negate(g, A: FinSubset) -> FinSubset:
    return FinSubset(g.neg(a) for a in A)


def minkowski(g, A: FinSubset, B: FinSubset) -> FinSubset:
    """A + B = {a + b}."""
    return FinSubset(g.add(a, b) for a in A for b in B)


def diff_set(g, A: FinSubset, B: FinSubset) -> FinSubset:
    """A - B = {a - b : a in A, b in B}."""
    return FinSubset(g.sub(a, b) for a in A for b in B)
