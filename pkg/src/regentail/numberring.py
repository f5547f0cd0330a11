"""Exact arithmetic in a cubic number field and its monogenic order.

The field is K = Q[t]/(f) for a monic irreducible integer cubic f, with the
order O = Z[t]/(f) sitting inside it.  O is generally *not* integrally
closed, and nothing here normalizes it away: divisibility questions are
asked of O itself.  Field elements are coordinate triples of Fractions
``(c0, c1, c2)`` representing ``c0 + c1 t + c2 t^2``; Fraction keeps every
coordinate in lowest terms, so equality, hashing and sorting are canonical.

Finitely generated fractional ideals (O-submodules of K) are stored as a
positive common denominator D together with the column Hermite normal form
of the rank-3 integer lattice of numerators; HNF uniqueness makes ideal
equality a plain comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratlin import gcd_list, lcm_list, solve_unique

FieldElt = tuple[Fraction, Fraction, Fraction]

DEFAULT_MIN_POLY = (7, 1, -1)  # t^3 - t^2 + t + 7


def _as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floating point coordinates are not accepted")
    return Fraction(v)


class CubicField:
    """Q[t]/(f) for monic f = t^3 + a2 t^2 + a1 t + a0 with integer a_i.

    f must be irreducible over Q (for a cubic, equivalent to having no
    rational root), otherwise the quotient has zero divisors and inverses
    break down.
    """

    def __init__(self, coeffs=DEFAULT_MIN_POLY):
        a0, a1, a2 = (int(c) for c in coeffs)
        self.coeffs = (a0, a1, a2)
        self._check_irreducible()
        # t^3 = -a2 t^2 - a1 t - a0 ; t^4 = (a2^2-a1) t^2 + (a2 a1 - a0) t + a2 a0
        self._t3 = (Fraction(-a0), Fraction(-a1), Fraction(-a2))
        self._t4 = (Fraction(a2 * a0), Fraction(a2 * a1 - a0), Fraction(a2 * a2 - a1))
        self.one: FieldElt = (Fraction(1), Fraction(0), Fraction(0))
        self.zero: FieldElt = (Fraction(0), Fraction(0), Fraction(0))
        self.t: FieldElt = (Fraction(0), Fraction(1), Fraction(0))

    def _check_irreducible(self):
        a0, a1, a2 = self.coeffs
        if a0 == 0:
            raise ValueError("reducible minimal polynomial (t divides it)")
        for num in {d for d in range(1, abs(a0) + 1) if a0 % d == 0}:
            for r in (num, -num):
                if r * r * r + a2 * r * r + a1 * r + a0 == 0:
                    raise ValueError(f"reducible minimal polynomial (root t={r})")

    def __eq__(self, other):
        return isinstance(other, CubicField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("CubicField", self.coeffs))

    def __repr__(self):
        a0, a1, a2 = self.coeffs
        return f"CubicField(t^3{a2:+d}t^2{a1:+d}t{a0:+d})"

    def of(self, c0, c1=0, c2=0) -> FieldElt:
        return (_as_fraction(c0), _as_fraction(c1), _as_fraction(c2))

    def add(self, u: FieldElt, v: FieldElt) -> FieldElt:
        return (u[0] + v[0], u[1] + v[1], u[2] + v[2])

    def sub(self, u: FieldElt, v: FieldElt) -> FieldElt:
        return (u[0] - v[0], u[1] - v[1], u[2] - v[2])

    def neg(self, u: FieldElt) -> FieldElt:
        return (-u[0], -u[1], -u[2])

    def mul(self, u: FieldElt, v: FieldElt) -> FieldElt:
        p = [Fraction(0)] * 5
        for i in range(3):
            ui = u[i]
            if ui:
                for j in range(3):
                    p[i + j] += ui * v[j]
        t3, t4 = self._t3, self._t4
        return (
            p[0] + p[3] * t3[0] + p[4] * t4[0],
            p[1] + p[3] * t3[1] + p[4] * t4[1],
            p[2] + p[3] * t3[2] + p[4] * t4[2],
        )

    def inv(self, u: FieldElt) -> FieldElt:
        """Inverse via the extended Euclidean algorithm in Q[t] modulo f."""
        if u == self.zero:
            raise ZeroDivisionError("zero has no inverse in the field")
        a0, a1, a2 = self.coeffs
        r0 = [Fraction(a0), Fraction(a1), Fraction(a2), Fraction(1)]
        r1 = [u[0], u[1], u[2], Fraction(0)]
        s0 = [Fraction(0)] * 4
        s1 = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]

        def deg(p):
            for d in range(3, -1, -1):
                if p[d] != 0:
                    return d
            return -1

        while True:
            d1 = deg(r1)
            if d1 <= 0:
                break
            d0 = deg(r0)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            q = r0[d0] / r1[d1]
            shift = d0 - d1
            for i in range(d1 + 1):
                r0[i + shift] -= q * r1[i]
            for i in range(4 - shift):
                s0[i + shift] -= q * s1[i]
        if deg(r1) < 0:
            # impossible for irreducible f and u != 0
            raise ZeroDivisionError("element is a zero divisor; field modulus reducible?")
        c = r1[0]
        inv = tuple(s1[i] / c for i in range(3))
        assert self.mul(u, inv) == self.one
        return inv

    def div(self, u: FieldElt, v: FieldElt) -> FieldElt:
        return self.mul(u, self.inv(v))

    def pow(self, u: FieldElt, n: int) -> FieldElt:
        if n < 0:
            return self.pow(self.inv(u), -n)
        out = self.one
        base = u
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_in_order(self, u: FieldElt) -> bool:
        """Membership in O = Z[t]/(f): integer coordinates."""
        return all(c.denominator == 1 for c in u)

    def cubic_relation(self, u: FieldElt) -> tuple[Fraction, Fraction, Fraction]:
        """Return (p, q, r) with u^3 = p u^2 + q u + r, for u of degree 3 over Q."""
        u2 = self.mul(u, u)
        u3 = self.mul(u2, u)
        rows = [[u2[i], u[i], self.one[i]] for i in range(3)]
        status, sol = solve_unique(rows, list(u3))
        if status != "unique":
            raise ValueError("element does not have degree 3 over Q")
        return tuple(sol)


def hnf(matrix):
    """Column Hermite normal form of an integer matrix with full row rank.

    `matrix` is a sequence of d rows whose columns span a rank-d lattice.
    Returns the unique d x d upper-triangular basis (tuple of row tuples)
    with positive diagonal and entries right of the diagonal reduced into
    [0, diagonal).  Column operations only, so the column span is preserved.
    """
    rows = [list(r) for r in matrix]
    d = len(rows)
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    cols = [[rows[i][j] for i in range(d)] for j in range(len(rows[0]))]
    cols = [c for c in cols if any(c)]
    pivots = [None] * d
    for r in range(d - 1, -1, -1):
        while True:
            live = [c for c in cols if c[r] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda c: abs(c[r]))
            p = live[0]
            for c in live[1:]:
                q = c[r] // p[r]
                for i in range(d):
                    c[i] -= q * p[i]
            cols = [c for c in cols if any(c)]
        live = [c for c in cols if c[r] != 0]
        if not live:
            raise ValueError("rank-deficient input")
        p = live[0]
        if p[r] < 0:
            p = [-x for x in p]
        pivots[r] = p
        cols = [c for c in cols if c is not live[0]]
    # remaining columns are zero in every row processed last... they must be zero
    basis = pivots
    for c in range(1, d):
        for r in range(c - 1, -1, -1):
            q = basis[c][r] // basis[r][r]
            if q:
                for i in range(d):
                    basis[c][i] -= q * basis[r][i]
    return tuple(tuple(basis[c][r] for c in range(d)) for r in range(d))


@dataclass(frozen=True)
class FractionalIdeal:
    """D and a 3x3 HNF basis matrix (rows) of the lattice D*I in coordinates 1, t, t^2."""

    field: CubicField
    den: int
    basis: tuple[tuple[int, int, int], ...]

    def columns(self):
        return [tuple(self.basis[r][c] for r in range(3)) for c in range(3)]

    def basis_elements(self) -> list[FieldElt]:
        d = Fraction(1, self.den)
        return [(col[0] * d, col[1] * d, col[2] * d) for col in self.columns()]


def _normalized(field, den, rows):
    g = gcd_list([den] + [x for row in rows for x in row])
    if g > 1:
        den //= g
        rows = tuple(tuple(x // g for x in row) for row in rows)
    return FractionalIdeal(field, den, tuple(tuple(row) for row in rows))


def _span_columns(field: CubicField, gens) -> tuple[int, list[list[int]]]:
    vecs = []
    for g in gens:
        cur = g
        for _ in range(3):
            vecs.append(cur)
            cur = field.mul(cur, field.t)
    den = lcm_list(c.denominator for v in vecs for c in v)
    cols = [[int(c * den) for c in v] for v in vecs]
    return den, cols


def ideal_from_generators(field: CubicField, gens) -> FractionalIdeal:
    """The fractional ideal (O-module) generated by the given field elements.

    The lattice is spanned by g * t^j for each generator g and j in 0..2;
    the monic reduction keeps multiplication by t inside the span, which is
    exactly the module property over O.
    """
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("empty generator list")
    if any(g == field.zero for g in gens):
        raise ValueError("zero generator")
    den, cols = _span_columns(field, gens)
    basis = hnf([[col[i] for col in cols] for i in range(3)])
    return _normalized(field, den, basis)


def ideal_extend(ideal: FractionalIdeal, gens) -> FractionalIdeal:
    """The ideal generated by `ideal`'s elements together with `gens`."""
    gens = [tuple(g) for g in gens]
    if any(g == ideal.field.zero for g in gens):
        raise ValueError("zero generator")
    if not gens:
        return ideal
    den2, cols2 = _span_columns(ideal.field, gens)
    den = lcm_list([ideal.den, den2])
    s1 = den // ideal.den
    s2 = den // den2
    cols = [[x * s1 for x in col] for col in ideal.columns()]
    cols += [[x * s2 for x in col] for col in cols2]
    basis = hnf([[col[i] for col in cols] for i in range(3)])
    return _normalized(ideal.field, den, basis)


def ideal_contains(ideal: FractionalIdeal, elt) -> tuple[int, int, int] | None:
    """Integer coordinates of D*elt in the HNF basis, or None.

    Back-substitution on the upper-triangular basis; a returned certificate
    (u0, u1, u2) replays as sum(u_c * column_c) == D * elt exactly.
    """
    elt = tuple(elt)
    w = [c * ideal.den for c in elt]
    if any(c.denominator != 1 for c in w):
        return None
    w = [int(c) for c in w]
    cols = ideal.columns()
    coeffs = [0, 0, 0]
    for r in range(2, -1, -1):
        diag = cols[r][r]
        if w[r] % diag != 0:
            return None
        q = w[r] // diag
        coeffs[r] = q
        if q:
            for i in range(3):
                w[i] -= q * cols[r][i]
    if any(w):
        return None
    return tuple(coeffs)


def ideal_to_wire(ideal: FractionalIdeal) -> tuple[int, list[int]]:
    """(D, 9 integers row-major)."""
    return ideal.den, [x for row in ideal.basis for x in row]


def ideal_from_wire(field: CubicField, den: int, flat) -> FractionalIdeal:
    flat = [int(x) for x in flat]
    if den <= 0 or len(flat) != 9:
        raise ValueError("ideal wire format is (positive D, 9 integers)")
    rows = tuple(tuple(flat[3 * r : 3 * r + 3]) for r in range(3))
    return FractionalIdeal(field, int(den), rows)
