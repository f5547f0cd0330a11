"""Exact rational linear algebra.

Everything here works over `fractions.Fraction`; no floating point is used
anywhere in the package, because the verdicts built on top of these routines
are logical claims and rounding would falsify them.

The main entry points are :func:`solve_unique` (Gaussian elimination) and
:func:`feasible_point`, a phase-1 simplex with Bland's rule that either
produces a nonnegative rational solution of ``A x = b`` or an exact Farkas
witness of infeasibility.  Both outcomes are replayable by plain arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def lcm_list(values) -> int:
    out = 1
    for v in values:
        v = abs(v)
        if v:
            out = out // gcd(out, v) * v
    return out


def scale_to_integers(values) -> tuple[list[int], int]:
    """Scale rationals by the lcm of their denominators; return (ints, multiplier)."""
    fracs = [Fraction(v) for v in values]
    mult = lcm_list(f.denominator for f in fracs)
    return [int(f * mult) for f in fracs], mult


def solve_unique(rows, rhs):
    """Solve ``rows . x = rhs`` by exact Gaussian elimination.

    Returns a pair (status, x) where status is one of "unique",
    "inconsistent", "underdetermined"; x is a list of Fractions for
    "unique" and None otherwise.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return "inconsistent", None
    if len(pivots) < n:
        return "underdetermined", None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return "unique", x


def feasible_point(rows, rhs):
    """Decide ``exists x >= 0 with rows . x = rhs`` exactly.

    Returns ("feasible", x) with x a list of nonnegative Fractions, or
    ("infeasible", y) with y a list of Fractions such that y.col <= 0 for
    every column of `rows` and y.rhs > 0 (a Farkas witness).  Phase-1
    simplex with Bland's rule, so termination is guaranteed.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return "feasible", []
    flip = [Fraction(rhs[i]) < 0 for i in range(m)]
    # tableau columns: 0..n-1 originals, n..n+m-1 artificials, last = rhs
    tab = []
    for i in range(m):
        sign = -1 if flip[i] else 1
        row = [sign * Fraction(v) for v in rows[i]]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row.append(sign * Fraction(rhs[i]))
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m + 1
    # phase-1 objective row: reduced costs; artificial columns start at 0
    obj = [Fraction(0)] * width
    for j in range(n):
        obj[j] = -sum(tab[i][j] for i in range(m))
    obj[width - 1] = -sum(tab[i][width - 1] for i in range(m))

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][width - 1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 objective unbounded; inputs malformed")
        pv = tab[leave][enter]
        tab[leave] = [v / pv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, tab[leave])]
        basis[leave] = enter

    value = -obj[width - 1]
    if value == 0:
        x = [Fraction(0)] * n
        for i, bj in enumerate(basis):
            if bj < n:
                x[bj] = tab[i][width - 1]
        assert all(v >= 0 for v in x)
        return "feasible", x
    # simplex multipliers from the artificial reduced costs: obj[n+i] = 1 - y_i
    y = [Fraction(1) - obj[n + i] for i in range(m)]
    y = [-v if flip[i] else v for i, v in enumerate(y)]
    assert sum(y[i] * Fraction(rhs[i]) for i in range(m)) > 0
    for j in range(n):
        assert sum(y[i] * Fraction(rows[i][j]) for i in range(m)) <= 0
    return "infeasible", y
