import random
from fractions import Fraction

from regentail.ratlin import feasible_point, scale_to_integers, solve_unique, xgcd


def test_xgcd_bezout():
    rng = random.Random(7)
    for _ in range(300):
        a = rng.randint(-500, 500)
        b = rng.randint(-500, 500)
        g, s, t = xgcd(a, b)
        assert s * a + t * b == g
        assert g >= 0
        if a or b:
            assert a % g == 0 and b % g == 0


def test_solve_unique_basic():
    status, x = solve_unique([[2, 0], [0, 4]], [6, 8])
    assert status == "unique"
    assert x == [Fraction(3), Fraction(2)]
    status, _ = solve_unique([[1, 1], [2, 2]], [1, 3])
    assert status == "inconsistent"
    status, _ = solve_unique([[1, 1], [2, 2]], [1, 2])
    assert status == "underdetermined"


def test_feasible_point_finds_solution():
    # x1 + x2 = 2, x1 - x2 = 0  ->  (1, 1)
    status, x = feasible_point([[1, 1], [1, -1]], [2, 0])
    assert status == "feasible"
    assert x == [Fraction(1), Fraction(1)]


def test_feasible_point_farkas():
    # x1 + x2 = -1 with x >= 0 is infeasible
    status, y = feasible_point([[1, 1]], [-1])
    assert status == "infeasible"
    assert y[0] * 1 <= 0 and y[0] * (-1) > 0


def test_feasible_point_random_replay():
    """Either outcome must replay exactly on random instances."""
    rng = random.Random(99)
    feasible = infeasible = 0
    for _ in range(200):
        m = rng.randint(1, 3)
        n = rng.randint(1, 4)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        rhs = [rng.randint(-6, 6) for _ in range(m)]
        status, out = feasible_point(rows, rhs)
        if status == "feasible":
            feasible += 1
            assert all(v >= 0 for v in out)
            for i in range(m):
                assert sum(Fraction(rows[i][j]) * out[j] for j in range(n)) == rhs[i]
        else:
            infeasible += 1
            assert sum(out[i] * rhs[i] for i in range(m)) > 0
            for j in range(n):
                assert sum(out[i] * rows[i][j] for i in range(m)) <= 0
    assert feasible > 20 and infeasible > 20


def test_scale_to_integers():
    ints, mult = scale_to_integers([Fraction(1, 2), Fraction(2, 3), Fraction(1)])
    assert mult == 6
    assert ints == [3, 4, 6]
