import random
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from gamblesets import (
    Infeasible,
    LinearProgram,
    Optimal,
    Unbounded,
    fm_feasible,
    lp_solve,
    rational,
    rational_str,
    verify_outcome,
)
from gamblesets.ratlp import EQ, LEQ, LT


def test_rational_parsing_and_canonical_strings():
    assert rational("3/4") == Fraction(3, 4)
    assert rational("-3") == Fraction(-3)
    assert rational(7) == Fraction(7)
    assert rational(Fraction(2, 6)) == Fraction(1, 3)
    assert rational_str(Fraction(2, 6)) == "1/3"
    assert rational_str(Fraction(-4, 2)) == "-2"


def test_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)


def test_single_variable_bound():
    lp = LinearProgram.build([1], [([1], LEQ, 3)])
    out = lp_solve(lp)
    assert out == Optimal(Fraction(3), (Fraction(3),))
    assert verify_outcome(lp, out)


def test_unconstrained_ray():
    lp = LinearProgram.build([1], [])
    out = lp_solve(lp)
    assert isinstance(out, Unbounded)
    assert verify_outcome(lp, out)


def test_forced_to_origin():
    lp = LinearProgram.build([1, 1], [([1, 1], LEQ, 0)])
    out = lp_solve(lp)
    assert out == Optimal(Fraction(0), (Fraction(0), Fraction(0)))
    assert verify_outcome(lp, out)


def test_infeasible_equalities():
    lp = LinearProgram.build([1], [([1], EQ, 2), ([1], EQ, 3)])
    assert lp_solve(lp) == Infeasible()


def test_zero_variable_programs():
    assert lp_solve(LinearProgram.build([], [])) == Optimal(Fraction(0), ())
    assert lp_solve(LinearProgram.build([], [((), LEQ, -1)])) == Infeasible()
    assert lp_solve(LinearProgram.build([], [((), EQ, 0)])) == Optimal(Fraction(0), ())


def test_row_length_mismatch_rejected():
    with pytest.raises(ValueError):
        LinearProgram.build([1, 1], [([1], LEQ, 0)])


def test_degenerate_cycling_program_terminates():
    # A classic cycling trap for naive pivoting; Bland's rule must finish.
    lp = LinearProgram.build(
        [Fraction(3, 4), -150, Fraction(1, 50), -6],
        [
            ([Fraction(1, 4), -60, Fraction(-1, 25), 9], LEQ, 0),
            ([Fraction(1, 2), -90, Fraction(-1, 50), 3], LEQ, 0),
            ([0, 0, 1, 0], LEQ, 1),
        ],
    )
    out = lp_solve(lp)
    assert isinstance(out, Optimal)
    assert out.value == Fraction(1, 20)
    assert verify_outcome(lp, out)


def test_fm_contradictory_bounds():
    assert not fm_feasible([([1], LEQ, 1), ([-1], LEQ, -2)])


def test_fm_simplex_on_a_segment():
    rows = [([1, 1], EQ, 1), ([-1, 0], LEQ, 0), ([0, -1], LEQ, 0)]
    assert fm_feasible(rows)


def test_fm_zero_outside_a_pointed_cone():
    # No convex weights put the cone spanned by (1,-1) and (-1,2) below zero.
    rows = [
        ([1, -1], LEQ, 0),
        ([-1, 2], LEQ, 0),
        ([1, 1], EQ, 1),
        ([-1, 0], LEQ, 0),
        ([0, -1], LEQ, 0),
    ]
    assert not fm_feasible(rows)


def test_fm_strict_rows():
    assert fm_feasible([([1], LT, 1), ([-1], LT, 0)])
    assert not fm_feasible([([1], LT, 0), ([-1], LT, 0)])
    assert not fm_feasible([([1], LT, 0), ([-1], LEQ, 0)])
    assert fm_feasible([([1, 1], EQ, 1), ([1, -1], LT, 0)])


def test_fm_rejects_unequal_rows():
    with pytest.raises(ValueError):
        fm_feasible([([1, 2], LEQ, 0), ([1], LEQ, 0)])


def _nonneg_rows(n):
    return [
        ([Fraction(-1) if i == j else Fraction(0) for i in range(n)], LEQ, Fraction(0))
        for j in range(n)
    ]


def _random_program(rng: random.Random) -> LinearProgram:
    n = rng.randint(1, 4)
    rows = []
    for _ in range(rng.randint(0, 6)):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        rel = LEQ if rng.random() < 0.75 else EQ
        rows.append((coeffs, rel, Fraction(rng.randint(-3, 3))))
    return LinearProgram.build([Fraction(rng.randint(-3, 3)) for _ in range(n)], rows)


def test_simplex_and_elimination_agree_on_feasibility():
    rng = random.Random(20240917)
    for _ in range(500):
        lp = _random_program(rng)
        out = lp_solve(lp)
        assert verify_outcome(lp, out)
        feasible = not isinstance(out, Infeasible)
        rows = [(list(c), rel, b) for c, rel, b in lp.constraints] + _nonneg_rows(lp.num_vars)
        assert fm_feasible(rows) == feasible
        if isinstance(out, Optimal):
            # No feasible point does strictly better: checked by elimination.
            better = rows + [([-c for c in lp.objective], LT, -out.value)]
            assert not fm_feasible(better)


@given(st.integers(0, 2**31 - 1))
def test_solver_is_deterministic(seed):
    lp = _random_program(random.Random(seed))
    assert lp_solve(lp) == lp_solve(lp)
