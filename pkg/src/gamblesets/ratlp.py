"""Exact rational linear programming.

Scalars are ``fractions.Fraction`` throughout, so arithmetic is exact and
open/closed cone distinctions never fall to rounding. Two independent
decision paths are provided:

* :func:`lp_solve` -- two-phase primal simplex with Bland's pivoting rule
  (termination guaranteed on degenerate programs), returning witnesses that
  re-verify by substitution for every outcome.
* :func:`fm_feasible` -- Fourier-Motzkin elimination, the designated
  brute-force feasibility oracle for differential testing. Beyond the scalar
  type it shares no code with the simplex.

All variables handled by :func:`lp_solve` are implicitly constrained to be
nonnegative; :func:`fm_feasible` has no implicit constraints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]

LEQ = "<="
EQ = "=="
LT = "<"

_RELATIONS = (LEQ, EQ, LT)

Constraint = tuple[tuple[Fraction, ...], str, Fraction]


def rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int, Fraction, or string ("3", "-3", "3/4").

    Floats are rejected outright: they carry rounding error and would poison
    every downstream cone test.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, string, or Fraction")
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rational_str(value: Fraction) -> str:
    """Canonical wire form: "n" or "n/d" with d > 0 and gcd(|n|, d) = 1."""
    return str(value)


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x  subject to the constraint rows and x >= 0."""

    num_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length does not match num_vars")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != self.num_vars:
                raise ValueError("constraint row length does not match num_vars")
            if rel not in (LEQ, EQ):
                raise ValueError(f"unsupported relation {rel!r} in linear program")

    @classmethod
    def build(
        cls,
        objective: Sequence[RationalLike],
        constraints: Iterable[tuple[Sequence[RationalLike], str, RationalLike]],
    ) -> "LinearProgram":
        obj = tuple(rational(v) for v in objective)
        rows = tuple(
            (tuple(rational(v) for v in coeffs), rel, rational(bound))
            for coeffs, rel, bound in constraints
        )
        return cls(len(obj), obj, rows)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    assignment: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    feasible_point: tuple[Fraction, ...]
    improving_ray: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    pass


LPOutcome = Union[Optimal, Unbounded, Infeasible]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(rows: list[list[Fraction]], objrow: list[Fraction] | None,
           basis: list[int], r: int, j: int) -> None:
    prow = rows[r]
    p = prow[j]
    if p != 1:
        rows[r] = prow = [v / p for v in prow]
    for i, row in enumerate(rows):
        if i != r and row[j]:
            f = row[j]
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    if objrow is not None and objrow[j]:
        f = objrow[j]
        objrow[:] = [a - f * b for a, b in zip(objrow, prow)]
    basis[r] = j


def _run_simplex(rows: list[list[Fraction]], objrow: list[Fraction],
                 basis: list[int], allowed: range) -> int | None:
    """Bland's rule loop. Returns None at optimality, else the entering
    column witnessing unboundedness."""
    while True:
        enter = None
        for j in allowed:
            if objrow[j] > 0:
                enter = j  # smallest improving index
                break
        if enter is None:
            return None
        leave = None
        best = None
        for r, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                t = row[-1] / a
                if best is None or t < best or (t == best and basis[r] < basis[leave]):
                    best = t
                    leave = r
        if leave is None:
            return enter
        _pivot(rows, objrow, basis, leave, enter)


def lp_solve(lp: LinearProgram) -> LPOutcome:
    """Exact two-phase simplex. Every outcome carries a witness that
    verifies by substitution (see :func:`verify_outcome`)."""
    n = lp.num_vars
    if n == 0:
        for _, rel, bound in lp.constraints:
            if rel == LEQ and bound < 0:
                return Infeasible()
            if rel == EQ and bound != 0:
                return Infeasible()
        return Optimal(_ZERO, ())

    n_slack = sum(1 for _, rel, _ in lp.constraints if rel == LEQ)
    ncols = n + n_slack

    rows: list[list[Fraction]] = []
    basis: list[int] = []
    needs_art: list[int] = []
    si = 0
    for coeffs, rel, bound in lp.constraints:
        row = list(coeffs) + [_ZERO] * n_slack + [bound]
        slack = None
        if rel == LEQ:
            slack = n + si
            row[slack] = _ONE
            si += 1
        if row[-1] < 0:
            row = [-v for v in row]
        rows.append(row)
        if slack is not None and row[slack] == 1:
            basis.append(slack)
        else:
            basis.append(-1)
            needs_art.append(len(rows) - 1)

    n_art = len(needs_art)
    total = ncols + n_art
    for r, row in enumerate(rows):
        rows[r] = row[:-1] + [_ZERO] * n_art + [row[-1]]
    for k, r in enumerate(needs_art):
        rows[r][ncols + k] = _ONE
        basis[r] = ncols + k

    if n_art:
        # Phase 1: maximize minus the sum of artificials.
        objrow = [_ZERO] * (total + 1)
        for k in range(n_art):
            objrow[ncols + k] = -_ONE
        for r in needs_art:
            objrow = [a + b for a, b in zip(objrow, rows[r])]
        _run_simplex(rows, objrow, basis, range(total))
        if -objrow[-1] != 0:
            return Infeasible()
        # Drive remaining artificials (all at value 0) out of the basis.
        keep: list[int] = []
        for r in range(len(rows)):
            if basis[r] >= ncols:
                pivot_col = next((j for j in range(ncols) if rows[r][j] != 0), None)
                if pivot_col is None:
                    continue  # redundant row
                _pivot(rows, None, basis, r, pivot_col)
            keep.append(r)
        rows = [rows[r] for r in keep]
        basis = [basis[r] for r in keep]

    objrow = list(lp.objective) + [_ZERO] * (total - n) + [_ZERO]
    for r, row in enumerate(rows):
        f = objrow[basis[r]]
        if f:
            objrow = [a - f * b for a, b in zip(objrow, row)]

    enter = _run_simplex(rows, objrow, basis, range(ncols))
    point = [_ZERO] * total
    for r, row in enumerate(rows):
        point[basis[r]] = row[-1]
    if enter is None:
        return Optimal(-objrow[-1], tuple(point[:n]))
    ray = [_ZERO] * total
    ray[enter] = _ONE
    for r, row in enumerate(rows):
        ray[basis[r]] = -row[enter]
    return Unbounded(tuple(point[:n]), tuple(ray[:n]))


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), _ZERO)


def satisfies(constraints: Iterable[Constraint], x: Sequence[Fraction]) -> bool:
    """Exact substitution check of every constraint row."""
    for coeffs, rel, bound in constraints:
        lhs = _dot(coeffs, x)
        if rel == LEQ and not lhs <= bound:
            return False
        if rel == EQ and lhs != bound:
            return False
        if rel == LT and not lhs < bound:
            return False
    return True


def verify_outcome(lp: LinearProgram, outcome: LPOutcome) -> bool:
    """Re-verify a solver witness by exact substitution.

    ``Optimal``: the assignment is feasible and attains the value.
    ``Unbounded``: the point is feasible, the ray keeps every constraint and
    the nonnegativity bounds satisfied forever, and the objective strictly
    increases along it. ``Infeasible`` carries no witness (cross-check it
    against :func:`fm_feasible`).
    """
    if isinstance(outcome, Infeasible):
        return True
    if isinstance(outcome, Optimal):
        x = outcome.assignment
        return (
            len(x) == lp.num_vars
            and all(v >= 0 for v in x)
            and satisfies(lp.constraints, x)
            and _dot(lp.objective, x) == outcome.value
        )
    if isinstance(outcome, Unbounded):
        p, d = outcome.feasible_point, outcome.improving_ray
        if len(p) != lp.num_vars or len(d) != lp.num_vars:
            return False
        if not (all(v >= 0 for v in p) and satisfies(lp.constraints, p)):
            return False
        if not all(v >= 0 for v in d):
            return False
        for coeffs, rel, _ in lp.constraints:
            drift = _dot(coeffs, d)
            if rel == LEQ and drift > 0:
                return False
            if rel == EQ and drift != 0:
                return False
        return _dot(lp.objective, d) > 0
    return False


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination
# ---------------------------------------------------------------------------


def _first_nonzero(coeffs: Sequence[Fraction]) -> int | None:
    for j, v in enumerate(coeffs):
        if v != 0:
            return j
    return None


def _constant_holds(rel: str, bound: Fraction) -> bool:
    if rel == LEQ:
        return bound >= 0
    if rel == LT:
        return bound > 0
    return bound == 0


def fm_feasible(
    constraints: Iterable[tuple[Sequence[RationalLike], str, RationalLike]],
    num_vars: int | None = None,
) -> bool:
    """Decide feasibility by Fourier-Motzkin variable elimination.

    Relations may be "<=", "==", or "<" (the strict form is what lets the
    oracle decide open conditions such as "some coefficient positive" in one
    shot). No implicit sign constraints: include them as rows if wanted.
    """
    rows: list[tuple[list[Fraction], str, Fraction]] = []
    width = num_vars
    for coeffs, rel, bound in constraints:
        c = [rational(v) for v in coeffs]
        if width is None:
            width = len(c)
        elif len(c) != width:
            raise ValueError("constraint rows of unequal length")
        if rel not in _RELATIONS:
            raise ValueError(f"unsupported relation {rel!r}")
        rows.append((c, rel, rational(bound)))
    if width is None:
        width = 0

    # Consume equalities by substitution, one variable per equality row.
    while True:
        pivot = None
        rest: list[tuple[list[Fraction], str, Fraction]] = []
        for c, rel, b in rows:
            if pivot is None and rel == EQ:
                j = _first_nonzero(c)
                if j is None:
                    if b != 0:
                        return False
                    continue
                pivot = (c, b, j)
                continue
            rest.append((c, rel, b))
        if pivot is None:
            rows = rest
            break
        pc, pb, pj = pivot
        rows = []
        for c, rel, b in rest:
            if c[pj] != 0:
                f = c[pj] / pc[pj]
                c = [a - f * p for a, p in zip(c, pc)]
                b = b - f * pb
            rows.append((c, rel, b))

    def sift(items: list[tuple[list[Fraction], str, Fraction]]):
        kept = []
        for c, rel, b in items:
            if _first_nonzero(c) is None:
                if not _constant_holds(rel, b):
                    return None
            else:
                kept.append((c, rel, b))
        return kept

    sifted = sift(rows)
    if sifted is None:
        return False
    rows = sifted

    while rows:
        counts = {}
        for c, _, _ in rows:
            for j, v in enumerate(c):
                if v != 0:
                    pos, neg = counts.get(j, (0, 0))
                    counts[j] = (pos + (v > 0), neg + (v < 0))
        if not counts:
            break
        target = min(counts, key=lambda j: (counts[j][0] * counts[j][1], j))
        upper = [row for row in rows if row[0][target] > 0]
        lower = [row for row in rows if row[0][target] < 0]
        new = [row for row in rows if row[0][target] == 0]
        for (cu, ru, bu), (cl, rl, bl) in itertools.product(upper, lower):
            fu, fl = cu[target], -cl[target]
            c = [a / fu + d / fl for a, d in zip(cu, cl)]
            b = bu / fu + bl / fl
            rel = LT if (ru == LT or rl == LT) else LEQ
            new.append((c, rel, b))
        sifted = sift(new)
        if sifted is None:
            return False
        rows = sifted
    return True
