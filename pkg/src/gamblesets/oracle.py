"""Independent ground truth for differential testing.

Everything here decides cone questions through Fourier-Motzkin elimination
(``fm_*`` functions) and decides extension membership by literally searching
over explicit lists of assessment sets with repetition
(:func:`brute_ext_contains`), so it shares no decision logic with the
simplex-backed engine. Also home to the seeded instance generators used by
the test suites and the command line.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .extension import Assessment, GambleSet
from .gambles import Gamble, PossibilitySpace, gt, wgeq, zero
from .ratlp import EQ, LEQ, LT, fm_feasible

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _rows_nonneg(k: int):
    return [
        (tuple(-_ONE if i == j else _ZERO for i in range(k)), LEQ, _ZERO)
        for j in range(k)
    ]


def _dedup(gambles: Sequence[Gamble]) -> list[Gamble]:
    seen: dict[Gamble, None] = {}
    for g in gambles:
        seen.setdefault(g, None)
    return list(seen)


def fm_posi_contains(generators: Sequence[Gamble], f: Gamble) -> bool:
    """f is a nonnegative combination of the generators with positive total."""
    gens = _dedup(generators)
    k = len(gens)
    if k == 0:
        return False
    space = f.space
    rows = _rows_nonneg(k)
    for i in range(space.size):
        rows.append((tuple(g.values[i] for g in gens), EQ, f.values[i]))
    rows.append(((-_ONE,) * k, LT, _ZERO))  # positive total, as a strict row
    return fm_feasible(rows)


def fm_zero_in_desext(generators: Sequence[Gamble]) -> bool:
    """Zero lies below a positive combination of the generators. The system
    is homogeneous, so the total is normalized to one instead of using a
    strict row."""
    gens = _dedup(generators)
    k = len(gens)
    if k == 0:
        return False
    space = gens[0].space
    rows = _rows_nonneg(k)
    for i in range(space.size):
        rows.append((tuple(g.values[i] for g in gens), LEQ, _ZERO))
    rows.append(((_ONE,) * k, EQ, _ONE))
    return fm_feasible(rows)


def fm_desext_contains(generators: Sequence[Gamble], f: Gamble) -> bool:
    """Weak-background membership: f weakly dominates zero, or f dominates a
    positive combination of the generators."""
    if wgeq(f, zero(f.space)):
        return True
    gens = _dedup(generators)
    k = len(gens)
    if k == 0:
        return False
    space = f.space
    rows = _rows_nonneg(k)
    for i in range(space.size):
        rows.append((tuple(g.values[i] for g in gens), LEQ, f.values[i]))
    rows.append(((-_ONE,) * k, LT, _ZERO))
    return fm_feasible(rows)


def fm_desext_contains_strict(generators: Sequence[Gamble], f: Gamble) -> bool:
    """Strict-background membership, decided over the three-branch split:
    f strictly dominates zero, or f is exactly a positive combination, or a
    positive combination plus uniform positive slack stays below f."""
    if gt(f, zero(f.space)):
        return True
    gens = _dedup(generators)
    if fm_posi_contains(gens, f):
        return True
    k = len(gens)
    if k == 0:
        return False
    space = f.space
    rows = _rows_nonneg(k + 1)  # coefficients plus the slack variable
    for i in range(space.size):
        rows.append((tuple(g.values[i] for g in gens) + (_ONE,), LEQ, f.values[i]))
    rows.append(((-_ONE,) * k + (_ZERO,), LT, _ZERO))  # positive coefficient total
    rows.append(((_ZERO,) * k + (-_ONE,), LT, _ZERO))  # positive slack
    return fm_feasible(rows)


class BruteCapExceeded(RuntimeError):
    pass


def brute_ext_contains(
    assessment: Assessment,
    candidate: GambleSet,
    max_len: int | None = None,
    cap: int = 10**6,
) -> bool:
    """Literal search for extension membership: try every list of assessment
    sets with repetition up to ``max_len`` (default: one past the number of
    distinct sets) and test the closure condition with Fourier-Motzkin
    deciders only."""
    z = zero(assessment.space)
    if assessment.is_empty:
        return any(wgeq(f, z) for f in candidate.members)
    sets = assessment.sets
    if max_len is None:
        max_len = len(sets) + 1
    skip_memo: dict[frozenset, bool] = {}
    hit_memo: dict[tuple[frozenset, Gamble], bool] = {}
    budget = cap
    for length in range(1, max_len + 1):
        for chosen in itertools.product(sets, repeat=length):
            count = 1
            for s in chosen:
                count *= len(s.members)
            budget -= count
            if budget < 0:
                raise BruteCapExceeded(f"brute-force search exceeded the cap of {cap}")
            good = True
            for seq in itertools.product(*(s.members for s in chosen)):
                key = frozenset(seq)
                skip = skip_memo.get(key)
                if skip is None:
                    skip = fm_zero_in_desext(tuple(key))
                    skip_memo[key] = skip
                if skip:
                    continue
                hit = False
                for f in candidate.members:
                    hkey = (key, f)
                    h = hit_memo.get(hkey)
                    if h is None:
                        h = fm_desext_contains(tuple(key), f)
                        hit_memo[hkey] = h
                    if h:
                        hit = True
                        break
                if not hit:
                    good = False
                    break
            if good:
                return True
    return False


# ---------------------------------------------------------------------------
# Seeded instance generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceGenConfig:
    seed: int
    omega_size: int = 2
    num_sets: int = 2
    set_size: int = 2
    coeff_range: int = 2

    def __post_init__(self) -> None:
        for name in ("omega_size", "num_sets", "set_size", "coeff_range"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


def default_space(size: int) -> PossibilitySpace:
    return PossibilitySpace(tuple(f"w{i + 1}" for i in range(size)))


def random_gamble(rng: random.Random, space: PossibilitySpace, bound: int) -> Gamble:
    return Gamble(space, tuple(Fraction(rng.randint(-bound, bound)) for _ in space.labels))


def random_gamble_set(
    rng: random.Random, space: PossibilitySpace, size: int, bound: int
) -> GambleSet:
    return GambleSet.build(space, (random_gamble(rng, space, bound) for _ in range(size)))


def gen_instance(cfg: InstanceGenConfig) -> tuple[Assessment, GambleSet]:
    """Deterministic assessment plus query set for a seed. Entries are small
    integers; duplicates inside sets collapse, so sets may come out smaller
    than ``set_size``."""
    rng = random.Random(cfg.seed)
    space = default_space(cfg.omega_size)
    sets = [
        random_gamble_set(rng, space, cfg.set_size, cfg.coeff_range)
        for _ in range(cfg.num_sets)
    ]
    candidate = random_gamble_set(rng, space, cfg.set_size, cfg.coeff_range)
    return Assessment.build(space, sets), candidate
