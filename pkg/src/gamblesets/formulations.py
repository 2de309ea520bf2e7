"""Equivalent reformulations of the natural extension, for differential
testing.

Both variants decide the same membership relation as
:func:`gamblesets.extension.ext_contains` but through their own constraint
encodings, sharing nothing with the main engine beyond the simplex solver:

* :func:`ext_contains_split` splits "f lies in the picking's cone" into a
  global "some candidate weakly dominates zero" clause plus a per-picking
  "some candidate dominates a positive combination of the picked gambles".
* :func:`ext_contains_indicator` replaces the background cone of weakly positive
  gambles by the atom indicators (over a finite space they generate the same
  hull) and folds the Skip clause into a "zero is a positive combination of
  picking plus indicators" test.

Certificates are translated back onto the picking's own generators so that
:func:`gamblesets.extension.verify_ext_answer` applies unchanged.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

from .cones import Certificate, ConeGenerators
from .extension import (
    Assessment,
    DEFAULT_SEQUENCE_CAP,
    CapExceeded,
    Evidence,
    ExtAnswer,
    GambleSet,
    Hit,
    Skip,
)
from .gambles import (
    DimensionMismatch,
    Gamble,
    PossibilitySpace,
    combination,
    indicator,
    wgeq,
    zero,
)
from .ratlp import EQ, LEQ, LinearProgram, Optimal, Unbounded, lp_solve

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _weak_positive_answer(candidate: GambleSet) -> Optional[ExtAnswer]:
    z = zero(candidate.space)
    for f in candidate.members:
        if wgeq(f, z):
            cert = Certificate((), f)
            return ExtAnswer(True, (), {(): Hit(f, cert)})
    return None


def _extract(outcome, k: int) -> Optional[tuple[Fraction, ...]]:
    if isinstance(outcome, Optimal) and outcome.value > 0:
        return outcome.assignment[:k]
    if isinstance(outcome, Unbounded):
        p, d = outcome.feasible_point, outcome.improving_ray
        sp = sum(p[:k], _ZERO)
        sd = sum(d[:k], _ZERO)
        t = _ZERO if sp >= 1 else (_ONE - sp) / sd
        return tuple(a + t * b for a, b in zip(p[:k], d[:k]))
    return None


def _dominated_hull(E: ConeGenerators, f: Gamble) -> Optional[Certificate]:
    """Some positive combination of E sits (componentwise) below f."""
    k = len(E)
    if k == 0:
        return None
    rows = [
        (tuple(g.values[i] for g in E.generators), LEQ, f.values[i])
        for i in range(E.space.size)
    ]
    lam = _extract(lp_solve(LinearProgram(k, (_ONE,) * k, tuple(rows))), k)
    if lam is None:
        return None
    return Certificate(lam, f - combination(lam, E.generators, E.space))


def ext_contains_split(
    assessment: Assessment,
    candidate: GambleSet,
    cap: int = DEFAULT_SEQUENCE_CAP,
) -> ExtAnswer:
    """Membership via the split formulation: a candidate weakly dominating
    zero settles every picking at once; otherwise each picking needs either
    the incompatibility clause or a candidate dominating a positive
    combination of the picked gambles."""
    if candidate.space != assessment.space:
        raise DimensionMismatch("queried set lives on a different space")
    direct = _weak_positive_answer(candidate)
    if direct is not None:
        return direct
    if assessment.is_empty:
        return ExtAnswer(False, (), {}, failed_sequence=())
    sets = assessment.sets
    total = 1
    for s in sets:
        total *= len(s.members)
    if total > cap:
        raise CapExceeded(f"{total} pickings exceed the cap of {cap}")
    evidence: dict[tuple[Gamble, ...], Evidence] = {}
    space = assessment.space
    for seq in itertools.product(*(s.members for s in sets)):
        E = ConeGenerators.build(space, seq)
        skip = _dominated_hull(E, zero(space))
        if skip is not None:
            evidence[seq] = Skip(skip)
            continue
        for f in candidate.members:
            cert = _dominated_hull(E, f)
            if cert is not None:
                evidence[seq] = Hit(f, cert)
                break
        else:
            return ExtAnswer(False, sets, evidence, failed_sequence=seq)
    return ExtAnswer(True, sets, evidence)


def _indicator_hull(
    space: PossibilitySpace, E_seq: ConeGenerators, f: Gamble
) -> Optional[Certificate]:
    """f as a positive combination of the picking's gambles plus the atom
    indicators, translated back to a certificate over the picking alone."""
    aug = list(E_seq.generators) + [indicator(space, a) for a in space.labels]
    k = len(aug)
    rows = [
        (tuple(g.values[i] for g in aug), EQ, f.values[i])
        for i in range(space.size)
    ]
    lam = _extract(lp_solve(LinearProgram(k, (_ONE,) * k, tuple(rows))), k)
    if lam is None:
        return None
    head = lam[: len(E_seq)]
    return Certificate(head, f - combination(head, E_seq.generators, space))


def ext_contains_indicator(
    assessment: Assessment,
    candidate: GambleSet,
    cap: int = DEFAULT_SEQUENCE_CAP,
) -> ExtAnswer:
    """Membership via the indicator construction: every picking is augmented
    with the |space| indicator singletons and must positively combine into a
    candidate (a Hit) or into the zero gamble (the removed "nothing good"
    pickings)."""
    if candidate.space != assessment.space:
        raise DimensionMismatch("queried set lives on a different space")
    direct = _weak_positive_answer(candidate)
    if direct is not None:
        return direct
    sets = assessment.sets
    total = 1
    for s in sets:
        total *= len(s.members)
    if total > cap:
        raise CapExceeded(f"{total} pickings exceed the cap of {cap}")
    space = assessment.space
    evidence: dict[tuple[Gamble, ...], Evidence] = {}
    for seq in itertools.product(*(s.members for s in sets)):
        E = ConeGenerators.build(space, seq)
        skip = _indicator_hull(space, E, zero(space))
        if skip is not None:
            evidence[seq] = Skip(skip)
            continue
        for f in candidate.members:
            cert = _indicator_hull(space, E, f)
            if cert is not None:
                evidence[seq] = Hit(f, cert)
                break
        else:
            return ExtAnswer(False, sets, evidence, failed_sequence=seq)
    return ExtAnswer(True, sets, evidence)


def formulations_agree(
    assessment: Assessment,
    candidate: GambleSet,
    cap: int = DEFAULT_SEQUENCE_CAP,
) -> bool:
    """Run all three membership procedures; a False return is a bug report."""
    from .extension import ext_contains

    a = ext_contains(assessment, candidate, cap=cap).member
    b = ext_contains_split(assessment, candidate, cap=cap).member
    c = ext_contains_indicator(assessment, candidate, cap=cap).member
    return a == b == c
