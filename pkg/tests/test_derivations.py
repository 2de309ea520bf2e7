import itertools
import random
from fractions import Fraction

import pytest

from conftest import seeded_gamble, space_of
from gamblesets import (
    ConeGenerators,
    DominanceError,
    GambleSet,
    TraceError,
    addpair_derive,
    dom_from_add_check,
    fm_posi_contains,
    gamble,
    verify_trace,
)
from gamblesets.gambles import combination
from gamblesets.oracle import default_space

AB = space_of(2)


def g(*values):
    return gamble(AB, values)


def gset(*gambles):
    return GambleSet.build(AB, gambles)


def fm_check(E: ConeGenerators, f) -> bool:
    return fm_posi_contains(E.generators, f)


class TestAddpairDerive:
    def test_single_set_doubling(self):
        a = g(1, 0)
        trace = addpair_derive([gset(a)], {(a,): g(2, 0)})
        verify_trace(trace, [gset(a)], target=gset(g(2, 0)), posi_check=fm_check)
        assert [s.rule for s in trace.steps] == ["given", "pair-add"]

    def test_two_singletons_summed(self):
        a, b = g(1, 0), g(0, 1)
        trace = addpair_derive([gset(a), gset(b)], {(a, b): g(1, 1)})
        verify_trace(
            trace, [gset(a), gset(b)], target=gset(g(1, 1)), posi_check=fm_check
        )

    def test_mixed_sets(self):
        g1, h, g2 = g(1, -1), g(0, 1), g(-1, 2)
        comb = {(g1, g2): g1 + g2, (h, g2): h + g2}
        trace = addpair_derive([gset(g1, h), gset(g2)], comb)
        verify_trace(
            trace,
            [gset(g1, h), gset(g2)],
            target=gset(g(0, 1), g(-1, 3)),
            posi_check=fm_check,
        )

    def test_rejects_values_outside_the_hull(self):
        a = g(1, 0)
        with pytest.raises(ValueError):
            addpair_derive([gset(a)], {(a,): g(0, 1)})

    def test_rejects_partial_combination_maps(self):
        a, b = g(1, 0), g(0, 1)
        with pytest.raises(ValueError):
            addpair_derive([gset(a, b)], {(a,): a})

    def test_verifier_catches_tampering(self):
        a = g(1, 0)
        trace = addpair_derive([gset(a)], {(a,): g(2, 0)})
        tampered = trace.steps[-1].pairs[0]
        object.__setattr__(tampered, "result", g(0, 5))
        with pytest.raises(TraceError):
            verify_trace(trace, [gset(a)], posi_check=fm_check)


class TestDomFromAdd:
    def test_identity_dominator_needs_no_singletons(self):
        a = g(1, -1)
        inst = dom_from_add_check(gset(a), {a: a})
        assert inst.sets == (gset(a),)
        assert inst.conclusion == gset(a)
        inst.validate(posi_check=fm_check)

    def test_single_lift(self):
        a = g(1, -1)
        inst = dom_from_add_check(gset(a), {a: g(1, 0)})
        assert gset(g(0, 1)) in inst.sets
        inst.validate(posi_check=fm_check)
        trace = inst.to_trace()
        verify_trace(trace, list(inst.sets), target=inst.conclusion, posi_check=fm_check)

    def test_two_lifts(self):
        a, b = g(1, -1), g(-1, 2)
        inst = dom_from_add_check(gset(a, b), {a: g(2, -1), b: g(-1, 3)})
        assert gset(g(1, 0)) in inst.sets and gset(g(0, 1)) in inst.sets
        assert inst.conclusion == gset(g(2, -1), g(-1, 3))
        inst.validate(posi_check=fm_check)
        trace = inst.to_trace()
        verify_trace(trace, list(inst.sets), target=inst.conclusion, posi_check=fm_check)

    def test_rejects_nondominating_maps(self):
        a = g(1, -1)
        with pytest.raises(DominanceError):
            dom_from_add_check(gset(a), {a: g(0, -2)})
        with pytest.raises(ValueError):
            dom_from_add_check(gset(a), {g(0, 0): g(1, 1)})


def _random_addition_instance(rng, space, n_sets, max_size):
    sets = []
    for _ in range(n_sets):
        members = [seeded_gamble(rng, space, 2) for _ in range(rng.randint(1, max_size))]
        sets.append(GambleSet.build(space, members))
    comb = {}
    for seq in itertools.product(*(s.members for s in sets)):
        while True:
            coeffs = tuple(Fraction(rng.randint(0, 2)) for _ in seq)
            if any(coeffs):
                break
        comb[seq] = combination(coeffs, seq, space)
    return sets, comb


def test_seeded_addition_traces_verify_end_to_end():
    rng = random.Random(860)
    for _ in range(12):
        space = default_space(rng.randint(1, 3))
        sets, comb = _random_addition_instance(rng, space, rng.randint(1, 3), 2)
        trace = addpair_derive(sets, comb)
        target = GambleSet.build(space, comb.values())
        verify_trace(trace, sets, target=target, posi_check=fm_check)


def test_seeded_dominator_instances_verify():
    rng = random.Random(861)
    for _ in range(12):
        space = default_space(rng.randint(1, 3))
        members = [seeded_gamble(rng, space, 2) for _ in range(rng.randint(1, 3))]
        A = GambleSet.build(space, members)
        lifts = {}
        for m in A.members:
            bump = tuple(Fraction(rng.randint(0, 2)) for _ in space.labels)
            lifts[m] = m + gamble(space, bump)
        inst = dom_from_add_check(A, lifts)
        inst.validate(posi_check=fm_check)
        trace = inst.to_trace()
        verify_trace(trace, list(inst.sets), target=inst.conclusion, posi_check=fm_check)
