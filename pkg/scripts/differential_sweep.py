#!/usr/bin/env python3
"""Seeded differential sweep: engine versus elimination oracle at scale.

Compares the simplex-backed cone tests against Fourier-Motzkin, the full-list
extension decision against exhaustive list search, and the three membership
formulations against each other, over randomly generated instances. Any
disagreement is printed and counted; exit status 1 signals at least one.
"""

import argparse
import random
import sys
import time

from gamblesets import (
    Assessment,
    ConeGenerators,
    brute_ext_contains,
    desext_contains,
    desext_contains_strict,
    ext_contains,
    ext_contains_indicator,
    ext_contains_split,
    fm_desext_contains,
    fm_desext_contains_strict,
    fm_posi_contains,
    fm_zero_in_desext,
    posi_contains,
    zero_in_desext,
)
from gamblesets.oracle import default_space, random_gamble, random_gamble_set


def sweep(seed: int, instances: int, omega_max: int, bound: int) -> int:
    rng = random.Random(seed)
    bad = 0
    start = time.time()

    for i in range(instances):
        space = default_space(rng.randint(1, omega_max))
        gens = tuple(random_gamble(rng, space, bound) for _ in range(rng.randint(0, 4)))
        f = random_gamble(rng, space, bound)
        E = ConeGenerators.build(space, gens)
        pairs = [
            ("posi", posi_contains(E, f) is not None, fm_posi_contains(gens, f)),
            ("desext", desext_contains(E, f) is not None, fm_desext_contains(gens, f)),
            ("zero", zero_in_desext(E) is not None, fm_zero_in_desext(gens)),
            (
                "strict",
                desext_contains_strict(E, f) is not None,
                fm_desext_contains_strict(gens, f),
            ),
        ]
        for name, engine, oracle in pairs:
            if engine != oracle:
                bad += 1
                print(f"[{i}] {name} disagrees: engine={engine} oracle={oracle}")

    for i in range(instances // 2):
        space = default_space(rng.randint(1, min(omega_max, 3)))
        sets = [
            random_gamble_set(rng, space, rng.randint(1, 2), bound)
            for _ in range(rng.randint(1, 3))
        ]
        assessment = Assessment.build(space, sets)
        candidate = random_gamble_set(rng, space, rng.randint(0, 2), bound)
        a = ext_contains(assessment, candidate).member
        b = ext_contains_split(assessment, candidate).member
        c = ext_contains_indicator(assessment, candidate).member
        d = brute_ext_contains(assessment, candidate)
        if not (a == b == c == d):
            bad += 1
            print(f"[ext {i}] split={b} indicator={c} exhaustive={d} engine={a}")

    elapsed = time.time() - start
    print(f"checked {instances} cone + {instances // 2} extension instances "
          f"in {elapsed:.1f}s, disagreements: {bad}")
    return bad


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--instances", type=int, default=300)
    parser.add_argument("--omega-max", type=int, default=4)
    parser.add_argument("--bound", type=int, default=3)
    args = parser.parse_args()
    return 1 if sweep(args.seed, args.instances, args.omega_max, args.bound) else 0


if __name__ == "__main__":
    sys.exit(main())
