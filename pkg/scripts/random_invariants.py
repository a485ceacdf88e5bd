#!/usr/bin/env python3
"""Randomized invariant checks for the exact-arithmetic kernels.

Verifies the double-dual identity and Hilbert-basis generation on random
pointed cones, and the Buchberger S-pair criterion on random ideals,
against the brute-force oracles used by the test suite.

Usage:
    python3 scripts/random_invariants.py --cones 50 --ideals 25 --seed 7
"""

import argparse
import itertools
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
import oracles  # noqa: E402

from coxfan.groeb import (  # noqa: E402
    GREVLEX,
    groebner_basis,
    normal_form,
    poly,
    s_polynomial,
)
from coxfan.polyfan import Cone, dual_cone, hilbert_basis  # noqa: E402


@dataclass(frozen=True)
class RunConfig:
    cones: int = 50
    ideals: int = 25
    seed: int = 7
    entry_bound: int = 4
    box: int = 3
    point_bound: int = 6
    workspace_bound: int = 12


def random_pointed_cone(rng, cfg):
    while True:
        rank = rng.randint(2, 3)
        gens = [
            tuple(rng.randint(-cfg.entry_bound, cfg.entry_bound) for _ in range(rank))
            for _ in range(rng.randint(1, rank + 1))
        ]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        if not any(
            oracles.in_cone([-x for x in g], gens, rank) for g in gens
        ):
            return rank, gens


def check_cone(rng, cfg):
    rank, gens = random_pointed_cone(rng, cfg)
    dual_gens = dual_cone(Cone.make(rank, gens)).generators
    for v in itertools.product(range(-cfg.box, cfg.box + 1), repeat=rank):
        lhs = oracles.in_cone(v, gens, rank)
        rhs = all(sum(a * b for a, b in zip(u, v)) >= 0 for u in dual_gens)
        if lhs != rhs:
            return False
    hb = hilbert_basis(gens, rank)
    pts = oracles.cone_lattice_points(gens, rank, cfg.point_bound)
    workspace = oracles.cone_lattice_points(gens, rank, cfg.workspace_bound)
    return oracles.monoid_generates(pts, hb, workspace=workspace)


def random_ideal(rng):
    gens = []
    nvars = rng.randint(1, 3)
    for _ in range(rng.randint(1, 4)):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            e = tuple(rng.randint(0, 3) for _ in range(nvars))
            if sum(e) <= 3:
                terms[e] = Fraction(rng.randint(-3, 3))
        terms = {k: v for k, v in terms.items() if v}
        if terms:
            gens.append(poly(terms))
    return gens or [poly({(0,) * nvars: Fraction(1)})]


def check_ideal(rng):
    gb = groebner_basis(random_ideal(rng), GREVLEX)
    return all(
        not normal_form(s_polynomial(gb[i], gb[j], GREVLEX), gb, GREVLEX)
        for i in range(len(gb))
        for j in range(i + 1, len(gb))
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cones", type=int, default=RunConfig.cones)
    ap.add_argument("--ideals", type=int, default=RunConfig.ideals)
    ap.add_argument("--seed", type=int, default=RunConfig.seed)
    args = ap.parse_args()
    cfg = RunConfig(cones=args.cones, ideals=args.ideals, seed=args.seed)

    rng = random.Random(cfg.seed)
    cone_ok = sum(check_cone(rng, cfg) for _ in range(cfg.cones))
    ideal_ok = sum(check_ideal(rng) for _ in range(cfg.ideals))
    print(f"cones: {cone_ok}/{cfg.cones} passed")
    print(f"ideals: {ideal_ok}/{cfg.ideals} passed")
    if cone_ok != cfg.cones or ideal_ok != cfg.ideals:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
