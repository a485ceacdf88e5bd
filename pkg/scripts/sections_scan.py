#!/usr/bin/env python3
"""Tabulate global-section dimensions of line-bundle twists.

Runs the Čech-style equalizer over the chart cover of a complete fixture
fan and prints dim Γ(𝒪(d)) for a window of twists, in both evaluation
modes as a cross-check.

Usage:
    python3 scripts/sections_scan.py --fan p2 --min -2 --max 4
"""

import argparse
import json

from coxfan import corpus, grading
from coxfan.cox import BaseRingFlags, build_cox
from coxfan.grading import subgroup_of_whole_group
from coxfan.gradmod import free_module
from coxfan.sheaf import global_sections_degree, sheafify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fan", default="p2", choices=sorted(corpus.CORPUS_NAMES))
    ap.add_argument("--min", type=int, default=-2)
    ap.add_argument("--max", type=int, default=4)
    args = ap.parse_args()

    g = grading.build_grading(corpus.build(args.fan))
    c = build_cox(
        g,
        subgroup_of_whole_group(g),
        BaseRingFlags(field=True, noetherian=True, reduced=True),
    )
    ring = free_module(c)
    A = g.class_group
    rows = []
    for d in range(args.min, args.max + 1):
        coords = [d] + [0] * (A.free_rank - 1)
        cover = sheafify(ring.shifted(A.from_coords(coords)))
        shift = global_sections_degree(cover, A.zero(), mode="via_shift")
        twist = global_sections_degree(cover, A.zero(), mode="via_twist")
        rows.append(
            {
                "twist": coords,
                "dim_via_shift": shift.dimension,
                "dim_via_twist": twist.dimension,
                "stabilized": shift.stabilized and twist.stabilized,
            }
        )
    print(json.dumps({"fan": args.fan, "sections": rows}, indent=2))


if __name__ == "__main__":
    main()
