"""Collect XOR solutions from many seeded searches and summarize them.

    python scripts/map_solutions.py --seeds 0 10 --restarts 60 --out solutions.json

Each success is written with its coefficient vector, the couplings that are
effectively nonzero, and the induced signed permutation (if any).
"""

import argparse
import json

import numpy as np

from spinxor import (assemble, induced_map, loopless_template, realize, search, unitary_exponential,
                     xor_gate_spec)
from spinxor.search import SearchConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", nargs=2, type=int, default=[0, 10], metavar=("START", "STOP"))
    ap.add_argument("--restarts", type=int, default=60)
    ap.add_argument("--single-site", action="store_true")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    template = loopless_template()
    if args.single_site:
        template = type(template)(template.system, template.allowed_pairs, include_single_site=True)
    labels = [" ".join(f"{lab.value.lower()}{template.system.site_names[s]}" for s, lab in t.factors)
              for t in template.operator_terms()]
    found = []
    for seed in range(*args.seeds):
        r = search(template, xor_gate_spec(), SearchConfig(restarts=args.restarts, rng_seed=seed))
        status = "ok " if r.succeeded else "---"
        print(f"{status} seed {seed:3d} restart {r.restart_index:3d} objective {r.best_objective:.2e}")
        if not r.succeeded:
            continue
        x = np.array(r.best_parameters)
        u = unitary_exponential(assemble(realize(template, x)), template.duration)
        sp = induced_map(u, 1e-3)
        found.append({
            "seed": seed,
            "objective": r.best_objective,
            "parameters": dict(zip(labels, x.tolist())),
            "active": [lab for lab, c in zip(labels, x) if abs(c) > 1e-3],
            "signed_permutation": None if sp is None else list(sp.image),
        })
    print(f"{len(found)} solutions from {args.seeds[1] - args.seeds[0]} seeds")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(found, fh, indent=2)


if __name__ == "__main__":
    main()
