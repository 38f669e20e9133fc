#!/usr/bin/env python3
"""Time the numba kernels against the numpy fallback on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0] [--json]

Both backends are checked for identical answers before timing.
"""

import argparse
import json
import statistics
import time

import numpy as np

from cographedit import kernels
from cographedit.kernels.tables import full_mask


def random_masks(rng, n, count, density=0.5):
    bits = rng.random((count, kernels.num_pairs(n))) < density
    weights = np.left_shift(np.int64(1), np.arange(kernels.num_pairs(n), dtype=np.int64))
    return (bits.astype(np.int64) * weights).sum(axis=1)


def cases(rng):
    flags_masks = random_masks(rng, 8, 20000)
    small = [int(m) for m in random_masks(rng, 7, 6)]
    dense = [int(m) for m in random_masks(rng, 8, 4)]
    canon = [int(m) for m in random_masks(rng, 8, 3)]
    yield "cograph_flags n=8 x20000", lambda impl: kernels.cograph_flags(8, flags_masks, impl).tolist()
    yield "canonical_form n=8 x3", lambda impl: [kernels.canonical_form(8, m, impl)[0] for m in canon]
    yield "minimal_sets deletion n=8 x4", lambda impl: [kernels.minimal_sets(8, m, m, impl) for m in dense]
    yield "minimal_sets editing n=7 x6", lambda impl: [kernels.minimal_sets(7, m, full_mask(7), impl) for m in small]
    yield "min_set_combinations editing n=8 x4", lambda impl: [
        kernels.min_set_combinations(8, m, list(range(28)), impl=impl) for m in dense
    ]


def run(repeat, seed):
    rng = np.random.default_rng(seed)
    backends = {"numpy": kernels.implementation("numpy")}
    try:
        backends["numba"] = kernels.implementation("numba")
    except ImportError:
        pass
    rows = []
    for name, fn in cases(rng):
        answers = {b: fn(impl) for b, impl in backends.items()}  # also warms the JIT
        if len({json.dumps(a, default=str) for a in answers.values()}) != 1:
            raise SystemExit(f"backends disagree on {name}")
        row = {"case": name}
        for b, impl in backends.items():
            times = []
            for _ in range(repeat):
                t = time.perf_counter()
                fn(impl)
                times.append(time.perf_counter() - t)
            row[b] = statistics.median(times)
        if "numba" in row:
            row["speedup"] = row["numpy"] / row["numba"]
        rows.append(row)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    rows = run(args.repeat, args.seed)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':<38} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for r in rows:
        nb = f"{r['numba']:>10.4f}" if "numba" in r else f"{'-':>10}"
        sp = f"{r['speedup']:>8.1f}" if "speedup" in r else f"{'-':>8}"
        print(f"{r['case']:<38} {r['numpy']:>10.4f} {nb} {sp}")


if __name__ == "__main__":
    main()
