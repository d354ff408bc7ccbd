#!/usr/bin/env python3
"""Measure how stream-miner time grows with the number of sequences.

Runs the batched miner over synthetic streams of increasing size, fits a
line to median elapsed times, and prints the fit quality.

Usage::

    python scripts/stream_linearity.py
    python scripts/stream_linearity.py --sizes 500,1000,2000 --repeats 5
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from seqmine.bench import generate_db, linear_fit
from seqmine.stream import StreamConfig, StreamState, flush, process_batch


def measure(size, config, seed, repeats):
    db = generate_db(size, alphabet_size=8, seed=seed, geometric_p=0.65, max_txns=10)
    full = size // config.batch_size * config.batch_size
    times = []
    for _ in range(repeats):
        state = StreamState()
        t0 = time.perf_counter()
        for lo in range(0, full, config.batch_size):
            process_batch(state, db.sequences[lo : lo + config.batch_size], config)
        out = flush(state, db.sequences[full:], config)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), len(out), len(state.tree)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,2000,4000,8000")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=55)
    parser.add_argument("--sigma", type=float, default=0.08)
    parser.add_argument("--epsilon", type=float, default=0.02)
    parser.add_argument("--batch-size", type=int, default=200)
    parser.add_argument("--max-length", type=int, default=5)
    args = parser.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",")]
    config = StreamConfig(
        sigma=args.sigma, epsilon=args.epsilon,
        batch_size=args.batch_size, max_length=args.max_length,
    )
    config.validate()

    print(f"{'sequences':>10} {'median_s':>9} {'patterns':>8} {'tree_nodes':>10}")
    medians = []
    for size in sizes:
        median, n_patterns, tree_nodes = measure(size, config, args.seed, args.repeats)
        medians.append(median)
        print(f"{size:>10} {median:>9.3f} {n_patterns:>8} {tree_nodes:>10}")

    if len(sizes) >= 3:
        slope, intercept, r2 = linear_fit([float(s) for s in sizes], medians)
        print(f"fit: slope={slope:.3e} s/sequence intercept={intercept:.4f}s r2={r2:.4f}")
        print(f"time ratio {sizes[-1]}/{sizes[0]}: {medians[-1] / medians[0]:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
