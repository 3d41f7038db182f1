#!/usr/bin/env python3
"""Benchmark the bypass kernels: compiled lane vs NumPy lane vs dict reference.

Usage:
    python3 benchmarks/bench_kernels.py [--quick]

The compiled extension and the NumPy fallback implement the same detour fold;
the dict-based digraph operations are the readable reference the kernels are
tested against.  Run with PATHABS_NO_FAST=1 to confirm the fallback is what
the package selects without the extension.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pathabs import Digraph, bypass_set
from pathabs import _kernels
from pathabs._kernels import dense


def _to_digraph(a: np.ndarray) -> Digraph:
    arcs = {(int(x) + 1, int(y) + 1): 1 for x, y in zip(*np.nonzero(a))}
    return Digraph.build(a.shape[0], arcs)


def bench(label, fn, repeats):
    best = min(_timed(fn) for _ in range(repeats))
    print(f"  {label:<28} {best * 1e3:9.2f} ms")
    return best


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def run_case(n: int, k: int, p: float, repeats: int, with_reference: bool):
    rng = np.random.default_rng(0)
    a = _kernels.sample_adjacency(n, p, rng)
    drop0 = np.sort(rng.choice(n, size=k, replace=False)).astype(np.int64)
    print(f"n={n}, |dropped|={k}, p={p} (best of {repeats})")

    def fold_selected():
        work = a.copy()
        _kernels.detour_fold_inplace(work, drop0)

    def fold_numpy():
        work = a.copy()
        dense.detour_fold_inplace(work, drop0)

    def closure():
        dense.bypass_closure(a, drop0)

    bench(f"detour fold [{_kernels.IMPLEMENTATION}]", fold_selected, repeats)
    bench("detour fold [numpy]", fold_numpy, repeats)
    bench("closure [numpy matmul]", closure, repeats)

    if with_reference:
        d = _to_digraph(a)
        drop1 = [int(v) + 1 for v in drop0]
        bench("dict-based reference", lambda: bypass_set(d, drop1), max(1, repeats // 3))

    selected = a.copy()
    _kernels.detour_fold_inplace(selected, drop0)
    fallback = a.copy()
    dense.detour_fold_inplace(fallback, drop0)
    keep, closed = dense.bypass_closure(a, drop0)
    agree = (selected == fallback).all() and (
        selected[np.ix_(keep, keep)] == closed
    ).all()
    print(f"  lanes agree: {bool(agree)}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small sizes only")
    args = parser.parse_args()
    print(f"selected kernel lane: {_kernels.IMPLEMENTATION}\n")
    run_case(300, 30, 0.02, repeats=5, with_reference=True)
    if not args.quick:
        run_case(1000, 50, 0.01, repeats=3, with_reference=False)
        run_case(2000, 100, 0.005, repeats=3, with_reference=False)


if __name__ == "__main__":
    main()
