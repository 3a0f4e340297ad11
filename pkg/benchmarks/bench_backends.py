#!/usr/bin/env python3
"""Benchmark the scanning kernels: numba-compiled vs pure Python.

The same kernel source runs on both paths (see foldmin.backend), so this
measures the JIT win on the workloads that dominate the audits: batch
Dehn reduction of involutive words and batch spelling reduction of
free-group words.

Run:  python benchmarks/bench_backends.py [--words 20000] [--len 24]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from foldmin import _kernels


def make_involutive_batch(rng: random.Random, count: int, length: int, n: int):
    out = []
    for _ in range(count):
        w = []
        for _ in range(length):
            x = rng.randrange(1, n + 1)
            while w and w[-1] == x:
                x = rng.randrange(1, n + 1)
            w.append(x)
        out.append(np.array(w, dtype=np.int64))
    return out


def make_free_batch(rng: random.Random, count: int, length: int, n: int):
    out = []
    for _ in range(count):
        w = []
        for _ in range(length):
            x = rng.choice([s * g for g in range(1, n + 1) for s in (1, -1)])
            while w and w[-1] == -x:
                x = rng.choice([s * g for g in range(1, n + 1) for s in (1, -1)])
            w.append(x)
        out.append(np.array(w, dtype=np.int64))
    return out


def bench(fn, batches, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in batches:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--len", dest="length", type=int, default=24)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--m", type=int, default=4)
    args = ap.parse_args()

    rng = random.Random(0)
    mmat = np.full((args.n, args.n), args.m, dtype=np.int64)
    np.fill_diagonal(mmat, 0)
    dehn_batch = [(w, mmat) for w in make_involutive_batch(rng, args.words, args.length, args.n)]

    root = np.array([1, 2, -1, -2], dtype=np.int64)
    rots = []
    for base in (root, -root[::-1]):
        for t in range(len(base)):
            rots.append(np.concatenate([base[t:], base[:t]]))
    rots_arr = np.stack(rots)
    xlens = np.array([2] * len(rots), dtype=np.int64)
    m_rel = 4
    newman_batch = []
    for w in make_free_batch(rng, max(args.words // 10, 1), args.length, 2):
        padded = np.concatenate([np.tile(root, m_rel - 1), w])
        newman_batch.append((padded, rots_arr, xlens, m_rel))

    py = {
        "dehn": _kernels._dehn_fixpoint_arr,
        "newman": _kernels._newman_fixpoint_arr,
        "reduce": _kernels._reduce_arr,
    }
    try:
        from numba import njit

        nb = {name: njit(cache=True)(fn) for name, fn in py.items()}
        # trigger compilation outside the timed region
        nb["dehn"](dehn_batch[0][0], mmat)
        nb["newman"](*newman_batch[0])
        nb["reduce"](dehn_batch[0][0], True)
    except ImportError:
        nb = None

    reduce_batch = [(w, True) for w, _ in dehn_batch]
    rows = []
    for name, batch in (("reduce", reduce_batch), ("dehn", dehn_batch), ("newman", newman_batch)):
        t_py = bench(py[name], batch)
        if nb is not None:
            t_nb = bench(nb[name], batch)
            rows.append((name, len(batch), t_py, t_nb, t_py / t_nb))
        else:
            rows.append((name, len(batch), t_py, None, None))

    print(f"{'kernel':<8} {'calls':>7} {'python':>10} {'numba':>10} {'speedup':>8}")
    for name, calls, t_py, t_nb, speed in rows:
        if t_nb is None:
            print(f"{name:<8} {calls:>7} {t_py:>9.3f}s {'n/a':>10} {'n/a':>8}")
        else:
            print(f"{name:<8} {calls:>7} {t_py:>9.3f}s {t_nb:>9.3f}s {speed:>7.1f}x")


if __name__ == "__main__":
    main()
