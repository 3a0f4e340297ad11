"""Kernel backend selection.

The scanning kernels in :mod:`foldmin._kernels` are written so the same
source runs either as plain Python or JIT-compiled by numba.  The numba
path is used when available; set ``FOLDMIN_NO_NUMBA=1`` (or
``FOLDMIN_BACKEND=python``) to force the pure-Python path.  Both paths
compute identical results; ``benchmarks/bench_backends.py`` compares
their speed.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels
from .words import Word


def _pick_backend() -> str:
    env = os.environ.get("FOLDMIN_BACKEND", "").strip().lower()
    if env in ("python", "numba"):
        requested = env
    elif os.environ.get("FOLDMIN_NO_NUMBA", ""):
        requested = "python"
    else:
        requested = "numba"
    if requested == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:
            return "python"
    return requested


BACKEND = _pick_backend()

if BACKEND == "numba":
    from numba import njit

    _jit = njit(cache=True)
    reduce_arr = _jit(_kernels._reduce_arr)
    dehn_fixpoint_arr = _jit(_kernels._dehn_fixpoint_arr)
    newman_fixpoint_arr = _jit(_kernels._newman_fixpoint_arr)
else:
    reduce_arr = _kernels._reduce_arr
    dehn_fixpoint_arr = _kernels._dehn_fixpoint_arr
    newman_fixpoint_arr = _kernels._newman_fixpoint_arr


def backend_name() -> str:
    return BACKEND


def to_arr(w: Word) -> np.ndarray:
    return np.array(w, dtype=np.int64)


def from_arr(arr: np.ndarray) -> Word:
    return tuple(int(x) for x in arr)


def dehn_fixpoint(w: Word, mmat: np.ndarray) -> Word:
    return from_arr(dehn_fixpoint_arr(to_arr(w), mmat))


def newman_fixpoint(w: Word, rots: np.ndarray, xlens: np.ndarray, m: int) -> Word:
    return from_arr(newman_fixpoint_arr(to_arr(w), rots, xlens, m))
