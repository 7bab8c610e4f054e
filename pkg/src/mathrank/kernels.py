"""Hot inner loops of the solver, in two interchangeable flavours.

The numba flavour JIT-compiles row-local loops (and can fan them out over
threads, since every output element is accumulated in a fixed order that does
not depend on the chunking); the numpy flavour is a vectorised fallback.

Selection: set ``MATHRANK_BACKEND`` to ``numba`` or ``numpy`` before import,
or call :func:`force_backend`. The default is numba when importable.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

log = logging.getLogger(__name__)

_ENV_VAR = "MATHRANK_BACKEND"
# Below this many output elements, thread dispatch costs more than it saves.
_PARALLEL_MIN_SIZE = 16384
_pool: ThreadPoolExecutor | None = None
_pool_size = 0


def _shared_pool(workers: int) -> ThreadPoolExecutor:
    global _pool, _pool_size
    if _pool is None or _pool_size < workers:
        if _pool is not None:
            _pool.shutdown(wait=True)
        _pool = ThreadPoolExecutor(max_workers=workers)
        _pool_size = workers
    return _pool

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False


# -- pure-numpy implementations ------------------------------------------------

def _matvec_numpy(indptr, colidx, values, x, out, workers=1):
    # Segment sums via cumsum differences; per-row totals, rows independent.
    products = values * x[colidx]
    cs = np.concatenate(([0.0], np.cumsum(products)))
    out[:] = cs[indptr[1:]] - cs[indptr[:-1]]


def _segment_max_numpy(ptr, idx, x, out, workers=1):
    if out.size == 0:
        return
    # Padding keeps every ptr value a legal reduceat index even when trailing
    # segments are empty; -inf never wins a max and empty segments are masked.
    gathered = np.append(x[idx], -np.inf)
    seg = np.maximum.reduceat(gathered, ptr[:-1])
    out[:] = np.where(np.diff(ptr) > 0, seg, 0.0)


def _segment_excess_numpy(ptr, idx, x, threshold, out, workers=1):
    clipped = np.maximum(x[idx] - threshold, 0.0)
    cs = np.concatenate(([0.0], np.cumsum(clipped)))
    out[:] = cs[ptr[1:]] - cs[ptr[:-1]]


# -- numba implementations -----------------------------------------------------

if HAS_NUMBA:

    @njit(nogil=True, cache=True)
    def _matvec_range(indptr, colidx, values, x, out, lo, hi):
        for i in range(lo, hi):
            acc = 0.0
            for k in range(indptr[i], indptr[i + 1]):
                acc += values[k] * x[colidx[k]]
            out[i] = acc

    @njit(nogil=True, cache=True)
    def _segment_max_range(ptr, idx, x, out, lo, hi):
        for s in range(lo, hi):
            start, end = ptr[s], ptr[s + 1]
            if start == end:
                out[s] = 0.0
                continue
            m = x[idx[start]]
            for k in range(start + 1, end):
                v = x[idx[k]]
                if v > m:
                    m = v
            out[s] = m

    @njit(nogil=True, cache=True)
    def _segment_excess_range(ptr, idx, x, threshold, out, lo, hi):
        for s in range(lo, hi):
            acc = 0.0
            for k in range(ptr[s], ptr[s + 1]):
                d = x[idx[k]] - threshold
                if d > 0.0:
                    acc += d
            out[s] = acc

    def _run_chunked(fn, n, workers, args):
        # Each output element is computed by exactly one chunk, in an order
        # that does not depend on the chunking, so any worker count produces
        # bit-identical results.
        if workers <= 1 or n < _PARALLEL_MIN_SIZE:
            fn(*args, 0, n)
            return
        bounds = np.linspace(0, n, workers + 1).astype(np.int64)
        pool = _shared_pool(workers)
        futures = [
            pool.submit(fn, *args, lo, hi)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        for fut in futures:
            fut.result()

    def _matvec_numba(indptr, colidx, values, x, out, workers=1):
        _run_chunked(_matvec_range, out.size, workers, (indptr, colidx, values, x, out))

    def _segment_max_numba(ptr, idx, x, out, workers=1):
        _run_chunked(_segment_max_range, out.size, workers, (ptr, idx, x, out))

    def _segment_excess_numba(ptr, idx, x, threshold, out, workers=1):
        _run_chunked(_segment_excess_range, out.size, workers, (ptr, idx, x, threshold, out))


_BACKENDS = {"numpy": (_matvec_numpy, _segment_max_numpy, _segment_excess_numpy)}
if HAS_NUMBA:
    _BACKENDS["numba"] = (_matvec_numba, _segment_max_numba, _segment_excess_numba)


def _default_backend() -> str:
    name = os.environ.get(_ENV_VAR)
    if name is None:
        return "numba" if HAS_NUMBA else "numpy"
    if name not in ("numba", "numpy"):
        raise ValueError(f"{_ENV_VAR} must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAS_NUMBA:
        log.warning("numba requested via %s but not importable; using numpy", _ENV_VAR)
        return "numpy"
    return name


_active_name = _default_backend()
_active = _BACKENDS[_active_name]


def force_backend(name: str) -> None:
    """Switch kernel implementations at runtime (mainly for tests/benchmarks)."""
    global _active_name, _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    _active_name = name
    _active = _BACKENDS[name]


def active_backend() -> str:
    return _active_name


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def matvec_csr(indptr, colidx, values, x, out, workers: int = 1) -> None:
    """out[i] = sum_k values[row i] * x[col], rows independent."""
    _active[0](indptr, colidx, values, x, out, workers)


def segment_max(ptr, idx, x, out, workers: int = 1) -> None:
    """Per-segment max of x[idx]; empty segments yield 0."""
    _active[1](ptr, idx, x, out, workers)


def segment_excess_sum(ptr, idx, x, threshold, out, workers: int = 1) -> None:
    """Per-segment sum of max(x[idx] - threshold, 0)."""
    _active[2](ptr, idx, x, threshold, out, workers)
