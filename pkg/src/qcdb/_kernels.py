"""Statevector update kernels.

Two interchangeable implementations of the same kernels:

- numba ``@njit`` loops over the raw amplitude array (default when numba is
  importable), compiled once and cached on disk
- vectorised pure-numpy fallbacks built on computed index arrays

Selection is controlled by the ``QCDB_NUMBA`` environment variable at import
time: ``0``/``off`` forces the numpy path, ``1``/``on`` requires numba (raises
if missing), anything else (or unset) means "use numba when available".
``benchmarks/bench_kernels.py`` compares the two paths.

Every simulator gate reduces to two primitives:

- ``apply_ctrl_1q``: a 2x2 unitary on one target qubit, restricted to basis
  states where every bit of ``ctrl_mask`` is set (mask 0 = plain 1q gate;
  cx/ccx/mcx are X with 1/2/k control bits; cz/cp are diagonal with a control)
- ``apply_swap_pair``: exchange two qubit labels

Kernels mutate the amplitude buffer in place and assume it is a contiguous
complex128 array of length 2**n.
"""
from __future__ import annotations

import os

import numpy as np


def _select_backend() -> str:
    flag = os.environ.get("QCDB_NUMBA", "auto").strip().lower()
    if flag in ("0", "off", "false", "no"):
        return "numpy"
    if flag in ("1", "on", "true", "yes"):
        import numba  # noqa: F401  (raise early if forced on but missing)
        return "numba"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        return "numpy"


BACKEND = _select_backend()


# -- pure numpy path ---------------------------------------------------------


def _base_indices(n_qubits: int, fixed_zero: int, fixed_one: int) -> np.ndarray:
    """Indices whose bits in `fixed_zero` are 0 and in `fixed_one` are 1."""
    free = [b for b in range(n_qubits) if not ((fixed_zero | fixed_one) >> b) & 1]
    k = np.arange(1 << len(free), dtype=np.int64)
    out = np.full(k.shape, np.int64(fixed_one))
    for pos, b in enumerate(free):
        out |= ((k >> pos) & 1) << b
    return out


def apply_ctrl_1q_numpy(amps, u00, u01, u10, u11, target, ctrl_mask):
    n = int(len(amps)).bit_length() - 1
    tbit = 1 << target
    i0 = _base_indices(n, tbit, ctrl_mask)
    i1 = i0 | tbit
    a0 = amps[i0]
    a1 = amps[i1]
    amps[i0] = u00 * a0 + u01 * a1
    amps[i1] = u10 * a0 + u11 * a1


def apply_swap_pair_numpy(amps, qa, qb):
    n = int(len(amps)).bit_length() - 1
    abit, bbit = 1 << qa, 1 << qb
    ia = _base_indices(n, abit | bbit, 0) | abit
    ib = ia ^ (abit | bbit)
    tmp = amps[ia]
    amps[ia] = amps[ib]
    amps[ib] = tmp


# -- numba path --------------------------------------------------------------


def _apply_ctrl_1q_loop(amps, u00, u01, u10, u11, target, ctrl_mask):
    tbit = np.int64(1) << target
    for i in range(amps.shape[0]):
        if (i & tbit) == 0 and (i & ctrl_mask) == ctrl_mask:
            j = i | tbit
            a0 = amps[i]
            a1 = amps[j]
            amps[i] = u00 * a0 + u01 * a1
            amps[j] = u10 * a0 + u11 * a1


def _apply_swap_pair_loop(amps, qa, qb):
    abit = np.int64(1) << qa
    bbit = np.int64(1) << qb
    both = abit | bbit
    for i in range(amps.shape[0]):
        if (i & abit) != 0 and (i & bbit) == 0:
            j = i ^ both
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


if BACKEND == "numba":
    from numba import njit

    apply_ctrl_1q_numba = njit(cache=True)(_apply_ctrl_1q_loop)
    apply_swap_pair_numba = njit(cache=True)(_apply_swap_pair_loop)
    apply_ctrl_1q = apply_ctrl_1q_numba
    apply_swap_pair = apply_swap_pair_numba
else:
    apply_ctrl_1q_numba = None
    apply_swap_pair_numba = None
    apply_ctrl_1q = apply_ctrl_1q_numpy
    apply_swap_pair = apply_swap_pair_numpy


def warmup() -> None:
    """Force JIT compilation so later timings exclude compile cost."""
    amps = np.zeros(4, dtype=np.complex128)
    amps[0] = 1.0
    apply_ctrl_1q(amps, 0j, 1 + 0j, 1 + 0j, 0j, np.int64(0), np.int64(0))
    apply_swap_pair(amps, np.int64(0), np.int64(1))
