#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two gate primitives on growing statevectors, then a full
simulation of the 13-qubit triangle-finding circuit through each path.
Run after installing the package:

    python benchmarks/bench_kernels.py [max_qubits]

Setting QCDB_NUMBA=0 for a whole process selects the numpy path everywhere;
this script instead compares both in one process when numba is available.
"""
import sys
import time

import numpy as np

from qcdb import _kernels
from qcdb.corpus import triangle_grover
from qcdb.sim import StateVector, run_statevector


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(max_qubits: int):
    s = 1 / np.sqrt(2)
    h = (s + 0j, s + 0j, s + 0j, -s + 0j)
    rows = []
    for n in range(12, max_qubits + 1, 2):
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        target = np.int64(n // 2)
        mask = np.int64(0b11)
        t_np = time_call(_kernels.apply_ctrl_1q_numpy, amps, *h, target, mask)
        if _kernels.apply_ctrl_1q_numba is not None:
            t_nb = time_call(_kernels.apply_ctrl_1q_numba, amps, *h, target, mask)
        else:
            t_nb = float("nan")
        rows.append((f"ctrl_1q n={n}", t_np, t_nb))

        t_np = time_call(_kernels.apply_swap_pair_numpy, amps, np.int64(0), target)
        if _kernels.apply_swap_pair_numba is not None:
            t_nb = time_call(_kernels.apply_swap_pair_numba, amps, np.int64(0), target)
        else:
            t_nb = float("nan")
        rows.append((f"swap    n={n}", t_np, t_nb))
    return rows


def bench_end_to_end():
    circuit = triangle_grover(iterations=3, measured=False)
    init = StateVector.zero(13)

    def run():
        run_statevector(circuit, init)

    saved = (_kernels.apply_ctrl_1q, _kernels.apply_swap_pair)
    try:
        _kernels.apply_ctrl_1q = _kernels.apply_ctrl_1q_numpy
        _kernels.apply_swap_pair = _kernels.apply_swap_pair_numpy
        t_np = time_call(run, repeats=3)
        if _kernels.apply_ctrl_1q_numba is not None:
            _kernels.apply_ctrl_1q = _kernels.apply_ctrl_1q_numba
            _kernels.apply_swap_pair = _kernels.apply_swap_pair_numba
            t_nb = time_call(run, repeats=3)
        else:
            t_nb = float("nan")
    finally:
        _kernels.apply_ctrl_1q, _kernels.apply_swap_pair = saved
    return [("grover-13 x3 iterations", t_np, t_nb)]


def main():
    max_qubits = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    print(f"kernel backend active: {_kernels.BACKEND}")
    if _kernels.BACKEND == "numba":
        _kernels.warmup()
    rows = bench_kernels(max_qubits) + bench_end_to_end()
    print(f"{'case':<26} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    print("-" * 62)
    for name, t_np, t_nb in rows:
        speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{name:<26} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms {speed:>8.1f}x")


if __name__ == "__main__":
    main()
