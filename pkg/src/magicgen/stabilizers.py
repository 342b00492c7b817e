"""Exhaustive enumeration of pure stabilizer states.

Every n-qubit pure stabilizer state has the affine normal form

    |psi> = 2^{-k/2} sum_{t in F_2^k} i^{c.t} (-1)^{t^T J t} |R t + s>

for a k-dimensional affine subspace (row space of a reduced-row-echelon
matrix R shifted by s), a Z_4-valued linear phase c and a strictly upper
triangular binary quadratic form J.  Enumerating (R, s, c, J) canonically
hits each state exactly once, which is how the closed-form count
2^n prod_k (2^k + 1) is met without deduplication sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from .pauli import full_spectrum
from .states import StateVector

CACHE_FORMAT_VERSION = 1


@dataclass(eq=False)
class StabilizerSet:
    n: int
    states: list[StateVector]
    count: int
    table: np.ndarray  # (count, 2^n) amplitude rows, same order as states


def stabilizer_count(n: int) -> int:
    """2^n * prod_{k=1..n} (2^k + 1): 6, 60, 1080, 36720 for n = 1..4."""
    total = 2**n
    for k in range(1, n + 1):
        total *= 2**k + 1
    return total


def is_stabilizer_state(state: StateVector) -> bool:
    """A pure state is stabilizer iff 2^n Paulis have |e_P| = 1."""
    values = full_spectrum(state).values
    return int(np.sum(np.abs(values) >= 1 - 1e-8)) == 2**state.n


def _rref_matrices(n: int, k: int):
    """All reduced-row-echelon k x n binary matrices of rank k.

    Rows are returned as integers in basis-index bit order (column j of the
    matrix is bit n-1-j), so XORing selected rows directly yields a basis
    index.  One RREF matrix per k-dimensional subspace.
    """
    if k == 0:
        yield [], ()
        return
    for pivots in combinations(range(n), k):
        free_slots = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivots
        ]
        for fill in range(2 ** len(free_slots)):
            rows = [1 << (n - 1 - pivots[i]) for i in range(k)]
            for slot, (i, j) in enumerate(free_slots):
                if fill >> slot & 1:
                    rows[i] |= 1 << (n - 1 - j)
            yield rows, pivots


def _phase_blocks(k: int):
    """Per-dimension tables reused for every subspace of dimension k.

    Returns (points, lin, quad): ``points`` lists the 2^k parameter vectors
    t as bit rows, ``lin`` holds c.t mod 4 for all 4^k linear phases and
    ``quad`` holds t^T J t mod 2 for all strictly-upper J.
    """
    t_bits = np.array(
        [[t >> i & 1 for i in range(k)] for t in range(2**k)], dtype=np.int64
    )
    c_digits = np.array(
        [[c >> (2 * i) & 3 for i in range(k)] for c in range(4**k)], dtype=np.int64
    )
    lin = (t_bits @ c_digits.T) & 3  # 2^k x 4^k

    npairs = k * (k - 1) // 2
    pair_bits = np.empty((2**k, npairs), dtype=np.int64)
    col = 0
    for i in range(k):
        for j in range(i + 1, k):
            pair_bits[:, col] = t_bits[:, i] & t_bits[:, j]
            col += 1
    j_bits = np.array(
        [[jj >> p & 1 for p in range(npairs)] for jj in range(2**npairs)],
        dtype=np.int64,
    )
    quad = (pair_bits @ j_bits.T) & 1  # 2^k x 2^npairs
    return t_bits, lin, quad


_I_POW = np.array([1.0, 1.0j, -1.0, -1.0j])


def _enumerate_states(n: int) -> np.ndarray:
    dim = 2**n
    out = np.empty((stabilizer_count(n), dim), dtype=np.complex128)
    row = 0
    for k in range(n + 1):
        t_bits, lin, quad = _phase_blocks(k)
        # i^lin * (-1)^quad for every (c, J) pair, support point along axis 0
        phases = _I_POW[lin][:, :, None] * (1.0 - 2.0 * quad)[:, None, :]
        phases = phases.reshape(2**k, -1) / math.sqrt(2**k)
        for rows, pivots in _rref_matrices(n, k):
            free_cols = [j for j in range(n) if j not in pivots]
            support = np.zeros(2**k, dtype=np.int64)
            for i, r in enumerate(rows):
                support ^= np.where(t_bits[:, i] == 1, r, 0)
            order = np.argsort(support)
            anchor = order[0]  # smallest support index carries the phase gauge
            for shift_bits in range(2 ** len(free_cols)):
                shift = 0
                for i, j in enumerate(free_cols):
                    if shift_bits >> i & 1:
                        shift |= 1 << (n - 1 - j)
                idx = support ^ shift
                block = out[row : row + phases.shape[1]]
                block[:] = 0.0
                # divide by the anchor's unit phase: first nonzero amplitude
                # becomes real positive without touching normalization
                anchor_phase = phases[anchor] / np.abs(phases[anchor])
                gauge = phases / anchor_phase
                block[np.arange(phases.shape[1])[:, None], idx[None, :]] = gauge.T
                row += phases.shape[1]
    assert row == out.shape[0]
    return out


def _cache_path(cache_dir: str | Path, n: int) -> Path:
    return Path(cache_dir) / f"stabilizers-n{n}-v{CACHE_FORMAT_VERSION}.npz"


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> np.ndarray:
    return _enumerate_states(n)


def enumerate_stabilizer_states(
    n: int, allow_large: bool = False, cache_dir: str | Path | None = None
) -> StabilizerSet:
    """All pure stabilizer states on n qubits in a fixed canonical order.

    The order runs over subspace dimension, pivot choice, echelon fill,
    coset shift, then linear and quadratic phases, and never changes
    between runs.  n = 4 (36720 states) must be requested explicitly with
    ``allow_large``; a ``cache_dir`` stores the amplitude table on disk
    keyed by n and format version.
    """
    if not 1 <= n <= 4:
        raise ValueError(f"enumeration supports 1 <= n <= 4, got {n}")
    if n == 4 and not allow_large:
        raise ValueError("n=4 enumeration is large; pass allow_large=True")

    table = None
    path = _cache_path(cache_dir, n) if cache_dir is not None else None
    if path is not None and path.exists():
        payload = np.load(path)
        if int(payload["version"]) == CACHE_FORMAT_VERSION and int(payload["n"]) == n:
            table = payload["amplitudes"]
    if table is None:
        table = _enumerate_cached(n)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            np.savez_compressed(
                path, amplitudes=table, n=n, version=CACHE_FORMAT_VERSION
            )

    expected = stabilizer_count(n)
    assert table.shape == (expected, 2**n)
    states = [StateVector(n, table[i]) for i in range(expected)]
    return StabilizerSet(n=n, states=states, count=expected, table=table)
