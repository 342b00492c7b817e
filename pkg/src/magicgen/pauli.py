"""Pauli strings as X/Z bit masks and full expectation spectra.

An n-qubit Pauli is a pair of n-bit integers (x_mask, z_mask) whose bits
line up with basis-index bits (qubit 0 sits in the most significant bit,
matching states.py).  The operator represented is the Hermitian

    P = i^{|x AND z|} X^x Z^z,

so ``x_mask`` says which index bits X flips, ``z_mask`` which bits Z signs,
and the i-power makes every single-qubit factor with both bits set a true
Y.  Under this convention every expectation <psi|P|psi> is real, which is
what lets the Renyi sums work with plain even powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import StateVector

_PHASE4 = np.array([1.0, 1.0j, -1.0, -1.0j])
_AXIS_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliString:
    n: int
    x_mask: int
    z_mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one qubit")
        top = 2**self.n
        if not (0 <= self.x_mask < top and 0 <= self.z_mask < top):
            raise ValueError(
                f"masks ({self.x_mask}, {self.z_mask}) out of range for n={self.n}"
            )

    @classmethod
    def from_index(cls, n: int, index: int) -> "PauliString":
        """Inverse of spectrum indexing: index = x_mask * 2^n + z_mask."""
        d = 2**n
        return cls(n, index // d, index % d)

    def label(self) -> str:
        """Letter string, qubit 0 first, e.g. 'XIZ'."""
        letters = []
        for q in range(self.n):
            bit = self.n - 1 - q
            letters.append(
                _AXIS_LETTER[(self.x_mask >> bit & 1, self.z_mask >> bit & 1)]
            )
        return "".join(letters)


@dataclass(eq=False)
class PauliSpectrum:
    """All 4^n expectations e_P, indexed row-major by (x_mask, z_mask)."""

    n: int
    values: np.ndarray

    def value(self, p: PauliString) -> float:
        return float(self.values[p.x_mask * 2**self.n + p.z_mask])


def _check_state(state: StateVector) -> np.ndarray:
    amps = state.amplitudes
    if abs(np.vdot(amps, amps).real - 1.0) > 1e-8:
        raise ValueError("state drifted from unit norm")
    return amps


def apply_pauli(state: StateVector, p: PauliString) -> StateVector:
    """i^{|x AND z|} X^x Z^z |psi>, via index XOR and sign lookups."""
    if state.n != p.n:
        raise ValueError(f"state on {state.n} qubits, Pauli on {p.n}")
    d = 2**p.n
    idx = np.arange(d) ^ p.x_mask
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & p.z_mask) & 1)
    phase = _PHASE4[(p.x_mask & p.z_mask).bit_count() & 3]
    return StateVector(state.n, phase * signs * state.amplitudes[idx])


def expectation(state: StateVector, p: PauliString) -> float:
    val = np.vdot(_check_state(state), apply_pauli(state, p).amplitudes)
    assert abs(val.imag) < 1e-10, "Hermitian convention should give a real value"
    return float(val.real)


def _fwht(a: np.ndarray) -> None:
    """In-place unnormalized Walsh-Hadamard transform along the last axis.

    Plain sign-recursion butterflies: at block size 2h the halves (u, v) map
    to (u + v, u - v).  No normalization so integer-weight inputs stay in
    exact dyadic arithmetic.
    """
    d = a.shape[-1]
    h = 1
    while h < d:
        view = a.reshape(a.shape[:-1] + (d // (2 * h), 2, h))
        u = view[..., 0, :].copy()
        v = view[..., 1, :]
        view[..., 0, :] = u + v
        view[..., 1, :] = u - v
        h *= 2


def full_spectrum(state: StateVector, method: str = "fast") -> PauliSpectrum:
    """Every Pauli expectation of a normalized pure state.

    The fast path costs O(4^n n): for a fixed x_mask ``a`` the values over
    all z_mask are a Walsh-Hadamard transform,

        e_{a,z} = i^{|a AND z|} sum_y conj(psi(y^a)) psi(y) (-1)^{y.z},

    so one correlation row plus one transform covers 2^n Paulis at once.
    The naive path applies each Pauli and takes the inner product (O(8^n));
    it exists as the independent oracle for the fast path.

    Parameters
    ----------
    state : StateVector
    method : "fast" or "naive"

    Returns
    -------
    PauliSpectrum with values ordered x_mask outer, z_mask inner.
    """
    psi = _check_state(state)
    n, d = state.n, 2**state.n
    if method == "naive":
        vals = np.empty(4**n)
        for x in range(d):
            for z in range(d):
                vals[x * d + z] = expectation(state, PauliString(n, x, z))
        return PauliSpectrum(n, vals)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")

    masks = np.arange(d)
    corr = psi.conj()[masks[:, None] ^ masks[None, :]] * psi[None, :]
    _fwht(corr)
    phases = _PHASE4[np.bitwise_count(masks[:, None] & masks[None, :]) & 3]
    values = phases * corr
    assert np.max(np.abs(values.imag)) < 1e-10
    return PauliSpectrum(n, values.real.reshape(-1))


@lru_cache(maxsize=8)
def pauli_application_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tables (ph, idx) such that (P_p |psi>)[y] = ph[p, y] * psi[idx[p, y]].

    Row p is the flat Pauli index x_mask * 2^n + z_mask, columns run over
    basis indices y.  ph folds the Hermitian i^{|x AND z|} prefactor into
    the (-1)^{|(y XOR x) AND z|} sign, so applying all 4^n Paulis to a
    batch of vectors is two fancy-indexing passes and no Python loop.
    Shapes are (4^n, 2^n); keep n small.
    """
    d = 2**n
    masks = np.arange(d)
    xs = np.repeat(masks, d)
    zs = np.tile(masks, d)
    idx = masks[None, :] ^ xs[:, None]
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & zs[:, None]) & 1)
    ph = _PHASE4[np.bitwise_count(xs & zs) & 3][:, None] * signs
    ph.setflags(write=False)
    idx.setflags(write=False)
    return ph, idx


def write_spectrum_csv(spectrum: PauliSpectrum, path_or_handle) -> None:
    """CSV dump `x_mask,z_mask,expectation` with 17 significant digits.

    Accepts a path or an already-open text handle (so stdout works too).
    """
    d = 2**spectrum.n

    def emit(fh) -> None:
        fh.write("x_mask,z_mask,expectation\n")
        for x in range(d):
            for z in range(d):
                fh.write(f"{x},{z},{spectrum.values[x * d + z]:.17g}\n")

    if hasattr(path_or_handle, "write"):
        emit(path_or_handle)
    else:
        with open(path_or_handle, "w", encoding="utf-8") as fh:
            emit(fh)
