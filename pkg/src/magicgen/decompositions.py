"""Convex decompositions over the pure stabilizer dictionary.

Two solvers share the enumerated stabilizer basis.  Robustness of magic
is the minimal l1 weight of a signed mixture of stabilizer projectors
reproducing the density matrix; it is a linear program over Pauli
expectation constraints and runs on the in-house simplex.  Stabilizer
extent is the minimal squared l1 norm of a complex superposition
reproducing the state vector; it is a complex basis-pursuit problem
solved with ADMM and accepted only when a dual feasible point certifies
the optimum to within a tight gap.

Both return a Decomposition carrying the sparse coefficient list, the
reconstruction residual, and (for the extent) the certified duality gap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import full_spectrum, pauli_application_table
from .simplex import SimplexError, simplex_solve
from .stabilizers import enumerate_stabilizer_states
from .states import StateVector, UnitaryMatrix

ROM_RESIDUAL_TOL = 1e-8
EXTENT_GAP_TOL = 1e-6
_TRIM = 1e-12

_ADMM_MAX_ITER = 200_000
_ADMM_EPS = 1e-10
_ADMM_RELAX = 1.6


class DecompositionError(RuntimeError):
    """Solver failed to produce a certified decomposition."""


@dataclass
class Decomposition:
    """Sparse expansion of a state over the stabilizer dictionary.

    ``indices`` address states in enumeration order for the given n (the
    order enumerate_stabilizer_states returns).  For robustness the
    coefficients are real mixture weights on projectors |s><s| and
    ``objective`` is their l1 norm; for extent they are complex vector
    coefficients and ``objective`` is the squared l1 norm.  ``dual_gap``
    is set only by the extent solver: the certified distance between the
    l1 value and a dual lower bound (so the squared objective inherits a
    gap of the same order).
    """

    n: int
    objective: float
    indices: np.ndarray
    coefficients: np.ndarray
    residual: float
    dual_gap: float | None = None

    def to_json(self) -> dict:
        return {
            "objective": self.objective,
            "basis_indices": [int(i) for i in self.indices],
            "coefficients_re": [float(c.real) for c in self.coefficients],
            "coefficients_im": [float(c.imag) for c in self.coefficients],
            "residual": self.residual,
        }


def write_decomposition_json(dec: Decomposition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dec.to_json(), fh, indent=2)
        fh.write("\n")


@lru_cache(maxsize=4)
def _rom_matrix(n: int) -> np.ndarray:
    """A[p, i] = <s_i| P_p |s_i> over the whole dictionary, rows in flat
    Pauli order.  Cached per qubit count; the n = 4 matrix is 256 x 36720
    and is only built when a caller explicitly allowed the enumeration.
    """
    stab = enumerate_stabilizer_states(n, allow_large=True)
    ph, idx = pauli_application_table(n)
    states = stab.table
    out = np.empty((ph.shape[0], states.shape[0]))
    conj = states.conj()
    for start in range(0, states.shape[0], 512):
        blk = states[start : start + 512]
        vals = np.einsum("by,py,bpy->pb", conj[start : start + 512], ph, blk[:, idx])
        assert np.max(np.abs(vals.imag)) < 1e-10
        out[:, start : start + 512] = vals.real
    return out


def robustness_of_magic(
    state: StateVector, allow_large: bool = False, cache_dir=None
) -> Decomposition:
    """Minimal l1 weight over signed stabilizer mixtures matching the state.

    Matching every Pauli expectation is the same as matching the density
    matrix, so the constraints are A q = e with one row per Pauli string
    (the identity row enforces sum(q) = 1).  Solved as a standard-form LP
    with the weights split into positive and negative parts.
    """
    stab = enumerate_stabilizer_states(
        state.n, allow_large=allow_large, cache_dir=cache_dir
    )
    amat = _rom_matrix(state.n)
    target = full_spectrum(state).values
    nstab = stab.count
    try:
        res = simplex_solve(np.ones(2 * nstab), np.hstack([amat, -amat]), target)
    except SimplexError as exc:
        raise DecompositionError(f"robustness LP failed: {exc}") from exc
    weights = res.x[:nstab] - res.x[nstab:]
    residual = float(np.max(np.abs(amat @ weights - target)))
    if residual > ROM_RESIDUAL_TOL:
        raise DecompositionError(
            f"robustness reconstruction residual {residual:.3e} too large"
        )
    keep = np.flatnonzero(np.abs(weights) > _TRIM)
    return Decomposition(
        n=state.n,
        objective=float(np.sum(np.abs(weights))),
        indices=keep,
        coefficients=weights[keep].astype(complex),
        residual=residual,
    )


def _soft_threshold(w: np.ndarray, cut: float) -> np.ndarray:
    mag = np.abs(w)
    scale = np.maximum(mag - cut, 0.0) / np.maximum(mag, 1e-300)
    return w * scale


def stabilizer_extent(
    state: StateVector, allow_large: bool = False, cache_dir=None
) -> Decomposition:
    """Minimal (sum |c_j|)^2 over complex expansions psi = sum c_j |s_j>.

    Basis pursuit min ||c||_1 s.t. A c = psi with A the dictionary matrix,
    via scaled ADMM: the affine projection reuses one precomputed
    pseudo-inverse (A has full row rank since stabilizer states span),
    the prox of the l1 term is a complex soft threshold, and the penalty
    adapts to balance primal and dual residuals.  Afterwards a dual
    feasible point y is recovered from the scaled multiplier and the gap
    ||c||_1 - Re<y|psi> must certify optimality to EXTENT_GAP_TOL, else
    this raises rather than return an unverified number.
    """
    stab = enumerate_stabilizer_states(
        state.n, allow_large=allow_large, cache_dir=cache_dir
    )
    amat = stab.table.T.astype(complex)  # (2^n, count)
    b = state.amplitudes
    ah = amat.conj().T
    gram_inv = np.linalg.inv(amat @ ah)

    def project(v: np.ndarray) -> np.ndarray:
        return v - ah @ (gram_inv @ (amat @ v - b))

    z = project(np.zeros(stab.count, dtype=complex))
    u = np.zeros_like(z)
    rho = 1.0
    iterations = 0
    for iterations in range(1, _ADMM_MAX_ITER + 1):
        x = project(z - u)
        x_hat = _ADMM_RELAX * x + (1.0 - _ADMM_RELAX) * z
        z_new = _soft_threshold(x_hat + u, 1.0 / rho)
        u += x_hat - z_new
        primal = float(np.linalg.norm(x - z_new))
        dual = float(rho * np.linalg.norm(z_new - z))
        z = z_new
        if primal < _ADMM_EPS and dual < _ADMM_EPS:
            break
        if iterations % 50 == 0:
            if primal > 10.0 * dual:
                rho *= 2.0
                u *= 0.5
            elif dual > 10.0 * primal:
                rho *= 0.5
                u *= 2.0

    coeffs = project(z)  # exactly feasible representative
    l1 = float(np.sum(np.abs(coeffs)))

    # dual certificate: the converged multiplier rho*u lies (numerically)
    # in range(A^dag); pull it back, rescale into the feasible polytope
    # max_j |<s_j|y>| <= 1, and evaluate the lower bound Re<y|psi>.
    y, *_ = np.linalg.lstsq(ah, rho * u, rcond=None)
    feas = np.abs(ah @ y)
    top = float(np.max(feas))
    if top > 1.0:
        y = y / top
    lower = float(np.real(np.vdot(y, b)))
    gap = l1 - lower
    if not np.isfinite(gap) or gap > EXTENT_GAP_TOL:
        raise DecompositionError(
            f"extent not certified: l1 {l1:.12g}, dual bound {lower:.12g}, "
            f"gap {gap:.3e} after {iterations} iterations"
        )

    keep = np.flatnonzero(np.abs(coeffs) > 1e-9)
    kept = coeffs[keep]
    residual = float(np.max(np.abs(amat[:, keep] @ kept - b)))
    return Decomposition(
        n=state.n,
        objective=l1 * l1,
        indices=keep,
        coefficients=kept,
        residual=residual,
        dual_gap=gap,
    )


def _strict_max(u: UnitaryMatrix, solve) -> float:
    if u.n != 1:
        raise ValueError("strict amortized measures are implemented for 1-qubit gates")
    big = u.tensor_identity(1)
    stab = enumerate_stabilizer_states(2)
    best = -np.inf
    for phi in stab.states:
        out = big.apply(phi)
        best = max(best, float(np.log2(solve(out).objective)))
    return best


def strict_amortized_log_rom(u: UnitaryMatrix) -> float:
    """max over 2-qubit stabilizer inputs phi of log2 R((U (x) I) phi).

    Stabilizer inputs carry no magic of their own, so the maximum output
    robustness is exactly the strict amortized log-robustness of the
    gate with one clean ancilla.
    """
    return _strict_max(u, robustness_of_magic)


def strict_amortized_log_extent(u: UnitaryMatrix) -> float:
    """max over 2-qubit stabilizer inputs phi of log2 xi((U (x) I) phi)."""
    return _strict_max(u, stabilizer_extent)
