"""Stabilizer Renyi entropies and derived magic quantities.

The distribution behind all of these is Xi_P = <psi|P|psi>^2 / 2^n over the
4^n Pauli strings; purity makes it a probability vector for pure states.
M_alpha is its Renyi-alpha entropy minus n, in bits, and vanishes exactly
on stabilizer states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import full_spectrum
from .states import StateVector, UnitaryMatrix
from .stabilizers import enumerate_stabilizer_states

# Renyi-0 support counting needs a cutoff for exact zeros only
_SUPPORT_TOL = 1e-12


@dataclass(frozen=True)
class SreValue:
    """alpha, the entropy value in bits, and the raw moment sum R_alpha."""

    alpha: float
    value: float
    r_alpha: float


def renyi_entropy(state: StateVector, alpha: float = 2.0) -> SreValue:
    """Stabilizer Renyi entropy M_alpha of a pure state.

    M_alpha = 1/(1-alpha) log2 sum_P Xi_P^alpha - n for alpha != 1; the
    alpha = 1 case is the Shannon limit -sum Xi log2 Xi - n with
    0 log 0 := 0.  r_alpha records sum_P e_P^(2 alpha).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    n = state.n
    values = full_spectrum(state).values
    xi = values**2 / 2**n
    r_alpha = float(np.sum(np.abs(values) ** (2 * alpha)))
    if alpha == 1.0:
        support = xi[xi > 0]
        value = float(-np.sum(support * np.log2(support))) - n
    elif alpha == 0.0:
        value = math.log2(int(np.sum(xi > _SUPPORT_TOL))) - n
    else:
        value = float(np.log2(np.sum(xi[xi > 0] ** alpha)) / (1.0 - alpha)) - n
    return SreValue(alpha=alpha, value=value, r_alpha=r_alpha)


def r2_sum(state: StateVector) -> float:
    """R_2 = sum_P e_P^4, the moment sum behind the alpha = 2 entropy."""
    values = full_spectrum(state).values
    return float(np.sum(values**4))


def stabilizer_nullity(state: StateVector, tol: float = 1e-6) -> int:
    """n - log2 of the number of Paulis with |e_P| >= 1 - tol.

    For a Choi state this reproduces the unitary stabilizer nullity of the
    underlying gate, assuming the cited equivalence between that monotone
    and the Choi-state count; the CCZ value 3 anchors the convention.  The
    counted set must have power-of-two size or the tolerance is wrong.
    """
    values = full_spectrum(state).values
    count = int(np.sum(np.abs(values) >= 1.0 - tol))
    if count == 0 or count & (count - 1):
        raise ArithmeticError(
            f"counted {count} unit-magnitude Paulis, not a power of two; "
            f"tol={tol} is misconfigured or the spectrum is degenerate"
        )
    return state.n - (count.bit_length() - 1)


def nonstabilizing_power(u: UnitaryMatrix, alpha: float = 2.0) -> float:
    """Mean of M_alpha(U|phi>) over the full stabilizer set of U's size."""
    if u.n > 3:
        raise ValueError("nonstabilizing power is enumeration-backed; n <= 3")
    basis = enumerate_stabilizer_states(u.n)
    total = 0.0
    for phi in basis.states:
        total += renyi_entropy(u.apply(phi), alpha).value
    return total / basis.count
