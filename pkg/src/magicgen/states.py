"""State vectors, gates, circuits, Choi states and Heisenberg chains.

Bit conventions used by the whole package: qubit 0 is the most significant
bit of a computational basis index, so a basis label reads left to right as
|q0 q1 ... q_{n-1}>.  Operators on an ordered qubit tuple are Kronecker
products in that same order.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

NORM_TOL = 1e-10
UNITARY_TOL = 1e-9


@dataclass(eq=False)
class StateVector:
    """Normalized pure state on ``n`` qubits."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        if amps.shape[0] != 2**self.n:
            raise ValueError(
                f"amplitude vector has length {amps.shape[0]}, expected {2**self.n}"
            )
        if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise ValueError("state vector is not normalized")
        self.amplitudes = amps

    @classmethod
    def from_unnormalized(cls, n: int, raw: np.ndarray) -> "StateVector":
        raw = np.asarray(raw, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(raw)
        if norm < 1e-12:
            raise ValueError("cannot normalize the zero vector")
        return cls(n, raw / norm)

    @classmethod
    def computational(cls, n: int, index: int = 0) -> "StateVector":
        amps = np.zeros(2**n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(self.n + other.n, np.kron(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        """|<self|other>|^2."""
        return abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2


@dataclass(eq=False)
class UnitaryMatrix:
    """Unitary on ``n`` qubits, validated to UNITARY_TOL in Frobenius norm."""

    n: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        d = 2**self.n
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match n={self.n}")
        defect = np.linalg.norm(mat.conj().T @ mat - np.eye(d))
        if defect > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        self.matrix = mat

    def apply(self, state: StateVector) -> StateVector:
        if state.n != self.n:
            raise ValueError(f"state has {state.n} qubits, unitary acts on {self.n}")
        return StateVector(self.n, self.matrix @ state.amplitudes)

    def tensor_identity(self, m: int) -> "UnitaryMatrix":
        """U on the first register, identity on m ancilla qubits."""
        if m == 0:
            return self
        return UnitaryMatrix(self.n + m, np.kron(self.matrix, np.eye(2**m)))

    def dagger(self) -> "UnitaryMatrix":
        return UnitaryMatrix(self.n, self.matrix.conj().T)

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        return UnitaryMatrix(self.n, self.matrix @ other.matrix)


# ---------------------------------------------------------------------------
# gates

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


def _rz(theta: float) -> np.ndarray:
    # R_z(theta) = exp(-i theta Z); T equals R_z(pi/8) up to global phase
    return np.diag([np.exp(-1j * theta), np.exp(1j * theta)])


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _qft(n: int) -> np.ndarray:
    d = 2**n
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / math.sqrt(d)


def _ccrz(theta: float) -> np.ndarray:
    # Doubly controlled z-rotation with the block phase fixed so |110> is
    # untouched: the |111> amplitude picks up e^{i theta}.  At theta = pi this
    # is exactly CCZ, which is what the T-count scan pivots on.
    m = np.eye(8, dtype=np.complex128)
    m[7, 7] = np.exp(1j * theta)
    return m


# name -> (qubit arity, parameter count, builder taking the parameter tuple)
_GATES = {
    "x": (1, 0, lambda p: _X),
    "y": (1, 0, lambda p: _Y),
    "z": (1, 0, lambda p: _Z),
    "h": (1, 0, lambda p: _H),
    "s": (1, 0, lambda p: np.diag([1.0, 1j])),
    "t": (1, 0, lambda p: np.diag([1.0, np.exp(1j * np.pi / 4)])),
    "sqrt_t": (1, 0, lambda p: np.diag([1.0, np.exp(1j * np.pi / 8)])),
    "rz": (1, 1, lambda p: _rz(p[0])),
    "rx": (1, 1, lambda p: _rx(p[0])),
    "cnot": (2, 0, lambda p: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128)),
    "cz": (2, 0, lambda p: np.diag([1.0, 1.0, 1.0, -1.0]).astype(np.complex128)),
    "swap": (2, 0, lambda p: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)),
    "ccz": (3, 0, lambda p: np.diag([1.0] * 7 + [-1.0]).astype(np.complex128)),
    "ccrz": (3, 1, lambda p: _ccrz(p[0])),
}

CLIFFORD_GATE_NAMES = ("h", "s", "x", "y", "z", "cnot", "cz", "swap")


def gate_names() -> tuple[str, ...]:
    return tuple(_GATES) + ("qft",)


def build_gate(name: str, params: Sequence[float] = (), n: int | None = None) -> UnitaryMatrix:
    """Build a named gate as a UnitaryMatrix.

    ``qft`` takes its qubit count from ``n``; every other gate has fixed
    arity and ignores ``n``.  Angles are in radians with R_z(theta) =
    exp(-i theta Z).
    """
    name = name.lower().replace("-", "_")
    params = tuple(float(p) for p in params)
    if name == "qft":
        if params:
            raise ValueError("qft takes no parameters")
        if n is None or n < 1:
            raise ValueError("qft needs an explicit qubit count")
        return UnitaryMatrix(n, _qft(n))
    if name not in _GATES:
        raise ValueError(f"unknown gate {name!r}; supported: {', '.join(gate_names())}")
    arity, nparams, builder = _GATES[name]
    if len(params) != nparams:
        raise ValueError(f"gate {name} takes {nparams} parameter(s), got {len(params)}")
    return UnitaryMatrix(arity, builder(params))


def embed_gate(gate: UnitaryMatrix, targets: Sequence[int], n: int) -> UnitaryMatrix:
    """Embed a small gate on the given qubit tuple of an n-qubit register."""
    m = gate.n
    targets = list(targets)
    if len(targets) != m:
        raise ValueError(f"gate acts on {m} qubits, got {len(targets)} targets")
    if len(set(targets)) != m or any(q < 0 or q >= n for q in targets):
        raise ValueError(f"bad target tuple {targets} for n={n}")
    rest = [q for q in range(n) if q not in targets]
    order = targets + rest
    full = np.kron(gate.matrix, np.eye(2 ** (n - m)))
    tensor = full.reshape((2,) * (2 * n))
    # axis i of `tensor` currently belongs to qubit order[i]; send it home
    perm = [order.index(q) for q in range(n)]
    tensor = tensor.transpose(perm + [n + p for p in perm])
    return UnitaryMatrix(n, tensor.reshape(2**n, 2**n))


# ---------------------------------------------------------------------------
# circuits

@dataclass
class CircuitSpec:
    """Ordered gate list; each entry is (name, params, target qubit indices)."""

    n: int
    gates: list[tuple[str, tuple[float, ...], tuple[int, ...]]] = field(default_factory=list)


_GATE_LINE = re.compile(r"^(?P<name>[a-zA-Z_][a-zA-Z0-9_]*)(\((?P<params>[^)]*)\))?(?P<rest>.*)$")


def parse_circuit(text: str, n: int | None = None) -> CircuitSpec:
    """Parse the one-gate-per-line circuit format.

    Lines look like ``rz(0.3926991) 0`` or ``cnot 0 1``; ``#`` starts a
    comment.  If ``n`` is omitted it becomes one plus the largest qubit
    index mentioned.
    """
    gates: list[tuple[str, tuple[float, ...], tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _GATE_LINE.match(line)
        if match is None:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        name = match.group("name").lower()
        par_text = match.group("params")
        params = tuple(float(tok) for tok in par_text.split(",") if tok.strip()) if par_text else ()
        try:
            targets = tuple(int(tok) for tok in match.group("rest").split())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad qubit indices in {raw!r}") from exc
        if not targets:
            raise ValueError(f"line {lineno}: gate {name} has no target qubits")
        gates.append((name, params, targets))
    if n is None:
        n = 1 + max(q for _, _, targets in gates for q in targets) if gates else 1
    return CircuitSpec(n=n, gates=gates)


def run_circuit(spec: CircuitSpec) -> UnitaryMatrix:
    """Multiply the embedded gate matrices in listed (temporal) order."""
    total = UnitaryMatrix(spec.n, np.eye(2**spec.n, dtype=np.complex128))
    for name, params, targets in spec.gates:
        if any(q < 0 or q >= spec.n for q in targets):
            raise ValueError(f"gate {name} targets {targets} outside [0, {spec.n})")
        base = build_gate(name, params, n=len(targets) if name == "qft" else None)
        total = embed_gate(base, targets, spec.n) @ total
    return total


# ---------------------------------------------------------------------------
# Choi states

def choi_state(u: UnitaryMatrix) -> StateVector:
    """Choi state (U x I) 2^{-n/2} sum_i |i>|i>; the first register carries U.

    With qubit 0 as the most significant bit the amplitude on |j>|i> is
    U[j, i] / sqrt(2^n), which is just the row-major flattening of U.
    """
    d = 2**u.n
    return StateVector(2 * u.n, u.matrix.reshape(-1) / math.sqrt(d))


# ---------------------------------------------------------------------------
# Heisenberg chains

@dataclass
class HamiltonianSpec:
    """Disordered XXZ chain parameters; h_k is uniform on [-W, W]."""

    N: int
    delta: float = 0.2
    W: float = 0.0
    seed: int = 0
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError("chain needs N >= 2 sites")
        if self.W < 0:
            raise ValueError("disorder half-width W must be nonnegative")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"boundary must be periodic or open, got {self.boundary!r}")


def _site_op(op: np.ndarray, site: int, n: int) -> np.ndarray:
    mats = [_I2] * n
    mats[site] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def heisenberg_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """H = sum_k (X_k X_{k+1} + Y_k Y_{k+1} + delta Z_k Z_{k+1}) + sum_k h_k Z_k.

    Periodic boundaries close the k = N bond back to site 1; open drops it.
    The disorder fields are drawn once from a PCG64 stream seeded with
    spec.seed, so the matrix is reproducible from the spec alone.
    """
    n = spec.N
    rng = np.random.default_rng(spec.seed)
    fields = rng.uniform(-spec.W, spec.W, size=n)
    dim = 2**n
    ham = np.zeros((dim, dim), dtype=np.complex128)
    bonds = range(n) if spec.boundary == "periodic" else range(n - 1)
    for k in bonds:
        nxt = (k + 1) % n
        ham += _site_op(_X, k, n) @ _site_op(_X, nxt, n)
        ham += _site_op(_Y, k, n) @ _site_op(_Y, nxt, n)
        ham += spec.delta * _site_op(_Z, k, n) @ _site_op(_Z, nxt, n)
    for k in range(n):
        ham += fields[k] * _site_op(_Z, k, n)
    assert np.max(np.abs(ham - ham.conj().T)) < 1e-12
    return ham


def evolve(hamiltonian: np.ndarray, t: float) -> UnitaryMatrix:
    """exp(-i H t) through the eigendecomposition of Hermitian H."""
    ham = np.asarray(hamiltonian, dtype=np.complex128)
    scale = max(1.0, np.linalg.norm(ham))
    if np.linalg.norm(ham - ham.conj().T) > 1e-9 * scale:
        raise ValueError("evolve needs a Hermitian matrix")
    n = int(round(math.log2(ham.shape[0])))
    if 2**n != ham.shape[0]:
        raise ValueError("matrix dimension is not a power of two")
    evals, evecs = np.linalg.eigh(ham)
    mat = (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T
    return UnitaryMatrix(n, mat)


# ---------------------------------------------------------------------------
# named states and file formats

def haar_random_state(n: int, rng: np.random.Generator) -> StateVector:
    raw = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector.from_unnormalized(n, raw)


def _phase_state(phi: float) -> np.ndarray:
    return np.array([1.0, np.exp(1j * phi)]) / math.sqrt(2)


_PRESET_SINGLE = {
    "zero": np.array([1.0, 0.0], dtype=np.complex128),
    "one": np.array([0.0, 1.0], dtype=np.complex128),
    "plus": _phase_state(0.0),
    "minus": _phase_state(np.pi),
    "plus-i": _phase_state(np.pi / 2),
    "minus-i": _phase_state(-np.pi / 2),
    "magic-pi10": _phase_state(np.pi / 10),
    "t-plus": _phase_state(np.pi / 4),
}


def preset_state(name: str, n: int = 1) -> StateVector:
    """Named states; single-qubit presets extend to n qubits as tensor powers."""
    key = name.lower()
    if key == "bell":
        return StateVector(2, np.array([1, 0, 0, 1]) / math.sqrt(2))
    if key == "ghz":
        amps = np.zeros(2**max(n, 2), dtype=np.complex128)
        amps[0] = amps[-1] = 1 / math.sqrt(2)
        return StateVector(max(n, 2), amps)
    if key not in _PRESET_SINGLE:
        raise ValueError(
            f"unknown state preset {name!r}; choices: "
            f"{', '.join(sorted(_PRESET_SINGLE) + ['bell', 'ghz'])}"
        )
    single = _PRESET_SINGLE[key]
    amps = single
    for _ in range(n - 1):
        amps = np.kron(amps, single)
    return StateVector(n, amps)


def state_to_json(state: StateVector) -> str:
    return json.dumps(
        {
            "n": state.n,
            "re": state.amplitudes.real.tolist(),
            "im": state.amplitudes.imag.tolist(),
        }
    )


def state_from_json(text: str) -> StateVector:
    data = json.loads(text)
    amps = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
    return StateVector(int(data["n"]), amps)
