"""Ideal (gate-level) semantics of the primitive gates.

Covers the roundabout permutation on (color x 3 paths), the dual-rail
encoder/decoder maps, ZYZ decomposition of single-qubit unitaries into the
rotation devices that the hardware provides, the controlled-phase and CNOT
constructions, and a reference statevector simulator used as the oracle for
microscopic runs.

Conventions fixed here:
  * colors: red = |0>_c, blue = |1>_c.
  * R_y(t) = exp(-i t Y / 2), R_z(t) = exp(-i t Z / 2).
  * any U in U(2) equals e^{i t0} R_z(t1) R_y(t2) R_z(t3); the abstract
    identities X = e^{i pi/2} R_y(pi) R_z(pi) and H = e^{i pi/2} R_y(pi/2)
    R_z(pi) follow.  Physical device chains realize only the SU(2) part;
    the residual global phase is reported, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, pi

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H_GATE = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]])


def roundabout_unitary(orientation: str = "left") -> np.ndarray:
    """Unitary on color (x) 3 paths; index = 3*color + path.

    Left: red walkers cycle path j -> j+1 (mod 3), blue the reverse.
    Right is the adjoint.
    """
    ur = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        ur[(j + 1) % 3, j] = 1.0
    left = np.zeros((6, 6), dtype=complex)
    left[:3, :3] = ur
    left[3:, 3:] = ur.conj().T
    if orientation == "left":
        return left
    if orientation == "right":
        return left.conj().T
    raise ValueError(f"unknown orientation {orientation!r}")


def encode(q: int):
    """Ideal encoder on one dual-rail qubit: red on rail 2j+q -> color q on j'.

    Input is the rail offset q in {0, 1} of a red walker; returns the
    (color, path) pair ('red'|'blue', "j'").  A blue input violates the
    encoder contract.
    """
    if q not in (0, 1):
        raise ValueError("dual-rail offset must be 0 or 1")
    return ("red" if q == 0 else "blue", "j'")


def decode(color: str) -> int:
    """Ideal decoder, inverse of :func:`encode`."""
    if color == "red":
        return 0
    if color == "blue":
        return 1
    raise ValueError(f"unknown color {color!r}")


def single_qubit_decompose(u: np.ndarray):
    """Angles (t0, t1, t2, t3) with U = e^{i t0} R_z(t1) R_y(t2) R_z(t3).

    Canonical branch: t2 in [0, pi], t0 in (-pi, pi], degenerate rotation
    split resolved toward t3 = 0.  Reconstruction error stays below 1e-9
    for unitary input; non-unitary input is rejected.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - I2)) > 1e-10:
        raise ValueError("input must be a 2x2 unitary")
    det = np.linalg.det(u)
    t0 = float(np.angle(det) / 2.0)
    v = u * np.exp(-1j * t0)  # special unitary now
    # v = [[a, -conj(b)], [b, conj(a)]] with a = cos(t2/2) e^{-i(t1+t3)/2}
    a, b = v[0, 0], v[1, 0]
    t2 = 2.0 * np.arctan2(abs(b), abs(a))
    if abs(b) < 1e-12:
        t1 = float(2.0 * np.angle(v[1, 1]))
        t3 = 0.0
    elif abs(a) < 1e-12:
        t1 = float(2.0 * np.angle(b))
        t3 = 0.0
    else:
        sum_ = 2.0 * np.angle(v[1, 1])       # t1 + t3
        diff = 2.0 * np.angle(b)             # t1 - t3
        t1 = (sum_ + diff) / 2.0
        t3 = (sum_ - diff) / 2.0
    # fold the global phase into (-pi, pi]
    t0 = float((t0 + pi) % (2 * pi) - pi)
    if t0 == -pi:
        t0 = pi
    rec = np.exp(1j * t0) * rz(t1) @ ry(t2) @ rz(t3)
    err = np.max(np.abs(rec - u))
    if err > 1e-9:
        # the det branch can be off by pi; retry with the other sign
        t0f = float((t0 + pi + pi) % (2 * pi) - pi)
        rec2 = np.exp(1j * t0f) * rz(t1) @ ry(t2) @ rz(t3)
        if np.max(np.abs(rec2 - u)) <= 1e-9:
            return t0f, float(t1), float(t2), float(t3)
        raise ValueError(f"decomposition failed, reconstruction error {err:.3g}")
    return t0, float(t1), float(t2), float(t3)


def cp_ideal(phase: complex) -> np.ndarray:
    """Controlled-phase diag(1, 1, 1, phase); phase in {+i, -i, -1}."""
    if phase not in (1j, -1j, -1, -1 + 0j):
        raise ValueError("controlled phase must be +i, -i or -1")
    return np.diag([1, 1, 1, complex(phase)])


def cnot_ideal() -> np.ndarray:
    """CNOT as Hadamard-conjugated CP(-1) on the target qubit.

    Basis order |q1 q0> with qubit 0 the low bit; control = qubit 0,
    target = qubit 1 here (embedding for other index pairs is handled by
    the circuit model).
    """
    h_t = np.kron(H_GATE, I2)   # Hadamard on qubit 1 (target)
    return h_t @ cp_ideal(-1) @ h_t


@dataclass(frozen=True)
class IdealGate:
    """One gate of the circuit model: name, target qubits, parameters."""

    name: str
    targets: tuple
    params: tuple = ()


def _single(name: str, params) -> np.ndarray:
    if name == "x":
        return X
    if name == "h":
        return H_GATE
    if name == "id":
        return I2
    if name == "ry":
        return ry(params[0])
    if name == "rz":
        return rz(params[0])
    if name == "u3":
        if len(params) == 4:
            t0, t1, t2, t3 = params
        else:
            t0, (t1, t2, t3) = 0.0, params
        return np.exp(1j * t0) * rz(t1) @ ry(t2) @ rz(t3)
    raise ValueError(f"unknown single-qubit gate {name!r}")


def gate_unitary(gate: IdealGate, n_qubits: int) -> np.ndarray:
    """Embed one gate into the full 2^n register (qubit 0 = low bit)."""
    dim = 2 ** n_qubits
    for t in gate.targets:
        if not 0 <= t < n_qubits:
            raise ValueError(f"qubit index {t} out of range for n={n_qubits}")
    if gate.name in ("x", "h", "id", "ry", "rz", "u3"):
        (t,) = gate.targets
        u2 = _single(gate.name, gate.params)
        out = np.array([[1.0 + 0j]])
        for q in range(n_qubits):
            out = np.kron(u2 if q == t else I2, out)
        return out
    if gate.name in ("cp", "cnot"):
        c, t = gate.targets
        if c == t:
            raise ValueError("two-qubit gate needs distinct targets")
        out = np.zeros((dim, dim), dtype=complex)
        phase = complex(gate.params[0]) if (gate.name == "cp" and gate.params) else -1.0
        for b in range(dim):
            cbit, tbit = (b >> c) & 1, (b >> t) & 1
            if gate.name == "cp":
                out[b, b] = phase if (cbit and tbit) else 1.0
            else:
                b2 = b ^ (1 << t) if cbit else b
                out[b2, b] = 1.0
        return out
    raise ValueError(f"unknown gate {gate.name!r}")


def gate_model_apply(circuit, input_state, n_qubits: int) -> np.ndarray:
    """Reference statevector semantics: apply gates left to right.

    ``input_state`` may be a basis index or a 2^n amplitude vector.
    """
    dim = 2 ** n_qubits
    if np.isscalar(input_state):
        state = np.zeros(dim, dtype=complex)
        state[int(input_state)] = 1.0
    else:
        state = np.asarray(input_state, dtype=complex).copy()
    for gate in circuit:
        state = gate_unitary(gate, n_qubits) @ state
    return state


@dataclass(frozen=True)
class DeviceSpec:
    """A Zeeman rotation device: angle theta about axis, field H over l sites.

    The walker crosses at speed 2, so l sites of field H rotate by
    theta = l H / 2; the invariant l * H = 2 theta is kept exact by fitting
    H to the integer length.
    """

    axis: str
    theta: float
    length: int
    field: float

    def __post_init__(self):
        if self.axis not in ("y", "z"):
            raise ValueError("device axis must be 'y' or 'z'")
        if self.length < 1:
            raise ValueError("device length must be >= 1")
        if abs(self.length * self.field - 2 * self.theta) > 1e-12:
            raise ValueError("device invariant l*H = 2*theta violated")


def device_for(axis: str, theta: float, h_max: float) -> DeviceSpec | None:
    """Shortest device realizing R_axis(theta) with |field| <= h_max."""
    if abs(theta) < 1e-12:
        return None
    length = max(1, ceil(2 * abs(theta) / h_max))
    return DeviceSpec(axis, float(theta), length, 2 * theta / length)


@dataclass(frozen=True)
class DeviceChain:
    """Travel-ordered rotation devices realizing the SU(2) part of a gate."""

    devices: tuple
    unrealized_phase: float = 0.0

    @property
    def total_length(self) -> int:
        return sum(d.length for d in self.devices)

    def unitary(self) -> np.ndarray:
        u = I2.copy()
        for d in self.devices:       # travel order = application order
            u = (ry(d.theta) if d.axis == "y" else rz(d.theta)) @ u
        return np.exp(1j * self.unrealized_phase) * u


def _wrap_su2(t: float) -> float:
    """Reduce a rotation angle mod 4*pi into (-2pi, 2pi] (SU(2)-faithful)."""
    out = (t + 2 * pi) % (4 * pi) - 2 * pi
    return 2 * pi if out == -2 * pi else out


def _wrap_angle_pi(t: float) -> float:
    out = (t + pi) % (2 * pi) - pi
    return pi if out == -pi else out


def device_chain(u: np.ndarray, h_max: float) -> DeviceChain:
    """Compile a 2x2 unitary into a travel-ordered rotation device chain.

    U = e^{i t0} Rz(t1) Ry(t2) Rz(t3) maps to devices [Rz(t3), Ry(t2),
    Rz(t1)] in the order the walker meets them; e^{i t0} is unrealizable
    by Zeeman devices and is returned as metadata.  The equivalent branch
    Rz(t1+pi) Ry(-t2) Rz(t3-pi) is also considered and the shorter chain
    wins (deterministic device lengths either way).
    """
    t0, t1, t2, t3 = single_qubit_decompose(u)
    candidates = [
        (t1, t2, t3),
        (_wrap_su2(t1 + pi), -t2, _wrap_su2(t3 - pi)),
    ]
    best = None
    for a1, a2, a3 in candidates:
        devs = []
        phase = t0
        for axis, theta in (("z", a3), ("y", a2), ("z", a1)):
            if abs(abs(theta) - 2 * pi) < 1e-12:
                phase += pi  # full turn is -identity: pure phase, no device
                continue
            d = device_for(axis, theta, h_max)
            if d is not None:
                devs.append(d)
        total = sum(d.length for d in devs)
        if best is None or total < best[0]:
            best = (total, tuple(devs), _wrap_angle_pi(phase))
    chain = DeviceChain(best[1], best[2])
    if np.max(np.abs(chain.unitary() - u)) > 1e-9:
        raise ValueError("device chain failed to reconstruct the target unitary")
    return chain
