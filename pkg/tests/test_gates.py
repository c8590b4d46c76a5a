import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from ctqw import gates


def haar_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_roundabout_left_red_cycles_forward():
    u = gates.roundabout_unitary("left")
    # red on path 1 -> red on path 2  (index = 3*color + path)
    vec = np.zeros(6)
    vec[1] = 1
    out = u @ vec
    assert out[2] == 1


def test_roundabout_right_blue_cycles_forward():
    u = gates.roundabout_unitary("right")
    vec = np.zeros(6)
    vec[3 + 2] = 1  # blue on path 2
    out = u @ vec
    assert out[3 + 0] == 1


def test_roundabout_left_right_inverse():
    lr = gates.roundabout_unitary("left") @ gates.roundabout_unitary("right")
    assert_allclose(lr, np.eye(6), atol=1e-15)


def test_roundabout_unitary_is_unitary():
    u = gates.roundabout_unitary("left")
    assert_allclose(u.conj().T @ u, np.eye(6), atol=1e-15)


def test_encode_decode_round_trip():
    for q in (0, 1):
        color, path = gates.encode(q)
        assert path == "j'"
        assert gates.decode(color) == q


def test_encode_rejects_bad_input():
    with pytest.raises(ValueError):
        gates.encode(2)
    with pytest.raises(ValueError):
        gates.decode("green")


def test_decompose_identity():
    assert gates.single_qubit_decompose(np.eye(2)) == (0.0, 0.0, 0.0, 0.0)


def test_decompose_ry_normal_form():
    t0, t1, t2, t3 = gates.single_qubit_decompose(gates.ry(np.pi / 3))
    assert abs(t0) < 1e-12 and abs(t1) < 1e-12 and abs(t3) < 1e-12
    assert abs(t2 - np.pi / 3) < 1e-12


def test_decompose_hadamard():
    t0, t1, t2, t3 = gates.single_qubit_decompose(gates.H_GATE)
    rec = np.exp(1j * t0) * gates.rz(t1) @ gates.ry(t2) @ gates.rz(t3)
    assert np.max(np.abs(rec - gates.H_GATE)) < 1e-9


def test_decompose_rejects_non_unitary():
    with pytest.raises(ValueError):
        gates.single_qubit_decompose(np.array([[1, 0], [0, 2.0]]))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_decompose_reconstructs_random_unitaries(seed):
    u = haar_unitary(np.random.default_rng(seed))
    t0, t1, t2, t3 = gates.single_qubit_decompose(u)
    assert 0 <= t2 <= np.pi + 1e-12
    assert -np.pi - 1e-12 < t0 <= np.pi + 1e-12
    rec = np.exp(1j * t0) * gates.rz(t1) @ gates.ry(t2) @ gates.rz(t3)
    assert np.max(np.abs(rec - u)) < 1e-9


def test_cp_square_and_inverse():
    assert_allclose(gates.cp_ideal(1j) @ gates.cp_ideal(1j), gates.cp_ideal(-1), atol=1e-15)
    assert_allclose(gates.cp_ideal(1j) @ gates.cp_ideal(-1j), np.eye(4), atol=1e-15)


def test_cnot_matrix():
    # control = qubit 0 (low bit), target = qubit 1
    expect = np.zeros((4, 4))
    for q1 in (0, 1):
        for q0 in (0, 1):
            b = q0 + 2 * q1
            out = (q0 + 2 * ((q1 + q0) % 2))
            expect[out, b] = 1
    assert_allclose(gates.cnot_ideal(), expect, atol=1e-12)


def test_gate_model_empty_circuit():
    out = gates.gate_model_apply([], 2, n_qubits=2)
    vec = np.zeros(4)
    vec[2] = 1
    assert_allclose(out, vec)


def test_gate_model_cnot_on_10():
    # |q1 q0> = |10>, control qubit 1 has value 1 -> target qubit 0 flips
    circ = [gates.IdealGate("cnot", (1, 0))]
    out = gates.gate_model_apply(circ, 0b10, n_qubits=2)
    assert abs(out[0b11] - 1) < 1e-12


def test_gate_model_h_cp_h_equals_cnot():
    circ = [
        gates.IdealGate("h", (0,)),
        gates.IdealGate("cp", (1, 0), (-1,)),
        gates.IdealGate("h", (0,)),
    ]
    out = gates.gate_model_apply(circ, 0b10, n_qubits=2)
    assert abs(out[0b11] - 1) < 1e-10


def test_gate_model_index_range_checked():
    with pytest.raises(ValueError):
        gates.gate_model_apply([gates.IdealGate("x", (2,))], 0, n_qubits=2)


def test_all_ideal_gates_unitary():
    mats = [
        gates.roundabout_unitary("left"),
        gates.cp_ideal(1j),
        gates.cp_ideal(-1),
        gates.cnot_ideal(),
        gates.gate_unitary(gates.IdealGate("u3", (0,), (0.3, 1.1, 0.4, -0.7)), 1),
    ]
    for m in mats:
        assert np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) < 1e-12


def test_device_spec_invariant():
    d = gates.device_for("y", np.pi, h_max=0.2)
    assert d.length == int(np.ceil(2 * np.pi / 0.2))
    assert abs(d.length * d.field - 2 * np.pi) < 1e-12
    assert gates.device_for("z", 0.0, h_max=0.2) is None


def test_device_chain_hadamard_single_rotation():
    # Z*H = Ry(-pi/2) exactly, so the absorbed-Z chain is one short device
    chain = gates.device_chain(gates.Z @ gates.H_GATE, h_max=0.2)
    assert len(chain.devices) == 1
    assert chain.devices[0].axis == "y"
    assert abs(chain.devices[0].theta + np.pi / 2) < 1e-12
    assert abs(chain.unrealized_phase) < 1e-12


def test_device_chain_reconstructs():
    rng = np.random.default_rng(42)
    for _ in range(10):
        u = haar_unitary(rng)
        chain = gates.device_chain(u, h_max=0.2)
        assert np.max(np.abs(chain.unitary() - u)) < 1e-9
