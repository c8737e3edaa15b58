"""Independent reference computations used as test oracles.

Nothing here imports the simulator or the synthesizer: marginals come from
enumerating bit strings, gates from explicit Kronecker-product matrices.
"""
from itertools import product
from math import cos, sin

import numpy as np

from statum.circuit import RY, CPhaseBit, GPhase, H, OracleWrite, Phase, V

I2 = np.eye(2)
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])


def bitstrings(n):
    return ["".join(b) for b in product("01", repeat=n)]


def marginal_sq(mags, n, prefix):
    """Sum of |a_x|^2 over all x that start with ``prefix`` (string compare)."""
    return sum(float(mags[i]) ** 2 for i, x in enumerate(bitstrings(n)) if x.startswith(prefix))


def dicke_cond_one(n, r, prefix):
    """P(next bit is 1 | prefix) by counting weight-r strings."""
    pool = [x for x in bitstrings(n) if x.count("1") == r and x.startswith(prefix)]
    if not pool:
        return None
    return sum(x[len(prefix)] == "1" for x in pool) / len(pool)


def kron(*ms):
    out = np.eye(1)
    for m in ms:
        out = np.kron(out, m)
    return out


def controlled(u, target, ctl, qubits):
    """Full matrix of u on ``target`` applied where qubits 1..len(ctl) equal ctl."""
    proj = [P1 if b == "1" else P0 for b in ctl]
    rest = qubits - len(ctl)
    ops = [I2] * rest
    ops[target - 1 - len(ctl)] = u
    on = kron(*proj, *ops)
    off = np.eye(1 << qubits) - kron(*proj, *([I2] * rest))
    return on + off


def ry_matrix(theta):
    return np.array([[cos(theta / 2), -sin(theta / 2)], [sin(theta / 2), cos(theta / 2)]], dtype=complex)


def gate_matrix(g, n, qubits):
    if isinstance(g, RY):
        return controlled(ry_matrix(g.theta), g.target, g.ctl, qubits)
    if isinstance(g, Phase):
        return controlled(np.diag([1, np.exp(1j * g.phi)]), g.target, g.ctl, qubits)
    if isinstance(g, H):
        return controlled(np.array([[1, 1], [1, -1]]) / np.sqrt(2), g.target, "", qubits)
    if isinstance(g, V):
        return controlled(np.diag([1, -1j]), g.target, "", qubits)
    if isinstance(g, CPhaseBit):
        ops = [I2] * qubits
        ops[g.target - 1] = np.diag([np.exp(1j * g.phi), np.exp(-1j * g.phi)])
        on = [I2] * qubits
        on[g.control - 1] = P1
        ops[g.control - 1] = P1
        return kron(*ops) + np.eye(1 << qubits) - kron(*on)
    if isinstance(g, OracleWrite):
        m = qubits - n
        mat = np.zeros((1 << qubits, 1 << qubits))
        for idx in range(1 << qubits):
            data, anc = divmod(idx, 1 << m)
            bits = format(data, f"0{n}b")
            hit = bits.startswith(g.ctl)
            dest = data * (1 << m) + (anc ^ g.value if hit else anc)
            mat[dest, idx] = 1
        return mat
    if isinstance(g, GPhase):
        return np.exp(1j * g.phi) * np.eye(1 << qubits)
    raise TypeError(g)


def circuit_unitary(circuit):
    q = circuit.qubits
    u = np.eye(1 << q, dtype=complex)
    for g in circuit.gates:
        u = gate_matrix(g, circuit.n, q) @ u
    return u


def random_real_target(rng, n):
    from statum import TargetState

    probs = rng.dirichlet(np.ones(1 << n))
    return TargetState(n, np.sqrt(probs))


def random_complex_target(rng, n):
    from statum import TargetState

    probs = rng.dirichlet(np.ones(1 << n))
    return TargetState(n, np.sqrt(probs), rng.uniform(-np.pi, np.pi, 1 << n))


def random_symmetric(rng, n):
    from statum import SymmetricSpec

    b = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return SymmetricSpec(n, b / np.linalg.norm(b))
