"""Desk-scale quantum verification of the graph rewriting rules.

Statevector and stabilizer-tableau simulation of graph states, Pauli
projections, and the two-qubit merging projection.  `verify_rule` simulates a
measurement on the actual quantum state, applies the corresponding graph
rewrite, and searches for a product of single-qubit Cliffords on the affected
neighborhood turning the simulated post-measurement state into the rewritten
graph's state.  Test-only machinery: nothing here is needed for planning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .graphstate import QubitGraph, measure_x, measure_y, measure_z, merge

MAX_STATEVECTOR_QUBITS = 10
MAX_VERIFY_QUBITS = 8

_SQ2 = np.sqrt(2.0)

ID2 = np.eye(2, dtype=np.complex128)
HAD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / _SQ2
PHASE = np.array([[1, 0], [0, 1j]], dtype=np.complex128)  # S gate
PHASE_DG = np.array([[1, 0], [0, -1j]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
# 45-degree real rotations: square roots of +-iY up to phase.
ROT_P = np.array([[1, 1], [-1, 1]], dtype=np.complex128) / _SQ2
ROT_M = np.array([[1, -1], [1, 1]], dtype=np.complex128) / _SQ2

_EIGVEC_PLUS = {
    "X": np.array([1, 1], dtype=np.complex128) / _SQ2,
    "Y": np.array([1, 1j], dtype=np.complex128) / _SQ2,
    "Z": np.array([1, 0], dtype=np.complex128),
}


@dataclass(frozen=True)
class StateVector:
    """Amplitudes over the computational basis of the listed qubits.

    ``qubits[0]`` indexes the most significant basis bit.
    """

    qubits: tuple[int, ...]
    amps: np.ndarray

    @property
    def n(self) -> int:
        return len(self.qubits)

    def axis(self, qubit: int) -> int:
        return self.qubits.index(qubit)


def graph_state_vector(g: QubitGraph) -> StateVector:
    """CZ along every edge applied to the all-plus product state."""
    qubits = tuple(g.qubits())
    n = len(qubits)
    if n > MAX_STATEVECTOR_QUBITS:
        raise ValueError(f"{n} qubits exceed the statevector limit")
    amps = np.full((2,) * n if n else (1,), 1 / 2 ** (n / 2), dtype=np.complex128)
    pos = {q: k for k, q in enumerate(qubits)}
    for a, b in sorted(g.edges()):
        sl: list[slice | int] = [slice(None)] * n
        sl[pos[a]] = 1
        sl[pos[b]] = 1
        amps[tuple(sl)] *= -1
    return StateVector(qubits, amps.reshape(-1))


@dataclass(frozen=True)
class StabilizerTableau:
    """One generator per qubit: X there, Z on its neighbors, sign +."""

    qubits: tuple[int, ...]
    x_bits: np.ndarray
    z_bits: np.ndarray


def graph_state_tableau(g: QubitGraph) -> StabilizerTableau:
    qubits = tuple(g.qubits())
    n = len(qubits)
    pos = {q: k for k, q in enumerate(qubits)}
    x_bits = np.eye(n, dtype=np.uint8)
    z_bits = np.zeros((n, n), dtype=np.uint8)
    for k, q in enumerate(qubits):
        for nb in g.neighbors(q):
            z_bits[k, pos[nb]] = 1
    return StabilizerTableau(qubits, x_bits, z_bits)


def apply_single(sv: StateVector, qubit: int, mat: np.ndarray) -> StateVector:
    """Applies a 2x2 operator to one qubit."""
    ax = sv.axis(qubit)
    t = sv.amps.reshape((2,) * sv.n)
    t = np.tensordot(mat, t, axes=([1], [ax]))
    t = np.moveaxis(t, 0, ax)
    return StateVector(sv.qubits, np.ascontiguousarray(t).reshape(-1))


def stabilizes(tab: StabilizerTableau, sv: StateVector, tol: float = 1e-10) -> bool:
    """True when every tableau generator fixes the state (eigenvalue +1)."""
    if tab.qubits != sv.qubits:
        raise ValueError("qubit orderings differ")
    for row in range(len(tab.qubits)):
        out = sv
        for k, q in enumerate(tab.qubits):
            if tab.x_bits[row, k]:
                out = apply_single(out, q, np.array([[0, 1], [1, 0]], dtype=np.complex128))
            if tab.z_bits[row, k]:
                out = apply_single(out, q, PAULI_Z)
        if np.max(np.abs(out.amps - sv.amps)) > tol:
            return False
    return True


def _drop_axis(sv: StateVector, qubit: int, new_amps: np.ndarray) -> StateVector:
    qubits = tuple(q for q in sv.qubits if q != qubit)
    norm = np.linalg.norm(new_amps)
    if norm < 1e-12:
        raise ValueError("projection annihilates the state")
    return StateVector(qubits, (new_amps / norm).reshape(-1))


def project_pauli(
    sv: StateVector, basis: str, qubit: int, outcome: str = "+"
) -> StateVector:
    """Projects one qubit onto the +1 eigenstate and factors it out."""
    if outcome != "+":
        raise ValueError("only the + outcome branch is modeled")
    if basis not in _EIGVEC_PLUS:
        raise ValueError(f"unknown basis {basis!r}")
    ax = sv.axis(qubit)
    t = sv.amps.reshape((2,) * sv.n)
    vec = _EIGVEC_PLUS[basis]
    reduced = np.tensordot(np.conj(vec), t, axes=([0], [ax]))
    return _drop_axis(sv, qubit, reduced)


def project_merge(sv: StateVector, u: int, v: int) -> StateVector:
    """Applies the merging projector, keeping the merged qubit in u's slot.

    The projector maps the two-qubit subspace span{|00>, |11>} onto one fresh
    qubit: |00> -> |0>, |11> -> |1>.
    """
    if u == v:
        raise ValueError("merge needs two distinct qubits")
    au, av = sv.axis(u), sv.axis(v)
    t = sv.amps.reshape((2,) * sv.n)
    sl0: list[slice | int] = [slice(None)] * sv.n
    sl1: list[slice | int] = [slice(None)] * sv.n
    sl0[au], sl0[av] = 0, 0
    sl1[au], sl1[av] = 1, 1
    branch0 = t[tuple(sl0)]
    branch1 = t[tuple(sl1)]
    new_pos = au if au < av else au - 1
    stacked = np.stack([branch0, branch1], axis=new_pos)
    qubits = tuple(q for q in sv.qubits if q != v)
    norm = np.linalg.norm(stacked)
    if norm < 1e-12:
        raise ValueError("merging projector annihilates the state")
    return StateVector(qubits, (stacked / norm).reshape(-1))


def states_match(a: StateVector, b: StateVector, tol: float = 1e-8) -> bool:
    """Equality up to a global phase, via fidelity."""
    if a.qubits != b.qubits:
        return False
    return bool(abs(np.vdot(a.amps, b.amps)) >= 1 - tol)


def _canonical_phase(mat: np.ndarray) -> tuple:
    flat = mat.reshape(-1)
    for entry in flat:
        if abs(entry) > 1e-9:
            flat = flat / (entry / abs(entry))
            break
    return tuple(np.round(flat, 9).tolist())


def single_qubit_cliffords() -> list[np.ndarray]:
    """The 24 single-qubit Cliffords (up to phase), H/S closure order."""
    seen: dict[tuple, np.ndarray] = {}
    frontier = [ID2]
    seen[_canonical_phase(ID2)] = ID2
    while frontier:
        nxt = []
        for m in frontier:
            for gen in (HAD, PHASE):
                cand = gen @ m
                key = _canonical_phase(cand)
                if key not in seen:
                    seen[key] = cand
                    nxt.append(cand)
        frontier = nxt
    return list(seen.values())


_CLIFFORD_24 = single_qubit_cliffords()


def search_correction(
    post: StateVector,
    target: StateVector,
    region: list[int],
    first_guess: dict[int, np.ndarray] | None = None,
    max_products: int = 24**4,
    tol: float = 1e-8,
) -> dict[int, np.ndarray] | None:
    """Finds single-qubit Cliffords on `region` mapping `post` to `target`.

    Tries `first_guess` before the exhaustive product search; the search is
    skipped when the product space exceeds `max_products`.
    """
    def matches(assign: dict[int, np.ndarray]) -> bool:
        cur = post
        for q, m in assign.items():
            cur = apply_single(cur, q, m)
        return states_match(cur, target, tol)

    if first_guess is not None and matches(first_guess):
        return dict(first_guess)
    if not region:
        return {} if states_match(post, target, tol) else None
    if 24 ** len(region) > max_products:
        return None
    for combo in itertools.product(_CLIFFORD_24, repeat=len(region)):
        assign = dict(zip(region, combo))
        if matches(assign):
            return assign
    return None


def _guess_for(g: QubitGraph, op: tuple) -> tuple[dict[int, np.ndarray], list[int]]:
    """Analytic correction candidate and search region for a rewrite."""
    kind = op[0]
    if kind == "Z":
        v = op[1]
        region = sorted(g.neighbors(v))
        return {}, region
    if kind == "Y":
        v = op[1]
        region = sorted(g.neighbors(v))
        return {b: PHASE_DG for b in region}, region
    if kind == "X":
        v, helper = op[1], op[2]
        nbrs = g.neighbors(v)
        if not nbrs:
            return {}, []
        guess: dict[int, np.ndarray] = {helper: ROT_M}
        for b in sorted(nbrs - g.neighbors(helper) - {helper}):
            guess[b] = PAULI_Z
        return guess, sorted(nbrs)
    if kind == "merge":
        u, v = op[1], op[2]
        region = sorted((g.neighbors(u) | g.neighbors(v) | {u}) - {v})
        guess = {u: PAULI_Z} if g.has_edge(u, v) else {}
        return guess, region
    raise ValueError(f"unknown rewrite {kind!r}")


def verify_rule(g: QubitGraph, op: tuple, tol: float = 1e-8) -> bool:
    """Whether the graph rewrite matches the simulated measurement.

    `op` is one of ("Z", v), ("Y", v), ("X", v, helper), ("merge", u, v).
    Simulates the + outcome on the graph state of `g`, computes the rewritten
    graph, and searches the former neighborhood for a local correction making
    the two states equal up to global phase.
    """
    if g.n_qubits > MAX_VERIFY_QUBITS:
        raise ValueError(f"{g.n_qubits} qubits exceed the verification limit")
    sv = graph_state_vector(g)
    kind = op[0]
    if kind == "Z":
        post = project_pauli(sv, "Z", op[1])
        pred = measure_z(g, op[1])
    elif kind == "Y":
        post = project_pauli(sv, "Y", op[1])
        pred = measure_y(g, op[1])
    elif kind == "X":
        post = project_pauli(sv, "X", op[1])
        pred = measure_x(g, op[1], op[2] if len(op) > 2 else None)
    elif kind == "merge":
        post = project_merge(sv, op[1], op[2])
        pred, _ = merge(g, op[1], op[2])
    else:
        raise ValueError(f"unknown rewrite {kind!r}")
    target = graph_state_vector(pred)
    if post.qubits != target.qubits:
        raise AssertionError("qubit bookkeeping mismatch between oracle and rewrite")
    guess, region = _guess_for(g, op)
    return search_correction(post, target, region, guess, tol=tol) is not None


def all_graphs(n: int) -> "itertools.chain[QubitGraph]":
    """Every labeled simple graph on qubits 0..n-1 (owners all 0)."""
    pairs = list(itertools.combinations(range(n), 2))

    def gen():
        for bits in range(1 << len(pairs)):
            edges = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
            yield QubitGraph({q: 0 for q in range(n)}, edges)

    return itertools.chain(gen())


def rule_ops(g: QubitGraph) -> dict[str, list[tuple]]:
    """All checkable rewrite instances on a graph, keyed by rule name."""
    ops: dict[str, list[tuple]] = {"rule1": [], "rule2": [], "rule3": [], "rule4": []}
    for v in g.qubits():
        ops["rule1"].append(("Z", v))
        ops["rule2"].append(("Y", v))
        for helper in sorted(g.neighbors(v)):
            ops["rule3"].append(("X", v, helper))
    for a, b in sorted(g.edges()):
        ops["rule4"].append(("merge", a, b))
    return ops


def exhaustive_rule_sweep(max_vertices: int = 5) -> dict[str, tuple[int, int]]:
    """Verifies every rule instance on every graph with <= max_vertices.

    Returns per rule (checked, passed).
    """
    counts = {f"rule{k}": [0, 0] for k in (1, 2, 3, 4)}
    for n in range(1, max_vertices + 1):
        for g in all_graphs(n):
            for rule, ops in rule_ops(g).items():
                for op in ops:
                    counts[rule][0] += 1
                    counts[rule][1] += verify_rule(g, op)
    return {rule: (c[0], c[1]) for rule, c in counts.items()}


def random_rule_sweep(
    n_graphs: int, rng: np.random.Generator, min_vertices: int = 6, max_vertices: int = 8
) -> dict[str, tuple[int, int]]:
    """Verifies one random instance of each rule on random graphs."""
    counts = {f"rule{k}": [0, 0] for k in (1, 2, 3, 4)}
    for _ in range(n_graphs):
        n = int(rng.integers(min_vertices, max_vertices + 1))
        mask = rng.random((n, n)) < 0.4
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if mask[a, b]]
        g = QubitGraph({q: 0 for q in range(n)}, edges)
        qubits = g.qubits()
        v = int(rng.integers(n))
        checks: list[tuple[str, tuple]] = [
            ("rule1", ("Z", qubits[v])),
            ("rule2", ("Y", qubits[v])),
        ]
        nbrs = sorted(g.neighbors(qubits[v]))
        if nbrs:
            helper = nbrs[int(rng.integers(len(nbrs)))]
            checks.append(("rule3", ("X", qubits[v], helper)))
        edge_list = sorted(g.edges())
        if edge_list:
            a, b = edge_list[int(rng.integers(len(edge_list)))]
            checks.append(("rule4", ("merge", a, b)))
        for rule, op in checks:
            counts[rule][0] += 1
            counts[rule][1] += verify_rule(g, op)
    return {rule: (c[0], c[1]) for rule, c in counts.items()}
