"""Undirected multigraphs over user indices and their planning matrices.

Vertices are user indices ``0..n_users-1``.  Edges are unordered pairs with
positive integer multiplicities; self-loops are rejected.  Three derived
matrices drive all planning decisions: the plain adjacency matrix, the
entrywise-maximum union over a task list, and the "simultaneous" matrix whose
entry for a pair is the largest multiplicity-weighted edge total of any task
containing that pair.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

import numpy as np

# Entries are products of small counts; anything near int64 range is a bug.
_ENTRY_GUARD = 2**62


def _norm_pair(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"self-loop at vertex {i}")
    if i < 0 or j < 0:
        raise ValueError(f"negative vertex in pair ({i}, {j})")
    return (i, j) if i < j else (j, i)


class UserGraph:
    """Multigraph on a fixed vertex set; treat instances as immutable."""

    def __init__(self, n_users: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n_users < 0:
            raise ValueError("n_users must be non-negative")
        self._n = int(n_users)
        mult: dict[tuple[int, int], int] = {}
        for i, j in edges:
            pair = _norm_pair(int(i), int(j))
            if pair[1] >= self._n:
                raise ValueError(f"vertex {pair[1]} out of range for n_users={self._n}")
            mult[pair] = mult.get(pair, 0) + 1
        self._mult = mult

    @classmethod
    def from_multiplicities(
        cls, n_users: int, mult: Mapping[tuple[int, int], int]
    ) -> "UserGraph":
        g = cls(n_users)
        for (i, j), m in mult.items():
            if m < 0:
                raise ValueError(f"negative multiplicity for ({i}, {j})")
            if m == 0:
                continue
            pair = _norm_pair(int(i), int(j))
            if pair[1] >= n_users:
                raise ValueError(f"vertex {pair[1]} out of range for n_users={n_users}")
            g._mult[pair] = g._mult.get(pair, 0) + int(m)
        return g

    @property
    def n_users(self) -> int:
        return self._n

    def multiplicity(self, i: int, j: int) -> int:
        return self._mult.get(_norm_pair(i, j), 0)

    def support(self) -> set[tuple[int, int]]:
        """Distinct present edges as sorted pairs."""
        return set(self._mult)

    def items(self) -> list[tuple[tuple[int, int], int]]:
        """(pair, multiplicity) entries in lexicographic pair order."""
        return sorted(self._mult.items())

    def total_multiplicity(self) -> int:
        return sum(self._mult.values())

    def degree(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise ValueError(f"vertex {i} out of range")
        return sum(m for (a, b), m in self._mult.items() if i == a or i == b)

    def touched_vertices(self) -> set[int]:
        return {v for pair in self._mult for v in pair}

    def __bool__(self) -> bool:
        return bool(self._mult)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UserGraph):
            return NotImplemented
        return self._n == other._n and self._mult == other._mult

    def __hash__(self) -> int:
        return hash((self._n, tuple(sorted(self._mult.items()))))

    def __repr__(self) -> str:
        return f"UserGraph(n_users={self._n}, edges={sorted(self._mult.items())})"


def _common_vertex_count(graphs: Sequence[UserGraph]) -> int:
    if not graphs:
        raise ValueError("need at least one graph")
    n = graphs[0].n_users
    for g in graphs[1:]:
        if g.n_users != n:
            raise ValueError(f"vertex counts differ: {g.n_users} != {n}")
    return n


def adjacency_matrix(g: UserGraph) -> np.ndarray:
    """Symmetric integer matrix of edge multiplicities, zero diagonal."""
    m = np.zeros((g.n_users, g.n_users), dtype=np.int64)
    for (i, j), k in g.items():
        m[i, j] = k
        m[j, i] = k
    return m


def union_adjacency(graphs: Sequence[UserGraph]) -> np.ndarray:
    """Entrywise maximum of the adjacency matrices of ``graphs``."""
    n = _common_vertex_count(graphs)
    out = np.zeros((n, n), dtype=np.int64)
    for g in graphs:
        for (i, j), k in g.items():
            if k > out[i, j]:
                out[i, j] = k
                out[j, i] = k
    return out


def simultaneous_adjacency(graphs: Sequence[UserGraph]) -> np.ndarray:
    """Per pair, the largest multiplicity-weighted edge total of any graph.

    Entry (i, j) is ``max_k m_k(i,j) * total_k`` where ``m_k`` is the
    multiplicity of (i, j) in graph k and ``total_k`` its total edge
    multiplicity.  Zero when no graph contains the pair.
    """
    n = _common_vertex_count(graphs)
    out = np.zeros((n, n), dtype=np.int64)
    for g in graphs:
        total = g.total_multiplicity()
        for (i, j), m in g.items():
            v = m * total
            if v >= _ENTRY_GUARD:
                raise OverflowError("simultaneous-adjacency entry out of range")
            if v > out[i, j]:
                out[i, j] = v
                out[j, i] = v
    return out


def restricted_simultaneous(
    graphs: Sequence[UserGraph], edge_window: Iterable[tuple[int, int]]
) -> np.ndarray:
    """Simultaneous matrix with per-graph totals counting window pairs only.

    Pairs outside the window get entry 0.  An empty window yields the zero
    matrix.
    """
    n = _common_vertex_count(graphs)
    win = {_norm_pair(i, j) for i, j in edge_window}
    out = np.zeros((n, n), dtype=np.int64)
    for g in graphs:
        total = sum(m for pair, m in g.items() if pair in win)
        if total == 0:
            continue
        for (i, j), m in g.items():
            if (i, j) not in win:
                continue
            v = m * total
            if v >= _ENTRY_GUARD:
                raise OverflowError("restricted-simultaneous entry out of range")
            if v > out[i, j]:
                out[i, j] = v
                out[j, i] = v
    return out
