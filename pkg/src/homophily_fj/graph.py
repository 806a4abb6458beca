"""Undirected signed graphs built from influence sign patterns.

Nodes are 0-based internally; DOT export labels them 1..n.
"""
from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .exceptions import AsymmetricInput

SIDE_A = "A"
SIDE_B = "B"


@dataclass(frozen=True)
class SignedGraph:
    n: int
    edges: Tuple[Tuple[int, int, int], ...]  # (i, j, sign) with i < j, sign in {-1, +1}

    def __post_init__(self):
        seen = set()
        for i, j, s in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) must satisfy 0 <= i < j < n={self.n}")
            if s not in (-1, 1):
                raise ValueError(f"edge ({i}, {j}) has sign {s}, expected -1 or +1")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    def neighbours(self):
        adj = [[] for _ in range(self.n)]
        for i, j, s in self.edges:
            adj[i].append((j, s))
            adj[j].append((i, s))
        for lst in adj:
            lst.sort()
        return adj

    def to_sign_matrix(self):
        A = np.zeros((self.n, self.n), dtype=np.int8)
        for i, j, s in self.edges:
            A[i, j] = A[j, i] = s
        return A


def from_sign_matrix(signs):
    """Graph whose edges are the nonzero off-diagonal entries of ``signs``."""
    signs = np.asarray(signs)
    if signs.ndim != 2 or signs.shape[0] != signs.shape[1]:
        raise AsymmetricInput(f"sign matrix must be square, got shape {signs.shape}")
    if not np.array_equal(signs, signs.T):
        raise AsymmetricInput("sign matrix is not symmetric")
    n = signs.shape[0]
    edges = tuple(
        (i, j, int(np.sign(signs[i, j])))
        for i in range(n)
        for j in range(i + 1, n)
        if signs[i, j] != 0
    )
    return SignedGraph(n, edges)


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    partition: Optional[Tuple[str, ...]]  # side of each node when balanced
    conflict: Optional[Tuple[int, int, int]]  # offending edge when not

    def __bool__(self):
        return self.balanced

    def sides(self):
        """The two node sets ``(A, B)``; ``B`` may be empty."""
        if self.partition is None:
            return None
        a = frozenset(i for i, s in enumerate(self.partition) if s == SIDE_A)
        b = frozenset(i for i, s in enumerate(self.partition) if s == SIDE_B)
        return a, b


def is_structurally_balanced(g):
    """Decide structural balance by a signed two-colouring sweep.

    Each connected component is seeded at its lowest-index node on side A and
    traversed breadth-first in neighbour order: a positive edge keeps the
    side, a negative edge flips it. The first edge whose endpoints contradict
    the colouring is returned as the witness.
    """
    side = [None] * g.n
    adj = g.neighbours()
    for root in range(g.n):
        if side[root] is not None:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, s in adj[u]:
                want = side[u] if s > 0 else 1 - side[u]
                if side[v] is None:
                    side[v] = want
                    queue.append(v)
                elif side[v] != want:
                    edge = (min(u, v), max(u, v), s)
                    return BalanceResult(False, None, edge)
    labels = tuple(SIDE_A if s == 0 else SIDE_B for s in side)
    return BalanceResult(True, labels, None)


def to_dot(g, name="W_inf"):
    """Graphviz source: solid edges for positive signs, dashed for negative."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i in range(g.n):
        lines.append(f'  {i + 1} [label="{i + 1}"];')
    for i, j, s in g.edges:
        style = "solid" if s > 0 else "dashed"
        lines.append(f'  {i + 1} -- {j + 1} [style={style}, label="{"+" if s > 0 else "-"}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
