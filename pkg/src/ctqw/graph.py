"""Complex-weighted directed graph core.

Graphs carry Hermitian adjacency with edge weights restricted to the exact
units {1, +i, -i}: an edge stored as (x, y, w) contributes w at (x, y) and
conjugate(w) at (y, x).  Weights are kept as exact Gaussian-integer complex
numbers until matrix assembly, so Hermiticity holds exactly.

A ScatteringRegion is a graph together with an ordered list of terminal
vertices (the lead attachment points); its adjacency splits into the blocks
A (terminal-terminal), B (internal-terminal) and D (internal-internal) used
by the scattering formulas.  The three roundabout regions are provided as
frozen transcriptions validated against their published S-matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GraphError

#: the only admissible edge weights
UNIT_WEIGHTS = (1 + 0j, 1j, -1j)


def _check_weight(w) -> complex:
    w = complex(w)
    if w not in UNIT_WEIGHTS:
        raise GraphError(f"weight {w!r} not in {{1, +i, -i}}")
    return w


@dataclass(frozen=True)
class Graph:
    """Immutable Hermitian-adjacency graph on vertices 0..num_vertices-1.

    ``edges`` maps an ordered pair (x, y) with x < y to the weight at
    (x, y); the (y, x) entry is implied by conjugation.
    """

    num_vertices: int
    edges: dict = field(default_factory=dict)

    def __post_init__(self):
        canon = {}
        for (x, y), w in self.edges.items():
            if x == y:
                raise GraphError(f"self-loop at vertex {x}")
            if not (0 <= x < self.num_vertices and 0 <= y < self.num_vertices):
                raise GraphError(f"edge ({x},{y}) outside vertex range")
            w = _check_weight(w)
            if x > y:
                x, y, w = y, x, w.conjugate()
            if (x, y) in canon:
                raise GraphError(f"duplicate edge {{{x},{y}}}")
            canon[(x, y)] = w
        object.__setattr__(self, "edges", canon)

    @classmethod
    def from_edges(cls, num_vertices: int, edge_list) -> "Graph":
        """Build from an iterable of (x, y, w) triples."""
        edges = {}
        for x, y, w in edge_list:
            if x == y:
                raise GraphError(f"self-loop at vertex {x}")
            key = (x, y) if x < y else (y, x)
            if key in edges:
                raise GraphError(f"duplicate edge {{{x},{y}}}")
            edges[key] = _check_weight(w) if x < y else _check_weight(w).conjugate()
        return cls(num_vertices, edges)

    def weight(self, x: int, y: int) -> complex:
        """Adjacency entry at (x, y); zero when not adjacent."""
        if x < y:
            return self.edges.get((x, y), 0j)
        if x > y:
            return self.edges.get((y, x), 0j).conjugate()
        return 0j

    def adjacency(self) -> np.ndarray:
        """Dense complex adjacency matrix (Hermitian by construction)."""
        a = np.zeros((self.num_vertices, self.num_vertices), dtype=complex)
        for (x, y), w in self.edges.items():
            a[x, y] = w
            a[y, x] = w.conjugate()
        return a

    def conjugate(self) -> "Graph":
        """Graph with every weight conjugated (all arrows reversed)."""
        return Graph(self.num_vertices, {k: w.conjugate() for k, w in self.edges.items()})

    def degree(self, x: int) -> int:
        return sum(1 for (a, b) in self.edges if a == x or b == x)

    def neighbors(self, x: int):
        for (a, b), w in self.edges.items():
            if a == x:
                yield b, w
            elif b == x:
                yield a, w.conjugate()


def add_edge(g: Graph, x: int, y: int, w) -> Graph:
    """Return a copy of ``g`` with the edge (x, y, w) added."""
    if x == y:
        raise GraphError(f"self-loop at vertex {x}")
    key = (x, y) if x < y else (y, x)
    if key in g.edges:
        raise GraphError(f"duplicate edge {{{x},{y}}}")
    edges = dict(g.edges)
    edges[key] = _check_weight(w) if x < y else _check_weight(w).conjugate()
    return Graph(max(g.num_vertices, x + 1, y + 1), edges)


def conjugate(g: Graph) -> Graph:
    return g.conjugate()


@dataclass(frozen=True)
class ScatteringRegion:
    """Graph with an ordered terminal list; internal vertices are the rest."""

    region: Graph
    terminals: tuple

    def __post_init__(self):
        terms = tuple(self.terminals)
        if len(set(terms)) != len(terms):
            raise GraphError("terminal vertices must be distinct")
        for t in terms:
            if not (0 <= t < self.region.num_vertices):
                raise GraphError(f"terminal {t} outside vertex range")
        object.__setattr__(self, "terminals", terms)

    @property
    def n_terminals(self) -> int:
        return len(self.terminals)

    @property
    def internal(self) -> tuple:
        tset = set(self.terminals)
        return tuple(v for v in range(self.region.num_vertices) if v not in tset)

    def conjugate(self) -> "ScatteringRegion":
        return ScatteringRegion(self.region.conjugate(), self.terminals)


def partition(r: ScatteringRegion):
    """Split the region adjacency into (A, B, D) blocks, terminal-first order.

    A is N x N over terminals, D is M x M over internal vertices, B is M x N
    (internal rows, terminal columns); A and D are Hermitian.
    """
    adj = r.region.adjacency()
    t = list(r.terminals)
    i = list(r.internal)
    A = adj[np.ix_(t, t)]
    B = adj[np.ix_(i, t)]
    D = adj[np.ix_(i, i)]
    return A, B, D


def assemble(A: np.ndarray, B: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Inverse of :func:`partition` under the terminal-first vertex order."""
    n, m = A.shape[0], D.shape[0]
    out = np.zeros((n + m, n + m), dtype=complex)
    out[:n, :n] = A
    out[n:, :n] = B
    out[:n, n:] = B.conj().T
    out[n:, n:] = D
    return out


# Roundabout regions.  The published graphs are drawings only; these edge
# lists were recovered by exhaustive search over Hermitian {1,+i,-i}
# adjacencies and are pinned by regression against the closed-form S-matrix
# elements (see single_scattering.s_elements_reference and the test suite).
# Vertex ids: terminals (paths 0,1,2) first, then internal vertices.
_ROUNDABOUT_EDGES = {
    # 6 vertices: T_j -- I_j weight 1, internal cycle I0->I1->I2->I0 weight -i
    1: [
        (0, 3, 1), (1, 4, 1), (2, 5, 1),
        (3, 4, -1j), (4, 5, -1j), (5, 3, -1j),
    ],
    # 7 vertices: path 2 attaches through an extra vertex 6; one +i edge
    2: [
        (0, 3, 1), (1, 4, 1), (2, 6, 1), (6, 5, 1),
        (3, 4, 1j), (4, 5, 1), (5, 3, 1),
    ],
    # same topology as variant 2, different weight assignment, identical S
    3: [
        (0, 3, 1), (1, 4, 1), (2, 6, 1), (6, 5, 1j),
        (3, 4, 1j), (4, 5, 1j), (5, 3, -1j),
    ],
}

_NUM_VERTICES = {1: 6, 2: 7, 3: 7}


def roundabout_region(variant: int, orientation: str = "left") -> ScatteringRegion:
    """One of the three roundabout graphs, as a 3-terminal region.

    ``orientation='left'`` routes a red walker with momentum -pi/2 from path
    j to path j+1 (mod 3); ``'right'`` is the conjugated graph and routes it
    the other way.  Variant 1 realizes -U_R at k=-pi/2, variants 2 and 3
    realize +U_R exactly.
    """
    if variant not in _ROUNDABOUT_EDGES:
        raise GraphError(f"unknown roundabout variant {variant!r} (expected 1, 2 or 3)")
    if orientation not in ("left", "right"):
        raise GraphError(f"unknown orientation {orientation!r} (expected 'left' or 'right')")
    g = Graph.from_edges(_NUM_VERTICES[variant], _ROUNDABOUT_EDGES[variant])
    if orientation == "right":
        g = g.conjugate()
    return ScatteringRegion(g, (0, 1, 2))


def to_json(g: Graph, terminals=None) -> str:
    """Serialize to JSON with exact integer weight pairs."""
    doc = {
        "num_vertices": g.num_vertices,
        "edges": [[x, y, [int(w.real), int(w.imag)]] for (x, y), w in sorted(g.edges.items())],
    }
    if terminals is not None:
        doc["terminals"] = list(terminals)
    return json.dumps(doc)


def from_json(text: str):
    """Inverse of :func:`to_json`; returns (Graph, terminals-or-None)."""
    doc = json.loads(text)
    edges = [(x, y, complex(re, im)) for x, y, (re, im) in doc["edges"]]
    g = Graph.from_edges(doc["num_vertices"], edges)
    terms = doc.get("terminals")
    return g, (tuple(terms) if terms is not None else None)
