"""Microscopic time-domain simulation on finite layouts.

Single-particle states live on (color x position): index c*V + x with red
c=0, blue c=1.  The kinetic term hops a red walker with the graph weights
and a blue walker with their conjugates; Zeeman device regions add on-site
color-space rotations (H/2 * Pauli-Y or Pauli-Z) over runs of vertices.

Two same-color walkers are handled either in the (anti)symmetrized pair
basis (build_hamiltonian_2p, for spectra and small systems) or as an
unsymmetrized first-quantized array psi[x0, x1] (TwoWalkerOperator, used by
the experiment engine; symmetrization commutes with the evolution and is
applied at observables).

Propagation approximates exp(-iHt) by a Chebyshev expansion with safe
Gershgorin spectral bounds; the truncation tail is kept below the requested
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.special import jv

from .errors import CapacityError, GraphError, PhaseUndefinedError, PropagationError
from .graph import Graph
from .two_particle import BOSON, FERMION

RED, BLUE = "red", "blue"

DEFAULT_TWO_PARTICLE_BUDGET = 300_000


@dataclass(frozen=True)
class DeviceRegion:
    """Contiguous run of vertices carrying a uniform Zeeman field."""

    vertices: tuple
    axis: str
    field: float

    def __post_init__(self):
        if self.axis not in ("y", "z"):
            raise ValueError("device axis must be 'y' or 'z'")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def theta(self) -> float:
        """Rotation angle accumulated by a walker crossing at speed 2."""
        return len(self.vertices) * self.field / 2.0


def hop_matrix(g: Graph, color: str = RED) -> sp.csr_matrix:
    """Sparse V x V kinetic matrix for one color (blue = conjugated weights)."""
    rows, cols, vals = [], [], []
    for (x, y), w in g.edges.items():
        wv = w if color == RED else w.conjugate()
        rows += [x, y]
        cols += [y, x]
        vals += [wv, wv.conjugate()]
    return sp.csr_matrix((vals, (rows, cols)), shape=(g.num_vertices, g.num_vertices),
                         dtype=complex)


@dataclass
class Hamiltonian1P:
    """Single walker with color on a layout graph."""

    graph: Graph
    devices: tuple
    matrix: sp.csr_matrix

    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices

    @property
    def dimension(self) -> int:
        return 2 * self.graph.num_vertices


def build_hamiltonian_1p(g: Graph, devices=()) -> Hamiltonian1P:
    """Assemble the (2V x 2V) one-walker Hamiltonian with device regions."""
    v = g.num_vertices
    red = hop_matrix(g, RED)
    blue = hop_matrix(g, BLUE)
    h = sp.block_diag((red, blue), format="lil")
    for dev in devices:
        half = dev.field / 2.0
        for x in dev.vertices:
            if not 0 <= x < v:
                raise GraphError(f"device vertex {x} outside graph")
            for _, w in g.neighbors(x):
                if w != 1:
                    raise GraphError(
                        f"device vertex {x} touches a weighted edge; devices sit on plain paths"
                    )
            if dev.axis == "y":
                h[x, v + x] += -1j * half
                h[v + x, x] += 1j * half
            else:
                h[x, x] += half
                h[v + x, v + x] += -half
    return Hamiltonian1P(g, tuple(devices), h.tocsr())


def pair_basis(v: int, statistics: str):
    """Index maps of the (anti)symmetrized pair basis over v vertices."""
    pairs = []
    for p in range(v):
        start = p if statistics == BOSON else p + 1
        for q in range(start, v):
            pairs.append((p, q))
    index = {pq: i for i, pq in enumerate(pairs)}
    return pairs, index


@dataclass
class Hamiltonian2P:
    """Two same-color walkers in the (anti)symmetrized position basis."""

    graph: Graph
    statistics: str
    u: float
    pairs: list
    index: dict
    matrix: sp.csr_matrix

    @property
    def dimension(self) -> int:
        return len(self.pairs)


def build_hamiltonian_2p(g: Graph, statistics: str, u: float,
                         budget: int = DEFAULT_TWO_PARTICLE_BUDGET) -> Hamiltonian2P:
    """Two-walker Hamiltonian: kinetic on each factor plus the interaction.

    Interaction: on-site u (per doubly occupied site) for bosons,
    nearest-neighbor u over graph edges for fermions.  The reduced dimension
    V(V+1)/2 or V(V-1)/2 must stay within ``budget``.
    """
    if statistics not in (BOSON, FERMION):
        raise ValueError(f"unknown statistics {statistics!r}")
    v = g.num_vertices
    dim = v * (v + 1) // 2 if statistics == BOSON else v * (v - 1) // 2
    if dim > budget:
        raise CapacityError(
            f"two-particle basis of {dim} states exceeds budget {budget}"
        )
    pairs, index = pair_basis(v, statistics)
    h1 = hop_matrix(g, RED)
    eye = sp.identity(v, format="csr")
    h12 = sp.kron(h1, eye, format="csr") + sp.kron(eye, h1, format="csr")
    # interaction as a diagonal over product states
    diag = np.zeros(v * v)
    if statistics == BOSON:
        for x in range(v):
            diag[x * v + x] = u
    else:
        for (x, y) in g.edges:
            diag[x * v + y] = u
            diag[y * v + x] = u
    h12 = h12 + sp.diags(diag)
    # isometry from the reduced basis into the product space
    sign = 1.0 if statistics == BOSON else -1.0
    rows, cols, vals = [], [], []
    for i, (p, q) in enumerate(pairs):
        if p == q:
            rows.append(p * v + q)
            cols.append(i)
            vals.append(1.0)
        else:
            rows += [p * v + q, q * v + p]
            cols += [i, i]
            vals += [1 / np.sqrt(2), sign / np.sqrt(2)]
    iso = sp.csr_matrix((vals, (rows, cols)), shape=(v * v, dim))
    reduced = (iso.conj().T @ h12 @ iso).tocsr()
    return Hamiltonian2P(g, statistics, u, pairs, index, reduced)


class TwoWalkerOperator:
    """First-quantized two-walker Hamiltonian acting on psi[x0, x1].

    H psi = h1 psi + psi h1^T + u * interaction mask.  Both coordinates use
    the red kinetic matrix (same-color scattering); symmetrization is the
    caller's concern and commutes with this operator.
    """

    def __init__(self, h1: sp.csr_matrix, statistics: str, u: float):
        self.h1 = h1.tocsr()
        self.statistics = statistics
        self.u = u
        v = h1.shape[0]
        self.v = v
        if statistics == BOSON:
            self.rows = self.cols = np.arange(v)
        else:
            coo = sp.triu(h1, k=1).tocoo()
            r = np.concatenate([coo.row, coo.col])
            c = np.concatenate([coo.col, coo.row])
            self.rows, self.cols = r, c

    def apply(self, psi: np.ndarray) -> np.ndarray:
        out = self.h1 @ psi
        out += (self.h1 @ psi.T).T  # sum_y h1[x1,y] psi(x0,y); h1 applied to coord 2
        if self.u:
            out[self.rows, self.cols] += self.u * psi[self.rows, self.cols]
        return out

    def bounds(self):
        lo, hi = gershgorin_bounds(self.h1)
        pad = abs(self.u)
        return 2 * lo - pad, 2 * hi + pad


def gershgorin_bounds(h: sp.spmatrix):
    """Safe (lo, hi) enclosing the spectrum of a Hermitian sparse matrix."""
    h = h.tocsr()
    d = h.diagonal().real
    absrow = np.asarray(abs(h).sum(axis=1)).ravel() - np.abs(h.diagonal())
    return float(np.min(d - absrow)), float(np.max(d + absrow))


def _chebyshev_coeffs(tau: float, tol: float):
    """Coefficients a_m = (2 - d_m0) (-i)^m J_m(tau), truncated below tol."""
    m_max = int(abs(tau) + 40 + 12 * max(0.0, np.log10(1.0 / tol))) + int(
        4 * abs(tau) ** 0.4
    )
    m = np.arange(m_max + 1)
    bess = jv(m, tau)
    coeffs = (2.0 - (m == 0)) * (-1j) ** m * bess
    mags = np.abs(coeffs)
    keep = m_max
    tail = 0.0
    for i in range(m_max, 0, -1):
        tail += mags[i]
        if tail > tol / 4:
            keep = min(i + 1, m_max)
            break
    else:
        keep = 1
    return coeffs[: keep + 1]


def chebyshev_apply_exp(apply_h, state: np.ndarray, t: float, bounds, tol: float):
    """exp(-iHt) state for Hermitian H given a matvec and spectral bounds."""
    lo, hi = bounds
    if hi - lo < 1e-12:
        return np.exp(-1j * ((hi + lo) / 2) * t) * state
    center = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo) * (1 + 1e-9) + 1e-12
    tau = half * t
    coeffs = _chebyshev_coeffs(tau, tol)
    # T_m recurrence on the shifted/scaled operator
    tm_prev = state
    tm = (apply_h(state) - center * state) / half
    acc = coeffs[0] * tm_prev + (coeffs[1] * tm if len(coeffs) > 1 else 0)
    for m in range(2, len(coeffs)):
        tm_next = 2.0 * ((apply_h(tm) - center * tm) / half) - tm_prev
        tm_prev, tm = tm, tm_next
        acc = acc + coeffs[m] * tm
    return np.exp(-1j * center * t) * acc


def propagate(state: np.ndarray, h, t: float, tol: float = 1e-10,
              bounds=None) -> np.ndarray:
    """Evolve ``state`` by exp(-iHt) with global error <= tol.

    ``h`` may be a scipy sparse Hermitian matrix or any object with
    ``apply``/``bounds`` methods (e.g. TwoWalkerOperator).  Norm preservation
    within 10*tol is verified.
    """
    if not 0 < tol <= 1e-6:
        raise ValueError("tol must be in (0, 1e-6]")
    if t == 0:
        return state.copy()
    if sp.issparse(h):
        apply_h = lambda v: h @ v
        bnds = bounds if bounds is not None else gershgorin_bounds(h)
    else:
        apply_h = h.apply
        bnds = bounds if bounds is not None else h.bounds()
    norm0 = np.linalg.norm(state.ravel())
    out = chebyshev_apply_exp(apply_h, state, t, bnds, tol)
    norm1 = np.linalg.norm(out.ravel())
    if abs(norm1 - norm0) > 10 * tol * max(1.0, norm0):
        raise PropagationError(
            f"norm drifted by {abs(norm1 - norm0):.3g} (tol {tol:.3g}); "
            "spectral bounds or tolerance too tight"
        )
    return out


@dataclass(frozen=True)
class WavePacketSpec:
    """Rectangular packet of length L on a >= 3L segment.

    ``segment`` lists vertex ids ordered by the segment coordinate x, with
    x = 0 at the end the packet travels toward (the scattering region /
    block side for input packets).  The packet occupies x in [L, 2L-1] with
    amplitude e^{i sign pi x / 2} / sqrt(L); sign +1 is an input packet
    (moving toward x=0), -1 an output packet.
    """

    segment: tuple
    L: int
    sign: int = +1
    color: str = RED

    def __post_init__(self):
        object.__setattr__(self, "segment", tuple(self.segment))
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 (input) or -1 (output)")
        if self.color not in (RED, BLUE):
            raise ValueError(f"unknown color {self.color!r}")


def make_packet(spec: WavePacketSpec, num_vertices: int) -> np.ndarray:
    """Unit-norm one-walker state (dim 2V) realizing the packet."""
    if len(spec.segment) < 3 * spec.L:
        raise ValueError(
            f"segment of {len(spec.segment)} sites cannot hold a 3L={3 * spec.L} packet"
        )
    state = np.zeros(2 * num_vertices, dtype=complex)
    off = num_vertices if spec.color == BLUE else 0
    xs = np.arange(spec.L, 2 * spec.L)
    amps = np.exp(1j * spec.sign * np.pi / 2 * xs) / np.sqrt(spec.L)
    for x, a in zip(xs, amps):
        state[off + spec.segment[x]] = a
    return state


def packet_momentum_distribution(L: int, sign: int = +1, n_k: int = 4096):
    """|f(k)|^2 of the rectangular packet on a momentum grid, normalized.

    The input-sign packet peaks at k = -pi/2 (the plane-wave content is
    e^{-ikx} with k near -pi/2); width scales like 1/L.
    """
    xs = np.arange(L, 2 * L)
    amps = np.exp(1j * sign * np.pi / 2 * xs) / np.sqrt(L)
    ks = np.linspace(-np.pi, np.pi, n_k, endpoint=False)
    # incoming convention: amplitude against e^{-ikx}
    f = np.exp(1j * np.outer(ks, xs)) @ amps / np.sqrt(2 * np.pi)
    dens = np.abs(f) ** 2
    dens /= np.sum(dens) * (ks[1] - ks[0])
    return ks, dens


def position_expectation(state: np.ndarray, coords: np.ndarray) -> float:
    """<x> over basis entries with finite coordinates (NaN = excluded)."""
    dens = np.abs(state) ** 2
    mask = np.isfinite(coords)
    w = dens[mask]
    tot = w.sum()
    if tot <= 0:
        raise ValueError("state has no weight on coordinate-carrying entries")
    return float((coords[mask] * w).sum() / tot)


def centroid_velocity(states, times, coords: np.ndarray, wall_indices=None,
                      wall_tol: float = 1e-8) -> float:
    """Least-squares slope of <x>(t); fails if weight reaches the walls."""
    cams = []
    for psi in states:
        if wall_indices is not None:
            leak = float(np.sum(np.abs(psi[list(wall_indices)]) ** 2))
            if leak > wall_tol:
                raise PropagationError(f"packet touched boundary (weight {leak:.3g})")
        cams.append(position_expectation(psi, coords))
    slope = np.polyfit(np.asarray(times, dtype=float), np.asarray(cams), 1)[0]
    return float(slope)


def extract_phase(state: np.ndarray, reference: np.ndarray,
                  threshold: float = 0.5) -> complex:
    """<ref|state> normalized to unit modulus; needs substantial overlap."""
    ov = np.vdot(reference.ravel(), state.ravel())
    denom = np.linalg.norm(reference.ravel()) * np.linalg.norm(state.ravel())
    if denom == 0 or abs(ov) / denom < threshold:
        raise PhaseUndefinedError(
            f"overlap {abs(ov) / denom if denom else 0.0:.3g} below {threshold}"
        )
    return ov / abs(ov)


def color_populations(state: np.ndarray, num_vertices: int):
    """(red, blue) total populations of a one-walker state."""
    red = float(np.sum(np.abs(state[:num_vertices]) ** 2))
    blue = float(np.sum(np.abs(state[num_vertices:]) ** 2))
    return red, blue


def vertex_population(state: np.ndarray, vertices, num_vertices: int,
                      color: str | None = None) -> float:
    """Total weight on a vertex set, optionally restricted to one color."""
    idx = np.asarray(list(vertices), dtype=int)
    tot = 0.0
    if color in (None, RED):
        tot += float(np.sum(np.abs(state[idx]) ** 2))
    if color in (None, BLUE):
        tot += float(np.sum(np.abs(state[num_vertices + idx]) ** 2))
    return tot


def energy_expectation(state: np.ndarray, h) -> float:
    vec = state.ravel()
    if sp.issparse(h):
        return float(np.real(np.vdot(vec, (h @ state).ravel())))
    return float(np.real(np.vdot(vec, h.apply(state).ravel())))
