"""Analytic two-particle scattering of same-color walkers on an infinite path.

Two red walkers approach each other with momenta k0 in (-pi, 0) (moving
toward larger coordinate) and k1 in (0, pi).  With an on-site interaction u
(bosons) or nearest-neighbor interaction u (fermions), the scattering only
multiplies the outgoing wave by an amplitude S01(k0, k1) of unit modulus:

    bosons:   S01 = (2(sin k0 - sin k1) + iu) / (2(sin k0 - sin k1) - iu)
    fermions: S01 = (1 + e^{i(k0+k1)} - e^{ik1} u) / (1 + e^{i(k0+k1)} - e^{ik0} u)

At the controlled-phase working point (k0, k1) = (-pi/2, pi/2) these give
+-i for u = -+4 (bosons) and u = -+2 (fermions).
"""

from __future__ import annotations

import numpy as np

BOSON, FERMION = "boson", "fermion"

#: controlled-phase working momenta
CP_K0, CP_K1 = -np.pi / 2, np.pi / 2

_ZERO = 1e-12


def boson_amplitude(k0: float, k1: float, u: float) -> complex:
    """On-site (Bose-Hubbard) scattering amplitude."""
    d = 2.0 * (np.sin(k0) - np.sin(k1))
    num, den = d + 1j * u, d - 1j * u
    if abs(den) < _ZERO:
        # both terms vanish only together; the hard-core limit is -1
        if abs(num) < _ZERO:
            return -1.0 + 0j
    return num / den


def fermion_amplitude(k0: float, k1: float, u: float) -> complex:
    """Nearest-neighbor (extended Hubbard) scattering amplitude."""
    base = 1.0 + np.exp(1j * (k0 + k1))
    num = base - np.exp(1j * k1) * u
    den = base - np.exp(1j * k0) * u
    if abs(den) < _ZERO and abs(num) < _ZERO:
        return -1.0 + 0j
    return num / den


def amplitude(statistics: str, k0: float, k1: float, u: float) -> complex:
    if statistics == BOSON:
        return boson_amplitude(k0, k1, u)
    if statistics == FERMION:
        return fermion_amplitude(k0, k1, u)
    raise ValueError(f"unknown statistics {statistics!r}")


def two_particle_effective_length(statistics: str, u: float, h: float = 1e-6) -> float:
    """Effective length -i d/dk0 log S01 at the controlled-phase point.

    Both printed forms (-i d_{k0} and +i d_{k1}) are evaluated and must
    agree; their mean is returned.  Comes out 0 for bosons (u = -+4) and
    -1/2 for fermions (u = -+2).
    """
    f = lambda a, b: amplitude(statistics, a, b, u)
    d0 = np.angle(f(CP_K0 + h, CP_K1) / f(CP_K0 - h, CP_K1)) / (2 * h)
    d1 = -np.angle(f(CP_K0, CP_K1 + h) / f(CP_K0, CP_K1 - h)) / (2 * h)
    if abs(d0 - d1) > 1e-5:
        raise ValueError(f"k0/k1 derivative forms disagree: {d0:.3g} vs {d1:.3g}")
    return float(0.5 * (d0 + d1))


def bethe_wave_function(L_path: int, k0: float, k1: float, u: float,
                        statistics: str) -> np.ndarray:
    """Two-particle scattering eigenstate on path sites 0..L_path-1.

    Returns the unsymmetrized-coordinate array psi[x0, x1] of the Bethe form
    (incident wave plus S01-weighted exchanged wave on each ordering).  For
    fermions the diagonal is zero; for bosons it is the x0 = x1 limit of the
    x0 < x1 branch.
    """
    s01 = amplitude(statistics, k0, k1, u)
    sign = 1.0 if statistics == BOSON else -1.0
    x = np.arange(L_path)
    direct = np.exp(1j * (k0 * x[:, None] + k1 * x[None, :]))
    exchanged = np.exp(1j * (k1 * x[:, None] + k0 * x[None, :]))
    lower = x[:, None] < x[None, :]
    psi = np.where(lower, direct + sign * s01 * exchanged,
                   s01 * direct + sign * exchanged)
    if statistics == BOSON:
        np.fill_diagonal(psi, (1 + s01) * np.exp(1j * (k0 + k1) * x))
    else:
        np.fill_diagonal(psi, 0.0)
    return psi


def _apply_h2p_path(psi: np.ndarray, u: float, statistics: str) -> np.ndarray:
    """(H psi) for two walkers on an open path, first-quantized coordinates."""
    out = np.zeros_like(psi)
    out[1:, :] += psi[:-1, :]
    out[:-1, :] += psi[1:, :]
    out[:, 1:] += psi[:, :-1]
    out[:, :-1] += psi[:, 1:]
    if statistics == BOSON:
        idx = np.arange(psi.shape[0])
        out[idx, idx] += u * psi[idx, idx]
    else:
        idx = np.arange(psi.shape[0] - 1)
        out[idx, idx + 1] += u * psi[idx, idx + 1]
        out[idx + 1, idx] += u * psi[idx + 1, idx]
    return out


def verify_two_particle_eigenstate(L_path: int, k0: float, k1: float, u: float,
                                   statistics: str) -> float:
    """Max interior residual of (H - E) psi for the Bethe eigenstate.

    The ansatz solves the infinite-path problem, so residuals are evaluated
    only where neither coordinate touches the open ends (interior pairs).
    """
    if L_path < 20:
        raise ValueError("L_path must be at least 20")
    psi = bethe_wave_function(L_path, k0, k1, u, statistics)
    e = 2.0 * (np.cos(k0) + np.cos(k1))
    res = _apply_h2p_path(psi, u, statistics) - e * psi
    interior = res[1:-1, 1:-1]
    scale = np.max(np.abs(psi))
    return float(np.max(np.abs(interior)) / scale)
