"""Independent span test by dense least squares against truncated Gabor sections.

No Zak machinery is used here on purpose: atoms are tabulated directly on a
time grid, the Gram matrix is formed by quadrature, and the relative residual
of projecting a test signal onto span{e^{2pi i beta l t} g(t - alpha k)} is
computed from the normal equations.  Residual -> 0 under section growth is
evidence for completeness; a residual bounded away from 0 flags a signal
outside the closed span.  This route cross-checks the rank diagnostics and
certificates without sharing code paths with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import RationalLattice, Window

PI = math.pi


@dataclass(frozen=True)
class GaborSection:
    """Atoms e^{2pi i beta l t} g(t - alpha k), |k| <= K, |l| <= L, tabulated."""

    atoms: np.ndarray  # (n_atoms, nt)
    gram: np.ndarray  # (n_atoms, n_atoms) Hermitian PSD
    ts: np.ndarray
    dt: float
    K: int
    L: int


def build_section(
    w: Window,
    lat: RationalLattice,
    K: int,
    L: Optional[int] = None,
    t_span: Optional[float] = None,
    dt: float = 1.0 / 64.0,
) -> GaborSection:
    """Tabulate the section with |k| <= K, |l| <= L on [-T, T]."""
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    if L is None:
        L = K
    alpha, beta = lat.alpha, lat.beta
    if t_span is None:
        t_span = max(8.0, 4.0 * alpha * max(K, 1))
    nt = int(round(2 * t_span / dt)) + 1
    ts = -t_span + dt * np.arange(nt)
    ks = np.arange(-K, K + 1)
    ls = np.arange(-L, L + 1)
    translates = np.stack([np.asarray(w.evaluate(ts - alpha * k)) for k in ks])
    phases = np.exp(2j * PI * beta * np.outer(ls, ts))
    atoms = (translates[:, None, :] * phases[None, :, :]).reshape(-1, nt)
    gram = dt * (atoms.conj() @ atoms.T)
    return GaborSection(atoms=atoms, gram=gram, ts=ts, dt=dt, K=K, L=L)


def residual(
    f_samples: np.ndarray, section: GaborSection, ridge: Optional[float] = None
) -> float:
    """Relative L2 residual of the best approximation to f from the section.

    ridge=None regularizes the Gram by 1e-10 * tr(G)/dim; ridge=0 requests an
    eigenvalue-cutoff pseudo-inverse instead (cutoff 1e-10 relative to the top).
    """
    f = np.asarray(f_samples, dtype=complex)
    if f.shape != section.ts.shape:
        raise ValueError("sample grid mismatch with the section")
    fnorm2 = float(np.real(np.sum(np.abs(f) ** 2))) * section.dt
    if fnorm2 == 0.0:
        raise ValueError("test signal is zero on the section grid")
    b = section.dt * (section.atoms.conj() @ f)
    G = section.gram
    if ridge is None:
        ridge = 1e-10 * float(np.real(np.trace(G))) / G.shape[0]
    if ridge > 0.0:
        c = np.linalg.solve(G + ridge * np.eye(G.shape[0]), b)
    else:
        lam, U = np.linalg.eigh(G)
        keep = lam > 1e-10 * lam[-1]
        c = U @ ((U.conj().T @ b) * np.where(keep, 1.0 / np.where(keep, lam, 1.0), 0.0))
    # ||f - sum c_a atom_a||^2 = ||f||^2 - 2 Re <c, b> + c* G c
    res2 = fnorm2 - 2.0 * float(np.real(np.vdot(c, b))) + float(
        np.real(np.vdot(c, G @ c))
    )
    return math.sqrt(max(res2, 0.0) / fnorm2)


def residual_sweep(
    func: Callable[[np.ndarray], np.ndarray],
    w: Window,
    lat: RationalLattice,
    sizes: Sequence[int],
    ridge: Optional[float] = None,
    dt: float = 1.0 / 64.0,
) -> list:
    """(size, residual) of func over a growing chain of sections (shared time span)."""
    t_span = max(8.0, 4.0 * lat.alpha * max(sizes))
    out = []
    for K in sizes:
        section = build_section(w, lat, K, t_span=t_span, dt=dt)
        out.append((int(K), residual(func(section.ts), section, ridge=ridge)))
    return out


def unit_narrow_gaussian(ts: np.ndarray) -> np.ndarray:
    """L2-normalized e^{-2 pi t^2}; well inside every section's time span."""
    return math.sqrt(2.0) * np.exp(-2.0 * PI * np.asarray(ts) ** 2) + 0j


def band_limited(seed: int = 12345, bandwidth: float = 2.0, n_modes: int = 12):
    """Random smooth band-limited test signal with a Gaussian envelope."""
    rng = np.random.default_rng(seed)
    freqs = rng.uniform(-bandwidth, bandwidth, size=n_modes)
    amps = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)

    def func(ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.zeros(ts.shape, dtype=complex)
        for a, nu in zip(amps, freqs):
            out += a * np.exp(2j * PI * nu * ts)
        return out * np.exp(-0.5 * ts**2)

    return func
