"""Phase-twisted Zak matrices, grid diagnostics, frame bounds, and reconstruction.

Q(x, xi) is the p x q matrix with entries
    Q_jk = Z_alpha g(x + alpha j / p, xi - beta k) * exp(2 pi i j k / q),
A = Q Q* is Hermitian positive semidefinite, and the frame operator acts on
the vector Zak transform as multiplication by alpha * A.  Rank of Q over the
fundamental domain [0, alpha/p) x [0, 1/alpha) decides completeness (full
rank a.e.) and the frame property (full rank everywhere, with uniform
bounds), so grid scans of det A and singular values are the working
diagnostics; they are explicitly labeled numerical, not certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import RationalLattice, Window
from .zak import zak_grid, zak

PI = math.pi


@dataclass(frozen=True)
class ZZMatrices:
    Q: np.ndarray  # (p, q)
    A: np.ndarray  # (p, p) Hermitian PSD
    singular_values: np.ndarray  # descending, length min(p, q)
    truncation_bound: float


def _phase_twist(p: int, q: int) -> np.ndarray:
    j = np.arange(p).reshape(-1, 1)
    k = np.arange(q).reshape(1, -1)
    return np.exp(2j * PI * j * k / q)


def assemble(
    w: Window, lat: RationalLattice, x: float, xi: float, eps: float = 1e-12
) -> ZZMatrices:
    """Q, A = QQ*, and singular values at one point of the fundamental domain."""
    p, q, alpha, beta = lat.p, lat.q, lat.alpha, lat.beta
    xs = x + alpha * np.arange(p) / p
    xis = xi - beta * np.arange(q)
    Z, bound = zak_grid(w, alpha, xs, xis, eps)
    Q = Z * _phase_twist(p, q)
    A = Q @ Q.conj().T
    s = np.linalg.svd(Q, compute_uv=False)
    return ZZMatrices(Q=Q, A=A, singular_values=s, truncation_bound=bound)


@dataclass(frozen=True)
class ZZField:
    """Sampled diagnostics over the midpoint grid of the fundamental domain."""

    window_label: str
    lattice: RationalLattice
    Nx: int
    Nxi: int
    eps: float
    tau_rank: float
    xs: np.ndarray  # (Nx,) cell midpoints in [0, alpha/p)
    xis: np.ndarray  # (Nxi,) cell midpoints in [0, 1/alpha)
    detA_abs: np.ndarray  # (Nx, Nxi)
    sigma_min: np.ndarray  # (Nx, Nxi) p-th singular value (0 when p > q)
    sigma_max: np.ndarray  # (Nx, Nxi)
    deficient: np.ndarray  # (Nx, Nxi) bool
    truncation_bound: float

    @property
    def deficient_fraction(self) -> float:
        return float(np.mean(self.deficient))

    def summary(self) -> dict:
        return {
            "nx": self.Nx,
            "nxi": self.Nxi,
            "min_detA": float(np.min(self.detA_abs)),
            "max_detA": float(np.max(self.detA_abs)),
            "mean_detA": float(np.mean(self.detA_abs)),
            "min_sigma_min": float(np.min(self.sigma_min)),
            "max_sigma_min": float(np.max(self.sigma_min)),
            "mean_sigma_min": float(np.mean(self.sigma_min)),
            "min_sigma_max": float(np.min(self.sigma_max)),
            "max_sigma_max": float(np.max(self.sigma_max)),
            "mean_sigma_max": float(np.mean(self.sigma_max)),
            "deficient_fraction": self.deficient_fraction,
            "tau_rank": self.tau_rank,
        }

    def write_csv(self, path) -> None:
        lat = self.lattice
        with open(path, "w") as fh:
            fh.write(f"# window={self.window_label}\n")
            fh.write(f"# alpha={lat.alpha} p={lat.p} q={lat.q} beta={lat.beta}\n")
            fh.write(f"# grid={self.Nx}x{self.Nxi} eps={self.eps} tau_rank={self.tau_rank}\n")
            fh.write("x,xi,detA_abs,sigma_min,sigma_max\n")
            for i in range(self.Nx):
                for j in range(self.Nxi):
                    fh.write(
                        f"{self.xs[i]:.17g},{self.xis[j]:.17g},"
                        f"{self.detA_abs[i, j]:.17g},{self.sigma_min[i, j]:.17g},"
                        f"{self.sigma_max[i, j]:.17g}\n"
                    )


def q_field(
    w: Window,
    lat: RationalLattice,
    xs: np.ndarray,
    xis: np.ndarray,
    eps: float = 1e-12,
) -> Tuple[np.ndarray, float]:
    """Q matrices over a product grid: returns ((len(xs), len(xis), p, q), tail bound)."""
    p, q, alpha, beta = lat.p, lat.q, lat.alpha, lat.beta
    xs = np.asarray(xs, dtype=float)
    xis = np.asarray(xis, dtype=float)
    xs_full = (xs.reshape(-1, 1) + alpha * np.arange(p).reshape(1, -1) / p).ravel()
    xis_full = (xis.reshape(-1, 1) - beta * np.arange(q).reshape(1, -1)).ravel()
    Z, bound = zak_grid(w, alpha, xs_full, xis_full, eps)
    Q = Z.reshape(xs.size, p, xis.size, q).transpose(0, 2, 1, 3)
    return Q * _phase_twist(p, q)[None, None, :, :], bound


def grid_scan(
    w: Window,
    lat: RationalLattice,
    Nx: int,
    Nxi: int,
    eps: float = 1e-12,
    tau_rank: float = 1e-8,
) -> ZZField:
    """Assemble and diagnose every midpoint of an Nx x Nxi grid."""
    if Nx < 2 or Nxi < 2:
        raise ValueError(f"grid must be at least 2x2, got {Nx}x{Nxi}")
    p, q, alpha = lat.p, lat.q, lat.alpha
    xs = alpha / p * (np.arange(Nx) + 0.5) / Nx
    xis = (1.0 / alpha) * (np.arange(Nxi) + 0.5) / Nxi
    Q, bound = q_field(w, lat, xs, xis, eps)
    s = np.linalg.svd(Q, compute_uv=False)  # (Nx, Nxi, min(p, q)) descending
    sigma_max = s[..., 0]
    if p <= q:
        sigma_min = s[..., p - 1]
        detA = np.prod(s[..., :p] ** 2, axis=-1)
    else:
        sigma_min = np.zeros_like(sigma_max)
        detA = np.zeros_like(sigma_max)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(sigma_max > 0, sigma_min / np.where(sigma_max > 0, sigma_max, 1.0), 0.0)
    deficient = np.where(sigma_max < tau_rank, True, rel < tau_rank)
    if p > q:
        deficient = np.ones_like(deficient, dtype=bool)
    return ZZField(
        window_label=w.label,
        lattice=lat,
        Nx=Nx,
        Nxi=Nxi,
        eps=eps,
        tau_rank=tau_rank,
        xs=xs,
        xis=xis,
        detA_abs=np.abs(detA),
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        deficient=deficient,
        truncation_bound=bound,
    )


def frame_bounds(field: ZZField) -> Tuple[float, float]:
    """Grid estimates (A_est, B_est) = alpha * (min sigma_min^2, max sigma_max^2)."""
    alpha = field.lattice.alpha
    return (
        float(alpha * np.min(field.sigma_min**2)),
        float(alpha * np.max(field.sigma_max**2)),
    )


@dataclass(frozen=True)
class Verdict:
    complete: str  # "yes (numerical)" | "no (numerical)" | "inconclusive"
    frame: str
    evidence: dict


def verdict(
    fields: Sequence[ZZField],
    stability_threshold: float = 0.01,
    frame_decay_factor: float = 3.5,
    frame_stable_tol: float = 0.05,
) -> Verdict:
    """Two-tier numerical verdict from a sequence of successive grid refinements.

    Needs at least two fields (coarse to fine).  Completeness here is the
    almost-everywhere full-rank criterion read off sampled ranks; a certified
    answer comes from the witness search, not from this.
    """
    if len(fields) < 2:
        raise ValueError("verdict needs at least two grid refinements")
    fracs = [f.deficient_fraction for f in fields]
    bounds = [frame_bounds(f) for f in fields]
    a_ests = [b[0] for b in bounds]
    min_det = [float(np.min(f.detA_abs)) for f in fields]

    if all(fr > stability_threshold for fr in fracs):
        complete = "no (numerical)"
    elif all(fr == 0.0 for fr in fracs):
        complete = "yes (numerical)"
    else:
        complete = "inconclusive"

    ratios = []
    for a0, a1 in zip(a_ests[:-1], a_ests[1:]):
        if a1 <= 0.0:
            ratios.append(math.inf)
        else:
            ratios.append(a0 / a1)
    if a_ests[-1] == 0.0 or all(r >= frame_decay_factor for r in ratios):
        frame = "no (numerical)"
    elif a_ests[-1] > 0.0 and all(
        abs(a1 - a0) <= frame_stable_tol * a0 for a0, a1 in zip(a_ests[:-1], a_ests[1:])
    ):
        frame = "yes (numerical)"
    else:
        frame = "inconclusive"

    return Verdict(
        complete=complete,
        frame=frame,
        evidence={
            "grids": [[f.Nx, f.Nxi] for f in fields],
            "deficient_fractions": fracs,
            "A_est": a_ests,
            "B_est": [b[1] for b in bounds],
            "A_est_decay_ratios": [r if math.isfinite(r) else None for r in ratios],
            "min_detA": min_det,
            "stability_threshold": stability_threshold,
            "frame_decay_factor": frame_decay_factor,
            "frame_stable_tol": frame_stable_tol,
        },
    )


# ---------------------------------------------------------------------------
# reconstruction through the vector Zak domain


@dataclass(frozen=True)
class Signal:
    """Uniform samples: values[i] is the signal at t0 + i*dt."""

    values: np.ndarray
    t0: float
    dt: float

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.values))

    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.dt)


def relative_error(f: Signal, g: Signal) -> float:
    if len(f.values) != len(g.values) or f.dt != g.dt or f.t0 != g.t0:
        raise ValueError("signals must share a grid")
    denom = f.norm()
    if denom == 0.0:
        raise ValueError("reference signal is zero")
    diff = math.sqrt(float(np.sum(np.abs(f.values - g.values) ** 2)) * f.dt)
    return diff / denom


def sample_signal(func, lat: RationalLattice, t_span: float, cells_per_step: int = 64) -> Signal:
    """Sample a callable on a grid commensurable with the lattice.

    dt divides alpha/p exactly (cells_per_step samples per cell) and the grid
    start is an integer multiple of alpha/p, covering at least [-t_span, t_span].
    """
    cell = lat.alpha / lat.p
    dt = cell / cells_per_step
    n_cells_half = int(math.ceil(t_span / cell))
    t0 = -n_cells_half * cell
    nt = 2 * n_cells_half * cells_per_step
    ts = t0 + dt * np.arange(nt)
    return Signal(values=np.asarray(func(ts), dtype=complex), t0=t0, dt=dt)


@dataclass(frozen=True)
class ReconstructionResult:
    signal: Signal
    unstable: bool  # pseudo-inverse cutoff hit on more than half the grid
    cutoff_fraction: float
    cutoff_mask: np.ndarray  # (Nx, Nxi) bool, cells where eigenvalues were dropped
    k_range: int
    l_range: int
    n_xi: int


def _coefficients(
    f: Signal, w: Window, lat: RationalLattice, k_range: int, l_range: int
) -> np.ndarray:
    ts = f.times()
    ks = np.arange(-k_range, k_range + 1)
    gmat = np.stack([np.asarray(w.evaluate(ts - lat.alpha * k)) for k in ks])
    ls = np.arange(-l_range, l_range + 1)
    E = np.exp(-2j * PI * lat.beta * np.outer(ts, ls))
    return f.dt * (gmat.conj() * f.values[None, :]) @ E  # (nk, nl)


def reconstruct(
    f: Signal,
    w: Window,
    lat: RationalLattice,
    eps: float = 1e-12,
    pinv_tol: float = 1e-6,
    n_xi: Optional[int] = None,
) -> ReconstructionResult:
    """Apply the frame operator by truncated analysis + synthesis, then invert it
    on the vector Zak side: W(Sf) -> alpha^{-1} pinv(A) W(Sf) -> samples.

    The signal grid must be commensurable with the lattice: dt * n = alpha/p for
    integer n, t0 an integer multiple of alpha/p, and the sample count a
    multiple of n (see sample_signal).
    """
    p, q, alpha, beta = lat.p, lat.q, lat.alpha, lat.beta
    cell = alpha / p
    nx = int(round(cell / f.dt))
    if abs(nx * f.dt - cell) > 1e-9 * cell or nx < 2:
        raise ValueError("signal grid step must divide alpha/p")
    u0f = f.t0 / cell
    u0 = int(round(u0f))
    if abs(u0f - u0) > 1e-9:
        raise ValueError("signal grid start must be a multiple of alpha/p")
    if len(f.values) % nx != 0:
        raise ValueError("sample count must be a multiple of (alpha/p)/dt")
    n_cells = len(f.values) // nx
    ts = f.times()
    t_lo, t_hi = float(ts[0]), float(ts[-1])

    env = w.envelope()
    if env.support is not None:
        su, sv = env.support
        k_lo = int(math.floor((t_lo - sv) / alpha))
        k_hi = int(math.ceil((t_hi - su) / alpha))
        k_range = max(abs(k_lo), abs(k_hi))
    else:
        # translates whose envelope mass inside the grid exceeds 1e-10
        reach = math.log(max(env.C, 1e-30) / (1e-10 * math.sqrt(env.a))) / env.a
        k_range = int(math.ceil((max(abs(t_lo), abs(t_hi)) + reach) / alpha))

    # frequency range grows until the outer shell of coefficients is negligible,
    # relative to the largest one; capped below the sampling Nyquist limit
    nyq_cap = max(4, int(1.0 / (2.0 * beta * f.dt)) - 1)
    l_range = min(16, nyq_cap)
    coeffs = _coefficients(f, w, lat, k_range, l_range)
    peak = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    while l_range < nyq_cap:
        shell = max(
            float(np.max(np.abs(coeffs[:, 0]))), float(np.max(np.abs(coeffs[:, -1])))
        )
        if peak == 0.0 or shell <= 1e-10 * peak:
            break
        l_range = min(2 * l_range, nyq_cap)
        coeffs = _coefficients(f, w, lat, k_range, l_range)
        peak = float(np.max(np.abs(coeffs)))

    # synthesis on the same grid
    ks = np.arange(-k_range, k_range + 1)
    ls = np.arange(-l_range, l_range + 1)
    gmat = np.stack([np.asarray(w.evaluate(ts - alpha * k)) for k in ks])
    Epos = np.exp(2j * PI * beta * np.outer(ts, ls))
    Sf = np.einsum("ki,ki->i", gmat, coeffs @ Epos.T)

    if n_xi is None:
        n_xi = 8
        while n_xi < n_cells // p + 4:
            n_xi *= 2
    xi_grid = np.arange(n_xi) / (alpha * n_xi)

    # vector Zak transform of Sf from its samples (blocks of the grid)
    W = np.zeros((nx, p, n_xi), dtype=complex)
    for r in range(p):
        # u = r - p*k must lie in [u0, u0 + n_cells)
        k_min = int(math.ceil((r - (u0 + n_cells - 1)) / p))
        k_max = int(math.floor((r - u0) / p))
        for k in range(k_min, k_max + 1):
            u = r - p * k
            block = Sf[(u - u0) * nx : (u - u0 + 1) * nx]
            phase = np.exp(2j * PI * k * np.arange(n_xi) / n_xi)
            W[:, r, :] += block[:, None] * phase[None, :]

    # A = Q Q* on the reconstruction grid, inverted per point with a cutoff
    xs = f.dt * np.arange(nx)
    Q, _ = q_field(w, lat, xs, xi_grid, eps)
    A = Q @ np.conj(np.swapaxes(Q, -1, -2))
    lam, U = np.linalg.eigh(A)  # ascending eigenvalues
    lam_max_global = float(np.max(lam))
    keep = lam > pinv_tol * lam_max_global
    inv_lam = np.where(keep, 1.0 / np.where(keep, lam, 1.0), 0.0)
    cutoff_mask = np.any(~keep, axis=-1)  # (nx, n_xi)
    cutoff_fraction = float(np.mean(cutoff_mask))

    # W is (nx, p, n_xi); eigensystem is (nx, n_xi, p, p)
    Wp = np.transpose(W, (0, 2, 1))  # (nx, n_xi, p)
    y = np.einsum("xjab,xjb->xja", np.conj(np.swapaxes(U, -1, -2)), Wp)
    y = inv_lam * y
    What = np.einsum("xjab,xjb->xja", U, y) / alpha  # alpha^{-1} pinv(A) W

    # invert the vector Zak transform: DFT over xi recovers translates
    F = np.fft.fft(np.transpose(What, (0, 2, 1)), axis=2) / n_xi  # (nx, p, n_xi)
    rec = np.zeros(len(f.values), dtype=complex)
    for u in range(u0, u0 + n_cells):
        r = u % p
        k = (r - u) // p
        rec[(u - u0) * nx : (u - u0 + 1) * nx] = F[:, r, k % n_xi]

    return ReconstructionResult(
        signal=Signal(values=rec, t0=f.t0, dt=f.dt),
        unstable=cutoff_fraction > 0.5,
        cutoff_fraction=cutoff_fraction,
        cutoff_mask=cutoff_mask,
        k_range=k_range,
        l_range=l_range,
        n_xi=n_xi,
    )
