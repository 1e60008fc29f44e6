"""Truncated, error-bounded evaluation of the Zak transform.

Z_a f(x, xi) = sum_k f(x - a k) exp(2 pi i a k xi).  The truncation index K
comes from the window's decay envelope via an explicit geometric tail bound;
compactly supported windows are summed exactly.  Summation order is fixed
(k = 0, -1, +1, -2, +2, ...) so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DecayEnvelope, RationalLattice, Window

K_CAP = 10**6


class TruncationError(RuntimeError):
    """Raised when the requested tolerance needs more than K_CAP terms."""

    def __init__(self, message: str, achieved_bound: float):
        super().__init__(message)
        self.achieved_bound = achieved_bound


@dataclass(frozen=True)
class ZakValue:
    value: complex
    truncation_bound: float
    terms_used: int


@dataclass(frozen=True)
class ZakVector:
    """Vector Zak transform: entry r is Z_a g(x + a r / p, xi)."""

    values: np.ndarray
    truncation_bound: float
    terms_used: int


def _tail_bound(env: DecayEnvelope, alpha: float, x_abs: float, K: int) -> float:
    # sum_{|k| > K} C e^{-a(alpha|k| - |x|)} = 2 C e^{a|x|} e^{-a alpha (K+1)} / (1 - e^{-a alpha})
    r = math.exp(-env.a * alpha)
    return 2.0 * env.C * math.exp(env.a * x_abs) * r ** (K + 1) / (1.0 - r)


def _choose_K(env: DecayEnvelope, alpha: float, x_abs: float, eps: float) -> tuple[int, float]:
    if env.C == 0.0:
        return 0, 0.0
    r = math.exp(-env.a * alpha)
    # smallest K with the geometric tail below eps
    num = math.log(2.0 * env.C / (eps * (1.0 - r))) + env.a * x_abs
    K = max(0, int(math.ceil(num / (env.a * alpha) - 1.0)))
    while _tail_bound(env, alpha, x_abs, K) > eps:
        K += 1
        if K > K_CAP:
            raise TruncationError(
                f"eps={eps} needs more than {K_CAP} terms",
                _tail_bound(env, alpha, x_abs, K_CAP),
            )
    if K > K_CAP:
        raise TruncationError(
            f"eps={eps} needs more than {K_CAP} terms", _tail_bound(env, alpha, x_abs, K_CAP)
        )
    return K, _tail_bound(env, alpha, x_abs, K)


def _ordered_ks(K: int) -> np.ndarray:
    # 0, -1, +1, -2, +2, ...: small |k| first, negative before positive
    ks = np.empty(2 * K + 1, dtype=np.int64)
    ks[0] = 0
    for m in range(1, K + 1):
        ks[2 * m - 1] = -m
        ks[2 * m] = m
    return ks


def _support_ks(support: tuple[float, float], alpha: float, x: float) -> np.ndarray:
    # translates with x - alpha k inside (u, v): (x - v)/alpha < k < (x - u)/alpha
    u, v = support
    lo = int(math.ceil((x - v) / alpha))
    hi = int(math.floor((x - u) / alpha))
    return np.arange(lo, hi + 1, dtype=np.int64)


def zak(w: Window, alpha: float, x: float, xi: float, eps: float = 1e-12) -> ZakValue:
    """Z_alpha w at a point, with a certified bound on the omitted tail."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    env = w.envelope()
    if env.support is not None:
        ks = _support_ks(env.support, alpha, x)
        bound = 0.0
    else:
        K, bound = _choose_K(env, alpha, abs(x), eps)
        ks = _ordered_ks(K)
    if ks.size == 0:
        return ZakValue(value=0j, truncation_bound=0.0, terms_used=0)
    vals = w.evaluate(x - alpha * ks.astype(float))
    phases = np.exp(2j * math.pi * alpha * xi * ks.astype(float))
    value = complex(np.add.reduce(vals * phases))
    return ZakValue(value=value, truncation_bound=bound, terms_used=int(ks.size))


def vector_zak(
    w: Window, lattice: RationalLattice, x: float, xi: float, eps: float = 1e-12
) -> ZakVector:
    """Z_alpha w at x + alpha r / p for r = 0..p-1, as a length-p vector."""
    parts = [zak(w, lattice.alpha, x + lattice.alpha * r / lattice.p, xi, eps) for r in range(lattice.p)]
    return ZakVector(
        values=np.array([z.value for z in parts], dtype=complex),
        truncation_bound=max(z.truncation_bound for z in parts),
        terms_used=sum(z.terms_used for z in parts),
    )


def zak_grid(
    w: Window, alpha: float, xs: np.ndarray, xis: np.ndarray, eps: float = 1e-12
) -> tuple[np.ndarray, float]:
    """Z_alpha w on a product grid; returns (len(xs), len(xis)) array and tail bound.

    One shared truncation index (from max |x| on the grid) keeps the
    evaluation a sum of outer products; the bound holds for every point.
    """
    xs = np.asarray(xs, dtype=float)
    xis = np.asarray(xis, dtype=float)
    env = w.envelope()
    if env.support is not None:
        u, v = env.support
        lo = int(math.ceil((float(np.min(xs)) - v) / alpha))
        hi = int(math.floor((float(np.max(xs)) - u) / alpha))
        ks = np.arange(lo, hi + 1, dtype=np.int64)
        bound = 0.0
    else:
        K, bound = _choose_K(env, alpha, float(np.max(np.abs(xs))) if xs.size else 0.0, eps)
        ks = _ordered_ks(K)
    Z = np.zeros((xs.size, xis.size), dtype=complex)
    for k in ks:
        gk = w.evaluate(xs - alpha * float(k))
        ph = np.exp(2j * math.pi * alpha * float(k) * xis)
        Z += np.outer(gk, ph)
    return Z, bound
