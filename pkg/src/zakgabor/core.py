"""Window function zoo and rational lattice arithmetic.

Every window is an immutable spec with two capabilities: exact pointwise
evaluation (vectorized over numpy arrays) and a certified exponential decay
envelope |g(x)| <= C * exp(-a*|x|).  The envelope constants drive every
truncation decision downstream (Zak sums, theta sums, Gram quadrature), so
they are computed conservatively: a dense scan of |g(x)|*exp(a*|x|) over
[-X, X] fixes C, and X is chosen per family so that the ratio is provably
decreasing beyond the scan range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np

PI = math.pi

# scan resolution for envelope constants; fine enough for every family here,
# whose features live on scale >= 1/(4*pi)
_ENV_STEP = 1.0 / 256.0
_TPG_ENV_STEP = 1.0 / 256.0
# scanned maxima miss inter-grid peaks by up to ~curvature*(step/2)^2 relative
# (~3e-6 at Gaussian curvature); the slack must dominate that, not just ULPs
_ENV_SLACK = 1.0 + 1e-4


# ---------------------------------------------------------------------------
# lattice


@dataclass(frozen=True)
class RationalLattice:
    """Time step alpha and coprime (p, q) with alpha*beta = p/q."""

    alpha: float
    p: int
    q: int

    def __post_init__(self):
        if not (self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.p < 1 or self.q < 1:
            raise ValueError(f"p, q must be positive integers, got p={self.p} q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError("p and q must be coprime; use make_lattice for gcd reduction")

    @property
    def beta(self) -> float:
        # derived, never stored: alpha*beta = p/q exactly up to one rounding
        return self.p / (self.q * self.alpha)

    @property
    def density(self) -> float:
        return self.p / self.q


def make_lattice(alpha: float, p: int, q: int) -> RationalLattice:
    """Build a lattice, reducing (p, q) to lowest terms."""
    if p <= 0 or q <= 0:
        raise ValueError(f"p and q must be positive, got p={p} q={q}")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    g = math.gcd(int(p), int(q))
    return RationalLattice(alpha=float(alpha), p=int(p) // g, q=int(q) // g)


# ---------------------------------------------------------------------------
# decay envelopes


@dataclass(frozen=True)
class DecayEnvelope:
    """Certified bound |g(x)| <= C*exp(-a*|x|), valid analytically beyond valid_radius.

    For compactly supported windows `support` is set and the bound is instead
    "|g| <= C inside support, exactly 0 outside"; a is then unused.
    """

    C: float
    a: float
    valid_radius: float
    support: Optional[Tuple[float, float]] = None

    def bound(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.support is not None:
            u, v = self.support
            return np.where((x >= u) & (x <= v), self.C, 0.0)
        return self.C * np.exp(-self.a * np.abs(x))


def _scan_constant(w: "Window", a: float, x_tail: float, step: float) -> DecayEnvelope:
    """Fix C = (1+1e-6) * max |g(x)| e^{a|x|} over [-X, X], X = max(16, x_tail)."""
    X = max(16.0, float(x_tail))
    xs = np.arange(0.0, X + step, step)
    xs = np.concatenate([-xs[:0:-1], xs])
    vals = np.abs(w.evaluate(xs))
    C = float(np.max(vals * np.exp(a * np.abs(xs)))) * _ENV_SLACK
    return DecayEnvelope(C=C, a=a, valid_radius=X)


def _gaussian_tail_radius(gamma: float, lin_rate: float, degree: int, a: float) -> float:
    """Radius beyond which B(1+x)^d e^{lin*x} e^{-gamma x^2} e^{a x} is decreasing.

    The log-derivative is -2*gamma*x + (lin + a) + d/x; it is negative for
    x greater than the positive root of 2*gamma*x^2 - (lin+a)*x - d.
    """
    s = lin_rate + a
    root = (s + math.sqrt(s * s + 8.0 * gamma * degree)) / (4.0 * gamma)
    return 2.0 * root + 4.0


# ---------------------------------------------------------------------------
# window zoo


class Window:
    """Base class: evaluation plus a lazily computed, certified envelope."""

    def evaluate(self, x) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def _build_envelope(self) -> DecayEnvelope:  # pragma: no cover - abstract
        raise NotImplementedError

    @cached_property
    def _envelope(self) -> DecayEnvelope:
        return self._build_envelope()

    def envelope(self) -> DecayEnvelope:
        return self._envelope

    @property
    def label(self) -> str:
        return repr(self)

    def to_dict(self) -> dict:
        raise NotImplementedError


def _as_complex_pairs(values) -> list:
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


def _from_pair(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex entries must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v), 0.0)


@dataclass(frozen=True)
class Gaussian(Window):
    """g(x) = exp(-gamma x^2)."""

    gamma: float = PI

    def __post_init__(self):
        if not (self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.exp(-self.gamma * x * x).astype(complex)

    def _build_envelope(self) -> DecayEnvelope:
        # sup of e^{-gamma x^2 + |x|} is e^{1/(4 gamma)}, attained at |x| = 1/(2 gamma)
        return DecayEnvelope(C=_ENV_SLACK * math.exp(1.0 / (4.0 * self.gamma)), a=1.0, valid_radius=0.0)

    def to_dict(self) -> dict:
        return {"variant": "gaussian", "gamma": self.gamma}


def _hermite_poly_coeffs(n: int) -> np.ndarray:
    # p_0 = 1, p_{k+1} = p_k' - 4 pi x p_k  (ascending coefficients)
    p = np.zeros(n + 1)
    p[0] = 1.0
    deg = 0
    for _ in range(n):
        dp = np.zeros(n + 1)
        dp[:deg] = p[1 : deg + 1] * np.arange(1, deg + 1)
        xp = np.zeros(n + 1)
        xp[1 : deg + 2] = p[: deg + 1]
        p = dp - 4.0 * PI * xp
        deg += 1
    return p[: n + 1]


@dataclass(frozen=True)
class Hermite(Window):
    """n-th Hermite function p_n(x) exp(-pi x^2), normalized to unit L2 norm."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Hermite order must be nonnegative, got {self.n}")

    @cached_property
    def _scaled_coeffs(self) -> np.ndarray:
        coeffs = _hermite_poly_coeffs(self.n)
        # numeric norm on a grid wide enough that the integrand is ~1e-170 at the ends
        step = 1.0 / 512.0
        xs = np.arange(-25.0, 25.0 + step, step)
        vals = np.polynomial.polynomial.polyval(xs, coeffs) * np.exp(-PI * xs * xs)
        norm2 = float(np.sum(np.abs(vals) ** 2)) * step
        return coeffs / math.sqrt(norm2)

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        poly = np.polynomial.polynomial.polyval(x, self._scaled_coeffs)
        return (poly * np.exp(-PI * x * x)).astype(complex)

    def _build_envelope(self) -> DecayEnvelope:
        return _scan_constant(self, 1.0, _gaussian_tail_radius(PI, 0.0, self.n, 1.0), _ENV_STEP)

    def to_dict(self) -> dict:
        return {"variant": "hermite", "n": self.n}


@dataclass(frozen=True)
class PolyGaussian(Window):
    """g(x) = P(x) exp(-gamma x^2), P given by ascending complex coefficients."""

    coeffs: Tuple[complex, ...]
    gamma: float = PI

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("coeffs must be nonempty")
        if not (self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        poly = np.polynomial.polynomial.polyval(x, np.asarray(self.coeffs, dtype=complex))
        return poly * np.exp(-self.gamma * x * x)

    def _build_envelope(self) -> DecayEnvelope:
        deg = len(self.coeffs) - 1
        return _scan_constant(self, 1.0, _gaussian_tail_radius(self.gamma, 0.0, deg, 1.0), _ENV_STEP)

    def to_dict(self) -> dict:
        return {"variant": "poly_gaussian", "coeffs": _as_complex_pairs(self.coeffs), "gamma": self.gamma}


def _poly_lower_radius(coeffs: Sequence[complex]) -> float:
    """Radius beyond which |Q(x)| >= |lead| * |x|^m / 2 (Cauchy-type bound)."""
    lead = abs(coeffs[-1])
    rest = sum(abs(c) for c in coeffs[:-1])
    return max(1.0, 2.0 * rest / lead)


@dataclass(frozen=True)
class RationalGaussian(Window):
    """g(x) = (P(x)/Q(x)) exp(-gamma x^2); Q must have no real roots."""

    num_coeffs: Tuple[complex, ...]
    den_coeffs: Tuple[complex, ...]
    gamma: float = PI

    def __post_init__(self):
        object.__setattr__(self, "num_coeffs", tuple(complex(c) for c in self.num_coeffs))
        object.__setattr__(self, "den_coeffs", tuple(complex(c) for c in self.den_coeffs))
        if len(self.num_coeffs) == 0 or len(self.den_coeffs) == 0:
            raise ValueError("coefficient lists must be nonempty")
        if abs(self.den_coeffs[-1]) == 0:
            raise ValueError("denominator leading coefficient must be nonzero")
        if not (self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        # numeric no-real-root check: fine grid out to the Cauchy radius, then
        # |Q| >= |lead| |x|^m / 2 takes over analytically
        den = np.asarray(self.den_coeffs, dtype=complex)
        deg = len(den) - 1
        R = _poly_lower_radius(self.den_coeffs) + 1.0
        xs = np.arange(-R, R + 1.0 / 512.0, 1.0 / 512.0)
        qvals = np.abs(np.polynomial.polynomial.polyval(xs, den)) / (1.0 + np.abs(xs)) ** deg
        scale = max(abs(c) for c in self.den_coeffs)
        if float(np.min(qvals)) <= 1e-9 * scale:
            raise ValueError("denominator has a real (or numerically near-real) root")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        num = np.polynomial.polynomial.polyval(x, np.asarray(self.num_coeffs, dtype=complex))
        den = np.polynomial.polynomial.polyval(x, np.asarray(self.den_coeffs, dtype=complex))
        return num / den * np.exp(-self.gamma * x * x)

    def _build_envelope(self) -> DecayEnvelope:
        deg = len(self.num_coeffs) - 1
        x_tail = max(
            _gaussian_tail_radius(self.gamma, 0.0, deg, 1.0),
            1.5 * _poly_lower_radius(self.den_coeffs),
        )
        return _scan_constant(self, 1.0, x_tail, _ENV_STEP)

    def to_dict(self) -> dict:
        return {
            "variant": "rational_gaussian",
            "coeffs": _as_complex_pairs(self.num_coeffs),
            "den_coeffs": _as_complex_pairs(self.den_coeffs),
            "gamma": self.gamma,
        }


@dataclass(frozen=True)
class ExpPolyGaussian(Window):
    """g(x) = (sum_j a_j exp(lambda_j x)) exp(-gamma x^2)."""

    terms: Tuple[Tuple[complex, complex], ...]
    gamma: float = PI

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((complex(a), complex(lam)) for a, lam in self.terms)
        )
        if len(self.terms) == 0:
            raise ValueError("terms must be nonempty")
        if not (self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(np.shape(x), dtype=complex)
        for a, lam in self.terms:
            out = out + a * np.exp(lam * x)
        return out * np.exp(-self.gamma * x * x)

    def _build_envelope(self) -> DecayEnvelope:
        lin = max(abs(lam.real) for _, lam in self.terms)
        return _scan_constant(self, 1.0, _gaussian_tail_radius(self.gamma, lin, 0, 1.0), _ENV_STEP)

    def to_dict(self) -> dict:
        return {
            "variant": "exp_poly_gaussian",
            "terms": [[_as_complex_pairs([a])[0], _as_complex_pairs([lam])[0]] for a, lam in self.terms],
            "gamma": self.gamma,
        }


def _gauss_one_pole(x: np.ndarray, delta: float, gamma: float) -> np.ndarray:
    """Inverse Fourier transform of exp(-gamma xi^2) / (1 + 2 pi i delta xi).

    Equals sqrt(pi/gamma) e^{-pi^2 x^2 / gamma} convolved with the unit-mass
    one-sided kernel (1/delta) e^{-s/delta} 1_{s>0}; in stable form
    (1/(2 delta)) e^{-A x^2} erfcx(B/(2 sqrt A) - sqrt A x) with A = pi^2/gamma,
    B = 1/delta.  For strongly negative erfcx arguments the reflection
    erfcx(-t) = 2 e^{t^2} - erfcx(t) is applied analytically to avoid overflow.
    """
    from scipy.special import erfcx

    if delta < 0:
        return _gauss_one_pole(-x, -delta, gamma)
    A = PI * PI / gamma
    B = 1.0 / delta
    sA = math.sqrt(A)
    z = B / (2.0 * sA) - sA * x
    out = np.empty(x.shape, dtype=float)
    near = z >= -20.0
    with np.errstate(over="ignore", under="ignore"):
        out[near] = 0.5 * B * np.exp(-A * x[near] ** 2) * erfcx(z[near])
        far = ~near  # z^2 overflows erfcx; split off the dominant exponential
        xf = x[far]
        out[far] = B * np.exp(-B * xf + B * B / (4.0 * A)) - 0.5 * B * np.exp(
            -A * xf * xf
        ) * erfcx(-z[far])
    return out


@dataclass(frozen=True)
class TotallyPositiveGaussian(Window):
    """Inverse Fourier transform of exp(-gamma xi^2) * prod_j (1 + 2 pi i delta_j xi)^(-1).

    With pairwise distinct deltas the product of poles splits by partial
    fractions into single-pole terms, each with the exact erfcx closed form;
    that is the production path.  Repeated (or nearly repeated) deltas fall
    back to certified trapezoid quadrature of the inverse Fourier integral,
    which is also kept as an independent cross-check: the |xi| > Xi tail is
    below target/2 by a Gaussian tail bound, and the step is chosen so the
    aliasing error (a sum of true window values at distance >= 1/eta - R) is
    below target/2 for all |x| <= R, using a contour-shift bound on the true
    window.  Rules are cached per |x| radius.
    """

    deltas: Tuple[float, ...]
    gamma: float = PI

    _ABS_ERR = 1e-15

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if any(d == 0.0 for d in self.deltas):
            raise ValueError("deltas must be nonzero")
        if not (self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    @cached_property
    def _pole_weights(self) -> Optional[Tuple[float, ...]]:
        """Partial-fraction weights, or None when two deltas (nearly) coincide."""
        ds = self.deltas
        m = len(ds)
        if m == 0:
            return ()
        gap = min(
            (abs(ds[i] - ds[j]) for i in range(m) for j in range(i + 1, m)),
            default=math.inf,
        )
        if gap <= 1e-9 * max(abs(d) for d in ds):
            return None
        weights = []
        for j, dj in enumerate(ds):
            denom = math.prod(dj - di for i, di in enumerate(ds) if i != j)
            weights.append(dj ** (m - 1) / denom)
        return tuple(weights)

    @cached_property
    def _rules(self) -> dict:
        return {}

    def _contour_bound(self) -> Tuple[float, float]:
        """(C_b, a_b) with |g(x)| <= C_b exp(-a_b |x|), from shifting the contour."""
        g = self.gamma
        if not self.deltas:
            # pure Gaussian: use the exact transform's constants
            return math.sqrt(PI / g), 0.0  # a_b unused in this branch
        dmax = max(abs(d) for d in self.deltas)
        c0 = 1.0 / (4.0 * PI * dmax)  # half the analyticity strip: each |1 - 2 pi d c0| >= 1/2
        Cb = (2.0 ** len(self.deltas)) * math.exp(g * c0 * c0) * math.sqrt(PI / g)
        return Cb, 2.0 * PI * c0

    def _rule(self, R: float) -> Tuple[np.ndarray, np.ndarray]:
        key = R
        got = self._rules.get(key)
        if got is not None:
            return got
        g = self.gamma
        target = self._ABS_ERR
        Xi = 1.0
        while math.sqrt(PI / g) * math.erfc(math.sqrt(g) * Xi) > target / 2:
            Xi += 0.25
        if self.deltas:
            Cb, ab = self._contour_bound()
            D = math.log(4.0 * Cb / target) / ab
        else:
            D = math.sqrt(g * math.log(8.0 * math.sqrt(PI / g) / target)) / PI + 1.0
        eta = 1.0 / (R + D)
        M = int(math.ceil(Xi / eta))
        xi = np.arange(-M, M + 1) * eta
        ghat = np.exp(-g * xi * xi).astype(complex)
        for d in self.deltas:
            ghat = ghat / (1.0 + 2j * PI * d * xi)
        rule = (xi, eta * ghat)
        self._rules[key] = rule
        return rule

    def evaluate(self, x) -> np.ndarray:
        weights = self._pole_weights
        if weights is None:
            return self.evaluate_by_quadrature(x)
        x = np.asarray(x, dtype=float)
        if not self.deltas:
            return (math.sqrt(PI / self.gamma) * np.exp(-PI * PI / self.gamma * x * x)).astype(
                complex
            )
        flat = np.atleast_1d(x).astype(float)
        acc = np.zeros(flat.shape, dtype=float)
        for wgt, d in zip(weights, self.deltas):
            acc += wgt * _gauss_one_pole(flat, d, self.gamma)
        return acc.reshape(np.shape(x)).astype(complex)

    def evaluate_by_quadrature(self, x) -> np.ndarray:
        """Certified trapezoid rule on the inverse Fourier integral (cross-check path)."""
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x).ravel()
        radius = float(np.max(np.abs(flat))) if flat.size else 1.0
        R = 8.0
        while R < radius:
            R *= 2.0
        xi, wts = self._rule(R)
        out = np.empty(flat.shape, dtype=complex)
        chunk = max(1, 2_000_000 // max(1, xi.size))
        for i in range(0, flat.size, chunk):
            seg = flat[i : i + chunk]
            out[i : i + chunk] = np.exp(2j * PI * np.outer(seg, xi)) @ wts
        return out.reshape(np.shape(x))

    def _build_envelope(self) -> DecayEnvelope:
        if not self.deltas:
            a = 1.0
            x_tail = _gaussian_tail_radius(PI * PI / self.gamma, 0.0, 0, a)
            return _scan_constant(self, a, x_tail, _TPG_ENV_STEP)
        weights = self._pole_weights
        if weights is not None:
            # each one-pole term obeys |term| <= (1/|d|) e^{B^2/(4A)} e^{-|x|/|d|}
            # on both sides (erfc <= 2 on the slow side; erfcx <= 1 plus a
            # completed square on the Gaussian side), so the weighted sum gives
            # an analytic envelope at the slowest pole rate
            A = PI * PI / self.gamma
            a = 1.0 / max(abs(d) for d in self.deltas)
            C = sum(
                abs(wgt) / abs(d) * math.exp(1.0 / (4.0 * A * d * d))
                for wgt, d in zip(weights, self.deltas)
            )
            return DecayEnvelope(C=_ENV_SLACK * C, a=a, valid_radius=0.0)
        a = 0.5 / (2.0 * PI * max(abs(d) for d in self.deltas))
        Cb, ab = self._contour_bound()
        g0 = max(abs(complex(self.evaluate(np.array([0.0]))[0])), 1e-30)
        # beyond x_tail: |g| e^{a|x|} <= Cb e^{-(ab-a)|x|} <= g(0) <= scanned max
        x_tail = math.log(Cb / g0) / (ab - a) + 4.0
        return _scan_constant(self, a, x_tail, _TPG_ENV_STEP)

    def to_dict(self) -> dict:
        return {"variant": "totally_positive_gaussian", "deltas": list(self.deltas), "gamma": self.gamma}


@dataclass(frozen=True)
class ShiftedGaussianCombo(Window):
    """g(x) = sum_j d_j exp(2 pi i b_j x) exp(-pi (x - a_j)^2)."""

    terms: Tuple[Tuple[complex, float, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((complex(d), float(a), float(b)) for d, a, b in self.terms)
        )
        if len(self.terms) == 0:
            raise ValueError("terms must be nonempty")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(np.shape(x), dtype=complex)
        for d, a, b in self.terms:
            out = out + d * np.exp(2j * PI * b * x) * np.exp(-PI * (x - a) ** 2)
        return out

    def _build_envelope(self) -> DecayEnvelope:
        lin = 2.0 * PI * max(abs(a) for _, a, _ in self.terms)
        return _scan_constant(self, 1.0, _gaussian_tail_radius(PI, lin, 0, 1.0), _ENV_STEP)

    def to_dict(self) -> dict:
        return {
            "variant": "shifted_gaussian_combo",
            "terms": [[_as_complex_pairs([d])[0], a, b] for d, a, b in self.terms],
        }


@dataclass(frozen=True)
class CompactBump(Window):
    """Smooth bump exp(s*4 - s/(t(1-t))) on support (u, v), peak-normalized, 0 outside."""

    support: Tuple[float, float]
    smoothness: float = 1.0

    def __post_init__(self):
        u, v = self.support
        object.__setattr__(self, "support", (float(u), float(v)))
        if not (self.support[0] < self.support[1]):
            raise ValueError(f"support must be a nonempty interval, got {self.support}")
        if not (self.smoothness > 0):
            raise ValueError(f"smoothness must be positive, got {self.smoothness}")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u, v = self.support
        t = (x - u) / (v - u)
        inside = (t > 0.0) & (t < 1.0)
        out = np.zeros(np.shape(x), dtype=float)
        s = self.smoothness
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            tt = np.where(inside, t * (1.0 - t), 1.0)
            vals = np.exp(4.0 * s - s / tt)
        out = np.where(inside, vals, 0.0)
        return out.astype(complex)

    def _build_envelope(self) -> DecayEnvelope:
        u, v = self.support
        return DecayEnvelope(C=1.0, a=1.0, valid_radius=max(abs(u), abs(v)), support=(u, v))

    def to_dict(self) -> dict:
        d = {"variant": "compact_bump", "support": [self.support[0], self.support[1]]}
        if self.smoothness != 1.0:
            d["smoothness"] = self.smoothness
        return d


# ---------------------------------------------------------------------------
# spec-level operations


def eval_window(w: Window, x):
    """Evaluate a window; scalar in -> complex out, array in -> complex array out."""
    out = w.evaluate(x)
    if np.isscalar(x) or np.ndim(x) == 0:
        return complex(np.asarray(out).reshape(-1)[0])
    return out


def decay_envelope(w: Window) -> DecayEnvelope:
    return w.envelope()


_VARIANTS = {
    "gaussian": Gaussian,
    "hermite": Hermite,
    "poly_gaussian": PolyGaussian,
    "rational_gaussian": RationalGaussian,
    "exp_poly_gaussian": ExpPolyGaussian,
    "totally_positive_gaussian": TotallyPositiveGaussian,
    "shifted_gaussian_combo": ShiftedGaussianCombo,
    "compact_bump": CompactBump,
}


def window_from_dict(d: dict) -> Window:
    """Build a window from its JSON dict form (see to_dict of each variant)."""
    if "variant" not in d:
        raise ValueError("window dict needs a 'variant' field")
    variant = d["variant"]
    if variant not in _VARIANTS:
        raise ValueError(f"unknown window variant {variant!r}; known: {sorted(_VARIANTS)}")
    gamma = float(d.get("gamma", PI))
    if variant == "gaussian":
        return Gaussian(gamma=gamma)
    if variant == "hermite":
        return Hermite(n=int(d["n"]))
    if variant == "poly_gaussian":
        return PolyGaussian(coeffs=tuple(_from_pair(c) for c in d["coeffs"]), gamma=gamma)
    if variant == "rational_gaussian":
        return RationalGaussian(
            num_coeffs=tuple(_from_pair(c) for c in d["coeffs"]),
            den_coeffs=tuple(_from_pair(c) for c in d["den_coeffs"]),
            gamma=gamma,
        )
    if variant == "exp_poly_gaussian":
        return ExpPolyGaussian(
            terms=tuple((_from_pair(a), _from_pair(lam)) for a, lam in d["terms"]), gamma=gamma
        )
    if variant == "totally_positive_gaussian":
        return TotallyPositiveGaussian(deltas=tuple(float(x) for x in d["deltas"]), gamma=gamma)
    if variant == "shifted_gaussian_combo":
        return ShiftedGaussianCombo(
            terms=tuple((_from_pair(t[0]), float(t[1]), float(t[2])) for t in d["terms"])
        )
    if variant == "compact_bump":
        return CompactBump(
            support=(float(d["support"][0]), float(d["support"][1])),
            smoothness=float(d.get("smoothness", 1.0)),
        )
    raise AssertionError("unreachable")


def window_to_dict(w: Window) -> dict:
    return w.to_dict()
