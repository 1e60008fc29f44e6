"""Command-line front end: analysis reports, density scans, and sweep exports.

Subcommands: analyze, scan, theta, reconstruct, oracle.  Exit codes: 0 on
success, 2 on configuration errors, 3 on numerical failures (a partial report
is still emitted when one is available).  JSON reports validate against
schemas/report.schema.json; pass --no-timing to zero the timing block and make
the bytes reproducible across runs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import List, Optional, Tuple

import numpy as np

from . import __version__
from .core import (
    CompactBump,
    Gaussian,
    Hermite,
    RationalLattice,
    Window,
    make_lattice,
    window_from_dict,
    window_to_dict,
)
from .oracle import band_limited, residual_sweep, unit_narrow_gaussian
from .theta import ThetaWitness, completeness_certificate, theta
from .zak import TruncationError
from .zibulski import (
    ZZField,
    frame_bounds,
    grid_scan,
    reconstruct,
    relative_error,
    sample_signal,
    verdict,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    pass


def _load_window(spec: str) -> Window:
    """Inline preset (gaussian | hermite:N | bump) or a path to a window JSON file."""
    if spec == "gaussian":
        return Gaussian()
    if spec.startswith("hermite:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad hermite preset {spec!r}; expected hermite:N")
        return Hermite(n)
    if spec == "bump":
        return CompactBump((0.0, 1.0))
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read window file {spec!r}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"window file {spec!r} is not valid JSON: {e}")
    try:
        return window_from_dict(data)
    except (ValueError, TypeError, KeyError) as e:
        raise ConfigError(f"bad window spec in {spec!r}: {e}")


def _make_lattice(args) -> RationalLattice:
    try:
        return make_lattice(args.alpha, args.p, args.q)
    except ValueError as e:
        raise ConfigError(str(e))


def _parse_grid(text: str) -> Tuple[int, int]:
    try:
        nx, _, nxi = text.partition("x")
        return int(nx), int(nxi or nx)
    except ValueError:
        raise ConfigError(f"bad --grid {text!r}; expected NxM")


def _parse_sizes(text: str) -> List[int]:
    if not text:
        return []
    try:
        sizes = [int(s) for s in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad size list {text!r}; expected comma-separated integers")
    if any(s < 0 for s in sizes):
        raise ConfigError(f"sizes must be >= 0, got {sizes}")
    return sizes


def _limit_threads(n: Optional[int]) -> None:
    if n is None:
        return
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        print("note: --threads needs threadpoolctl; flag ignored", file=sys.stderr)
        return
    threadpool_limits(limits=n)


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field_summary(field: ZZField) -> dict:
    return field.summary()


def _tiered_verdicts(cert, grid_verdict) -> dict:
    if cert is not None and cert.status == "witness":
        complete = {
            "value": "yes",
            "tier": "certified",
            "detail": "nonzero Fourier coefficient witness exceeds its error bound",
        }
    elif cert is not None and cert.status == "incomplete_by_density":
        # rank < p at every point; reported as numerical tier because the
        # certified tier is reserved for witness-backed completeness
        complete = {"value": "no", "tier": "numerical", "detail": cert.note}
    else:
        gv = grid_verdict.complete
        if gv.startswith("yes"):
            complete = {
                "value": "yes",
                "tier": "numerical",
                "detail": "full rank on every sampled grid point",
            }
        elif gv.startswith("no"):
            complete = {
                "value": "no",
                "tier": "numerical",
                "detail": "rank-deficient on a stable fraction of the grid",
            }
        else:
            complete = {"value": "unknown", "tier": "inconclusive", "detail": gv}
    fv = grid_verdict.frame
    if fv.startswith("yes"):
        frame = {
            "value": "yes",
            "tier": "numerical",
            "detail": "lower frame-bound estimate stable under grid refinement",
        }
    elif fv.startswith("no"):
        frame = {
            "value": "no",
            "tier": "numerical",
            "detail": "lower frame-bound estimate decays under grid refinement",
        }
    else:
        frame = {"value": "unknown", "tier": "inconclusive", "detail": fv}
    return {"complete": complete, "frame": frame}


def cmd_analyze(args) -> int:
    w = _load_window(args.window)
    lat = _make_lattice(args)
    nx, nxi = _parse_grid(args.grid)
    if nx < 2 or nxi < 2:
        raise ConfigError(f"grid must be at least 2x2, got {nx}x{nxi}")
    sizes = _parse_sizes(args.oracle_sizes)

    report: dict = {
        "tool": {"name": "zakgabor", "version": __version__},
        "window": window_to_dict(w),
        "lattice": {
            "alpha": lat.alpha,
            "p": lat.p,
            "q": lat.q,
            "beta": lat.beta,
            "density": lat.density,
        },
        "parameters": {
            "grid": [nx, nxi],
            "eps": args.eps,
            "tau_rank": args.tau_rank,
            "tau": args.tau,
            "x_samples": args.x_samples,
            "n_range": [args.n_min, args.n_max],
            "oracle_sizes": sizes,
        },
    }
    timing: dict = {}
    code = EXIT_OK
    try:
        t0 = time.perf_counter()
        coarse = grid_scan(w, lat, nx, nxi, eps=args.eps, tau_rank=args.tau_rank)
        fine = grid_scan(w, lat, 2 * nx, 2 * nxi, eps=args.eps, tau_rank=args.tau_rank)
        timing["grid_scan"] = time.perf_counter() - t0
        a_est, b_est = frame_bounds(fine)
        gv = verdict([coarse, fine])
        report["rank_scan"] = {
            "coarse": _field_summary(coarse),
            "fine": _field_summary(fine),
            "truncation_bound": max(coarse.truncation_bound, fine.truncation_bound),
        }
        report["frame_bounds"] = {"A_est": a_est, "B_est": b_est}
        report["grid_verdict_evidence"] = gv.evidence
        if args.csv_dir:
            import os

            os.makedirs(args.csv_dir, exist_ok=True)
            coarse.write_csv(os.path.join(args.csv_dir, "field_coarse.csv"))
            fine.write_csv(os.path.join(args.csv_dir, "field_fine.csv"))

        t0 = time.perf_counter()
        cert = completeness_certificate(
            w,
            lat,
            n_range=(args.n_min, args.n_max),
            x_samples=args.x_samples,
            tau=args.tau,
            eps=args.eps,
        )
        timing["certificate"] = time.perf_counter() - t0
        report["certificate"] = {
            "status": cert.status,
            "witness": cert.witness.to_json_dict() if cert.witness else None,
            "max_abs_seen": cert.max_abs_seen,
            "n_evaluations": cert.n_evaluations,
            "note": cert.note,
        }

        if sizes:
            t0 = time.perf_counter()
            residuals = residual_sweep(unit_narrow_gaussian, w, lat, sizes)
            timing["oracle"] = time.perf_counter() - t0
            report["oracle"] = {
                "signal": "unit_narrow_gaussian",
                "sizes": [s for s, _ in residuals],
                "residuals": [r for _, r in residuals],
            }
        else:
            report["oracle"] = None

        report["verdicts"] = _tiered_verdicts(cert, gv)
    except TruncationError as e:
        report["error"] = {"kind": "truncation", "message": str(e)}
        code = EXIT_NUMERICAL
    except np.linalg.LinAlgError as e:
        report["error"] = {"kind": "linear_algebra", "message": str(e)}
        code = EXIT_NUMERICAL

    report["timing_seconds"] = (
        {k: 0.0 for k in timing} if args.no_timing else {k: round(v, 6) for k, v in timing.items()}
    )
    _emit(report, args.out)
    return code


def cmd_scan(args) -> int:
    w = _load_window(args.window)
    pairs = []
    for tok in args.lattices.split(","):
        try:
            ps, qs = tok.split(":")
            pairs.append((int(ps), int(qs)))
        except ValueError:
            raise ConfigError(f"bad lattice token {tok!r}; expected p:q")
    nx, nxi = _parse_grid(args.grid)
    rows = []
    code = EXIT_OK
    for p, q in pairs:
        try:
            lat = make_lattice(args.alpha, p, q)
            field = grid_scan(w, lat, nx, nxi, eps=args.eps, tau_rank=args.tau_rank)
            a_est, _ = frame_bounds(field)
            cert = completeness_certificate(
                w,
                lat,
                n_range=(args.n_min, args.n_max),
                x_samples=args.x_samples,
                tau=args.tau,
                eps=args.eps,
            )
            rows.append(
                {
                    "p": p,
                    "q": q,
                    "density": p / q,
                    "deficient_fraction": field.deficient_fraction,
                    "A_est": a_est,
                    "witness_found": cert.status == "witness",
                    "status": cert.status,
                    "note": cert.note,
                }
            )
        except (ValueError, TruncationError, np.linalg.LinAlgError) as e:
            rows.append(
                {
                    "p": p,
                    "q": q,
                    "density": p / q if q else math.nan,
                    "deficient_fraction": math.nan,
                    "A_est": math.nan,
                    "witness_found": False,
                    "status": "error",
                    "note": str(e),
                }
            )
            code = EXIT_NUMERICAL
    lines = ["p,q,density,deficient_fraction,A_est,witness_found,status,note"]
    for r in rows:
        note = str(r["note"]).replace(",", ";").replace("\n", " ")
        lines.append(
            f"{r['p']},{r['q']},{r['density']:.17g},{r['deficient_fraction']:.17g},"
            f"{r['A_est']:.17g},{str(r['witness_found']).lower()},{r['status']},{note}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def cmd_theta(args) -> int:
    w = _load_window(args.window)
    lat = _make_lattice(args)
    if args.certificate:
        cert = completeness_certificate(
            w,
            lat,
            n_range=(args.n_min, args.n_max),
            x_samples=args.x_samples,
            tau=args.tau,
            eps=args.eps,
        )
        _emit(
            {
                "status": cert.status,
                "witness": cert.witness.to_json_dict() if cert.witness else None,
                "max_abs_seen": cert.max_abs_seen,
                "n_evaluations": cert.n_evaluations,
                "note": cert.note,
            },
            args.out,
        )
        return EXIT_OK
    if args.cols is None or args.x is None or args.N is None:
        raise ConfigError("theta needs --cols, --x, and --N (or --certificate)")
    try:
        cols = tuple(int(c) for c in args.cols.split(","))
    except ValueError:
        raise ConfigError(f"bad --cols {args.cols!r}; expected comma-separated integers")
    try:
        value, bound = theta(w, lat, cols, args.x, args.N, eps=args.eps)
    except ValueError as e:
        raise ConfigError(str(e))
    except TruncationError as e:
        _emit({"error": {"kind": "truncation", "message": str(e)}}, args.out)
        return EXIT_NUMERICAL
    witness = ThetaWitness(columns=cols, x=args.x, N=args.N, value=value, error_bound=bound)
    _emit(witness.to_json_dict(), args.out)
    return EXIT_OK


_SIGNALS = ("window", "narrow_gaussian", "band_limited")


def _signal_func(name: str, w: Window, seed: int):
    if name == "window":
        return lambda ts: np.asarray(w.evaluate(ts))
    if name == "narrow_gaussian":
        return unit_narrow_gaussian
    if name == "band_limited":
        return band_limited(seed=seed)
    raise ConfigError(f"unknown signal {name!r}; choose from {_SIGNALS}")


def cmd_reconstruct(args) -> int:
    w = _load_window(args.window)
    lat = _make_lattice(args)
    func = _signal_func(args.signal, w, args.seed)
    f = sample_signal(func, lat, args.t_span, cells_per_step=args.cells_per_step)
    t0 = time.perf_counter()
    try:
        result = reconstruct(f, w, lat, eps=args.eps, pinv_tol=args.pinv_tol)
    except (ValueError, TruncationError) as e:
        _emit({"error": {"kind": "reconstruction", "message": str(e)}}, args.out)
        return EXIT_NUMERICAL
    elapsed = 0.0 if args.no_timing else round(time.perf_counter() - t0, 6)
    _emit(
        {
            "tool": {"name": "zakgabor", "version": __version__},
            "signal": args.signal,
            "samples": len(f.values),
            "dt": f.dt,
            "relative_error": relative_error(f, result.signal),
            "unstable": result.unstable,
            "cutoff_fraction": result.cutoff_fraction,
            "k_range": result.k_range,
            "l_range": result.l_range,
            "n_xi": result.n_xi,
            "pinv_tol": args.pinv_tol,
            "timing_seconds": elapsed,
        },
        args.out,
    )
    return EXIT_OK


def cmd_oracle(args) -> int:
    w = _load_window(args.window)
    lat = _make_lattice(args)
    sizes = _parse_sizes(args.sizes)
    if not sizes:
        raise ConfigError("oracle needs a nonempty --sizes list")
    func = _signal_func(args.signal, w, args.seed)
    ridge = args.ridge
    rows = residual_sweep(func, w, lat, sizes, ridge=ridge)
    lines = ["size,residual"]
    for s, r in rows:
        lines.append(f"{s},{r:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_common(sp, lattice: bool = True) -> None:
    sp.add_argument("--window", required=True, help="preset (gaussian | hermite:N | bump) or window JSON path")
    if lattice:
        sp.add_argument("--alpha", type=float, required=True)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--eps", type=float, default=1e-12, help="evaluation error budget")
    sp.add_argument("--out", default=None, help="output path (default: stdout)")
    sp.add_argument("--no-timing", action="store_true", help="zero timing fields for byte-reproducible output")
    sp.add_argument("--threads", type=int, default=None, help="cap BLAS threads (needs threadpoolctl)")


def _add_certificate_flags(sp) -> None:
    sp.add_argument("--tau", type=float, default=1e-6, help="witness acceptance threshold")
    sp.add_argument("--x-samples", type=int, default=64)
    sp.add_argument("--n-min", type=int, default=-8)
    sp.add_argument("--n-max", type=int, default=8)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zakgabor",
        description="Completeness and frame diagnostics for Gabor systems on rational lattices",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="full report: rank scan, certificate, oracle, verdicts")
    _add_common(sp)
    sp.add_argument("--grid", default="64x64", help="coarse grid NxM; the fine pass doubles it")
    sp.add_argument("--tau-rank", type=float, default=1e-8)
    _add_certificate_flags(sp)
    sp.add_argument("--oracle-sizes", default="2,4,8", help="section sizes, empty to skip")
    sp.add_argument("--csv-dir", default=None, help="write field CSVs into this directory")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("scan", help="verdict row per lattice, CSV output")
    _add_common(sp, lattice=False)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--lattices", required=True, help="comma-separated p:q pairs")
    sp.add_argument("--grid", default="64x64")
    sp.add_argument("--tau-rank", type=float, default=1e-8)
    _add_certificate_flags(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("theta", help="single coefficient value or full certificate search")
    _add_common(sp)
    sp.add_argument("--cols", default=None, help="comma-separated column indices (p of them)")
    sp.add_argument("--x", type=float, default=None)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--certificate", action="store_true", help="run the witness search instead")
    _add_certificate_flags(sp)
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("reconstruct", help="round-trip a signal through the frame operator")
    _add_common(sp)
    sp.add_argument("--signal", default="window", choices=_SIGNALS)
    sp.add_argument("--t-span", type=float, default=8.0)
    sp.add_argument("--cells-per-step", type=int, default=64)
    sp.add_argument("--pinv-tol", type=float, default=1e-6)
    sp.add_argument("--seed", type=int, default=12345)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("oracle", help="least-squares residual sweep, CSV output")
    _add_common(sp)
    sp.add_argument("--sizes", default="2,4,8")
    sp.add_argument("--signal", default="narrow_gaussian", choices=_SIGNALS)
    sp.add_argument("--ridge", type=float, default=None, help="Gram regularization; 0 for cutoff pseudo-inverse")
    sp.add_argument("--seed", type=int, default=12345)
    sp.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _limit_threads(args.threads)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
