"""Command-line interface.

Human-readable summaries go to stdout; machine-readable artifacts are written
only via --out, so stdout stays stable for scripting.  Exit codes: 0 success,
1 numerical failure, 2 usage error.  The worker-pool size for scans is taken
from the environment variable NOVWAVE_WORKERS (default 1).
"""

import argparse
import os
import sys

import numpy as np

from . import __version__
from .bloch import (constant_state_eigenvalue, spectrum_slice, spectrum_sweep,
                    sweep_to_csv)
from .errors import (BracketingError, ConsistencyError, ConvergenceError,
                     DegenerateCubicError, DomainError)
from .modulation import (classify, discriminant_leading_terms, result_to_json,
                         reduced_matrix_asymptotic, cubic_coefficients,
                         discriminant)
from .sweep import (ScanConfig, export_csv, export_json, load_config,
                    run_scan, threshold_locate)
from .waveform import (WaveParams, equilibrium, profile_residual,
                       quadrature_check, solve_profile)


def _add_shared(p, xi_default=0.01):
    p.add_argument("--b", type=float, default=1.0, help="quadrature constant (default 1)")
    p.add_argument("--k", type=float, default=1.0, help="wavenumber (default 1)")
    p.add_argument("--a", type=float, default=0.0, help="amplitude (default 0)")
    p.add_argument("--xi", type=float, default=xi_default,
                   help=f"Bloch frequency (default {xi_default})")
    p.add_argument("--N", type=int, default=32, help="truncation (default 32)")
    p.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    p.add_argument("--out", help="write machine-readable output to this path")


def _build_parser():
    parser = argparse.ArgumentParser(prog="novwave",
                                     description="Periodic traveling waves of "
                                     "the Novikov equation and their stability")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="solve a periodic profile")
    _add_shared(p)

    p = sub.add_parser("spectrum", help="Bloch spectrum slice(s)")
    _add_shared(p)
    p.add_argument("--xi-grid", help="sweep as 'min,max,count' (overrides --xi)")

    p = sub.add_parser("classify", help="modulational stability verdict")
    _add_shared(p, xi_default=0.002)

    p = sub.add_parser("threshold", help="locate the classifier's stability threshold in k")
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.02)
    p.add_argument("--xi-factor", type=float, default=0.1,
                   help="xi = factor * a (default 0.1)")
    p.add_argument("--bracket", nargs=2, type=float, default=[1.5, 2.0])
    p.add_argument("--out")

    p = sub.add_parser("scan", help="stability map over a k-grid")
    p.add_argument("--config", help="JSON scan config (see README)")
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.02)
    p.add_argument("--k-min", type=float, default=1.0)
    p.add_argument("--k-max", type=float, default=2.2)
    p.add_argument("--k-count", type=int, default=13)
    p.add_argument("--xi-factor", type=float, default=0.1)
    p.add_argument("--N", type=int, default=32)
    p.add_argument("--mode", choices=("asymptotic", "numeric", "both"),
                   default="both")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true",
                   help="write JSON instead of CSV")

    sub.add_parser("verify", help="run the built-in identity suite")
    return parser


def _cmd_profile(args):
    params = WaveParams(k=args.k, b=args.b, a=args.a)
    p = solve_profile(params, N=args.N, tol=args.tol)
    res_f, res_ode = profile_residual(p)
    print(f"profile k={args.k} b={args.b} a={args.a}: N={p.truncation}")
    print(f"  speed c       = {p.c:.12g}")
    print(f"  w coefficients[0:3] = {p.coeffs[0]:.12g}, {p.coeffs[1]:.12g}, {p.coeffs[2]:.12g}")
    print(f"  residuals: F = {res_f:.3e}, ODE = {res_ode:.3e}, quadrature = {quadrature_check(p):.3e}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(p.to_json() + "\n")
        print(f"  wrote {args.out}")
    return 0


def _cmd_spectrum(args):
    params = WaveParams(k=args.k, b=args.b, a=args.a)
    p = solve_profile(params, N=args.N, tol=args.tol)
    if args.xi_grid:
        lo, hi, count = args.xi_grid.split(",")
        grid_vals = list(np.linspace(float(lo), float(hi), int(count)))
    else:
        grid_vals = [args.xi]
    workers = int(os.environ.get("NOVWAVE_WORKERS", "1"))
    slices = spectrum_sweep(p, grid_vals, N=args.N, workers=workers)
    for s in slices:
        near = s.origin_nearest(3)
        worst = np.max(np.abs(s.eigenvalues.real))
        print(f"xi={s.xi:g}: origin-nearest eigenvalues "
              + ", ".join(f"{lam.real:+.3e}{lam.imag:+.6f}i" for lam in near)
              + f"; max|Re| over slice = {worst:.3e}")
    if args.out:
        sweep_to_csv(slices, args.out)
        print(f"wrote {args.out}")
    return 0


def _cmd_classify(args):
    params = WaveParams(k=args.k, b=args.b, a=args.a)
    r = classify(params, args.xi)
    print(f"classify k={args.k} b={args.b} a={args.a} xi={args.xi}:")
    print(f"  verdict     = {r.verdict}")
    print(f"  discriminant = {r.delta:.6e}")
    print(f"  growth rate  = {r.growth_rate:.6e}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(result_to_json(r) + "\n")
        print(f"  wrote {args.out}")
    return 0


def _cmd_threshold(args):
    k_star = threshold_locate(args.b, args.a, ("proportional", args.xi_factor),
                              tuple(args.bracket))
    print(f"threshold k* = {k_star:.6f} (bracket {args.bracket}, a={args.a}, "
          f"xi={args.xi_factor}*a)")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(f'{{"k_star": {k_star:.17g}}}\n')
        print(f"wrote {args.out}")
    return 0


def _cmd_scan(args):
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = ScanConfig(b=args.b, a_list=(args.a,),
                         k_grid=(args.k_min, args.k_max, args.k_count),
                         xi_rule=("proportional", args.xi_factor),
                         N=args.N, mode=args.mode, out=args.out)
    workers = int(os.environ.get("NOVWAVE_WORKERS", "1"))
    result = run_scan(cfg, workers=workers)
    n_unstable = sum(1 for r in result if r.verdict == "Unstable")
    n_error = sum(1 for r in result if r.error)
    print(f"scan: {len(result)} points, {n_unstable} Unstable, {n_error} errors")
    for r in result:
        mark = r.verdict if not r.error else f"Error({r.error})"
        print(f"  k={r.k:.4f} a={r.a:g} xi={r.xi:g}: {mark}")
    out = args.out or cfg.out
    if out:
        (export_json if getattr(args, "json", False) else export_csv)(result, out)
        print(f"wrote {out}")
    return 0


def _cmd_verify(_args):
    """Identity suite: closed forms against the numerical pipelines."""
    checks = []

    def check(name, ok, detail=""):
        checks.append(ok)
        print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))

    print("verify: equilibrium closed forms")
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(25):
        b = rng.uniform(0.5, 2.0)
        k = rng.uniform(0.5, 3.0)
        eq = equilibrium(b, k)
        r1 = abs((eq.c0 - eq.w0**2) ** 1.5 * eq.w0 - b) / b
        r2 = abs(eq.c0 / eq.w0**2 - (k * k + 4.0) / (k * k + 1.0))
        worst = max(worst, r1, r2)
    check("quartic relation and speed ratio", worst < 1e-12, f"worst rel err {worst:.2e}")

    print("verify: constant-state dispersion exactness (a = 0)")
    worst = 0.0
    for k in (1.0, 2.0):
        p0 = solve_profile(WaveParams(k=k, b=1.0, a=0.0))
        for xi in (0.0, 0.1, 0.49):
            s = spectrum_slice(p0, xi, 32)
            exact = np.sort([constant_state_eigenvalue(n, xi, 1.0, k).imag
                             for n in range(-32, 33)])
            got = np.sort(s.eigenvalues.imag)
            scale = np.max(np.abs(exact))
            worst = max(worst, np.max(np.abs(got - exact)) / scale,
                        np.max(np.abs(s.eigenvalues.real)) / scale)
    check("Hill eigenvalues = i*Omega at a=0", worst < 1e-12, f"worst rel err {worst:.2e}")

    print("verify: discriminant leading terms vs pipeline")
    ok_all, detail = True, []
    for (b, k) in ((1.0, 1.0), (1.0, 2.0)):
        lt = discriminant_leading_terms(b, k)
        # product-form evaluation of the a=0 discriminant at moderate xi
        xi = 0.05
        M = reduced_matrix_asymptotic(WaveParams(k=k, b=b, a=0.0), xi)
        q = cubic_coefficients(M)
        pipeline = discriminant(*q)
        sigma1 = float((M.S[0, 0] / (1j * xi)).real)
        sigma3 = float((M.S[2, 2] / (1j * xi)).real)
        cc = float(M.S[1, 0].real) / xi**2
        product = 4.0 * cc**2 * xi**2 * ((sigma1 - sigma3) ** 2 - cc**2 * xi**2) ** 2
        rel = abs(pipeline - product) / abs(product)
        ok_all &= rel < 1e-8
        detail.append(f"assembly {rel:.1e}")
        lead = 4.0 * cc**2 * (sigma1 - sigma3) ** 4
        rel = abs(lead - lt.delta0_coefficient) / lt.delta0_coefficient
        ok_all &= rel < 1e-12
        detail.append(f"xi^2 coeff {rel:.1e}")
        # finite-difference fit of the a^2 coefficient
        a, xi0 = 1e-3, 1e-3
        da = classify(WaveParams(k=k, b=b, a=a), xi0).delta
        d0 = classify(WaveParams(k=k, b=b, a=0.0), xi0).delta
        rel = abs((da - d0) / a**2 - lt.lam) / abs(lt.lam)
        ok_all &= rel < 1e-2
        detail.append(f"lam fit {rel:.1e}")
    check("Delta(0,xi) and lam closed forms", ok_all, ", ".join(detail))

    print("verify: triple kernel at a = 0, xi = 0")
    p0 = solve_profile(WaveParams(k=1.0, b=1.0, a=0.0))
    s = spectrum_slice(p0, 0.0, 32)
    n_zero = int(np.sum(np.abs(s.eigenvalues) < 1e-10))
    check("three-dimensional kernel", n_zero == 3, f"{n_zero} eigenvalues below 1e-10")

    if all(checks):
        print("verify: all checks passed")
        return 0
    print("verify: FAILURES present")
    return 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "profile": _cmd_profile,
        "spectrum": _cmd_spectrum,
        "classify": _cmd_classify,
        "threshold": _cmd_threshold,
        "scan": _cmd_scan,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, ConvergenceError, BracketingError,
            ConsistencyError, DegenerateCubicError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
