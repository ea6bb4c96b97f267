"""Command-line pipeline: gen -> fit -> div -> lcp/contour/render, plus the
Monte Carlo validation and benchmark subcommands.

Subcommands compose through files only (DIVUQ1 containers, CSV, PPM).
Exit codes: 0 success, 1 usage error, 2 data/IO error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io as dio
from .contours import ContourSet, marching_squares
from .divergence import GaussianScalarField, propagate_divergence, stencil_distribution
from .gaussian import fit_gaussian, gradient_ensemble
from .grid import ScalarField2, UniformGrid2
from .lcp import lcp
from .mc import McConfig, error_metrics, mc_divergence, mc_histogram_1d, sample_divergence_1d
from .parallel import ParallelConfig, bench
from .render import load_lut, overlay_contours, render_colormap, write_ppm
from .synthetic import KINDS, generate_synthetic


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parallel_config(args) -> ParallelConfig | None:
    if args.threads is None or args.threads == 1:
        return None
    return ParallelConfig(threads=args.threads)


def _read_divergence(mu_path, sigma_path) -> GaussianScalarField:
    mu = dio.read_scalar(mu_path)
    sigma = dio.read_scalar(sigma_path)
    if mu.grid != sigma.grid:
        raise dio.DataError(f"{mu_path} and {sigma_path} are on different grids")
    return GaussianScalarField(mu.grid, mu.values, sigma.values)


def _cmd_gen(args) -> int:
    grid = UniformGrid2(args.nx, args.ny, args.dx, args.dy)
    ens = generate_synthetic(args.kind, grid, args.members, args.sigma, args.seed)
    dio.write_ensemble(ens, args.out)
    return 0


def _cmd_fit(args) -> int:
    model = fit_gaussian(dio.read_ensemble(args.in_path))
    dio.write_model(model, args.out_mu, args.out_sigma)
    return 0


def _cmd_div(args) -> int:
    model = dio.read_model(args.in_mu, args.in_sigma)
    div = propagate_divergence(model, _parallel_config(args))
    dio.write_scalar(ScalarField2(div.grid, div.mu), args.out_mu)
    dio.write_scalar(ScalarField2(div.grid, div.sigma), args.out_sigma)
    return 0


def _cmd_mc(args) -> int:
    model = dio.read_model(args.in_mu, args.in_sigma)
    est = mc_divergence(model, McConfig(args.samples, args.seed))
    dio.write_scalar(ScalarField2(est.grid, est.mean), args.out_mean)
    dio.write_scalar(ScalarField2(est.grid, est.std), args.out_std)
    if args.sse_against:
        analytic = _read_divergence(*args.sse_against)
        e_m, e_sigma, sse = error_metrics(est, analytic)
        rows = [
            ("e_m", dio.csv_float(e_m)),
            ("e_sigma", dio.csv_float(e_sigma)),
            ("sse", dio.csv_float(sse)),
        ]
        if args.metrics_out:
            dio.write_csv(args.metrics_out, "metric,value", rows)
        else:
            print("metric,value")
            for name, value in rows:
                print(f"{name},{value}")
    return 0


def _cmd_lcp(args) -> int:
    div = _read_divergence(args.in_mu, args.in_sigma)
    field = lcp(div, args.iso, _parallel_config(args))
    for out in args.out:
        if out.endswith(".ppm"):
            write_ppm(render_colormap(field, (0.0, 1.0)), out)
        else:
            nxc = field.grid.nx - 1
            rows = (
                (k % nxc, k // nxc, dio.csv_float(p))
                for k, p in enumerate(field.probabilities)
            )
            dio.write_csv(out, "cell_i,cell_j,probability", rows)
    return 0


def _cmd_contour(args) -> int:
    grid, members = dio.read_members(args.in_path)
    rows = []
    next_id = 0
    for m_idx, member in enumerate(members):
        contours = marching_squares(ScalarField2(grid, member.u), args.iso)
        for poly in contours.polylines:
            for x, y in poly:
                rows.append((m_idx, next_id, dio.csv_float(x), dio.csv_float(y)))
            next_id += 1
    dio.write_csv(args.out_csv, "member,polyline_id,x,y", rows)
    return 0


def read_contours_csv(path) -> ContourSet:
    """Load polylines written by the contour subcommand."""
    polylines: dict[int, list] = {}
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "member,polyline_id,x,y":
            raise dio.FormatError(f"{path}: unexpected contour CSV header {header!r}")
        for line in fh:
            _, pid, x, y = line.strip().split(",")
            polylines.setdefault(int(pid), []).append((float(x), float(y)))
    return ContourSet(tuple(np.array(p) for p in polylines.values()), math.nan)


def _cmd_render(args) -> int:
    fld = dio.read_scalar(args.in_path)
    lut = load_lut(args.lut) if args.lut else None
    raster = render_colormap(fld, (args.lo, args.hi), lut)
    if args.contours:
        color = tuple(int(c) for c in args.contour_color.split(","))
        if len(color) != 3 or any(c < 0 or c > 255 for c in color):
            raise UsageError("--contour-color must be r,g,b with components in 0..255")
        raster = overlay_contours(
            raster, read_contours_csv(args.contours), color, (fld.grid.dx, fld.grid.dy)
        )
    write_ppm(raster, args.out)
    return 0


def _cmd_gradmag(args) -> int:
    ens = gradient_ensemble(dio.read_ensemble(args.in_path))
    dio.write_ensemble(ens, args.out)
    return 0


def _cmd_validate_1d(args) -> int:
    neighbors = (
        (args.mu_uim, args.sigma_uim),
        (args.mu_uip, args.sigma_uip),
        (args.mu_vjm, args.sigma_vjm),
        (args.mu_vjp, args.sigma_vjp),
    )
    spacing = (args.dx, args.dy)
    mu, sigma = stencil_distribution(neighbors, spacing)
    config = McConfig(args.samples, args.seed)
    hist = mc_histogram_1d(neighbors, spacing, config, args.bins)
    samples = sample_divergence_1d(neighbors, spacing, config)
    e_m = abs(float(samples.mean()) - mu)
    e_sigma = abs(float(samples.std(ddof=1)) - sigma)

    print(f"analytic_mean={dio.csv_float(mu)}")
    print(f"analytic_std={dio.csv_float(sigma)}")
    print(f"e_m={dio.csv_float(e_m)}")
    print(f"e_sigma={dio.csv_float(e_sigma)}")

    centers = 0.5 * (hist.bin_edges[:-1] + hist.bin_edges[1:])
    density = hist.normalized_density()
    if sigma > 0:
        pdf = np.exp(-0.5 * ((centers - mu) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
    else:
        pdf = np.zeros_like(centers)
    rows = [("analytic_mean", "", dio.csv_float(mu)),
            ("analytic_std", "", dio.csv_float(sigma)),
            ("e_m", "", dio.csv_float(e_m)),
            ("e_sigma", "", dio.csv_float(e_sigma))]
    rows += [
        ("histogram", dio.csv_float(x), dio.csv_float(d))
        for x, d in zip(centers, density)
    ]
    rows += [("pdf", dio.csv_float(x), dio.csv_float(p)) for x, p in zip(centers, pdf)]
    if args.out_csv:
        dio.write_csv(args.out_csv, "record,x,value", rows)
    return 0


def _cmd_bench(args) -> int:
    ens = dio.read_ensemble(args.in_path)
    model = fit_gaussian(ens)
    analytic = propagate_divergence(model)
    runs = args.runs

    reports = []
    serial = bench("analytic_serial", runs, lambda: propagate_divergence(model))
    reports.append((serial, "", ""))
    for t in args.threads_list:
        cfg = ParallelConfig(threads=t)
        rep = bench(f"analytic_threads_{t}", runs, lambda: propagate_divergence(model, cfg))
        reports.append((rep, "", ""))
    for n in args.samples_list:
        cfg = McConfig(n, args.seed)
        rep = bench(f"mc_{n}", runs, lambda: mc_divergence(model, cfg))
        _, _, sse = error_metrics(mc_divergence(model, cfg), analytic)
        speedup = rep.mean_seconds / serial.mean_seconds
        reports.append((rep, dio.csv_float(sse), dio.csv_float(speedup)))

    rows = [
        (r.label, r.runs, dio.csv_float(r.mean_seconds), dio.csv_float(r.min_seconds),
         dio.csv_float(r.max_seconds), sse, speedup)
        for r, sse, speedup in reports
    ]
    header = "label,runs,mean_s,min_s,max_s,sse,speedup_vs_analytic_serial"
    if args.out_csv:
        dio.write_csv(args.out_csv, header, rows)
    print(header)
    for row in rows:
        print(",".join(str(c) for c in row))
    return 0


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> _Parser:
    p = _Parser(prog="divuq", description=__doc__)
    p.add_argument("--threads", type=int, default=None, help="worker threads for parallel kernels")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a synthetic ensemble")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--nx", type=int, required=True)
    g.add_argument("--ny", type=int, required=True)
    g.add_argument("--dx", type=float, default=1.0)
    g.add_argument("--dy", type=float, default=1.0)
    g.add_argument("--members", type=int, required=True)
    g.add_argument("--sigma", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    f = sub.add_parser("fit", help="fit the per-vertex Gaussian model")
    f.add_argument("--in", dest="in_path", required=True)
    f.add_argument("--out-mu", required=True)
    f.add_argument("--out-sigma", required=True)
    f.set_defaults(func=_cmd_fit)

    d = sub.add_parser("div", help="closed-form divergence distribution")
    d.add_argument("--in-mu", required=True)
    d.add_argument("--in-sigma", required=True)
    d.add_argument("--out-mu", required=True)
    d.add_argument("--out-sigma", required=True)
    d.set_defaults(func=_cmd_div)

    m = sub.add_parser("mc", help="Monte Carlo divergence estimate")
    m.add_argument("--in-mu", required=True)
    m.add_argument("--in-sigma", required=True)
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out-mean", required=True)
    m.add_argument("--out-std", required=True)
    m.add_argument("--sse-against", nargs=2, metavar=("MU", "SIGMA"))
    m.add_argument("--metrics-out")
    m.set_defaults(func=_cmd_mc)

    l = sub.add_parser("lcp", help="level-crossing probability per cell")
    l.add_argument("--in-mu", required=True)
    l.add_argument("--in-sigma", required=True)
    l.add_argument("--iso", type=float, required=True)
    l.add_argument("--out", action="append", required=True,
                   help=".csv and/or .ppm output (repeatable)")
    l.set_defaults(func=_cmd_lcp)

    c = sub.add_parser("contour", help="marching-squares polylines per member")
    c.add_argument("--in", dest="in_path", required=True)
    c.add_argument("--iso", type=float, required=True)
    c.add_argument("--out-csv", required=True)
    c.set_defaults(func=_cmd_contour)

    r = sub.add_parser("render", help="colormapped PPM of a scalar field")
    r.add_argument("--in", dest="in_path", required=True)
    r.add_argument("--lo", type=float, required=True)
    r.add_argument("--hi", type=float, required=True)
    r.add_argument("--lut", help="optional lookup table file (r g b lines)")
    r.add_argument("--out", required=True)
    r.add_argument("--contours", help="contour CSV to overlay")
    r.add_argument("--contour-color", default="0,255,255")
    r.set_defaults(func=_cmd_render)

    gm = sub.add_parser("gradmag", help="per-member gradient of velocity magnitude")
    gm.add_argument("--in", dest="in_path", required=True)
    gm.add_argument("--out", required=True)
    gm.set_defaults(func=_cmd_gradmag)

    v = sub.add_parser("validate-1d", help="single-vertex analytic vs MC validation")
    for name in ("uim", "uip", "vjm", "vjp"):
        v.add_argument(f"--mu-{name}", type=float, required=True)
        v.add_argument(f"--sigma-{name}", type=float, required=True)
    v.add_argument("--dx", type=float, default=1.0)
    v.add_argument("--dy", type=float, default=1.0)
    v.add_argument("--samples", type=int, required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--bins", type=int, default=50)
    v.add_argument("--out-csv")
    v.set_defaults(func=_cmd_validate_1d)

    b = sub.add_parser("bench", help="analytic vs MC timing and SSE table")
    b.add_argument("--in", dest="in_path", required=True)
    b.add_argument("--samples-list", type=_int_list, default=[500])
    b.add_argument("--threads-list", type=_int_list, default=[])
    b.add_argument("--runs", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out-csv")
    b.set_defaults(func=_cmd_bench)

    return p


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return 0 if exc.code in (0, None) else 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
