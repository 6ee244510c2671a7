"""Command-line front end: ``gen``, ``scan``, ``flux`` and ``verify``.

All subcommands read the same JSON config (``--config``); without one the
built-in defaults are used.  Tabular output is CSV with a version comment
line followed by a fixed header.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import averaging as av
from . import curvature as cv
from .config import ConfigError, RunConfig, read_config
from .dipoles import DipoleFileError, dumps, t_symmetry_residual

CSV_VERSION = "chirogeom-observables v1"
FLUX_CSV_VERSION = "chirogeom-flux v1"

SCAN_COLUMNS = (
    ["k", "tau", "sigma"]
    + [f"omega_{part}_{axis}" for part in ("exc", "ion", "mix") for axis in "xyz"]
    + ["orient_z", "cos_beta", "W", "W_dichroic", "flux"]
)

FLUX_COLUMNS = [
    "k", "tau", "sigma", "flux", "flux_dichroic", "W_dichroic",
    "flux_oriented", "flux_dichroic_oriented", "W_dichroic_oriented",
]


def resolve_e_ref(cfg: RunConfig, dset) -> np.ndarray:
    if isinstance(cfg.e_ref, str):
        return av.e_along_p12_plus(dset) if cfg.e_ref == "p12_plus" else av.e_along_d1_cross_d2(dset)
    return cfg.e_ref


def observable_row(cfg: RunConfig, dset, index: int, tau: float, sigma: int) -> list[float]:
    """One ObservableRecord: curvature at the reference orientation plus averages."""
    pulses = cfg.pulses_at(index, tau, sigma)
    mc = cv.curvature(dset, pulses, cfg.orientation)
    obs = av.orient_avg(dset, pulses, resolve_e_ref(cfg, dset))
    flux = cv.flux_sphere(dset, pulses, cfg.flux_grid, n_alpha=cfg.flux_alpha)
    return (
        [cfg.k[index], tau, sigma]
        + list(mc.exc.omega) + list(mc.ion.omega) + list(mc.mix.omega)
        + [obs.orient_z, obs.cos_beta, av.avg_yield(dset, pulses), av.avg_dichroic_yield(dset, pulses), flux]
    )


def _oriented_weight(n: np.ndarray) -> np.ndarray:
    # ensemble with spin axes preferentially along +z of the molecule
    return 1.0 + n[..., 2]


def flux_row(cfg: RunConfig, dset, index: int, tau: float, sigma: int) -> list[float]:
    pulses = cfg.pulses_at(index, tau, sigma)
    flux = cv.flux_sphere(dset, pulses, cfg.flux_grid, n_alpha=cfg.flux_alpha)
    flux_w = cv.flux_sphere(dset, pulses, cfg.flux_grid, n_alpha=cfg.flux_alpha, weight=_oriented_weight)
    return [
        cfg.k[index], tau, sigma,
        flux, sigma * flux / (4 * np.pi), av.oracle_dichroic_yield(dset, pulses, cfg.so3_grid),
        flux_w, sigma * flux_w / (4 * np.pi),
        av.oracle_dichroic_yield(dset, pulses, cfg.so3_grid, weight=_oriented_weight),
    ]


def _table(cfg: RunConfig, row_fn, threads: int) -> list[list[float]]:
    sets = [cfg.dipoles_at(i) for i in range(len(cfg.k))]
    jobs = [(i, t, s) for i in range(len(cfg.k)) for t in cfg.tau for s in cfg.sigma]
    work = lambda job: row_fn(cfg, sets[job[0]], *job)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, jobs))
    return [work(j) for j in jobs]


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def render_csv(version: str, columns: list[str], rows: list[list[float]]) -> str:
    buf = io.StringIO()
    buf.write(f"# {version}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_gen(cfg: RunConfig, out: str | None) -> int:
    if cfg.synthetic is None:
        raise ConfigError("dipoles.synthetic: gen needs a synthetic dipole spec")
    dset = cfg.synthetic.build(cfg.gen_k)
    text = dumps(dset) + "\n"
    _emit(text, out)
    print(f"t_symmetry_residual {t_symmetry_residual(dset):.3e}", file=sys.stderr)
    return 0


def cmd_scan(cfg: RunConfig, out: str | None, threads: int = 1) -> int:
    rows = _table(cfg, observable_row, threads)
    _emit(render_csv(CSV_VERSION, SCAN_COLUMNS, rows), out)
    return 0


def cmd_flux(cfg: RunConfig, out: str | None, threads: int = 1) -> int:
    rows = _table(cfg, flux_row, threads)
    _emit(render_csv(FLUX_CSV_VERSION, FLUX_COLUMNS, rows), out)
    return 0


def cmd_verify(cfg_path: str | None, tolerance: float = 1.0, out: str | None = None) -> int:
    from .checks import CheckResult, run_checks

    t0 = time.perf_counter()
    try:
        cfg = read_config(cfg_path)
        results = run_checks(cfg, tolerance)
    except DipoleFileError as exc:
        results = [CheckResult("dipole_file_load", 0.0, float("inf"), 0.0, str(exc))]
    lines = [r.line() for r in results]
    failed = [r for r in results if not r.passed]
    lines.append(
        f"{len(results) - len(failed)}/{len(results)} checks passed "
        f"in {time.perf_counter() - t0:.1f} s (tolerance scale {tolerance:g})"
    )
    _emit("\n".join(lines) + "\n", out)
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirogeom",
        description="Geometric curvature and enantio-sensitive orientation for two-photon ionization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("gen", "write a synthetic dipole file"),
        ("scan", "tabulate observables over the (k, tau, sigma) grid"),
        ("flux", "tabulate curvature fluxes against dichroic yields"),
        ("verify", "run the numerical check suite"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", help="JSON config file (defaults are used when omitted)")
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--tolerance", type=float, default=1.0,
                       help="multiplier applied to every check tolerance (verify)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for scans")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    if not args.tolerance > 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return 2
    try:
        if args.command == "verify":
            return cmd_verify(args.config, args.tolerance, args.out)
        cfg = read_config(args.config)
        if args.command == "gen":
            return cmd_gen(cfg, args.out)
        if args.command == "scan":
            return cmd_scan(cfg, args.out, args.threads)
        return cmd_flux(cfg, args.out, args.threads)
    except (ConfigError, DipoleFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
