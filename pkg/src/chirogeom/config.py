"""JSON run configuration: parsing, defaults and validation.

Validation errors name the offending field as a dotted path, and JSON
syntax errors report line and column.
"""

from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass

import numpy as np

from .core_math import EulerAngles, SO3Grid, SphereGrid, so3_quadrature, sphere_quadrature
from .dipoles import DipoleSet, generate_synthetic, load
from .fields import PulsePair, Sequence

CONFIG_VERSION = 1

DEFAULT_CONFIG: dict = {
    "version": CONFIG_VERSION,
    "dipoles": {"synthetic": {"seed": 1, "lmax": 2, "t_symmetric": True, "grid": [6, 12]}},
    "pulses": {
        "sequence": "LinCirc",
        "linear_axis": [1.0, 0.0, 0.0],
        "amp_pump_1": 1.0,
        "amp_pump_2": 1.0,
        "amp_probe_1": 1.0,
        "amp_probe_2": 1.0,
        "omega1": 1.0,
        "omega2": 0.5,
    },
    "scan": {"k": [0.5, 1.0, 1.5], "tau": [0.0, 1.0, 2.0, 3.0], "sigma": [1, -1]},
    "e_ref": "p12_plus",
    "orientation": [0.0, 0.0, 0.0],
    "so3_grid": [4, 7, 7],
    "flux_grid": [4, 8],
    "flux_alpha": 8,
    "gen": {"k": 1.0},
}

MIN_SO3_DEGREE = 4
MIN_SPHERE_DEGREE = 4


class ConfigError(ValueError):
    """Invalid configuration; the message names the field."""


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in over.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict) and key != "dipoles":
            out[key] = _merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def _number(val, path: str, minimum: float | None = None) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not np.isfinite(val):
        raise ConfigError(f"{path}: expected a finite number, got {val!r}")
    if minimum is not None and val < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}, got {val!r}")
    return float(val)


def _int(val, path: str, minimum: int) -> int:
    if isinstance(val, bool) or not isinstance(val, int) or val < minimum:
        raise ConfigError(f"{path}: expected an integer >= {minimum}, got {val!r}")
    return val


def _number_list(val, path: str, minimum: float | None = None) -> list[float]:
    if not isinstance(val, list) or not val:
        raise ConfigError(f"{path}: expected a non-empty list")
    return [_number(v, f"{path}[{i}]", minimum) for i, v in enumerate(val)]


def _int_list(val, path: str, length: int, minimum: int) -> list[int]:
    if not isinstance(val, list) or len(val) != length:
        raise ConfigError(f"{path}: expected a list of {length} integers")
    return [_int(v, f"{path}[{i}]", minimum) for i, v in enumerate(val)]


@dataclass(frozen=True, eq=False)
class SyntheticSpec:
    seed: int
    lmax: int
    t_symmetric: bool
    grid: SphereGrid

    def build(self, k: float) -> DipoleSet:
        return generate_synthetic(self.seed, self.lmax, self.t_symmetric, self.grid, k=k)


@dataclass(frozen=True, eq=False)
class RunConfig:
    """Validated configuration shared by all subcommands."""

    raw: dict
    synthetic: SyntheticSpec | None
    files: tuple[str, ...]
    expect_t_symmetric: bool
    base_pulses: PulsePair
    amp_probe: tuple[tuple[float, float], ...]
    k: tuple[float, ...]
    tau: tuple[float, ...]
    sigma: tuple[int, ...]
    e_ref: str | np.ndarray
    orientation: EulerAngles
    so3_grid: SO3Grid
    flux_grid: SphereGrid
    flux_alpha: int
    gen_k: float

    def dipoles_at(self, index: int) -> DipoleSet:
        if self.synthetic is not None:
            return self.synthetic.build(self.k[index])
        return load(self.files[index])

    def pulses_at(self, index: int, tau: float, sigma: int) -> PulsePair:
        from dataclasses import replace

        a1, a2 = self.amp_probe[index]
        return replace(self.base_pulses, amp_probe_1=a1, amp_probe_2=a2).with_sigma(sigma).with_tau(tau)


def _parse_synthetic(spec, path: str) -> SyntheticSpec:
    if not isinstance(spec, dict):
        raise ConfigError(f"{path}: expected an object")
    for key in ("seed", "lmax", "t_symmetric", "grid"):
        if key not in spec:
            raise ConfigError(f"{path}.{key}: missing")
    seed = _int(spec["seed"], f"{path}.seed", 0)
    lmax = _int(spec["lmax"], f"{path}.lmax", 1)
    if not isinstance(spec["t_symmetric"], bool):
        raise ConfigError(f"{path}.t_symmetric: expected true or false")
    n_theta, n_phi = _int_list(spec["grid"], f"{path}.grid", 2, 1)
    grid = sphere_quadrature(n_theta, n_phi)
    if grid.degree < 2 * lmax:
        raise ConfigError(
            f"{path}.grid: degree {grid.degree} cannot integrate products of degree-{lmax} "
            f"fields exactly (need >= {2 * lmax})"
        )
    if spec["t_symmetric"] and not grid.antipodally_closed:
        raise ConfigError(f"{path}.grid: time-reversal symmetry needs an even azimuthal count")
    return SyntheticSpec(seed, lmax, spec["t_symmetric"], grid)


def parse_config(data: dict, base_dir: str = ".") -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    if "version" not in data:
        raise ConfigError("version: missing")
    if data["version"] != CONFIG_VERSION:
        raise ConfigError(f"version: unsupported config version {data['version']!r}")
    unknown = set(data) - set(DEFAULT_CONFIG)
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown field")
    cfg = _merge(DEFAULT_CONFIG, data)

    dip = cfg["dipoles"]
    synthetic, files, expect_t = None, (), False
    if not isinstance(dip, dict) or len(set(dip) & {"synthetic", "file", "files"}) != 1:
        raise ConfigError("dipoles: give exactly one of 'synthetic', 'file' or 'files'")
    if "synthetic" in dip:
        synthetic = _parse_synthetic(dip["synthetic"], "dipoles.synthetic")
        expect_t = synthetic.t_symmetric
    else:
        names = [dip["file"]] if "file" in dip else dip["files"]
        if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
            raise ConfigError("dipoles.files: expected a non-empty list of paths")
        files = tuple(n if os.path.isabs(n) else os.path.join(base_dir, n) for n in names)
        t_flag = dip.get("t_symmetric", False)
        if not isinstance(t_flag, bool):
            raise ConfigError("dipoles.t_symmetric: expected true or false")
        expect_t = t_flag

    scan = cfg["scan"]
    if not isinstance(scan, dict):
        raise ConfigError("scan: expected an object")
    if synthetic is None and "k" not in data.get("scan", {}):
        k_list = [load_k(f) for f in files]
    else:
        k_list = _number_list(scan.get("k"), "scan.k", 0.0)
    if synthetic is None and len(k_list) != len(files):
        raise ConfigError(f"scan.k: {len(k_list)} momenta but {len(files)} dipole files")
    tau_list = _number_list(scan.get("tau"), "scan.tau")
    sig = scan.get("sigma")
    if not isinstance(sig, list) or not sig or any(s not in (1, -1) or isinstance(s, bool) for s in sig):
        raise ConfigError("scan.sigma: expected a non-empty list of +1/-1")

    p = cfg["pulses"]
    if not isinstance(p, dict):
        raise ConfigError("pulses: expected an object")
    try:
        seq = Sequence(p.get("sequence"))
    except ValueError:
        raise ConfigError(
            f"pulses.sequence: expected one of {[s.value for s in Sequence]}, got {p.get('sequence')!r}"
        ) from None
    axis = p.get("linear_axis", [1.0, 0.0, 0.0])
    axis = np.array(_number_list(axis, "pulses.linear_axis"))
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > 1e-12:
        raise ConfigError("pulses.linear_axis: expected a unit 3-vector")
    amps = {}
    for key in ("amp_pump_1", "amp_pump_2"):
        amps[key] = _number(p.get(key), f"pulses.{key}", 0.0)
    probe = []
    for key in ("amp_probe_1", "amp_probe_2"):
        val = p.get(key)
        if isinstance(val, list):
            vals = _number_list(val, f"pulses.{key}", 0.0)
            if len(vals) != len(k_list):
                raise ConfigError(f"pulses.{key}: need one amplitude per k ({len(k_list)})")
        else:
            vals = [_number(val, f"pulses.{key}", 0.0)] * len(k_list)
        probe.append(vals)
    omega1 = _number(p.get("omega1"), "pulses.omega1")
    omega2 = _number(p.get("omega2"), "pulses.omega2")
    common = dict(amps, amp_probe_1=probe[0][0], amp_probe_2=probe[1][0], omega1=omega1, omega2=omega2)
    if seq is Sequence.LIN_CIRC:
        base = PulsePair.lin_circ(1, axis=axis, **common)
    elif seq is Sequence.CIRC_LIN:
        base = PulsePair.circ_lin(1, axis=axis, **common)
    else:
        base = PulsePair.circ_circ(1, **common)

    e_ref = cfg["e_ref"]
    if isinstance(e_ref, str):
        if e_ref not in ("p12_plus", "d1_cross_d2"):
            raise ConfigError("e_ref: expected 'p12_plus', 'd1_cross_d2' or a unit vector")
    else:
        e_ref = np.array(_number_list(e_ref, "e_ref"))
        if e_ref.shape != (3,) or abs(np.linalg.norm(e_ref) - 1.0) > 1e-12:
            raise ConfigError("e_ref: expected a unit 3-vector")

    ori = _number_list(cfg["orientation"], "orientation")
    if len(ori) != 3:
        raise ConfigError("orientation: expected [phi, theta, chi]")
    try:
        orientation = EulerAngles(*ori)
    except ValueError as exc:
        raise ConfigError(f"orientation: {exc}") from None

    so3 = so3_quadrature(*_int_list(cfg["so3_grid"], "so3_grid", 3, 1))
    if so3.degree < MIN_SO3_DEGREE:
        raise ConfigError(f"so3_grid: exactness degree {so3.degree} < {MIN_SO3_DEGREE}")
    fgrid = sphere_quadrature(*_int_list(cfg["flux_grid"], "flux_grid", 2, 1))
    if fgrid.degree < MIN_SPHERE_DEGREE:
        raise ConfigError(f"flux_grid: exactness degree {fgrid.degree} < {MIN_SPHERE_DEGREE}")
    alpha = _int(cfg["flux_alpha"], "flux_alpha", MIN_SO3_DEGREE + 1)
    gen = cfg["gen"]
    if not isinstance(gen, dict):
        raise ConfigError("gen: expected an object")
    gen_k = _number(gen.get("k", 1.0), "gen.k", 0.0)

    return RunConfig(
        raw=cfg,
        synthetic=synthetic,
        files=files,
        expect_t_symmetric=expect_t,
        base_pulses=base,
        amp_probe=tuple(zip(probe[0], probe[1])),
        k=tuple(k_list),
        tau=tuple(tau_list),
        sigma=tuple(int(s) for s in sig),
        e_ref=e_ref,
        orientation=orientation,
        so3_grid=so3,
        flux_grid=fgrid,
        flux_alpha=alpha,
        gen_k=gen_k,
    )


def load_k(path: str) -> float:
    return load(path).k


def read_config(path: str | None) -> RunConfig:
    """Load and validate a config file; ``None`` gives the defaults."""
    if path is None:
        return parse_config(copy.deepcopy(DEFAULT_CONFIG))
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config(data, os.path.dirname(os.path.abspath(path)))
