"""Bound transition dipoles and continuum dipole fields on a sphere grid.

Includes deterministic synthetic generation, the time-reversal
symmetrisation D(-k) = D(k)*, the enantiomer reflection and a JSON file
format whose round trip is bit-exact.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass

import numpy as np

from .core_math import Real3, SphereGrid, cross, dot

FILE_VERSION = 1

MIRROR = np.diag([1.0, 1.0, -1.0])


class DipoleFileError(ValueError):
    """Raised for malformed, inconsistent or unsupported dipole files."""


def _frozen(a, dtype) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    if not np.all(np.isfinite(a)):
        raise ValueError("dipole data must be finite")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BoundDipoles:
    d1: Real3
    d2: Real3

    def __post_init__(self):
        for name in ("d1", "d2"):
            v = np.asarray(getattr(self, name))
            if np.iscomplexobj(v):
                if np.any(v.imag != 0):
                    raise ValueError("bound dipoles must be real")
                v = v.real
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, _frozen(v, float))

    def __eq__(self, other):
        return (
            isinstance(other, BoundDipoles)
            and np.array_equal(self.d1, other.d1)
            and np.array_equal(self.d2, other.d2)
        )


@dataclass(frozen=True, eq=False)
class ContinuumField:
    """Photoionization dipoles D1, D2 sampled at the nodes of ``grid``."""

    k: float
    grid: SphereGrid
    D1: np.ndarray
    D2: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.k) or self.k < 0:
            raise ValueError("k must be finite and non-negative")
        for name in ("D1", "D2"):
            arr = np.asarray(getattr(self, name))
            if arr.shape != (len(self.grid), 3):
                raise ValueError(
                    f"{name} has shape {arr.shape}, expected ({len(self.grid)}, 3)"
                )
            object.__setattr__(self, name, _frozen(arr, complex))
        object.__setattr__(self, "k", float(self.k))

    def __eq__(self, other):
        return (
            isinstance(other, ContinuumField)
            and self.k == other.k
            and self.grid == other.grid
            and np.array_equal(self.D1, other.D1)
            and np.array_equal(self.D2, other.D2)
        )

    def integrate(self, values: np.ndarray) -> np.ndarray:
        return self.grid.integrate(values)


@dataclass(frozen=True, eq=False)
class DipoleSet:
    bound: BoundDipoles
    continuum: ContinuumField
    label: str = ""

    def __eq__(self, other):
        return (
            isinstance(other, DipoleSet)
            and self.label == other.label
            and self.bound == other.bound
            and self.continuum == other.continuum
        )

    @property
    def d1(self) -> Real3:
        return self.bound.d1

    @property
    def d2(self) -> Real3:
        return self.bound.d2

    @property
    def D1(self) -> np.ndarray:
        return self.continuum.D1

    @property
    def D2(self) -> np.ndarray:
        return self.continuum.D2

    @property
    def grid(self) -> SphereGrid:
        return self.continuum.grid

    @property
    def k(self) -> float:
        return self.continuum.k

    def with_bound(self, bound: BoundDipoles, label: str | None = None) -> "DipoleSet":
        return DipoleSet(bound, self.continuum, self.label if label is None else label)


def _monomial_exponents(lmax: int) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for a, b, c in itertools.product(range(lmax + 1), repeat=3)
        if a + b + c <= lmax
    ]


def time_reversal_symmetrize(values: np.ndarray, grid: SphereGrid) -> np.ndarray:
    """Return (F(k) + F(-k)*) / 2 node-wise."""
    anti = grid.antipodal_index()
    if anti is None:
        raise ValueError("grid is not antipodally closed")
    values = np.asarray(values)
    return 0.5 * (values + np.conj(values[anti]))


def generate_synthetic(
    seed: int,
    lmax: int,
    t_symmetric: bool,
    grid: SphereGrid,
    k: float = 1.0,
    label: str | None = None,
) -> DipoleSet:
    """Random band-limited dipole data, deterministic in ``seed``.

    Each Cartesian component of D1 and D2 is a complex polynomial of total
    degree <= ``lmax`` in the direction cosines of k.  Its coefficients
    vary smoothly with ``k`` as c0 + c1 cos k + c2 sin k, so one seed
    describes a whole momentum scan.  Bound dipoles do not depend on k.
    """
    if int(lmax) != lmax or lmax < 1:
        raise ValueError("lmax must be an integer >= 1")
    if t_symmetric and not grid.antipodally_closed:
        raise ValueError("time-reversal symmetry needs an antipodally closed grid")
    rng = np.random.default_rng(seed)
    d1, d2 = rng.normal(size=3), rng.normal(size=3)
    exps = np.array(_monomial_exponents(int(lmax)))
    shape = (3, 2, 3, len(exps))
    coef = (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(len(exps))
    c = coef[0] + coef[1] * np.cos(k) + coef[2] * np.sin(k)
    u = grid.directions
    basis = np.prod(u[:, None, :] ** exps[None, :, :], axis=-1)
    fields = np.einsum("fcm,nm->fnc", c, basis)
    if t_symmetric:
        fields = np.stack([time_reversal_symmetrize(f, grid) for f in fields])
    if label is None:
        label = f"synthetic seed={seed} lmax={lmax} t_symmetric={bool(t_symmetric)}"
    return DipoleSet(BoundDipoles(d1, d2), ContinuumField(k, grid, fields[0], fields[1]), label)


def bound_from_scalars(dot_12: float, cross_norm: float, ratio: float = 1.0) -> BoundDipoles:
    """Bound dipoles with prescribed d1.d2 and |d1 x d2|.

    Only the product |d1||d2| is fixed by the two scalars; ``ratio`` sets
    |d1|/|d2|.  d1 lies along x and d2 in the xy-plane.
    """
    if cross_norm < 0 or ratio <= 0:
        raise ValueError("cross_norm must be >= 0 and ratio > 0")
    prod = np.hypot(dot_12, cross_norm)
    gamma = np.arctan2(cross_norm, dot_12)
    a, b = np.sqrt(prod * ratio), np.sqrt(prod / ratio)
    return BoundDipoles(np.array([a, 0.0, 0.0]), b * np.array([np.cos(gamma), np.sin(gamma), 0.0]))


def t_symmetry_residual(dset: DipoleSet) -> float:
    """|Im of the quadrature of D1*.D2|; zero for time-reversal-symmetric fields."""
    return float(abs(dset.continuum.integrate(dot(np.conj(dset.D1), dset.D2)).imag))


def t_symmetry_defect(dset: DipoleSet) -> float:
    """Largest node-wise violation of D_j(-k) = D_j(k)*."""
    anti = dset.grid.antipodal_index()
    if anti is None:
        return float("inf")
    return float(
        max(np.max(np.abs(f - np.conj(f[anti])), initial=0.0) for f in (dset.D1, dset.D2))
    )


def mirror(dset: DipoleSet) -> DipoleSet:
    """Enantiomer: d -> M d and D(k) -> M D(M k) with M = diag(1, 1, -1)."""
    perm = dset.grid.node_permutation(MIRROR)
    if perm is None:
        raise ValueError("grid is not closed under the z -> -z reflection")
    b = BoundDipoles(MIRROR @ dset.d1, MIRROR @ dset.d2)
    D1 = dset.D1[perm] @ MIRROR
    D2 = dset.D2[perm] @ MIRROR
    return DipoleSet(b, ContinuumField(dset.k, dset.grid, D1, D2), dset.label)


def pseudoscalar(dset: DipoleSet) -> float:
    """(d1.d2)(d1.P12+), odd under reflection.

    P12+ is an axial vector, so pairing it with the polar d1 gives a
    handedness indicator; (d1 x d2).P12+ would pair two axial vectors and is
    reflection-even.
    """
    p = 0.5 * dset.continuum.integrate(cross(np.conj(dset.D1), dset.D2)).real
    return float(dot(dset.d1, dset.d2) * dot(dset.d1, p))


def _pairs(arr: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def to_dict(dset: DipoleSet) -> dict:
    g = dset.grid
    return {
        "version": FILE_VERSION,
        "label": dset.label,
        "k": dset.k,
        "grid": {
            "n_theta": g.n_theta,
            "n_phi": g.n_phi,
            "nodes": [[float(t), float(p)] for t, p in zip(g.theta, g.phi)],
            "weights": [float(w) for w in g.weights],
        },
        "d1": [float(x) for x in dset.d1],
        "d2": [float(x) for x in dset.d2],
        "D1": _pairs(dset.D1),
        "D2": _pairs(dset.D2),
    }


def from_dict(data: dict) -> DipoleSet:
    if not isinstance(data, dict) or "version" not in data:
        raise DipoleFileError("dipole file has no 'version' field")
    if data["version"] != FILE_VERSION:
        raise DipoleFileError(
            f"unsupported dipole file version {data['version']!r} (expected {FILE_VERSION})"
        )
    try:
        g = data["grid"]
        nodes = np.asarray(g["nodes"], dtype=float)
        weights = np.asarray(g["weights"], dtype=float)
        n_theta, n_phi = int(g["n_theta"]), int(g["n_phi"])
        if nodes.ndim != 2 or nodes.shape[1] != 2:
            raise DipoleFileError("grid nodes must be [theta, phi] pairs")
        if len(nodes) != n_theta * n_phi or len(weights) != len(nodes):
            raise DipoleFileError(
                f"grid declares {n_theta}x{n_phi} nodes but lists {len(nodes)} nodes "
                f"and {len(weights)} weights"
            )
        grid = SphereGrid(nodes[:, 0], nodes[:, 1], weights, n_theta, n_phi)
        fields = []
        for name in ("D1", "D2"):
            arr = np.asarray(data[name], dtype=float)
            if arr.shape != (len(nodes), 3, 2):
                raise DipoleFileError(
                    f"{name} holds {arr.shape[0] if arr.ndim else 0} nodes, grid has {len(nodes)}"
                )
            fields.append(arr[..., 0] + 1j * arr[..., 1])
        bound = BoundDipoles(np.asarray(data["d1"], dtype=float), np.asarray(data["d2"], dtype=float))
        cont = ContinuumField(float(data["k"]), grid, fields[0], fields[1])
        return DipoleSet(bound, cont, str(data.get("label", "")))
    except DipoleFileError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DipoleFileError(f"malformed dipole file: {exc}") from exc


def dumps(dset: DipoleSet) -> str:
    # json writes floats with repr(), which round-trips exactly
    return json.dumps(to_dict(dset), indent=1)


def save(dset: DipoleSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(dset))
        fh.write("\n")


def load(path: str | os.PathLike) -> DipoleSet:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DipoleFileError(f"{path}: not valid JSON ({exc})") from exc
    return from_dict(data)
