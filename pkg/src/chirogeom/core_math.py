"""Three-vector algebra, ZYZ rotations and product quadrature grids.

Vectors are plain numpy arrays whose last axis has length 3.  Complex
vectors use ``complex128`` and real vectors ``float64``.  The dot product
is bilinear: nothing is conjugated implicitly, callers write ``conj``
where a formula needs it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss

Complex3 = np.ndarray
Real3 = np.ndarray

TWO_PI = 2.0 * np.pi

X_HAT = np.array([1.0, 0.0, 0.0])
Y_HAT = np.array([0.0, 1.0, 0.0])
Z_HAT = np.array([0.0, 0.0, 1.0])


def real3(x: float, y: float, z: float) -> Real3:
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def complex3(x: complex, y: complex, z: complex) -> Complex3:
    v = np.array([x, y, z], dtype=complex)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Bilinear dot product over the last axis (broadcasting)."""
    return np.sum(np.multiply(a, b), axis=-1)


def cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.cross(a, b)


def conj(a: np.ndarray) -> np.ndarray:
    return np.conjugate(a)


def unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot normalise a zero vector")
    return np.asarray(v) / n


def _wrap(angle: float) -> float:
    a = float(np.mod(angle, TWO_PI))
    return 0.0 if a >= TWO_PI else a


def _rz(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _ry(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


@dataclass(frozen=True)
class EulerAngles:
    """Active ZYZ Euler angles, R = Rz(phi) Ry(theta) Rz(chi)."""

    phi: float = 0.0
    theta: float = 0.0
    chi: float = 0.0

    def __post_init__(self):
        for name in ("phi", "theta", "chi"):
            val = getattr(self, name)
            if not np.isfinite(val):
                raise ValueError(f"{name} must be finite")
        if not 0.0 <= self.phi < TWO_PI or not 0.0 <= self.chi < TWO_PI:
            raise ValueError("phi and chi must lie in [0, 2*pi)")
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError("theta must lie in [0, pi]")

    @classmethod
    def wrapped(cls, phi: float, theta: float, chi: float) -> "EulerAngles":
        """Build from arbitrary phi, chi; theta is clipped to [0, pi]."""
        return cls(_wrap(phi), float(np.clip(theta, 0.0, np.pi)), _wrap(chi))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "EulerAngles":
        """Haar-distributed orientation."""
        return cls.wrapped(
            rng.uniform(0.0, TWO_PI),
            np.arccos(rng.uniform(-1.0, 1.0)),
            rng.uniform(0.0, TWO_PI),
        )

    @classmethod
    def from_matrix(cls, r: np.ndarray) -> "EulerAngles":
        r = np.asarray(r, dtype=float)
        theta = float(np.arccos(np.clip(r[2, 2], -1.0, 1.0)))
        if np.sin(theta) > 1e-12:
            phi = np.arctan2(r[1, 2], r[0, 2])
            chi = np.arctan2(r[2, 1], -r[2, 0])
        elif r[2, 2] > 0:
            # gimbal lock at theta = 0: only phi + chi is defined
            phi, chi = np.arctan2(r[1, 0], r[0, 0]), 0.0
        else:
            phi, chi = np.arctan2(-r[0, 1], r[1, 1]), 0.0
        return cls.wrapped(phi, theta, chi)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi, self.theta, self.chi)


def rotation_matrix(rho: EulerAngles) -> np.ndarray:
    """Active ZYZ rotation taking molecular-frame vectors to the lab frame."""
    return _rz(rho.phi) @ _ry(rho.theta) @ _rz(rho.chi)


def rotation_matrices(phi, theta, chi) -> np.ndarray:
    """Vectorised :func:`rotation_matrix` over arrays of angles, shape (n, 3, 3)."""
    phi, theta, chi = (np.asarray(a, dtype=float) for a in (phi, theta, chi))
    cp, sp = np.cos(phi), np.sin(phi)
    ct, st = np.cos(theta), np.sin(theta)
    cc, sc = np.cos(chi), np.sin(chi)
    r = np.empty(phi.shape + (3, 3))
    r[..., 0, 0] = cp * ct * cc - sp * sc
    r[..., 0, 1] = -cp * ct * sc - sp * cc
    r[..., 0, 2] = cp * st
    r[..., 1, 0] = sp * ct * cc + cp * sc
    r[..., 1, 1] = -sp * ct * sc + cp * cc
    r[..., 1, 2] = sp * st
    r[..., 2, 0] = -st * cc
    r[..., 2, 1] = st * sc
    r[..., 2, 2] = ct
    return r


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Quadrature on the unit sphere; weights sum to 4*pi."""

    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    n_theta: int
    n_phi: int

    def __post_init__(self):
        object.__setattr__(self, "theta", _readonly(np.asarray(self.theta, dtype=float)))
        object.__setattr__(self, "phi", _readonly(np.asarray(self.phi, dtype=float)))
        object.__setattr__(self, "weights", _readonly(np.asarray(self.weights, dtype=float)))
        n = self.theta.shape[0]
        if self.phi.shape != (n,) or self.weights.shape != (n,):
            raise ValueError("theta, phi and weights must have equal length")
        if n != self.n_theta * self.n_phi:
            raise ValueError(f"grid declares {self.n_theta}x{self.n_phi} nodes but holds {n}")
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    def __len__(self) -> int:
        return self.theta.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SphereGrid):
            return NotImplemented
        return (
            self.n_theta == other.n_theta
            and self.n_phi == other.n_phi
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.phi, other.phi)
            and np.array_equal(self.weights, other.weights)
        )

    @property
    def nodes(self) -> list[tuple[float, float]]:
        return list(zip(self.theta.tolist(), self.phi.tolist()))

    @property
    def degree(self) -> int:
        """Largest spherical-polynomial degree integrated exactly."""
        return min(2 * self.n_theta - 1, self.n_phi - 1)

    @cached_property
    def directions(self) -> np.ndarray:
        st = np.sin(self.theta)
        d = np.stack([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)], axis=-1)
        return _readonly(d)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Weighted sum over nodes; ``values`` has the node axis first."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))

    def node_permutation(self, transform: np.ndarray, atol: float = 1e-10) -> np.ndarray | None:
        """Index map n -> m with direction[m] = transform @ direction[n] and equal weights.

        Returns ``None`` when the grid is not closed under ``transform``.
        """
        target = self.directions @ np.asarray(transform, dtype=float).T
        dist = np.linalg.norm(target[:, None, :] - self.directions[None, :, :], axis=-1)
        perm = np.argmin(dist, axis=1)
        if np.any(dist[np.arange(len(self)), perm] > atol):
            return None
        if len(np.unique(perm)) != len(self):
            return None
        if not np.allclose(self.weights[perm], self.weights, rtol=1e-12, atol=0.0):
            return None
        return perm

    def antipodal_index(self) -> np.ndarray | None:
        return self.node_permutation(-np.eye(3))

    @property
    def antipodally_closed(self) -> bool:
        return self.antipodal_index() is not None


def sphere_quadrature(n_theta: int, n_phi: int) -> SphereGrid:
    """Gauss-Legendre in cos(theta) times a uniform azimuthal grid."""
    if int(n_theta) < 1 or int(n_phi) < 1:
        raise ValueError("sphere grid counts must be >= 1")
    n_theta, n_phi = int(n_theta), int(n_phi)
    x, wx = leggauss(n_theta)
    # order nodes from the north pole down
    x, wx = x[::-1], wx[::-1]
    theta = np.arccos(x)
    phi = TWO_PI * np.arange(n_phi) / n_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.outer(wx, np.full(n_phi, TWO_PI / n_phi))
    return SphereGrid(tt.ravel(), pp.ravel(), ww.ravel(), n_theta, n_phi)


@dataclass(frozen=True, eq=False)
class SO3Grid:
    """Product quadrature for the normalised Haar measure on SO(3)."""

    phi: np.ndarray
    theta: np.ndarray
    chi: np.ndarray
    weights: np.ndarray
    counts: tuple[int, int, int] = field(default=(1, 1, 1))

    def __post_init__(self):
        for name in ("phi", "theta", "chi", "weights"):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name), dtype=float)))

    def __len__(self) -> int:
        return self.weights.shape[0]

    @property
    def degree(self) -> int:
        """Wigner band limit integrated exactly."""
        n_theta, n_phi, n_chi = self.counts
        return min(2 * n_theta - 1, n_phi - 1, n_chi - 1)

    @property
    def nodes(self) -> list[EulerAngles]:
        return [EulerAngles(p, t, c) for p, t, c in zip(self.phi, self.theta, self.chi)]

    @cached_property
    def rotations(self) -> np.ndarray:
        return _readonly(rotation_matrices(self.phi, self.theta, self.chi))

    def average(self, values: np.ndarray) -> np.ndarray:
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def so3_quadrature(n_theta: int, n_phi: int, n_chi: int) -> SO3Grid:
    """Gauss-Legendre in cos(theta), uniform in phi and chi; weights sum to 1."""
    if min(int(n_theta), int(n_phi), int(n_chi)) < 1:
        raise ValueError("SO(3) grid counts must be >= 1")
    n_theta, n_phi, n_chi = int(n_theta), int(n_phi), int(n_chi)
    x, wx = leggauss(n_theta)
    theta = np.arccos(x[::-1])
    wt = wx[::-1] / 2.0
    phi = TWO_PI * np.arange(n_phi) / n_phi
    chi = TWO_PI * np.arange(n_chi) / n_chi
    pp, tt, cc = np.meshgrid(phi, theta, chi, indexing="ij")
    ww = np.ones_like(pp) * wt[None, :, None] / (n_phi * n_chi)
    return SO3Grid(pp.ravel(), tt.ravel(), cc.ravel(), ww.ravel(), (n_theta, n_phi, n_chi))
