"""Polarization states, two-colour pulse pairs and frame transport."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .core_math import X_HAT, Complex3, EulerAngles, rotation_matrix


@dataclass(frozen=True, eq=False)
class Linear:
    axis: np.ndarray = field(default_factory=lambda: X_HAT.copy())

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,) or not np.all(np.isfinite(axis)):
            raise ValueError("linear axis must be a finite 3-vector")
        if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
            raise ValueError("linear axis must have unit norm")
        axis = axis.copy()
        axis.setflags(write=False)
        object.__setattr__(self, "axis", axis)

    def __eq__(self, other):
        return isinstance(other, Linear) and np.array_equal(self.axis, other.axis)


@dataclass(frozen=True)
class Circular:
    sigma: int = 1

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError("helicity sigma must be +1 or -1")


Polarization = Linear | Circular


class Sequence(str, enum.Enum):
    LIN_CIRC = "LinCirc"
    CIRC_LIN = "CircLin"
    CIRC_CIRC = "CircCirc"

    @property
    def kinds(self) -> tuple[type, type]:
        """Expected (pump, probe) polarization classes."""
        return {
            Sequence.LIN_CIRC: (Linear, Circular),
            Sequence.CIRC_LIN: (Circular, Linear),
            Sequence.CIRC_CIRC: (Circular, Circular),
        }[self]


def polarization_vector(p: Polarization) -> Complex3:
    """Unit lab-frame field vector; circular is (1, i*sigma, 0)/sqrt(2)."""
    if isinstance(p, Circular):
        return np.array([1.0, 1j * p.sigma, 0.0]) / np.sqrt(2.0)
    if isinstance(p, Linear):
        return p.axis.astype(complex)
    raise TypeError(f"not a polarization: {p!r}")


def to_molecular(rho: EulerAngles, v_lab: Complex3) -> Complex3:
    """Express a lab-frame vector in the molecular frame, R^T v."""
    return rotation_matrix(rho).T @ np.asarray(v_lab)


def to_lab(rho: EulerAngles, v_mol: Complex3) -> Complex3:
    return rotation_matrix(rho) @ np.asarray(v_mol)


@dataclass(frozen=True)
class PulsePair:
    """Pump and probe pulses of a two-photon sequence.

    ``amp_*`` are Fourier-amplitude moduli; ``omega1``/``omega2`` are the
    energies of the two excited bound states and ``tau`` is the delay.
    """

    sequence: Sequence
    pump: Polarization
    probe: Polarization
    amp_pump_1: float = 1.0
    amp_pump_2: float = 1.0
    amp_probe_1: float = 1.0
    amp_probe_2: float = 1.0
    omega1: float = 1.0
    omega2: float = 0.5
    tau: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "sequence", Sequence(self.sequence))
        want_pump, want_probe = self.sequence.kinds
        if not isinstance(self.pump, want_pump) or not isinstance(self.probe, want_probe):
            raise ValueError(
                f"{self.sequence.value} needs a {want_pump.__name__} pump and "
                f"{want_probe.__name__} probe"
            )
        if self.sequence is Sequence.CIRC_CIRC and self.pump.sigma != self.probe.sigma:
            raise ValueError("CircCirc pulses must share the same helicity")
        for name in ("amp_pump_1", "amp_pump_2", "amp_probe_1", "amp_probe_2"):
            val = getattr(self, name)
            if not np.isfinite(val) or val < 0:
                raise ValueError(f"{name} must be a finite non-negative number")
        for name in ("omega1", "omega2", "tau"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def lin_circ(cls, sigma: int = 1, axis=X_HAT, **kw) -> "PulsePair":
        return cls(Sequence.LIN_CIRC, Linear(np.asarray(axis, dtype=float)), Circular(sigma), **kw)

    @classmethod
    def circ_lin(cls, sigma: int = 1, axis=X_HAT, **kw) -> "PulsePair":
        return cls(Sequence.CIRC_LIN, Circular(sigma), Linear(np.asarray(axis, dtype=float)), **kw)

    @classmethod
    def circ_circ(cls, sigma: int = 1, **kw) -> "PulsePair":
        return cls(Sequence.CIRC_CIRC, Circular(sigma), Circular(sigma), **kw)

    @property
    def omega12(self) -> float:
        return self.omega1 - self.omega2

    @property
    def sigma(self) -> int:
        """Helicity shared by the circular pulse(s)."""
        return self.probe.sigma if isinstance(self.probe, Circular) else self.pump.sigma

    @property
    def C(self) -> float:
        """Product of the four field moduli."""
        return self.amp_pump_1 * self.amp_pump_2 * self.amp_probe_1 * self.amp_probe_2

    @property
    def path_weights(self) -> np.ndarray:
        """Complex two-photon path factors c_j = |pump_j||probe_j| exp(-i omega_j tau)."""
        amps = np.array(
            [self.amp_pump_1 * self.amp_probe_1, self.amp_pump_2 * self.amp_probe_2]
        )
        return amps * np.exp(-1j * np.array([self.omega1, self.omega2]) * self.tau)

    @property
    def spin_carrying(self) -> tuple[bool, bool]:
        """(pump, probe) flags for pulses carrying photon spin."""
        return isinstance(self.pump, Circular), isinstance(self.probe, Circular)

    def pump_vector(self) -> Complex3:
        return polarization_vector(self.pump)

    def probe_vector(self) -> Complex3:
        return polarization_vector(self.probe)

    def with_sigma(self, sigma: int) -> "PulsePair":
        pump = Circular(sigma) if isinstance(self.pump, Circular) else self.pump
        probe = Circular(sigma) if isinstance(self.probe, Circular) else self.probe
        return replace(self, pump=pump, probe=probe)

    def flipped(self) -> "PulsePair":
        return self.with_sigma(-self.sigma)

    def with_tau(self, tau: float) -> "PulsePair":
        return replace(self, tau=float(tau))
