"""Second-order amplitudes and photoionization yields at fixed orientation.

Bound amplitudes:      a_j = i |pump_j| (d_j . e_pump)
Continuum amplitudes:  a_k = -sum_j c_j (D_j(k) . e_probe)(d_j . e_pump)

with c_j = |pump_j||probe_j| exp(-i omega_j tau) and field vectors taken in
the molecular frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_math import EulerAngles, Real3, Complex3, dot, rotation_matrix
from .dipoles import DipoleSet
from .fields import PulsePair


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    a1: complex
    a2: complex
    a_k: np.ndarray

    def state_vector(self, weights: np.ndarray) -> np.ndarray:
        """Amplitudes stacked with quadrature weights folded into the continuum part."""
        return np.concatenate([[self.a1, self.a2], np.sqrt(weights) * self.a_k])


def bound_amplitude(d: Real3, E_pump_mol: Complex3, amp: float) -> complex:
    return complex(1j * amp * dot(np.asarray(d), np.asarray(E_pump_mol)))


def amplitudes_molecular(
    dset: DipoleSet, pulses: PulsePair, pump_mol: Complex3, probe_mol: Complex3
) -> AmplitudeField:
    """Amplitudes for field vectors already expressed in the molecular frame."""
    c = pulses.path_weights
    b1 = dot(dset.d1, pump_mol)
    b2 = dot(dset.d2, pump_mol)
    a_k = -c[0] * (dset.D1 @ probe_mol) * b1 - c[1] * (dset.D2 @ probe_mol) * b2
    return AmplitudeField(
        complex(1j * pulses.amp_pump_1 * b1), complex(1j * pulses.amp_pump_2 * b2), a_k
    )


def molecular_fields(pulses: PulsePair, rho: EulerAngles) -> tuple[Complex3, Complex3]:
    rt = rotation_matrix(rho).T
    return rt @ pulses.pump_vector(), rt @ pulses.probe_vector()


def continuum_amplitude(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> AmplitudeField:
    pump_mol, probe_mol = molecular_fields(pulses, rho)
    return amplitudes_molecular(dset, pulses, pump_mol, probe_mol)


def yield_fixed(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> float:
    """W = sum over the k-grid of w |a_k|^2."""
    a = continuum_amplitude(dset, pulses, rho).a_k
    return float(dset.continuum.integrate(np.abs(a) ** 2))


def dichroic_yield_fixed(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> float:
    """W_sigma - W_-sigma from two full evaluations."""
    if not any(pulses.spin_carrying):
        raise ValueError("dichroic yield needs a circularly polarized pulse")
    return yield_fixed(dset, pulses, rho) - yield_fixed(dset, pulses.flipped(), rho)


def yields_batch(dset: DipoleSet, pulses: PulsePair, rotations: np.ndarray) -> np.ndarray:
    """Yield W for each rotation in a (m, 3, 3) stack."""
    pump_mol = np.einsum("mji,j->mi", rotations, pulses.pump_vector())
    probe_mol = np.einsum("mji,j->mi", rotations, pulses.probe_vector())
    c = pulses.path_weights
    a_k = -c[0] * (probe_mol @ dset.D1.T) * (pump_mol @ dset.d1)[:, None]
    a_k -= c[1] * (probe_mol @ dset.D2.T) * (pump_mol @ dset.d2)[:, None]
    return np.abs(a_k) ** 2 @ dset.grid.weights
