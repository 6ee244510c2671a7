"""Geometric curvature, connection and enantio-sensitive orientation in
two-photon ionization of chiral molecules."""

from .core_math import EulerAngles, rotation_matrix, so3_quadrature, sphere_quadrature
from .dipoles import DipoleSet, generate_synthetic, mirror
from .fields import Circular, Linear, PulsePair, Sequence

__all__ = [
    "Circular",
    "DipoleSet",
    "EulerAngles",
    "Linear",
    "PulsePair",
    "Sequence",
    "generate_synthetic",
    "mirror",
    "rotation_matrix",
    "so3_quadrature",
    "sphere_quadrature",
]

__version__ = "0.1.0"
