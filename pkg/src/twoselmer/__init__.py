"""2-Selmer groups of elliptic curves y^2 = x^3 + Ax + B via binary quartic forms."""
from .curves import CurveKey, enumerate_minimal, height, is_minimal, torsion_order
from .quartics import QuarticForm, Transform, act, act_twisted, invariants
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CurveKey",
    "QuarticForm",
    "Transform",
    "act",
    "act_twisted",
    "enumerate_minimal",
    "height",
    "invariants",
    "is_minimal",
    "torsion_order",
]
