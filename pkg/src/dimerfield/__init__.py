"""Quasi-static field expansions for a strongly coupled plasmonic disk dimer.

Three analytic expansion schemes for the scattered field of two equal
plasmonic disks driven by a uniform field (H = x1):

* :mod:`dimerfield.resonant` - resonant-mode series in bipolar coordinates,
* :mod:`dimerfield.hybrid` - plasmon hybridization / per-disk multipoles,
* :mod:`dimerfield.cgpt` - origin-centered far-field via polarization tensors,

each cross-validated against the direct Nystrom boundary-integral solver in
:mod:`dimerfield.bie`.  Geometry and material plumbing live in
:mod:`dimerfield.geometry`, :mod:`dimerfield.spectrum` (the two-disk
Neumann-Poincare eigensystem) and :mod:`dimerfield.material` (Drude model).
"""

from .geometry import BipolarFrame, DiskPair, derive_frame, frame_for
from .material import DrudeModel, lambda_of_omega, permittivity, spectral_lambda

__version__ = "0.1.0"

__all__ = [
    "BipolarFrame",
    "DiskPair",
    "DrudeModel",
    "derive_frame",
    "frame_for",
    "lambda_of_omega",
    "permittivity",
    "spectral_lambda",
    "__version__",
]
