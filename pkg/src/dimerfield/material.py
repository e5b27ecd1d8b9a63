"""Drude permittivity and the spectral contrast parameter.

The metal permittivity follows the Drude model

    eps_m(omega) = 1 - omega_p^2 / (omega * (omega + i*gamma)),

with background permittivity 1 outside.  The transmission problem is put in
resolvent form through the contrast parameter

    lambda = (eps_m + 1) / (2 (eps_m - 1)),

so resonances occur where lambda approaches an eigenvalue of the two-disk
NP operator.  For gamma = 0 both maps invert in closed form, which is how
:func:`resonance_frequencies` locates the resonances; with damping the
spectrum is never hit exactly and the peak is found by a golden-section
search on |lambda(omega) - lambda_n|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import spectrum
from .errors import ContrastError
from .geometry import BipolarFrame


@dataclass(frozen=True)
class DrudeModel:
    """Drude parameters: plasma frequency omega_p > 0 and damping gamma >= 0."""

    plasma_frequency: float
    damping: float = 0.0

    def __post_init__(self):
        if not self.plasma_frequency > 0:
            raise ValueError(f"plasma frequency must be positive, got {self.plasma_frequency}")
        if self.damping < 0:
            raise ValueError(f"damping must be nonnegative, got {self.damping}")


def permittivity(model: DrudeModel, omega):
    """eps_m(omega) = 1 - omega_p^2 / (omega (omega + i gamma)), omega > 0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive")
    wp2 = model.plasma_frequency**2
    out = 1.0 - wp2 / (omega * (omega + 1j * model.damping))
    return out if out.ndim else complex(out)


def spectral_lambda(eps_m):
    """lambda = (eps_m + 1) / (2 (eps_m - 1)); eps_m = 1 is degenerate."""
    eps_m = np.asarray(eps_m, dtype=complex)
    if np.any(eps_m == 1.0):
        raise ContrastError("eps_m = 1 matches the background; contrast parameter undefined")
    out = (eps_m + 1.0) / (2.0 * (eps_m - 1.0))
    return out if out.ndim else complex(out)


def lambda_of_omega(model: DrudeModel, omega):
    """Composition lambda(eps_m(omega))."""
    return spectral_lambda(permittivity(model, omega))


def permittivity_for_lambda(lam):
    """Inverse of :func:`spectral_lambda`: eps = (2 lambda + 1)/(2 lambda - 1)."""
    lam = np.asarray(lam, dtype=complex)
    if np.any(lam == 0.5):
        raise ContrastError("lambda = 1/2 corresponds to infinite permittivity")
    out = (2.0 * lam + 1.0) / (2.0 * lam - 1.0)
    return out if out.ndim else complex(out)


def resonance_frequencies(model: DrudeModel, frame: BipolarFrame, count: int):
    """Undamped resonance frequencies of the two-disk system.

    For each eigenvalue lambda_n^{+/-}, n = 1..count, solves
    lambda(eps_m(omega)) = lambda_n^{+/-} in closed form:

        eps_n = (2 lambda_n + 1) / (2 lambda_n - 1),
        omega_n = omega_p / sqrt(1 - eps_n).

    Requires gamma = 0 (with damping the spectrum is never reached); returns
    a list of (n, sign, omega_n) with only real positive solutions, sorted by
    (n, -sign).  Eigenvalues at exactly 1/2 (never the case for n >= 1) would
    need infinite permittivity and are skipped.
    """
    if model.damping != 0.0:
        raise ValueError("resonance frequencies are defined for the undamped model")
    out = []
    for n in range(1, count + 1):
        for sign in (+1, -1):
            lam = spectrum.eigenvalue(n, sign, frame)
            if lam == 0.5:
                continue
            eps = (2.0 * lam + 1.0) / (2.0 * lam - 1.0)
            if 1.0 - eps <= 0.0:
                continue
            omega = model.plasma_frequency / np.sqrt(1.0 - eps)
            if omega > 0:
                out.append((n, sign, float(omega)))
    return out


def damped_resonance_frequency(model: DrudeModel, eigenvalue: float) -> float:
    """Real frequency maximizing |1/(lambda(omega) - lambda_n)| for gamma > 0.

    Golden-section search bracketed around the undamped resonance, with
    tolerance 1e-10 * omega_p.
    """
    undamped = DrudeModel(model.plasma_frequency, 0.0)
    eps = (2.0 * eigenvalue + 1.0) / (2.0 * eigenvalue - 1.0)
    omega0 = undamped.plasma_frequency / np.sqrt(1.0 - eps)

    def objective(omega):
        return abs(lambda_of_omega(model, omega) - eigenvalue)

    res = minimize_scalar(
        objective,
        bracket=(0.8 * omega0, omega0, 1.2 * omega0),
        method="golden",
        options={"xtol": 1e-10 * model.plasma_frequency},
    )
    return float(res.x)
