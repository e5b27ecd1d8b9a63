"""Closed-form eigensystem of the two-disk Neumann-Poincare operator.

For two equal disks in the bipolar frame of :mod:`dimerfield.geometry`, the
NP operator on the zero-mean density space has eigenvalues

    lambda_n^{+/-} = +/- (1/2) * exp(-2|n|s),      n != 0,

with normalized eigenfunctions (densities on the two boundary circles)

    Psi_n^{+/-}(eta) = c_n^{+/-} * h(s, eta) * exp(i n eta) * [1, -/+ 1],
    c_n^{+/-} = sqrt(|n|) / sqrt(4 pi (1/2 - lambda_n^{+/-})).

The single-layer potential of Psi_n^{+/-} is harmonic off the two circles,
continuous across them, and decays at infinity.  With the additive constant
fixed to zero it reads, piecewise in zeta (m = |n|):

    zeta < -s :  -(c/2m) (e^{ms} -/+ e^{-ms}) e^{m zeta} e^{i n eta}
    |zeta|<= s:  -(c/2m) e^{-ms} (e^{-m zeta} -/+ e^{m zeta}) e^{i n eta}
    zeta >  s :  -(c/2m) (e^{-ms} -/+ e^{ms}) e^{-m zeta} e^{i n eta}

These branches match at zeta = +/-s and satisfy the single-layer jump
relation, which pins the leading sign of the zeta < -s branch; the identity
(jump of the normal derivative equals the density, mean of the one-sided
normal derivatives equals lambda times the density) is exercised against the
discretized operator in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import BipolarFrame, scale_factor


@dataclass(frozen=True)
class NPMode:
    """One eigenpair (n, sign) of the two-disk NP operator."""

    order: int
    sign: int  # +1 or -1
    eigenvalue: float
    normalization: float

    def __post_init__(self):
        if self.order == 0:
            raise ValueError("n = 0 is excluded (constants are not in the density space)")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")


def eigenvalue(n: int, sign: int, frame: BipolarFrame) -> float:
    """lambda_n^{+/-} = +/- (1/2) exp(-2|n|s)."""
    if n == 0:
        raise ValueError("n = 0 is excluded (constants are not in the density space)")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign * 0.5 * np.exp(-2.0 * abs(n) * frame.s)


def normalization(n: int, sign: int, frame: BipolarFrame) -> float:
    """c_n^{+/-} = sqrt(|n|) / sqrt(4 pi (1/2 - lambda_n^{+/-}))."""
    lam = eigenvalue(n, sign, frame)
    return np.sqrt(abs(n)) / np.sqrt(4.0 * np.pi * (0.5 - lam))


def mode(n: int, sign: int, frame: BipolarFrame) -> NPMode:
    return NPMode(
        order=n,
        sign=sign,
        eigenvalue=eigenvalue(n, sign, frame),
        normalization=normalization(n, sign, frame),
    )


def mode_density(m: NPMode, frame: BipolarFrame, eta):
    """Density samples of Psi_n^{+/-} at boundary coordinate eta.

    Returns (component on the left circle {zeta=-s}, component on the right
    circle {zeta=+s}); the second is -/+ the first.
    """
    eta = np.asarray(eta, dtype=float)
    h = scale_factor(frame, frame.s, eta)
    base = m.normalization * h * np.exp(1j * m.order * eta)
    return base, -m.sign * base


def mode_potential(m: NPMode, frame: BipolarFrame, zeta, eta):
    """Single-layer potential of Psi_n^{+/-} at bipolar point(s) (zeta, eta).

    Additive constant fixed to 0; complex-valued (the real and imaginary
    parts are the potentials of the cos/sin component densities).
    """
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    k = abs(m.order)
    s = frame.s
    sg = float(m.sign)  # the -/+ in the formulas is -sign
    pref = -m.normalization / (2.0 * k)

    left = pref * (np.exp(k * s) - sg * np.exp(-k * s)) * np.exp(k * zeta)
    middle = pref * np.exp(-k * s) * (np.exp(-k * zeta) - sg * np.exp(k * zeta))
    right = pref * (np.exp(-k * s) - sg * np.exp(k * s)) * np.exp(-k * zeta)

    radial = np.where(zeta < -s, left, np.where(zeta > s, right, middle))
    out = radial * np.exp(1j * m.order * eta)
    return out if out.ndim else complex(out)


def mode_potential_partials(m: NPMode, frame: BipolarFrame, zeta, eta):
    """Analytic partial derivatives (d/dzeta, d/deta) of :func:`mode_potential`."""
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    k = abs(m.order)
    s = frame.s
    sg = float(m.sign)
    pref = -m.normalization / (2.0 * k)

    d_left = pref * (np.exp(k * s) - sg * np.exp(-k * s)) * k * np.exp(k * zeta)
    d_middle = pref * np.exp(-k * s) * (-k * np.exp(-k * zeta) - sg * k * np.exp(k * zeta))
    d_right = -pref * (np.exp(-k * s) - sg * np.exp(k * s)) * k * np.exp(-k * zeta)
    d_radial = np.where(zeta < -s, d_left, np.where(zeta > s, d_right, d_middle))

    phase = np.exp(1j * m.order * eta)
    d_dzeta = d_radial * phase
    d_deta = mode_potential(m, frame, zeta, eta) * (1j * m.order)
    return d_dzeta, d_deta
