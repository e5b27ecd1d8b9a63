"""Resonant expansion of the scattered field driven by H = x1.

The two-disk system is treated as a single scatterer and the scattered field
is expanded over the exact resonance modes.  Only the + family is excited by
H = x1 (the - family pairs to zero), and in the exterior strip |zeta| <= s
the series collapses to

    (u - H)(zeta, eta) = sum_{n>=1} a_n * sinh(n zeta) * cos(n eta),
    a_n = -2 * alpha * exp(-2 n s) / (lambda - lambda_n^+).

Inside the disks the same coefficients weight the interior branches of the
mode potentials, giving

    left disk : sum_n  alpha (1 - e^{-2ns}) e^{ n zeta} cos(n eta) / (lambda - lambda_n^+)
    right disk: sum_n -alpha (1 - e^{-2ns}) e^{-n zeta} cos(n eta) / (lambda - lambda_n^+)

continuous across the boundaries.  The e1 component of the gradient at the
origin follows by differentiating the exterior series at (zeta, eta) = (0, pi):

    e1 . grad(u - H)(0, 0) = -4 sum_{n>=1} n e^{-2ns} (-1)^n / (lambda - lambda_n^+).

A "printed" variant of that formula (+4 sum n e^{-ns} (-1)^n / (lambda -
lambda_n^+)) is retained solely for the adjudication report produced by the
validation suite; the two disagree and the boundary-integral solver decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import spectrum
from .errors import OutOfDomainError, ResonanceSingularityError
from .geometry import BipolarFrame, bipolar_gradient_to_cartesian, to_bipolar

GRADIENT_VARIANTS = ("derived", "printed")


@dataclass(frozen=True)
class ResonantExpansion:
    """Truncated resonant series: frame, spectral parameter, coefficients a_n."""

    frame: BipolarFrame
    lam: complex
    order: int
    coefficients: np.ndarray = field(repr=False)  # a_n, n = 1..order


def build_resonant(frame: BipolarFrame, lam: complex, order: int) -> ResonantExpansion:
    """Populate the coefficient table a_n = -2 alpha e^{-2ns}/(lambda - lambda_n^+).

    Raises :class:`ResonanceSingularityError` if ``lam`` coincides exactly
    with an eigenvalue in the truncation range (possible only for real lam).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    n = np.arange(1, order + 1)
    eigs = 0.5 * np.exp(-2.0 * n * frame.s)
    denom = lam - eigs
    hit = np.nonzero(denom == 0)[0]
    if hit.size:
        k = int(n[hit[0]])
        raise ResonanceSingularityError(k, +1, eigs[hit[0]])
    coeff = -2.0 * frame.alpha * np.exp(-2.0 * n * frame.s) / denom
    return ResonantExpansion(frame=frame, lam=lam, order=order, coefficients=coeff)


def field_at_bipolar(exp: ResonantExpansion, zeta, eta):
    """Scattered field u - H at bipolar coordinates; valid in all three regions."""
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    zeta, eta = np.broadcast_arrays(zeta, eta)
    shape = zeta.shape
    zf, ef = zeta.ravel(), eta.ravel()
    s = exp.frame.s
    n = np.arange(1, exp.order + 1)
    eigs = 0.5 * np.exp(-2.0 * n * s)
    out = np.zeros(zf.shape, dtype=complex)

    # Exterior strip: a_n sinh(n zeta) written as two decaying exponentials,
    # exp(n(zeta - 2s)) - exp(-n(zeta + 2s)), so nothing overflows.
    ext = np.abs(zf) <= s
    if ext.any():
        ze = zf[ext, None]
        grow = np.exp(n * (ze - 2.0 * s)) - np.exp(-n * (ze + 2.0 * s))
        out[ext] = (-exp.frame.alpha / (exp.lam - eigs) * grow * np.cos(ef[ext, None] * n)).sum(axis=-1)

    resolvent = exp.frame.alpha * (1.0 - np.exp(-2.0 * n * s)) / (exp.lam - eigs)
    left = zf < -s
    if left.any():
        out[left] = (resolvent * np.exp(zf[left, None] * n) * np.cos(ef[left, None] * n)).sum(axis=-1)
    right = zf > s
    if right.any():
        out[right] = -(resolvent * np.exp(-zf[right, None] * n) * np.cos(ef[right, None] * n)).sum(axis=-1)

    out = out.reshape(shape)
    return out if out.ndim else complex(out)


def field(exp: ResonantExpansion, x1, x2):
    """Scattered field u - H at Cartesian point(s)."""
    zeta, eta = to_bipolar(exp.frame, x1, x2)
    return field_at_bipolar(exp, zeta, eta)


def _partials_at_bipolar(exp: ResonantExpansion, zeta, eta):
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    zeta, eta = np.broadcast_arrays(zeta, eta)
    shape = zeta.shape
    zf, ef = zeta.ravel(), eta.ravel()
    s = exp.frame.s
    n = np.arange(1, exp.order + 1)
    eigs = 0.5 * np.exp(-2.0 * n * s)
    d_zeta = np.zeros(zf.shape, dtype=complex)
    d_eta = np.zeros(zf.shape, dtype=complex)

    ext = np.abs(zf) <= s
    if ext.any():
        ze = zf[ext, None]
        pref = -exp.frame.alpha / (exp.lam - eigs)
        e_plus = np.exp(n * (ze - 2.0 * s))
        e_minus = np.exp(-n * (ze + 2.0 * s))
        cos_part = np.cos(ef[ext, None] * n)
        sin_part = np.sin(ef[ext, None] * n)
        d_zeta[ext] = (pref * n * (e_plus + e_minus) * cos_part).sum(axis=-1)
        d_eta[ext] = -(pref * (e_plus - e_minus) * n * sin_part).sum(axis=-1)

    resolvent = exp.frame.alpha * (1.0 - np.exp(-2.0 * n * s)) / (exp.lam - eigs)
    left = zf < -s
    if left.any():
        e_left = np.exp(zf[left, None] * n)
        d_zeta[left] = (resolvent * n * e_left * np.cos(ef[left, None] * n)).sum(axis=-1)
        d_eta[left] = -(resolvent * n * e_left * np.sin(ef[left, None] * n)).sum(axis=-1)
    right = zf > s
    if right.any():
        e_right = np.exp(-zf[right, None] * n)
        d_zeta[right] = (resolvent * n * e_right * np.cos(ef[right, None] * n)).sum(axis=-1)
        d_eta[right] = (resolvent * n * e_right * np.sin(ef[right, None] * n)).sum(axis=-1)

    d_zeta = d_zeta.reshape(shape)
    d_eta = d_eta.reshape(shape)
    return d_zeta, d_eta


def field_gradient(exp: ResonantExpansion, x1, x2):
    """Cartesian gradient of u - H; shape (..., 2), complex."""
    zeta, eta = to_bipolar(exp.frame, x1, x2)
    d_zeta, d_eta = _partials_at_bipolar(exp, zeta, eta)
    return bipolar_gradient_to_cartesian(exp.frame, d_zeta, d_eta, zeta, eta)


def gradient_at_origin(exp: ResonantExpansion, variant: str = "derived"):
    """e1-directed gradient of u - H at the origin, as a complex 2-vector.

    ``variant="derived"`` differentiates the exterior series analytically;
    ``variant="printed"`` evaluates the alternative closed form kept for the
    adjudication report (see module docstring).
    """
    if variant not in GRADIENT_VARIANTS:
        raise ValueError(f"variant must be one of {GRADIENT_VARIANTS}")
    n = np.arange(1, exp.order + 1)
    s = exp.frame.s
    eigs = 0.5 * np.exp(-2.0 * n * s)
    signs = np.where(n % 2 == 0, 1.0, -1.0)
    if variant == "derived":
        gx = -4.0 * (n * np.exp(-2.0 * n * s) * signs / (exp.lam - eigs)).sum()
    else:
        gx = 4.0 * (n * np.exp(-n * s) * signs / (exp.lam - eigs)).sum()
    return np.array([gx, 0.0 + 0.0j])


def pole_order_if_hit(frame: BipolarFrame, lam: complex, order: int):
    """Index n of the eigenvalue hit exactly by lam within the truncation, else None."""
    try:
        build_resonant(frame, lam, order)
    except ResonanceSingularityError as err:
        return err.order
    return None
