"""Plasmon hybridization: single-disk modes and per-disk multipole expansion.

A single disk B_j has the NP eigenvalue 0 with eigenfunctions e^{i m theta_j}
in the local polar angle about its center; their single-layer potentials are

    S_{B_j}[e^{i m theta_j}](r_j, theta_j) = -(R^{|m|+1} / 2|m|) e^{i m theta_j} / r_j^{|m|},
    r_j > R.

The two-disk eigenfunctions decompose over these single-disk modes through
the change-of-basis coefficients

    b_nm = R^{|m|-1} e^{-|n|s} F(|n|, |m|, s) / (2 alpha^{|m|} (coth s + 1)^{|m|})
         = e^{-(|n|+|m|)s} F(|n|, |m|, s) / (2 R),

    F(k, m, s) = sum_{l=0}^{min(k,m)} (-1)^l C(m,l) C(m+k-l-1, m-1) e^{2ls},

using the identity alpha (coth s + 1) = R e^s.  The table is symmetric in
+/-m and enters all field quantities only through conjugate +/-n pairs, so
the scattered field for H = x1 carries the per-disk multipole coefficients

    M_m^{(1)} = (-1)^{m+1} M_m^{(2)}
              = (R^{m+1}/m) sum_{n>=1} alpha n e^{-ns} b_nm / (lambda - lambda_n^+),

and (pairing +/-m, which forces M_{-m} = M_m)

    (u - H)(x) = sum_{m>=1} 2 [ M_m^{(1)} cos(m theta_1)/r_1^m
                              + M_m^{(2)} cos(m theta_2)/r_2^m ].

Differentiating at the origin gives the e1 component

    e1 . grad(u - H)(0, 0) = -4 sum_{m>=1} m M_m^{(1)} / (R + d/2)^{m+1};

a "printed" variant with prefactor -2 is retained for the adjudication
report (the finite-difference and boundary-integral checks select -4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import OutOfDomainError, ResonanceSingularityError
from .geometry import BipolarFrame

GRADIENT_VARIANTS = ("derived", "printed")

# Relative size below which the alternating sum for F is considered
# cancellation-dominated and recomputed in high precision.
_F_CANCEL_GUARD = 1e-6


def F_coeff(k: int, m: int, s: float) -> float:
    """F(k, m, s) with exact integer binomials.

    The sum alternates with weights e^{2ls}; when the result is tiny against
    the largest term the double-precision value is cancellation-dominated and
    is recomputed with 50-digit arithmetic.
    """
    if k < 0 or m < 1:
        raise ValueError("F requires k >= 0 and m >= 1")
    terms = [
        (-1) ** l * math.comb(m, l) * math.comb(m + k - l - 1, m - 1) * math.exp(2.0 * l * s)
        for l in range(min(k, m) + 1)
    ]
    total = math.fsum(terms)
    largest = max(abs(t) for t in terms)
    if largest > 0 and abs(total) < _F_CANCEL_GUARD * largest:
        with mpmath.workdps(50):
            total = float(
                mpmath.fsum(
                    (-1) ** l
                    * math.comb(m, l)
                    * math.comb(m + k - l - 1, m - 1)
                    * mpmath.e ** (2 * l * mpmath.mpf(s))
                    for l in range(min(k, m) + 1)
                )
            )
    return total


def b_coeff(n: int, m: int, frame: BipolarFrame) -> float:
    """Change-of-basis coefficient b_nm, symmetric in +/-m (m != 0, n != 0)."""
    if m == 0:
        raise ValueError("m = 0 is excluded from the single-disk mode basis")
    if n == 0:
        raise ValueError("n = 0 is excluded from the two-disk mode index")
    n, m = abs(n), abs(m)
    return math.exp(-(n + m) * frame.s) * F_coeff(n, m, frame.s) / (2.0 * frame.radius)


def b_table(frame: BipolarFrame, n_max: int, m_max: int) -> np.ndarray:
    """Table b[n-1, m-1] = b_nm for n = 1..n_max, m = 1..m_max."""
    out = np.empty((n_max, m_max))
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            out[n - 1, m - 1] = b_coeff(n, m, frame)
    return out


def single_disk_mode_potential(frame: BipolarFrame, disk: int, m: int, x1, x2):
    """S_{B_j}[e^{i m theta_j}] at exterior point(s) of disk ``disk`` (1 or 2)."""
    if disk not in (1, 2):
        raise ValueError("disk must be 1 or 2")
    if m == 0:
        raise ValueError("m = 0 is excluded")
    R = frame.radius
    cx = frame.pair.centers[disk - 1]
    w = (np.asarray(x1, dtype=float) - cx[0]) + 1j * (np.asarray(x2, dtype=float) - cx[1])
    r = np.abs(w)
    if np.any(r <= R):
        raise OutOfDomainError("single-disk multipole potential is exterior-only")
    k = abs(m)
    phase = (w / r) ** m
    out = -(R ** (k + 1) / (2.0 * k)) * phase / r**k
    return out if np.ndim(out) else complex(out)


def hybrid_decomposition(n: int, sign: int, frame: BipolarFrame, m_max: int):
    """Single-disk mode coefficients of the two-disk eigenfunction (n, sign).

    Returns (on_disk1, on_disk2): arrays indexed by m = 1..m_max with

        on_disk1[m-1] = c_n^{sign} * b_nm,
        on_disk2[m-1] = -sign * (-1)^m * c_n^{sign} * b_nm,

    the +/-m entries being equal (symmetric table convention).
    """
    from . import spectrum

    c = spectrum.normalization(n, sign, frame)
    m = np.arange(1, m_max + 1)
    b = np.array([b_coeff(abs(n), int(mm), frame) for mm in m])
    on1 = c * b
    on2 = -sign * ((-1.0) ** m) * c * b
    return on1, on2


@dataclass(frozen=True)
class MultipoleSet:
    """Per-disk multipole coefficients M_m^{(1)}, m = 1..order.

    ``disk2(m)`` returns M_m^{(2)} = (-1)^{m+1} M_m^{(1)}; the mirror identity
    holds exactly by construction.  ``tail_estimate`` bounds the truncation
    error of the inner spectral sum.
    """

    frame: BipolarFrame
    lam: complex
    order: int
    inner_order: int
    coefficients: np.ndarray = field(repr=False)  # M_m^{(1)}, m = 1..order
    tail_estimate: float = 0.0

    def disk2(self, m: int) -> complex:
        return (-1.0) ** (m + 1) * self.coefficients[m - 1]


def multipole_coeffs(
    frame: BipolarFrame,
    lam: complex,
    order: int,
    inner_order: int = 200,
    b: np.ndarray | None = None,
) -> MultipoleSet:
    """Build M_m^{(1)} for m = 1..order with the inner sum truncated at inner_order.

    ``b`` may carry a precomputed :func:`b_table` (at least inner_order x order)
    so frequency sweeps reuse the lambda-independent part.
    """
    if order < 1 or inner_order < 1:
        raise ValueError("order and inner_order must be >= 1")
    n = np.arange(1, inner_order + 1)
    eigs = 0.5 * np.exp(-2.0 * n * frame.s)
    denom = lam - eigs
    hit = np.nonzero(denom == 0)[0]
    if hit.size:
        k = int(n[hit[0]])
        raise ResonanceSingularityError(k, +1, eigs[hit[0]])
    if b is None:
        b = b_table(frame, inner_order, order)
    if b.shape[0] < inner_order or b.shape[1] < order:
        raise ValueError("precomputed b table is too small for the requested orders")

    weight = frame.alpha * n * np.exp(-n * frame.s) / denom
    m = np.arange(1, order + 1)
    coeff = (frame.radius ** (m + 1) / m) * (weight @ b[:inner_order, :order])

    dist = float(np.min(np.abs(lam - eigs)))
    tail = math.exp(-inner_order * frame.s) / dist if dist > 0 else math.inf
    return MultipoleSet(
        frame=frame,
        lam=lam,
        order=order,
        inner_order=inner_order,
        coefficients=coeff,
        tail_estimate=tail,
    )


def _local_frames(mp: MultipoleSet, x1, x2):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    c = mp.frame.pair.half_center_distance
    w1 = (x1 + c) + 1j * x2
    w2 = (x1 - c) + 1j * x2
    R = mp.frame.radius
    if np.any(np.abs(w1) <= R) or np.any(np.abs(w2) <= R):
        raise OutOfDomainError("multipole field is defined outside both disks")
    return w1, w2


def field(mp: MultipoleSet, x1, x2):
    """Scattered field u - H outside both disks.

    Sums 2 [M_m^{(1)} cos(m theta_1)/r_1^m + M_m^{(2)} cos(m theta_2)/r_2^m],
    i.e. the conjugate +/-m pairs of the per-disk expansion.
    """
    w1, w2 = _local_frames(mp, x1, x2)
    m = np.arange(1, mp.order + 1)
    sign2 = (-1.0) ** (m + 1)
    # cos(m theta)/r^m = Re(w^-m) for w = r e^{i theta}
    re1 = np.real(w1[..., None] ** (-m))
    re2 = np.real(w2[..., None] ** (-m))
    out = 2.0 * (mp.coefficients * (re1 + sign2 * re2)).sum(axis=-1)
    return out if np.ndim(out) else complex(out)


def field_gradient(mp: MultipoleSet, x1, x2):
    """Cartesian gradient of the scattered field; shape (..., 2), complex."""
    w1, w2 = _local_frames(mp, x1, x2)
    m = np.arange(1, mp.order + 1)
    sign2 = (-1.0) ** (m + 1)
    # d/dx1 Re(w^-m) = Re(-m w^{-m-1}),  d/dx2 Re(w^-m) = -Im(-m w^{-m-1});
    # the (possibly complex) coefficients multiply the real geometric factors.
    g1 = -m * w1[..., None] ** (-m - 1)
    g2 = -m * w2[..., None] ** (-m - 1)
    geom = g1 + sign2 * g2
    gx = 2.0 * (mp.coefficients * np.real(geom)).sum(axis=-1)
    gy = -2.0 * (mp.coefficients * np.imag(geom)).sum(axis=-1)
    return np.stack([gx, gy], axis=-1)


def gradient_at_origin(mp: MultipoleSet, variant: str = "derived"):
    """e1-directed gradient of u - H at the origin, as a complex 2-vector.

    ``variant="derived"`` differentiates the pair-summed expansion (prefactor
    -4); ``variant="printed"`` keeps the -2 prefactor form for the
    adjudication report.
    """
    if variant not in GRADIENT_VARIANTS:
        raise ValueError(f"variant must be one of {GRADIENT_VARIANTS}")
    m = np.arange(1, mp.order + 1)
    c0 = mp.frame.pair.half_center_distance
    base = (m * mp.coefficients / c0 ** (m + 1)).sum()
    gx = -4.0 * base if variant == "derived" else -2.0 * base
    return np.array([gx, 0.0 + 0.0j])