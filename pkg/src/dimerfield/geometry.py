"""Bipolar coordinates for a pair of equal disks.

Two disks of radius R separated by a gap d sit on the x1-axis with centers
at (-(R + d/2), 0) and (+(R + d/2), 0).  The bipolar coordinates (zeta, eta)
are defined through

    x1 = alpha * sinh(zeta) / (cosh(zeta) - cos(eta)),
    x2 = alpha * sin(eta)  / (cosh(zeta) - cos(eta)),

or equivalently through the Mobius map z = alpha * (w + 1)/(w - 1) with
w = exp(zeta - i*eta).  The scale parameter

    alpha = sqrt(d * (R + d/4)),      sinh(s) = alpha / R,

makes the two disk boundaries exact coordinate circles: the left boundary is
{zeta = -s} and the right one {zeta = +s}.  The exterior of both disks is the
strip |zeta| < s, eta ranges over (-pi, pi], and (zeta, eta) = (0, 0) is the
image of the point at infinity.  The foci (+/-alpha, 0) correspond to
zeta -> +/-infinity.

The map is conformal with scale factor h(zeta, eta) = (cosh zeta - cos eta)/alpha,
line element d(sigma) = d(eta)/h on a boundary circle, and gradient

    grad g = h * (dg/dzeta * e_zeta + dg/deta * e_eta)

for the orthonormal frame (e_zeta, e_eta) returned by :func:`unit_vectors`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, SingularPointError

# Points closer to a focus than FOCUS_TOL*alpha are rejected rather than
# regularized; nothing downstream needs values there.
FOCUS_TOL = 1e-13


@dataclass(frozen=True)
class DiskPair:
    """Two equal disks of radius ``radius`` with boundary gap ``gap``."""

    radius: float
    gap: float

    def __post_init__(self):
        if not self.radius > 0:
            raise GeometryError(f"radius must be positive, got {self.radius}")
        if not self.gap > 0:
            raise GeometryError(f"gap must be positive, got {self.gap}")

    @property
    def half_center_distance(self) -> float:
        """Distance from the origin to either disk center, R + d/2."""
        return self.radius + self.gap / 2.0

    @property
    def centers(self) -> np.ndarray:
        """Disk centers, shape (2, 2); row j is the center of disk j+1."""
        c = self.half_center_distance
        return np.array([[-c, 0.0], [c, 0.0]])

    def region(self, x1, x2) -> np.ndarray:
        """0 for exterior points, 1 inside the left disk, 2 inside the right."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        c = self.half_center_distance
        in1 = (x1 + c) ** 2 + x2**2 < self.radius**2
        in2 = (x1 - c) ** 2 + x2**2 < self.radius**2
        return np.where(in1, 1, np.where(in2, 2, 0))


@dataclass(frozen=True)
class BipolarFrame:
    """Bipolar coordinate system adapted to a :class:`DiskPair`.

    ``alpha`` is the conformal scale and ``s`` the boundary coordinate, so
    the disk boundaries are {zeta = -s} (left) and {zeta = +s} (right).
    """

    pair: DiskPair
    alpha: float
    s: float

    @property
    def radius(self) -> float:
        return self.pair.radius

    @property
    def gap(self) -> float:
        return self.pair.gap


def derive_frame(pair: DiskPair) -> BipolarFrame:
    """Build the bipolar frame with alpha = sqrt(d(R + d/4)), sinh(s) = alpha/R.

    Self-checks that the derived parameters reproduce the disk geometry: the
    leftmost point of the left disk must land on the level set {zeta = -s}.
    """
    R, d = pair.radius, pair.gap
    alpha = np.sqrt(d * (R + d / 4.0))
    s = np.arcsinh(alpha / R)
    frame = BipolarFrame(pair=pair, alpha=alpha, s=s)

    # alpha*coth(s) must equal R + d/2 (center abscissa) and the leftmost
    # boundary point (-alpha*coth(s) - R, 0) must sit on {zeta = -s}.
    center = alpha * np.cosh(s) / np.sinh(s)
    if abs(center - pair.half_center_distance) > 1e-12 * max(1.0, center):
        raise GeometryError("derived frame is inconsistent with the disk centers")
    zeta, _ = to_bipolar(frame, -center - R, 0.0)
    if abs(zeta + s) > 1e-10 * max(1.0, s):
        raise GeometryError("leftmost boundary point does not lie on {zeta = -s}")
    return frame


def frame_for(radius: float, gap: float) -> BipolarFrame:
    """Shorthand for ``derive_frame(DiskPair(radius, gap))``."""
    return derive_frame(DiskPair(radius, gap))


def _check_regular(zeta, eta):
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if np.any((zeta == 0.0) & (eta == 0.0)):
        raise SingularPointError(
            "(zeta, eta) = (0, 0) is the image of the point at infinity"
        )
    return zeta, eta


def to_cartesian(frame: BipolarFrame, zeta, eta):
    """Map bipolar (zeta, eta) to Cartesian (x1, x2).  Vectorized."""
    zeta, eta = _check_regular(zeta, eta)
    denom = np.cosh(zeta) - np.cos(eta)
    x1 = frame.alpha * np.sinh(zeta) / denom
    x2 = frame.alpha * np.sin(eta) / denom
    return x1, x2


def to_bipolar(frame: BipolarFrame, x1, x2):
    """Map Cartesian (x1, x2) to bipolar (zeta, eta), eta in (-pi, pi].

    The branch is fixed so that zeta < -s inside the left disk and
    zeta > s inside the right disk.  Raises for points at the foci.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    z = x1 + 1j * x2
    a = frame.alpha
    if np.any(np.abs(z - a) < FOCUS_TOL * a) or np.any(np.abs(z + a) < FOCUS_TOL * a):
        raise SingularPointError("point coincides with a focus (+/-alpha, 0)")
    w = (z + a) / (z - a)
    zeta = np.log(np.abs(w))
    eta = -np.angle(w)
    # np.angle returns values in (-pi, pi]; -angle lands in [-pi, pi).
    # Ties at -pi are mapped to +pi by convention.
    eta = np.where(eta == -np.pi, np.pi, eta)
    if x1.ndim == 0:
        return float(zeta), float(eta)
    return zeta, eta


def scale_factor(frame: BipolarFrame, zeta, eta):
    """Conformal scale factor h = (cosh(zeta) - cos(eta)) / alpha > 0."""
    zeta, eta = _check_regular(zeta, eta)
    return (np.cosh(zeta) - np.cos(eta)) / frame.alpha


def unit_vectors(frame: BipolarFrame, zeta, eta):
    """Orthonormal bipolar basis (e_zeta, e_eta) in Cartesian components.

    Computed by differentiating the coordinate map analytically:

        e_zeta = (1 - cosh(zeta)cos(eta),  -sinh(zeta)sin(eta)) / D,
        e_eta  = (-sinh(zeta)sin(eta),  cosh(zeta)cos(eta) - 1) / D,

    with D = cosh(zeta) - cos(eta).  Returns two arrays of shape (..., 2).
    """
    zeta, eta = _check_regular(zeta, eta)
    ch, sh = np.cosh(zeta), np.sinh(zeta)
    co, si = np.cos(eta), np.sin(eta)
    denom = ch - co
    e_zeta = np.stack(
        [(1.0 - ch * co) / denom, -(sh * si) / denom], axis=-1
    )
    e_eta = np.stack(
        [-(sh * si) / denom, (ch * co - 1.0) / denom], axis=-1
    )
    return e_zeta, e_eta


def bipolar_gradient_to_cartesian(frame: BipolarFrame, dg_dzeta, dg_deta, zeta, eta):
    """Assemble the Cartesian gradient h*(dg/dzeta e_zeta + dg/deta e_eta).

    The partial derivatives may be real or complex; the result has shape
    (..., 2) in Cartesian components.
    """
    h = scale_factor(frame, zeta, eta)
    e_zeta, e_eta = unit_vectors(frame, zeta, eta)
    dg_dzeta = np.asarray(dg_dzeta)
    dg_deta = np.asarray(dg_deta)
    return (h * dg_dzeta)[..., None] * e_zeta + (h * dg_deta)[..., None] * e_eta


def normal_derivative_factor(frame: BipolarFrame, boundary_zeta: float):
    """Sign and scale of the outward normal derivative on {zeta = c}:

    du/dnu = -sgn(c) * h(c, eta) * du/dzeta.
    """
    return -np.sign(boundary_zeta)


def harmonic_series_x1(frame: BipolarFrame, zeta, eta, n_terms: int):
    """Partial sum of the harmonic expansion of the coordinate function x1:

        x1 = sgn(zeta) * alpha * [1 + 2 * sum_{n>=1} exp(-n|zeta|) cos(n eta)].

    Requires zeta != 0 (the series does not converge absolutely there).
    """
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if np.any(zeta == 0.0):
        raise SingularPointError("x1 series requires zeta != 0")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    n = np.arange(1, n_terms + 1)
    terms = np.exp(-np.abs(zeta)[..., None] * n) * np.cos(eta[..., None] * n)
    out = np.sign(zeta) * frame.alpha * (1.0 + 2.0 * terms.sum(axis=-1))
    return out if out.ndim else float(out)


def harmonic_series_x2(frame: BipolarFrame, zeta, eta, n_terms: int):
    """Partial sum of x2 = 2*alpha * sum_{n>=1} exp(-n|zeta|) sin(n eta)."""
    zeta = np.asarray(zeta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if np.any(zeta == 0.0):
        raise SingularPointError("x2 series requires zeta != 0")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    n = np.arange(1, n_terms + 1)
    terms = np.exp(-np.abs(zeta)[..., None] * n) * np.sin(eta[..., None] * n)
    out = 2.0 * frame.alpha * terms.sum(axis=-1)
    return out if out.ndim else float(out)


def boundary_circle_residual(frame: BipolarFrame, c: float, x1, x2):
    """Residual of the coordinate-circle equation for the level set {zeta = c}:

        f(x) = (x1 - alpha*coth(c))^2 + x2^2 - (alpha/sinh(c))^2.

    Vanishes identically on the level set; used as a consistency check.
    """
    if c == 0.0:
        raise ValueError("zeta = 0 is the x2-axis, not a circle")
    a = frame.alpha
    return (x1 - a * np.cosh(c) / np.sinh(c)) ** 2 + np.asarray(x2) ** 2 - (a / np.sinh(c)) ** 2
