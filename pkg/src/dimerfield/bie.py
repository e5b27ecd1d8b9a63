"""Nystrom boundary-integral solver for the two-disk transmission problem.

Independent ground truth for the series schemes.  The block operator

    K* = [ K*_{B1}            d/dnu1 S_{B2} ]
         [ d/dnu2 S_{B1}      K*_{B2}       ]

is discretized with the trapezoid rule at P equispaced nodes per circle
(spectrally accurate: all kernels between and on disjoint circles are smooth
and periodic; on a circle of radius R the NP kernel is the constant 1/(4 pi R),
which also supplies the diagonal limit).  The scattered field is recovered
from the solution of (lambda I - K*) phi = dH/dnu as

    u - H = S_{B1}[phi_1] + S_{B2}[phi_2],

with the density interpolated trigonometrically (FFT zero-padding) before
near-boundary evaluation so targets in the gap keep spectral accuracy.

Densities are vectors of node values on (left circle nodes, right circle
nodes); all integrals use the arclength weights 2 pi R / P.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .cgpt import HarmonicSource
from .errors import EvaluationAccuracyError, GeometryError, NearSingularSolveError
from .geometry import DiskPair

# Targets must sit at least this many (possibly upsampled) node spacings away
# from each circle for the evaluation quadrature to be trusted.
_SPACING_MARGIN = 5.0
_MAX_UPSAMPLE = 8
_CONDITION_LIMIT = 1e14


@dataclass(frozen=True)
class BoundaryMesh:
    """Quadrature nodes on the two circles; disk 1 occupies the first P rows."""

    pair: DiskPair
    nodes_per_disk: int
    nodes: np.ndarray = field(repr=False)  # (2P, 2)
    normals: np.ndarray = field(repr=False)  # (2P, 2)
    weights: np.ndarray = field(repr=False)  # (2P,)
    angles: np.ndarray = field(repr=False)  # (P,) local angle grid, shared

    def disk_slice(self, disk: int) -> slice:
        P = self.nodes_per_disk
        return slice(0, P) if disk == 1 else slice(P, 2 * P)


def build_mesh(pair: DiskPair, nodes_per_disk: int) -> BoundaryMesh:
    if nodes_per_disk < 16 or nodes_per_disk % 2 != 0:
        raise GeometryError("nodes_per_disk must be an even integer >= 16")
    P = nodes_per_disk
    R = pair.radius
    theta = 2.0 * np.pi * np.arange(P) / P
    unit = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    nodes = np.concatenate([pair.centers[0] + R * unit, pair.centers[1] + R * unit])
    normals = np.concatenate([unit, unit])
    weights = np.full(2 * P, 2.0 * np.pi * R / P)
    return BoundaryMesh(
        pair=pair, nodes_per_disk=P, nodes=nodes, normals=normals, weights=weights, angles=theta
    )


class BIESystem:
    """Assembled dense NP matrix plus cached spectral data for one geometry."""

    def __init__(self, mesh: BoundaryMesh, matrix: np.ndarray):
        self.mesh = mesh
        self.matrix = matrix
        self._eigvals: np.ndarray | None = None
        self._eigvecs: np.ndarray | None = None

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        if self._eigvals is None:
            self._eigvals = np.linalg.eigvals(self.matrix)
        return self._eigvals

    def eigensystem(self):
        if self._eigvecs is None:
            vals, vecs = np.linalg.eig(self.matrix)
            self._eigvals, self._eigvecs = vals, vecs
        return self._eigvals, self._eigvecs


def discretize(pair: DiskPair, nodes_per_disk: int = 256) -> BIESystem:
    """Assemble the 2P x 2P Nystrom matrix of the block NP operator."""
    if pair.gap <= 0:
        raise GeometryError("disks must be disjoint")
    mesh = build_mesh(pair, nodes_per_disk)
    # Diagonal limit of the NP kernel on a smooth curve is kappa/(4 pi).
    diag = np.full(2 * mesh.nodes_per_disk, 1.0 / (4.0 * np.pi * pair.radius))
    matrix = _kernels.assemble_np_matrix(mesh.nodes, mesh.normals, mesh.weights, diag)
    return BIESystem(mesh, matrix)


def _project_zero_mean(system: BIESystem, values: np.ndarray) -> np.ndarray:
    """Remove the weighted mean of ``values`` on each circle separately."""
    out = values.astype(complex, copy=True)
    for disk in (1, 2):
        sl = system.mesh.disk_slice(disk)
        w = system.mesh.weights[sl]
        out[sl] -= (w @ out[sl]) / w.sum()
    return out


def normal_derivative_source(system: BIESystem, source: HarmonicSource) -> np.ndarray:
    """dH/dnu sampled at the quadrature nodes."""
    grad = source.gradient(system.mesh.nodes[:, 0], system.mesh.nodes[:, 1])
    return np.einsum("ij,ij->i", grad, system.mesh.normals)


def solve_densities(system: BIESystem, lam: complex, source, project: bool = True):
    """Solve (lambda I - K*) phi = dH/dnu for the boundary densities.

    ``source`` is a :class:`HarmonicSource` or an explicit rhs vector.  The
    rhs and the solution are projected onto the per-circle zero-mean space.
    Raises :class:`NearSingularSolveError` when lambda is too close to the
    discrete spectrum (condition estimate above 1e14).
    """
    if isinstance(source, HarmonicSource):
        rhs = normal_derivative_source(system, source)
    else:
        rhs = np.asarray(source, dtype=complex)
    if project:
        rhs = _project_zero_mean(system, rhs)

    eigs = system.eigenvalues()
    gaps = np.abs(lam - eigs)
    nearest = float(eigs.real[np.argmin(gaps)])
    cond_estimate = float(gaps.max() / gaps.min()) if gaps.min() > 0 else np.inf
    if cond_estimate > _CONDITION_LIMIT:
        raise NearSingularSolveError(lam, nearest, cond_estimate)

    A = lam * np.eye(system.size) - system.matrix
    phi = np.linalg.solve(A, rhs)
    if project:
        phi = _project_zero_mean(system, phi)
    return phi


def _upsample_periodic(values: np.ndarray, factor: int) -> np.ndarray:
    """Trigonometric interpolation of periodic samples onto a factor-times grid."""
    if factor == 1:
        return values
    P = values.shape[0]
    spec = np.fft.fft(values)
    out = np.zeros(P * factor, dtype=complex)
    half = P // 2
    out[:half] = spec[:half]
    out[-half:] = spec[-half:]
    # split the Nyquist coefficient symmetrically
    out[half] = 0.5 * spec[half]
    out[P * factor - half] += 0.5 * spec[half]
    return np.fft.ifft(out) * factor


def _required_upsampling(system: BIESystem, points: np.ndarray) -> int:
    """Smallest power-of-two upsampling that keeps all targets in the safe zone."""
    mesh = system.mesh
    R = mesh.pair.radius
    d1 = np.abs(np.hypot(points[:, 0] - mesh.pair.centers[0][0], points[:, 1]) - R)
    d2 = np.abs(np.hypot(points[:, 0] - mesh.pair.centers[1][0], points[:, 1]) - R)
    dist = min(d1.min(), d2.min())
    factor = 1
    while _SPACING_MARGIN * (2.0 * np.pi * R / (factor * mesh.nodes_per_disk)) >= dist:
        factor *= 2
        if factor > _MAX_UPSAMPLE:
            raise EvaluationAccuracyError(
                f"target at distance {dist:.3g} from a boundary is inside the "
                f"quadrature accuracy margin even at {_MAX_UPSAMPLE}x upsampling"
            )
    return factor


def _upsampled_sources(system: BIESystem, density: np.ndarray, factor: int):
    mesh = system.mesh
    P = mesh.nodes_per_disk
    R = mesh.pair.radius
    theta = 2.0 * np.pi * np.arange(P * factor) / (P * factor)
    unit = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    sources = np.concatenate([mesh.pair.centers[0] + R * unit, mesh.pair.centers[1] + R * unit])
    dens = np.concatenate(
        [
            _upsample_periodic(density[:P].astype(complex), factor),
            _upsample_periodic(density[P:].astype(complex), factor),
        ]
    )
    weights = np.full(2 * P * factor, 2.0 * np.pi * R / (P * factor))
    return sources, weights, dens


def evaluate_field(system: BIESystem, density: np.ndarray, points):
    """Scattered field u - H = S_B1[phi_1] + S_B2[phi_2] at off-boundary points."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    factor = _required_upsampling(system, points)
    sources, weights, dens = _upsampled_sources(system, density, factor)
    out = _kernels.eval_single_layer(points, sources, weights, dens.astype(complex))
    return out if out.size > 1 else complex(out[0])


def evaluate_gradient(system: BIESystem, density: np.ndarray, points):
    """Gradient of the scattered field at off-boundary points; (T, 2) complex."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    factor = _required_upsampling(system, points)
    sources, weights, dens = _upsampled_sources(system, density, factor)
    out = _kernels.eval_single_layer_gradient(points, sources, weights, dens.astype(complex))
    return out if points.shape[0] > 1 else out[0]


def constant_mode_fraction(system: BIESystem, vectors: np.ndarray) -> np.ndarray:
    """Per-column fraction of the (non-physical) constant-density content."""
    P = system.mesh.nodes_per_disk
    m1 = vectors[:P].mean(axis=0)
    m2 = vectors[P:].mean(axis=0)
    const_norm2 = P * (np.abs(m1) ** 2 + np.abs(m2) ** 2)
    total_norm2 = (np.abs(vectors) ** 2).sum(axis=0)
    return np.sqrt(const_norm2 / total_norm2)


def numeric_spectrum(
    system: BIESystem,
    count: int,
    drop_constant_modes: bool = True,
    degeneracy_tol: float = 1e-8,
):
    """Largest-|.| distinct eigenvalues of the discretized operator, descending.

    Every eigenvalue of the two-circle operator is doubly degenerate (the
    cos/sin rotational pair); values closer than ``degeneracy_tol`` are
    reported once.  The density space excludes per-circle constants, so by
    default eigenpairs whose eigenvectors are dominated by constant content
    are filtered out; pass ``drop_constant_modes=False`` for the raw matrix
    spectrum (with ``degeneracy_tol=0`` to keep multiplicities).
    """
    if count > system.size:
        raise ValueError("count exceeds the matrix dimension")
    vals, vecs = system.eigensystem()
    keep = np.ones(vals.shape[0], dtype=bool)
    if drop_constant_modes:
        keep = constant_mode_fraction(system, vecs) < 0.5
    vals = np.real(vals[keep])
    vals = vals[np.argsort(-np.abs(vals))]
    out: list[float] = []
    for v in vals:
        if len(out) == count:
            break
        if degeneracy_tol > 0 and any(abs(v - u) < degeneracy_tol for u in out):
            continue
        out.append(float(v))
    return np.array(out)


def apply_np_operator(system: BIESystem, density: np.ndarray) -> np.ndarray:
    """Matrix-vector product with the discretized K* (for eigen-relation tests)."""
    return system.matrix @ np.asarray(density, dtype=complex)


def _single_layer_self_multipliers(P: int, R: float) -> np.ndarray:
    """Fourier multipliers of the single-layer operator on a circle of radius R.

    S[e^{i m theta}] = -(R / 2|m|) e^{i m theta} for m != 0, and S[1] = R ln R.
    """
    freqs = np.fft.fftfreq(P, d=1.0 / P)  # 0, 1, ..., P/2-1, -P/2, ...
    mult = np.empty(P)
    mult[0] = R * np.log(R)
    nz = freqs != 0
    mult[nz] = -R / (2.0 * np.abs(freqs[nz]))
    return mult


def apply_single_layer(system: BIESystem, density: np.ndarray) -> np.ndarray:
    """Boundary trace of the single-layer potential of a two-circle density.

    Self-circle contributions are applied spectrally (exact circle Fourier
    multipliers); cross-circle contributions use the smooth trapezoid rule.
    """
    mesh = system.mesh
    P = mesh.nodes_per_disk
    density = np.asarray(density, dtype=complex)
    mult = _single_layer_self_multipliers(P, mesh.pair.radius)
    out = np.empty_like(density)
    out[:P] = np.fft.ifft(mult * np.fft.fft(density[:P]))
    out[P:] = np.fft.ifft(mult * np.fft.fft(density[P:]))
    # smooth cross terms
    out[:P] += _kernels.eval_single_layer(
        mesh.nodes[:P], mesh.nodes[P:], mesh.weights[P:], density[P:]
    )
    out[P:] += _kernels.eval_single_layer(
        mesh.nodes[P:], mesh.nodes[:P], mesh.weights[:P], density[:P]
    )
    return out


def inner_product_star(system: BIESystem, phi: np.ndarray, psi: np.ndarray) -> complex:
    """Energy inner product <phi, psi>_* = -<phi, S[psi]>_{L2} by quadrature."""
    s_psi = apply_single_layer(system, psi)
    return complex(-(system.mesh.weights * np.asarray(phi) * np.conj(s_psi)).sum())


def cgpt_quadrature(
    system: BIESystem,
    lam: complex,
    n: int,
    m: int,
    source_kind: str = "c",
    test_kind: str = "c",
) -> complex:
    """CGPT entry by direct quadrature: ∮ P_m (lambda I - K*)^{-1}[dP_n/dnu] dsigma.

    The independent check for :func:`dimerfield.cgpt.cgpt_block`.
    """
    if source_kind not in ("c", "s") or test_kind not in ("c", "s"):
        raise ValueError("kinds must be 'c' or 's'")
    size = max(n, m)
    cos_coeffs = np.zeros(size)
    sin_coeffs = np.zeros(size)
    if source_kind == "c":
        cos_coeffs[n - 1] = 1.0
    else:
        sin_coeffs[n - 1] = 1.0
    src = HarmonicSource(cos_coeffs=cos_coeffs, sin_coeffs=sin_coeffs)
    phi = solve_densities(system, lam, src)
    x1, x2 = system.mesh.nodes[:, 0], system.mesh.nodes[:, 1]
    zm = (x1 + 1j * x2) ** m
    test_vals = np.real(zm) if test_kind == "c" else np.imag(zm)
    return complex((system.mesh.weights * test_vals * phi).sum())
