"""Hot numeric kernels: operator assembly and layer-potential evaluation.

These are the O(P^2) / O(targets * P) inner loops of the boundary-integral
solver.  Each kernel has a pure-numpy implementation and a numba @njit
twin; the active backend is chosen at import time.  Set the environment
variable ``DIMERFIELD_DISABLE_NUMBA=1`` to force the numpy path (or it is
selected automatically when numba is unavailable).  Both implementations
are kept importable so the test suite can assert they agree and
``benchmarks/bench_kernels.py`` can time them side by side.
"""

from __future__ import annotations

import os

import numpy as np

_TWO_PI = 2.0 * np.pi


def assemble_np_matrix_numpy(nodes, normals, weights, diag_values):
    """Nystrom matrix of the adjoint double-layer (NP) kernel.

    K[i, j] = w_j / (2 pi) * <x_i - y_j, nu_i> / |x_i - y_j|^2 for i != j and
    K[i, i] = diag_values[i] * w_i (smooth diagonal limit, supplied by the
    caller as kappa_i / (4 pi)).
    """
    dx = nodes[:, None, 0] - nodes[None, :, 0]
    dy = nodes[:, None, 1] - nodes[None, :, 1]
    r2 = dx * dx + dy * dy
    np.fill_diagonal(r2, 1.0)
    num = dx * normals[:, None, 0] + dy * normals[:, None, 1]
    mat = num / r2 / _TWO_PI * weights[None, :]
    np.fill_diagonal(mat, diag_values * weights)
    return mat


def eval_single_layer_numpy(targets, sources, weights, density):
    """Single-layer potential sum_j w_j/(2 pi) ln|x - y_j| * phi_j at targets."""
    dx = targets[:, None, 0] - sources[None, :, 0]
    dy = targets[:, None, 1] - sources[None, :, 1]
    r2 = dx * dx + dy * dy
    return (0.5 * np.log(r2) / _TWO_PI * weights[None, :]) @ density


def eval_single_layer_gradient_numpy(targets, sources, weights, density):
    """Gradient of the single-layer potential; returns (T, 2) complex."""
    dx = targets[:, None, 0] - sources[None, :, 0]
    dy = targets[:, None, 1] - sources[None, :, 1]
    inv_r2 = 1.0 / (dx * dx + dy * dy)
    wphi = weights * density
    gx = (dx * inv_r2) @ wphi / _TWO_PI
    gy = (dy * inv_r2) @ wphi / _TWO_PI
    return np.stack([gx, gy], axis=-1)


def _numba_twins():
    import numba

    @numba.njit(cache=True)
    def assemble_np_matrix_numba(nodes, normals, weights, diag_values):
        n = nodes.shape[0]
        mat = np.empty((n, n))
        for i in range(n):
            xi = nodes[i, 0]
            yi = nodes[i, 1]
            nx = normals[i, 0]
            ny = normals[i, 1]
            for j in range(n):
                if i == j:
                    mat[i, j] = diag_values[i] * weights[i]
                else:
                    dx = xi - nodes[j, 0]
                    dy = yi - nodes[j, 1]
                    mat[i, j] = (
                        (dx * nx + dy * ny) / (dx * dx + dy * dy) / _TWO_PI * weights[j]
                    )
        return mat

    @numba.njit(cache=True)
    def eval_single_layer_numba(targets, sources, weights, density):
        nt = targets.shape[0]
        ns = sources.shape[0]
        out = np.zeros(nt, dtype=np.complex128)
        for i in range(nt):
            acc = 0.0 + 0.0j
            for j in range(ns):
                dx = targets[i, 0] - sources[j, 0]
                dy = targets[i, 1] - sources[j, 1]
                acc += 0.5 * np.log(dx * dx + dy * dy) * weights[j] * density[j]
            out[i] = acc / _TWO_PI
        return out

    @numba.njit(cache=True)
    def eval_single_layer_gradient_numba(targets, sources, weights, density):
        nt = targets.shape[0]
        ns = sources.shape[0]
        out = np.zeros((nt, 2), dtype=np.complex128)
        for i in range(nt):
            accx = 0.0 + 0.0j
            accy = 0.0 + 0.0j
            for j in range(ns):
                dx = targets[i, 0] - sources[j, 0]
                dy = targets[i, 1] - sources[j, 1]
                inv_r2 = 1.0 / (dx * dx + dy * dy)
                wphi = weights[j] * density[j]
                accx += dx * inv_r2 * wphi
                accy += dy * inv_r2 * wphi
            out[i, 0] = accx / _TWO_PI
            out[i, 1] = accy / _TWO_PI
        return out

    return assemble_np_matrix_numba, eval_single_layer_numba, eval_single_layer_gradient_numba


NUMBA_ENABLED = False
assemble_np_matrix = assemble_np_matrix_numpy
eval_single_layer = eval_single_layer_numpy
eval_single_layer_gradient = eval_single_layer_gradient_numpy

if os.environ.get("DIMERFIELD_DISABLE_NUMBA", "0") not in ("1", "true", "yes"):
    try:
        (
            assemble_np_matrix,
            eval_single_layer,
            eval_single_layer_gradient,
        ) = _numba_twins()
        NUMBA_ENABLED = True
    except ImportError:
        pass
