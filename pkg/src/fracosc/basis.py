"""Dirichlet sine basis on the box (0, pi)^d and diagonal Sobolev norms.

The negative Laplacian with zero boundary values on (0, pi)^d has the
analytic eigenpairs

    phi_n(x) = (2/pi)^(d/2) prod_i sin(n_i x_i),   nu_n = n_1^2 + ... + n_d^2,

so every operator in this package is diagonal (or 2x2 block diagonal) in
this basis.  Eigenfunctions are L2-normalized, hence the plain l2 norm of a
coefficient vector equals the L2 norm of the function, and the fractional
space norm ||u||_{X^theta} is the diagonally weighted sum
(sum_k nu_k^(2 theta) u_k^2)^(1/2).

Collocation uses the interior nodes x_j = j pi/(M+1); on those nodes the
sine modes satisfy the exact discrete orthogonality

    sum_j sin(n x_j) sin(m x_j) = (M+1)/2 delta_nm,   1 <= n, m <= M,

so the transform pair below is a bijection on the truncation and the grid
quadrature with weight (pi/(M+1))^d reproduces coefficient sums exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "SpectralBasis",
    "build_basis",
    "sobolev_norm",
    "embedding_constant",
    "forward_transform",
    "inverse_transform",
    "mode_weights",
]


@dataclass(frozen=True)
class SpectralBasis:
    """Truncated Dirichlet Laplacian eigenbasis on (0, pi)^dim.

    ``eigenvalues`` is sorted ascending with ties broken by lexicographic
    multi-index order; ``multi_indices`` row k holds the multi-index of
    ``eigenvalues[k]``.  ``tensor_from_sorted``/``sorted_from_tensor`` map
    between the sorted coefficient layout and the C-order tensor layout used
    by the transforms.
    """

    dim: int
    modes_per_axis: int
    eigenvalues: np.ndarray
    multi_indices: np.ndarray
    tensor_from_sorted: np.ndarray
    sorted_from_tensor: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def volume(self) -> float:
        return float(np.pi**self.dim)

    @property
    def nu_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def nodes(self) -> np.ndarray:
        """Interior collocation nodes j pi/(M+1), j = 1..M (one axis)."""
        m = self.modes_per_axis
        return np.arange(1, m + 1) * np.pi / (m + 1)

    @property
    def quad_weight(self) -> float:
        """Quadrature weight of one grid cell, (pi/(M+1))^dim."""
        return float((np.pi / (self.modes_per_axis + 1)) ** self.dim)

    def grid_shape(self) -> tuple[int, ...]:
        return (self.modes_per_axis,) * self.dim


def build_basis(dim: int, modes_per_axis: int) -> SpectralBasis:
    """Enumerate eigenpairs of -Laplacian on (0, pi)^dim, sorted by eigenvalue."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if modes_per_axis < 1:
        raise ValueError(f"modes_per_axis must be >= 1, got {modes_per_axis}")
    axes = [np.arange(1, modes_per_axis + 1)] * dim
    grids = np.meshgrid(*axes, indexing="ij")
    multi = np.stack([g.ravel() for g in grids], axis=1)
    nu = (multi.astype(np.float64) ** 2).sum(axis=1)
    order = np.argsort(nu, kind="stable")  # stable: ties stay lexicographic
    inv = np.empty_like(order)
    inv[order] = np.arange(order.size)
    return SpectralBasis(
        dim=dim,
        modes_per_axis=modes_per_axis,
        eigenvalues=nu[order],
        multi_indices=multi[order],
        tensor_from_sorted=order,
        sorted_from_tensor=inv,
    )


def mode_weights(basis: SpectralBasis, theta: float) -> np.ndarray:
    """Diagonal weights nu_k^theta in sorted order."""
    return basis.eigenvalues**theta


def sobolev_norm(basis: SpectralBasis, coeffs: np.ndarray, theta: float) -> float:
    """||u||_{X^theta} = (sum_k nu_k^(2 theta) u_k^2)^(1/2)."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.shape != (basis.size,):
        raise ValueError(f"coefficient length {coeffs.shape} does not match basis size {basis.size}")
    return float(np.sqrt(np.sum(basis.eigenvalues ** (2.0 * theta) * coeffs**2)))


def embedding_constant(basis: SpectralBasis, theta_lo: float, theta_hi: float) -> float:
    """Sharp constant c with ||u||_{X^theta_lo} <= c ||u||_{X^theta_hi}.

    On the truncation the extremizer is the lowest mode, so c = nu_min^(lo-hi).
    """
    if theta_lo > theta_hi:
        raise ValueError(f"theta_lo={theta_lo} exceeds theta_hi={theta_hi}")
    return float(basis.nu_min ** (theta_lo - theta_hi))


@lru_cache(maxsize=32)
def _dst_matrices(modes: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-axis synthesis / analysis matrices of the normalized sine transform.

    synth[j, n] = sqrt(2/pi) sin((n+1) x_j); analysis = (pi/(M+1)) synth^T,
    which is the exact inverse on the truncation.
    """
    j = np.arange(1, modes + 1)
    n = np.arange(1, modes + 1)
    synth = np.sqrt(2.0 / np.pi) * np.sin(np.outer(j, n) * np.pi / (modes + 1))
    anal = (np.pi / (modes + 1)) * synth.T
    return synth, anal


def dst_matrices(modes: int) -> tuple[np.ndarray, np.ndarray]:
    """Public access to the per-axis transform pair for a given mode count."""
    return _dst_matrices(modes)


def _apply_per_axis(mat: np.ndarray, tensor: np.ndarray) -> np.ndarray:
    for _ in range(tensor.ndim):
        tensor = np.moveaxis(np.tensordot(mat, tensor, axes=(1, 0)), 0, -1)
    return tensor


def inverse_transform(basis: SpectralBasis, coeffs: np.ndarray) -> np.ndarray:
    """Evaluate the function with given (sorted-order) coefficients on the grid."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.shape != (basis.size,):
        raise ValueError(f"coefficient length {coeffs.shape} does not match basis size {basis.size}")
    tensor = np.empty(basis.size)
    tensor[basis.tensor_from_sorted] = coeffs
    tensor = tensor.reshape(basis.grid_shape())
    synth, _ = _dst_matrices(basis.modes_per_axis)
    return _apply_per_axis(synth, tensor)


def forward_transform(basis: SpectralBasis, grid_values: np.ndarray) -> np.ndarray:
    """Project grid samples onto the basis, returning sorted-order coefficients."""
    grid_values = np.asarray(grid_values, dtype=np.float64)
    if grid_values.shape != basis.grid_shape():
        raise ValueError(f"grid shape {grid_values.shape} does not match {basis.grid_shape()}")
    _, anal = _dst_matrices(basis.modes_per_axis)
    tensor = _apply_per_axis(anal, grid_values)
    return tensor.ravel()[basis.tensor_from_sorted]
