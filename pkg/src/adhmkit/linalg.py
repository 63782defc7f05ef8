"""
Dense complex linear algebra with explicit, relative tolerances.

Every rank or subspace decision in the package goes through this module.
Matrices are plain ``numpy`` arrays of dtype ``complex128``; subspaces are
stored as orthonormal column bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, ShapeMismatch

DEFAULT_TOL = 1e-10


def as_cmatrix(m, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array, optionally checking its shape."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if rows is not None and arr.shape[0] != rows:
        raise ShapeMismatch(f"expected {rows} rows, got {arr.shape[0]}")
    if cols is not None and arr.shape[1] != cols:
        raise ShapeMismatch(f"expected {cols} columns, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _svd(m: np.ndarray):
    if m.size == 0:
        r, c = m.shape
        return (np.eye(r, dtype=np.complex128), np.zeros(0),
                np.eye(c, dtype=np.complex128))
    return np.linalg.svd(m, full_matrices=True)


def _cutoff(s: np.ndarray, tol: float, scale: float | None) -> float:
    if scale is None:
        scale = s[0] if s.size and s[0] > 0 else 1.0
    return tol * scale


def numeric_rank(m, tol: float = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_cmatrix(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > _cutoff(s, tol, None)))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of C^n held as an orthonormal basis (n x dim)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            b = b.reshape(self.ambient_dim, -1) if self.ambient_dim else np.zeros((0, 0), complex)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, np.zeros((n, 0), dtype=np.complex128))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, np.eye(n, dtype=np.complex128))

    @classmethod
    def span(cls, vectors, tol: float = DEFAULT_TOL) -> "Subspace":
        """Span of the columns of ``vectors`` (re-orthonormalized)."""
        return image(vectors, tol)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def contains(self, vectors, tol: float = 1e-8) -> bool:
        """True when every column of ``vectors`` lies in the subspace."""
        v = as_cmatrix(vectors, rows=self.ambient_dim)
        if v.size == 0:
            return True
        resid = v - self.projector() @ v
        scale = max(1.0, float(np.linalg.norm(v)))
        return float(np.linalg.norm(resid)) <= tol * scale

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def image(m, tol: float = DEFAULT_TOL, scale: float | None = None) -> Subspace:
    """Orthonormal basis of the column space of ``m``.

    ``scale`` overrides the largest singular value as the reference for the
    relative cutoff; pass it when ``m`` is one block of a larger object.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_cmatrix(m)
    n = m.shape[0]
    if m.size == 0:
        return Subspace.zero(n)
    u, s, _ = _svd(m)
    r = int(np.sum(s > _cutoff(s, tol, scale)))
    return Subspace(n, u[:, :r])


def kernel(m, tol: float = DEFAULT_TOL, scale: float | None = None) -> Subspace:
    """Orthonormal basis of the nullspace of ``m``.

    Singular values at or below ``tol * scale`` count as zero; ``scale``
    defaults to the largest singular value of ``m`` (or 1 for a zero matrix).
    """
    m = as_cmatrix(m)
    n = m.shape[1]
    if m.shape[0] == 0 or n == 0:
        return Subspace.full(n)
    _, s, vh = _svd(m)
    r = int(np.sum(s > _cutoff(s, tol, scale)))
    return Subspace(n, vh[r:].conj().T)


def sum_subspaces(u: Subspace, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch(f"{u.ambient_dim} != {v.ambient_dim}")
    return image(np.hstack([u.basis, v.basis]), tol)


def intersect_subspaces(u: Subspace, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """U ∩ V from the nullspace of ``[basis_U | -basis_V]``."""
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch(f"{u.ambient_dim} != {v.ambient_dim}")
    n = u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(n)
    coeffs = kernel(np.hstack([u.basis, -v.basis]), tol, scale=1.0)
    if coeffs.dim == 0:
        return Subspace.zero(n)
    return image(u.basis @ coeffs.basis[: u.dim], tol)


def orthogonal_complement(u: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    return kernel(u.basis.conj().T, tol, scale=1.0) if u.dim else Subspace.full(u.ambient_dim)


def preimage(m, u: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """The subspace ``{v : m v in U}``."""
    m = as_cmatrix(m)
    if u.ambient_dim != m.shape[0]:
        raise AmbientMismatch(f"matrix has {m.shape[0]} rows, subspace lives in C^{u.ambient_dim}")
    n = m.shape[1]
    if m.size == 0:
        return Subspace.full(n)
    s_max = float(np.linalg.norm(m, 2))
    if s_max == 0.0:
        return Subspace.full(n)
    # kernel of (projection onto U-perp) @ m, judged at the scale of m itself
    proj_perp = np.eye(m.shape[0]) - u.projector()
    return kernel(proj_perp @ m, tol, scale=s_max)


def apply(m, u: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """The image ``m(U)`` of a subspace under a linear map."""
    m = as_cmatrix(m, cols=u.ambient_dim)
    return image(m @ u.basis, tol) if u.dim else Subspace.zero(m.shape[0])


def solve_least_squares(a, rhs) -> tuple[np.ndarray, float]:
    """Minimum-norm least-squares solution and its 2-norm residual."""
    a = as_cmatrix(a)
    rhs = np.asarray(rhs, dtype=np.complex128).reshape(-1)
    if a.shape[0] != rhs.shape[0]:
        raise ShapeMismatch(f"matrix has {a.shape[0]} rows, rhs has length {rhs.shape[0]}")
    if a.size == 0:
        return np.zeros(a.shape[1], dtype=np.complex128), float(np.linalg.norm(rhs))
    x, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    return x, float(np.linalg.norm(a @ x - rhs))


def is_invertible(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``m`` is square with smallest singular value > tol * largest."""
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"not square: {m.shape}")
    if m.size == 0:
        return True
    s = np.linalg.svd(m, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol * s[0])


def condition_number(m) -> float:
    s = np.linalg.svd(as_cmatrix(m), compute_uv=False)
    return float(s[0] / s[-1]) if s.size and s[-1] > 0 else float("inf")
