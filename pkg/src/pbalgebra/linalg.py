"""Dense complex matrix helpers: brackets, Hilbert-Schmidt geometry, spans, exp(iG).

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
:func:`as_cmatrix` is the single entry point that enforces the square/finite
contract; everything else assumes its inputs went through it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ShapeError

DEFAULT_TOL = 1e-10


def as_cmatrix(x) -> np.ndarray:
    """Coerce ``x`` to a finite square complex128 array."""
    m = np.asarray(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ShapeError("matrix dimension must be positive")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def _pair(x, y):
    x = as_cmatrix(x)
    y = as_cmatrix(y)
    if x.shape != y.shape:
        raise ShapeError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x, y


def commutator(x, y) -> np.ndarray:
    x, y = _pair(x, y)
    return x @ y - y @ x


def anticommutator(x, y) -> np.ndarray:
    x, y = _pair(x, y)
    return x @ y + y @ x


def hs_inner(x, y) -> complex:
    """Hilbert-Schmidt inner product tr(X^dagger Y)."""
    x, y = _pair(x, y)
    return complex(np.vdot(x, y))


def frobenius(x) -> float:
    x = np.asarray(x)
    return math.sqrt(np.vdot(x, x).real)


def hermiticity_defect(x) -> float:
    x = as_cmatrix(x)
    return frobenius(x - x.conj().T)


def default_tolerance(candidates: Iterable[np.ndarray]) -> float:
    """Scale-relative rank tolerance: 1e-10 * (1 + largest Frobenius norm)."""
    norms = [frobenius(c) for c in candidates]
    return DEFAULT_TOL * (1.0 + max(norms, default=0.0))


@dataclass(frozen=True)
class SpanBasis:
    """HS-orthonormal list of Hermitian traceless matrices spanning a real subspace.

    ``vectors`` holds the same elements flattened, one per row, so projections are
    a single matrix-vector product.
    """

    dim: int
    elements: tuple
    tol: float
    vectors: np.ndarray = field(repr=False, compare=False)

    def __len__(self):
        return len(self.elements)

    @classmethod
    def empty(cls, dim: int, tol: float) -> "SpanBasis":
        return cls(dim, (), tol, np.zeros((0, dim * dim), dtype=np.complex128))

    def with_element(self, x: np.ndarray) -> "SpanBasis":
        vecs = np.vstack([self.vectors, x.reshape(1, -1)])
        return SpanBasis(self.dim, self.elements + (x,), self.tol, vecs)


def _check_hermitian(x: np.ndarray, tol: float):
    defect = hermiticity_defect(x)
    if defect > tol:
        raise DomainError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.3e})")


def _coefficients(vectors: np.ndarray, x: np.ndarray) -> np.ndarray:
    # <X_i, X> is real for Hermitian X_i, X
    return (vectors.conj() @ x.reshape(-1)).real


def project_residual(x, basis: SpanBasis):
    """Project Hermitian ``x`` onto the real span of ``basis``.

    Returns ``(coefficients, residual_norm)`` with coefficients ``<X_i, x>`` and
    the Frobenius norm of what is left after subtracting the projection.
    """
    x = as_cmatrix(x)
    if x.shape[0] != basis.dim:
        raise ShapeError(f"dimension mismatch: {x.shape[0]} vs basis dim {basis.dim}")
    _check_hermitian(x, basis.tol * (1.0 + frobenius(x)))
    if len(basis) == 0:
        return [], frobenius(x)
    c = _coefficients(basis.vectors, x)
    r = x.reshape(-1) - c @ basis.vectors
    return c.tolist(), float(np.linalg.norm(r))


def orthogonal_component(x: np.ndarray, basis: SpanBasis) -> np.ndarray:
    """Residual of ``x`` after two Gram-Schmidt passes against ``basis``."""
    if not len(basis):
        return np.array(x, dtype=np.complex128)
    v = x.reshape(-1)
    vecs = basis.vectors
    for _ in range(2):
        v = v - (vecs.conj() @ v).real @ vecs
    return v.reshape(x.shape)


def build_span_basis(candidates: Sequence, tol: float | None = None) -> SpanBasis:
    """Orthonormalize Hermitian traceless candidates, dropping dependent ones."""
    mats = [as_cmatrix(c) for c in candidates]
    if not mats:
        raise DomainError("need at least one candidate matrix")
    dim = mats[0].shape[0]
    if tol is None:
        tol = default_tolerance(mats)
    basis = SpanBasis.empty(dim, tol)
    for m in mats:
        if m.shape[0] != dim:
            raise ShapeError("candidates have different dimensions")
        _check_hermitian(m, tol)
        tr = np.trace(m)
        if abs(tr) > tol:
            raise DomainError("candidate is not traceless")
        r = orthogonal_component(hermitize(m) - (tr.real / dim) * np.eye(dim), basis)
        norm = frobenius(r)
        if norm > tol:
            basis = basis.with_element(traceless_part(hermitize(r / norm)))
    return basis


def hermitize(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x + x.conj().T)


def traceless_part(x: np.ndarray) -> np.ndarray:
    return x - (np.trace(x) / x.shape[0]) * np.eye(x.shape[0])


def matrix_exponential_hermitian(g, tol: float = DEFAULT_TOL) -> np.ndarray:
    """U = exp(iG) for Hermitian G, by eigendecomposition."""
    g = as_cmatrix(g)
    _check_hermitian(g, tol * (1.0 + frobenius(g)))
    w, v = np.linalg.eigh(hermitize(g))
    return (v * np.exp(1j * w)) @ v.conj().T
