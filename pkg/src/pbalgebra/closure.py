"""Real Lie closure of Hermitian traceless matrices under X o Y = -i[X, Y]."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import Optional, Sequence

import numpy as np

from .errors import ClosureViolationError, DomainError, NonConvergenceError, ShapeError
from .gellmann import standard_gellmann_basis
from .linalg import (
    SpanBasis,
    as_cmatrix,
    build_span_basis,
    default_tolerance,
    frobenius,
    hermitize,
    matrix_exponential_hermitian,
    orthogonal_component,
    traceless_part,
)
from .oscillator import PBOperators

log = logging.getLogger(__name__)

SPAN_EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class LieClosureResult:
    dim_space: int
    dim_algebra: int
    basis: SpanBasis
    structure_constants: np.ndarray
    iterations: int
    is_su_n: bool
    span_residual: Optional[float]
    """Worst mutual projection residual against the su(n) reference, if dimensions match."""


def hermitian_seeds(pb: PBOperators) -> list:
    """a + a^dagger, i(a^dagger - a) and A.

    At s = 1 these are exactly sigma_1, sigma_2, sigma_3.
    """
    return [pb.a + pb.adag, 1j * (pb.adag - pb.a), pb.A.copy()]


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return -1j * (x @ y - y @ x)


def _admit(candidate: np.ndarray, basis: SpanBasis):
    """Return the normalized new direction in ``candidate``, or None."""
    tol = basis.tol
    # brackets are traceless exactly; drop rounding in the identity direction
    # before a small residual gets normalized up
    r = orthogonal_component(traceless_part(hermitize(candidate)), basis)
    norm = frobenius(r)
    if tol < norm <= 10 * tol:
        # borderline: one more orthogonalization before deciding
        r = orthogonal_component(r, basis)
        norm = frobenius(r)
    if norm <= 10 * tol:
        return None
    r = traceless_part(orthogonal_component(r / norm, basis))
    return hermitize(r / frobenius(r))


def lie_closure(
    seeds: Sequence,
    max_iterations: Optional[int] = None,
    tol: Optional[float] = None,
) -> LieClosureResult:
    """Smallest real Lie algebra containing ``seeds``.

    Each sweep brackets every pair (a, b), a < b, that involves an element added
    in the previous sweep, in basis order; directions that survive projection
    onto the current span are normalized and appended. The loop stops after a
    sweep that adds nothing.
    """
    mats = [as_cmatrix(x) for x in seeds]
    if not mats:
        raise DomainError("need at least one seed")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ShapeError("seeds have different dimensions")
    if tol is None:
        tol = default_tolerance(mats)
    if max_iterations is None:
        max_iterations = n * n
    basis = build_span_basis(mats, tol)
    bound = n * n - 1

    start = 0
    sweeps = 0
    while True:
        sweeps += 1
        if sweeps > max_iterations:
            raise NonConvergenceError(
                f"closure did not settle within {max_iterations} sweeps (dim {len(basis)})"
            )
        size = len(basis)
        elems = basis.elements
        for a in range(size):
            for b in range(max(a + 1, start), size):
                new = _admit(bracket(elems[a], elems[b]), basis)
                if new is not None:
                    basis = basis.with_element(new)
                    if len(basis) > bound:
                        raise NonConvergenceError(
                            f"span exceeded su({n}) dimension; tolerance {tol:.2e} too tight"
                        )
        log.debug("sweep %d: dim %d -> %d", sweeps, size, len(basis))
        if len(basis) == size:
            break
        start = size

    f = structure_constants(basis)
    is_su_n, span_res = _su_n_check(basis)
    return LieClosureResult(n, len(basis), basis, f, sweeps, is_su_n, span_res)


@lru_cache(maxsize=32)
def su_n_reference(n: int) -> SpanBasis:
    """Generalized Gell-Mann matrices scaled to unit HS norm."""
    lambdas = standard_gellmann_basis(n).lambdas
    return build_span_basis([l / sqrt(2.0) for l in lambdas])


def _rows_residual(rows: np.ndarray, onto: np.ndarray) -> float:
    if len(rows) == 0:
        return 0.0
    if len(onto) == 0:
        return float(np.linalg.norm(rows, axis=1).max())
    coeffs = (rows @ onto.conj().T).real
    return float(np.linalg.norm(rows - coeffs @ onto, axis=1).max())


def mutual_span_residual(basis: SpanBasis, other: SpanBasis) -> float:
    """Worst residual projecting each basis onto the other's span."""
    if basis.dim != other.dim:
        raise ShapeError(f"dimension mismatch: {basis.dim} vs {other.dim}")
    return max(_rows_residual(basis.vectors, other.vectors),
               _rows_residual(other.vectors, basis.vectors))


def _su_n_check(basis: SpanBasis):
    n = basis.dim
    if n < 2:
        return len(basis) == 0, None
    if len(basis) != n * n - 1:
        return False, None
    res = mutual_span_residual(basis, su_n_reference(n))
    return res < SPAN_EQUALITY_TOL, res


def _stack(basis: SpanBasis) -> np.ndarray:
    return np.array(basis.elements, dtype=np.complex128).reshape(len(basis), basis.dim, basis.dim)


def structure_constants(basis: SpanBasis, tol: Optional[float] = None) -> np.ndarray:
    """f[a, b, c] = <T_c, -i[T_a, T_b]>.

    Raises ClosureViolationError naming the worst pair if some bracket leaves
    the span by more than ``tol`` (default 10 x basis tolerance).
    """
    if tol is None:
        tol = 10 * basis.tol
    B = len(basis)
    if B == 0:
        return np.zeros((0, 0, 0))
    T = _stack(basis)
    prod = np.einsum("aij,bjk->abik", T, T)
    brackets = -1j * (prod - prod.transpose(1, 0, 2, 3))
    f = np.einsum("cij,abij->abc", T.conj(), brackets).real
    recon = np.einsum("abc,cij->abij", f, T)
    resid = np.linalg.norm((brackets - recon).reshape(B, B, -1), axis=2)
    a, b = np.unravel_index(np.argmax(resid), resid.shape)
    if resid[a, b] > tol:
        raise ClosureViolationError((int(a), int(b)), float(resid[a, b]))
    return f


def reconstruction_residual(basis: SpanBasis, f: np.ndarray) -> float:
    """max over (a, b) of ||-i[T_a, T_b] - sum_c f_abc T_c||_F."""
    T = _stack(basis)
    prod = np.einsum("aij,bjk->abik", T, T)
    brackets = -1j * (prod - prod.transpose(1, 0, 2, 3))
    recon = np.einsum("abc,cij->abij", f, T)
    return float(np.max(np.abs(brackets - recon))) if len(basis) else 0.0


def antisymmetry_residual(f: np.ndarray) -> float:
    return float(np.max(np.abs(f + f.transpose(1, 0, 2)))) if f.size else 0.0


def jacobi_residual(f: np.ndarray) -> float:
    """max |sum_d f_abd f_dce + f_bcd f_dae + f_cad f_dbe| over all a, b, c, e."""
    if not f.size:
        return 0.0
    t1 = np.einsum("abd,dce->abce", f, f)
    j = t1 + t1.transpose(1, 2, 0, 3) + t1.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(j)))


def killing_form(f: np.ndarray) -> np.ndarray:
    """kappa_ab = sum_cd f_acd f_bdc."""
    return np.einsum("acd,bdc->ab", f, f)


def sparse_structure_constants(f: np.ndarray, tol: float = 1e-10) -> list:
    idx = np.argwhere(np.abs(f) > tol)
    return [(int(a), int(b), int(c), float(f[a, b, c])) for a, b, c in idx]


def group_element_check(basis: SpanBasis, coefficients) -> tuple:
    """Build U = exp(iG), G = sum_a c_a T_a; return (||U^dag U - I||_F, |det U - 1|)."""
    c = np.asarray(coefficients, dtype=float)
    if c.shape != (len(basis),):
        raise ShapeError(f"need {len(basis)} coefficients, got {c.shape}")
    if len(basis) == 0:
        G = np.zeros((basis.dim, basis.dim), dtype=np.complex128)
    else:
        G = np.tensordot(c, _stack(basis), axes=1)
    U = matrix_exponential_hermitian(G)
    unitarity = float(np.linalg.norm(U.conj().T @ U - np.eye(basis.dim)))
    det_dev = float(abs(np.linalg.det(U) - 1.0))
    return unitarity, det_dev
