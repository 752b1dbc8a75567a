"""Named generators M, K, F of the truncated oscillator and Gell-Mann bases."""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Optional

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import commutator
from .oscillator import PBOperators, build_pb_operators


@dataclass(frozen=True)
class NamedGenerators:
    """M, M^dagger, K and (for s >= 2) F, F^dagger at cutoff s."""

    s: int
    M: np.ndarray
    Mdag: np.ndarray
    K: np.ndarray
    F: Optional[np.ndarray]
    Fdag: Optional[np.ndarray]


@dataclass(frozen=True)
class GellMannBasis:
    n: int
    lambdas: tuple

    def __len__(self):
        return len(self.lambdas)


def build_named_generators(s: int) -> NamedGenerators:
    """Closed-form entry formulas (0-based indices m, n).

    M_{mn} = -delta_{m+1,s} delta_{ns}
    K_{mn} = delta_{ms} delta_{ns} - delta_{m+1,s} delta_{n+1,s}
    F_{mn} = delta_{m+1,s-1} delta_{ns}

    For s == 1 only M and K exist; F needs three levels.
    """
    if int(s) != s or s < 1:
        raise DomainError(f"named generators need s >= 1, got {s!r}")
    s = int(s)
    n = s + 1
    M = np.zeros((n, n), dtype=np.complex128)
    M[s - 1, s] = -1.0
    K = np.zeros((n, n), dtype=np.complex128)
    K[s, s] = 1.0
    K[s - 1, s - 1] = -1.0
    F = Fdag = None
    if s >= 2:
        F = np.zeros((n, n), dtype=np.complex128)
        F[s - 2, s] = 1.0
        Fdag = F.conj().T.copy()
    return NamedGenerators(s, M, M.conj().T.copy(), K, F, Fdag)


def extract_named_generators(pb: PBOperators) -> NamedGenerators:
    """Recover M, K, F from commutators of a, a^dagger and A.

    Used only as a cross-check of :func:`build_named_generators`.
    """
    s = pb.s
    if s < 1:
        raise DomainError("extraction needs s >= 1")
    M = commutator(pb.a, pb.A) / ((s + 1) * sqrt(s))
    Mdag = M.conj().T
    K = -commutator(M, Mdag)
    F = Fdag = None
    if s >= 2:
        F = -commutator(pb.a, M) / sqrt(s - 1)
        Fdag = F.conj().T
    return NamedGenerators(s, M, Mdag, K, F, Fdag)


def _relations(g: NamedGenerators, pb: PBOperators):
    s = pb.s
    c = (s + 1) * sqrt(s)
    a, ad, A = pb.a, pb.adag, pb.A
    M, Md, K, F, Fd = g.M, g.Mdag, g.K, g.F, g.Fdag
    rels = [
        ("[a,A] = (s+1)sqrt(s) M", commutator(a, A), c * M),
        ("[a+,A] = -(s+1)sqrt(s) M+", commutator(ad, A), -c * Md),
        ("[M,M+] = -K", commutator(M, Md), -K),
        ("[A,M] = (1+s) M", commutator(A, M), (1 + s) * M),
        ("[A,M+] = -(1+s) M+", commutator(A, Md), -(1 + s) * Md),
    ]
    if F is not None:
        r = sqrt(s - 1)
        rels += [
            ("[a,M] = -sqrt(s-1) F", commutator(a, M), -r * F),
            ("[a+,M+] = sqrt(s-1) F+", commutator(ad, Md), r * Fd),
            ("[K,F] = -F", commutator(K, F), -F),
            ("[K,F+] = F+", commutator(K, Fd), Fd),
        ]
    rels += [
        ("[M,K] = 2M", commutator(M, K), 2 * M),
        ("[M+,K] = -2M+", commutator(Md, K), -2 * Md),
    ]
    # general-s form of the two s=2 relations [a+,M] = -sqrt(2) K, [a,M+] = sqrt(2) K
    rels += [
        ("[a+,M] = -sqrt(s) K", commutator(ad, M), -sqrt(s) * K),
        ("[a,M+] = sqrt(s) K", commutator(a, Md), sqrt(s) * K),
    ]
    return rels


# relations printed with general-s coefficients; the last two are extrapolated from s=2
CORE_RELATIONS = 11


@dataclass(frozen=True)
class RelationReport:
    s: int
    residuals: dict
    scale: float
    extrapolated: tuple = ()

    @property
    def worst(self):
        name = max(self.residuals, key=self.residuals.get)
        return name, self.residuals[name]

    def passed(self, tol: float = 1e-12) -> bool:
        return all(r <= tol * self.scale for r in self.residuals.values())


def verify_generator_relations(g: NamedGenerators, pb: PBOperators) -> RelationReport:
    """Max-abs residual of every commutation relation among a, a+, A, M, K, F."""
    if g.s != pb.s or g.M.shape != pb.a.shape:
        raise ShapeError(f"generator set s={g.s} does not match oscillator s={pb.s}")
    residuals = {}
    names = []
    for name, lhs, rhs in _relations(g, pb):
        residuals[name] = float(np.max(np.abs(lhs - rhs)))
        names.append(name)
    return RelationReport(pb.s, residuals, (pb.s + 1) * sqrt(pb.s), tuple(names[-2:]))


def reconstruct_gellmann_s2(pb: PBOperators, g: NamedGenerators) -> GellMannBasis:
    """The eight Gell-Mann matrices as combinations of the s=2 generators.

    The eighth is taken as A/sqrt(3): it is the traceless diagonal matrix
    orthogonal to lambda_3 available from the generator set, and it equals the
    standard lambda_8.
    """
    if pb.s != 2 or g.s != 2:
        raise DomainError("Gell-Mann reconstruction is defined for s = 2 only")
    a, ad, A = pb.a, pb.adag, pb.A
    M, Md, K, F, Fd = g.M, g.Mdag, g.K, g.F, g.Fdag
    r2 = sqrt(2.0)
    lambdas = (
        a + ad + r2 * (M + Md),
        1j * (ad - a + r2 * (Md - M)),
        A + 2 * K,
        F + Fd,
        1j * (Fd - F),
        -(M + Md),
        -1j * (Md - M),
        A / sqrt(3.0),
    )
    return GellMannBasis(3, lambdas)


def standard_gellmann_basis(n: int) -> GellMannBasis:
    """Generalized Gell-Mann matrices, normalized so tr(l_i l_j) = 2 delta_ij.

    For n = 3 the conventional lambda_1..lambda_8 order is used. Otherwise the
    order is: symmetric E_jk + E_kj, antisymmetric -i(E_jk - E_kj) (both over
    j < k in row-major order), then the n-1 diagonal matrices.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"Gell-Mann basis needs n >= 2, got {n!r}")
    n = int(n)
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    sym = {}
    anti = {}
    for j, k in pairs:
        x = np.zeros((n, n), dtype=np.complex128)
        x[j, k] = x[k, j] = 1.0
        sym[j, k] = x
        y = np.zeros((n, n), dtype=np.complex128)
        y[j, k] = -1j
        y[k, j] = 1j
        anti[j, k] = y
    diag = []
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -l
        diag.append(np.diag(sqrt(2.0 / (l * (l + 1))) * d).astype(np.complex128))
    if n == 3:
        lambdas = (
            sym[0, 1], anti[0, 1], diag[0],
            sym[0, 2], anti[0, 2],
            sym[1, 2], anti[1, 2], diag[1],
        )
    else:
        lambdas = tuple(sym[p] for p in pairs) + tuple(anti[p] for p in pairs) + tuple(diag)
    return GellMannBasis(n, lambdas)


def pauli():
    """(sigma_1, sigma_2, sigma_3)."""
    return standard_gellmann_basis(2).lambdas


def default_generators(s: int):
    """Convenience pair (PBOperators, NamedGenerators) for the same cutoff."""
    return build_pb_operators(s), build_named_generators(s)
