"""Supersymmetric generators of the multiphoton Jaynes-Cummings model on a truncated field.

Space is atom (x) field with the atom index outer, excited state first, so every
operator is a 2 x 2 array of (s+1) x (s+1) field blocks and sigma_z = diag(+1, -1).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np

from .errors import DomainError
from .linalg import anticommutator, commutator
from .oscillator import build_pb_operators

SIGMA_Z = np.diag([1.0, -1.0]).astype(np.complex128)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T.copy()


@dataclass(frozen=True)
class SusySet:
    s: int
    k: int
    N: np.ndarray
    Nprime: np.ndarray
    Q: np.ndarray
    Qdag: np.ndarray
    sigma_z: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * (self.s + 1)


def _check_sk(s, k):
    if int(k) != k or k < 1:
        raise DomainError(f"transition order k must be a positive integer, got {k!r}")
    if int(s) != s or s < k:
        raise DomainError(f"need s >= k (no doublet fits otherwise), got s={s}, k={k}")
    return int(s), int(k)


def nprime_diagonal(s: int, k: int):
    """Eigenvalues of N' on |e,m> and |g,n> for the untruncated oscillator.

    Excited block: a^k a^dag^k / k! |m> = C(m+k, k) |m>.
    Ground block:  a^dag^k a^k / k! |n> = C(n, k) |n>.
    """
    exc = [comb(m + k, k) for m in range(s + 1)]
    gnd = [comb(n, k) for n in range(s + 1)]
    return exc, gnd


def build_susy_set(s: int, k: int) -> SusySet:
    """N, N', Q, Q^dag and sigma_z at field cutoff s and transition order k.

    Q = a^k sigma_+ / sqrt(k!) and N = a^dag a + (k-1)/2 sigma_z + 1/2 use the
    truncated a. N' is the number-diagonal operator with the exact binomial
    eigenvalues; on the top k field levels of the excited block it differs from
    the truncated product a^k a^dag^k / k!, which is what makes the algebra fail
    there.
    """
    s, k = _check_sk(s, k)
    pb = build_pb_operators(s)
    eye_f = np.eye(s + 1)
    ak = np.linalg.matrix_power(pb.a, k)
    Q = np.kron(SIGMA_PLUS, ak) / sqrt(factorial(k))
    Qdag = Q.conj().T.copy()
    sz = np.kron(SIGMA_Z, eye_f)
    N = np.kron(np.eye(2), pb.number) + 0.5 * (k - 1) * sz + 0.5 * np.eye(2 * (s + 1))
    exc, gnd = nprime_diagonal(s, k)
    Nprime = np.diag(np.array(exc + gnd, dtype=float)).astype(np.complex128)
    return SusySet(s, k, N.astype(np.complex128), Nprime, Q, Qdag, sz)


def interior_projector(ss: SusySet) -> np.ndarray:
    """Projector onto field indices n <= s - k in both atom blocks."""
    mask = np.arange(ss.s + 1) <= ss.s - ss.k
    return np.diag(np.concatenate([mask, mask]).astype(float)).astype(np.complex128)


@dataclass(frozen=True)
class RelationResidual:
    name: str
    interior_residual: float
    boundary_residual: float

    def as_dict(self):
        return {
            "relation_name": self.name,
            "interior_residual": self.interior_residual,
            "boundary_residual": self.boundary_residual,
        }


def _superalgebra(ss: SusySet):
    Q, Qd, N, Np, sz = ss.Q, ss.Qdag, ss.N, ss.Nprime, ss.sigma_z
    z = np.zeros_like(Q)
    D = Qd - Q
    return [
        ("Q^2 = 0", Q @ Q, z),
        ("(Q+)^2 = 0", Qd @ Qd, z),
        ("[Q,Q+] = N' sz", commutator(Q, Qd), Np @ sz),
        ("[N,N'] = 0", commutator(N, Np), z),
        ("[N,Q] = -Q", commutator(N, Q), -Q),
        ("[N,Q+] = Q+", commutator(N, Qd), Qd),
        ("{Q,Q+} = N'", anticommutator(Q, Qd), Np),
        ("{Q,sz} = 0", anticommutator(Q, sz), z),
        ("{Q+,sz} = 0", anticommutator(Qd, sz), z),
        ("[Q,sz] = -2Q", commutator(Q, sz), -2 * Q),
        ("[Q+,sz] = 2Q+", commutator(Qd, sz), 2 * Qd),
        ("(Q+ - Q)^2 = -N'", D @ D, -Np),
    ]


def verify_susy_algebra(ss: SusySet) -> list:
    """Residual of each superalgebra relation, split into interior and boundary parts.

    With P the interior projector and R = lhs - rhs, the interior residual is
    max|P R P| and the boundary residual is max|R - P R P|.
    """
    P = interior_projector(ss)
    out = []
    for name, lhs, rhs in _superalgebra(ss):
        R = lhs - rhs
        inner = P @ R @ P
        out.append(RelationResidual(
            name,
            float(np.max(np.abs(inner))),
            float(np.max(np.abs(R - inner))),
        ))
    return out


def susy_scale(ss: SusySet) -> float:
    """Largest N' eigenvalue; relation residuals are compared against tol x this."""
    return float(max(1.0, np.max(np.abs(ss.Nprime))))


@dataclass(frozen=True)
class JCHamiltonian:
    omega: float
    omega0: float
    g: complex
    k: int
    delta: float
    H: np.ndarray


def build_jc_hamiltonian(omega, omega0, g, k, s) -> JCHamiltonian:
    """H = w a^dag a + (w0/2) sz + g a^dag^k s_- + g* a^k s_+."""
    s, k = _check_sk(s, k)
    pb = build_pb_operators(s)
    ak = np.linalg.matrix_power(pb.a, k)
    adk = ak.conj().T
    g = complex(g)
    H = (
        omega * np.kron(np.eye(2), pb.number)
        + 0.5 * omega0 * np.kron(SIGMA_Z, np.eye(s + 1))
        + g * np.kron(SIGMA_MINUS, adk)
        + g.conjugate() * np.kron(SIGMA_PLUS, ak)
    )
    return JCHamiltonian(float(omega), float(omega0), g, k, k * omega - omega0, H)


def build_susy_hamiltonian(omega, delta, gtilde, ss: SusySet) -> JCHamiltonian:
    """H = w N + (w - delta)/2 sz + g~ Q^dag + g~* Q - w/2.

    Matches :func:`build_jc_hamiltonian` with g = g~ / sqrt(k!) and
    w0 = k w - delta.
    """
    gt = complex(gtilde)
    H = (
        omega * ss.N
        + 0.5 * (omega - delta) * ss.sigma_z
        + gt * ss.Qdag
        + gt.conjugate() * ss.Q
        - 0.5 * omega * np.eye(ss.dim)
    )
    omega0 = ss.k * omega - delta
    return JCHamiltonian(float(omega), float(omega0), gt / sqrt(factorial(ss.k)), ss.k,
                         float(delta), H)


def coupling_map(g, k: int) -> complex:
    """Coupling to feed the SUSY form so it reproduces the JC form with coupling g."""
    return complex(g) * sqrt(factorial(k))


@dataclass(frozen=True)
class DoubletSubspace:
    m: int
    k: int
    projector: np.ndarray
    eigenvalue: float
    eigen_residual: float


def doublet_vectors(ss: SusySet, m: int):
    """Unit vectors |e>|m> and |g>|m+k>."""
    e = np.zeros(ss.dim, dtype=np.complex128)
    g = np.zeros(ss.dim, dtype=np.complex128)
    e[m] = 1.0
    g[ss.s + 1 + m + ss.k] = 1.0
    return e, g


def doublet_spectrum(ss: SusySet, m: int) -> DoubletSubspace:
    """Doublet {|e,m>, |g,m+k>} on which N' acts as C(m+k, m)."""
    if int(m) != m or not 0 <= m <= ss.s - ss.k:
        raise DomainError(f"doublet index must satisfy 0 <= m <= s-k (s={ss.s}, k={ss.k}), got {m!r}")
    m = int(m)
    c = comb(m + ss.k, m)
    e, g = doublet_vectors(ss, m)
    P = np.outer(e, e.conj()) + np.outer(g, g.conj())
    resid = max(float(np.max(np.abs(ss.Nprime @ v - c * v))) for v in (e, g))
    return DoubletSubspace(m, ss.k, P, float(c), resid)


def verify_quasialgebra(ss: SusySet, d: DoubletSubspace) -> dict:
    """Quasialgebra on a doublet: N' replaced by its eigenvalue C."""
    P = d.projector
    C = d.eigenvalue
    Q, Qd = ss.Q, ss.Qdag
    D = Qd - Q
    return {
        "[Q,Q+] = C sz": float(np.max(np.abs(P @ commutator(Q, Qd) @ P - C * P @ ss.sigma_z @ P))),
        "{Q,Q+} = C": float(np.max(np.abs(P @ anticommutator(Q, Qd) @ P - C * P))),
        "(Q+ - Q)^2 = -C": float(np.max(np.abs(P @ D @ D @ P + C * P))),
    }


def doublet_leakage(ss: SusySet, d: DoubletSubspace) -> float:
    """max of ||(I - P) X P|| over X in {Q, Q^dag}."""
    P = d.projector
    out = np.eye(ss.dim) - P
    return max(float(np.linalg.norm(out @ X @ P)) for X in (ss.Q, ss.Qdag))


def doublet_hamiltonian(H: np.ndarray, ss: SusySet, d: DoubletSubspace) -> np.ndarray:
    """2 x 2 restriction of H to the doublet basis (|e,m>, |g,m+k>)."""
    V = np.column_stack(doublet_vectors(ss, d.m))
    return V.conj().T @ H @ V
