"""Truncated (Pegg-Barnett) oscillator on the number states |0>, ..., |s>."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError


@dataclass(frozen=True)
class PBOperators:
    """Annihilation, creation, deformed commutator and number operator at cutoff s.

    Row index m and column index n both run over 0..s.
    """

    s: int
    a: np.ndarray
    adag: np.ndarray
    A: np.ndarray
    number: np.ndarray

    @property
    def dim(self) -> int:
        return self.s + 1


def _check_cutoff(s):
    if isinstance(s, bool) or int(s) != s or s < 0:
        raise DomainError(f"cutoff s must be a nonnegative integer, got {s!r}")
    return int(s)


def annihilation(s: int) -> np.ndarray:
    # a_{mn} = sqrt(n) delta_{m, n-1}
    s = _check_cutoff(s)
    return np.diag(np.sqrt(np.arange(1, s + 1)), k=1).astype(np.complex128)


def build_pb_operators(s: int) -> PBOperators:
    s = _check_cutoff(s)
    a = annihilation(s)
    adag = a.conj().T.copy()
    # A_{mn} = delta_{mn} - (s+1) delta_{ms} delta_{ns}
    A = np.eye(s + 1, dtype=np.complex128)
    A[s, s] -= s + 1
    number = np.diag(np.arange(s + 1)).astype(np.complex128)
    return PBOperators(s, a, adag, A, number)


@dataclass(frozen=True)
class PhaseState:
    s: int
    theta: float
    amplitudes: np.ndarray


def phase_state(s: int, theta: float) -> PhaseState:
    """Finite-s phase state with amplitudes (s+1)^(-1/2) exp(i n theta)."""
    s = _check_cutoff(s)
    n = np.arange(s + 1)
    amps = np.exp(1j * n * theta) / np.sqrt(s + 1)
    return PhaseState(s, float(theta), amps)


def phase_overlap(p: PhaseState, q: PhaseState) -> complex:
    """<p|q>."""
    if p.s != q.s:
        raise ShapeError(f"phase states live in different spaces (s={p.s} vs s={q.s})")
    return complex(np.vdot(p.amplitudes, q.amplitudes))


def bosonic_limit_window(s: int, d: int) -> dict:
    """Top-left d x d blocks of A, M, K and F.

    Away from the top levels A is the identity and M, K, F vanish, which is the
    finite-s form of the bosonic limit.
    """
    from .gellmann import build_named_generators

    s = _check_cutoff(s)
    if int(d) != d or not 1 <= d <= s - 1:
        raise DomainError(f"window size must satisfy 1 <= d <= s-1 (s={s}, d={d})")
    d = int(d)
    pb = build_pb_operators(s)
    g = build_named_generators(s)
    return {
        "A": pb.A[:d, :d].copy(),
        "M": g.M[:d, :d].copy(),
        "K": g.K[:d, :d].copy(),
        "F": g.F[:d, :d].copy(),
    }
