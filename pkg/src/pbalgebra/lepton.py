"""Charged-lepton mass formula m_n / m_e = C(3, n) (1/2)^(n^2) (1/alpha)^n, n = 0..3."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import comb
from typing import Mapping, Optional

from .errors import DomainError

LABELS = ("e", "mu", "tau", "f")
HEADLINE_INVERSE_ALPHA = 137.0  # reproduces the 5022 m_e f-lepton figure


def load_constants(path=None) -> dict:
    """Read the constants file (shipped default when ``path`` is None)."""
    if path is None:
        text = resources.files("pbalgebra").joinpath("data/constants.json").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    if not isinstance(data, dict):
        raise DomainError("constants file must hold a JSON object")
    return data


_DEFAULTS = load_constants()
DEFAULT_INVERSE_ALPHA = float(_DEFAULTS["inverse_alpha"])
DEFAULT_EXPERIMENTAL = {k: float(v) for k, v in _DEFAULTS["experimental_ratios"].items()}


@dataclass(frozen=True)
class MassModel:
    inverse_alpha: float = DEFAULT_INVERSE_ALPHA
    electron_mass: float = 1.0
    electron_mass_unit: str = "m_e"

    def __post_init__(self):
        if not self.inverse_alpha > 0:
            raise DomainError(f"inverse_alpha must be positive, got {self.inverse_alpha}")


def predicted_mass_ratio(n: int, model: MassModel = MassModel()) -> float:
    if isinstance(n, bool) or int(n) != n or not 0 <= n <= 3:
        raise DomainError(f"generation index must be 0..3, got {n!r}")
    n = int(n)
    return comb(3, n) * 0.5 ** (n * n) * model.inverse_alpha ** n


@dataclass(frozen=True)
class MassRow:
    n: int
    label: str
    predicted_ratio: float
    experimental_ratio: Optional[float] = None
    relative_deviation: Optional[float] = None


@dataclass(frozen=True)
class MassTable:
    rows: tuple
    inverse_alpha: float


def build_mass_table(model: MassModel = MassModel(),
                     experimental: Optional[Mapping[str, float]] = None) -> MassTable:
    """Predictions for n = 0..3 with relative deviations where a measurement is given.

    The electron row is the normalization and the f row has no measurement, so
    only mu and tau entries of ``experimental`` are used.
    """
    experimental = dict(experimental or {})
    for label, value in experimental.items():
        if not value > 0:
            raise DomainError(f"experimental ratio for {label!r} must be positive, got {value}")
    rows = []
    for n, label in enumerate(LABELS):
        pred = predicted_mass_ratio(n, model)
        exp = experimental.get(label) if label in ("mu", "tau") else None
        dev = abs(pred - exp) / exp if exp is not None else None
        rows.append(MassRow(n, label, pred, exp, dev))
    return MassTable(tuple(rows), model.inverse_alpha)
