import pytest

from pbalgebra import MassModel, build_mass_table, predicted_mass_ratio
from pbalgebra.errors import DomainError
from pbalgebra.lepton import DEFAULT_EXPERIMENTAL, DEFAULT_INVERSE_ALPHA, load_constants


def test_electron_is_unity():
    assert predicted_mass_ratio(0) == 1
    assert predicted_mass_ratio(0, MassModel(137)) == 1


def test_f_lepton_with_137():
    assert predicted_mass_ratio(3, MassModel(137)) == 2571353 / 512
    assert 5021.7 <= predicted_mass_ratio(3, MassModel(137)) <= 5022.7


def test_muon_codata():
    assert predicted_mass_ratio(1, MassModel(137.035999)) == pytest.approx(205.5539985, rel=1e-15)


@pytest.mark.parametrize("n", [-1, 4, 1.5, True])
def test_generation_domain(n):
    with pytest.raises(DomainError):
        predicted_mass_ratio(n)


def test_model_domain():
    with pytest.raises(DomainError):
        MassModel(0)


def test_shipped_constants():
    c = load_constants()
    assert c["inverse_alpha"] == DEFAULT_INVERSE_ALPHA == 137.035999
    assert DEFAULT_EXPERIMENTAL == {"mu": 206.768283, "tau": 3477.23}


def test_table_with_experiment():
    t = build_mass_table(MassModel(), DEFAULT_EXPERIMENTAL)
    assert [r.label for r in t.rows] == ["e", "mu", "tau", "f"]
    assert [r.n for r in t.rows] == [0, 1, 2, 3]
    mu, tau, f = t.rows[1], t.rows[2], t.rows[3]
    assert mu.relative_deviation == pytest.approx(abs(205.5539985 - 206.768283) / 206.768283)
    assert tau.relative_deviation is not None
    assert f.experimental_ratio is None and f.relative_deviation is None
    assert t.rows[0].predicted_ratio == 1


def test_table_without_experiment():
    t = build_mass_table(MassModel())
    assert all(r.relative_deviation is None for r in t.rows)
    assert all(r.predicted_ratio > 0 for r in t.rows)


def test_table_rejects_nonpositive():
    with pytest.raises(DomainError):
        build_mass_table(MassModel(), {"mu": 0.0})


def test_strictly_increasing_for_shipped_constants():
    preds = [predicted_mass_ratio(n) for n in range(4)]
    assert preds == sorted(preds) and len(set(preds)) == 4


def test_table_deterministic():
    assert build_mass_table(MassModel(), DEFAULT_EXPERIMENTAL) == \
        build_mass_table(MassModel(), DEFAULT_EXPERIMENTAL)
