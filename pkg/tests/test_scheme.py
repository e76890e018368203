import logging

import pytest

from raman.angular import HalfInt
from raman.scheme import LEVEL_B, LEVEL_FA, LEVEL_FPA, BasisLabel, LevelScheme, SchemeError, validate

H = HalfInt.parse

@pytest.mark.parametrize(
    "name,ground_dim,excited_dim,F_b",
    [("rb85", 12, 24, ["1", "2", "3", "4"]), ("cs133", 16, 32, ["2", "3", "4", "5"])],
)
def test_preset_layouts(name, ground_dim, excited_dim, F_b):
    layout = validate(LevelScheme.preset(name))
    assert layout.ground_dim == ground_dim
    assert layout.excited_dim == excited_dim
    assert list(layout.F_b_values) == [H(f) for f in F_b]


def test_ground_order_is_fa_then_fpa(rb85):
    layout = validate(rb85)
    assert layout.ground_labels[0] == BasisLabel(LEVEL_FA, H("2"), H("-2"))
    assert layout.ground_labels[4] == BasisLabel(LEVEL_FA, H("2"), H("2"))
    assert layout.ground_labels[5] == BasisLabel(LEVEL_FPA, H("3"), H("-3"))
    assert layout.excited_labels[0] == BasisLabel(LEVEL_B, H("1"), H("-1"))
    assert layout.excited_labels[-1] == BasisLabel(LEVEL_B, H("4"), H("4"))


def test_indices_are_bijective(cs133):
    layout = validate(cs133)
    assert [layout.ground_index(lab) for lab in layout.ground_labels] == list(range(layout.ground_dim))
    assert [layout.excited_index(lab) for lab in layout.excited_labels] == list(range(layout.excited_dim))
    assert len(set(layout.atom_labels)) == layout.ground_dim + layout.excited_dim


def test_labels_for(rb85):
    layout = validate(rb85)
    assert len(layout.labels_for(H("3"))) == 7
    with pytest.raises(SchemeError):
        layout.labels_for(H("1"))


def test_half_integer_scheme():
    layout = validate(LevelScheme.from_values("1/2", "3/2", "1", "1/2", "1/2"))
    assert layout.ground_dim == 2 + 4
    assert [str(f) for f in layout.F_b_values] == ["1/2", "3/2"]


@pytest.mark.parametrize(
    "values",
    [
        ("5", "3", "5/2", "1/2", "3/2"),  # F_a outside range
        ("2", "2", "5/2", "1/2", "3/2"),  # F_a == F'_a
        ("2", "3", "-5/2", "1/2", "3/2"),  # negative I
        ("100", "101", "201/2", "1/2", "3/2"),  # momenta past the factorial table
    ],
)
def test_invalid_schemes(values):
    with pytest.raises(SchemeError):
        validate(LevelScheme.from_values(*values))


def test_malformed_text_is_scheme_error():
    with pytest.raises(SchemeError):
        LevelScheme.from_values("2", "3", "5/3", "1/2", "3/2")


def test_unknown_preset():
    with pytest.raises(SchemeError, match="known"):
        LevelScheme.preset("na23")


def test_swapped(rb85):
    swapped = rb85.swapped()
    assert (swapped.F_a, swapped.F_prime_a) == (rb85.F_prime_a, rb85.F_a)
    assert swapped.swapped() == rb85


def test_dark_scheme_warns(caplog):
    validate.cache_clear()
    dark = LevelScheme.from_values("0", "3", "3/2", "3/2", "3/2")
    with caplog.at_level(logging.WARNING, logger="raman.scheme"):
        layout = validate(dark)
    assert layout.ground_dim == 1 + 7
    assert "No F_b couples" in caplog.text


def test_non_dipole_transition_warns(caplog):
    validate.cache_clear()
    scheme = LevelScheme.from_values("1", "2", "3/2", "1/2", "5/2")
    with caplog.at_level(logging.WARNING, logger="raman.scheme"):
        validate(scheme)
    assert "not a dipole transition" in caplog.text
