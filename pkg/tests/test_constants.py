import dataclasses

import pytest

from hshift.constants import (
    HYDROGEN_HYPERFINE_HZ_ROUNDED,
    PhysicalConstants,
    default_constants,
    hz_to_kelvin,
    kelvin_to_hz,
)


def test_defaults_are_positive_and_deterministic(consts):
    assert all(v > 0 for v in dataclasses.astuple(consts))
    assert default_constants() == consts


def test_gyromagnetic_ratio(consts):
    # CODATA 2018: 42.577 478 MHz/T over 28 024.951 MHz/T
    assert consts.gyromagnetic_ratio == pytest.approx(1.5193e-3, rel=1e-4)
    assert 1.4e-3 <= consts.gyromagnetic_ratio <= 1.6e-3


def test_hyperfine_constant(consts):
    assert consts.hyperfine_A_over_h == 1.420405751768e9
    assert abs(consts.hyperfine_A_over_h - 1420e6) < 0.5e6


def test_hydrogen_mass(consts):
    assert consts.mass_H == pytest.approx(1.6735e-27, rel=1e-4)


def test_rounded_override(consts):
    c = consts.with_overrides(hyperfine_A_over_h=HYDROGEN_HYPERFINE_HZ_ROUNDED)
    assert c.hyperfine_A_over_h == 1420e6
    assert c.gamma_e == consts.gamma_e


def test_nonpositive_rejected(consts):
    with pytest.raises(ValueError, match="gamma_p"):
        dataclasses.replace(consts, gamma_p=0.0)


def test_kelvin_roundtrip(consts):
    # 1 K is about 20.8 GHz
    assert kelvin_to_hz(1.0, consts) == pytest.approx(2.0837e10, rel=1e-4)
    assert hz_to_kelvin(kelvin_to_hz(0.07, consts), consts) == pytest.approx(0.07, rel=1e-14)


def test_frozen(consts):
    with pytest.raises(dataclasses.FrozenInstanceError):
        consts.hbar = 1.0
    assert isinstance(consts, PhysicalConstants)
