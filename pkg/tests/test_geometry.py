"""Slant-path geometry."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sitediversity.errors import DomainError
from sitediversity.geometry import PathGeometry, elevation_from_zenith, slant_path


@pytest.mark.parametrize(
    "H, h0, zeta, expected",
    [(5e5, 0.0, 0.0, 5e5), (5e5, 0.0, 60.0, 1e6), (5e5, 1000.0, 0.0, 4.99e5)],
)
def test_slant_path_examples(H, h0, zeta, expected):
    assert slant_path(H, h0, zeta) == pytest.approx(expected, rel=1e-12)


def test_slant_path_at_zenith_is_exact():
    assert slant_path(5e5, 1234.5, 0.0) == 5e5 - 1234.5


@pytest.mark.parametrize("zeta, expected", [(40.0, 50.0), (0.0, 90.0), (90.0, 0.0)])
def test_elevation_from_zenith(zeta, expected):
    assert elevation_from_zenith(zeta) == expected


@pytest.mark.parametrize("zeta", [-1.0, 90.0, 120.0, math.nan])
def test_slant_path_rejects_bad_zenith(zeta):
    with pytest.raises(DomainError):
        slant_path(5e5, 0.0, zeta)


def test_slant_path_rejects_station_above_satellite():
    with pytest.raises(DomainError):
        slant_path(1000.0, 1000.0, 0.0)


def test_elevation_rejects_beyond_horizon():
    with pytest.raises(DomainError):
        elevation_from_zenith(90.5)


def test_path_geometry_rejects_high_station():
    with pytest.raises(DomainError):
        PathGeometry(5e5, 0.0, 6.0, 0.0)


def test_path_geometry_fields():
    g = PathGeometry(5e5, 1000.0, 1.2, 60.0)
    assert g.elevation_angle_deg == 30.0
    assert g.slant_path_m == pytest.approx(998_000.0)
    assert g.slant_path_km == pytest.approx(998.0)
    assert g.sec_zenith == pytest.approx(2.0)


@given(
    st.floats(0.0, 89.0),
    st.floats(0.01, 0.99),
    st.floats(0.0, 4000.0),
)
def test_slant_path_increasing_in_zenith(zeta, frac, h0):
    z2 = zeta + frac
    assert slant_path(5e5, h0, z2) > slant_path(5e5, h0, zeta)


@given(st.floats(0.0, 89.9), st.floats(0.0, 4000.0))
def test_slant_path_at_least_vertical(zeta, h0):
    L = slant_path(5e5, h0, zeta)
    assert L >= 5e5 - h0
    if zeta >= 0.01:
        assert L > 5e5 - h0


@given(st.floats(0.0, 89.9))
def test_elevation_is_complement(zeta):
    assert PathGeometry(5e5, 0.0, 0.0, zeta).elevation_angle_deg == 90.0 - zeta
