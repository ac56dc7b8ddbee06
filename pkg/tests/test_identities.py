from __future__ import annotations

from fractions import Fraction

import pytest

from utils.errors import UnsupportedS
from constants.identities import (
    A_assembled,
    A_closed,
    A_direct,
    B_closed,
    B_direct,
    B_from_A,
    D_closed_s0,
    D_direct,
    D_from_X,
    D_recurrence_check,
    IdentityReport,
    P_coefficients,
    X_closed,
    X_direct,
    verify_identities,
)


@pytest.mark.parametrize('m,s,expected', [(2, 0, Fraction(1, 3)), (3, 0, Fraction(3, 5)), (2, 1, 0), (1, 0, 0), (1, 2, 0)])
def test_b_spot_values(m, s, expected):
    assert B_direct(m, s) == expected
    assert B_closed(m, s) == expected


def test_b_closed_rejects_large_s():
    with pytest.raises(UnsupportedS):
        B_closed(4, 3)


def test_verify_identities_all_equal():
    reports = verify_identities(60, threads=2)
    assert len(reports) == 60 * 3
    assert all(report.equal for report in reports)
    assert [(r.m, r.s) for r in reports[:3]] == [(1, 0), (1, 1), (1, 2)]


def test_verify_identities_catches_corrupted_closed_form():
    def corrupted(m, s):
        return B_closed(m, s) + (1 if (m, s) == (3, 1) else 0)

    reports = verify_identities(4, closed=corrupted)
    failed = [(r.m, r.s) for r in reports if not r.equal]
    assert failed == [(3, 1)]


def test_verify_identities_rejects_zero():
    with pytest.raises(ValueError):
        verify_identities(0)


@pytest.mark.parametrize('m', range(1, 12))
def test_b_from_a_matches_direct_sum(m):
    for s in (0, 1, 2):
        assert B_from_A(m, s) == B_direct(m, s)


@pytest.mark.parametrize('m', range(1, 12))
def test_a_paths_agree(m):
    for s in (0, 1, 2):
        assert A_assembled(m, s) == A_direct(m, s)
    assert A_closed(m, 0) == A_direct(m, 0)
    assert A_closed(m, 1) == A_direct(m, 1)
    with pytest.raises(UnsupportedS):
        A_closed(m, 2)


@pytest.mark.parametrize('m', range(1, 10))
def test_d_moments_and_x_sums(m):
    assert D_direct(m, 0, 0) == D_closed_s0(m, 0) == 4 ** m
    assert D_direct(m, 0, 1) == D_closed_s0(m, 1)
    for i in range(1, 5):
        assert X_direct(m, i) == X_closed(m, i)
        assert D_from_X(m, i) == D_direct(m, i, 0)
    assert D_recurrence_check(m, 3, 3)


@pytest.mark.parametrize('m', range(1, 31))
def test_x_closed_form_sweep(m):
    for i in range(1, 31):
        assert X_direct(m, i) == X_closed(m, i)


@pytest.mark.parametrize('m', range(1, 31))
def test_d_first_moments_closed_form_sweep(m):
    assert D_direct(m, 0, 0) == D_closed_s0(m, 0)
    assert D_direct(m, 0, 1) == D_closed_s0(m, 1) == Fraction(m, 2) * 4 ** m


def test_d_closed_only_for_first_two_moments():
    with pytest.raises(ValueError):
        D_closed_s0(3, 2)


def test_p_coefficients_expand_the_product():
    # (2 - q)(1 - q) = 2 - 3q + q^2
    assert P_coefficients(2, 1) == [2, -3, 1]


@pytest.mark.parametrize('m', range(1, 9))
def test_p_coefficients_closed_shapes(m):
    assert P_coefficients(m, 0) == [m, -1]
    assert P_coefficients(m, 2) == [m ** 3 - 3 * m * m + 2 * m, -(3 * m * m - 6 * m + 2), 3 * m - 3, -1]


def test_p_coefficients_spot_value():
    assert P_coefficients(4, 2) == [24, -26, 9, -1]


def test_identity_report_dict_round_trip():
    report = IdentityReport(5, 2, Fraction(7, 3), Fraction(7, 3))
    data = report.toDict()
    assert data['equal'] is True
    assert IdentityReport.fromDict(data) == report
