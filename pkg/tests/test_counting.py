from __future__ import annotations

import io
from fractions import Fraction

import pytest

from utils.errors import NotFound
from surface.origami import COPIES, WindingSignTable
from surface.windTreeTable import load_table
from constants.siegelVeech import GOOD_PROFILES
from cylinders.classifier import classify_direction
from cylinders.counting import (
    PER_CYLINDER_FIELDS,
    SUMMARY_FIELDS,
    CountReport,
    count,
    good_cylinder_search,
    lifting_consistency_check,
    search_directions,
    write_cylinders_csv,
    write_summary_csv,
)


@pytest.fixture(scope='module')
def unit_report(square_surface):
    return count(square_surface, 1, buckets=4, threads=1)


def test_count_rejects_bad_arguments(square_half):
    with pytest.raises(ValueError):
        count(square_half, 0)
    with pytest.raises(ValueError):
        count(square_half, 1, buckets=0)


def test_count_below_shortest_cylinder_is_empty(square_half):
    report = count(square_half, Fraction(1, 10), buckets=3)
    assert report.directions == 0
    assert report.N_all == [0, 0, 0]
    assert report.N_area_good == [0, 0, 0]
    assert report.isConsistent()


def test_count_unit_length(unit_report):
    assert unit_report.Ls == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    assert unit_report.isConsistent()
    # six horizontal and six vertical cylinders of core length one
    assert unit_report.N_all[-1] >= 12
    assert unit_report.N_closed[-1] >= 4
    assert unit_report.N_all[-1] == len(unit_report.records)
    assert sum(unit_report.profiles.values()) == unit_report.N_good[-1]
    assert sum(unit_report.kinds.values()) == unit_report.N_good[-1]


def test_count_is_independent_of_threads(square_surface, unit_report):
    assert count(square_surface, 1, buckets=4, threads=2) == unit_report


def test_report_dict_round_trip(unit_report):
    data = unit_report.toDict()
    assert data['N_bad'] == unit_report.N_bad
    assert CountReport.fromDict(data) == unit_report


def test_report_add_skips_long_cylinders(square_surface):
    report = CountReport(Fraction(1, 2), 2, 48)
    for record in classify_direction(square_surface, (1, 0)):
        report.add(record)
    assert report.records == []
    assert report.N_all == [0, 0]


def test_lifting_consistency_holds(square_surface):
    ok, violations = lifting_consistency_check(square_surface, 1)
    assert ok, violations
    assert violations == []


def test_lifting_consistency_catches_corrupted_signs(square_half):
    signs = WindingSignTable({c: 1 for c in COPIES}, {c: 1 for c in COPIES})
    ok, violations = lifting_consistency_check(square_half, 1, signs=signs, oracle=False)
    assert not ok
    assert violations


def test_search_directions_order():
    assert list(search_directions(2)) == [(1, 0), (0, 1), (-1, 1), (1, 1), (-2, 1), (2, 1), (-1, 2), (1, 2)]


def test_good_cylinder_search(square_surface):
    record = good_cylinder_search(square_surface, 8)
    assert record.isGood
    assert max(abs(record.direction.p), record.direction.q) <= 8
    assert record.winding_h == (0, 0) and record.winding_v == (0, 0)


@pytest.mark.parametrize('name', [
    'square_half.txt', 'square_third.txt', 'rectangle.txt', 'plus.txt',
    'hshape.txt', 'staircase.txt', 'hbumps.txt',
])
def test_good_cylinder_search_on_bundled_tables(table_path, name):
    record = good_cylinder_search(load_table(table_path(name)), 8)
    assert record.isGood
    assert record.profile in GOOD_PROFILES
    assert record.orbit.s * record.orbit.b == 8


@pytest.mark.slow
@pytest.mark.parametrize('name', ['plus.txt', 'hshape.txt', 'hbumps.txt'])
def test_lifting_consistency_on_larger_tables(table_path, name):
    ok, violations = lifting_consistency_check(load_table(table_path(name)), 2)
    assert ok, violations
    assert violations == []


def test_good_cylinder_search_rejects_bad_bound(square_half):
    with pytest.raises(ValueError):
        good_cylinder_search(square_half, 0)


def test_not_found_carries_bound():
    error = NotFound(3)
    assert '3' in str(error)


def test_csv_writers(unit_report):
    stream = io.StringIO()
    write_cylinders_csv(unit_report.records, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ','.join(PER_CYLINDER_FIELDS)
    assert len(lines) == len(unit_report.records) + 1

    stream = io.StringIO()
    write_summary_csv(unit_report, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ','.join(SUMMARY_FIELDS)
    assert lines[-1].startswith('1,{},'.format(unit_report.N_all[-1]))
