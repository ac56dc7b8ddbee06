from __future__ import annotations

import io
import json

import numpy as np
import pytest

from dynamics.simulation import (
    MIN_SAMPLES,
    DiffusionReport,
    RecurrenceReport,
    blocked_grid,
    diffusion_exponent,
    flow,
    random_start,
    recurrence_fraction,
    sample_times,
    write_orbits_csv,
    write_summary_json,
)


@pytest.fixture(scope='module')
def diffusion(square_surface):

    return diffusion_exponent(square_surface.table, 4, 60, seed=11, samples=MIN_SAMPLES, threads=1)


def test_blocked_grid(square_half):
    grid = blocked_grid(square_half)
    assert grid.shape == (4, 4)
    assert grid.sum() == 4
    assert grid[1, 1] and grid[2, 2]
    assert not grid[0, 0]


def test_sample_times():
    times = sample_times(100, MIN_SAMPLES)
    assert len(times) == MIN_SAMPLES
    assert times[0] == pytest.approx(10)
    assert times[-1] == 100
    assert np.all(np.diff(times) > 0)
    with pytest.raises(ValueError):
        sample_times(100, MIN_SAMPLES - 1)


def test_random_start_is_reproducible(square_half):
    first = random_start(square_half, 5, 3, 0)
    assert random_start(square_half, 5, 3, 0) == first
    assert random_start(square_half, 5, 3, 1) != first
    angle, (x, y) = first
    assert 0 <= angle < 2 * np.pi
    assert not blocked_grid(square_half)[int(x) % 4, int(y) % 4]


def test_flow_in_free_corridor(square_half):
    out = flow(blocked_grid(square_half), [0.5], [0.5], np.array([0.0]), 2.0)
    assert out['x'][0] == pytest.approx(8.5)
    assert out['y'][0] == pytest.approx(0.5)
    assert out['elapsed'][0] == pytest.approx(2.0)
    assert not out['singular'][0]


def test_flow_bounces_between_obstacles(square_half):
    out = flow(blocked_grid(square_half), [0.5], [1.5], np.array([0.0]), 1.0)
    assert out['x'][0] == pytest.approx(0.5)
    assert out['y'][0] == pytest.approx(1.5)


def test_flow_recurrence_flags(square_half):
    blocked = blocked_grid(square_half)
    out = flow(blocked, [0.5, 0.5], [1.5, 0.5], np.array([0.0, 0.0]), 2.0, eps=0.1)
    assert out['recurrent'].tolist() == [True, False]


def test_diffusion_report(diffusion):
    assert diffusion.n_directions == 4
    assert np.all(np.isfinite(diffusion.slopes))
    assert diffusion.maxima.shape == (4, MIN_SAMPLES)
    assert np.all(np.diff(diffusion.maxima, axis=1) >= 0)
    data = diffusion.toDict()
    assert data['m'] == 1
    assert data['seed'] == 11
    assert data['mean_slope'] == pytest.approx(float(np.mean(data['slopes'])))
    assert diffusion.stderr >= 0


def test_diffusion_is_reproducible(square_half, diffusion):
    again = diffusion_exponent(square_half, 4, 60, seed=11, samples=MIN_SAMPLES, threads=2)
    assert np.allclose(again.slopes, diffusion.slopes)
    assert np.allclose(again.angles, diffusion.angles)


def test_diffusion_rejects_bad_arguments(square_half):
    with pytest.raises(ValueError):
        diffusion_exponent(square_half, 0, 100, seed=1)
    with pytest.raises(ValueError):
        diffusion_exponent(square_half, 2, 1, seed=1)
    with pytest.raises(ValueError):
        diffusion_exponent(square_half, 2, 100, seed=1, samples=5)


def test_recurrence_fraction(square_half):
    report = recurrence_fraction(square_half, 6, 20, 0.5, seed=3, threads=1)
    assert 0 <= report.recurrent <= 6
    assert report == recurrence_fraction(square_half, 6, 20, 0.5, seed=3, threads=1)
    everything = recurrence_fraction(square_half, 6, 20, 1e6, seed=3)
    assert everything.fraction == 1.0
    with pytest.raises(ValueError):
        recurrence_fraction(square_half, 6, 20, 0, seed=3)


def test_report_fields():
    report = RecurrenceReport(4, 1, 10.0, 0.1, 2)
    assert report.fraction == 0.25
    assert set(report.toDict()) == {'n_orbits', 'recurrent', 'fraction', 't_max', 'eps', 'seed', 'resampled'}
    single = DiffusionReport(1, 10.0, 0, [1, 10], [0.5], [0.0], [(0.5, 0.5)], [[1.0, 2.0]])
    assert single.stderr == 0.0
    assert single.mean_slope == 0.5


def test_writers(diffusion):
    stream = io.StringIO()
    write_orbits_csv(diffusion, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == 'orbit,angle,x0,y0,slope,samples'
    assert len(lines) == 5

    stream = io.StringIO()
    write_summary_json(diffusion, stream)
    summary = json.loads(stream.getvalue())
    assert summary['n_directions'] == 4
    assert summary['slopes'] == diffusion.slopes.tolist()
    assert len(summary['starts']) == 4
    assert DiffusionReport.fromDict(summary) == diffusion


def test_diffusion_report_from_dict(diffusion):
    again = DiffusionReport.fromDict(diffusion.toDict())
    assert again == diffusion
    assert np.array_equal(again.maxima, diffusion.maxima)
    assert np.array_equal(again.starts, diffusion.starts)
    assert again.mean_slope == diffusion.mean_slope


@pytest.mark.parametrize('report', [
    RecurrenceReport(4, 1, 10.0, 0.1, 2),
    RecurrenceReport(40, 22, 1e4, 1.0, 1, resampled=3),
    RecurrenceReport(0, 0, 5.0, 2.0, 7),
])
def test_recurrence_report_from_dict(report):
    data = json.loads(json.dumps(report.toDict()))
    assert RecurrenceReport.fromDict(data) == report
    stream = io.StringIO()
    write_summary_json(report, stream)
    assert RecurrenceReport.fromDict(json.loads(stream.getvalue())) == report


@pytest.mark.slow
def test_diffusion_slope_band(square_half):
    report = diffusion_exponent(square_half, 30, 2e4, seed=1)
    assert report.resampled <= 3
    assert 0.54 <= report.mean_slope <= 0.80
    # orbits keep moving away
    assert np.mean(report.maxima[:, -1]) > 2 * np.mean(report.maxima[:, 0])


@pytest.mark.slow
def test_recurrence_grows_with_t_max(square_half):
    short = recurrence_fraction(square_half, 40, 1e3, 1.0, seed=1)
    long = recurrence_fraction(square_half, 40, 1e4, 1.0, seed=1)
    assert 0 < short.fraction < 1
    assert long.fraction >= short.fraction
