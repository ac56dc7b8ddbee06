from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from utils.errors import SingularHit
from surface.origami import build_origami
from surface.windTreeTable import load_table
from cylinders.classifier import NON_CLOSING, classify_direction
from dynamics.billiard import (
    FLOAT,
    BilliardState,
    closure_check,
    origami_trace,
    record_closes,
    start_in_cell,
    trace,
)

LOCAL = (Fraction(1, 3), Fraction(1, 7))
DIRECTION = (3, 5)


def _square(origami, copy, cell):
    return next(s for s in range(origami.n) if origami.copy_of[s] == copy and origami.cell_pos[s] == cell)


@pytest.fixture
def start(square_half):
    return start_in_cell(square_half, (0, 0), (0, 0), LOCAL, DIRECTION)


def test_start_in_cell_mirrors_copies(square_half):
    state = start_in_cell(square_half, (1, 1), (0, 0), LOCAL, DIRECTION)
    assert (state.x, state.y) == (Fraction(2, 3), Fraction(6, 7))
    assert (state.dx, state.dy) == (-3, -5)
    assert state.cell == (0, 0)


def test_state_cell_position_and_direction():
    state = BilliardState.exact(Fraction(9, 2), Fraction(-1, 2), 1, 1, 4)
    assert state.cell == (1, -1)
    assert state.pos == (Fraction(1, 2), Fraction(7, 2))
    assert state.dir == (1, 1, True, True)
    assert state.reversed().dir == (1, 1, False, False)


def test_billiard_and_origami_see_the_same_walls(square_half, square_surface, start):
    billiard = trace(square_half, start, 4)
    origami = square_surface.origami
    flat = origami_trace(origami, _square(origami, (0, 0), (0, 0)), LOCAL, DIRECTION, 4)
    assert billiard.events
    assert billiard.events == flat.events
    assert billiard.elapsed == flat.elapsed == 4


def test_origami_displacement_follows_unfolded_position(square_half, square_surface, start):
    origami = square_surface.origami
    flat = origami_trace(origami, _square(origami, (0, 0), (0, 0)), LOCAL, DIRECTION, 4, signs=square_surface.signs)
    billiard = trace(square_half, start, 4)
    assert flat.displacement == (math.floor(billiard.state.x), math.floor(billiard.state.y))


def test_trace_is_reversible(square_half, start):
    forward = trace(square_half, start, 5)
    back = trace(square_half, forward.state.reversed(), 5)
    assert back.state == start.reversed()
    assert len(back.events) == len(forward.events)


def test_closed_core_returns(square_surface):
    records = classify_direction(square_surface, (1, 0))
    closed = [r for r in records if r.isClosed]
    assert closed
    for record in closed:
        assert record_closes(square_surface, record)
        assert record_closes(square_surface, record, 2)


def test_free_corridor_never_returns(square_half):
    # y = 4 grid units lies in the unobstructed corridor
    assert not closure_check(square_half, (Fraction(1, 2), Fraction(9, 2)), (1, 0), 4)
    assert not closure_check(square_half, (Fraction(1, 2), Fraction(9, 2)), (1, 0), 8)


def test_bounce_between_obstacles_returns(square_half):
    assert closure_check(square_half, (Fraction(7, 2), Fraction(5, 2)), (1, 0), 4)
    assert not closure_check(square_half, (Fraction(7, 2), Fraction(5, 2)), (1, 0), 3)


def test_non_closing_records_do_not_return(square_surface):
    for record in classify_direction(square_surface, (0, 1)):
        if record.classification == NON_CLOSING:
            assert not record_closes(square_surface, record)


def test_start_along_obstacle_edge_is_singular(square_half):
    # y = 1 carries the bottom edge of the obstacle
    with pytest.raises(SingularHit):
        trace(square_half, BilliardState.exact(Fraction(1, 2), 1, 1, 0, 4), 3)
    with pytest.raises(SingularHit):
        trace(square_half, BilliardState.exact(3, Fraction(1, 2), 0, 1, 4), 3)


@pytest.mark.parametrize('start,velocity,end', [
    ((Fraction(1, 2), 0), (1, 0), (Fraction(17, 2), 0)),
    ((0, Fraction(1, 2)), (0, 1), (0, Fraction(17, 2))),
    ((Fraction(1, 2), 4), (-1, 0), (Fraction(-15, 2), 4)),
])
def test_start_on_free_grid_line(square_half, start, velocity, end):
    result = trace(square_half, BilliardState.exact(start[0], start[1], velocity[0], velocity[1], 4), 8)
    assert result.events == []
    assert (result.state.x, result.state.y) == end


def test_zero_direction_rejected(square_half, square_surface):
    with pytest.raises(ValueError):
        trace(square_half, BilliardState.exact(Fraction(1, 2), Fraction(1, 2), 0, 0, 4), 1)
    with pytest.raises(ValueError):
        origami_trace(square_surface.origami, 0, LOCAL, (0, 0), 1)


def test_float_mode(square_half, start):
    result = trace(square_half, start, 3, mode=FLOAT, sample_every=1)
    assert result.elapsed == pytest.approx(3)
    assert set(result.kinds) <= {'v', 'h'}
    assert all(distance >= 0 for _, distance in result.samples)
    assert isinstance(result.state.x, float)


def _random_starts(table, seed, count):
    # prime denominators keep the lines away from every grid vertex
    rng = np.random.default_rng(seed)
    free = table.freeCells
    starts = []
    while len(starts) < count:
        p, q = (int(v) for v in rng.integers(1, 5, size=2))
        if math.gcd(p, q) != 1:
            continue
        sx, sy = (int(v) for v in rng.choice([-1, 1], size=2))
        cell = free[int(rng.integers(len(free)))]
        local = (Fraction(int(rng.integers(1, 9973)), 9973), Fraction(int(rng.integers(1, 9967)), 9967))
        starts.append((cell, local, (sx * p, sy * q)))
    return starts


@pytest.mark.slow
@pytest.mark.parametrize('name', ['square_half.txt', 'plus.txt'])
def test_unfolding_matches_billiard_events(table_path, name):
    table = load_table(table_path(name))
    origami = build_origami(table)[0]
    # every closed line of the period torus meets the obstacle, so each D time units holds a wall hit
    budget = 101 * table.denominator
    for cell, local, direction in _random_starts(table, 2024, 50):
        start = start_in_cell(table, (0, 0), cell, local, direction)
        billiard = trace(table, start, budget)
        flat = origami_trace(origami, _square(origami, (0, 0), cell), local, direction, budget)
        assert len(billiard.events) >= 100
        assert billiard.events == flat.events


@pytest.mark.parametrize('name', ['square_half.txt', 'hshape.txt', 'staircase.txt'])
def test_float_mode_sees_the_exact_walls(table_path, name):
    table = load_table(table_path(name))
    for cell, local, direction in _random_starts(table, 7, 5):
        start = start_in_cell(table, (0, 0), cell, local, direction)
        exact = trace(table, start, 20)
        speed = math.hypot(*direction) / table.denominator
        rough = trace(table, start, 20 * speed * 1.01, mode=FLOAT)
        assert exact.events
        assert rough.kinds[:len(exact.events)] == exact.kinds
        for (_, t), (_, s) in zip(exact.events, rough.events):
            assert s / speed == pytest.approx(float(t), rel=1e-6, abs=1e-9)
