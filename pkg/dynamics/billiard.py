#!/usr/bin/env python3

import math
from fractions import Fraction

from utils import logger
from utils.errors import SingularHit

log = logger.get_log(__name__)

EXACT = 'exact'
FLOAT = 'float'

class BilliardState(object):
    '''
    Position in grid units on the plane (cell side = D grid units) and velocity.
    '''
    def __init__(self, x, y, dx, dy, denominator):
        self.x = x
        self.y = y
        self.dx = dx
        self.dy = dy
        self.denominator = denominator

    @classmethod
    def exact(cls, x, y, dx, dy, denominator):
        return cls(Fraction(x), Fraction(y), Fraction(dx), Fraction(dy), denominator)

    @property
    def cell(self):
        D = self.denominator
        return (math.floor(self.x / D), math.floor(self.y / D))

    @property
    def pos(self):
        D = self.denominator
        X, Y = self.cell
        return (self.x - X * D, self.y - Y * D)

    @property
    def dir(self):
        return (abs(self.dx), abs(self.dy), self.dx >= 0, self.dy >= 0)

    def copy(self):
        return BilliardState(self.x, self.y, self.dx, self.dy, self.denominator)

    def reversed(self):
        return BilliardState(self.x, self.y, -self.dx, -self.dy, self.denominator)

    def key(self):
        return (self.x, self.y, self.dx, self.dy)

    def __eq__(self, other):
        if not isinstance(other, BilliardState):
            return NotImplemented
        return self.key() == other.key()

    def __repr__(self):
        return 'BilliardState(({}, {}), ({}, {}))'.format(self.x, self.y, self.dx, self.dy)

class TraceResult(object):
    def __init__(self, state, events, samples, elapsed, displacement=None):
        self.state = state
        self.events = events
        self.samples = samples
        self.elapsed = elapsed
        self.displacement = displacement

    @property
    def kinds(self):
        return [kind for kind, _ in self.events]

def _time_to_line(coord, velocity):
    if velocity > 0:
        return (math.floor(coord) + 1 - coord) / velocity
    if velocity < 0:
        return (math.ceil(coord) - 1 - coord) / velocity
    return None

def _runs_along_edge(table, x, y, dx, dy):
    '''Axis-parallel start on a grid line that bounds an obstacle somewhere along it.'''
    D = table.denominator
    if dx == 0 and x == math.floor(x):
        X = math.floor(x)
        return any(table.isBlocked(X - 1, Y) != table.isBlocked(X, Y) for Y in range(D))
    if dy == 0 and y == math.floor(y):
        Y = math.floor(y)
        return any(table.isBlocked(X, Y - 1) != table.isBlocked(X, Y) for X in range(D))
    return False

def trace(table, state, length_budget, mode=EXACT, max_events=None, sample_every=None):
    '''
    Flow the billiard for length_budget time units of the state's velocity.
    In float mode the velocity is first normalised to one cell per time unit.
    Events are ('v', t) for vertical walls and ('h', t) for horizontal walls.
    '''
    D = table.denominator
    if state.dx == 0 and state.dy == 0:
        raise ValueError('direction must be non-zero')
    if mode == FLOAT:
        norm = math.hypot(float(state.dx), float(state.dy))
        state = BilliardState(float(state.x), float(state.y), D * float(state.dx) / norm, D * float(state.dy) / norm, D)
    else:
        state = BilliardState.exact(state.x, state.y, state.dx, state.dy, D)
    x, y, dx, dy = state.x, state.y, state.dx, state.dy
    x0, y0 = x, y
    elapsed = 0
    events = []
    samples = []
    nextSample = sample_every

    if _runs_along_edge(table, x, y, dx, dy):
        raise SingularHit((x, y))

    while True:
        tx = _time_to_line(x, dx)
        ty = _time_to_line(y, dy)
        t = min(v for v in (tx, ty) if v is not None)
        if elapsed + t >= length_budget:
            rest = length_budget - elapsed
            x, y = x + rest * dx, y + rest * dy
            elapsed = length_budget
            break
        x, y = x + t * dx, y + t * dy
        elapsed += t
        hitX = tx is not None and tx == t
        hitY = ty is not None and ty == t
        sx = 1 if dx > 0 else -1
        sy = 1 if dy > 0 else -1
        if hitX:
            x = round(x) if mode == EXACT else float(round(x))
        if hitY:
            y = round(y) if mode == EXACT else float(round(y))

        if hitX and hitY:
            cx = x - 1 if dx > 0 else x
            cy = y - 1 if dy > 0 else y
            side = table.isBlocked(cx + sx, cy)
            above = table.isBlocked(cx, cy + sy)
            diagonal = table.isBlocked(cx + sx, cy + sy)
            if not side and not above and not diagonal:
                pass
            elif side and diagonal and not above:
                dx = -dx
                events.append(('v', elapsed))
            elif above and diagonal and not side:
                dy = -dy
                events.append(('h', elapsed))
            elif side and above and diagonal:
                dx, dy = -dx, -dy
                events.append(('v', elapsed))
                events.append(('h', elapsed))
            else:
                raise SingularHit((x, y))
        elif hitX:
            cx = x - 1 if dx > 0 else x
            if table.isBlocked(cx + sx, math.floor(y)):
                dx = -dx
                events.append(('v', elapsed))
        elif hitY:
            cy = y - 1 if dy > 0 else y
            if table.isBlocked(math.floor(x), cy + sy):
                dy = -dy
                events.append(('h', elapsed))

        if nextSample is not None and elapsed >= nextSample:
            samples.append((elapsed, math.hypot(float(x - x0), float(y - y0)) / D))
            nextSample += sample_every
        if max_events is not None and len(events) >= max_events:
            break

    return TraceResult(BilliardState(x, y, dx, dy, D), events, samples, elapsed)

def closure_check(table, start, direction, period_length):
    '''
    True iff the exact orbit from start returns to (position, direction) after
    period_length time units of the given velocity.
    '''
    x, y = start
    dx, dy = direction
    initial = BilliardState.exact(x, y, dx, dy, table.denominator)
    result = trace(table, initial, Fraction(period_length), mode=EXACT)
    return result.state == initial

def start_in_cell(table, copy, cell, local, direction):
    '''Billiard state of a point of the unfolded square (copy, cell, local) moving in direction.'''
    (i, j), (X, Y) = copy, cell
    xi, eta = local
    x = X + (xi if i == 0 else 1 - xi)
    y = Y + (eta if j == 0 else 1 - eta)
    p, q = direction
    return BilliardState.exact(x, y, p if i == 0 else -p, q if j == 0 else -q, table.denominator)

def _chord_midpoint(p, q, c):
    '''Midpoint of the chord q x - p y = c through the unit square.'''
    points = set()
    if p != 0:
        for xi in (Fraction(0), Fraction(1)):
            eta = (q * xi - c) / Fraction(p)
            if 0 <= eta <= 1:
                points.add((xi, eta))
    if q != 0:
        for eta in (Fraction(0), Fraction(1)):
            xi = (c + p * eta) / Fraction(q)
            if 0 <= xi <= 1:
                points.add((xi, eta))
    if len(points) < 2:
        raise ValueError('line c = {} misses the unit square for ({}, {})'.format(c, p, q))
    first, last = min(points), max(points)
    return ((first[0] + last[0]) / 2, (first[1] + last[1]) / 2)

def core_start(surface, record):
    '''Billiard state on the middle line of the core strip of a cylinder record.'''
    decomposition = record.cylinder.decomposition
    p, q = decomposition.direction
    band = decomposition.bands[record.cylinder.core]
    square, k = decomposition.strip(band[0])
    local = _chord_midpoint(p, q, Fraction(2 * k + 1, 2))
    origami = surface.origami
    return start_in_cell(surface.table, origami.copy_of[square], origami.cell_pos[square], local, (p, q))

def record_closes(surface, record, multiple=1):
    '''Exact billiard closure after multiple periods of the cylinder core.'''
    state = core_start(surface, record)
    return closure_check(surface.table, (state.x, state.y), (state.dx, state.dy), record.width * multiple)

def origami_trace(origami, square, local, direction, length_budget, signs=None):
    '''
    Straight-line flow on the origami in direction (p, q) for length_budget time units.
    Copy changes are reported as billiard events; when signs are given the cocycle
    displacement (x, y) in grid units is accumulated alongside.
    '''
    p, q = direction
    if p == 0 and q == 0:
        raise ValueError('direction must be non-zero')
    xi, eta = Fraction(local[0]), Fraction(local[1])
    p, q = Fraction(p), Fraction(q)
    copy_of = origami.copy_of
    elapsed = Fraction(0)
    budget = Fraction(length_budget)
    events = []
    dispX, dispY = 0, 0

    def step(s, horizontal, forward):
        nonlocal dispX, dispY
        if horizontal:
            target = origami.right[s] if forward else origami.left[s]
            edgeOwner = s if forward else target
        else:
            target = origami.up[s] if forward else origami.down[s]
            edgeOwner = s if forward else target
        before, after = copy_of[s], copy_of[target]
        if before[0] != after[0]:
            events.append(('v', elapsed))
        if before[1] != after[1]:
            events.append(('h', elapsed))
        if signs is not None and before == after:
            weight = signs.sign_v[copy_of[edgeOwner]] if horizontal else signs.sign_h[copy_of[edgeOwner]]
            if horizontal:
                dispX += weight if forward else -weight
            else:
                dispY += weight if forward else -weight
        return target

    while True:
        tx = _time_to_line(xi, p) if p != 0 else None
        ty = _time_to_line(eta, q) if q != 0 else None
        t = min(v for v in (tx, ty) if v is not None)
        if elapsed + t >= budget:
            rest = budget - elapsed
            xi, eta = xi + rest * p, eta + rest * q
            elapsed = budget
            break
        xi, eta = xi + t * p, eta + t * q
        elapsed += t
        hitX = tx is not None and tx == t
        hitY = ty is not None and ty == t
        if hitX and hitY:
            h = origami.right if p > 0 else origami.left
            v = origami.up if q > 0 else origami.down
            if h[v[square]] != v[h[square]]:
                raise SingularHit((square, xi, eta))
            square = step(step(square, True, p > 0), False, q > 0)
        elif hitX:
            square = step(square, True, p > 0)
        else:
            square = step(square, False, q > 0)
        if hitX:
            xi = Fraction(0) if p > 0 else Fraction(1)
        if hitY:
            eta = Fraction(0) if q > 0 else Fraction(1)

    displacement = (dispX, dispY) if signs is not None else None
    return TraceResult((square, xi, eta), events, [], elapsed, displacement=displacement)
