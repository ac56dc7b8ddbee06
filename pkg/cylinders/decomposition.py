#!/usr/bin/env python3

import math
from fractions import Fraction

import numpy as np

from utils import logger
from surface.origami import Origami, perm_compose, perm_cycles

log = logger.get_log(__name__)

class Direction(tuple):
    '''Unoriented primitive direction, normalised to q > 0 or (1, 0).'''
    def __new__(cls, p, q):
        if math.gcd(p, q) != 1:
            raise ValueError('direction ({}, {}) is not primitive'.format(p, q))
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return super().__new__(cls, (p, q))

    @property
    def p(self):
        return self[0]

    @property
    def q(self):
        return self[1]

    @property
    def normSquared(self):
        return self[0] * self[0] + self[1] * self[1]

    def __repr__(self):
        return 'Direction({}, {})'.format(self[0], self[1])

def primitive_directions(L, D):
    L = Fraction(L)
    if L <= 0:
        return []
    bound = L * L * D * D
    radius = math.isqrt(int(bound)) + 1
    directions = []
    for q in range(0, radius + 1):
        for p in range(-radius, radius + 1):
            if q == 0 and p != 1:
                continue
            if math.gcd(p, q) != 1 or p * p + q * q > bound:
                continue
            directions.append(Direction(p, q))
    directions.sort(key=lambda d: (d.normSquared, d.q, d.p))
    return directions

def _bezout(a, b):
    # returns (x, y, g) with a x + b y = g
    if b == 0:
        return (1 if a >= 0 else -1), 0, abs(a)
    x, y, g = _bezout(b, a % b)
    return y, x - (a // b) * y, g

def reduce_direction(direction):
    p, q = direction
    x0, y0, g = _bezout(p, q)
    if g != 1:
        raise ValueError('direction ({}, {}) is not primitive'.format(p, q))
    span = abs(x0) + abs(y0) + 1
    best = None
    for k in range(-span, span + 1):
        a, b = x0 + k * q, y0 - k * p
        key = (abs(a) + abs(b), a < 0, b < 0, a, b)
        if best is None or key < best[0]:
            best = (key, a, b)
    _, a, b = best
    return ((a, b), (-q, p))

def _factor(matrix):
    '''Word in T^k and S with product equal to the matrix.'''
    (a, b), (c, d) = matrix
    word = []
    while c != 0:
        k = a // c
        word.append(('T', k))
        word.append(('S', 1))
        # S^-1 T^-k M
        a, b, c, d = c, d, -(a - k * c), -(b - k * d)
    if a == -1:
        word.append(('S', 2))
        b = -b
    word.append(('T', b))
    return word

def _apply_T(right, up, k):
    for _ in range(abs(k)):
        if k > 0:
            up = perm_compose(up, _inverse(right))
        else:
            up = perm_compose(up, right)
    return right, up

def _apply_S(right, up, times):
    for _ in range(times % 4):
        right, up = _inverse(up), right
    return right, up

def _inverse(perm):
    inverse = [0] * len(perm)
    for i, image in enumerate(perm):
        inverse[image] = i
    return tuple(inverse)

def sl2z_transform(origami, matrix):
    (a, b), (c, d) = matrix
    if a * d - b * c != 1:
        raise ValueError('matrix {} does not have determinant 1'.format(matrix))
    right, up = origami.right, origami.up
    for letter, power in reversed(_factor(matrix)):
        if letter == 'T':
            right, up = _apply_T(right, up, power)
        else:
            right, up = _apply_S(right, up, power)
    return Origami(right, up, origami.copy_of, origami.cell_pos)

def matrix_inverse(matrix):
    (a, b), (c, d) = matrix
    return ((d, -b), (-c, a))

class HorizontalCylinder(object):
    def __init__(self, rows, width):
        self.rows = rows
        self.width = width

    @property
    def height(self):
        return len(self.rows)

    @property
    def squares(self):
        return frozenset(s for row in self.rows for s in row)

def horizontal_cylinders(origami):
    rows = perm_cycles(origami.right)
    rowOf = {}
    for r, row in enumerate(rows):
        for s in row:
            rowOf[s] = r
    parent = list(range(len(rows)))

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for r, row in enumerate(rows):
        # top boundary of the row carries only regular vertices
        if all(not origami.isSingularCorner(origami.up[s]) for s in row):
            parent[find(rowOf[origami.up[row[0]]])] = find(r)

    groups = {}
    for r in range(len(rows)):
        groups.setdefault(find(r), []).append(rows[r])
    cylinders = [HorizontalCylinder(group, len(group[0])) for group in groups.values()]
    cylinders.sort(key=lambda c: min(c.squares))
    return cylinders

STEP_RIGHT = 0
STEP_UP = 1
STEP_LEFT = 2

class Cylinder(object):
    def __init__(self, decomposition, bands):
        self.decomposition = decomposition
        self.bands = sorted(bands)
        self.width = len(decomposition.bands[self.bands[0]]) // decomposition.stripsPerSquare

    @property
    def direction(self):
        return self.decomposition.direction

    @property
    def height(self):
        return len(self.bands)

    @property
    def core(self):
        return self.bands[0]

    @property
    def squares(self):
        W = self.decomposition.stripsPerSquare
        return frozenset(strip // W for b in self.bands for strip in self.decomposition.bands[b])

    @property
    def area(self):
        return self.width * self.height

    @property
    def lengthSquared(self):
        '''Squared core length in grid units.'''
        return self.width * self.width * self.direction.normSquared

class DirectionDecomposition(object):
    '''
    Strips of the intercept c = q x - p y inside each square, flowed in direction (p, q).
    Strip index k covers c in (k, k + 1); strip id = square * (|p| + q) + (k - cmin).
    '''
    def __init__(self, origami, direction):
        self.origami = origami
        self.direction = Direction(*direction)
        p, q = self.direction
        self.stripsPerSquare = abs(p) + q
        self.cmin = -p if p >= 0 else 0
        self.cmax = self.cmin + self.stripsPerSquare
        self._buildFlow()
        self._buildBands()
        self._buildCylinders()

    def stripId(self, square, k):
        return square * self.stripsPerSquare + (k - self.cmin)

    def strip(self, strip):
        square, offset = divmod(strip, self.stripsPerSquare)
        return square, offset + self.cmin

    def _buildFlow(self):
        p, q = self.direction
        W = self.stripsPerSquare
        n = self.origami.n
        squares = np.repeat(np.arange(n), W)
        ks = np.tile(np.arange(self.cmin, self.cmax), n)
        right = np.array(self.origami.right)
        up = np.array(self.origami.up)
        left = np.array(self.origami.left)
        if p >= 0:
            goesUp = ks <= q - p - 1
            nextSquare = np.where(goesUp, up[squares], right[squares])
            nextK = np.where(goesUp, ks + p, ks - q)
            self.steps = np.where(goesUp, STEP_UP, STEP_RIGHT)
        else:
            goesUp = ks >= -p
            nextSquare = np.where(goesUp, up[squares], left[squares])
            nextK = np.where(goesUp, ks + p, ks + q)
            self.steps = np.where(goesUp, STEP_UP, STEP_LEFT)
        self.next = nextSquare * W + (nextK - self.cmin)

    def _buildBands(self):
        total = len(self.next)
        self.stripBand = np.full(total, -1, dtype=np.int64)
        self.bands = []
        nxt = self.next.tolist()
        for start in range(total):
            if self.stripBand[start] >= 0:
                continue
            band = []
            strip = start
            while self.stripBand[strip] < 0:
                self.stripBand[strip] = len(self.bands)
                band.append(strip)
                strip = nxt[strip]
            self.bands.append(band)

    def _upperNeighbour(self, square, k):
        p, q = self.direction
        if k + 1 < self.cmax:
            return self.stripId(square, k + 1)
        if q == 0:
            return self.stripId(self.origami.down[square], k)
        if p == 0:
            return self.stripId(self.origami.right[square], k)
        return None

    def _upperLineSingular(self, band):
        p, q = self.direction
        origami = self.origami
        for strip in band:
            s, k = self.strip(strip)
            line = k + 1
            corners = ((0, s), (q, origami.right[s]), (-p, origami.up[s]), (q - p, origami.up[origami.right[s]]))
            for value, owner in corners:
                if value == line and origami.isSingularCorner(owner):
                    return True
        return False

    def _buildCylinders(self):
        parent = list(range(len(self.bands)))

        def find(b):
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            return b

        for b, band in enumerate(self.bands):
            if self._upperLineSingular(band):
                continue
            for strip in band:
                neighbour = self._upperNeighbour(*self.strip(strip))
                if neighbour is not None:
                    parent[find(int(self.stripBand[neighbour]))] = find(b)
        groups = {}
        for b in range(len(self.bands)):
            groups.setdefault(find(b), []).append(b)
        self.cylinders = sorted((Cylinder(self, group) for group in groups.values()), key=lambda c: c.core)
        widths = {c.width for c in self.cylinders}
        log.debug('Direction {}: {} bands, {} cylinders, widths {}'.format(tuple(self.direction), len(self.bands), len(self.cylinders), sorted(widths)))

    def chain(self, band):
        '''Edge chain of a band as an integer vector over the 2n crossings.'''
        n = self.origami.n
        chain = np.zeros(2 * n, dtype=np.int64)
        W = self.stripsPerSquare
        for strip in band:
            s = strip // W
            step = self.steps[strip]
            if step == STEP_RIGHT:
                chain[s] += 1
            elif step == STEP_UP:
                chain[n + s] += 1
            else:
                chain[self.origami.left[s]] -= 1
        return chain

def direction_cylinders(origami, direction):
    return DirectionDecomposition(origami, direction).cylinders
