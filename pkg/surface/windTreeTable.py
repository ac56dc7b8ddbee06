#!/usr/bin/env python3

import math
from fractions import Fraction

from utils import logger
from utils.errors import ParseError, ValidationError

log = logger.get_log(__name__)

# Built-in obstacles, (denominator, counterclockwise vertices).
PLUS_VERTICES = (5, [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (3, 3), (3, 4), (2, 4), (2, 3), (1, 3), (1, 2), (2, 2)])
HSHAPE_VERTICES = (5, [(1, 1), (2, 1), (2, 2), (3, 2), (3, 1), (4, 1), (4, 4), (3, 4), (3, 3), (2, 3), (2, 4), (1, 4)])
STAIRCASE_VERTICES = (7, [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3), (6, 3), (6, 4), (5, 4), (5, 5), (4, 5),
                          (4, 6), (3, 6), (3, 5), (2, 5), (2, 4), (1, 4), (1, 3), (2, 3), (2, 2), (3, 2)])
HBUMPS_VERTICES = (7, [(2, 1), (3, 1), (3, 3), (4, 3), (4, 1), (5, 1), (5, 3), (6, 3), (6, 4), (5, 4),
                       (5, 6), (4, 6), (4, 4), (3, 4), (3, 6), (2, 6), (2, 4), (1, 4), (1, 3), (2, 3)])
GENERATORS = {
    'plus': PLUS_VERTICES,
    'hshape': HSHAPE_VERTICES,
    'staircase': STAIRCASE_VERTICES,
    'hbumps': HBUMPS_VERTICES,
}

class WindTreeTable(object):
    '''
    Validated obstacle: a lattice polygon in the cell [0, D]^2, counterclockwise.
    '''
    def __init__(self, denominator, vertices, name=None):
        self.denominator = denominator
        self.vertices = [tuple(v) for v in vertices]
        self.name = name
        self._cells = None
        self._blocked = None

    @property
    def D(self):
        return self.denominator

    @property
    def obstacleCells(self):
        if self._cells is None:
            self._cells = frozenset(_inside_cells(self.denominator, self.vertices))
        return self._cells

    def isBlocked(self, X, Y):
        D = self.denominator
        return (X % D, Y % D) in self.obstacleCells

    @property
    def freeCells(self):
        D = self.denominator
        return [(X, Y) for X in range(D) for Y in range(D) if (X, Y) not in self.obstacleCells]

    @property
    def corners(self):
        '''Turn sign per vertex: +1 convex, -1 reflex.'''
        turns = []
        count = len(self.vertices)
        for k in range(count):
            ax, ay = self.vertices[k - 1]
            bx, by = self.vertices[k]
            cx, cy = self.vertices[(k + 1) % count]
            cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
            turns.append(1 if cross > 0 else -1)
        return turns

    def toText(self):
        lines = ['denominator {}'.format(self.denominator)]
        lines.extend('vertex {} {}'.format(x, y) for x, y in self.vertices)
        return '\n'.join(lines) + '\n'

    def __repr__(self):
        return 'WindTreeTable(D={}, m={}, name={})'.format(self.denominator, table_m(self), self.name)

def _inside_cells(D, vertices):
    cells = []
    count = len(vertices)
    verticals = []
    for k in range(count):
        (ax, ay), (bx, by) = vertices[k], vertices[(k + 1) % count]
        if ax == bx:
            verticals.append((ax, min(ay, by), max(ay, by)))
    for X in range(D):
        for Y in range(D):
            # ray to the right from the cell centre
            cx, cy = Fraction(2 * X + 1, 2), Fraction(2 * Y + 1, 2)
            crossings = sum(1 for x, y0, y1 in verticals if x > cx and y0 < cy < y1)
            if crossings % 2 == 1:
                cells.append((X, Y))
    return cells

def _segments_touch(a, b):
    (ax0, ay0), (ax1, ay1) = a
    (bx0, by0), (bx1, by1) = b
    return (max(min(ax0, ax1), min(bx0, bx1)) <= min(max(ax0, ax1), max(bx0, bx1)) and
            max(min(ay0, ay1), min(by0, by1)) <= min(max(ay0, ay1), max(by0, by1)))

def _signed_area2(vertices):
    total = 0
    count = len(vertices)
    for k in range(count):
        x0, y0 = vertices[k]
        x1, y1 = vertices[(k + 1) % count]
        total += x0 * y1 - x1 * y0
    return total

def validate_table(table):
    D = table.denominator
    vertices = table.vertices
    count = len(vertices)
    if D < 1:
        raise ValidationError('denominator must be positive')
    if count < 4 or count % 2 == 1:
        raise ValidationError('edges do not alternate horizontal/vertical')

    # Alternating axis-aligned edges
    kinds = []
    for k in range(count):
        (ax, ay), (bx, by) = vertices[k], vertices[(k + 1) % count]
        if ax == bx and ay != by:
            kinds.append('v')
        elif ay == by and ax != bx:
            kinds.append('h')
        else:
            raise ValidationError('edges do not alternate horizontal/vertical')
    if any(kinds[k] == kinds[k - 1] for k in range(count)):
        raise ValidationError('edges do not alternate horizontal/vertical')

    if not all(0 < x < D and 0 < y < D for x, y in vertices):
        raise ValidationError('not strictly interior')

    edges = [(vertices[k], vertices[(k + 1) % count]) for k in range(count)]
    for k in range(count):
        for l in range(k + 2, count):
            if k == 0 and l == count - 1:
                continue
            if _segments_touch(edges[k], edges[l]):
                raise ValidationError('not a simple polygon')

    if _signed_area2(vertices) <= 0:
        raise ValidationError('vertices are not counterclockwise')

    cells = table.obstacleCells
    mirrored_x = frozenset((D - 1 - X, Y) for X, Y in cells)
    mirrored_y = frozenset((X, D - 1 - Y) for X, Y in cells)
    if mirrored_x != cells or mirrored_y != cells:
        raise ValidationError('not symmetric under x -> D-x and y -> D-y')

    turns = table.corners
    convex = turns.count(1)
    reflex = turns.count(-1)
    if convex % 4 != 0 or convex - reflex != 4:
        raise ValidationError('corner count is not 4m convex and 4(m-1) reflex')
    return table

def table_m(table):
    return table.corners.count(1) // 4

def table_area(table):
    D = table.denominator
    return 1 - Fraction(len(table.obstacleCells), D * D)

def table_has_consecutive_reflex(table):
    turns = table.corners
    return any(turns[k] == -1 and turns[k - 1] == -1 for k in range(len(turns)))

def square_table(a, b):
    '''Centred a x b rectangle obstacle, a and b rationals in (0, 1).'''
    a, b = Fraction(a), Fraction(b)
    if not (0 < a < 1 and 0 < b < 1):
        raise ValidationError('not strictly interior')
    D = math.lcm(a.denominator, b.denominator)
    if (D - D * a) % 2 != 0 or (D - D * b) % 2 != 0:
        D *= 2
    x0 = int((D - D * a) / 2)
    y0 = int((D - D * b) / 2)
    x1, y1 = D - x0, D - y0
    table = WindTreeTable(D, [(x0, y0), (x1, y0), (x1, y1), (x0, y1)], name='square {} {}'.format(a, b))
    return validate_table(table)

def generated_table(name):
    if name not in GENERATORS:
        raise ValidationError('unknown table generator: {}'.format(name))
    D, vertices = GENERATORS[name]
    return validate_table(WindTreeTable(D, vertices, name=name))

def _parse_int(token, lineNo):
    try:
        return int(token)
    except ValueError:
        raise ParseError('expected an integer, got "{}"'.format(token), lineNo)

def parse_table(text):
    denominator = None
    vertices = []
    for lineNo, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0].lower()
        if key == 'square':
            if len(tokens) != 3 or denominator is not None or vertices:
                raise ParseError('usage: square <a> <b>', lineNo)
            try:
                a, b = Fraction(tokens[1]), Fraction(tokens[2])
            except (ValueError, ZeroDivisionError):
                raise ParseError('expected two rationals', lineNo)
            return square_table(a, b)
        elif key in GENERATORS:
            if len(tokens) != 1 or denominator is not None or vertices:
                raise ParseError('generator "{}" takes no arguments'.format(key), lineNo)
            return generated_table(key)
        elif key == 'denominator':
            if len(tokens) != 2 or denominator is not None:
                raise ParseError('usage: denominator <D>', lineNo)
            denominator = _parse_int(tokens[1], lineNo)
            if denominator < 1:
                raise ParseError('denominator must be positive', lineNo)
        elif key == 'vertex':
            if denominator is None:
                raise ParseError('vertex before denominator', lineNo)
            if len(tokens) != 3:
                raise ParseError('usage: vertex <x> <y>', lineNo)
            vertices.append((_parse_int(tokens[1], lineNo), _parse_int(tokens[2], lineNo)))
        else:
            raise ParseError('unknown keyword "{}"'.format(tokens[0]), lineNo)

    if denominator is None:
        raise ParseError('missing denominator line')
    if not vertices:
        raise ParseError('no vertices')
    table = validate_table(WindTreeTable(denominator, vertices))
    log.debug('Parsed table with D={} and {} vertices'.format(denominator, len(vertices)))
    return table

def load_table(path):
    try:
        with open(path, 'r') as tableFile:
            text = tableFile.read()
    except OSError as e:
        raise ParseError('could not read {}: {}'.format(path, e))
    table = parse_table(text)
    if table.name is None:
        table.name = path
    return table
