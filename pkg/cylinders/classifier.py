#!/usr/bin/env python3

import math
from fractions import Fraction

from utils import logger
from utils.errors import NotGood
from surface.origami import DeckGroup, build_origami
from surface.homology import QuotientWindings
from surface.windTreeTable import table_m
from constants.siegelVeech import Profile
from cylinders.decomposition import DirectionDecomposition

log = logger.get_log(__name__)

GOOD = 'Good'
CLOSED_BAD = 'ClosedBad'
NON_CLOSING = 'NonClosing'

CORE_OFFSET = Fraction(1, 4)

class WindTreeSurface(object):
    '''
    Everything needed to classify cylinders of one table.
    '''
    def __init__(self, table, signs=None):
        self.table = table
        self.origami, self.deck, defaultSigns = build_origami(table)
        self.signs = signs if signs is not None else defaultSigns
        self.m = table_m(table)
        self._windings = None

    @property
    def windings(self):
        if self._windings is None:
            self._windings = QuotientWindings(self.origami, self.deck, self.signs, self.table.denominator)
        return self._windings

    def decompose(self, direction):
        return DirectionDecomposition(self.origami, direction)

class DeckOrbit(object):
    def __init__(self, n_X, b, s, pocket_like, b_h=None, b_v=None):
        self.n_X = n_X
        self.b = b
        self.s = s
        self.pocket_like = pocket_like
        self.b_h = b_h
        self.b_v = b_v

    def toDict(self):
        return {'n_X': self.n_X, 'b': self.b, 's': self.s, 'pocket_like': self.pocket_like}

    def __eq__(self, other):
        if not isinstance(other, DeckOrbit):
            return NotImplemented
        return self.toDict() == other.toDict()

    def __repr__(self):
        return 'DeckOrbit(n_X={}, b={}, s={}, pocket_like={})'.format(self.n_X, self.b, self.s, self.pocket_like)

class CylinderRecord(object):
    def __init__(self, direction, width, height, denominator, winding_h, winding_v, classification,
                 monodromy=None, orbit=None, cylinder=None):
        self.direction = direction
        self.width = width
        self.height = height
        self.denominator = denominator
        self.winding_h = winding_h
        self.winding_v = winding_v
        self.classification = classification
        self.monodromy = monodromy
        self.orbit = orbit
        self.cylinder = cylinder

    @property
    def holonomy_length(self):
        return self.width * math.sqrt(self.direction.normSquared) / self.denominator

    @property
    def lengthSquared(self):
        '''Squared core length in cell units, exact.'''
        return Fraction(self.width * self.width * self.direction.normSquared, self.denominator * self.denominator)

    @property
    def area(self):
        return self.width * self.height

    @property
    def isGood(self):
        return self.classification == GOOD

    @property
    def isClosed(self):
        return self.classification in (GOOD, CLOSED_BAD)

    @property
    def profile(self):
        if not self.isGood:
            return None
        return monodromy_profile(self)

    @property
    def deck_orbit(self):
        if not self.isGood:
            return None
        return self.orbit

    def __repr__(self):
        return 'CylinderRecord({}, w={}, h={}, {})'.format(tuple(self.direction), self.width, self.height, self.classification)

def _image(decomposition, deck, g, strip, offset):
    p, q = decomposition.direction
    square, k = decomposition.strip(strip)
    square = deck.apply(g, square)
    if DeckGroup.isRotation(g):
        return decomposition.stripId(square, q - p - 1 - k), 1 - offset
    return decomposition.stripId(square, k), offset

def _orbit_keys(decomposition, deck, band):
    keys = {}
    start = decomposition.bands[band][0]
    for g in DeckGroup.ELEMENTS:
        strip, offset = _image(decomposition, deck, g, start, CORE_OFFSET)
        keys[g] = (int(decomposition.stripBand[strip]), offset)
    return keys

def _monodromy(decomposition, deck, band):
    '''Translation reached after one period of the image in the full quotient, and that period.'''
    strips = decomposition.bands[band]
    start = strips[0]
    targets = {}
    for g in DeckGroup.TRANSLATIONS:
        if g != (0, 0, 0):
            targets[_image(decomposition, deck, g, start, CORE_OFFSET)[0]] = g
    for t in range(1, len(strips)):
        if strips[t] in targets:
            return targets[strips[t]], t
    return (0, 0, 0), len(strips)

def deck_orbit_data(decomposition, deck, cylinder):
    keys = _orbit_keys(decomposition, deck, cylinder.core)
    cylinderOf = {}
    for c, other in enumerate(decomposition.cylinders):
        for b in other.bands:
            cylinderOf[b] = c
    distinct = set(keys.values())
    b = len(distinct)
    n_X = len({cylinderOf[key[0]] for key in distinct})

    def orbits(subgroup):
        seen = set()
        count = 0
        for g in DeckGroup.ELEMENTS:
            if keys[g] in seen:
                continue
            count += 1
            for h in subgroup:
                seen.add(keys[DeckGroup.compose(h, g)])
        return count

    return DeckOrbit(n_X, b, 8 // b, b == 2 * n_X, b_h=orbits(DeckGroup.SUBGROUP_H), b_v=orbits(DeckGroup.SUBGROUP_V))

def classify_cylinder(surface, cylinder):
    decomposition = cylinder.decomposition
    chain = decomposition.chain(decomposition.bands[cylinder.core])
    winding_h, winding_v = surface.windings.windings(chain)
    if winding_h == (0, 0) and winding_v == (0, 0):
        classification = GOOD
    elif winding_h[0] == 0 and winding_v[0] == 0:
        classification = CLOSED_BAD
    else:
        classification = NON_CLOSING
    monodromy = _monodromy(decomposition, surface.deck, cylinder.core)
    orbit = deck_orbit_data(decomposition, surface.deck, cylinder)
    return CylinderRecord(decomposition.direction, cylinder.width, cylinder.height, surface.table.denominator,
                          winding_h, winding_v, classification, monodromy=monodromy, orbit=orbit, cylinder=cylinder)

def monodromy_parity(record):
    '''(r_h, r_v) modulo 2 from the translation closing the quotient image.'''
    g = record.monodromy[0]
    r_h = 0 if g[1] == 0 else 1
    r_v = 0 if g[0] == 0 else 1
    return r_h, r_v

def monodromy_profile(record, deck=None):
    if not record.isGood:
        raise NotGood('profile is only defined for good cylinders, got {}'.format(record.classification))
    return Profile(*monodromy_parity(record))

def deck_orbit_structure(record, deck=None):
    if not record.isGood:
        raise NotGood('deck orbit is only reported for good cylinders, got {}'.format(record.classification))
    return record.orbit

def classify_direction(surface, direction):
    decomposition = surface.decompose(direction)
    return [classify_cylinder(surface, c) for c in decomposition.cylinders]
