#!/usr/bin/env python3

from fractions import Fraction

from utils import logger
from utils.errors import QOutOfRange, NotGoodProfile, InternalMismatch
from constants.exactmath import PiRational, binomial, factorial, double_factorial, central_ratio

log = logger.get_log(__name__)

POCKET = 'Pocket'
DUMBBELL = 'Dumbbell'

class Profile(tuple):
    '''
    Numbers (r_h, r_v) of ramified poles on the chosen side of a cylinder.
    '''
    def __new__(cls, r_h, r_v):
        if r_h not in (0, 1, 2) or r_v not in (0, 1, 2):
            raise ValueError('profile entries must be 0, 1 or 2: ({}, {})'.format(r_h, r_v))
        if abs(r_h - r_v) > 1:
            raise ValueError('profile ({}, {}) violates |r_h - r_v| <= 1'.format(r_h, r_v))
        return super().__new__(cls, (r_h, r_v))

    @property
    def r_h(self):
        return self[0]

    @property
    def r_v(self):
        return self[1]

    @property
    def isGood(self):
        return self[0] <= 1 and self[1] <= 1

    def __repr__(self):
        return 'Profile({}, {})'.format(self[0], self[1])

GOOD_PROFILES = (Profile(0, 0), Profile(1, 1), Profile(1, 0), Profile(0, 1))

class ConfigClass(object):
    def __init__(self, kind, profile, multiplicity_count, q=None):
        if kind == DUMBBELL and q is None:
            raise ValueError('dumbbell classes carry q')
        if kind == POCKET and q is not None:
            raise ValueError('pocket classes carry no q')
        self.kind = kind
        self.profile = profile
        self.q = q
        self.multiplicity_count = multiplicity_count

    def __repr__(self):
        return 'ConfigClass({}, {}, q={}, count={})'.format(self.kind, self.profile, self.q, self.multiplicity_count)

class ConstantsBundle(object):
    FIELDS = ('c_pocket_good', 'c_dumbbell_good', 'c_good', 'c_main',
              'c_area_pocket_good', 'c_area_dumbbell_good', 'c_area_good', 'c_area_main')

    def __init__(self, m, delta, **values):
        self.m = m
        self.delta = Fraction(delta)
        for name in self.FIELDS:
            setattr(self, name, values[name])

    def toDict(self):
        data = {'m': self.m, 'delta': str(self.delta)}
        for name in self.FIELDS:
            data[name] = str(getattr(self, name).coeff)
        return data

    @classmethod
    def fromDict(cls, data):
        values = {name: PiRational(Fraction(data[name])) for name in cls.FIELDS}
        return cls(data['m'], Fraction(data['delta']), **values)

    def __eq__(self, other):
        if not isinstance(other, ConstantsBundle):
            return NotImplemented
        return self.toDict() == other.toDict()

def delta(m):
    byFactorial = Fraction(4 ** m * factorial(m) ** 2, factorial(2 * m + 1))
    byDouble = Fraction(double_factorial(2 * m), double_factorial(2 * m + 1))
    if byFactorial != byDouble:
        raise InternalMismatch('delta({}) disagrees: {} vs {}'.format(m, byFactorial, byDouble))
    return byFactorial

def pocket_profile_counts(m):
    return {
        Profile(0, 0): binomial(m - 1, 2),
        Profile(1, 1): 3 * m - 2,
        Profile(1, 0): m - 1,
        Profile(0, 1): m - 1,
    }

def _check_q(m, q):
    if q < 1 or q > m - 1:
        raise QOutOfRange('q={} outside 1..{}'.format(q, m - 1))

def dumbbell_profile_counts(m, q):
    _check_q(m, q)
    weight = binomial(m, q) * q * (m - q)
    mixed = weight * binomial(m - 1, q + 1)
    return {
        Profile(0, 0): weight * binomial(m - 1, q + 2),
        Profile(1, 1): weight * (3 * binomial(m - 1, q + 1) + binomial(m - 1, q)),
        Profile(1, 0): mixed,
        Profile(0, 1): mixed,
    }

def config_classes(m):
    classes = [ConfigClass(POCKET, p, n) for p, n in pocket_profile_counts(m).items()]
    for q in range(1, m):
        classes.extend(ConfigClass(DUMBBELL, p, n, q=q) for p, n in dumbbell_profile_counts(m, q).items())
    return classes

def lifting_factor(profile, pocket_like, area_weighted=False):
    if not profile.isGood:
        raise NotGoodProfile('profile {} has a doubly ramified side'.format(profile))
    trivial = tuple(profile) == (0, 0)
    if pocket_like and not area_weighted:
        return 32 if trivial else 4
    return 64 if trivial else 8

def c_pocket_genus0():
    return PiRational(Fraction(1, 2))

def c_dumbbell_genus0(m, q):
    _check_q(m, q)
    return PiRational(Fraction(2 * factorial(2 * q - 1) * factorial(2 * m - 2 * q - 1), factorial(2 * m)))

def _assemble_pocket(m, area_weighted):
    total = PiRational()
    for profile, count in pocket_profile_counts(m).items():
        total += c_pocket_genus0() * (count * lifting_factor(profile, True, area_weighted))
    return total

def _assemble_dumbbell(m, area_weighted):
    total = PiRational()
    for q in range(1, m):
        for profile, count in dumbbell_profile_counts(m, q).items():
            total += c_dumbbell_genus0(m, q) * (count * lifting_factor(profile, False, area_weighted))
    return total

def c_pocket_good(m):
    assembled = _assemble_pocket(m, False)
    closed = PiRational(2 * (4 * m * m - 7 * m + 4))
    if assembled != closed:
        raise InternalMismatch('pocket constant for m={}: {} vs {}'.format(m, assembled, closed))
    return closed

def c_dumbbell_sum(m):
    total = Fraction(0)
    for q in range(1, m):
        bracket = 8 * binomial(m - 1, q + 2) + 5 * binomial(m - 1, q + 1) + binomial(m - 1, q)
        total += Fraction(binomial(m, q) * bracket, binomial(2 * m, 2 * q))
    return PiRational(4 * total)

def c_dumbbell_good(m):
    summed = c_dumbbell_sum(m)
    assembled = _assemble_dumbbell(m, False)
    closed = PiRational((8 * m * m - 74 * m - 90 + 78 * central_ratio(m)) * Fraction(2, 3))
    if summed != closed or assembled != closed:
        raise InternalMismatch('dumbbell constant for m={}: sum {} assembly {} closed {}'.format(m, summed, assembled, closed))
    return closed

def c_main_closed(m):
    return PiRational((20 * m * m - 95 * m - 78 + 78 * central_ratio(m)) / Fraction(6))

def c_area_main_closed(m):
    return PiRational((8 * m - 33 + 39 * delta(m)) / Fraction(3))

def constants_bundle(m):
    if m < 1:
        raise ValueError('m must be >= 1, got {}'.format(m))
    pocket = c_pocket_good(m)
    dumbbell = c_dumbbell_good(m)
    good = pocket + dumbbell
    main = good / 4
    if main != c_main_closed(m):
        raise InternalMismatch('c({}) assembly {} differs from closed form {}'.format(m, main, c_main_closed(m)))

    areaPocket = _assemble_pocket(m, True) / (2 * m + 1)
    areaDumbbell = _assemble_dumbbell(m, True) / (2 * m + 1)
    areaGood = areaPocket + areaDumbbell
    areaMain = areaGood / 4
    if areaMain != c_area_main_closed(m):
        raise InternalMismatch('c_area({}) assembly {} differs from closed form {}'.format(m, areaMain, c_area_main_closed(m)))

    log.debug('constants for m={}: c={} c_area={}'.format(m, main, areaMain))
    return ConstantsBundle(m, delta(m),
                           c_pocket_good=pocket, c_dumbbell_good=dumbbell,
                           c_good=good, c_main=main,
                           c_area_pocket_good=areaPocket, c_area_dumbbell_good=areaDumbbell,
                           c_area_good=areaGood, c_area_main=areaMain)
