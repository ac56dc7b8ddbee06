#!/usr/bin/env python3

import csv
import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from utils import logger
from utils.errors import NotFound, WindTreeError
from constants.siegelVeech import GOOD_PROFILES, lifting_factor
from cylinders.decomposition import Direction, primitive_directions
from cylinders.classifier import WindTreeSurface, classify_direction, monodromy_parity
from dynamics.billiard import record_closes

log = logger.get_log(__name__)

PER_CYLINDER_FIELDS = ('p', 'q', 'width', 'height', 'length', 'class', 'r_h', 'r_v', 'n_X', 'b', 's', 'pocket_like')
SUMMARY_FIELDS = ('L', 'N_all', 'N_closed', 'N_good', 'N_bad', 'N_area_good')

class CountReport(object):
    '''
    Counting functions of one table sampled at buckets L_max * k / buckets, k = 1..buckets.
    '''
    def __init__(self, L_max, buckets, area):
        self.L_max = Fraction(L_max)
        self.buckets = buckets
        self.area = area
        self.Ls = [self.L_max * k / buckets for k in range(1, buckets + 1)]
        self.N_all = [0] * buckets
        self.N_closed = [0] * buckets
        self.N_good = [0] * buckets
        self.N_area_good = [Fraction(0)] * buckets
        self.profiles = Counter()
        self.kinds = Counter()
        self.records = []
        self.directions = 0

    @property
    def N_bad(self):
        return [closed - good for closed, good in zip(self.N_closed, self.N_good)]

    def add(self, record):
        '''Tally one cylinder in every bucket its core length fits in.'''
        first = next((k for k, L in enumerate(self.Ls) if record.lengthSquared <= L * L), None)
        if first is None:
            return
        self.records.append(record)
        for k in range(first, self.buckets):
            self.N_all[k] += 1
            if record.isClosed:
                self.N_closed[k] += 1
            if record.isGood:
                self.N_good[k] += 1
                self.N_area_good[k] += Fraction(record.area, self.area)
        if record.isGood:
            self.profiles[tuple(record.profile)] += 1
            self.kinds['pocket' if record.orbit.pocket_like else 'dumbbell'] += 1

    def isConsistent(self):
        for k in range(self.buckets):
            if not self.N_good[k] + self.N_bad[k] == self.N_closed[k] <= self.N_all[k]:
                return False
            if k and (self.N_all[k] < self.N_all[k - 1] or self.N_closed[k] < self.N_closed[k - 1] or
                      self.N_good[k] < self.N_good[k - 1] or self.N_area_good[k] < self.N_area_good[k - 1]):
                return False
        return True

    def toDict(self):
        return {
            'L_max': str(self.L_max),
            'buckets': self.buckets,
            'area': self.area,
            'directions': self.directions,
            'L': [str(L) for L in self.Ls],
            'N_all': list(self.N_all),
            'N_closed': list(self.N_closed),
            'N_good': list(self.N_good),
            'N_bad': self.N_bad,
            'N_area_good': [str(a) for a in self.N_area_good],
            'profiles': {'{},{}'.format(*profile): self.profiles[profile] for profile in sorted(self.profiles)},
            'kinds': dict(self.kinds),
        }

    @classmethod
    def fromDict(cls, data):
        report = cls(Fraction(data['L_max']), data['buckets'], data['area'])
        report.directions = data.get('directions', 0)
        report.N_all = list(data['N_all'])
        report.N_closed = list(data['N_closed'])
        report.N_good = list(data['N_good'])
        report.N_area_good = [Fraction(a) for a in data['N_area_good']]
        for key, value in data.get('profiles', {}).items():
            report.profiles[tuple(int(r) for r in key.split(','))] = value
        report.kinds.update(data.get('kinds', {}))
        return report

    def __eq__(self, other):
        if not isinstance(other, CountReport):
            return NotImplemented
        return self.toDict() == other.toDict()

def _surface(table, signs=None):
    if isinstance(table, WindTreeSurface):
        return table
    return WindTreeSurface(table, signs)

def _classify_within(surface, direction, L):
    bound = Fraction(L) ** 2
    return [record for record in classify_direction(surface, direction) if record.lengthSquared <= bound]

def count(table, L, buckets=10, threads=None, signs=None):
    if Fraction(L) <= 0:
        raise ValueError('L must be positive, got {}'.format(L))
    if buckets < 1:
        raise ValueError('buckets must be at least 1, got {}'.format(buckets))
    surface = _surface(table, signs)
    # built once before the pool so workers only read it
    surface.windings
    directions = primitive_directions(L, surface.table.denominator)
    report = CountReport(L, buckets, surface.origami.n)
    report.directions = len(directions)
    log.info('Counting cylinders of length <= {} over {} directions'.format(L, len(directions)))
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=threads) as executer:
        for records in executer.map(lambda d: _classify_within(surface, d, L), directions):
            for record in records:
                report.add(record)
    log.debug('Counted {} cylinders in {:.2f} seconds'.format(len(report.records), time.perf_counter() - start))
    return report

def search_directions(p_max):
    yield Direction(1, 0)
    yield Direction(0, 1)
    rest = [Direction(p, q) for q in range(1, p_max + 1) for p in range(-p_max, p_max + 1)
            if math.gcd(p, q) == 1 and (p, q) != (0, 1)]
    for d in sorted(rest, key=lambda d: (max(abs(d.p), d.q), d.normSquared, d.q, d.p)):
        yield d

def good_cylinder_search(table, p_max, signs=None):
    '''First good cylinder among (1, 0), (0, 1), then directions with |p|, |q| <= p_max.'''
    if p_max < 1:
        raise ValueError('p_max must be at least 1, got {}'.format(p_max))
    surface = _surface(table, signs)
    for direction in search_directions(p_max):
        for record in classify_direction(surface, direction):
            if record.isGood:
                log.info('Found good cylinder {}'.format(record))
                return record
    raise NotFound(p_max)

def _check_record(surface, record, oracle):
    violations = []
    where = '{} w={} h={}'.format(tuple(record.direction), record.width, record.height)
    r_h, r_v = monodromy_parity(record)
    orbit = record.orbit
    if (orbit.b_h == 1) != (r_h == 1) or (orbit.b_v == 1) != (r_v == 1):
        violations.append('{}: orbit counts ({}, {}) disagree with monodromy parity ({}, {})'.format(where, orbit.b_h, orbit.b_v, r_h, r_v))
    if r_h == 1 and record.winding_h != (0, 0):
        violations.append('{}: odd h-monodromy with winding_h {}'.format(where, record.winding_h))
    if r_v == 1 and record.winding_v != (0, 0):
        violations.append('{}: odd v-monodromy with winding_v {}'.format(where, record.winding_v))

    if record.isGood:
        band = record.cylinder.decomposition.bands[record.cylinder.core]
        period = record.monodromy[1]
        s = len(band) // period
        if s * period != len(band) or s != orbit.s or orbit.s * orbit.b != 8:
            violations.append('{}: length ratio {} against orbit {}'.format(where, Fraction(len(band), period), orbit))
        if (tuple(record.profile) == (0, 0)) != (orbit.s == 1):
            violations.append('{}: profile {} with s={}'.format(where, record.profile, orbit.s))
        if record.profile not in GOOD_PROFILES or \
           lifting_factor(record.profile, orbit.pocket_like) != Fraction(8 * orbit.n_X, orbit.s * orbit.s):
            violations.append('{}: lifting factor mismatch for {} {}'.format(where, record.profile, orbit))
        if record.winding_h[0] != 0 or record.winding_v[0] != 0:
            violations.append('{}: good cylinder with non-zero displacement'.format(where))

    if oracle:
        if record.isClosed != record_closes(surface, record):
            violations.append('{}: {} but billiard closure says {}'.format(where, record.classification, not record.isClosed))
        elif not record.isClosed and any(record_closes(surface, record, k) for k in range(2, 5)):
            violations.append('{}: non-closing core closes after a multiple of its period'.format(where))
    return violations

def lifting_consistency_check(table, L, signs=None, oracle=True):
    '''
    Monodromy and deck-orbit lemmas plus the billiard closure oracle over all cylinders
    up to length L. Returns (ok, violations).
    '''
    if Fraction(L) <= 0:
        raise ValueError('L must be positive, got {}'.format(L))
    violations = []
    try:
        surface = _surface(table, signs)
        surface.windings
    except WindTreeError as e:
        return False, ['construction: {}'.format(e)]
    for direction in primitive_directions(L, surface.table.denominator):
        try:
            records = _classify_within(surface, direction, L)
        except WindTreeError as e:
            violations.append('{}: {}'.format(tuple(direction), e))
            continue
        for record in records:
            try:
                violations.extend(_check_record(surface, record, oracle))
            except WindTreeError as e:
                violations.append('{}: {}'.format(tuple(direction), e))
    for violation in violations:
        log.warning(violation)
    return not violations, violations

def cylinder_rows(records):
    for record in records:
        orbit = record.orbit
        r_h, r_v = monodromy_parity(record)
        yield {
            'p': record.direction.p,
            'q': record.direction.q,
            'width': record.width,
            'height': record.height,
            'length': '{:.6f}'.format(record.holonomy_length),
            'class': record.classification,
            'r_h': r_h,
            'r_v': r_v,
            'n_X': orbit.n_X,
            'b': orbit.b,
            's': orbit.s,
            'pocket_like': orbit.pocket_like,
        }

def summary_rows(report):
    for k, L in enumerate(report.Ls):
        yield {
            'L': str(L),
            'N_all': report.N_all[k],
            'N_closed': report.N_closed[k],
            'N_good': report.N_good[k],
            'N_bad': report.N_bad[k],
            'N_area_good': str(report.N_area_good[k]),
        }

def write_cylinders_csv(records, stream):
    writer = csv.DictWriter(stream, fieldnames=PER_CYLINDER_FIELDS)
    writer.writeheader()
    writer.writerows(cylinder_rows(records))

def write_summary_csv(report, stream):
    writer = csv.DictWriter(stream, fieldnames=SUMMARY_FIELDS)
    writer.writeheader()
    writer.writerows(summary_rows(report))
