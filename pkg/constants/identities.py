#!/usr/bin/env python3

import concurrent.futures
from fractions import Fraction

from utils import logger
from utils.errors import UnsupportedS
from constants.exactmath import binomial, factorial, central_ratio

log = logger.get_log(__name__)

SUPPORTED_S = (0, 1, 2)

class IdentityReport(object):
    def __init__(self, m, s, direct, closed):
        self.m = m
        self.s = s
        self.direct = Fraction(direct)
        self.closed = Fraction(closed)

    @property
    def equal(self):
        return self.direct == self.closed

    def toDict(self):
        return {
            'm': self.m,
            's': self.s,
            'direct': str(self.direct),
            'closed': str(self.closed),
            'equal': self.equal,
        }

    @classmethod
    def fromDict(cls, data):
        return cls(data['m'], data['s'], Fraction(data['direct']), Fraction(data['closed']))

    def __eq__(self, other):
        if not isinstance(other, IdentityReport):
            return NotImplemented
        return (self.m, self.s, self.direct, self.closed) == (other.m, other.s, other.direct, other.closed)

    def __repr__(self):
        return 'IdentityReport(m={}, s={}, equal={})'.format(self.m, self.s, self.equal)

def _central_pair(m, q):
    return binomial(2 * q, q) * binomial(2 * m - 2 * q, m - q)

def D_direct(m, s, j):
    total = Fraction(0)
    for q in range(m + 1):
        total += Fraction(_central_pair(m, q) * factorial(q) * q ** j, factorial(q + s))
    return total

def D_recurrence_check(m, s_max, j_max):
    for s in range(1, s_max + 1):
        for j in range(1, j_max + 1):
            if D_direct(m, s, j) != D_direct(m, s - 1, j - 1) - s * D_direct(m, s, j - 1):
                log.debug('D recurrence fails at m={} s={} j={}'.format(m, s, j))
                return False
    return True

def D_closed_s0(m, l):
    # only the first two moments have the 4^m closed form
    if l == 0:
        return Fraction(4 ** m)
    if l == 1:
        return Fraction(m, 2) * 4 ** m
    raise ValueError('no closed form for D(m,0,{})'.format(l))

def X_closed(m, i):
    return Fraction(binomial(2 * m + 2 * i - 1, m + i), binomial(2 * i - 1, i))

def X_direct(m, i):
    total = Fraction(0)
    for q in range(m + 1):
        total += Fraction(_central_pair(m, q) * i, q + i)
    return total

def D_from_X(m, i):
    '''D(m,i,0) rebuilt from the X sums.'''
    total = Fraction(0)
    for j in range(1, i + 1):
        total += Fraction((-1) ** (j - 1), factorial(j) * factorial(i - j)) * X_closed(m, j)
    return total

def P_coefficients(m, s):
    coefficients = [Fraction(1)]
    for i in range(s + 1):
        # multiply by (m - i) - q
        nxt = [Fraction(0)] * (len(coefficients) + 1)
        for k, c in enumerate(coefficients):
            nxt[k] += c * (m - i)
            nxt[k + 1] -= c
        coefficients = nxt
    return coefficients

def _P_value(m, s, q):
    value = 1
    for i in range(s + 1):
        value *= m - q - i
    return value

def A_direct(m, s):
    total = Fraction(0)
    for q in range(m + 1):
        total += Fraction(_central_pair(m, q) * factorial(q) * _P_value(m, s, q), factorial(q + s))
    return total

def A_assembled(m, s):
    return sum((p * D_direct(m, s, j) for j, p in enumerate(P_coefficients(m, s))), Fraction(0))

def A_closed(m, s):
    if s == 0:
        return Fraction(m, 2) * 4 ** m
    if s == 1:
        return (m * m + m) * binomial(2 * m + 1, m + 1) - Fraction(3 * m, 2) * 4 ** m
    raise UnsupportedS('A closed form only for s in (0, 1), got {}'.format(s))

def B_direct(m, s):
    total = Fraction(0)
    for q in range(1, m):
        total += Fraction(binomial(m, q) * binomial(m - 1, q + s), binomial(2 * m, 2 * q))
    return total

def B_from_A(m, s):
    return Fraction(factorial(m) * factorial(m - 1), factorial(2 * m)) * A_direct(m, s) - binomial(m - 1, s)

def B_closed(m, s):
    if s not in SUPPORTED_S:
        raise UnsupportedS('B closed form only for s in {}, got {}'.format(SUPPORTED_S, s))
    ratio = central_ratio(m)
    if s == 0:
        return -1 + ratio / 2
    if s == 1:
        return m + 2 - Fraction(3, 2) * ratio
    return Fraction(m * m, 6) - Fraction(13 * m, 6) - 3 + Fraction(5, 2) * ratio

def verify_identities(m_max, threads=None, closed=B_closed):
    if m_max < 1:
        raise ValueError('m_max must be >= 1, got {}'.format(m_max))
    pairs = [(m, s) for m in range(1, m_max + 1) for s in SUPPORTED_S]

    def report(pair):
        m, s = pair
        return IdentityReport(m, s, B_direct(m, s), closed(m, s))

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executer:
        reports = list(executer.map(report, pairs))

    failures = [r for r in reports if not r.equal]
    if failures:
        log.warning('{} of {} identities failed, first at m={} s={}'.format(len(failures), len(reports), failures[0].m, failures[0].s))
    else:
        log.info('All {} identities hold up to m={}'.format(len(reports), m_max))
    return reports
