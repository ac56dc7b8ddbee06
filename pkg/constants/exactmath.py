#!/usr/bin/env python3

import math
from fractions import Fraction

# Arbitrary-precision rational, always reduced with a positive denominator.
BigRat = Fraction

PI_SQUARED = math.pi * math.pi

def binomial(n, k):
    if n < 0:
        raise ValueError('binomial needs n >= 0, got {}'.format(n))
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)

def factorial(n):
    return math.factorial(n)

def double_factorial(n):
    if n < -1:
        raise ValueError('double factorial needs n >= -1, got {}'.format(n))
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result

class PiRational(object):
    '''
    Exact value coeff * pi^-2.
    '''
    __slots__ = ('_coeff',)

    def __init__(self, coeff=0):
        self._coeff = Fraction(coeff)

    @property
    def coeff(self):
        return self._coeff

    def __add__(self, other):
        if not isinstance(other, PiRational):
            return NotImplemented
        return PiRational(self._coeff + other._coeff)

    def __sub__(self, other):
        if not isinstance(other, PiRational):
            return NotImplemented
        return PiRational(self._coeff - other._coeff)

    def __neg__(self):
        return PiRational(-self._coeff)

    def __mul__(self, scalar):
        if isinstance(scalar, PiRational):
            return NotImplemented
        return PiRational(self._coeff * Fraction(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, PiRational):
            return NotImplemented
        return PiRational(self._coeff / Fraction(scalar))

    def __eq__(self, other):
        if isinstance(other, PiRational):
            return self._coeff == other._coeff
        return NotImplemented

    def __hash__(self):
        return hash(('pi^-2', self._coeff))

    def __float__(self):
        return pirational_eval(self)

    def __repr__(self):
        return 'PiRational({})'.format(self._coeff)

    def __str__(self):
        return render_pirational(self)

def pirational_eval(x):
    return float(x.coeff) / PI_SQUARED

def render_pirational(x):
    return '{}/{} /pi^2'.format(x.coeff.numerator, x.coeff.denominator)

def parse_pirational(text):
    body = text.strip()
    if not body.endswith('/pi^2'):
        raise ValueError('not a pi^-2 value: {}'.format(text))
    return PiRational(Fraction(body[:-len('/pi^2')].strip()))

def central_ratio(m):
    '''4^m (m!)^2 / (2m)!, the term shared by every closed form.'''
    return Fraction(4 ** m * factorial(m) ** 2, factorial(2 * m))
