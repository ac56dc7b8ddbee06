#!/usr/bin/env python3

from argparse import ArgumentParser
from fractions import Fraction

FORMATS = ('text', 'csv', 'json')

def _fraction(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError('not a number: {}'.format(text))
    return value

def build_parser(name, description, version):
    parser = ArgumentParser(prog=name, description=description)

    # Add basic arguments
    parser.add_argument('-v', '--version', action='version', version='{} {}'.format(name, version), help='Show the name and version number')
    parser.add_argument('-q', '--quiet', action='store_true', dest='quiet', help='Only print results and critical errors', default=False)
    parser.add_argument('--format', dest='format', choices=FORMATS, help='Output format, defaults to settings.ini [RUN] format', default=None)
    parser.add_argument('--threads', metavar='N', dest='threads', type=int, help='Worker cap for direction and orbit pools', default=None)

    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    constants = commands.add_parser('constants', help='Siegel-Veech constants and diffusion rate for m obstacle corners')
    constants.add_argument('--m', metavar='M', dest='m', type=int, required=True, help='Number of convex obstacle corners divided by 4')
    constants.add_argument('--max', action='store_true', dest='all', help='Report every m from 1 to M', default=False)

    identities = commands.add_parser('identities', help='Verify the binomial sum identities exactly')
    identities.add_argument('--m-max', metavar='M', dest='m_max', type=int, help='Largest m, defaults to settings.ini [IDENTITIES] m_max', default=None)

    count = commands.add_parser('count', help='Count good, bad and non-closing cylinders up to length L')
    count.add_argument('--table', metavar='FILE', dest='table', required=True, help='Table file')
    count.add_argument('--L', metavar='L', dest='L', type=_fraction, help='Length bound in cell units', default=None)
    count.add_argument('--buckets', metavar='B', dest='buckets', type=int, help='Number of L buckets in the summary', default=None)
    count.add_argument('--csv', metavar='FILE', dest='csv', help='Write one row per cylinder to FILE', default=None)

    check = commands.add_parser('check', help='Check the lifting lemmas and the closure oracle up to length L')
    check.add_argument('--table', metavar='FILE', dest='table', required=True, help='Table file')
    check.add_argument('--L', metavar='L', dest='L', type=_fraction, help='Length bound in cell units', default=None)

    search = commands.add_parser('search', help='Find a good cylinder')
    search.add_argument('--table', metavar='FILE', dest='table', required=True, help='Table file')
    search.add_argument('--p-max', metavar='P', dest='p_max', type=int, help='Largest |p| and |q| to scan', default=None)

    for command, helpText, countHelp in (('diffuse', 'Estimate the diffusion rate by simulation', 'Number of random directions'),
                                        ('recur', 'Estimate the fraction of recurrent orbits by simulation', 'Number of orbits')):
        dynamics = commands.add_parser(command, help=helpText)
        dynamics.add_argument('--table', metavar='FILE', dest='table', required=True, help='Table file')
        dynamics.add_argument('--t-max', metavar='T', dest='t_max', type=float, help='Flow time in cell units', default=None)
        dynamics.add_argument('--n', metavar='N', dest='n', type=int, help=countHelp, default=None)
        dynamics.add_argument('--seed', metavar='S', dest='seed', type=int, help='Random seed', default=None)
        if command == 'diffuse':
            dynamics.add_argument('--samples', metavar='K', dest='samples', type=int, help='Log-spaced samples per orbit', default=None)
            dynamics.add_argument('--csv', metavar='FILE', dest='csv', help='Write one row per orbit to FILE', default=None)
        else:
            dynamics.add_argument('--eps', metavar='EPS', dest='eps', type=float, help='Return radius in cell units', default=None)

    return parser

def validate_arguments(parser, args):
    '''Reject out-of-range values with a usage error before any work starts.'''
    if args.threads is not None and args.threads < 1:
        parser.error('--threads must be at least 1')
    if args.command == 'constants' and args.m < 1:
        parser.error('--m must be at least 1')
    if args.command == 'identities' and args.m_max is not None and args.m_max < 1:
        parser.error('--m-max must be at least 1')
    if args.command in ('count', 'check') and args.L is not None and args.L <= 0:
        parser.error('--L must be positive')
    if args.command == 'count' and args.buckets is not None and args.buckets < 1:
        parser.error('--buckets must be at least 1')
    if args.command == 'search' and args.p_max is not None and args.p_max < 1:
        parser.error('--p-max must be at least 1')
    if args.command in ('diffuse', 'recur'):
        if args.n is not None and args.n < 1:
            parser.error('--n must be at least 1')
        if args.t_max is not None and args.t_max <= 1:
            parser.error('--t-max must be greater than 1')
        if args.command == 'recur' and args.eps is not None and args.eps <= 0:
            parser.error('--eps must be positive')
        if args.command == 'diffuse' and args.samples is not None and args.samples < 20:
            parser.error('--samples must be at least 20')
    return args

def get_arguments(name, description, version, argv=None):
    parser = build_parser(name, description, version)
    return validate_arguments(parser, parser.parse_args(argv))
