#!/usr/bin/env python3

import csv
import json

from constants.exactmath import render_pirational
from constants.siegelVeech import ConstantsBundle
from cylinders.counting import PER_CYLINDER_FIELDS, cylinder_rows, write_summary_csv
from dynamics.simulation import write_orbits_csv, write_summary_json

CONSTANT_COLUMNS = ('m', 'c_main', 'c_area_main', 'c_good', 'c_area_good', 'delta')

def _json(data, stream):
    json.dump(data, stream, indent=2, sort_keys=True)
    stream.write('\n')

def emit_constants(bundles, fmt, stream):
    if fmt == 'json':
        _json([bundle.toDict() for bundle in bundles], stream)
        return
    if fmt == 'csv':
        writer = csv.writer(stream)
        writer.writerow(('m',) + ConstantsBundle.FIELDS + ('delta',))
        for bundle in bundles:
            writer.writerow([bundle.m] + [render_pirational(getattr(bundle, f)) for f in ConstantsBundle.FIELDS] + [str(bundle.delta)])
        return
    for bundle in bundles:
        stream.write('m = {}\n'.format(bundle.m))
        for name in ConstantsBundle.FIELDS:
            value = getattr(bundle, name)
            stream.write('  {:<22}{:<28}{:.12g}\n'.format(name, render_pirational(value), float(value)))
        stream.write('  {:<22}{:<28}{:.12g}\n'.format('delta', str(bundle.delta), float(bundle.delta)))

def emit_identities(reports, fmt, stream):
    failures = [report for report in reports if not report.equal]
    if fmt == 'json':
        _json({'ok': not failures, 'reports': [report.toDict() for report in reports]}, stream)
        return
    if fmt == 'csv':
        writer = csv.DictWriter(stream, fieldnames=('m', 's', 'direct', 'closed', 'equal'))
        writer.writeheader()
        writer.writerows(report.toDict() for report in reports)
        return
    for report in failures:
        stream.write('FAIL m={} s={}: direct {} closed {}\n'.format(report.m, report.s, report.direct, report.closed))
    stream.write('{} of {} identities hold\n'.format(len(reports) - len(failures), len(reports)))

def emit_count(report, fmt, stream):
    if fmt == 'json':
        _json(report.toDict(), stream)
        return
    if fmt == 'csv':
        write_summary_csv(report, stream)
        return
    stream.write('directions: {}, surface area: {} squares\n'.format(report.directions, report.area))
    stream.write('{:>10} {:>8} {:>8} {:>8} {:>8} {:>14}\n'.format('L', 'all', 'closed', 'good', 'bad', 'area_good'))
    for k, L in enumerate(report.Ls):
        stream.write('{:>10} {:>8} {:>8} {:>8} {:>8} {:>14.6g}\n'.format(
            str(L), report.N_all[k], report.N_closed[k], report.N_good[k], report.N_bad[k], float(report.N_area_good[k])))
    for profile in sorted(report.profiles):
        stream.write('profile {}: {}\n'.format(profile, report.profiles[profile]))
    for kind in sorted(report.kinds):
        stream.write('{}-like: {}\n'.format(kind, report.kinds[kind]))

def emit_check(ok, violations, fmt, stream):
    if fmt == 'json':
        _json({'ok': ok, 'violations': violations}, stream)
        return
    if fmt == 'csv':
        writer = csv.writer(stream)
        writer.writerow(['violation'])
        writer.writerows([v] for v in violations)
        return
    for violation in violations:
        stream.write('{}\n'.format(violation))
    stream.write('{}: {} violations\n'.format('PASS' if ok else 'FAIL', len(violations)))

def emit_record(record, fmt, stream):
    row = next(cylinder_rows([record]))
    if fmt == 'json':
        _json(row, stream)
        return
    if fmt == 'csv':
        writer = csv.DictWriter(stream, fieldnames=PER_CYLINDER_FIELDS)
        writer.writeheader()
        writer.writerow(row)
        return
    stream.write('good cylinder in direction ({}, {}): width {}, height {}, length {}\n'.format(row['p'], row['q'], row['width'], row['height'], row['length']))
    stream.write('profile ({}, {}), n_X={}, b={}, s={}, pocket_like={}\n'.format(row['r_h'], row['r_v'], row['n_X'], row['b'], row['s'], row['pocket_like']))

def emit_diffusion(report, fmt, stream):
    if fmt == 'json':
        write_summary_json(report, stream)
        return
    if fmt == 'csv':
        write_orbits_csv(report, stream)
        return
    stream.write('m={} orbits={} t_max={:g} seed={}\n'.format(report.m, report.n_directions, report.t_max, report.seed))
    stream.write('mean slope {:.6f} +- {:.6f} (resampled {})\n'.format(report.mean_slope, report.stderr, report.resampled))

def emit_recurrence(report, fmt, stream):
    if fmt == 'json':
        _json(report.toDict(), stream)
        return
    if fmt == 'csv':
        data = report.toDict()
        writer = csv.DictWriter(stream, fieldnames=sorted(data))
        writer.writeheader()
        writer.writerow(data)
        return
    stream.write('recurrent {} of {} ({:.4f}) eps={:g} t_max={:g} seed={}\n'.format(
        report.recurrent, report.n_orbits, report.fraction, report.eps, report.t_max, report.seed))
