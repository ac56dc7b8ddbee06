#!/usr/bin/env python3

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from utils import logger
from surface.windTreeTable import table_m

log = logger.get_log(__name__)

MIN_SAMPLES = 20
RECOMMENDED_T_MAX = 1e4
MAX_ATTEMPTS = 8
# relative tolerance for two grid lines reached at the same time
CORNER_TOLERANCE = 1e-9

class DiffusionReport(object):
    def __init__(self, m, t_max, seed, times, slopes, angles, starts, maxima, resampled=0):
        self.m = m
        self.t_max = t_max
        self.seed = seed
        self.times = np.asarray(times, dtype=float)
        self.slopes = np.asarray(slopes, dtype=float)
        self.angles = np.asarray(angles, dtype=float)
        self.starts = np.asarray(starts, dtype=float)
        self.maxima = np.asarray(maxima, dtype=float)
        self.resampled = resampled

    @property
    def n_directions(self):
        return len(self.slopes)

    @property
    def mean_slope(self):
        return float(np.mean(self.slopes))

    @property
    def stderr(self):
        if len(self.slopes) < 2:
            return 0.0
        return float(np.std(self.slopes, ddof=1) / math.sqrt(len(self.slopes)))

    def toDict(self):
        return {
            'm': self.m,
            'n_directions': self.n_directions,
            't_max': self.t_max,
            'seed': self.seed,
            'mean_slope': self.mean_slope,
            'stderr': self.stderr,
            'resampled': self.resampled,
            'times': self.times.tolist(),
            'slopes': self.slopes.tolist(),
            'angles': self.angles.tolist(),
            'starts': self.starts.tolist(),
            'maxima': self.maxima.tolist(),
        }

    @classmethod
    def fromDict(cls, data):
        # mean_slope, stderr and n_directions are derived from the slopes
        return cls(data['m'], data['t_max'], data['seed'], data['times'], data['slopes'],
                   data['angles'], data['starts'], data['maxima'], resampled=data.get('resampled', 0))

    def __eq__(self, other):
        if not isinstance(other, DiffusionReport):
            return NotImplemented
        return self.toDict() == other.toDict()

class RecurrenceReport(object):
    def __init__(self, n_orbits, recurrent, t_max, eps, seed, resampled=0):
        self.n_orbits = n_orbits
        self.recurrent = recurrent
        self.t_max = t_max
        self.eps = eps
        self.seed = seed
        self.resampled = resampled

    @property
    def fraction(self):
        return self.recurrent / self.n_orbits if self.n_orbits else 0.0

    def toDict(self):
        return {
            'n_orbits': self.n_orbits,
            'recurrent': self.recurrent,
            'fraction': self.fraction,
            't_max': self.t_max,
            'eps': self.eps,
            'seed': self.seed,
            'resampled': self.resampled,
        }

    @classmethod
    def fromDict(cls, data):
        return cls(data['n_orbits'], data['recurrent'], data['t_max'], data['eps'], data['seed'],
                   resampled=data.get('resampled', 0))

    def __eq__(self, other):
        if not isinstance(other, RecurrenceReport):
            return NotImplemented
        return self.toDict() == other.toDict()

def blocked_grid(table):
    D = table.denominator
    grid = np.zeros((D, D), dtype=bool)
    for X, Y in table.obstacleCells:
        grid[X % D, Y % D] = True
    return grid

def sample_times(t_max, samples):
    if samples < MIN_SAMPLES:
        raise ValueError('need at least {} samples per orbit, got {}'.format(MIN_SAMPLES, samples))
    times = np.logspace(0.5 * math.log10(t_max), math.log10(t_max), samples)
    times[-1] = t_max
    return times

def random_start(table, seed, index, attempt):
    '''Angle and free start point (grid units) drawn from the generator seeded by (seed, index, attempt).'''
    rng = np.random.default_rng([seed, index, attempt])
    free = table.freeCells
    angle = rng.uniform(0.0, 2.0 * math.pi)
    X, Y = free[rng.integers(len(free))]
    offset = rng.random(2)
    return angle, (X + offset[0], Y + offset[1])

def flow(blocked, x, y, angles, t_max, times=None, eps=None):
    '''
    Integrate many billiard orbits at once for t_max time units at one cell per unit.
    Returns a dict with final positions, per-orbit singular flags, the running maximum
    displacement at the requested times, and the recurrence flags when eps is given.
    '''
    D = blocked.shape[0]
    n = len(x)
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    x0, y0 = x.copy(), y.copy()
    vx = D * np.cos(angles)
    vy = D * np.sin(angles)
    elapsed = np.zeros(n)
    active = np.ones(n, dtype=bool)
    singular = np.zeros(n, dtype=bool)
    runningMax = np.zeros(n)
    sampled = np.zeros((n, len(times)), dtype=float) if times is not None else None
    nextSample = np.zeros(n, dtype=np.int64)
    left = np.zeros(n, dtype=bool)
    returned = np.zeros(n, dtype=bool)

    with np.errstate(divide='ignore', invalid='ignore'):
        while active.any():
            idx = np.nonzero(active)[0]
            px, py = x[idx], y[idx]
            ux, uy = vx[idx], vy[idx]
            tx = np.where(ux > 0, (np.floor(px) + 1 - px) / ux, np.where(ux < 0, (np.ceil(px) - 1 - px) / ux, np.inf))
            ty = np.where(uy > 0, (np.floor(py) + 1 - py) / uy, np.where(uy < 0, (np.ceil(py) - 1 - py) / uy, np.inf))
            t = np.minimum(tx, ty)
            finishing = elapsed[idx] + t >= t_max
            t = np.where(finishing, t_max - elapsed[idx], t)
            corner = ~finishing & (np.abs(tx - ty) <= CORNER_TOLERANCE * np.maximum(t, 1.0 / D))
            hitX = ~finishing & ~corner & (tx < ty)
            hitY = ~finishing & ~corner & (ty < tx)

            if eps is not None:
                # closest approach to the start along the straight segment
                rx, ry = px - x0[idx], py - y0[idx]
                speed2 = ux * ux + uy * uy
                s = np.clip(-(rx * ux + ry * uy) / speed2, 0.0, t)
                closest = np.hypot(rx + s * ux, ry + s * uy) / D
                returned[idx] |= left[idx] & (closest <= eps)

            px = px + t * ux
            py = py + t * uy
            px = np.where(hitX, np.round(px), px)
            py = np.where(hitY, np.round(py), py)

            aheadX = np.where(ux > 0, np.round(px), np.round(px) - 1).astype(np.int64) % D
            currentY = np.floor(py).astype(np.int64) % D
            bounceX = hitX & blocked[aheadX, currentY]
            aheadY = np.where(uy > 0, np.round(py), np.round(py) - 1).astype(np.int64) % D
            currentX = np.floor(px).astype(np.int64) % D
            bounceY = hitY & blocked[currentX, aheadY]

            vx[idx] = np.where(bounceX, -ux, ux)
            vy[idx] = np.where(bounceY, -uy, uy)
            x[idx], y[idx] = px, py
            elapsed[idx] += t

            distance = np.hypot(px - x0[idx], py - y0[idx]) / D
            runningMax[idx] = np.maximum(runningMax[idx], distance)
            if eps is not None:
                left[idx] |= distance > eps
            if times is not None:
                reached = np.searchsorted(times, elapsed[idx], side='right')
                for k in np.nonzero(reached > nextSample[idx])[0]:
                    orbit = idx[k]
                    sampled[orbit, nextSample[orbit]:reached[k]] = runningMax[orbit]
                    nextSample[orbit] = reached[k]

            singular[idx[corner]] = True
            active[idx[corner | finishing]] = False

    if times is not None:
        for orbit in np.nonzero(nextSample < len(times))[0]:
            sampled[orbit, nextSample[orbit]:] = runningMax[orbit]

    if eps is not None:
        returned |= ~left
    return {'x': x, 'y': y, 'elapsed': elapsed, 'singular': singular, 'maxima': sampled, 'recurrent': returned}

def _fit_slopes(times, maxima):
    logs = np.log(np.maximum(maxima, 1e-12))
    slope, _ = np.polyfit(np.log(times), logs.T, 1)
    return np.atleast_1d(slope)

def _run_orbits(table, indices, seed, t_max, times=None, eps=None):
    '''Integrate the given orbit indices, redrawing singular ones with the next attempt number.'''
    blocked = blocked_grid(table)
    attempts = {i: 0 for i in indices}
    pending = list(indices)
    results = {}
    resampled = 0
    while pending:
        draws = [random_start(table, seed, i, attempts[i]) for i in pending]
        angles = np.array([angle for angle, _ in draws])
        x = np.array([start[0] for _, start in draws])
        y = np.array([start[1] for _, start in draws])
        out = flow(blocked, x, y, angles, t_max, times=times, eps=eps)
        retry = []
        for k, i in enumerate(pending):
            if out['singular'][k] and attempts[i] + 1 < MAX_ATTEMPTS:
                attempts[i] += 1
                resampled += 1
                retry.append(i)
                continue
            results[i] = {
                'angle': angles[k],
                'start': (x[k], y[k]),
                'maxima': None if out['maxima'] is None else out['maxima'][k],
                'recurrent': bool(out['recurrent'][k]),
            }
        pending = retry
    return results, resampled

def _chunks(count, threads):
    parts = max(1, min(threads or 1, count))
    return [list(range(count))[k::parts] for k in range(parts)]

def _run_all(table, count, seed, t_max, threads, times=None, eps=None):
    results = {}
    resampled = 0
    with ThreadPoolExecutor(max_workers=threads) as executer:
        for partial, retried in executer.map(lambda chunk: _run_orbits(table, chunk, seed, t_max, times, eps), _chunks(count, threads)):
            results.update(partial)
            resampled += retried
    return [results[i] for i in range(count)], resampled

def diffusion_exponent(table, n_directions, t_max, seed, samples=24, threads=None):
    if n_directions < 1:
        raise ValueError('n_directions must be at least 1, got {}'.format(n_directions))
    if t_max <= 1:
        raise ValueError('t_max must exceed 1, got {}'.format(t_max))
    if t_max < RECOMMENDED_T_MAX:
        log.warning('t_max={} is below {:g}, slopes are rough estimates'.format(t_max, RECOMMENDED_T_MAX))
    times = sample_times(t_max, samples)
    start = time.perf_counter()
    orbits, resampled = _run_all(table, n_directions, seed, t_max, threads, times=times)
    maxima = np.vstack([orbit['maxima'] for orbit in orbits])
    slopes = _fit_slopes(times, maxima)
    log.debug('Diffusion of {} orbits took {:.2f} seconds, {} resampled'.format(n_directions, time.perf_counter() - start, resampled))
    return DiffusionReport(table_m(table), t_max, seed, times, slopes,
                           [orbit['angle'] for orbit in orbits], [orbit['start'] for orbit in orbits],
                           maxima, resampled=resampled)

def recurrence_fraction(table, n_orbits, t_max, eps, seed, threads=None):
    if eps <= 0:
        raise ValueError('eps must be positive, got {}'.format(eps))
    if n_orbits < 1:
        raise ValueError('n_orbits must be at least 1, got {}'.format(n_orbits))
    orbits, resampled = _run_all(table, n_orbits, seed, t_max, threads, eps=eps)
    recurrent = sum(1 for orbit in orbits if orbit['recurrent'])
    log.debug('{} of {} orbits returned within {}'.format(recurrent, n_orbits, eps))
    return RecurrenceReport(n_orbits, recurrent, t_max, eps, seed, resampled=resampled)

def write_orbits_csv(report, stream):
    writer = csv.writer(stream)
    writer.writerow(['orbit', 'angle', 'x0', 'y0', 'slope', 'samples'])
    for k in range(report.n_directions):
        writer.writerow([k, '{:.12g}'.format(report.angles[k]), '{:.12g}'.format(report.starts[k][0]),
                         '{:.12g}'.format(report.starts[k][1]), '{:.6f}'.format(report.slopes[k]),
                         ';'.join('{:.6g}'.format(v) for v in report.maxima[k])])

def write_summary_json(report, stream):
    json.dump(report.toDict(), stream, indent=2, sort_keys=True)
    stream.write('\n')
