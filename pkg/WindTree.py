#!/usr/bin/env python3

import sys
import time

from utils import config, logger, env, __appName__, __description__, __version__
from utils.arguments import get_arguments
from utils.errors import EXIT_OK, EXIT_FAILURE, EXIT_INPUT, WindTreeError
from utils import reports
from constants.siegelVeech import constants_bundle
from constants.identities import verify_identities
from surface.windTreeTable import load_table, table_m
from cylinders.counting import count, good_cylinder_search, lifting_consistency_check, write_cylinders_csv
from dynamics.simulation import diffusion_exponent, recurrence_fraction, write_orbits_csv

log = logger.get_log('WindTree')

def _pick(flag, default):
    return default if flag is None else flag

class WindTree():
    def __init__(self, args, stream=None):
        self.args = args
        self.stream = stream if stream is not None else sys.stdout
        self.format = _pick(args.format, config.output_format)
        self.threads = _pick(args.threads, _pick(env.threads, config.threads))
        self.tablesLoaded = 0
        self.filesWritten = []
        self.startTime = time.perf_counter()

    def printStats(self):
        secondsElapsed = time.perf_counter() - self.startTime
        statsStr = '''
           WindTree Stats:
           Command:          {}
           Tables Loaded:    {}
           Files Written:    {}
           Completed In:     {:.2f}s
        '''.format(self.args.command, self.tablesLoaded, len(self.filesWritten), secondsElapsed)
        for path in self.filesWritten:
            statsStr += '{}\n'.format(path)
        if not logger.quiet:
            print(statsStr, file=sys.stderr)

    def loadTable(self):
        table = load_table(self.args.table)
        self.tablesLoaded += 1
        log.info('Loaded table "{}": D={}, m={}'.format(table.name, table.denominator, table_m(table)))
        return table

    def writeFile(self, path, writer, *data):
        with open(path, 'w', newline='') as out:
            writer(*data, out)
        self.filesWritten.append(path)
        log.info('Wrote {}'.format(path))

    def cmd_constants(self):
        ms = range(1, self.args.m + 1) if self.args.all else [self.args.m]
        bundles = [constants_bundle(m) for m in ms]
        reports.emit_constants(bundles, self.format, self.stream)
        return EXIT_OK

    def cmd_identities(self):
        m_max = _pick(self.args.m_max, config.m_max)
        results = verify_identities(m_max, threads=self.threads)
        reports.emit_identities(results, self.format, self.stream)
        return EXIT_OK if all(r.equal for r in results) else EXIT_FAILURE

    def cmd_count(self):
        table = self.loadTable()
        L = _pick(self.args.L, config.count_length)
        report = count(table, L, buckets=_pick(self.args.buckets, config.buckets), threads=self.threads)
        if not report.isConsistent():
            log.error('Counting report is not monotone or N_good + N_bad != N_closed')
            return EXIT_FAILURE
        if self.args.csv:
            self.writeFile(self.args.csv, write_cylinders_csv, report.records)
        reports.emit_count(report, self.format, self.stream)
        return EXIT_OK

    def cmd_check(self):
        table = self.loadTable()
        ok, violations = lifting_consistency_check(table, _pick(self.args.L, config.count_length))
        reports.emit_check(ok, violations, self.format, self.stream)
        return EXIT_OK if ok else EXIT_FAILURE

    def cmd_search(self):
        table = self.loadTable()
        record = good_cylinder_search(table, _pick(self.args.p_max, config.p_max))
        reports.emit_record(record, self.format, self.stream)
        return EXIT_OK

    def cmd_diffuse(self):
        table = self.loadTable()
        report = diffusion_exponent(table, _pick(self.args.n, config.n_directions), _pick(self.args.t_max, config.t_max),
                                    _pick(self.args.seed, config.seed), samples=_pick(self.args.samples, config.samples),
                                    threads=self.threads)
        if self.args.csv:
            self.writeFile(self.args.csv, write_orbits_csv, report)
        reports.emit_diffusion(report, self.format, self.stream)
        return EXIT_OK

    def cmd_recur(self):
        table = self.loadTable()
        report = recurrence_fraction(table, _pick(self.args.n, config.n_orbits), _pick(self.args.t_max, config.t_max),
                                     _pick(self.args.eps, config.eps), _pick(self.args.seed, config.seed), threads=self.threads)
        reports.emit_recurrence(report, self.format, self.stream)
        return EXIT_OK

    def main(self):
        log.info('Starting WindTree {}'.format(self.args.command))
        command = getattr(self, 'cmd_{}'.format(self.args.command))
        try:
            return command()
        except WindTreeError as e:
            if e.exitCode == EXIT_INPUT:
                log.critical('{}. Exiting.'.format(e))
            else:
                log.error('{}: {}'.format(type(e).__name__, e))
            return e.exitCode
        except ValueError as e:
            log.critical('{}. Exiting.'.format(e))
            return EXIT_INPUT
        except OSError as e:
            log.critical('Could not write output: {}'.format(e))
            return EXIT_INPUT

def run(argv=None, stream=None):
    try:
        args = get_arguments(__appName__, __description__, __version__, argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    logger.setQuiet(args.quiet)
    app = WindTree(args, stream)
    exitCode = app.main()
    app.printStats()
    return exitCode

if __name__ == '__main__':
    try:
        exitCode = run()
    except KeyboardInterrupt:
        log.info('User terminated script.')
        sys.exit(0)

    if exitCode == EXIT_OK:
        log.info('Script Completed Successfully!')
    sys.exit(exitCode)
