#!/usr/bin/env python3

import os
import shutil
from configparser import ConfigParser

class Config(object):
    def __init__(self, configPath):
        self._raw_config = None
        self.path = configPath
        self.parse()

    def parse(self):
        if os.path.isfile(self.path):
            parser = ConfigParser()
            try:
                parser.read(self.path)
                self._raw_config = parser
            except Exception as e:
                print('Could not read settings.ini ERROR: {}'.format(e))
        else:
            exampleFile = os.path.join(os.path.dirname(self.path), 'settings.ini.example')
            try:
                shutil.copyfile(exampleFile, self.path)
            except Exception:
                # defaults below still apply
                return
            parser = ConfigParser()
            parser.read(self.path)
            self._raw_config = parser

    def _section(self, name):
        if not self._raw_config is None:
            if name in self._raw_config.sections():
                return self._raw_config[name]
        return None

    @property
    def log_level(self):
        section = self._section('LOGS')
        if not section is None:
            return section.get('log_level', 'info')
        return 'info'

    @property
    def log_to_file(self):
        section = self._section('LOGS')
        if not section is None:
            return section.getboolean('log_to_file', False)
        return False

    @property
    def log_max_bytes(self):
        section = self._section('LOGS')
        if not section is None:
            return section.getint('max_bytes', 1000000)
        return 1000000

    @property
    def log_backups(self):
        section = self._section('LOGS')
        if not section is None:
            return section.getint('backup_count', 5)
        return 5

    @property
    def threads(self):
        section = self._section('RUN')
        if not section is None:
            threads = section.getint('threads', 0)
            return threads if threads > 0 else None
        return None

    @property
    def seed(self):
        section = self._section('RUN')
        if not section is None:
            return section.getint('seed', 1)
        return 1

    @property
    def output_format(self):
        section = self._section('RUN')
        if not section is None:
            return section.get('format', 'text').lower()
        return 'text'

    @property
    def m_max(self):
        section = self._section('IDENTITIES')
        if not section is None:
            return section.getint('m_max', 60)
        return 60

    @property
    def count_length(self):
        section = self._section('COUNT')
        if not section is None:
            return section.get('L', '5')
        return '5'

    @property
    def buckets(self):
        section = self._section('COUNT')
        if not section is None:
            return section.getint('buckets', 10)
        return 10

    @property
    def p_max(self):
        section = self._section('COUNT')
        if not section is None:
            return section.getint('p_max', 8)
        return 8

    @property
    def t_max(self):
        section = self._section('DYNAMICS')
        if not section is None:
            return section.getfloat('t_max', 10000.0)
        return 10000.0

    @property
    def n_directions(self):
        section = self._section('DYNAMICS')
        if not section is None:
            return section.getint('n_directions', 100)
        return 100

    @property
    def n_orbits(self):
        section = self._section('DYNAMICS')
        if not section is None:
            return section.getint('n_orbits', 200)
        return 200

    @property
    def eps(self):
        section = self._section('DYNAMICS')
        if not section is None:
            return section.getfloat('eps', 1.0)
        return 1.0

    @property
    def samples(self):
        section = self._section('DYNAMICS')
        if not section is None:
            return section.getint('samples', 24)
        return 24
