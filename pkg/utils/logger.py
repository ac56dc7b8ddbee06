#!/usr/bin/env python3

import logging
import logging.handlers

QUIET_LEVEL = logging.CRITICAL
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'

class Logger():
    '''
    Per-module loggers configured from the [LOGS] section of settings.ini.
    Every logger gets a terminal handler; WindTree.log is added when log_to_file is set.
    '''
    def __init__(self, log_path, settings, quiet=False):
        self.path = log_path
        self.level = logging.getLevelName(settings.log_level.upper())
        self.toFile = settings.log_to_file
        self.maxBytes = settings.log_max_bytes
        self.backups = settings.log_backups
        self._formatter = logging.Formatter(LOG_FORMAT)
        self._quiet = quiet
        self._terminals = []

    @property
    def quiet(self):
        return self._quiet

    def setQuiet(self, quiet):
        # arguments are parsed after the module loggers exist
        self._quiet = quiet
        for handler in self._terminals:
            handler.setLevel(QUIET_LEVEL if quiet else logging.NOTSET)

    def _terminal(self):
        handler = logging.StreamHandler()
        handler.setFormatter(self._formatter)
        if self._quiet:
            handler.setLevel(QUIET_LEVEL)
        self._terminals.append(handler)
        return handler

    def _logFile(self):
        handler = logging.handlers.RotatingFileHandler(self.path, mode='a', maxBytes=self.maxBytes, backupCount=self.backups)
        handler.setLevel(self.level)
        handler.setFormatter(self._formatter)
        return handler

    def get_log(self, name):
        log = logging.getLogger(name)
        log.setLevel(self.level)
        if log.handlers:
            return log
        log.addHandler(self._terminal())
        if self.toFile:
            log.addHandler(self._logFile())
        return log
