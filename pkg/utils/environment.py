#!/usr/bin/env python3

import os

class Env():

    def __init__(self, environ=None):
        environ = os.environ if environ is None else environ
        self._vars = {k.lower():v for (k, v) in environ.items() if k.lower().startswith('windtree_')}

    @property
    def threads(self):
        value = self._vars.get('windtree_threads', None)
        if value is None:
            return None
        try:
            threads = int(value)
        except ValueError:
            return None
        if threads < 1:
            return None
        return threads

    @property
    def configPath(self):
        return self._vars.get('windtree_config', None)
