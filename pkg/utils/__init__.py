#!/usr/bin/env python3

import os
from utils.logger import Logger
from utils.config import Config
from utils.environment import Env

__appName__ = 'WindTree'
__version__ = '0.1.0'
__description__ = 'Siegel-Veech constants, cylinder counting and billiard diffusion for wind-tree tables.'

ROOT_PATH = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
env = Env()
CONFIG_PATH = env.configPath or os.path.join(ROOT_PATH, 'settings.ini')
LOG_PATH = os.path.join(ROOT_PATH, 'WindTree.log')
config = Config(CONFIG_PATH)
logger = Logger(LOG_PATH, config)
