import os

from dotenv import load_dotenv

basedir = os.path.abspath(os.path.dirname(os.path.dirname(__file__)))
load_dotenv(os.path.join(basedir, '.env'))


class Config:
    # Upper limit on solver worker processes
    THREADS = int(os.environ.get('SIDCODES_THREADS') or 1)
    MAX_NODES = int(os.environ.get('SIDCODES_MAX_NODES') or 10**8)
    MAX_SECONDS = float(os.environ.get('SIDCODES_MAX_SECONDS') or 300)
    LOGGING_CONFIG = os.environ.get('SIDCODES_LOGGING_CONFIG') or os.path.join(basedir, 'logging.ini')
    FORMAT_VERSION = 1
    CSV_DIGITS = 12
