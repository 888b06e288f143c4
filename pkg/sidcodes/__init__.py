import logging
import os
from logging.config import fileConfig

from sidcodes.config import Config


def create_cli(config_class=Config):
    config = config_class()
    if os.path.exists(config.LOGGING_CONFIG):
        fileConfig(config.LOGGING_CONFIG, disable_existing_loggers=False)
    else:
        logging.basicConfig(format='%(levelname)-5.5s [%(name)s] %(message)s')

    from sidcodes.cli import main
    main.context_settings['obj'] = config

    return main
