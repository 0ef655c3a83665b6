import logging
import os
import sys
from logging.handlers import RotatingFileHandler

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'


def setup_logging(app):
    """Configure structured file logging for the application"""
    log_dir = app.config.get('LOG_DIR', 'logs')
    if not os.path.exists(log_dir):
        os.makedirs(log_dir)

    log_file = os.path.join(log_dir, app.config.get('LOG_FILE', 'app_execution.log'))

    # Configure rotating file handler (10MB max per file, 10 backups)
    file_handler = RotatingFileHandler(
        log_file,
        maxBytes=10485760,
        backupCount=10
    )
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    file_handler.setLevel(logging.INFO)

    # Services log through module loggers under the same handler
    app.logger.addHandler(file_handler)
    app.logger.setLevel(logging.INFO)
    service_logger = logging.getLogger('services')
    service_logger.addHandler(file_handler)
    service_logger.setLevel(logging.INFO)

    app.logger.info('=' * 40)
    app.logger.info('Domino tiling toolkit started')
    app.logger.info('=' * 40)


def setup_cli_logging(verbose: bool = False):
    """Send service logs to stderr for command-line runs"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    root = logging.getLogger('services')
    root.handlers = [handler]
    root.setLevel(logging.INFO if verbose else logging.WARNING)
