"""
Flask Application Factory
"""
from flask import Flask
from config import config
import logging
import sys

HANDLER_NAME = 'farey-console'

def setup_logging(app, config_name):
    """Configure application logging"""

    # Reports go to stdout, log lines to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(
        fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    ))

    # Set log level based on environment
    if config_name in ('development', 'default'):
        log_level = logging.INFO
    else:
        log_level = logging.WARNING

    console_handler.setLevel(log_level)
    app.logger.setLevel(log_level)

    # Also configure root logger for our services
    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    console_handler.set_name(HANDLER_NAME)
    for handler in [h for h in root_logger.handlers if h.get_name() == HANDLER_NAME]:
        root_logger.removeHandler(handler)
    root_logger.addHandler(console_handler)

    app.logger.info(f"🔧 Logging enabled at level {logging.getLevelName(log_level)}")

def create_app(config_name='default'):
    """Create and configure Flask application"""

    app = Flask(__name__)

    # Load configuration
    app.config.from_object(config[config_name])
    config[config_name].init_app(app)

    # Configure logging
    setup_logging(app, config_name)

    # Register command blueprints
    from app.routes import tessellate, coords, develop, wp, qc, verify

    app.register_blueprint(tessellate.bp)
    app.register_blueprint(coords.bp)
    app.register_blueprint(develop.bp)
    app.register_blueprint(wp.bp)
    app.register_blueprint(qc.bp)
    app.register_blueprint(verify.bp)

    return app
