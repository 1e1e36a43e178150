import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Config:
    """Base configuration class"""

    # Flask
    FLASK_APP = os.getenv('FLASK_APP', 'run')
    FLASK_ENV = os.getenv('FLASK_ENV', 'development')
    TESTING = False

    # Command defaults
    MAX_GEN = int(os.getenv('MAX_GEN', 8))
    DEFAULT_TOL = float(os.getenv('DEFAULT_TOL', 1e-9))
    DEFAULT_SAMPLES = int(os.getenv('DEFAULT_SAMPLES', 4096))
    DEFAULT_SEED = int(os.getenv('DEFAULT_SEED', 0))

    # Numerics
    SIGMA_SERIES_TERMS = int(os.getenv('SIGMA_SERIES_TERMS', 100000))
    QC_WINDOW = int(os.getenv('QC_WINDOW', 64))

    # Output
    OUTPUT_FOLDER = os.getenv('OUTPUT_FOLDER', 'output')

    # Application
    APP_NAME = os.getenv('APP_NAME', 'Farey Shear Toolkit')

    @staticmethod
    def init_app(app):
        """Initialize application with config"""
        # Create the output directory
        os.makedirs(app.config['OUTPUT_FOLDER'], exist_ok=True)

class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True

class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False

class TestingConfig(Config):
    """Testing configuration"""
    DEBUG = False
    TESTING = True
    OUTPUT_FOLDER = os.getenv('TEST_OUTPUT_FOLDER', os.path.join('output', 'test'))

# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
