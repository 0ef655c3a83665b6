"""
Configuration module for the tiling toolkit.
Loads environment variables and defines configuration classes.
"""
import os
from dotenv import load_dotenv

load_dotenv()

BACKEND_DIR = os.path.dirname(os.path.abspath(__file__))


class Config:
    """Base configuration"""
    SECRET_KEY = os.getenv('SECRET_KEY', 'dev-secret-key-change-in-production')

    # CORS Configuration
    ALLOWED_ORIGINS = os.getenv('ALLOWED_ORIGINS', 'http://localhost:3000,http://localhost:5173,http://127.0.0.1:5500').split(',')

    # Caching
    CACHE_TYPE = os.getenv('CACHE_TYPE', 'SimpleCache')
    CACHE_DEFAULT_TIMEOUT = int(os.getenv('CACHE_DEFAULT_TIMEOUT', 300))

    # Fixtures and logs
    DATA_DIR = os.getenv('TILING_DATA_DIR', os.path.join(BACKEND_DIR, 'data'))
    LOG_DIR = os.getenv('LOG_DIR', 'logs')
    LOG_FILE = os.getenv('LOG_FILE', 'app_execution.log')

    # Computation limits
    MAX_EXPAND_LEVEL = int(os.getenv('MAX_EXPAND_LEVEL', 8))
    MAX_SUPERTILE_LEVEL = int(os.getenv('MAX_SUPERTILE_LEVEL', 2))
    SOLVER_NODE_BUDGET = int(os.getenv('SOLVER_NODE_BUDGET', 10_000_000))
    TORUS_MAX_PERIOD = int(os.getenv('TORUS_MAX_PERIOD', 8))
    DEFAULT_SEED = int(os.getenv('DEFAULT_SEED', 0))


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False

    # Ensure secrets are set in production
    if os.getenv('FLASK_ENV') == 'production' and not os.getenv('SECRET_KEY'):
        raise ValueError("SECRET_KEY must be set in production")


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    CACHE_TYPE = 'SimpleCache'
    SOLVER_NODE_BUDGET = 200_000
    LOG_DIR = os.getenv('TEST_LOG_DIR', 'logs')


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(name=None):
    """Get configuration by name, falling back to FLASK_ENV"""
    env = name or os.getenv('FLASK_ENV', 'development')
    return config.get(env, config['default'])
