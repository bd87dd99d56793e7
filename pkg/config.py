"""
Configuration module for hochproj.
Loads environment variables and provides configuration classes.
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _int_env(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


class Config:
    """Base configuration."""

    # Size guards
    BAR_CAP = _int_env('HOCHPROJ_BAR_CAP', 2_000_000)
    EXT_CAP = _int_env('HOCHPROJ_EXT_CAP', 2_000_000)
    EXT_MAX_DEGREE = _int_env('HOCHPROJ_EXT_MAX_DEGREE', 3)
    ADMISSIBILITY_CAP = _int_env('HOCHPROJ_ADMISSIBILITY_CAP', 30)
    PATH_SPACE_CAP = _int_env('HOCHPROJ_PATH_SPACE_CAP', 20_000)

    # Bimodule isomorphism search
    ISO_COEFFICIENT_BOUND = _int_env('HOCHPROJ_ISO_BOUND', 3)
    ISO_RANDOM_DRAWS = _int_env('HOCHPROJ_ISO_DRAWS', 50)

    # Pseudorandom identity checks
    RANDOM_SEED = _int_env('HOCHPROJ_SEED', 20240611)
    RANDOM_TRIALS = _int_env('HOCHPROJ_TRIALS', 20)
    CHAIN_MAP_FULL_BASIS_LIMIT = _int_env('HOCHPROJ_CHAIN_MAP_FULL_BASIS', 2000)

    # Input defaults
    DEFAULT_FIELD = os.environ.get('HOCHPROJ_FIELD', 'Q')

    # Logging
    LOG_LEVEL = os.environ.get('HOCHPROJ_LOG_LEVEL', 'WARNING')

    DEBUG = False


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True


class ProductionConfig(Config):
    """Production configuration."""
    DEBUG = False

    # Caps must be positive
    if Config.BAR_CAP <= 0 or Config.EXT_CAP <= 0:
        raise ValueError("HOCHPROJ_BAR_CAP and HOCHPROJ_EXT_CAP must be positive")
    if Config.ADMISSIBILITY_CAP < 2:
        raise ValueError("HOCHPROJ_ADMISSIBILITY_CAP must be at least 2")


class TestingConfig(Config):
    """Testing configuration."""
    TESTING = True
    RANDOM_TRIALS = _int_env('HOCHPROJ_TRIALS', 5)


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config():
    """Get configuration based on HOCHPROJ_ENV environment variable."""
    env = os.environ.get('HOCHPROJ_ENV', 'development')
    return config.get(env, config['default'])
