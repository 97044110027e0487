import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Config:
    # Application Settings
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FILE = os.getenv('LOG_FILE', '')

    # Sweep Defaults
    DEFAULT_SHOTS = int(os.getenv('DEFAULT_SHOTS', '10000'))
    DEFAULT_BOOTSTRAP = int(os.getenv('DEFAULT_BOOTSTRAP', '200'))
    DEFAULT_SEED = int(os.getenv('DEFAULT_SEED', '20240601'))
    DEFAULT_R_POINTS = int(os.getenv('DEFAULT_R_POINTS', '21'))
    OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'results')

    # Property Suite
    PROPERTY_SEED = int(os.getenv('PROPERTY_SEED', '7'))

    # Numerical Tolerances
    VALIDATION_TOL = float(os.getenv('VALIDATION_TOL', '1e-12'))
    BUDGET_TOL = float(os.getenv('BUDGET_TOL', '1e-10'))

    # Random number generator recorded in output metadata
    RNG_ALGORITHM = 'PCG64'

    # Figure scenarios
    SCENARIOS = {
        'fig2': {
            'p_values': [0.9, 0.75, 0.6],
            'alpha_values': [1.0],
            'alpha_units': 'coherence',
        },
        'fig3': {
            'p_values': [0.9],
            'alpha_values': [0.8, 0.6, 0.4],
            'alpha_units': 'coherence',
        },
    }

    # CSV column order
    CSV_COLUMNS = [
        'p', 'r', 'alpha_deg', 'coherence_initial',
        'sigma_total', 'sigma_pop', 'sigma_coh', 'sigma_coh_direct',
        'sigma_total_tomo', 'sigma_total_tomo_err',
        'sigma_pop_tomo', 'sigma_pop_tomo_err',
        'sigma_coh_tomo', 'sigma_coh_tomo_err',
        'seed_used', 'indeterminate',
    ]

    # Logging Configuration
    LOGGING_CONFIG = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
            },
        },
        'handlers': {
            'default': {
                'formatter': 'standard',
                'class': 'logging.StreamHandler',
            },
        },
        'loggers': {
            '': {
                'handlers': ['default'],
                'level': LOG_LEVEL,
                'propagate': True
            }
        }
    }

    if LOG_FILE:
        LOGGING_CONFIG['handlers']['file'] = {
            'formatter': 'standard',
            'class': 'logging.FileHandler',
            'filename': LOG_FILE,
            'mode': 'a'
        }
        LOGGING_CONFIG['loggers']['']['handlers'].append('file')
