import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Sampling / Reproducibility
DIFFREST_SEED = int(os.getenv('DIFFREST_SEED', '7'))
DEFAULT_CASES = int(os.getenv('DEFAULT_CASES', '50'))
TEST_CASE_SCALE = float(os.getenv('TEST_CASE_SCALE', '1'))  # shrink randomized test sizes, e.g. 0.1 on slow CI

# Algebra Settings
DEFAULT_RING = os.getenv('DEFAULT_RING', 'Z')  # 'Z' or 'Q'
FRAC_SEARCH_BOUND = int(os.getenv('FRAC_SEARCH_BOUND', '4096'))  # pairs visited by finite-rig closure search

# Completion Settings
CLASSICAL_IDEMPOTENT_CAP = int(os.getenv('CLASSICAL_IDEMPOTENT_CAP', '12'))  # |E| limit for classical equality

# Finite Model Settings
ENUMERATION_BOUND = int(os.getenv('ENUMERATION_BOUND', '5000'))  # largest hom-set pf_enumerate builds
EXHAUSTIVE_COMBINATION_LIMIT = int(os.getenv('EXHAUSTIVE_COMBINATION_LIMIT', '20000'))

# Logging
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

# Web Server Settings
WEB_SERVER_HOST = os.getenv('WEB_SERVER_HOST', 'localhost')
WEB_SERVER_PORT = int(os.getenv('WEB_SERVER_PORT', '5001'))
SECRET_KEY = os.getenv('SECRET_KEY', 'diffrest_secret!')

SUPPORTED_RINGS = ('Z', 'Q')
