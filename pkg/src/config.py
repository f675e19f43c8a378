"""
Configuration settings for GaloisCensus.
"""

import os

# Orders of the origin-fixing automorphisms an elliptic curve can carry
SUPPORTED_ELLS = [2, 3, 4, 6]

# j-invariant classes and the automorphism orders each one admits
JCLASS_LABELS = ["generic", "0", "1728"]
ADMISSIBLE_ELLS = {
    "generic": [2],
    "0": [2, 3, 6],
    "1728": [2, 4],
}

# Integer matrices of the automorphisms acting on E[m] (column vectors)
AUT_MATRICES = {
    2: ((-1, 0), (0, -1)),
    3: ((0, -1), (1, -1)),
    4: ((0, -1), (1, 0)),
    6: ((0, 1), (-1, 1)),
}

# Enumeration bounds
DEFAULT_ORACLE_BOUND = 12
DEFAULT_CONSTRUCTIVE_BOUND = 500

# Verification sweep limits
VERIFY_CONGRUENCE_LIMIT = 10_000
VERIFY_SIGMA_LIMIT = 10_000
VERIFY_PSI_IDENTITY_LIMIT = 10_000
VERIFY_MULTIPLICATIVE_PAIRS = 1_000
VERIFY_MULTIPLICATIVE_LIMIT = 10_000
VERIFY_INTRO_MAX_N = 99
VERIFY_CENSUS_MAX_N = 200
VERIFY_PAIRS_MAX_N = 24
VERIFY_WITNESS_SAMPLES = 100
DEFAULT_SEED = 20240917

# Finite-field witness search
WITNESS_MAX_PRIME = 200
WITNESS_CONFIGURATIONS = [
    # (j-class, m, smallest prime to try)
    ("0", 3, 5),
    ("0", 2, 13),
    ("1728", 2, 13),
    ("generic", 2, 13),
]

# Output
OUTPUT_FORMATS = ["table", "csv", "json"]
DEFAULT_OUTPUT_FORMAT = "table"
JSON_SCHEMA_VERSION = 1
CSV_HEADER = ["dimension", "count", "group_order"]

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION_FAILED = 2

# Shipped data
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
REFERENCE_FILE = os.path.join(PROJECT_ROOT, "reference", "table1.txt")
TEMPLATE_DIR = os.path.join(PROJECT_ROOT, "templates")
