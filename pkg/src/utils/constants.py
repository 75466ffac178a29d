"""Application-wide constants."""

from pathlib import Path

# Application home directory (settings.toml, .env)
APP_HOME = Path.home() / ".quatrace"

APP_NAME = "quatrace"
APP_DESCRIPTION = "Exact topological expansion for quaternionic random matrices"

# Output schema version for every JSON payload
SCHEMA_VERSION = "1"

# Enumeration caps
DEFAULT_TERM_CAP = 10_000_000
DEFAULT_WICK_CAP = 10_000_000
DEFAULT_SYMBOLIC_MAX_SYMBOLS = 8
DEFAULT_FIXED_MAX_SYMBOLS = 10

# Monte Carlo
DEFAULT_SAMPLES = 100_000
DEFAULT_MC_CHUNK_SIZE = 10_000
DEFAULT_Z_THRESHOLD = 5.0
HAAR_RESIDUAL_TOL = 1e-8

# CLI exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_CAP_EXCEEDED = 3
EXIT_MANIFEST_ERROR = 4
EXIT_NOT_BRACKETABLE = 5
