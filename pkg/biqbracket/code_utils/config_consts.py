from pathlib import Path

DEFAULT_PRIME = 32003
DEFAULT_ORDER = "grevlex"
SUPPORTED_ORDERS = ("grevlex", "grlex", "lex")
DEFAULT_DELTA = 1
DEFAULT_JOBS = 1
DEFAULT_OUTPUT_FORMAT = "text"
DEFAULT_TRANSCRIPTION = "corrected"
TRANSCRIPTIONS = ("corrected", "verbatim")
GB_CACHE_FORMAT_VERSION = 1
DEFAULT_FUZZ_CASES = 100
DEFAULT_FUZZ_SEED = 0
DEFAULT_FUZZ_MAX_CROSSINGS = 6
CONFLUENCE_MAX_VERTICES = 8
BRUTE_FORCE_MAX_SEMIARCS = 10
FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"
