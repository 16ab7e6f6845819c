"""Engine-wide constants.

Scale bounds for the brute-force oracle, sweep defaults for the verify
suites, and the process-level conventions of the command line.
"""

# --- Oracle Scale ---
ORACLE_FIELDS: tuple[int, ...] = (2, 3, 5)
ORACLE_MAX_DIM: int = 6  # total dimension of an explicit representation
AUT_ENUMERATION_LIMIT: int = 4096  # largest |End| enumerated element by element
HOM_ENUMERATION_LIMIT: int = 4096  # largest |Hom| walked when counting monomorphisms

# --- Closed-Point Counting ---
S_ENUM_MAX_N: int = 3
DEFAULT_EXCEPTIONAL_POINTS: int = 3

# --- Extension Bundle Search ---
BUNDLE_SEARCH_RADIUS: int = 6  # lc-window around the reference base

# --- Verify Suite Defaults ---
GREEN_MAX_DIM: int = 4
ASSOC_MAX_DIM: int = 3
RP_MAX_DIM: int = 4
ROTATION_MAX_DIM: int = 3
DIMS_MAX_LENGTH: int = 4
IDENTITY_F_MAX_N: int = 50
IDENTITY_S_MAX_N: int = 20
SWEEP_EXT_WEIGHTS: tuple[tuple[int, ...], ...] = ((2, 2, 2), (2, 3, 5), (2, 3, 7), (3, 3, 4))
N_INVARIANT_MAX_LENGTH: int = 4
N_INVARIANT_WEIGHTS: tuple[tuple[int, ...], ...] = ((2, 2, 2),)
S_ENUM_FIELDS: tuple[int, ...] = (5, 7, 11, 13)

# --- Command Line ---
PROG_NAME: str = "hwpl"
THREADS_ENV: str = "HWPL_THREADS"
EXIT_OK: int = 0
EXIT_USAGE: int = 1
EXIT_REFUSED: int = 2
