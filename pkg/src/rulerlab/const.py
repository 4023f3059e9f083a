""" Variable Storage """

# ruler_core
RULER_TERM_CAP      = 2**62     # largest position ruler_term accepts
RULER_BLOCK_MAX_N   = 24        # blocks of length 2^24 - 1
SUM_MAX_N           = 56        # block_stats by recurrence
SQUAREFREE_MAX_LEN  = 2**13     # O(L^2) scan budget

# demography
POPULATION_MAX_N    = 62
CENSUS_MAX_N        = 24
DEFAULT_LIFESPAN    = 3

# spatial constructions
AUTOMATON_MAX_STEPS = 20
AUTOMATON_CHECK_MAX = 14        # census cross-checked against a spatial run up to here
CANTOR_MAX_N        = 20
POLYGON_MAX_N       = 20
JITTER_LOW          = 0.1       # jittered points land in (low, high) of their gap
JITTER_HIGH         = 0.9

# hv_dynamics
SUPERSTABLE_MAX_N   = 7
DEFAULT_TRANSIENT   = 10_000
DEFAULT_PERIOD_TOL  = 1e-9
DEFAULT_ROOT_TOL    = 1e-12
BISECT_MAX_ITER     = 200
DEFAULT_MAX_PERIOD  = 256
ORBIT_PERIODS       = 4         # periods generated around the visibility window
CRITICAL_POINT      = 0.5

# Nested brackets, one superstable root each; lower-order roots sit below every bracket
SUPERSTABLE_BRACKETS = (
    (1.5,     2.5),
    (3.0,     3.45),
    (3.45,    3.545),
    (3.545,   3.566),
    (3.566,   3.5693),
    (3.5691,  3.5698),
    (3.5697,  3.56993),
    (3.56990, 3.56996),
)

# cli / output
DEFAULT_SEED        = 7
DEFAULT_VERIFY_N    = 12
REAL_DIGITS         = 15
MAX_N_ENV_VAR       = "RULERLAB_MAX_N"
OUTPUT_FORMATS      = ("csv", "json", "svg")
