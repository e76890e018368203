# Fixed values shared by the library, the CLI and the tests

# Named level schemes: (F_a, F'_a, I, J_a, J_b) as half-integer strings
SCHEME_PRESETS = {
    "rb85": ("2", "3", "5/2", "1/2", "3/2"),
    "cs133": ("3", "4", "7/2", "1/2", "3/2"),
}

# Sweep output contract
CSV_HEADER = ("theta", "theta_c", "psi_deg", "w")

# Reduced Rabi angle at which both presets peak for theta = theta_c
THETA_MAX = 19.604

# Largest momentum the log-factorial table is sized for (doubled values up to this)
MAX_TWICE_MOMENTUM = 64

# Below this |x| the scalar matrix functions switch to their Taylor series
SMALL_ARGUMENT = 1e-6

EXIT_OK = 0
EXIT_ARGUMENT_ERROR = 2
EXIT_SCHEME_ERROR = 3
EXIT_ORACLE_MISMATCH = 4
