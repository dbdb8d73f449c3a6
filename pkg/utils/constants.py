"""
Constants for the J_n-stability laboratory
"""
import os

TOOL_VERSION = '1.0.0'

# Defaults used by the suite and the commands
LAB_DEFAULTS = {
    'BASE': 3,                    # Digit base N of the coding
    'DEPTH': 6,                   # Approximant depth K
    'BASE_DEPTH': 2,              # Depth M of the nu-tilde approximant inside each cylinder
    'RESOLUTION': 5,              # Cylinder resolution D of the certificates
    'N_ROOT': 2,                  # Root order n of J_n
    'SEED': 42,                   # Seed for every random construction
    'OPERATOR_SAMPLES': 10,       # Random matrices per operator check
    'SHIFT_SAMPLES': 20,          # Random weight sequences per shift check
    'SINGULARITY_K': 3,           # Aligned blocks k
    'SINGULARITY_N': 2,           # Free prefix length n
    'E_DEPTH': 5,                 # Prefix length bound of the E-set sums
    'CONTINUITY_BLOCK': 3,        # Extension length M of the continuity families
}

# Resource caps
RESOURCE_CAPS = {
    'BREAKPOINTS': int(os.getenv('JNLAB_ENUMERATION_CAP', 2 ** 22)),  # N^(K+M) bound of any CDF
    'WORDS': int(os.getenv('JNLAB_ENUMERATION_CAP', 2 ** 22)),        # N^K bound of any word sweep
    'SPECHT_WORDS': 2 ** 16,      # Two-letter words checked by the trace test
    'ORBIT_STEPS': 10 ** 6,       # Multiply-by-n steps before giving up
    'FORBIDDEN_INDEX': 64,        # Largest b^i index accepted from text
}

# Numeric tolerances
TOLERANCES = {
    'FLOAT': 1e-12,               # Max-entry residual of complex float witnesses
    'C_N_BITS': 20,               # Binary digits of the rational upper bound of C_N
}

# Randomised recovery of similarity witnesses
RECOVERY = {
    'TRIALS': 32,                 # Commutant combinations tried
    'COEFF_MIN': -2,              # Smallest combination coefficient
    'COEFF_MAX': 2,               # Largest combination coefficient
    'WITNESS_TRIALS': 64,         # Kernel combinations tried for a similarity witness
}

# Rotation angles with Gaussian-rational values e^(2 pi i / n)
EXACT_ROOT_ORDERS = (1, 2, 4)

# Certificate families the suite knows how to run
FAMILIES = ('measure', 'operator', 'shift', 'bell')

# Error messages
ERROR_MESSAGES = {
    'invalid-parameter': 'Invalid parameter',
    'enumeration-too-large': 'Enumeration exceeds the configured cap',
    'mass-mismatch': 'Distributions have different total mass',
    'unsupported-configuration': 'Configuration is not supported',
    'no-witness': 'Matrices are not similar',
    'not-a-double': 'Invariant factors do not pair up',
    'spectra-not-disjoint': 'Spectra are not disjoint',
    'recovery-inconclusive': 'No invertible recovery found within the trial budget',
    'undecided': 'Orbit comparison did not close within the cap',
    'parse-error': 'Malformed configuration',
    'emit-error': 'Could not write report',
    'internal-error': 'Unexpected failure inside a task',
}
