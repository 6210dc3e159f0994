"""Numerical tolerances shared across modules (echoed by ``meanclt --tol-report``)."""

# relative support-merge tolerance: points closer than MERGE_REL * max(1, span) coincide
MERGE_REL = 1e-12
# |sum(probs) - 1| allowed in a FiniteDist
MASS_TOL = 1e-12
# looser mass gate applied when loading user JSON (then renormalized)
LOAD_MASS_TOL = 1e-9
# |mean| allowed for "mean zero" preconditions
CENTER_TOL = 1e-9
# |variance - 1| allowed for "standardized" preconditions
STANDARD_TOL = 1e-9
# relative tolerance of the real-gcd used for lattice detection
LATTICE_REL = 1e-9
LATTICE_MAX_ITER = 64
# candidate spans giving more than this many lattice steps across the support are rejected
LATTICE_MAX_STEPS = 1e7
# convolution results larger than this are refused
SUPPORT_GUARD = 1_000_000
# slack used when checking B <= 1 and the bound ratios
BOUND_SLACK = 1e-9
# mixture components below this weight are dropped
MIN_WEIGHT = 1e-14
MIXTURE_MAX_DEPTH = 64
# absolute tolerance for the outer u-quadrature of A(G)
A_QUAD_TOL = 1e-10
# bisection tolerance for crossing points of a linear CDF piece with the normal CDF
ROOT_TOL = 1e-13
BISECT_MAX_ITER = 80


def as_dict() -> dict:
    return {k: v for k, v in globals().items() if k.isupper()}
