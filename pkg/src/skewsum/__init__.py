"""Sum uncertainty bounds from variances and Wigner-Yanase skew information.

The package evaluates a catalog of lower bounds on the total variance and
the total skew information of N observables in a quantum state, verifies
them numerically on random instances, and sweeps built-in scenarios where
closed forms are known. Hot kernels are numba-compiled with a pure-numpy
fallback; set ``SKEWSUM_DISABLE_NUMBA=1`` to force the fallback.
"""

from ._kernels import NUMBA_ENABLED, backend
from .bounds import (
    CATALOG,
    DEFAULT_BUDGET,
    DEFAULT_TOLERANCE,
    FAMILY,
    BoundReport,
    BoundValue,
    BudgetExceededError,
    ObservableSet,
    PermutationTuple,
    bound_chen_skew,
    bound_chen_variance,
    bound_mp_quadratic,
    bound_parallelogram_diff,
    bound_parallelogram_sum,
    bound_robertson,
    bound_song,
    bound_theorem1,
    bound_theorem2a,
    bound_theorem2b,
    bound_zhang,
    evaluate_all,
)
from .linalg import (
    EigenConvergenceError,
    EigenSystem,
    HermitianMatrix,
    LinalgError,
    NotHermitianError,
    NotPositiveSemidefiniteError,
    commutator,
    frobenius_norm_sq,
    hermitian_eig,
    sqrt_psd,
)
from .measures import amplitude_vector, expectation, skew_information, variance
from .rng import SplitMix64, derive_seed
from .scenarios import (
    L_X,
    L_Y,
    L_Z,
    SCENARIOS,
    SweepSpec,
    example1_instance,
    example2_instance,
    example2_skew_oracle,
    example3_instance,
    example3_sum_oracle,
    grid_points,
    run_sweep,
)
from .states import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochVector,
    DensityMatrix,
    from_bloch,
    pure_state,
    random_mixed,
    random_observable,
    random_pure,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "backend",
    "CATALOG",
    "DEFAULT_BUDGET",
    "DEFAULT_TOLERANCE",
    "FAMILY",
    "BoundReport",
    "BoundValue",
    "BudgetExceededError",
    "ObservableSet",
    "PermutationTuple",
    "bound_chen_skew",
    "bound_chen_variance",
    "bound_mp_quadratic",
    "bound_parallelogram_diff",
    "bound_parallelogram_sum",
    "bound_robertson",
    "bound_song",
    "bound_theorem1",
    "bound_theorem2a",
    "bound_theorem2b",
    "bound_zhang",
    "evaluate_all",
    "EigenConvergenceError",
    "EigenSystem",
    "HermitianMatrix",
    "LinalgError",
    "NotHermitianError",
    "NotPositiveSemidefiniteError",
    "commutator",
    "frobenius_norm_sq",
    "hermitian_eig",
    "sqrt_psd",
    "amplitude_vector",
    "expectation",
    "skew_information",
    "variance",
    "SplitMix64",
    "derive_seed",
    "L_X",
    "L_Y",
    "L_Z",
    "SCENARIOS",
    "SweepSpec",
    "example1_instance",
    "example2_instance",
    "example2_skew_oracle",
    "example3_instance",
    "example3_sum_oracle",
    "grid_points",
    "run_sweep",
    "IDENTITY_2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "BlochVector",
    "DensityMatrix",
    "from_bloch",
    "pure_state",
    "random_mixed",
    "random_observable",
    "random_pure",
    "__version__",
]
