"""Lower bounds on sums of variances and of skew informations.

Every bound function takes a state and a collection of observables and
returns a :class:`BoundValue`. ``evaluate_all`` runs the whole catalog,
flags numerical violations, and picks the tightest bound per family.

Families:

* ``variance``: bounds on sum_i (Delta A_i)^2
* ``skew``: bounds on sum_i I(rho, A_i)
* ``product``: bounds on Delta A_1 * Delta A_2 (two observables only)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .linalg import HermitianMatrix, as_matrix, commutator
from .measures import amplitude_vector, skew_information, variance
from .states import DensityMatrix, coerce_density

DEFAULT_BUDGET = 10**6
DEFAULT_TOLERANCE = 1e-8
TIE_TOL = 1e-12

FAMILY = {
    "theorem1": "variance",
    "song": "variance",
    "chen_variance": "variance",
    "mp_quadratic": "variance",
    "robertson": "product",
    "theorem2a": "skew",
    "theorem2b": "skew",
    "zhang": "skew",
    "chen_skew": "skew",
    "parallelogram_sum": "skew",
    "parallelogram_diff": "skew",
}
CATALOG = tuple(FAMILY)


class BudgetExceededError(Exception):
    """The exhaustive permutation search would exceed the tuple budget."""

    def __init__(self, tuples: int, budget: int):
        self.tuples = int(tuples)
        self.budget = int(budget)
        super().__init__(
            f"permutation search needs {self.tuples} tuples, budget is {self.budget}"
        )


class ObservableSet:
    """Two or more Hermitian observables sharing one dimension."""

    __slots__ = ("observables",)

    def __init__(self, observables):
        items = tuple(
            o if isinstance(o, HermitianMatrix) else HermitianMatrix(o)
            for o in observables
        )
        if len(items) < 2:
            raise ValueError("need at least two observables")
        dims = {o.dim for o in items}
        if len(dims) != 1:
            raise ValueError(f"observables have mixed dimensions {sorted(dims)}")
        self.observables = items

    @classmethod
    def coerce(cls, x) -> "ObservableSet":
        return x if isinstance(x, cls) else cls(x)

    @property
    def n(self) -> int:
        return len(self.observables)

    @property
    def dim(self) -> int:
        return self.observables[0].dim

    def __len__(self):
        return len(self.observables)

    def __iter__(self):
        return iter(self.observables)

    def __getitem__(self, i):
        return self.observables[i]

    def pairs(self):
        """Index pairs (i, j) with i < j."""
        return itertools.combinations(range(self.n), 2)

    def total(self) -> HermitianMatrix:
        tot = self.observables[0]
        for o in self.observables[1:]:
            tot = tot + o
        return tot


@dataclass(frozen=True)
class PermutationTuple:
    """One permutation of eigenvalue positions per observable.

    The first entry is pinned to the identity; the objective is invariant
    under applying a common permutation to every entry.
    """

    perms: tuple

    def __post_init__(self):
        if not self.perms:
            raise ValueError("empty permutation tuple")
        d = len(self.perms[0])
        ident = tuple(range(d))
        if tuple(self.perms[0]) != ident:
            raise ValueError("first permutation must be the identity")
        for p in self.perms:
            if tuple(sorted(p)) != ident:
                raise ValueError(f"{p} is not a permutation of 0..{d - 1}")
        object.__setattr__(self, "perms", tuple(tuple(int(k) for k in p) for p in self.perms))

    @property
    def n(self) -> int:
        return len(self.perms)


@dataclass(frozen=True)
class BoundValue:
    """A named bound: its value, whether it applies, optional diagnostics."""

    name: str
    value: float | None
    applicable: bool = True
    detail: object = None

    @property
    def family(self) -> str:
        return FAMILY[self.name]

    def to_dict(self) -> dict:
        detail = self.detail
        if isinstance(detail, PermutationTuple):
            detail = {"permutations": [list(p) for p in detail.perms]}
        return {
            "name": self.name,
            "family": self.family,
            "applicable": self.applicable,
            "value": self.value,
            "detail": detail,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundValue":
        detail = data.get("detail")
        if isinstance(detail, dict) and "permutations" in detail:
            detail = PermutationTuple(tuple(tuple(p) for p in detail["permutations"]))
        return cls(
            name=data["name"],
            value=data["value"],
            applicable=bool(data["applicable"]),
            detail=detail,
        )


@dataclass(frozen=True)
class BoundReport:
    """Everything ``evaluate_all`` computed for one (state, observables) pair."""

    variance_sum: float
    skew_sum: float
    bounds: tuple
    violations: tuple
    tightest_variance: str | None
    tightest_skew: str | None
    metadata: dict = field(default_factory=dict)

    def bound(self, name: str) -> BoundValue:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def value(self, name: str) -> float | None:
        return self.bound(name).value

    def target_for(self, bv: BoundValue) -> float | None:
        """The quantity the bound is a lower bound on."""
        if bv.family == "variance":
            return self.variance_sum
        if bv.family == "skew":
            return self.skew_sum
        if bv.applicable and isinstance(bv.detail, dict):
            return bv.detail.get("delta_product")
        return None

    def to_dict(self) -> dict:
        return {
            "variance_sum": self.variance_sum,
            "skew_sum": self.skew_sum,
            "bounds": [b.to_dict() for b in self.bounds],
            "violations": list(self.violations),
            "tightest_variance": self.tightest_variance,
            "tightest_skew": self.tightest_skew,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        return cls(
            variance_sum=float(data["variance_sum"]),
            skew_sum=float(data["skew_sum"]),
            bounds=tuple(BoundValue.from_dict(b) for b in data["bounds"]),
            violations=tuple(data["violations"]),
            tightest_variance=data["tightest_variance"],
            tightest_skew=data["tightest_skew"],
            metadata=dict(data.get("metadata") or {}),
        )


def _coerce(rho, observables) -> tuple[DensityMatrix, ObservableSet]:
    state = coerce_density(rho)
    obs = ObservableSet.coerce(observables)
    if obs.dim != state.dim:
        raise ValueError(f"dimension mismatch: state {state.dim}, observables {obs.dim}")
    return state, obs


# ---------------------------------------------------------------------------
# variance-family bounds
# ---------------------------------------------------------------------------


def bound_theorem1(rho, observables, budget: int = DEFAULT_BUDGET) -> BoundValue:
    """Permutation-maximized amplitude-vector bound on the variance sum.

    For amplitude vectors a_i of each observable, maximizes

        (1 / (2N - 2)) * ( sum_{i<j} ||a_i^pi + a_j^pi||^2
                           + (2 / (N (N - 1))) * (sum_{i<j} ||a_i^pi - a_j^pi||)^2 )

    over one eigenvalue-position permutation per observable (the first is
    pinned to the identity, which loses nothing). The search is exhaustive;
    (d!)^(N-1) above ``budget`` raises :class:`BudgetExceededError`. The
    returned detail is the maximizing :class:`PermutationTuple`, ties broken
    lexicographically.
    """
    state, obs = _coerce(rho, observables)
    n, d = obs.n, obs.dim
    tuples = math.factorial(d) ** (n - 1)
    if tuples > budget:
        raise BudgetExceededError(tuples, budget)

    avs = np.stack([amplitude_vector(state, a) for a in obs])
    perms, args = scan_inputs(avs)
    best, sel = _kernels.theorem1_scan(*args)
    nperm = perms.shape[0]
    digits = []
    rem = int(sel)
    for pos in range(n - 1):
        stride = nperm ** (n - 2 - pos)
        digits.append(rem // stride)
        rem %= stride
    tup = (tuple(range(d)),) + tuple(tuple(int(k) for k in perms[t]) for t in digits)
    return BoundValue("theorem1", float(best), True, PermutationTuple(tup))


def scan_inputs(avs: np.ndarray):
    """Precompute the Gram data the permutation-scan kernels consume.

    ``avs`` is the (N, d) stack of amplitude vectors. Returns
    (perms, args) where args unpacks directly into either scan kernel.
    """
    n, d = avs.shape
    variances = np.einsum("ij,ij->i", avs, avs)
    perms = np.array(list(itertools.permutations(range(d))), dtype=np.int64)
    nperm = perms.shape[0]
    permuted = avs[:, perms]  # (N, nperm, d)
    gram_first = np.ascontiguousarray(permuted[1:] @ avs[0])
    pair_rows = []
    pair_cols = []
    blocks = []
    for i in range(1, n):
        for j in range(i + 1, n):
            pair_rows.append(i - 1)
            pair_cols.append(j - 1)
            blocks.append(permuted[i] @ permuted[j].T)
    if blocks:
        gram_pairs = np.ascontiguousarray(np.stack(blocks))
    else:
        gram_pairs = np.zeros((0, nperm, nperm))
    c1 = 1.0 / (2.0 * n - 2.0)
    c2 = 2.0 / (n * (n - 1.0))
    args = (
        variances,
        gram_first,
        gram_pairs,
        np.asarray(pair_rows, dtype=np.int64),
        np.asarray(pair_cols, dtype=np.int64),
        nperm,
        c1,
        c2,
        TIE_TOL,
    )
    return perms, args


def bound_song(rho, observables) -> BoundValue:
    """Variance bound (1/N) * ( (Delta sum A)^2
    + (2 / (N (N - 1))) * (sum_{i<j} Delta(A_i - A_j))^2 )."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    total_var = variance(state, obs.total())
    root_sum = sum(
        math.sqrt(variance(state, obs[i] - obs[j])) for i, j in obs.pairs()
    )
    val = (total_var + 2.0 / (n * (n - 1.0)) * root_sum * root_sum) / n
    return BoundValue("song", val)


def bound_chen_variance(rho, observables) -> BoundValue:
    """Variance bound built from ascending-sorted amplitude vectors.

    With b_i the sorted amplitude vector of A_i and the step h = 1 at N = 2,
    0 otherwise:

        (1 / (2^h N - 2)) * ( sum_{i<j} ||b_i + b_j||^2
                              + ((h - 1) / (N - 1)^2) * (sum_{i<j} ||b_i + b_j||)^2 )
    """
    state, obs = _coerce(rho, observables)
    n = obs.n
    sorted_amps = [np.sort(amplitude_vector(state, a)) for a in obs]
    sq_total = 0.0
    root_total = 0.0
    for i, j in obs.pairs():
        s = sorted_amps[i] + sorted_amps[j]
        k2 = float(s @ s)
        sq_total += k2
        root_total += math.sqrt(k2)
    h = 1.0 if n == 2 else 0.0
    pref = 1.0 / (2.0**h * n - 2.0)
    coef = (h - 1.0) / (n - 1.0) ** 2
    val = pref * (sq_total + coef * root_total * root_total)
    return BoundValue("chen_variance", val)


def bound_mp_quadratic(rho, observables) -> BoundValue:
    """Two-observable quadratic bound (1/2) (Delta(A + B))^2."""
    state, obs = _coerce(rho, observables)
    if obs.n != 2:
        return BoundValue("mp_quadratic", None, applicable=False)
    val = 0.5 * variance(state, obs[0] + obs[1])
    return BoundValue("mp_quadratic", val)


def bound_robertson(rho, observables) -> BoundValue:
    """Product bound Delta A * Delta B >= (1/2) |tr(rho [A, B])|.

    The detail carries the product it bounds, since the target is not the
    variance sum.
    """
    state, obs = _coerce(rho, observables)
    if obs.n != 2:
        return BoundValue("robertson", None, applicable=False)
    comm = commutator(obs[0], obs[1])
    val = 0.5 * abs(complex(np.einsum("ij,ji->", state.mat, comm)))
    product = math.sqrt(variance(state, obs[0])) * math.sqrt(variance(state, obs[1]))
    return BoundValue("robertson", val, detail={"delta_product": product})


# ---------------------------------------------------------------------------
# skew-family bounds
# ---------------------------------------------------------------------------


def bound_theorem2a(rho, observables) -> BoundValue:
    """Skew bound (1 / (2N - 2)) * ( (2 / (N (N - 1))) * (sum_{i<j} sqrt(I(A_i + A_j)))^2
    + sum_{i<j} I(A_i - A_j) )."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    roots = 0.0
    diffs = 0.0
    for i, j in obs.pairs():
        roots += math.sqrt(skew_information(state, obs[i] + obs[j]))
        diffs += skew_information(state, obs[i] - obs[j])
    val = (2.0 / (n * (n - 1.0)) * roots * roots + diffs) / (2.0 * n - 2.0)
    return BoundValue("theorem2a", val)


def bound_theorem2b(rho, observables) -> BoundValue:
    """Skew bound (1 / (2N - 2)) * ( (2 / (N (N - 1))) * (sum_{i<j} sqrt(I(A_i - A_j)))^2
    + sum_{i<j} I(A_i + A_j) )."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    roots = 0.0
    sums = 0.0
    for i, j in obs.pairs():
        roots += math.sqrt(skew_information(state, obs[i] - obs[j]))
        sums += skew_information(state, obs[i] + obs[j])
    val = (2.0 / (n * (n - 1.0)) * roots * roots + sums) / (2.0 * n - 2.0)
    return BoundValue("theorem2b", val)


def bound_zhang(rho, observables) -> BoundValue:
    """Skew bound (1/N) * ( I(sum A)
    + (2 / (N (N - 1))) * (sum_{i<j} sqrt(I(A_i - A_j)))^2 )."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    total = skew_information(state, obs.total())
    roots = sum(
        math.sqrt(skew_information(state, obs[i] - obs[j])) for i, j in obs.pairs()
    )
    val = (total + 2.0 / (n * (n - 1.0)) * roots * roots) / n
    return BoundValue("zhang", val)


def bound_chen_skew(rho, observables) -> BoundValue:
    """Skew bound (1 / (N - 2)) * ( sum_{i<j} I(A_i + A_j)
    - (1 / (N - 1)^2) * (sum_{i<j} sqrt(I(A_i + A_j)))^2 ), three observables up."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    if n < 3:
        return BoundValue("chen_skew", None, applicable=False)
    sums = 0.0
    roots = 0.0
    for i, j in obs.pairs():
        s = skew_information(state, obs[i] + obs[j])
        sums += s
        roots += math.sqrt(s)
    val = (sums - roots * roots / (n - 1.0) ** 2) / (n - 2.0)
    return BoundValue("chen_skew", val)


def bound_parallelogram_sum(rho, observables) -> BoundValue:
    """Skew bound (1 / (2N - 2)) * sum_{i<j} I(A_i + A_j)."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    total = sum(skew_information(state, obs[i] + obs[j]) for i, j in obs.pairs())
    return BoundValue("parallelogram_sum", total / (2.0 * n - 2.0))


def bound_parallelogram_diff(rho, observables) -> BoundValue:
    """Skew bound (1 / (2N - 2)) * sum_{i<j} I(A_i - A_j)."""
    state, obs = _coerce(rho, observables)
    n = obs.n
    total = sum(skew_information(state, obs[i] - obs[j]) for i, j in obs.pairs())
    return BoundValue("parallelogram_diff", total / (2.0 * n - 2.0))


_BOUND_FUNCS = {
    "theorem1": bound_theorem1,
    "song": bound_song,
    "chen_variance": bound_chen_variance,
    "mp_quadratic": bound_mp_quadratic,
    "robertson": bound_robertson,
    "theorem2a": bound_theorem2a,
    "theorem2b": bound_theorem2b,
    "zhang": bound_zhang,
    "chen_skew": bound_chen_skew,
    "parallelogram_sum": bound_parallelogram_sum,
    "parallelogram_diff": bound_parallelogram_diff,
}


def _tightest(bounds, family):
    best_name = None
    best_val = -math.inf
    for b in bounds:
        if b.family != family or not b.applicable or b.value is None:
            continue
        if b.value > best_val:
            best_name, best_val = b.name, b.value
    return best_name


def evaluate_all(
    rho,
    observables,
    budget: int = DEFAULT_BUDGET,
    tolerance: float = DEFAULT_TOLERANCE,
    metadata: dict | None = None,
) -> BoundReport:
    """Evaluate the full bound catalog and assemble a :class:`BoundReport`.

    A bound is flagged as a violation when its value exceeds its target by
    more than ``tolerance * max(1, target)``; with correct arithmetic that
    never happens, so the violations list doubles as a numerical check.
    Tightest bounds are the largest applicable value per family, ties going
    to the earlier catalog entry.
    """
    state, obs = _coerce(rho, observables)
    variance_sum = float(sum(variance(state, a) for a in obs))
    skew_sum = float(sum(skew_information(state, a) for a in obs))

    values = []
    for name in CATALOG:
        func = _BOUND_FUNCS[name]
        if name == "theorem1":
            values.append(func(state, obs, budget=budget))
        else:
            values.append(func(state, obs))

    violations = []
    for b in values:
        if not b.applicable or b.value is None:
            continue
        if b.family == "variance":
            target = variance_sum
        elif b.family == "skew":
            target = skew_sum
        else:
            target = b.detail["delta_product"]
        if b.value > target + tolerance * max(1.0, target):
            violations.append(b.name)

    return BoundReport(
        variance_sum=variance_sum,
        skew_sum=skew_sum,
        bounds=tuple(values),
        violations=tuple(violations),
        tightest_variance=_tightest(values, "variance"),
        tightest_skew=_tightest(values, "skew"),
        metadata=dict(metadata or {}),
    )
