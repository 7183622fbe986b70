"""Decision procedures for the two-generation completion problem.

The tree has one branching vertex fed by a trunk of length one, ``eta``
branches, and given weights ``lambda0`` on the trunk edge plus two
generations ``(l1_i, l2_i)`` per branch.  Writing ``a_i = l1_i**2 /
l2_i**2`` and ``c_i = l1_i**2 / l2_i**4``, a completion exists exactly when
some rates ``r_i >= 1`` satisfy

    sum_i a_i * r_i == 1   and   sum_i c_i * r_i**2 <= 1 / lambda0**2,

the bound strict as soon as some ``r_i > 1``.  Branches with ``r_i == 1``
get the point mass at ``l2_i**2``; branches with ``r_i > 1`` get a genuine
two-atom Berger measure via the Stampfli normal form.  The feasibility
functional ``beta`` is the infimum of the quadratic form over rates that
are all strictly above 1, which this module computes both in closed form
(eta == 2) and by an exact active-set method (any finite eta).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .measures import AtomicMeasure
from .stampfli import RateTheta, stampfli_measure, triple_from_params

# Relative tolerance for the equality constraint sum(a_i r_i) = 1 and for
# flat-data equality tests.  Open/closed distinctions are exact in theory;
# instances landing inside this band are reported as boundary cases.
EQ_RTOL = 1e-10

# A rate counts as strictly above 1 only beyond this margin.
BOUNDARY_TOL = 1e-9

NEG_INF = float("-inf")


class ShapeMismatch(ValueError):
    """Operation applied to a problem shape it does not support."""


class LengthMismatch(ValueError):
    """Paired sequences of different lengths."""


class InfeasibleProfile(ValueError):
    """Rate profile violates the feasibility constraints."""


class NoThetaBudget(ValueError):
    """No second-moment budget left to build two-atomic branches."""


class NotFlat(ValueError):
    """Flat-case classification applied to non-flat data."""


class InfiniteBranchCount(ValueError):
    """Infinitely many branches are out of scope for the decision procedures."""


@dataclass(frozen=True)
class ProblemShape:
    """Branch count, trunk length and number of given generations."""

    eta: int
    kappa: int = 1
    p: int = 2

    def __post_init__(self):
        if isinstance(self.eta, float) and math.isinf(self.eta):
            raise InfiniteBranchCount(
                "eta = infinity is not supported: the decision procedures "
                "work with finitely many branches only"
            )
        for name, val in (("eta", self.eta), ("kappa", self.kappa), ("p", self.p)):
            if not isinstance(val, int) or isinstance(val, bool):
                raise ValueError(f"{name} must be an integer, got {val!r}")
        if self.eta < 2:
            raise ValueError(f"eta must be at least 2, got {self.eta}")
        if self.kappa < 1 or self.p < 1:
            raise ValueError(f"kappa and p must be positive, got {self.kappa}, {self.p}")


@dataclass(frozen=True)
class InitialData:
    """Trunk weight lambda0 and per-branch weight pairs (l1_i, l2_i)."""

    lambda0: float
    branches: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not (math.isfinite(self.lambda0) and self.lambda0 > 0.0):
            raise ValueError(f"lambda0 must be positive and finite, got {self.lambda0}")
        branches = tuple((float(l1), float(l2)) for l1, l2 in self.branches)
        if len(branches) < 2:
            raise ValueError(f"need at least 2 branches, got {len(branches)}")
        for i, (l1, l2) in enumerate(branches):
            for name, w in (("l1", l1), ("l2", l2)):
                if not (math.isfinite(w) and w > 0.0):
                    raise ValueError(f"branch {i + 1}: {name} must be positive and finite, got {w}")
        object.__setattr__(self, "lambda0", float(self.lambda0))
        object.__setattr__(self, "branches", branches)

    @property
    def eta(self) -> int:
        return len(self.branches)

    def shape(self) -> ProblemShape:
        return ProblemShape(eta=self.eta, kappa=1, p=2)

    def a(self) -> tuple[float, ...]:
        """Linear coefficients l1_i**2 / l2_i**2 of the rate constraint."""
        return tuple((l1 / l2) ** 2 for l1, l2 in self.branches)

    def c(self) -> tuple[float, ...]:
        """Quadratic coefficients l1_i**2 / l2_i**4 of the objective."""
        return tuple((l1 * l1) / (l2**4) for l1, l2 in self.branches)

    def first_gen_energy(self) -> float:
        return math.fsum(l1 * l1 for l1, _ in self.branches)

    def to_dict(self) -> dict:
        return {
            "lambda0": self.lambda0,
            "branches": [{"l1": l1, "l2": l2} for l1, l2 in self.branches],
        }


@dataclass(frozen=True)
class RateProfile:
    """Candidate rates, one per branch; theta optional and per-branch."""

    r: tuple[float, ...]
    theta: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(float(v) for v in self.r))
        if self.theta is not None:
            theta = tuple(float(v) for v in self.theta)
            if len(theta) != len(self.r):
                raise LengthMismatch(f"theta has length {len(theta)}, r has {len(self.r)}")
            object.__setattr__(self, "theta", theta)

    def one_atomic_indices(self, tol: float = BOUNDARY_TOL) -> tuple[int, ...]:
        """Branches whose rate is 1 up to tol (point-mass branches)."""
        return tuple(i for i, v in enumerate(self.r) if v <= 1.0 + tol)

    def two_atomic_indices(self, tol: float = BOUNDARY_TOL) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.r) if v > 1.0 + tol)

    def to_dict(self) -> dict:
        d: dict = {"r": list(self.r)}
        if self.theta is not None:
            d["theta"] = list(self.theta)
        return d


class Regime(enum.Enum):
    SIGMA_LOW = "SigmaLow"
    INTERIOR = "Interior"
    TAU_HIGH = "TauHigh"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class BetaResult:
    """Value of the feasibility functional with minimizer and regime data.

    ``value`` is -inf exactly when the constraint set is empty.  ``attained``
    says whether the infimum is a minimum over the open set of rates
    strictly above 1; boundary regimes are open-set infima attained only in
    the closure, whose minimizer is reported.
    """

    value: float
    attained: bool
    minimizer: RateProfile | None
    regime: Regime
    sigma: float | None = None
    tau: float | None = None

    def to_dict(self) -> dict:
        return {
            "value": "-inf" if self.value == NEG_INF else self.value,
            "attained": self.attained,
            "regime": self.regime.value,
            "sigma": self.sigma,
            "tau": self.tau,
            "minimizer": None if self.minimizer is None else self.minimizer.to_dict(),
        }


@dataclass(frozen=True)
class CompletionBranch:
    kind: str  # "OneAtomic" | "TwoAtomic"
    lambda3_hat: float
    lambda4_hat: float
    measure: AtomicMeasure
    r: float
    theta: float | None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lambda3_hat": self.lambda3_hat,
            "lambda4_hat": self.lambda4_hat,
            "measure": self.measure.to_dict(),
            "r": self.r,
            "theta": self.theta,
        }


@dataclass(frozen=True)
class CompletionResult:
    """Per-branch completion weights and measures, plus the common theta."""

    branches: tuple[CompletionBranch, ...]
    tau: float | None

    def measures(self) -> list[AtomicMeasure]:
        return [b.measure for b in self.branches]

    def to_dict(self) -> dict:
        return {"tau": self.tau, "branches": [b.to_dict() for b in self.branches]}


@dataclass(frozen=True)
class Decision:
    """Yes/no answer with witness data and boundary reporting."""

    yes: bool
    reason: str
    boundary: bool = False
    beta: BetaResult | None = None
    witness: RateProfile | None = None
    one_atomic: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "decision": "YES" if self.yes else "NO",
            "reason": self.reason,
            "boundary": self.boundary,
            "beta": None if self.beta is None else self.beta.to_dict(),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "one_atomic_branches": None
            if self.one_atomic is None
            else [i + 1 for i in self.one_atomic],
        }


def _eta2_squares(data: InitialData) -> tuple[float, float, float, float]:
    (l11, l12), (l21, l22) = data.branches
    return l11 * l11, l12 * l12, l21 * l21, l22 * l22


def beta_eta2_closed(data: InitialData) -> BetaResult:
    """Closed-form beta for two branches.

    With a_j, b_j the squared weights of branches 1 and 2, substitute the
    constraint into the objective to get a quadratic on the open interval
    (1, tau), tau = a2 (b2 - b1) / (a1 b2); its vertex sits at sigma =
    a2 / (a1 + b1).  The infimum is the quadratic's value at 1, sigma or
    tau according to where the vertex falls, and the constraint set is
    empty exactly when tau <= 1.
    """
    if data.eta != 2:
        raise ShapeMismatch(f"closed form needs eta = 2, got {data.eta}")
    a1, a2, b1, b2 = _eta2_squares(data)
    sigma = a2 / (a1 + b1)
    tau = a2 * (b2 - b1) / (a1 * b2)

    if tau <= 1.0:
        regime = Regime.SIGMA_LOW if sigma <= 1.0 else Regime.TAU_HIGH
        return BetaResult(NEG_INF, False, None, regime, sigma=sigma, tau=tau)

    def second_rate(x: float) -> float:
        return (b2 / b1) * (1.0 - (a1 / a2) * x)

    if sigma <= 1.0:
        value = ((a1 - a2) ** 2 + a1 * b1) / (a2 * a2 * b1)
        minimizer = RateProfile((1.0, second_rate(1.0)))
        return BetaResult(value, False, minimizer, Regime.SIGMA_LOW, sigma=sigma, tau=tau)
    if sigma < tau:
        value = 1.0 / (a1 + b1)
        minimizer = RateProfile((sigma, b2 / (a1 + b1)))
        return BetaResult(value, True, minimizer, Regime.INTERIOR, sigma=sigma, tau=tau)
    value = ((b2 - b1) ** 2 + a1 * b1) / (a1 * b2 * b2)
    minimizer = RateProfile((tau, 1.0))
    return BetaResult(value, False, minimizer, Regime.TAU_HIGH, sigma=sigma, tau=tau)


def _active_set_minimum(a: tuple[float, ...], c: tuple[float, ...]) -> tuple[float, list[float]]:
    """Exact minimum of sum(c_i r_i^2) over {r >= 1, sum(a_i r_i) = 1}.

    Requires sum(a) < 1.  Unconstrained stationarity on the free set gives
    r_i proportional to a_i / c_i; any free coordinate falling below 1 is
    clamped there and the reduced problem re-solved.  Clamping shrinks the
    remaining budget, so clamped coordinates never want to come back: the
    loop reaches the KKT point in at most len(a) passes.
    """
    n = len(a)
    free = list(range(n))
    clamped: list[int] = []
    while True:
        budget = 1.0 - math.fsum(a[i] for i in clamped)
        denom = math.fsum(a[i] * a[i] / c[i] for i in free)
        rates = {i: budget * (a[i] / c[i]) / denom for i in free}
        fresh = [i for i in free if rates[i] < 1.0]
        if not fresh:
            break
        clamped.extend(fresh)
        free = [i for i in free if i not in set(fresh)]
        # sum(a) < 1 guarantees the free set never empties
    r = [1.0] * n
    for i in free:
        r[i] = rates[i]
    value = math.fsum(c[i] * r[i] * r[i] for i in range(n))
    return value, r


def beta_numeric(data: InitialData) -> BetaResult:
    """Beta over the closed feasible set {r >= 1, sum(a_i r_i) = 1}.

    The objective is a positive diagonal quadratic, so the closed-set
    minimum is computed exactly by active-set clamping; by continuity it
    equals the open-set infimum whenever rates strictly above 1 are
    feasible (sum(a) < 1).  An empty closed set (sum(a) > 1) yields -inf.
    """
    a, c = data.a(), data.c()
    s = math.fsum(a)
    tol = EQ_RTOL * max(1.0, s)
    if s > 1.0 + tol:
        return BetaResult(NEG_INF, False, None, Regime.NUMERIC)
    if abs(s - 1.0) <= tol:
        # unique feasible point: every rate pinned at 1
        r = (1.0,) * data.eta
        return BetaResult(math.fsum(c), False, RateProfile(r), Regime.NUMERIC)
    value, r = _active_set_minimum(a, c)
    attained = all(v > 1.0 + BOUNDARY_TOL for v in r)
    return BetaResult(value, attained, RateProfile(tuple(r)), Regime.NUMERIC)


@dataclass(frozen=True)
class QuadMinResult:
    """Closed-form minimum of sum(b_i r_i^2) subject to sum(a_i r_i) = 1."""

    value: float
    rates: tuple[float, ...]
    all_rates_above_one: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "rates": list(self.rates),
            "all_rates_above_one": self.all_rates_above_one,
        }


def prop51_min(a, b) -> QuadMinResult:
    """Cauchy-Schwarz minimum over positive rates.

    min { sum(b_i r_i^2) : r_i > 0, sum(a_i r_i) = 1 } = 1 / sum(a_i^2/b_i),
    attained at r_i = a_i / (b_i * sum(a_j^2/b_j)).  When sum(a_j^2/b_j) <
    a_i/b_i for every i the same value is the minimum over rates above 1,
    reported via ``all_rates_above_one``.
    """
    a = tuple(float(v) for v in a)
    b = tuple(float(v) for v in b)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise LengthMismatch(f"need at least 2 entries, got {len(a)}")
    if any(v <= 0 or not math.isfinite(v) for v in a + b):
        raise ValueError("all entries must be positive and finite")
    total = math.fsum(ai * ai / bi for ai, bi in zip(a, b))
    rates = tuple(ai / (bi * total) for ai, bi in zip(a, b))
    hypothesis = all(total < ai / bi for ai, bi in zip(a, b))
    return QuadMinResult(value=1.0 / total, rates=rates, all_rates_above_one=hypothesis)


def _open_beta(data: InitialData) -> BetaResult:
    """Beta over rates strictly above 1 (the open constraint set).

    Differs from beta_numeric only when sum(a) = 1: the single closed
    feasible point has every rate at 1, so the open set is empty.
    """
    if data.eta == 2:
        return beta_eta2_closed(data)
    a = data.a()
    s = math.fsum(a)
    if s >= 1.0 - EQ_RTOL * max(1.0, s):
        return BetaResult(NEG_INF, False, None, Regime.NUMERIC)
    return beta_numeric(data)


def _strictly_below(value: float, thresh: float) -> tuple[bool, bool]:
    """(strictly below, boundary) with the declared relative band."""
    margin = EQ_RTOL * max(abs(value), abs(thresh), 1.0)
    if abs(value - thresh) <= margin:
        return False, True
    return value < thresh, False


def exists_two_atomic(data: InitialData) -> Decision:
    """Does a completion with every branch measure two-atomic exist?

    Equivalent to -inf < beta < 1/lambda0**2 with beta taken over rates
    strictly above 1.  Strictness is what matters: even when the infimum is
    not attained, any value strictly below the threshold leaves room for an
    interior rate profile strictly below it too.
    """
    beta = _open_beta(data)
    thresh = 1.0 / (data.lambda0 * data.lambda0)
    if beta.value == NEG_INF:
        return Decision(
            False,
            "no rates strictly above 1 meet the first-moment constraint",
            beta=beta,
        )
    below, boundary = _strictly_below(beta.value, thresh)
    if below:
        return Decision(True, "beta lies strictly below 1/lambda0^2", beta=beta, witness=beta.minimizer)
    reason = (
        "beta equals 1/lambda0^2; the strict bound fails"
        if boundary
        else "beta is at or above 1/lambda0^2"
    )
    return Decision(False, reason, boundary=boundary, beta=beta)


def exists_completion(data: InitialData) -> Decision:
    """Does any subnormal completion exist (one- or two-atomic branches)?

    Rates may now sit at 1.  If sum(a) > 1 no nondecreasing completion
    exists (hyponormality).  If sum(a) = 1 the only candidate is the all-
    flat profile, admitted under the non-strict bound.  Otherwise some rate
    must exceed 1 and the closed-set minimum must beat the threshold
    strictly.
    """
    a, c = data.a(), data.c()
    s = math.fsum(a)
    tol = EQ_RTOL * max(1.0, s)
    thresh = 1.0 / (data.lambda0 * data.lambda0)

    if s > 1.0 + tol:
        return Decision(
            False,
            "hyponormality violated: sum of l1^2/l2^2 exceeds 1, so no "
            "nondecreasing rate profile meets the first-moment constraint",
        )

    if abs(s - 1.0) <= tol:
        quad = math.fsum(c)
        margin = EQ_RTOL * max(abs(quad), abs(thresh), 1.0)
        boundary = abs(quad - thresh) <= margin
        if quad <= thresh + margin:
            witness = RateProfile((1.0,) * data.eta)
            return Decision(
                True,
                "all-flat profile: every rate is 1 and the non-strict "
                "second-moment bound holds",
                boundary=boundary,
                witness=witness,
                one_atomic=tuple(range(data.eta)),
            )
        return Decision(False, "all-flat profile fails the second-moment bound", witness=None)

    beta = beta_numeric(data)
    below, boundary = _strictly_below(beta.value, thresh)
    if below:
        witness = beta.minimizer
        return Decision(
            True,
            "minimal quadratic value over rates >= 1 lies strictly below "
            "1/lambda0^2",
            beta=beta,
            witness=witness,
            one_atomic=witness.one_atomic_indices(),
        )
    reason = (
        "minimal quadratic value equals 1/lambda0^2 and some rate must "
        "exceed 1, so the strict bound fails"
        if boundary
        else "minimal quadratic value is at or above 1/lambda0^2"
    )
    return Decision(False, reason, boundary=boundary, beta=beta)


def construct_completion(data: InitialData, profile: RateProfile) -> CompletionResult:
    """Build explicit completion weights and measures from a feasible profile.

    Rate-1 branches get the point mass at l2_i**2 and constant tail
    weights.  The others share a common theta = min(2, (1 + theta_max)/2),
    where theta_max is the largest admissible value under the strict
    second-moment budget; any theta in (1, theta_max) works, and the
    midpoint-capped rule keeps the construction deterministic and the
    supports bounded.  Per-branch thetas supplied on the profile are
    honored instead (still subject to the budget).
    """
    a, c = data.a(), data.c()
    if len(profile.r) != data.eta:
        raise InfeasibleProfile(f"profile has {len(profile.r)} rates for {data.eta} branches")
    r = [float(v) for v in profile.r]
    for i, v in enumerate(r):
        if v < 1.0 - BOUNDARY_TOL:
            raise InfeasibleProfile(f"rate {i + 1} is below 1: {v}")
        r[i] = max(v, 1.0)
    lhs = math.fsum(ai * ri for ai, ri in zip(a, r))
    if abs(lhs - 1.0) > EQ_RTOL * max(1.0, abs(lhs)) * 10.0:
        raise InfeasibleProfile(f"sum(a_i r_i) = {lhs!r}, expected 1")

    one_atomic = set(profile.one_atomic_indices())
    two_atomic = [i for i in range(data.eta) if i not in one_atomic]
    thresh = 1.0 / (data.lambda0 * data.lambda0)

    thetas: dict[int, float] = {}
    tau: float | None = None
    if two_atomic:
        base = math.fsum(c[i] for i in one_atomic)
        quad = math.fsum(c[i] * r[i] * r[i] for i in two_atomic)
        if profile.theta is not None:
            for i in two_atomic:
                if profile.theta[i] <= 1.0:
                    raise InfeasibleProfile(f"theta {i + 1} must exceed 1, got {profile.theta[i]}")
                thetas[i] = profile.theta[i]
            spent = base + math.fsum(thetas[i] * c[i] * r[i] * r[i] for i in two_atomic)
            if spent >= thresh:
                raise NoThetaBudget(
                    f"supplied thetas exhaust the budget: {spent!r} >= {thresh!r}"
                )
            distinct = {thetas[i] for i in two_atomic}
            tau = distinct.pop() if len(distinct) == 1 else None
        else:
            theta_max = (thresh - base) / quad
            if theta_max <= 1.0:
                raise NoThetaBudget(
                    f"theta_max = {theta_max!r} leaves no strict second-moment budget"
                )
            tau = min(2.0, 0.5 * (1.0 + theta_max))
            for i in two_atomic:
                thetas[i] = tau

    branches = []
    for i, (l1, l2) in enumerate(data.branches):
        if i in one_atomic:
            branches.append(
                CompletionBranch(
                    kind="OneAtomic",
                    lambda3_hat=l2,
                    lambda4_hat=l2,
                    measure=AtomicMeasure.dirac(l2 * l2),
                    r=1.0,
                    theta=None,
                )
            )
        else:
            triple = triple_from_params(l2, RateTheta(r[i], thetas[i]))
            branches.append(
                CompletionBranch(
                    kind="TwoAtomic",
                    lambda3_hat=triple.y,
                    lambda4_hat=triple.z,
                    measure=stampfli_measure(triple),
                    r=r[i],
                    theta=thetas[i],
                )
            )
    return CompletionResult(branches=tuple(branches), tau=tau)


@dataclass(frozen=True)
class SufficientCondition:
    """One sufficient condition with its closed-form witness when it fires."""

    name: str
    holds: bool
    witness: RateProfile | None
    feasibility_residual: float | None
    quad_value: float | None
    threshold: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "feasibility_residual": self.feasibility_residual,
            "quad_value": self.quad_value,
            "threshold": self.threshold,
        }


def sufficient_checks(data: InitialData) -> list[SufficientCondition]:
    """Evaluate the four closed-form sufficient conditions.

    Each pairs a hypothesis on the data with an explicit rate profile that
    then satisfies the constraint identically and the strict bound.  A
    condition that does not fire makes no claim.
    """
    a, c = data.a(), data.c()
    eta = data.eta
    l1sq = [l1 * l1 for l1, _ in data.branches]
    l2sq = [l2 * l2 for _, l2 in data.branches]
    lam0sq = data.lambda0 * data.lambda0
    thresh = 1.0 / lam0sq
    total1 = math.fsum(l1sq)
    s = math.fsum(a)
    results = []

    def entry(name: str, hypothesis: bool, rates: tuple[float, ...] | None):
        if not hypothesis or rates is None:
            results.append(SufficientCondition(name, False, None, None, None, thresh))
            return
        residual = math.fsum(ai * ri for ai, ri in zip(a, rates)) - 1.0
        quad = math.fsum(ci * ri * ri for ci, ri in zip(c, rates))
        holds = quad < thresh and all(ri > 1.0 for ri in rates)
        results.append(
            SufficientCondition(
                name,
                holds,
                RateProfile(rates) if holds else None,
                residual if holds else None,
                quad if holds else None,
                thresh,
            )
        )

    # every second-generation energy dominates the whole first generation
    hyp = all(total1 < v for v in l2sq) and lam0sq < total1
    entry("dominant_second_generation", hyp, tuple(v / total1 for v in l2sq) if hyp else None)

    # one common rate 1/s for every branch
    hyp = s < 1.0 and lam0sq * math.fsum(c) < s * s
    entry("uniform_rate", hyp, tuple(1.0 / s for _ in range(eta)) if hyp else None)

    # each branch contributes exactly 1/eta to the constraint
    hyp = all(eta * l1sq[i] < l2sq[i] for i in range(eta)) and lam0sq * math.fsum(
        1.0 / v for v in l1sq
    ) < eta * eta
    entry(
        "equal_share",
        hyp,
        tuple(l2sq[i] / (eta * l1sq[i]) for i in range(eta)) if hyp else None,
    )

    # rates from the harmonic mean of second-generation energies
    t = math.fsum(1.0 / v for v in l2sq)
    hyp = all(l1sq[i] * t < 1.0 for i in range(eta)) and lam0sq * math.fsum(
        1.0 / (l1sq[i] * l2sq[i] * l2sq[i]) for i in range(eta)
    ) < t * t
    entry("harmonic_rate", hyp, tuple(1.0 / (l1sq[i] * t) for i in range(eta)) if hyp else None)

    return results


@dataclass(frozen=True)
class NecessaryCondition:
    name: str
    holds: bool
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


def necessary_checks(data: InitialData) -> list[NecessaryCondition]:
    """Four strict inequalities every all-two-atomic completion forces.

    Any failure certifies that no completion with every branch measure
    two-atomic exists.
    """
    l1sq = [l1 * l1 for l1, _ in data.branches]
    l2sq = [l2 * l2 for _, l2 in data.branches]
    lam0sq = data.lambda0 * data.lambda0
    total1 = math.fsum(l1sq)
    checks = [
        ("trunk_below_first_generation", lam0sq, total1),
        ("second_moment_budget", math.fsum(data.c()), 1.0 / lam0sq),
        ("first_moment_margin", math.fsum(data.a()), 1.0),
        ("first_generation_below_top", total1, max(l2sq)),
    ]
    return [NecessaryCondition(name, lhs < rhs, lhs, rhs) for name, lhs, rhs in checks]


class FlatClass(enum.Enum):
    NO_COMPLETION_HYPONORMALITY = "NoCompletion_Hyponormality"
    NO_TWO_ATOMIC_ONE_ATOMIC_ONLY = "NoTwoAtomic_OneAtomicOnly"
    TWO_ATOMIC_EXISTS = "TwoAtomicExists"
    NO_TWO_ATOMIC_MUST_BE_ONE_ATOMIC = "NoTwoAtomic_MustBeOneAtomic"


def classify_flat(data: InitialData) -> FlatClass:
    """Classify data whose second-generation weights all agree.

    Flattening such data onto a single unilateral shift compares the common
    l2**2 against the total first-generation energy T = sum(l1_i**2):
    below T no completion exists at all (weights must not decrease); equal
    to T only one-atomic branch measures remain possible; above T the
    two-atomic case is decided by lambda0**2 < T, with equality forcing
    one-atomic measures and anything larger ruling completions out.
    """
    l2sq = [l2 * l2 for _, l2 in data.branches]
    top = max(l2sq)
    for v in l2sq:
        if abs(v - l2sq[0]) > EQ_RTOL * top:
            raise NotFlat(f"second-generation weights differ: {l2sq}")
    f = l2sq[0]
    total1 = math.fsum(l1 * l1 for l1, _ in data.branches)
    lam0sq = data.lambda0 * data.lambda0
    scale = max(f, total1)
    if f < total1 - EQ_RTOL * scale:
        return FlatClass.NO_COMPLETION_HYPONORMALITY
    if abs(f - total1) <= EQ_RTOL * scale:
        return FlatClass.NO_TWO_ATOMIC_ONE_ATOMIC_ONLY
    scale0 = max(lam0sq, total1)
    if abs(lam0sq - total1) <= EQ_RTOL * scale0:
        return FlatClass.NO_TWO_ATOMIC_MUST_BE_ONE_ATOMIC
    if lam0sq < total1:
        return FlatClass.TWO_ATOMIC_EXISTS
    return FlatClass.NO_COMPLETION_HYPONORMALITY


@dataclass(frozen=True)
class OneGenResult:
    exists: bool
    witness_l2: tuple[float, ...] | None

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "witness_l2": None if self.witness_l2 is None else list(self.witness_l2),
        }


def one_generation_check(lambda0: float, l1) -> OneGenResult:
    """One given generation: a two-atomic completion exists iff
    lambda0**2 < sum(l1_i**2), strictly.

    On success a witness second generation with l2_i**2 = 2 * sum(l1_j**2)
    is returned; it satisfies the dominant-second-generation hypothesis by
    construction, so the full completion machinery applies downstream.
    """
    l1 = tuple(float(v) for v in l1)
    if len(l1) < 2:
        raise LengthMismatch(f"need at least 2 branches, got {len(l1)}")
    if any(v <= 0 or not math.isfinite(v) for v in l1):
        raise ValueError("first-generation weights must be positive and finite")
    if not (math.isfinite(lambda0) and lambda0 > 0):
        raise ValueError(f"lambda0 must be positive and finite, got {lambda0}")
    total = math.fsum(v * v for v in l1)
    if lambda0 * lambda0 < total:
        l2 = math.sqrt(2.0 * total)
        return OneGenResult(True, (l2,) * len(l1))
    return OneGenResult(False, None)
