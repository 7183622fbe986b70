"""Stampfli completion of three increasing weights and its Berger measure.

Three weights ``0 < x < y < z`` extend canonically to the weight sequence of
a subnormal unilateral shift whose Berger measure is supported on two points
``0 < s0 < x**2 < s1``.  This module constructs that measure, evaluates its
first two negative-order moments in closed form, and converts between the
triple ``(x, y, z)`` and the normal form ``(x, r, theta)`` in which

    integral of 1/s   =  r / x**2,        r > 1,
    integral of 1/s^2 =  theta * r**2 / x**4,  theta > 1.

Everything is evaluated in the scale-free variables ``u = (y/x)**2`` and
``v = (z/x)**2`` (with ``v > u > 1``), rearranged so that every difference
of near-equal quantities is replaced by an explicit square; the identities

    1 - 2*u + u*v   = (u - 1)**2 + u*(v - u)
    1 - 2*r + r*r*u = (r - 1)**2 + r*r*(u - 1)

remove the cancellation from the textbook rational forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .measures import AtomicMeasure

# Rational forms below have poles at u = 1, v = u, r = 1, theta = 1; inputs
# closer to a pole than this are rejected rather than extrapolated.
POLE_MARGIN = 1e-10


class InvalidTriple(ValueError):
    """Weight triple violates 0 < x <= y <= z or needs a generic triple."""


class OutOfDomain(ValueError):
    """Argument outside the open domain of a closed-form map."""


@dataclass(frozen=True)
class WeightTriple:
    """Initial weights ``0 < x <= y <= z`` of a unilateral shift.

    ``x < y < z`` is the generic case.  Two degenerate shapes are carried
    for completeness: ``x = y = z`` (one-atomic completion) and
    ``x < y = z`` (two-atomic with an atom at zero).  The remaining shape
    ``x = y < z`` has no subnormal completion of this kind and is rejected.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name, w in (("x", self.x), ("y", self.y), ("z", self.z)):
            if not (isinstance(w, (int, float)) and math.isfinite(w) and w > 0.0):
                raise InvalidTriple(f"{name} must be a positive finite number, got {w}")
        if not (self.x <= self.y <= self.z):
            raise InvalidTriple(f"weights must satisfy x <= y <= z, got ({self.x}, {self.y}, {self.z})")
        if self.x == self.y < self.z:
            raise InvalidTriple("x = y < z admits no completion of this kind")

    @property
    def is_generic(self) -> bool:
        return self.x < self.y < self.z

    @property
    def kind(self) -> str:
        if self.is_generic:
            return "generic"
        if self.x == self.y == self.z:
            return "one_atomic"
        return "zero_atom"  # x < y = z

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z}

    @classmethod
    def from_dict(cls, d: dict) -> "WeightTriple":
        return cls(float(d["x"]), float(d["y"]), float(d["z"]))


@dataclass(frozen=True)
class StampfliParams:
    """Berger-measure data of a generic triple: atoms s0 < s1, mass rho at s0.

    The atoms are the roots of ``s**2 - psi1*s - psi0`` with ``psi0 < 0 <
    psi1`` and ``psi1**2 + 4*psi0 > 0``.
    """

    psi0: float
    psi1: float
    s0: float
    s1: float
    rho: float


@dataclass(frozen=True)
class NormalizedPair:
    """Scale-free pair (u, v) = (y**2/x**2, z**2/x**2) with v > u > 1."""

    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise OutOfDomain(f"(u, v) must be finite, got ({self.u}, {self.v})")
        if self.u - 1.0 <= POLE_MARGIN or self.v - self.u <= POLE_MARGIN:
            raise OutOfDomain(f"(u, v) must satisfy v > u > 1 with margin, got ({self.u}, {self.v})")


@dataclass(frozen=True)
class RateTheta:
    """Normalized negative moments (r, theta), both strictly above 1."""

    r: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.theta)):
            raise OutOfDomain(f"(r, theta) must be finite, got ({self.r}, {self.theta})")
        if self.r - 1.0 < POLE_MARGIN or self.theta - 1.0 < POLE_MARGIN:
            raise OutOfDomain(f"(r, theta) must both exceed 1, got ({self.r}, {self.theta})")


def _normalized(t: WeightTriple) -> NormalizedPair:
    if not t.is_generic:
        raise InvalidTriple(f"operation needs a generic triple x < y < z, got {t.kind}")
    return NormalizedPair((t.y / t.x) ** 2, (t.z / t.x) ** 2)


def stampfli_params(t: WeightTriple) -> StampfliParams:
    """Atoms and masses of the Berger measure of a generic triple."""
    p = _normalized(t)
    u, v = p.u, p.v
    x2 = t.x * t.x
    psi1 = x2 * u * (v - 1.0) / (u - 1.0)
    psi0 = -(x2 * x2) * u * (v - u) / (u - 1.0)
    disc = psi1 * psi1 + 4.0 * psi0
    if disc <= 0.0:
        raise InvalidTriple(f"degenerate discriminant for triple {t}")
    s1 = 0.5 * (psi1 + math.sqrt(disc))
    s0 = -psi0 / s1  # product of the roots is -psi0; avoids cancellation
    rho = (s1 - x2) / (s1 - s0)
    if not (0.0 < s0 < x2 < s1 and 0.0 < rho < 1.0):
        raise InvalidTriple(f"atom ordering failed for triple {t}")
    return StampfliParams(psi0=psi0, psi1=psi1, s0=s0, s1=s1, rho=rho)


def stampfli_measure(t: WeightTriple) -> AtomicMeasure:
    """Berger measure of the completed shift.

    Generic triples give two atoms in (0, inf).  ``x = y = z`` gives the
    point mass at x**2.  ``x < y = z`` gives an atom at zero plus an atom
    at y**2, with masses fixed by matching the first moment to x**2.
    """
    kind = t.kind
    if kind == "one_atomic":
        return AtomicMeasure.dirac(t.x * t.x)
    if kind == "zero_atom":
        m = (t.x / t.y) ** 2
        return AtomicMeasure((0.0, t.y * t.y), (1.0 - m, m))
    sp = stampfli_params(t)
    return AtomicMeasure((sp.s0, sp.s1), (sp.rho, 1.0 - sp.rho))


def f_map(p: NormalizedPair) -> float:
    """Normalized first negative moment (1 - 2u + uv) / (u(v - u)) > 1."""
    u, v = p.u, p.v
    return 1.0 + (u - 1.0) ** 2 / (u * (v - u))


def phi_u(u: float, r: float) -> float:
    """The v > u with f(u, v) = r, i.e. (1 - 2u + r u^2) / ((r - 1) u)."""
    if not (math.isfinite(u) and u - 1.0 > POLE_MARGIN):
        raise OutOfDomain(f"u must exceed 1, got {u}")
    if not (math.isfinite(r) and r - 1.0 > POLE_MARGIN):
        raise OutOfDomain(f"r must exceed 1, got {r}")
    return u + (u - 1.0) ** 2 / ((r - 1.0) * u)


def h_r(r: float, u: float) -> float:
    """g(u, phi_u(r)) collapsed to (1 - 2r + r^2 u) / (u - 1) > r**2."""
    if not (math.isfinite(r) and r - 1.0 > POLE_MARGIN):
        raise OutOfDomain(f"r must exceed 1, got {r}")
    if not (math.isfinite(u) and u - 1.0 > POLE_MARGIN):
        raise OutOfDomain(f"u must exceed 1, got {u}")
    return r * r + (r - 1.0) ** 2 / (u - 1.0)


def neg_moment1(t: WeightTriple) -> float:
    """Closed-form integral of 1/s against the Berger measure."""
    p = _normalized(t)
    return f_map(p) / (t.x * t.x)


def neg_moment2(t: WeightTriple) -> float:
    """Closed-form integral of 1/s**2 against the Berger measure."""
    p = _normalized(t)
    x2 = t.x * t.x
    return h_r(f_map(p), p.u) / (x2 * x2)


def params_from_triple(t: WeightTriple) -> RateTheta:
    """Normal form of a generic triple: r = x^2 * m(-1), theta = x^4 * m(-2) / r^2."""
    p = _normalized(t)
    r = f_map(p)
    theta = 1.0 + (r - 1.0) ** 2 / ((p.u - 1.0) * r * r)
    return RateTheta(r=r, theta=theta)


def triple_from_params(x: float, rt: RateTheta) -> WeightTriple:
    """Generic triple realizing the normal form (x, r, theta).

    Inverts h: u = (1 - 2r + theta r^2) / ((theta - 1) r^2), then v =
    phi_u(r); returns (x, x*sqrt(u), x*sqrt(v)).
    """
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0.0):
        raise OutOfDomain(f"x must be positive and finite, got {x}")
    r, theta = rt.r, rt.theta
    u = 1.0 + (r - 1.0) ** 2 / ((theta - 1.0) * r * r)
    v = phi_u(u, r)
    return WeightTriple(x, x * math.sqrt(u), x * math.sqrt(v))


def support_sup_closed(x: float, rt: RateTheta) -> float:
    """Largest Berger-measure atom of triple_from_params(x, rt).

    Uses psi1 = x^2 (theta r - 1) / ((theta - 1) r) directly, with psi0
    taken from the generated triple.
    """
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0.0):
        raise OutOfDomain(f"x must be positive and finite, got {x}")
    r, theta = rt.r, rt.theta
    psi1 = x * x * (theta * r - 1.0) / ((theta - 1.0) * r)
    t = triple_from_params(x, rt)
    p = _normalized(t)
    x2 = t.x * t.x
    psi0 = -(x2 * x2) * p.u * (p.v - p.u) / (p.u - 1.0)
    return 0.5 * (psi1 + math.sqrt(psi1 * psi1 + 4.0 * psi0))


def weight_sequence(t: WeightTriple, n: int) -> list[float]:
    """First ``n`` weights of the completed shift, ``n >= 3``.

    The first three are the data; the tail comes from consecutive moment
    ratios of the Berger measure, alpha_k = sqrt(gamma_{k+1} / gamma_k),
    evaluated with atoms rescaled by the largest one so arbitrarily long
    sequences neither overflow nor lose precision.
    """
    if n < 3:
        raise ValueError(f"need n >= 3 weights, got {n}")
    mu = stampfli_measure(t)
    out = [t.x, t.y, t.z]
    if len(out) >= n:
        return out[:n]
    top = mu.support_sup()
    q = [s / top for s in mu.atoms]
    # powers of q at exponent k, maintained incrementally from k = 3
    pk = [qi**3 for qi in q]
    for _ in range(3, n):
        num = math.fsum(m * p * qi for m, p, qi in zip(mu.masses, pk, q))
        den = math.fsum(m * p for m, p in zip(mu.masses, pk))
        out.append(math.sqrt(top * num / den))
        pk = [p * qi for p, qi in zip(pk, q)]
    return out
