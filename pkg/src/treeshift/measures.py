"""Finite atomic probability measures on the nonnegative half-line.

An :class:`AtomicMeasure` is a finite convex combination of point masses
``sum_k masses[k] * delta(atoms[k])`` with ``atoms[k] >= 0``.  These carry
all the integral conditions used by the solver and verifier, so moments of
any integer order reduce to exact finite sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Atoms closer than this (relative to the larger one) are one atom; the
# closed-form constructions can produce numerically coincident positions
# for near-degenerate inputs.
ATOM_MERGE_RTOL = 1e-12

# Defensive renormalization threshold for masses.
MASS_NORM_RTOL = 1e-12


class ZeroAtomNegativeMoment(ValueError):
    """Negative-order moment requested for a measure with mass at zero."""


def _canonical(atoms, masses):
    atoms = [float(s) for s in atoms]
    masses = [float(m) for m in masses]
    if len(atoms) != len(masses):
        raise ValueError(f"atoms/masses length mismatch: {len(atoms)} vs {len(masses)}")
    if not atoms:
        raise ValueError("a measure needs at least one atom")
    for s in atoms:
        if not math.isfinite(s) or s < 0.0:
            raise ValueError(f"atom must be finite and >= 0, got {s}")
    for m in masses:
        if not math.isfinite(m) or m <= 0.0:
            raise ValueError(f"mass must be finite and > 0, got {m}")

    pairs = sorted(zip(atoms, masses))
    merged_atoms: list[float] = []
    merged_masses: list[float] = []
    for s, m in pairs:
        if merged_atoms and abs(s - merged_atoms[-1]) <= ATOM_MERGE_RTOL * max(s, merged_atoms[-1]):
            # mass-weighted position preserves the first moment
            tot = merged_masses[-1] + m
            merged_atoms[-1] = (merged_atoms[-1] * merged_masses[-1] + s * m) / tot
            merged_masses[-1] = tot
        else:
            merged_atoms.append(s)
            merged_masses.append(m)

    total = math.fsum(merged_masses)
    if abs(total - 1.0) > MASS_NORM_RTOL:
        merged_masses = [m / total for m in merged_masses]
    return tuple(merged_atoms), tuple(merged_masses)


@dataclass(frozen=True)
class AtomicMeasure:
    """Probability measure with finitely many atoms, sorted ascending.

    Construction canonicalizes the input: atoms are sorted, nearly
    coincident atoms merged (masses summed, position mass-averaged) and
    masses renormalized to sum to one.  Instances are immutable.
    """

    atoms: tuple[float, ...]
    masses: tuple[float, ...]

    def __post_init__(self):
        atoms, masses = _canonical(self.atoms, self.masses)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def dirac(cls, s: float) -> "AtomicMeasure":
        """Point mass at ``s``."""
        return cls((s,), (1.0,))

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def moment(self, n: int) -> float:
        """Power moment ``sum_k masses[k] * atoms[k]**n`` for integer ``n``.

        Raises :class:`ZeroAtomNegativeMoment` when ``n < 0`` and an atom
        sits at zero (the integral diverges).
        """
        if n < 0 and self.has_atom_at_zero():
            raise ZeroAtomNegativeMoment(f"moment of order {n} with an atom at 0")
        if n == 0:
            return math.fsum(self.masses)
        return math.fsum(m * s**n for s, m in zip(self.atoms, self.masses))

    def support_sup(self) -> float:
        """Largest atom (supremum of the closed support)."""
        return self.atoms[-1]

    def has_atom_at_zero(self) -> bool:
        # atoms are constructed, not measured, so the comparison is exact
        return self.atoms[0] == 0.0

    def to_dict(self) -> dict:
        return {"atoms": list(self.atoms), "masses": list(self.masses)}

    @classmethod
    def from_dict(cls, d: dict) -> "AtomicMeasure":
        return cls(tuple(d["atoms"]), tuple(d["masses"]))
