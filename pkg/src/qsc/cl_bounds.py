"""Commutator-length and stable-norm certificates.

Turns ring invariants and abstract Hamiltonian data (the time integral of
sup F, the bump weight w, the line-class area) into exact lower-bound
certificates.  All comparisons are strict and exact; boundary values are
never certified.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .qh_ring import RingParams, asymptotic_invariant, euler_power_invariant

DEFAULT_MAX_G = 10**4
MAX_G_ENV_VAR = "QSC_MAX_G"

# Hypotheses the caller asserts; they live on the manifold and cannot be
# checked here.
_BASE_PRECONDITIONS = ("F normalized", "phi_F displaces B")


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise DomainError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class HamiltonianProfile:
    """The two numbers a displacing Hamiltonian feeds into the bounds.

    `sup_integral` is the time integral of the spatial supremum of F (any
    sign); `w` is the positive coefficient on the bump function.
    """

    sup_integral: Fraction
    w: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sup_integral", _fraction(self.sup_integral))
        object.__setattr__(self, "w", _fraction(self.w))
        if self.w <= 0:
            raise DomainError(f"bump weight must be positive: {self.w}")


@dataclass(frozen=True)
class BoundCertificate:
    """A certified statement, the threshold it cleared, and its rule id."""

    statement: str  # "cl_gt" or "none"
    g: Optional[int]
    threshold: Fraction
    theorem: str
    preconditions: tuple[str, ...] = _BASE_PRECONDITIONS

    @property
    def certified(self) -> bool:
        return self.statement == "cl_gt"

    def to_json_dict(self) -> dict:
        return {
            "statement": self.statement,
            "g": self.g,
            "threshold": str(self.threshold),
            "theorem": self.theorem,
            "preconditions": list(self.preconditions),
        }


def _max_g_cap(max_g: Optional[int]) -> int:
    if max_g is not None:
        return max_g
    env = os.environ.get(MAX_G_ENV_VAR)
    return int(env) if env else DEFAULT_MAX_G


def cl_lower_bound_cpn(
    n: int,
    area,
    profile: HamiltonianProfile,
    max_g: Optional[int] = None,
) -> BoundCertificate:
    """Largest g with w > sup_integral + floor(g*n/(n+1)) * area, on CP^n.

    The threshold is nondecreasing in g, so the search walks g = 1, 2, ...
    and stops at the first failure (capped at max_g to guarantee
    termination).  Returns a "none" certificate when even g = 1 fails.
    """
    if n < 1:
        raise DomainError(f"projective space dimension must be >= 1: {n}")
    area = _fraction(area)
    if area <= 0:
        raise DomainError(f"area must be positive: {area}")
    cap = _max_g_cap(max_g)
    theorem = "thm-cl-cp-n"

    def threshold(g: int) -> Fraction:
        return profile.sup_integral + (g * n) // (n + 1) * area

    best = None
    previous = None
    for g in range(1, cap + 1):
        t = threshold(g)
        if previous is not None and t < previous:
            raise AssertionError("threshold decreased along the search")
        previous = t
        if profile.w > t:
            best = g
        else:
            break
    if best is None:
        return BoundCertificate("none", None, threshold(1), theorem)
    return BoundCertificate("cl_gt", best, threshold(best), theorem)


def cl_lower_bound_grassmannian(
    ring: RingParams, profile: HamiltonianProfile, g: int
) -> BoundCertificate:
    """Certify cl > g on Gr(r, n) when w clears sup_integral + I_g."""
    if g < 1:
        raise DomainError(f"power must be >= 1: {g}")
    invariant = euler_power_invariant(ring, g)
    t = profile.sup_integral + invariant
    theorem = "cor-cl-grassmannian"
    if profile.w > t:
        return BoundCertificate("cl_gt", g, t, theorem)
    return BoundCertificate("none", None, t, theorem)


def stable_norm_lower_bound(ring: RingParams, w) -> Fraction:
    """The stable commutator norm bound w / (r(n-r)/n * area).

    On CP^m (ring Gr(1, m+1)) this equals w*(m+1)/(m*area).
    """
    w = _fraction(w)
    if w <= 0:
        raise DomainError(f"bump weight must be positive: {w}")
    return w / asymptotic_invariant(ring)


def aspherical_bound(profile: HamiltonianProfile) -> BoundCertificate:
    """Certify cl > 1 when w > sup_integral, for aspherical targets.

    Asphericity is a caller-asserted hypothesis recorded on the certificate.
    """
    theorem = "thm-cl-aspherical"
    preconditions = _BASE_PRECONDITIONS + ("M symplectically aspherical",)
    if profile.w > profile.sup_integral:
        return BoundCertificate(
            "cl_gt", 1, profile.sup_integral, theorem, preconditions
        )
    return BoundCertificate("none", None, profile.sup_integral, theorem, preconditions)


def spectral_lower_bound(
    ring: RingParams, profile: HamiltonianProfile, g: int
) -> Fraction:
    """The certified lower bound w - sup_integral - I_g for c(E^g, F # w H_B).

    Splits E^g (through euler_power_invariant), shifts by -I_g, bounds the
    singular factor by -sup_integral, and adds w.  A positive value is
    exactly the hypothesis under which cl > g is certified.
    """
    if g < 1:
        raise DomainError(f"power must be >= 1: {g}")
    invariant = euler_power_invariant(ring, g)
    return profile.w - profile.sup_integral - invariant
