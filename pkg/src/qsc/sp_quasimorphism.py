"""Rotation numbers of symplectic matrix paths.

A path in Sp(2n, R) starting at the identity moves the Lagrangian
p-coordinate plane through the Lagrangian Grassmannian; the squared
determinant of a unitarized frame traces a circle-valued angle whose
continuous lift at time one is the path's rotation number.  Homogenizing
over concatenated powers gives a quasimorphism, surveyed empirically here.

This module is double-precision numerics; all exact arithmetic lives in the
algebraic modules.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import DomainError

DEFAULT_TOL = 1e-9
MAX_REFINE_DEPTH = 20
# Angle increments must stay under this for the lift to be unambiguous.
JUMP_LIMIT = np.pi / 2


def standard_symplectic_form(n: int) -> np.ndarray:
    """The 2n x 2n form matrix in (q_1..q_n, p_1..p_n) coordinates."""
    form = np.zeros((2 * n, 2 * n))
    form[:n, n:] = np.eye(n)
    form[n:, :n] = -np.eye(n)
    return form


def is_symplectic(matrix, tol: float = DEFAULT_TOL) -> bool:
    """Whether M^T J M = J holds entrywise within `tol`."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"matrix must be square, got shape {matrix.shape}")
    if matrix.shape[0] % 2:
        raise DomainError(f"matrix dimension must be even, got {matrix.shape[0]}")
    n = matrix.shape[0] // 2
    form = standard_symplectic_form(n)
    return bool(np.max(np.abs(matrix.T @ form @ matrix - form)) <= tol)


class LagrangianFrame:
    """A 2n x n full-rank matrix whose columns span a Lagrangian plane."""

    __slots__ = ("basis", "n")

    def __init__(self, basis, tol: float = DEFAULT_TOL):
        basis = np.asarray(basis, dtype=float)
        if basis.ndim != 2 or basis.shape[0] != 2 * basis.shape[1]:
            raise DomainError(f"frame must be 2n x n, got shape {basis.shape}")
        self.n = basis.shape[1]
        self.basis = basis
        singular_values = np.linalg.svd(basis, compute_uv=False)
        if singular_values[-1] <= tol * max(1.0, singular_values[0]):
            raise DomainError("frame is rank deficient")
        form = standard_symplectic_form(self.n)
        defect = np.max(np.abs(basis.T @ form @ basis))
        if defect > tol * max(1.0, float(np.max(np.abs(basis))) ** 2):
            raise DomainError(f"frame is not Lagrangian (defect {defect:.3e})")

    @classmethod
    def p_plane(cls, n: int) -> "LagrangianFrame":
        """The base point: the p-coordinate plane."""
        return cls(np.vstack([np.zeros((n, n)), np.eye(n)]))


def det_squared(frame: LagrangianFrame) -> complex:
    """The squared determinant of the unitarized frame, on the unit circle.

    The q- and p-blocks combine into a complex n x n matrix whose polar
    unitary factor U is well defined up to a real basis change; det(U)**2
    kills the leftover sign.  The phase is normalized so the p-plane maps
    to 1.
    """
    n = frame.n
    z = frame.basis[:n] + 1j * frame.basis[n:]
    unitary, _ = scipy.linalg.polar(z)
    value = complex(np.linalg.det(unitary)) ** 2
    # Basepoint frame has Z = i*I, so det(U)^2 = (-1)^n there.
    return value * (-1) ** n


def _unit_det_squared(samples: np.ndarray) -> np.ndarray:
    """det_squared of each sample applied to the p-plane, vectorized.

    The polar unitary factor of Z has determinant det(Z)/|det(Z)| (the
    positive factor has positive determinant), so the value reduces to a
    normalized determinant.
    """
    n = samples.shape[1] // 2
    z = samples[:, :n, n:] + 1j * samples[:, n:, n:]
    dets = np.linalg.det(z)
    magnitudes = np.abs(dets)
    if np.any(magnitudes == 0):
        raise DomainError("degenerate sample: image frame is rank deficient")
    return (dets / magnitudes) ** 2 * (-1) ** n


class SymplecticPath:
    """A sampled path in Sp(2n, R) starting at the identity."""

    __slots__ = ("samples", "n")

    def __init__(self, samples, tol: float = DEFAULT_TOL, validate: bool = True):
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 3 or samples.shape[1] != samples.shape[2]:
            raise DomainError(f"need a stack of square matrices, got {samples.shape}")
        if samples.shape[1] % 2:
            raise DomainError("matrix dimension must be even")
        if samples.shape[0] < 1:
            raise DomainError("path needs at least one sample")
        self.n = samples.shape[1] // 2
        self.samples = samples
        if validate:
            dim = samples.shape[1]
            if np.max(np.abs(samples[0] - np.eye(dim))) > tol:
                raise DomainError("path must start at the identity")
            form = standard_symplectic_form(self.n)
            residual = np.einsum("sji,jk,skl->sil", samples, form, samples) - form
            worst = float(np.max(np.abs(residual)))
            if worst > tol:
                raise DomainError(f"non-symplectic sample (defect {worst:.3e})")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def endpoint(self) -> np.ndarray:
        return self.samples[-1]

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int, num_samples: int = 2) -> "SymplecticPath":
        return cls(
            np.broadcast_to(np.eye(2 * n), (num_samples, 2 * n, 2 * n)).copy(),
            validate=False,
        )

    @classmethod
    def rotation(cls, theta: float, num_samples: int = 65) -> "SymplecticPath":
        """The planar rotation path t -> R(t * theta) in Sp(2)."""
        t = np.linspace(0.0, 1.0, num_samples)
        cos, sin = np.cos(t * theta), np.sin(t * theta)
        samples = np.stack(
            [np.stack([cos, -sin], axis=1), np.stack([sin, cos], axis=1)], axis=1
        )
        return cls(samples, validate=False)

    @classmethod
    def shear(cls, c: float, num_samples: int = 65) -> "SymplecticPath":
        """The shear path t -> [[1, t*c], [0, 1]] in Sp(2)."""
        samples = np.broadcast_to(np.eye(2), (num_samples, 2, 2)).copy()
        samples[:, 0, 1] = np.linspace(0.0, 1.0, num_samples) * c
        return cls(samples, validate=False)

    @classmethod
    def from_generator(cls, generator, num_samples: int = 65) -> "SymplecticPath":
        """The one-parameter path t -> exp(t * generator).

        The generator must lie in the symplectic Lie algebra (J times a
        symmetric matrix).
        """
        generator = np.asarray(generator, dtype=float)
        if generator.ndim != 2 or generator.shape[0] != generator.shape[1]:
            raise DomainError("generator must be square")
        if generator.shape[0] % 2:
            raise DomainError("generator dimension must be even")
        n = generator.shape[0] // 2
        form = standard_symplectic_form(n)
        product = form @ generator
        if np.max(np.abs(product - product.T)) > 1e-8 * max(
            1.0, float(np.max(np.abs(generator)))
        ):
            raise DomainError("generator is not in the symplectic Lie algebra")
        step = scipy.linalg.expm(generator / (num_samples - 1))
        samples = [np.eye(2 * n)]
        for _ in range(num_samples - 1):
            samples.append(samples[-1] @ step)
        return cls(np.stack(samples), validate=False)

    @classmethod
    def random(
        cls,
        n: int,
        rng: np.random.Generator,
        num_samples: int = 65,
        magnitude: float = 1.5,
    ) -> "SymplecticPath":
        """A seeded random path exp(t * J S) with bounded log-normal entries."""
        size = (2 * n, 2 * n)
        entries = np.minimum(rng.lognormal(mean=0.0, sigma=0.5, size=size), 2.0)
        entries *= rng.choice([-1.0, 1.0], size=size)
        symmetric = (entries + entries.T) / 2.0
        generator = standard_symplectic_form(n) @ symmetric
        norm = np.linalg.norm(generator, 2)
        if norm > magnitude:
            generator *= magnitude / norm
        return cls.from_generator(generator, num_samples)

    # -- combinations ------------------------------------------------------

    def pointwise_product(self, other: "SymplecticPath") -> "SymplecticPath":
        """The path t -> a(t) b(t); represents the product of the two lifts."""
        if self.n != other.n:
            raise DomainError(
                f"dimension mismatch: Sp({2 * self.n}) vs Sp({2 * other.n})"
            )
        if len(self) != len(other):
            raise DomainError(
                f"sample count mismatch: {len(self)} vs {len(other)}"
            )
        return SymplecticPath(self.samples @ other.samples, validate=False)

    def pointwise_inverse(self) -> "SymplecticPath":
        return SymplecticPath(np.linalg.inv(self.samples), validate=False)

    def conjugated(self, g) -> "SymplecticPath":
        """The path t -> g a(t) g^{-1}."""
        g = np.asarray(g, dtype=float)
        g_inv = np.linalg.inv(g)
        return SymplecticPath(g[None] @ self.samples @ g_inv[None], validate=False)

    def concatenated_power(self, k: int) -> "SymplecticPath":
        """The path of the k-th power: this path, then shifted copies of it."""
        if k < 1:
            raise DomainError(f"power must be >= 1: {k}")
        end = self.samples[-1]
        blocks = [self.samples]
        prefix = end
        for _ in range(k - 1):
            blocks.append(prefix[None] @ self.samples[1:])
            prefix = prefix @ end
        return SymplecticPath(np.concatenate(blocks), validate=False)


def _refined_increments(
    samples: np.ndarray, markers: Optional[np.ndarray] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Angle increments along the path, subdividing until each is < pi/2.

    Returns (increments, markers) where markers tracks caller-supplied
    sample flags through the subdivision.
    """
    if markers is None:
        markers = np.zeros(len(samples), dtype=bool)
    for _ in range(MAX_REFINE_DEPTH + 1):
        values = _unit_det_squared(samples)
        increments = np.angle(values[1:] * np.conj(values[:-1]))
        bad = np.flatnonzero(np.abs(increments) >= JUMP_LIMIT)
        if bad.size == 0:
            return increments, markers
        pieces, flags = [], []
        previous = 0
        for i in bad:
            pieces.append(samples[previous : i + 1])
            flags.append(markers[previous : i + 1])
            pieces.append(_midpoint(samples[i], samples[i + 1])[None])
            flags.append(np.zeros(1, dtype=bool))
            previous = i + 1
        pieces.append(samples[previous:])
        flags.append(markers[previous:])
        samples = np.concatenate(pieces)
        markers = np.concatenate(flags)
    raise DomainError("angle refinement exceeded depth limit")


def _midpoint(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Geodesic midpoint through linear interpolation of polar factors."""
    u1, p1 = scipy.linalg.polar(first)
    u2, p2 = scipy.linalg.polar(second)
    with warnings.catch_warnings():
        # logm flags sub-1e-12 residuals on near-degenerate positive factors.
        warnings.simplefilter("ignore", RuntimeWarning)
        rotator = scipy.linalg.logm(u1.T @ u2)
        log1 = np.real(scipy.linalg.logm(p1))
        log2 = np.real(scipy.linalg.logm(p2))
    u_mid = u1 @ np.real(scipy.linalg.expm(rotator / 2.0))
    return u_mid @ scipy.linalg.expm((log1 + log2) / 2.0)


def tau_det(path: SymplecticPath) -> float:
    """The lifted det-squared angle of the moving p-plane at time one.

    The lift starts at zero (the normalization makes the identity sample's
    value exactly 1) and is unwound with nearest-angle increments after
    refining the sampling until every jump is below pi/2.
    """
    increments, _ = _refined_increments(path.samples)
    return float(np.sum(increments))


def tau_estimates(path: SymplecticPath, k_max: int) -> list[float]:
    """Homogenization diagnostics: tau_det(path^k) / k for k = 1..k_max."""
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1: {k_max}")
    big = path.concatenated_power(k_max)
    copy_length = len(path) - 1
    markers = np.zeros(len(big), dtype=bool)
    if copy_length == 0:
        # Single-sample path: the constant identity.
        return [0.0] * k_max
    markers[copy_length::copy_length] = True
    increments, refined_markers = _refined_increments(big.samples, markers)
    lift = np.concatenate([[0.0], np.cumsum(increments)])
    boundary_values = lift[refined_markers]
    return [float(value) / (k + 1) for k, value in enumerate(boundary_values)]


def tau(path: SymplecticPath, k_max: int = 32) -> float:
    """The homogenized rotation number, truncated at the k_max-th power."""
    return tau_estimates(path, k_max)[-1]


@dataclass(frozen=True)
class DefectSurvey:
    """Empirical additivity defects |tau(ab) - tau(a) - tau(b)| over pairs."""

    defects: tuple[float, ...]
    max_defect: float
    mean_defect: float
    histogram_counts: tuple[int, ...]
    histogram_edges: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "count": len(self.defects),
            "max_defect": self.max_defect,
            "mean_defect": self.mean_defect,
            "histogram_counts": list(self.histogram_counts),
            "histogram_edges": list(self.histogram_edges),
        }


def defect_survey(
    pairs: Sequence[tuple[SymplecticPath, SymplecticPath]],
    k_max: int = 8,
    bins: int = 10,
    max_workers: Optional[int] = None,
) -> DefectSurvey:
    """Measure the additivity defect of tau over the given path pairs.

    Pair results are merged in input order, so the outcome is deterministic
    regardless of `max_workers`.
    """
    pairs = list(pairs)
    if not pairs:
        raise DomainError("survey needs at least one pair")

    def defect(pair: tuple[SymplecticPath, SymplecticPath]) -> float:
        a, b = pair
        product = a.pointwise_product(b)
        return abs(tau(product, k_max) - tau(a, k_max) - tau(b, k_max))

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            defects = list(pool.map(defect, pairs))
    else:
        defects = [defect(pair) for pair in pairs]

    values = np.asarray(defects)
    top = float(values.max())
    counts, edges = np.histogram(values, bins=bins, range=(0.0, top if top > 0 else 1.0))
    return DefectSurvey(
        defects=tuple(float(v) for v in values),
        max_defect=top,
        mean_defect=float(values.mean()),
        histogram_counts=tuple(int(c) for c in counts),
        histogram_edges=tuple(float(e) for e in edges),
    )
