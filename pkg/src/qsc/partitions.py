"""Partition combinatorics.

Box enumeration, Poincare complements, Littlewood-Richardson coefficients
and border-strip (rim-hook) removal.  Everything here is exact integer
arithmetic; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DomainError


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    The empty tuple is the empty partition.  Trailing zeros are stripped on
    construction, so equal partitions are identical tuples and can be used
    as dictionary keys directly.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def contains(self, other: "Partition") -> bool:
        """Containment of Young diagrams."""
        if len(other) > len(self):
            return False
        return all(self[i] >= other[i] for i in range(len(other)))

    def fits_in_box(self, rows: int, cols: int) -> bool:
        return len(self) <= rows and (not self or self[0] <= cols)

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """Parse the comma-separated form, e.g. "3,1"; "" and "0" are empty."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        return cls(int(piece) for piece in text.split(","))

    def to_text(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


@dataclass(frozen=True)
class RimHookRemoval:
    """One way of peeling a border strip off a partition.

    `height` is the number of rows the removed strip occupies.
    """

    result: Partition
    height: int


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    """All partitions with at most `rows` parts, each part at most `cols`.

    Ordered by size, then lexicographically; the count is C(rows+cols, rows).
    """
    if rows < 0 or cols < 0:
        raise DomainError(f"box dimensions must be nonnegative: {rows}x{cols}")
    found: list[Partition] = []

    def grow(prefix: tuple[int, ...]) -> None:
        found.append(Partition(prefix))
        if len(prefix) == rows:
            return
        cap = prefix[-1] if prefix else cols
        for part in range(1, cap + 1):
            grow(prefix + (part,))

    grow(())
    found.sort(key=lambda p: (p.size, tuple(p)))
    return found


def complement(lam: Partition, rows: int, cols: int) -> Partition:
    """The 180-degree complement of `lam` inside the rows x cols box.

    This indexes the Poincare-dual basis class; the map is an involution.
    """
    lam = Partition(lam)
    if not lam.fits_in_box(rows, cols):
        raise DomainError(f"{lam!r} does not fit in a {rows}x{cols} box")
    padded = list(lam) + [0] * (rows - len(lam))
    return Partition(cols - padded[rows - 1 - i] for i in range(rows))


# Littlewood-Richardson coefficients.  Computed by depth-first enumeration of
# column-strict skew fillings whose reverse reading word is a lattice word,
# memoized on the (lam, mu, nu) triple.  The memo key deliberately keeps the
# operand order, so commutativity checks exercise two distinct enumerations.
_LR_MEMO: dict[tuple, int] = {}


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """The multiplicity of s_nu in s_lam * s_mu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if nu.size != lam.size + mu.size:
        return 0
    if not nu.contains(lam) or not nu.contains(mu):
        return 0
    if not mu:
        return 1  # nu == lam at this point by the size check
    key = (tuple(lam), tuple(mu), tuple(nu))
    cached = _LR_MEMO.get(key)
    if cached is not None:
        return cached
    count = _count_lr_fillings(lam, mu, nu)
    _LR_MEMO[key] = count
    return count


def _count_lr_fillings(lam: Partition, mu: Partition, nu: Partition) -> int:
    # Cells of nu/lam in reverse reading order (each row right to left, rows
    # top to bottom).  In that order a cell's right neighbour and the cell
    # directly above have both been filled already.
    lam_padded = list(lam) + [0] * (len(nu) - len(lam))
    cells = []
    index_of = {}
    for row in range(len(nu)):
        for col in range(nu[row] - 1, lam_padded[row] - 1, -1):
            index_of[(row, col)] = len(cells)
            right = index_of.get((row, col + 1), -1)
            above = index_of.get((row - 1, col), -1)
            cells.append((right, above))
    num_values = len(mu)
    counts = [0] * (num_values + 1)
    values = [0] * len(cells)

    def fill(i: int) -> int:
        if i == len(cells):
            return 1
        right, above = cells[i]
        hi = values[right] if right >= 0 else num_values
        lo = values[above] + 1 if above >= 0 else 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue
            counts[v] += 1
            values[i] = v
            total += fill(i + 1)
            counts[v] -= 1
        return total

    return fill(0)


def remove_rim_hook(nu: Partition, size: int) -> list[RimHookRemoval]:
    """All ways to remove a connected border strip of `size` cells from `nu`.

    Computed through first-column hook residues (beta-numbers): a strip of
    the given size is removable exactly when some beta-number can be lowered
    by `size` without colliding, and the strip's height is the number of
    beta-numbers jumped over plus one.  Results are sorted by (height, core).
    """
    nu = Partition(nu)
    if size < 1:
        raise DomainError(f"rim hook size must be positive: {size}")
    m = len(nu)
    if m == 0:
        return []
    beta = [nu[i] + (m - 1 - i) for i in range(m)]
    beta_set = set(beta)
    removals = []
    for b in beta:
        nb = b - size
        if nb < 0 or nb in beta_set:
            continue
        new_beta = sorted((beta_set - {b}) | {nb}, reverse=True)
        core = Partition(new_beta[t] - (m - 1 - t) for t in range(m))
        height = sum(1 for x in beta_set if nb < x < b) + 1
        removals.append(RimHookRemoval(core, height))
    removals.sort(key=lambda rr: (rr.height, tuple(rr.result)))
    return removals


def reduce_mod_rim_hooks(
    nu: Partition, r: int, n: int
) -> Optional[tuple[Partition, int, int]]:
    """Reduce `nu` into the r x (n-r) box by removing n-rim hooks.

    Returns (core, number of removals, sign) with sign the product of
    (-1)**(r - height) over the removals, or None when no removal sequence
    reaches the box (the corresponding product term vanishes).  A partition
    inside the box has no hook of length n, so the endpoint is the n-core
    and the outcome does not depend on the removal order.
    """
    nu = Partition(nu)
    if not 1 <= r <= n - 1:
        raise DomainError(f"need 1 <= r <= n-1, got r={r}, n={n}")
    if len(nu) > r:
        raise DomainError(f"{nu!r} has more than r={r} rows")
    cols = n - r
    core, removed, sign = nu, 0, 1
    while not core.fits_in_box(r, cols):
        removals = remove_rim_hook(core, n)
        if not removals:
            return None
        step = removals[0]
        sign *= (-1) ** ((r - step.height) % 2)
        core = step.result
        removed += 1
    return core, removed, sign
