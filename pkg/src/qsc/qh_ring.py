"""The quantum cohomology ring of a complex Grassmannian.

Classes are finite sums of Schubert generators sigma_lambda times integer
powers of the Novikov variable q, with exact rational coefficients.  The
projective space CP^m is handled as Gr(1, m+1).  The quantum product is
computed by expanding the classical product with Littlewood-Richardson
coefficients and reducing each overflow term into the box with n-rim hooks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import DomainError
from .partitions import (
    Partition,
    complement,
    lr_coefficient,
    partitions_in_box,
    reduce_mod_rim_hooks,
)

Rational = Union[int, Fraction, str]


def _fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise DomainError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class RingParams:
    """Fixes the ring: Gr(r, n) with symplectic area `area` on the line class.

    The grading constant is deg q = 2n.  CP^m is RingParams(1, m+1, area).
    """

    r: int
    n: int
    area: Fraction = Fraction(1)

    def __post_init__(self):
        if not 1 <= self.r <= self.n - 1:
            raise DomainError(f"need 1 <= r <= n-1, got r={self.r}, n={self.n}")
        object.__setattr__(self, "area", _fraction(self.area))
        if self.area <= 0:
            raise DomainError(f"area must be positive: {self.area}")

    @classmethod
    def cpn(cls, m: int, area: Rational = 1) -> "RingParams":
        """The projective space CP^m."""
        if m < 1:
            raise DomainError(f"projective space dimension must be >= 1: {m}")
        return cls(1, m + 1, _fraction(area))

    @property
    def cols(self) -> int:
        return self.n - self.r

    @property
    def deg_q(self) -> int:
        return 2 * self.n

    @property
    def box_partition(self) -> Partition:
        """The top Schubert index; sigma of it is the point class."""
        return Partition((self.cols,) * self.r)

    def to_json_dict(self) -> dict:
        return {"r": self.r, "n": self.n, "area": str(self.area)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "RingParams":
        return cls(int(data["r"]), int(data["n"]), Fraction(str(data["area"])))


@dataclass(frozen=True)
class SplitForm:
    """A class written as scalar * sigma_partition * q**q_exp.

    Only the single-generator case is guaranteed by `split_form`; a class
    with several generators at one q-power is reported with partition None
    and the generator list in `components`.
    """

    scalar: Fraction
    partition: Optional[Partition]
    q_exp: int
    components: tuple = ()


class QHClass:
    """An element of the quantum cohomology ring.

    Stored as a map (partition, q exponent) -> nonzero rational coefficient,
    with every partition inside the r x (n-r) box.  Instances are immutable
    in use; all arithmetic returns new objects.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: RingParams, terms: Mapping = ()):
        self.ring = ring
        clean: dict[tuple[Partition, int], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (part, q_exp), coeff in items:
            part = Partition(part)
            if not part.fits_in_box(ring.r, ring.cols):
                raise DomainError(
                    f"{part!r} does not fit in the {ring.r}x{ring.cols} box"
                )
            coeff = _fraction(coeff)
            if coeff == 0:
                continue
            key = (part, int(q_exp))
            clean[key] = clean.get(key, Fraction(0)) + coeff
            if clean[key] == 0:
                del clean[key]
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingParams) -> "QHClass":
        return cls(ring)

    @classmethod
    def unit(cls, ring: RingParams) -> "QHClass":
        return cls(ring, {(Partition(), 0): Fraction(1)})

    @classmethod
    def schubert(
        cls,
        ring: RingParams,
        part,
        q_exp: int = 0,
        coeff: Rational = 1,
    ) -> "QHClass":
        return cls(ring, {(Partition(part), q_exp): _fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def terms(self) -> list[tuple[Partition, int, Fraction]]:
        """Sorted list of (partition, q exponent, coefficient)."""
        return [
            (part, q_exp, coeff)
            for (part, q_exp), coeff in sorted(
                self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0])
            )
        ]

    def coefficient(self, part, q_exp: int) -> Fraction:
        return self._terms.get((Partition(part), q_exp), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> Optional[int]:
        """The common degree of all terms, or None if mixed or zero."""
        degrees = {2 * p.size + self.ring.deg_q * d for (p, d) in self._terms}
        if len(degrees) != 1:
            return None
        return degrees.pop()

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other: "QHClass") -> None:
        if self.ring != other.ring:
            raise DomainError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "QHClass") -> "QHClass":
        self._check_ring(other)
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return QHClass(self.ring, merged)

    def __sub__(self, other: "QHClass") -> "QHClass":
        return self + (-other)

    def __neg__(self) -> "QHClass":
        return QHClass(self.ring, {k: -c for k, c in self._terms.items()})

    def scaled(self, factor: Rational) -> "QHClass":
        factor = _fraction(factor)
        return QHClass(self.ring, {k: factor * c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, QHClass):
            return quantum_product(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __pow__(self, exponent: int) -> "QHClass":
        return power(self, exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QHClass):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    __hash__ = None

    # -- text and JSON forms ----------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for part, q_exp, coeff in self.terms():
            bits = []
            if coeff != 1 or (not part and q_exp == 0):
                bits.append(str(coeff))
            if part:
                bits.append(f"s[{part.to_text()}]")
            if q_exp == 1:
                bits.append("q")
            elif q_exp != 0:
                bits.append(f"q^{q_exp}")
            pieces.append("*".join(bits))
        return " + ".join(pieces)

    @classmethod
    def from_text(cls, ring: RingParams, text: str) -> "QHClass":
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(ring)
        terms = {}
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if not chunk:
                raise DomainError(f"empty term in class expression: {text!r}")
            coeff, part, q_exp = Fraction(1), Partition(), 0
            seen = set()
            for bit in chunk.split("*"):
                bit = bit.strip()
                if bit.startswith("s[") and bit.endswith("]"):
                    kind = "s"
                    part = Partition.from_text(bit[2:-1])
                elif bit == "q" or bit.startswith("q^"):
                    kind = "q"
                    q_exp = 1 if bit == "q" else int(bit[2:])
                else:
                    kind = "coeff"
                    coeff = Fraction(bit)
                if kind in seen:
                    raise DomainError(f"repeated {kind} piece in term: {chunk!r}")
                seen.add(kind)
            key = (part, q_exp)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return cls(ring, terms)

    def to_json_dict(self) -> dict:
        return {
            "ring": self.ring.to_json_dict(),
            "terms": [
                {"partition": list(part), "q": q_exp, "coef": str(coeff)}
                for part, q_exp, coeff in self.terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "QHClass":
        ring = RingParams.from_json_dict(data["ring"])
        terms = {}
        for item in data["terms"]:
            key = (Partition(item["partition"]), int(item["q"]))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(str(item["coef"]))
        return cls(ring, terms)

    def __repr__(self) -> str:
        ring = self.ring
        return f"QHClass(Gr({ring.r},{ring.n}), {self.to_text()})"


# -- the product -----------------------------------------------------------

# Expansion of sigma_lam * sigma_mu keyed by (r, n, lam, mu); values are
# tuples of ((core partition, q exponent), integer coefficient).
_PRODUCT_MEMO: dict[tuple, tuple] = {}


def _bounded_partitions(total: int, max_rows: int, max_part: int):
    """Partitions of `total` with at most max_rows parts, parts <= max_part."""

    def grow(remaining: int, cap: int, rows_left: int, prefix: tuple):
        if remaining == 0:
            yield prefix
            return
        if rows_left == 0:
            return
        top = min(cap, remaining)
        # Smallest feasible next part still has to leave room below.
        for part in range(top, 0, -1):
            if part * rows_left < remaining:
                break
            yield from grow(remaining - part, part, rows_left - 1, prefix + (part,))

    yield from grow(total, max_part, max_rows, ())


def _schubert_product_terms(r: int, n: int, lam: Partition, mu: Partition) -> tuple:
    key = (r, n, tuple(lam), tuple(mu))
    cached = _PRODUCT_MEMO.get(key)
    if cached is not None:
        return cached
    total = lam.size + mu.size
    acc: dict[tuple[Partition, int], int] = {}
    max_part = (lam[0] if lam else 0) + (mu[0] if mu else 0)
    for raw in _bounded_partitions(total, r, max_part):
        nu = Partition(raw)
        if not nu.contains(lam) or not nu.contains(mu):
            continue
        c = lr_coefficient(lam, mu, nu)
        if c == 0:
            continue
        reduced = reduce_mod_rim_hooks(nu, r, n)
        if reduced is None:
            continue
        core, removed, sign = reduced
        key2 = (core, removed)
        acc[key2] = acc.get(key2, 0) + c * sign
    result = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
    _PRODUCT_MEMO[key] = result
    return result


def quantum_product(a: QHClass, b: QHClass) -> QHClass:
    """The quantum product a * b."""
    a._check_ring(b)
    ring = a.ring
    out: dict[tuple[Partition, int], Fraction] = {}
    for (lam, da), ca in a._terms.items():
        for (mu, db), cb in b._terms.items():
            weight = ca * cb
            for (core, dq), c in _schubert_product_terms(ring.r, ring.n, lam, mu):
                key = (core, da + db + dq)
                out[key] = out.get(key, Fraction(0)) + weight * c
    return QHClass(ring, out)


def power(a: QHClass, g: int) -> QHClass:
    """The g-fold quantum power, by repeated squaring."""
    if g < 0:
        raise DomainError(f"exponent must be nonnegative: {g}")
    result = QHClass.unit(a.ring)
    base = a
    while g:
        if g & 1:
            result = quantum_product(result, base)
        base_needed = g >> 1
        if base_needed:
            base = quantum_product(base, base)
        g = base_needed
    return result


def schubert_basis(ring: RingParams) -> list[QHClass]:
    """The Schubert basis classes, in graded order."""
    return [
        QHClass.schubert(ring, lam) for lam in partitions_in_box(ring.r, ring.cols)
    ]


def poincare_pairing(a: QHClass, b: QHClass) -> dict[int, Fraction]:
    """The coefficient of the point class in a * b, by q power.

    Returns {q exponent: coefficient} with zero entries omitted; an empty
    dict is the zero pairing.  For dual Schubert classes the result is {0: 1}.
    """
    a._check_ring(b)
    box = a.ring.box_partition
    product = quantum_product(a, b)
    return {
        q_exp: coeff for (part, q_exp), coeff in product._terms.items() if part == box
    }


def euler_pairing_sum(ring: RingParams) -> QHClass:
    """The full quantum sum of sigma_lam * sigma_(complement lam) over the box.

    All basis classes have even degree, so every summand enters with sign +1.
    For r >= 2 this sum generally carries positive q-power terms on top of
    the singular part (for Gr(2,4) it is 6*s[2,2] + 2*q).
    """
    total = QHClass.zero(ring)
    for lam in partitions_in_box(ring.r, ring.cols):
        dual = complement(lam, ring.r, ring.cols)
        total = total + quantum_product(
            QHClass.schubert(ring, lam), QHClass.schubert(ring, dual)
        )
    return total


def euler_class(ring: RingParams) -> QHClass:
    """The singular top-degree component of the dual-basis pairing sum.

    Each product sigma_lam * sigma_(complement lam) contributes exactly one
    point class at q^0, so the result is the Euler characteristic C(n, r)
    times the point class.  Positive q-powers of the pairing sum are not part
    of this class; see `euler_pairing_sum` for the full sum.
    """
    full = euler_pairing_sum(ring)
    box = ring.box_partition
    top = full.coefficient(box, 0)
    return QHClass(ring, {(box, 0): top})


def split_form(a: QHClass) -> Optional[SplitForm]:
    """Write `a` as scalar * sigma_partition * q**d if possible.

    Returns None for the zero class or when terms sit at several q powers.
    A multi-generator class at a single q power is returned with
    partition None and the generators listed in `components`.
    """
    if a.is_zero:
        return None
    q_exps = {q_exp for (_, q_exp) in a._terms}
    if len(q_exps) != 1:
        return None
    q_exp = q_exps.pop()
    if len(a._terms) == 1:
        ((part, _), coeff), = a._terms.items()
        return SplitForm(scalar=coeff, partition=part, q_exp=q_exp)
    components = tuple(
        sorted(((part, coeff) for (part, _), coeff in a._terms.items()))
    )
    return SplitForm(
        scalar=Fraction(1), partition=None, q_exp=q_exp, components=components
    )


def euler_power_invariant(ring: RingParams, g: int) -> Fraction:
    """The area of the q-monomial in the splitting of the g-th Euler power.

    Computes E**g, checks that it splits at a single q exponent d, and
    returns d * area.  A failure to split would break every certificate
    built on top of it, so it is surfaced as an assertion failure.
    """
    if g < 1:
        raise DomainError(f"power must be >= 1: {g}")
    euler = euler_class(ring)
    powered = power(euler, g)
    form = split_form(powered)
    if form is None:
        raise AssertionError(
            f"Euler power E^{g} on Gr({ring.r},{ring.n}) does not split: "
            f"{powered.to_text()}"
        )
    return form.q_exp * ring.area


def asymptotic_invariant(ring: RingParams) -> Fraction:
    """The limit of euler_power_invariant(ring, g) / g: r(n-r)/n * area."""
    return Fraction(ring.r * (ring.n - ring.r), ring.n) * ring.area


@dataclass(frozen=True)
class PostnikovReport:
    """Outcome of checking the closed forms for powers of the point class.

    Case I applies when g*r mod n <= r, giving b rows of width n-r and
    q**(a*(n-r)) with a = floor(g*r/n); case II applies when g*(n-r) mod n
    <= n-r, giving r rows of width d and q**(c*r) with c = floor(g*(n-r)/n).
    """

    ring: RingParams
    g: int
    computed: QHClass
    case_i_applies: bool
    case_i_class: Optional[QHClass]
    case_i_match: Optional[bool]
    case_ii_applies: bool
    case_ii_class: Optional[QHClass]
    case_ii_match: Optional[bool]
    cases_agree: Optional[bool]

    @property
    def matches(self) -> bool:
        checks = [m for m in (self.case_i_match, self.case_ii_match) if m is not None]
        return bool(checks) and all(checks)

    def to_json_dict(self) -> dict:
        return {
            "ring": self.ring.to_json_dict(),
            "g": self.g,
            "computed": self.computed.to_json_dict()["terms"],
            "case_i": {
                "applies": self.case_i_applies,
                "closed_form": None
                if self.case_i_class is None
                else self.case_i_class.to_json_dict()["terms"],
                "match": self.case_i_match,
            },
            "case_ii": {
                "applies": self.case_ii_applies,
                "closed_form": None
                if self.case_ii_class is None
                else self.case_ii_class.to_json_dict()["terms"],
                "match": self.case_ii_match,
            },
            "cases_agree": self.cases_agree,
            "match": self.matches,
        }


def verify_postnikov(ring: RingParams, g: int) -> PostnikovReport:
    """Compare the g-th power of the point class against its closed forms."""
    if g < 1:
        raise DomainError(f"power must be >= 1: {g}")
    r, n = ring.r, ring.n
    m_class = QHClass.schubert(ring, ring.box_partition)
    computed = power(m_class, g)

    a, b = divmod(g * r, n)
    case_i_applies = b <= r
    case_i_class = case_i_match = None
    if case_i_applies:
        case_i_class = QHClass.schubert(ring, ((n - r),) * b, q_exp=a * (n - r))
        case_i_match = computed == case_i_class

    c, d = divmod(g * (n - r), n)
    case_ii_applies = d <= n - r
    case_ii_class = case_ii_match = None
    if case_ii_applies:
        case_ii_class = QHClass.schubert(ring, (d,) * r, q_exp=c * r)
        case_ii_match = computed == case_ii_class

    cases_agree = None
    if case_i_applies and case_ii_applies:
        cases_agree = case_i_class == case_ii_class

    return PostnikovReport(
        ring=ring,
        g=g,
        computed=computed,
        case_i_applies=case_i_applies,
        case_i_class=case_i_class,
        case_i_match=case_i_match,
        case_ii_applies=case_ii_applies,
        case_ii_class=case_ii_class,
        case_ii_match=case_ii_match,
        cases_agree=cases_agree,
    )
