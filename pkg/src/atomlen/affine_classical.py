"""Affine type C entropy through the rank-(2n+1) embedding, its constrained
Euclidean scans, the lattice table for the classical affine families, and the
large-rank universality thresholds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine_permutations import AffinePermutation, make_affine
from .errors import BadLength, DomainViolation, MirrorViolation
from .quadratic_forms import (LATTICE_TAGS, UniversalityReport, domain_DeltaC,
                              domain_M, form_euclidean, form_lattice_norm,
                              member, universality_scan)


@dataclass(frozen=True)
class TypeCAffineElement:
    """Element of the affine hyperoctahedral group, reduced window form.

    The reduced window (w(1), ..., w(n)) extends to a full window of rank
    2n+1 through w(2n+1) = 2n+1 and the mirror rule
    w(2n+1-i) = 2n+1 - w(i).
    """

    n: int
    window: tuple[int, ...]

    def __post_init__(self):
        m = 2 * self.n + 1
        if len(self.window) != self.n:
            raise BadLength(f"reduced window needs {self.n} entries")
        classes = set()
        for v in self.window:
            r = v % m
            if r == 0:
                raise MirrorViolation(
                    f"entry {v} is 0 mod {m}, clashing with the fixed point")
            c = min(r, m - r)
            if c in classes:
                raise MirrorViolation(
                    f"entries of {self.window} clash up to sign mod {m}")
            classes.add(c)


def lift_to_A(e: TypeCAffineElement) -> AffinePermutation:
    """Full rank-(2n+1) affine permutation of a reduced window."""
    n = e.n
    m = 2 * n + 1
    full = list(e.window)
    for j in range(n + 1, 2 * n + 1):
        full.append(m - e.window[m - j - 1])
    full.append(m)
    return make_affine(m, tuple(full))


def member_DeltaC(n: int, x) -> bool:
    """The three congruence conditions mod 2n+1 on displacement vectors."""
    return member(domain_DeltaC(n), tuple(x))


def from_displacement(n: int, x) -> TypeCAffineElement:
    """Element with reduced window x_i + i."""
    x = tuple(x)
    if not member_DeltaC(n, x):
        raise DomainViolation(f"{x} violates the displacement congruences")
    return TypeCAffineElement(n, tuple(v + i for i, v in enumerate(x, 1)))


def entropy_C(n: int, x) -> int:
    """Euclidean norm squared of the displacement vector; equals the entropy
    of the lifted rank-(2n+1) element."""
    x = tuple(x)
    if not member_DeltaC(n, x):
        raise DomainViolation(f"{x} violates the displacement congruences")
    return sum(v * v for v in x)


def scan_deltaC(n: int, max_k: int, radius: int,
                threads: int = 1) -> UniversalityReport:
    """Universality scan of the Euclidean form on the constrained set."""
    return universality_scan(form_euclidean(n), domain_DeltaC(n), max_k,
                             radius, threads=threads)


# ---------------------------------------------------------------------------
# Lattice table for the classical affine families
# ---------------------------------------------------------------------------

# tag -> (underlying finite series, norm denominator on ||x||_2^2, coxeter h,
#         half-integer-valued flag)
_TABLE = {
    "B1": ("B", 2, lambda n: 2 * n, False),
    "C1": ("C", 4, lambda n: 2 * n, False),
    "D1": ("D", 2, lambda n: 2 * n - 2, False),
    "A2odd": ("C", 2, lambda n: 2 * n - 1, False),
    "A2even": ("C", 2, lambda n: 2 * n + 1, True),
    "D2": ("B", 1, lambda n: n + 1, False),
}


@dataclass(frozen=True)
class AffineLatticeSpec:
    """One row of the lattice table: translation lattice, norm convention
    and Coxeter number of a classical affine family."""

    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in LATTICE_TAGS:
            raise DomainViolation(f"unknown affine type tag {self.tag!r}")
        if self.n < 1:
            raise BadLength(f"rank must be positive, got {self.n}")

    @property
    def finite_series(self) -> str:
        return _TABLE[self.tag][0]

    @property
    def coxeter_number(self) -> int:
        return _TABLE[self.tag][2](self.n)

    @property
    def half_grid(self) -> bool:
        return _TABLE[self.tag][3]


def lattice_member(spec: AffineLatticeSpec, x) -> bool:
    return member(domain_M(spec.tag, spec.n), tuple(x))


def half_norm(spec: AffineLatticeSpec, x) -> Fraction:
    """Value of the translation-part map under the row's norm convention."""
    x = tuple(x)
    if len(x) != spec.n:
        raise BadLength(f"need {spec.n} coordinates")
    return Fraction(sum(v * v for v in x), _TABLE[spec.tag][1])


def norm_universality_scan(spec: AffineLatticeSpec, max_k: int, radius: int,
                           threads: int = 1) -> UniversalityReport:
    """Witness every target in [0, max_k] (half-integer grid where the map
    is half-integer valued) on the row's lattice."""
    grid = "half" if spec.half_grid else "int"
    return universality_scan(form_lattice_norm(spec.tag, spec.n),
                             domain_M(spec.tag, spec.n), max_k, radius,
                             grid=grid, threads=threads)


# ---------------------------------------------------------------------------
# Large-rank thresholds
# ---------------------------------------------------------------------------

def rank4_slice_bound(tag: str, n: int) -> Fraction:
    """Maximum of the finite atomic length on the rank-(n-4) slice fixed by
    the translation part; halved for the family whose atomic length is
    half-integer valued."""
    series = _TABLE[tag][0]
    m = n - 4
    if series in ("B", "C"):
        b = Fraction(m * (m + 1) * (4 * m - 1), 6)
    else:
        b = Fraction(m * (m - 1) * (2 * m - 1), 3)
    return b / 2 if tag == "A2even" else b


def intervals_overlap(tag: str, n: int) -> bool:
    """Whether consecutive translation-shifted value intervals meet: the
    slice bound must reach the value-grid spacing h^2 (h^2 / 2 on the
    half-integer grid)."""
    spec = AffineLatticeSpec(tag, n)
    h = spec.coxeter_number
    spacing = Fraction(h * h, 2) if spec.half_grid else Fraction(h * h)
    return rank4_slice_bound(tag, n) >= spacing


def large_rank_threshold(tag: str) -> int:
    """Smallest rank from which the interval-overlap condition holds (it is
    monotone from there on; see the tests)."""
    n = 5
    while not intervals_overlap(tag, n):
        n += 1
        if n > 10 ** 4:
            raise DomainViolation(f"no threshold found for {tag}")
    return n


def threshold_table() -> dict[str, int]:
    return {tag: large_rank_threshold(tag) for tag in LATTICE_TAGS}
