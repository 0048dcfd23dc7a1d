"""Quadratic formulations of atomic lengths and exact representation search.

Everything here is exact integer / rational arithmetic.  The search engine
solves

    A * sum(t_i^2) + sum(B_i * t_i) = K        (all data integers)

over integer vectors subject to an optional fixed coordinate sum, per
coordinate radius bounds, a coordinate stride, and congruence filters
(distinct residues, distinct +/- classes, or a fixed residue multiset).
Search order is fixed and documented, so the first witness found is
deterministic: coordinates are assigned left to right, values spiral outward
from the per-coordinate continuous minimizer (positive offset first); once two
coordinates remain under a sum constraint (or one coordinate without), the
quadratic is solved directly.  The whole search is repeated over an increasing
radius schedule 1, 2, 4, ..., R, so small witnesses are found quickly while
"not found" still certifies exhaustion of the full radius-R box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import budget
from .errors import BadLength, DomainViolation, InvariantViolation

S15 = frozenset({1, 2, 3, 5, 6, 7, 10, 14, 15})
S290 = frozenset({1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 19, 21, 22, 23, 26,
                  29, 30, 31, 34, 35, 37, 42, 58, 93, 110, 145, 203, 290})

# Moduli tried, in order, when explaining a missed scan target.
DEFAULT_OBSTRUCTION_MODULI = (3, 4, 8, 16, 32, 64, 128)


# ---------------------------------------------------------------------------
# The three equivalent forms and the maps between their domains
# ---------------------------------------------------------------------------

def eval_P(y, n: int) -> int:
    """Window polynomial: half sum of squares, minus position-weighted sum,
    plus the constant that vanishes on the identity window."""
    y = tuple(y)
    if len(y) != n:
        raise BadLength(f"expected {n} coordinates, got {len(y)}")
    num = 6 * sum(v * v for v in y) - 12 * sum(i * v for i, v in enumerate(y, 1))
    num += n * (n + 1) * (2 * n + 1)
    q, r = divmod(num, 12)
    if r:
        raise InvariantViolation(f"P({y}) is not an integer")
    return q


def eval_Q(x) -> Fraction:
    """Half the squared Euclidean norm, exact."""
    return Fraction(sum(v * v for v in x), 2)


def eval_q(x) -> int:
    """x_1^2 + ... + x_m^2 + sum over pairs x_i x_j; always an integer."""
    x = tuple(x)
    s = sum(x)
    num = sum(v * v for v in x) + s * s
    return num // 2  # sum(x^2) == sum(x) mod 2, so num is even


def map_C(y, n: int) -> tuple[int, ...]:
    """Shift a window vector to its zero-sum displacement vector."""
    y = tuple(y)
    if not member(domain_D(n), y):
        raise DomainViolation(f"{y} is not a window vector of rank {n}")
    return tuple(v - i for i, v in enumerate(y, 1))


def map_C_inv(x, n: int) -> tuple[int, ...]:
    x = tuple(x)
    if not member(domain_Delta(n), x):
        raise DomainViolation(f"{x} is not a valid displacement vector, rank {n}")
    return tuple(v + i for i, v in enumerate(x, 1))


def map_pr(x, n: int) -> tuple[int, ...]:
    """Drop the last coordinate (it is minus the sum of the others)."""
    x = tuple(x)
    if not member(domain_Delta(n), x):
        raise DomainViolation(f"{x} is not a valid displacement vector, rank {n}")
    return x[:-1]


def map_pr_inv(x, n: int) -> tuple[int, ...]:
    x = tuple(x)
    if not member(domain_X(n), x):
        raise DomainViolation(f"{x} fails the projected congruence conditions")
    return x + (-sum(x),)


# ---------------------------------------------------------------------------
# Constrained domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstrainedDomain:
    """A decidable subset of an integer lattice.

    kind is one of "D", "Delta", "X", "Q_full", "Z_full", "DeltaC", "Ds",
    "Os", "M"; n is the rank parameter; extra carries kind-specific data
    (for "Ds": (ell, charges); for "M": the affine type tag).
    """

    kind: str
    n: int
    extra: tuple = ()

    def dim(self) -> int:
        if self.kind == "X":
            return self.n - 1
        return self.n

    def label(self) -> str:
        if self.kind == "Z_full":
            return f"Z^{self.n}"
        if self.kind == "Ds":
            ell, charges = self.extra
            return f"Ds(n={self.n},l={ell},s={','.join(map(str, charges))})"
        if self.kind == "M":
            return f"M[{self.extra[0]}]({self.n})"
        return f"{self.kind}({self.n})"


def domain_D(n: int) -> ConstrainedDomain:
    return ConstrainedDomain("D", n)


def domain_Delta(n: int) -> ConstrainedDomain:
    return ConstrainedDomain("Delta", n)


def domain_X(n: int) -> ConstrainedDomain:
    return ConstrainedDomain("X", n)


def domain_Q_full(n: int) -> ConstrainedDomain:
    return ConstrainedDomain("Q_full", n)


def domain_Z_full(dim: int) -> ConstrainedDomain:
    return ConstrainedDomain("Z_full", dim)


def domain_DeltaC(n: int) -> ConstrainedDomain:
    return ConstrainedDomain("DeltaC", n)


def domain_Ds(n: int, ell: int, charges: tuple[int, ...]) -> ConstrainedDomain:
    return ConstrainedDomain("Ds", n, (ell, tuple(charges)))


def domain_Os(n: int) -> ConstrainedDomain:
    return ConstrainedDomain("Os", n)


def domain_M(tag: str, n: int) -> ConstrainedDomain:
    if tag not in LATTICE_TAGS:
        raise DomainViolation(f"unknown lattice tag {tag!r}")
    return ConstrainedDomain("M", n, (tag,))


def conjugate_charges(n: int, ell: int, charges) -> tuple[int, ...]:
    """Weakly increasing length-n conjugate of the charge tuple.

    The charges (sorted decreasingly) form a partition inside an
    (n-1) x ell box; its conjugate, padded with zeros to n parts and sorted
    increasingly, is the base point of the charge orbit.
    """
    kappa = sorted(charges, reverse=True)
    conj = [sum(1 for p in kappa if p >= j) for j in range(1, n + 1)]
    out = sorted(conj)
    if len(out) != n:
        raise BadLength("conjugate padding failed")
    return tuple(out)


def residue_counts(values, mod: int) -> tuple[int, ...]:
    counts = [0] * mod
    for v in values:
        counts[v % mod] += 1
    return tuple(counts)


def member(domain: ConstrainedDomain, v) -> bool:
    """Exact membership test for each domain kind."""
    v = tuple(v)
    n = domain.n
    if len(v) != domain.dim():
        return False
    kind = domain.kind
    if kind == "D":
        return (sum(v) == n * (n + 1) // 2
                and len({x % n for x in v}) == n)
    if kind == "Delta":
        return (sum(v) == 0
                and len({(x + i) % n for i, x in enumerate(v, 1)}) == n)
    if kind == "X":
        # Equivalent to the projected conditions: the lift by the forced last
        # coordinate lands in Delta.  (The literal T_i conditions are checked
        # against this in the tests.)
        return member(domain_Delta(n), v + (-sum(v),))
    if kind == "Q_full":
        return sum(v) == 0
    if kind == "Z_full":
        return True
    if kind == "DeltaC":
        m = 2 * n + 1
        classes = set()
        for i, x in enumerate(v, 1):
            r = (x + i) % m
            if r == 0:
                return False
            c = min(r, m - r)
            if c in classes:
                return False
            classes.add(c)
        return True
    if kind == "Ds":
        ell, charges = domain.extra
        sprime = conjugate_charges(n, ell, charges)
        return (sum(v) == sum(charges)
                and residue_counts(v, ell) == residue_counts(sprime, ell))
    if kind == "Os":
        return (sum(v) == n * (n - 1) // 2
                and len({x % n for x in v}) == n)
    if kind == "M":
        tag = domain.extra[0]
        if tag == "C1":
            return all(x % 2 == 0 for x in v)
        if tag in ("B1", "D1", "A2odd"):
            return sum(v) % 2 == 0
        return True  # A2even, D2: all of Z^n
    raise DomainViolation(f"unknown domain kind {kind!r}")


def member_X_literal(v, n: int) -> bool:
    """Projected conditions written out (used to cross-check member)."""
    v = tuple(v)
    if len(v) != n - 1:
        return False
    for i in range(1, n):
        for j in range(i + 1, n):
            if (v[i - 1] + i) % n == (v[j - 1] + j) % n:
                return False
    total = sum(v)
    for i in range(1, n):
        t_i = total + v[i - 1]
        if t_i % n == (n - i) % n:
            return False
    return True


# ---------------------------------------------------------------------------
# Forms as integer-scaled diagonal data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormSpec:
    """value(t) = (quad * sum(t^2) + sum(lin_i t_i) + const) / denom.

    nvars is the visible arity.  Forms flagged virtual_last are evaluated on
    nvars coordinates but searched with one extra zero-sum coordinate (used
    for the form with all pairwise products, which is the half norm on the
    zero-sum lattice in one more variable).
    """

    form_id: str
    nvars: int
    quad: int
    lin: tuple[int, ...]
    const: int
    denom: int
    virtual_last: bool = False

    def evaluate(self, t):
        t = tuple(t)
        if len(t) != self.nvars:
            raise BadLength(f"{self.form_id} takes {self.nvars} variables")
        if self.virtual_last:
            t = t + (-sum(t),)
        num = self.quad * sum(v * v for v in t)
        num += sum(b * v for b, v in zip(self.lin, t))
        num += self.const
        val = Fraction(num, self.denom)
        return int(val) if val.denominator == 1 else val


def form_P(n: int) -> FormSpec:
    return FormSpec("P", n, 1, tuple(-2 * i for i in range(1, n + 1)),
                    n * (n + 1) * (2 * n + 1) // 6, 2)


def form_Q(n: int) -> FormSpec:
    return FormSpec("Q", n, 1, (0,) * n, 0, 2)


def form_q(nvars: int) -> FormSpec:
    return FormSpec("q", nvars, 1, (0,) * (nvars + 1), 0, 2, virtual_last=True)


def form_euclidean(n: int) -> FormSpec:
    return FormSpec("euclidean", n, 1, (0,) * n, 0, 1)


def form_core_size(n: int) -> FormSpec:
    """Size polynomial of classical cores on the zero-sum lattice."""
    return FormSpec("core-size", n, n,
                    tuple(2 * (i - 1) for i in range(1, n + 1)), 0, 2)


LATTICE_TAGS = ("B1", "C1", "D1", "A2odd", "A2even", "D2")

_LATTICE_DENOM = {"B1": 2, "C1": 4, "D1": 2, "A2odd": 2, "A2even": 2, "D2": 1}


def form_lattice_norm(tag: str, n: int) -> FormSpec:
    """The half-norm map of the lattice row, under its norm convention."""
    if tag not in LATTICE_TAGS:
        raise DomainViolation(f"unknown lattice tag {tag!r}")
    return FormSpec(f"norm[{tag}]", n, 1, (0,) * n, 0, _LATTICE_DENOM[tag])


# ---------------------------------------------------------------------------
# Search engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchSpace:
    """Engine-level description of the set searched over."""

    nvars: int
    sum_target: int | None = None
    bounded: tuple[bool, ...] = ()
    step: int = 1
    filter_kind: str = "none"       # none | distinct | distinct_pm | multiset
    filter_mod: int = 0
    filter_shifts: tuple[int, ...] = ()
    filter_counts: tuple[int, ...] = ()
    parity_even: bool = False

    def __post_init__(self):
        if not self.bounded:
            object.__setattr__(self, "bounded", (True,) * self.nvars)


def _radius_schedule(radius: int) -> list[int]:
    if radius <= 1:
        return [radius]
    out, r = [], 1
    while r < radius:
        out.append(r)
        r *= 2
    out.append(radius)
    return out


def _aligned_round(center: Fraction, step: int) -> int:
    return step * math.floor(center / step + Fraction(1, 2))


def _int_roots(a: int, b: int, c: int) -> list[int]:
    """Integer roots of a t^2 + b t + c = 0 with a > 0."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    roots = []
    for num in (-b + s, -b - s):
        q, r = divmod(num, 2 * a)
        if r == 0 and q not in roots:
            roots.append(q)
    return roots


def find_witness(quad: int, lin: tuple[int, ...], K: int,
                 space: SearchSpace, radius: int):
    """First vector (in the fixed search order) with
    quad*sum(t^2) + sum(lin*t) == K inside the space, or None."""
    for r in _radius_schedule(radius):
        hit = _search_at_radius(quad, lin, K, space, r)
        if hit is not None:
            return hit
    return None


def _search_at_radius(A, B, K, space, radius):
    n = space.nvars
    if n == 0:
        return () if K == 0 else None
    step = space.step
    S = space.sum_target
    kind = space.filter_kind
    mod = space.filter_mod
    shifts = space.filter_shifts or (0,) * n
    hi_aligned = (radius // step) * step

    # Spiral centers and per-coordinate extremal contributions at this radius.
    v0 = [_aligned_round(Fraction(-B[i], 2 * A), step) for i in range(n)]
    lo_i, hi_i, min_t, max_t = [], [], [], []
    for i in range(n):
        if space.bounded[i]:
            lo, hi = -hi_aligned, hi_aligned
        else:
            lo = hi = None
        lo_i.append(lo)
        hi_i.append(hi)
        c = v0[i]
        if lo is not None:
            c = min(hi, max(lo, c))
        cands = {c, c - step, c + step}
        if lo is not None:
            cands = {min(hi, max(lo, v)) for v in cands}
        min_t.append(min(A * v * v + B[i] * v for v in cands))
        if lo is None:
            max_t.append(None)
        else:
            max_t.append(max(A * lo * lo + B[i] * lo, A * hi * hi + B[i] * hi))

    min_suf = [0] * (n + 1)
    max_suf: list[int | None] = [0] * (n + 1)
    abs_suf: list[int | None] = [0] * (n + 1)
    sufB = [0] * (n + 1)
    sufB2 = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        min_suf[i] = min_suf[i + 1] + min_t[i]
        max_suf[i] = (None if (max_suf[i + 1] is None or max_t[i] is None)
                      else max_suf[i + 1] + max_t[i])
        abs_suf[i] = (None if (abs_suf[i + 1] is None or hi_i[i] is None)
                      else abs_suf[i + 1] + hi_i[i])
        sufB[i] = sufB[i + 1] + B[i]
        sufB2[i] = sufB2[i + 1] + B[i] * B[i]

    # Congruence filter state.
    used = bytearray(mod) if kind in ("distinct", "distinct_pm") else None
    counts = list(space.filter_counts) if kind == "multiset" else None
    if kind == "multiset" and (S is None or sum(counts) != n):
        raise DomainViolation("multiset filter needs a sum target and "
                              "exactly one residue per coordinate")

    def f_key(i, v):
        """Filter key for value v at coordinate i, or -1 when rejected."""
        if kind == "none":
            return 0
        if kind == "distinct":
            r = (v + shifts[i]) % mod
            return -1 if used[r] else r
        if kind == "distinct_pm":
            r = (v + shifts[i]) % mod
            if r == 0:
                return -1
            c = min(r, mod - r)
            return -1 if used[c] else c
        r = v % mod
        return r if counts[r] > 0 else -1

    def f_take(key):
        if kind == "multiset":
            counts[key] -= 1
        elif kind != "none":
            used[key] = 1

    def f_drop(key):
        # distinct kinds never mark the same key twice, plain reset is safe
        if kind == "multiset":
            counts[key] += 1
        elif kind != "none":
            used[key] = 0

    def ok_range(i, v):
        if v % step:
            return False
        return lo_i[i] is None or lo_i[i] <= v <= hi_i[i]

    vec = [0] * n

    def accept_tail(i, cands, partial, ssum):
        """Try candidate values for the single final coordinate i."""
        for v in cands:
            if not ok_range(i, v):
                continue
            if A * v * v + B[i] * v + partial != K:
                continue
            if space.parity_even and (ssum + v) % 2:
                continue
            key = f_key(i, v)
            if key < 0:
                continue
            vec[i] = v
            return True
        return False

    def spiral_sorted(i, cands):
        c = v0[i]
        return sorted(cands, key=lambda t: (abs(t - c), t < c))

    def dfs(i, partial, ssum):
        m = n - i
        if partial + min_suf[i] > K:
            return False
        if max_suf[i] is not None and partial + max_suf[i] < K:
            return False
        if S is not None:
            s_rem = S - ssum
            if abs_suf[i] is not None and abs(s_rem) > abs_suf[i]:
                return False
            T = 2 * A * s_rem + sufB[i]
            if m > 0 and m * (4 * A * (K - partial) + sufB2[i]) < T * T:
                return False
            if m == 1:
                return accept_tail(i, [s_rem], partial, ssum)
            if m == 2:
                # Solve for t at i; the mate at i+1 is forced by the sum.
                a2 = 2 * A
                b2 = B[i] - B[i + 1] - 2 * A * s_rem
                c2 = A * s_rem * s_rem + B[i + 1] * s_rem - (K - partial)
                for t in spiral_sorted(i, _int_roots(a2, b2, c2)):
                    u = s_rem - t
                    if not ok_range(i, t) or not ok_range(i + 1, u):
                        continue
                    key = f_key(i, t)
                    if key < 0:
                        continue
                    f_take(key)
                    key2 = f_key(i + 1, u)
                    if key2 >= 0:
                        vec[i], vec[i + 1] = t, u
                        return True
                    f_drop(key)
                return False
        elif m == 1:
            cands = spiral_sorted(i, _int_roots(A, B[i], partial - K))
            return accept_tail(i, cands, partial, ssum)

        # Spiral over values of coordinate i, outward from the minimizer.
        c = v0[i]
        if hi_i[i] is not None:
            c = min(hi_i[i], max(lo_i[i], c))
        plus = minus = True
        d = 0
        while plus or minus:
            for v in ((c + d,) if d == 0 else (c + d, c - d)):
                side_plus = v >= c
                if side_plus and not plus:
                    continue
                if not side_plus and not minus:
                    continue
                if hi_i[i] is not None and not (lo_i[i] <= v <= hi_i[i]):
                    if side_plus:
                        plus = False
                    else:
                        minus = False
                    continue
                term = A * v * v + B[i] * v
                if partial + term + min_suf[i + 1] > K:
                    # convex: this side only grows from here on
                    if side_plus:
                        plus = False
                    else:
                        minus = False
                    continue
                key = f_key(i, v)
                if key < 0:
                    continue
                f_take(key)
                vec[i] = v
                if dfs(i + 1, partial + term, ssum + v):
                    return True
                f_drop(key)
            d += step
            if d and d // step > 10 ** 9:
                raise InvariantViolation("unbounded spiral")
        return False

    if dfs(0, 0, 0):
        return tuple(vec)
    return None


# ---------------------------------------------------------------------------
# Pairing forms with domains
# ---------------------------------------------------------------------------

def _search_space(form: FormSpec, domain: ConstrainedDomain) -> SearchSpace:
    n = domain.n
    kind = domain.kind
    dim = form.nvars + (1 if form.virtual_last else 0)

    if kind in ("Z_full", "X") and not form.virtual_last:
        raise DomainViolation(
            f"form {form.form_id} cannot be searched on {domain.label()}")

    if kind == "D":
        return SearchSpace(n, sum_target=n * (n + 1) // 2,
                           filter_kind="distinct", filter_mod=n,
                           filter_shifts=(0,) * n)
    if kind == "Delta":
        return SearchSpace(n, sum_target=0, filter_kind="distinct",
                           filter_mod=n, filter_shifts=tuple(range(1, n + 1)))
    if kind == "Q_full":
        return SearchSpace(n, sum_target=0)
    if kind == "Z_full":
        return SearchSpace(dim, sum_target=0,
                           bounded=(True,) * (dim - 1) + (False,))
    if kind == "X":
        return SearchSpace(dim, sum_target=0, filter_kind="distinct",
                           filter_mod=n, filter_shifts=tuple(range(1, n + 1)),
                           bounded=(True,) * (dim - 1) + (False,))
    if kind == "DeltaC":
        return SearchSpace(n, filter_kind="distinct_pm", filter_mod=2 * n + 1,
                           filter_shifts=tuple(range(1, n + 1)))
    if kind == "Ds":
        ell, charges = domain.extra
        sprime = conjugate_charges(n, ell, charges)
        return SearchSpace(n, sum_target=sum(charges), filter_kind="multiset",
                           filter_mod=ell,
                           filter_counts=residue_counts(sprime, ell))
    if kind == "Os":
        return SearchSpace(n, sum_target=n * (n - 1) // 2,
                           filter_kind="distinct", filter_mod=n,
                           filter_shifts=(0,) * n)
    if kind == "M":
        tag = domain.extra[0]
        if tag == "C1":
            return SearchSpace(n, step=2)
        if tag in ("B1", "D1", "A2odd"):
            return SearchSpace(n, parity_even=True)
        return SearchSpace(n)
    raise DomainViolation(f"unknown domain kind {kind!r}")


def represent(form: FormSpec, domain: ConstrainedDomain, k, radius: int):
    """Search for a domain vector with form value exactly k.

    Returns the witness tuple or None.  None is not a proof of
    non-representability, only exhaustion of the radius box.
    """
    if k < 0:
        return None
    if radius < 0:
        raise DomainViolation(f"radius must be >= 0, got {radius}")
    space = _search_space(form, domain)
    if space.nvars != form.nvars + (1 if form.virtual_last else 0):
        raise DomainViolation(
            f"form {form.form_id} has arity {form.nvars}, domain "
            f"{domain.label()} has dimension {domain.dim()}")
    knum = form.denom * Fraction(k) - form.const
    if knum.denominator != 1:
        return None
    hit = find_witness(form.quad, form.lin, int(knum), space, radius)
    if hit is None:
        return None
    if form.virtual_last:
        hit = hit[:-1]
    if form.evaluate(hit) != k:
        raise InvariantViolation(
            f"witness {hit} evaluates to {form.evaluate(hit)}, wanted {k}")
    if not member(domain, hit):
        raise InvariantViolation(f"witness {hit} escaped {domain.label()}")
    return hit


# ---------------------------------------------------------------------------
# Attained residue classes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _attained_q(nvars: int, m: int) -> frozenset[int]:
    """Classes mod m attained by the all-pairwise-products form.

    The polynomial has integer coefficients, so coordinates in [0, m) give
    every class.
    """
    budget.check(m ** nvars, what="residue enumeration")
    attained = set()

    # evaluate via (sum of squares + square of sum) / 2; parity is automatic
    def rec(i, sq, s):
        if i == nvars:
            attained.add(((sq + s * s) // 2) % m)
            return
        for v in range(m):
            rec(i + 1, sq + v * v, s + v)

    rec(0, 0, 0)
    return frozenset(attained)


@lru_cache(maxsize=None)
def _attained_euclid(nvars: int, m: int) -> frozenset[int]:
    budget.check(m ** nvars, what="residue enumeration")
    attained = set()

    def rec(i, sq):
        if i == nvars:
            attained.add(sq % m)
            return
        for v in range(m):
            rec(i + 1, sq + v * v)

    rec(0, 0)
    return frozenset(attained)


def attained_classes(form: FormSpec, m: int) -> frozenset[int]:
    """Residue classes mod m attained by the form on its natural domain.

    Exhaustive over one coordinate period.  For the half-norm on the zero-sum
    or window domains this uses the exact reduction to the pairwise-products
    form in one variable less (same value sets, hence same classes).
    """
    if m < 1:
        raise DomainViolation(f"modulus must be >= 1, got {m}")
    if m == 1:
        return frozenset({0})
    if form.form_id == "q":
        return _attained_q(form.nvars, m)
    if form.form_id in ("P", "Q"):
        return _attained_q(form.nvars - 1, m)
    if form.form_id == "euclidean" or form.form_id.startswith("norm["):
        if form.denom == 1:
            return _attained_euclid(form.nvars, m)
    raise DomainViolation(
        f"attained_classes does not support form {form.form_id!r}")


_OBSTRUCTION_WORK_CAP = 5 * 10 ** 6


def _obstruction(form: FormSpec, k: int, moduli) -> tuple[int, int] | None:
    """Smallest modulus certifying that k is in a missed class, if any."""
    if form.form_id not in ("P", "Q", "q"):
        return None
    arity = form.nvars if form.form_id == "q" else form.nvars - 1
    if arity >= 4:
        return None  # universal from four variables on: no class is missed
    base = form_q(arity)
    for m in moduli:
        if m ** arity > _OBSTRUCTION_WORK_CAP:
            break
        if k % m not in attained_classes(base, m):
            return m, k % m
    return None


# ---------------------------------------------------------------------------
# Reports and scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReportEntry:
    target: object                 # int, or Fraction on the half grid
    status: str                    # witness | not-found | obstructed
    witness: tuple[int, ...] | None = None
    modulus: int | None = None
    residue: int | None = None


@dataclass(frozen=True)
class UniversalityReport:
    form: str
    domain: str
    n: int
    max_k: int
    radius: int
    grid: str                      # "int" | "half"
    entries: tuple[ReportEntry, ...]
    min_k: int = 0

    @property
    def misses(self) -> tuple[ReportEntry, ...]:
        return tuple(e for e in self.entries if e.status != "witness")

    @property
    def all_witnessed(self) -> bool:
        return not self.misses

    def to_json_dict(self) -> dict:
        entries = []
        for e in self.entries:
            d = {"k": _target_json(e.target), "status": e.status}
            if e.witness is not None:
                d["witness"] = list(e.witness)
            if e.modulus is not None:
                d["modulus"] = e.modulus
                d["residue"] = e.residue
            entries.append(d)
        return {"form": self.form, "domain": self.domain, "n": self.n,
                "min_k": self.min_k, "max_k": self.max_k,
                "radius": self.radius, "grid": self.grid,
                "witnesses": len(self.entries) - len(self.misses),
                "total": len(self.entries), "entries": entries}

    def to_text(self) -> str:
        lines = [f"form={self.form} domain={self.domain} n={self.n} "
                 f"min_k={self.min_k} max_k={self.max_k} "
                 f"radius={self.radius} grid={self.grid}"]
        for e in self.entries:
            k = _target_text(e.target)
            if e.status == "witness":
                lines.append(f"k={k} witness {','.join(map(str, e.witness))}")
            elif e.status == "obstructed":
                lines.append(f"k={k} obstructed mod={e.modulus} "
                             f"class={e.residue}")
            else:
                lines.append(f"k={k} not-found radius={self.radius}")
        found = len(self.entries) - len(self.misses)
        lines.append(f"witnesses {found}/{len(self.entries)}")
        return "\n".join(lines)


def _target_json(k):
    return int(k) if isinstance(k, int) or (isinstance(k, Fraction) and k.denominator == 1) else f"{k.numerator}/{k.denominator}"


def _target_text(k):
    if isinstance(k, Fraction) and k.denominator != 1:
        return f"{k.numerator}/{k.denominator}"
    return str(int(k))


def _scan_one(form: FormSpec, domain: ConstrainedDomain, k, radius, moduli):
    hit = represent(form, domain, k, radius)
    if hit is not None:
        return ReportEntry(k, "witness", hit)
    if isinstance(k, int) or k.denominator == 1:
        obs = _obstruction(form, int(k), moduli)
        if obs is not None:
            return ReportEntry(k, "obstructed", None, obs[0], obs[1])
    return ReportEntry(k, "not-found")


def universality_scan(form: FormSpec, domain: ConstrainedDomain, max_k: int,
                      radius: int, *, min_k: int = 0, grid: str = "int",
                      moduli=DEFAULT_OBSTRUCTION_MODULI,
                      threads: int = 1) -> UniversalityReport:
    """Represent every target in [min_k, max_k] (or the half-integer grid)
    and attach modular obstructions to missed targets where certifiable."""
    if grid == "half":
        targets = [Fraction(j, 2) for j in range(2 * min_k, 2 * max_k + 1)]
    else:
        targets = list(range(min_k, max_k + 1))
    if threads > 1:
        entries = _parallel_scan(form, domain, targets, radius, moduli, threads)
    else:
        entries = [_scan_one(form, domain, k, radius, moduli) for k in targets]
    return UniversalityReport(form.form_id, domain.label(), domain.n, max_k,
                              radius, grid, tuple(entries), min_k)


def _scan_worker(args):
    form, domain, k, radius, moduli = args
    return _scan_one(form, domain, k, radius, moduli)


def _parallel_scan(form, domain, targets, radius, moduli, threads):
    """Fan targets out over worker processes; merge order is the target
    order, so parallelism never changes report content."""
    from concurrent.futures import ProcessPoolExecutor
    from concurrent.futures.process import BrokenProcessPool

    args = [(form, domain, k, radius, moduli) for k in targets]
    try:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_scan_worker, args, chunksize=8))
    except (OSError, BrokenProcessPool):
        return [_scan_one(form, domain, k, radius, moduli) for k in targets]
