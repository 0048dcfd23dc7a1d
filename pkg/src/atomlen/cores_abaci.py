"""Partitions, beta-sets and abaci, the level-(l <-> n) rotation bijection,
higher-level cores, and the charge-orbit polynomial for atomic lengths.

An abacus runner is stored co-finitely: below `threshold` every position
holds a bead; `beads` lists the occupied positions above it.  The threshold
is normalized to the first gap, which makes the encoding canonical and the
charge equal to threshold + len(beads).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (BadEll, BadIndex, BadLength, DomainViolation,
                     InvariantViolation, NotInDs)
from .quadratic_forms import (ConstrainedDomain, FormSpec, UniversalityReport,
                              conjugate_charges, domain_Ds, domain_Os,
                              domain_Q_full, form_core_size, member,
                              universality_scan)

Partition = tuple[int, ...]
MultiPartition = tuple[Partition, ...]


def as_partition(parts) -> Partition:
    out = tuple(int(p) for p in parts if int(p) != 0)
    if any(p < 0 for p in out):
        raise BadLength(f"negative part in {parts}")
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise BadLength(f"parts not weakly decreasing: {parts}")
    return out


def conjugate(parts: Partition) -> Partition:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


# ---------------------------------------------------------------------------
# Hooks
# ---------------------------------------------------------------------------

def hook_lengths(parts: Partition) -> tuple[tuple[int, ...], ...]:
    """Hook length of each cell, row by row."""
    parts = as_partition(parts)
    conj = conjugate(parts)
    return tuple(
        tuple(parts[i] - j + conj[j - 1] - i for j in range(1, parts[i] + 1))
        for i in range(len(parts)))


def is_n_core_hooks(parts: Partition, n: int, *, divisible: bool = False) -> bool:
    """No hook of length n; with divisible=True, no hook divisible by n.

    The two variants agree (a hook of length kn forces one of length n);
    the tests exercise that classical equivalence.
    """
    if n < 2:
        raise BadLength(f"need n >= 2, got {n}")
    for row in hook_lengths(parts):
        for h in row:
            if (h % n == 0) if divisible else (h == n):
                return False
    return True


def remove_rim_hook(parts: Partition, row: int, col: int) -> Partition:
    """Remove the rim hook of the cell (row, col), both 0-based.

    The rim hook consists of the boundary cells weakly south-east of the
    cell; works directly on the cell set of the diagram.
    """
    parts = as_partition(parts)
    cells = {(r, c) for r in range(len(parts)) for c in range(parts[r])}
    if (row, col) not in cells:
        raise BadIndex(f"cell ({row}, {col}) outside the diagram")
    hook = {(r, c) for (r, c) in cells
            if r >= row and c >= col and (r + 1, c + 1) not in cells}
    remaining = cells - hook
    rows = [0] * len(parts)
    for (r, _) in remaining:
        rows[r] += 1
    # a rim hook always leaves a partition shape behind
    return as_partition(rows)


def strip_to_core(parts: Partition, n: int) -> Partition:
    """Classical n-core by repeated rim-hook removal on the diagram.

    Independent of the abacus route; used as the oracle against it.
    """
    if n < 2:
        raise BadLength(f"need n >= 2, got {n}")
    parts = as_partition(parts)
    while True:
        table = hook_lengths(parts)
        hit = None
        for i, row in enumerate(table):
            for j, h in enumerate(row):
                if h == n:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return parts
        parts = remove_rim_hook(parts, *hit)


# ---------------------------------------------------------------------------
# Beta-sets and runners
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetaAbacus:
    """One runner: all positions < threshold occupied, plus `beads` above.

    Normalized so the threshold is the first unoccupied position, hence the
    beads form a sorted tuple of positions > threshold.
    """

    threshold: int
    beads: tuple[int, ...]

    def __post_init__(self):
        if self.beads != tuple(sorted(set(self.beads))):
            raise BadLength("beads must be sorted and distinct")
        if self.beads and self.beads[0] <= self.threshold:
            raise BadLength("beads must lie above the threshold")

    def occupied(self, pos: int) -> bool:
        return pos < self.threshold or pos in self.beads

    @property
    def charge(self) -> int:
        return self.threshold + len(self.beads)

    def charge_push_left(self) -> int:
        """Charge by the literal normalization: move each bead onto the
        leftmost gap to its left until the runner is trivial, then read the
        first gap."""
        occupied = set(self.beads)
        lo = self.threshold
        while True:
            if not occupied:
                return lo
            top = max(occupied)
            gaps = [p for p in range(lo, top) if p not in occupied]
            if not gaps:
                return top + 1
            g = gaps[0]
            b = min(x for x in occupied if x > g)
            occupied.discard(b)
            occupied.add(g)


def normalize_runner(threshold: int, occupied_above) -> BetaAbacus:
    """Canonical runner from any threshold and explicit positions >= it."""
    occ = sorted(set(occupied_above))
    t = threshold
    while occ and occ[0] == t:
        occ.pop(0)
        t += 1
    return BetaAbacus(t, tuple(occ))


def beta_set(parts: Partition, s: int) -> BetaAbacus:
    """Charged beta-set: positions part_j - j + s, j = 1, 2, ..., padded by
    every position below s - len(parts)."""
    parts = as_partition(parts)
    m = len(parts)
    positions = [parts[j - 1] - j + s for j in range(1, m + 1)]
    return normalize_runner(s - m, positions)


def partition_of(runner: BetaAbacus) -> Partition:
    """Count the gaps to the left of each bead, largest bead first."""
    parts = []
    for b in sorted(runner.beads, reverse=True):
        below = sum(1 for x in runner.beads if x < b)
        parts.append(b - runner.threshold - below)
    return as_partition(parts)


def is_n_core_abacus(runner: BetaAbacus, n: int) -> bool:
    """Every bead at position k has a bead at position k - n."""
    if n < 2:
        raise BadLength(f"need n >= 2, got {n}")
    return all(runner.occupied(b - n) for b in runner.beads)


@dataclass(frozen=True)
class LAbacus:
    """Stack of runners, bottom (index 0) to top."""

    runners: tuple[BetaAbacus, ...]

    @property
    def level(self) -> int:
        return len(self.runners)

    @property
    def multicharge(self) -> tuple[int, ...]:
        return tuple(r.charge for r in self.runners)

    def to_multipartition(self) -> MultiPartition:
        return tuple(partition_of(r) for r in self.runners)

    def render(self) -> str:
        """Top runner printed first, position ruler underneath."""
        lo = min(r.threshold for r in self.runners) - 2
        hi = max(r.beads[-1] if r.beads else r.threshold
                 for r in self.runners) + 2
        width = max(len(str(p)) for p in range(lo, hi + 1))
        rows = []
        for runner in reversed(self.runners):
            cells = ["O" if runner.occupied(p) else "." for p in range(lo, hi + 1)]
            rows.append(" ".join(c.rjust(width) for c in cells))
        ruler = " ".join(str(p).rjust(width) for p in range(lo, hi + 1))
        return "\n".join(rows + [ruler])


def l_abacus(multipartition, charges) -> LAbacus:
    charges = tuple(int(c) for c in charges)
    if len(multipartition) != len(charges):
        raise BadLength("level and number of charges differ")
    return LAbacus(tuple(beta_set(p, s) for p, s in zip(multipartition, charges)))


# ---------------------------------------------------------------------------
# The rotation bijection
# ---------------------------------------------------------------------------

def _block_range(runners, width: int) -> tuple[int, int]:
    lo_all = min(r.threshold for r in runners)
    hi_all = max(r.beads[-1] + 1 if r.beads else r.threshold for r in runners)
    return lo_all // width - 1, (hi_all - 1) // width + 1


def _rotate_acw(runners: tuple[BetaAbacus, ...], n: int) -> tuple[BetaAbacus, ...]:
    """Quarter turn anticlockwise of every width-n block of an l-runner
    abacus: the bead on runner r (1-based, bottom to top) at position
    q*n + (c-1) lands on runner c at position q*l + (l - r)."""
    ell = len(runners)
    q_min, q_max = _block_range(runners, n)
    out = []
    for c in range(1, n + 1):
        occupied = []
        for q in range(q_min, q_max + 1):
            p_old = q * n + (c - 1)
            for d in range(ell):
                if runners[ell - d - 1].occupied(p_old):
                    occupied.append(q * ell + d)
        out.append(normalize_runner(q_min * ell, occupied))
    return tuple(out)


def _rotate_cw(runners: tuple[BetaAbacus, ...], ell: int) -> tuple[BetaAbacus, ...]:
    """Inverse of _rotate_acw: from an n-runner abacus back to l runners."""
    n = len(runners)
    q_min, q_max = _block_range(runners, ell)
    out = []
    for r in range(1, ell + 1):
        occupied = []
        for q in range(q_min, q_max + 1):
            p_old = q * ell + (ell - r)
            for c in range(1, n + 1):
                if runners[c - 1].occupied(p_old):
                    occupied.append(q * n + (c - 1))
        out.append(normalize_runner(q_min * n, occupied))
    return tuple(out)


def phi(multipartition, charges, n: int):
    """Rectangle-rotation bijection from level-l charged multipartitions to
    level-n ones.  The rotated runner order is reversed on output; the total
    charge is preserved."""
    if n < 2:
        raise BadLength(f"need n >= 2, got {n}")
    ab = l_abacus(multipartition, charges)
    rotated = _rotate_acw(ab.runners, n)
    out = LAbacus(tuple(reversed(rotated)))
    return out.to_multipartition(), out.multicharge


def phi_inverse(multipartition, charges, ell: int):
    """Inverse of phi: undo the output reversal, rotate blocks back."""
    if ell < 1:
        raise BadEll(f"need level >= 1, got {ell}")
    ab = l_abacus(tuple(reversed(tuple(multipartition))),
                  tuple(reversed(tuple(charges))))
    rotated = _rotate_cw(ab.runners, ell)
    out = LAbacus(rotated)
    return out.to_multipartition(), out.multicharge


def ns_core_of(multipartition, charges, n: int):
    """Core of a charged multipartition: empty the level-n side of phi.

    Returns ((core multipartition, core charges), core multicharge); the
    multicharge is reported in bottom-to-top runner order, i.e. the reverse
    of the phi output order, matching the worked example.
    """
    level = len(multipartition)
    _, sn = phi(multipartition, charges, n)
    core = phi_inverse(((),) * n, sn, level)
    return core, tuple(reversed(sn))


def is_ns_core(multipartition, charges, n: int) -> bool:
    """Direct abacus test: beads on runner j must repeat on runner j+1, and
    beads on the top runner must repeat n positions lower on the bottom."""
    if n < 2:
        raise BadLength(f"need n >= 2, got {n}")
    runners = l_abacus(multipartition, charges).runners
    ell = len(runners)
    for j in range(ell - 1):
        below, above = runners[j], runners[j + 1]
        if above.threshold < below.threshold:
            return False
        if not all(above.occupied(b) for b in below.beads):
            return False
    top, bottom = runners[-1], runners[0]
    if bottom.threshold < top.threshold - n:
        return False
    return all(bottom.occupied(b - n) for b in top.beads)


def multipartition_size(multipartition) -> int:
    return sum(sum(p) for p in multipartition)


# ---------------------------------------------------------------------------
# Charge orbits and the atomic-length polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSpec:
    """Level-l dominant weight datum: 0 <= s_1 <= ... <= s_l < n."""

    n: int
    ell: int
    charges: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.ell <= self.n):
            raise BadEll(f"need 1 <= level <= n, got {self.ell} vs {self.n}")
        if len(self.charges) != self.ell:
            raise BadLength("number of charges must equal the level")
        c = self.charges
        if any(not (0 <= v < self.n) for v in c):
            raise BadIndex(f"charges must lie in [0, {self.n}), got {c}")
        if any(c[i] > c[i + 1] for i in range(self.ell - 1)):
            raise BadLength(f"charges must be sorted increasingly, got {c}")

    @property
    def sprime(self) -> tuple[int, ...]:
        return conjugate_charges(self.n, self.ell, self.charges)

    @property
    def total(self) -> int:
        return sum(self.charges)

    def domain(self) -> ConstrainedDomain:
        return domain_Ds(self.n, self.ell, self.charges)

    def normalizing_constant(self) -> Fraction:
        """The constant making the polynomial vanish at sprime; always
        recomputed from that normalization."""
        sp = self.sprime
        return (Fraction(self.n, 2 * self.ell) * sum(v * v for v in sp)
                - sum((i - 1) * v for i, v in enumerate(sp, 1)))

    def form(self) -> FormSpec:
        const = -2 * self.ell * self.normalizing_constant()
        if const.denominator != 1:
            raise InvariantViolation("normalizing constant has bad denominator")
        return FormSpec(f"Ps[n={self.n},l={self.ell}]", self.n, self.n,
                        tuple(-2 * self.ell * (i - 1)
                              for i in range(1, self.n + 1)),
                        int(const), 2 * self.ell)


def truncated_constant_closed_form(n: int, ell: int) -> Fraction:
    """Closed form of the normalizing constant for the staircase charges
    (0, ..., l-1); regression-tested against the recomputed value."""
    return Fraction(ell - 1, 12) * (2 * ell * ell - 4 * n * ell + 2 * ell - n)


def eval_Ps(spec: WeightSpec, t) -> int:
    """Atomic-length polynomial on the charge orbit, exact."""
    t = tuple(t)
    if not member(spec.domain(), t):
        raise NotInDs(f"{t} is not in the charge orbit domain of {spec}")
    val = (Fraction(spec.n, 2 * spec.ell) * sum(v * v for v in t)
           - sum((i - 1) * v for i, v in enumerate(t, 1))
           - spec.normalizing_constant())
    if val.denominator != 1:
        raise InvariantViolation(f"polynomial value {val} is not an integer")
    return int(val)


def affine_action_on_charges(word, t, ell: int) -> tuple[int, ...]:
    """Apply generator indices left to right: index i in [1, n-1] swaps
    coordinates i and i+1; index 0 maps (t_1, ..., t_n) to
    (t_n - l, t_2, ..., t_{n-1}, t_1 + l)."""
    t = list(t)
    n = len(t)
    for g in word:
        if g == 0:
            t = [t[-1] - ell] + t[1:-1] + [t[0] + ell]
        elif 1 <= g <= n - 1:
            t[g - 1], t[g] = t[g], t[g - 1]
        else:
            raise BadIndex(f"generator index {g} out of range for n={n}")
    return tuple(t)


def core_of_orbit_point(spec: WeightSpec, t):
    """Charged level-l multipartition whose level-n side of phi is
    (all empty, t); its box count equals eval_Ps(spec, t)."""
    t = tuple(t)
    if not member(spec.domain(), t):
        raise NotInDs(f"{t} is not in the charge orbit domain of {spec}")
    return phi_inverse(((),) * spec.n, t, spec.ell)


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def scan_truncated_weight(n: int, ell: int, max_k: int, radius: int,
                          threads: int = 1) -> UniversalityReport:
    """Universality scan for the staircase weight of level l."""
    spec = WeightSpec(n, ell, tuple(range(ell)))
    return universality_scan(spec.form(), spec.domain(), max_k, radius,
                             threads=threads)


def refined_go_form(n: int) -> FormSpec:
    """Size polynomial on the distinct-residue orbit, shifted to vanish at
    (0, 1, ..., n-1); the shift equals binomial(n+2, 4)."""
    num = n * (n - 1) * (2 * n - 1) * (n + 2)
    if num % 6:
        raise InvariantViolation("refined constant is not integral")
    return FormSpec(f"refined-go[{n}]", n, n,
                    tuple(2 * (i - 1) for i in range(1, n + 1)), -num // 6, 2)


def refined_size_form(n: int) -> FormSpec:
    """Unshifted size polynomial on the distinct-residue orbit: its value at
    an orbit point is the number of boxes of the attached classical core."""
    s = n * (n - 1) // 2
    const = -Fraction(s * (n - 1), 2) - Fraction(s * s, 2)
    c0 = 2 * const
    if c0.denominator != 1:
        raise InvariantViolation("size constant is not integral")
    return FormSpec(f"refined-go-size[{n}]", n, n,
                    tuple(2 * (i - 1) for i in range(1, n + 1)), int(c0), 2)


def refined_base_value(n: int) -> int:
    """Size at the base point (0, ..., n-1); equals binomial(n+2, 4)."""
    val = refined_size_form(n).evaluate(tuple(range(n)))
    if not isinstance(val, int):
        raise InvariantViolation("base value is not an integer")
    return val


def scan_refined_GO(n: int, max_k: int, radius: int,
                    threads: int = 1) -> UniversalityReport:
    """Scan the refined problem over n-tuples with distinct residues mod n
    summing to n(n-1)/2.

    Targets are core sizes; the window is the base size binomial(n+2, 4) up
    to base + max_k, the sizes whose attainment the shifted form asks about.
    Smaller sizes down to binomial(n+1, 4) do occur in the family but are
    outside the question.
    """
    base = refined_base_value(n)
    return universality_scan(refined_size_form(n), domain_Os(n),
                             base + max_k, radius, min_k=base,
                             threads=threads)


def granville_ono_scan(n: int, max_k: int, radius: int,
                       threads: int = 1) -> UniversalityReport:
    """Classical core-size scan on the zero-sum lattice."""
    return universality_scan(form_core_size(n), domain_Q_full(n), max_k,
                             radius,
                             threads=threads)


# ---------------------------------------------------------------------------
# Dilation
# ---------------------------------------------------------------------------

def dilation_offset(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def dilation_shift(spec: WeightSpec) -> Fraction:
    """Half squared norm of (n/l)*sprime - (0, 1, ..., n-1)."""
    r = Fraction(spec.n, spec.ell)
    return Fraction(1, 2) * sum((r * s - d) ** 2
                                for s, d in zip(spec.sprime,
                                                dilation_offset(spec.n)))


def dilate_point(spec: WeightSpec, t) -> tuple[Fraction, ...]:
    r = Fraction(spec.n, spec.ell)
    return tuple(r * v - d for v, d in zip(t, dilation_offset(spec.n)))


def eval_dilated(spec: WeightSpec, z) -> Fraction:
    """Half squared norm minus the base shift on the dilated charge lattice;
    equals (n/l) times the orbit polynomial at the pulled-back point."""
    z = tuple(Fraction(v) for v in z)
    if len(z) != spec.n:
        raise BadLength(f"need {spec.n} coordinates")
    r = Fraction(spec.n, spec.ell)
    t = tuple((zi + d) / r for zi, d in zip(z, dilation_offset(spec.n)))
    if any(v.denominator != 1 for v in t):
        raise DomainViolation(f"{z} is not on the dilated lattice")
    if not member(spec.domain(), tuple(int(v) for v in t)):
        raise DomainViolation(f"{z} pulls back outside the charge domain")
    return Fraction(1, 2) * sum(v * v for v in z) - dilation_shift(spec)
