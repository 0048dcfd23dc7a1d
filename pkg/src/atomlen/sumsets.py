"""Difference and sum sets in finite abelian groups, Hall decompositions,
and the permutation / signed-permutation orbit sumsets."""
from __future__ import annotations

from dataclasses import dataclass

from . import budget
from .errors import BadLength, BadSum, NotPrime, SearchFailed


@dataclass(frozen=True)
class OrbitSet:
    """Explicit orbit of (1, ..., n) in (Z/mZ)^n under a family of
    coordinate symmetries: "A" permutes coordinates, "C" also flips signs."""

    family: str
    n: int
    modulus: int
    elements: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.elements)


def hall_decompose(m: int, d) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Enumeration pair (a, b) of Z/mZ with b_i - a_i = d_i for all i.

    Exists for every zero-sum d-vector; found by backtracking (columns left
    to right, unused a-values tried in ascending order, so the output is
    deterministic).
    """
    d = tuple(x % m for x in d)
    if len(d) != m:
        raise BadLength(f"need {m} differences, got {len(d)}")
    if sum(d) % m != 0:
        raise BadSum(f"differences sum to {sum(d) % m} mod {m}, not 0")

    a = [0] * m
    used_a = bytearray(m)
    used_b = bytearray(m)

    def rec(i: int) -> bool:
        if i == m:
            return True
        for v in range(m):
            if used_a[v]:
                continue
            w = (v + d[i]) % m
            if used_b[w]:
                continue
            used_a[v] = used_b[w] = 1
            a[i] = v
            if rec(i + 1):
                return True
            used_a[v] = used_b[w] = 0
        return False

    if not rec(0):
        raise SearchFailed(f"no decomposition for zero-sum d={d} mod {m}")
    b = tuple((v + di) % m for v, di in zip(a, d))
    return tuple(a), b


def _check_homogeneous(vectors) -> tuple[int, int]:
    vectors = list(vectors)
    if not vectors:
        raise BadLength("empty set")
    length = len(vectors[0])
    if any(len(v) != length for v in vectors):
        raise BadLength("vectors of mixed lengths")
    return len(vectors), length


def difference_set(A, m: int) -> frozenset[tuple[int, ...]]:
    """Exact set {a - a' mod m}."""
    A = [tuple(v) for v in A]
    size, _ = _check_homogeneous(A)
    budget.check(size * size, what="pairwise differences")
    out = set()
    for a in A:
        for b in A:
            out.add(tuple((x - y) % m for x, y in zip(a, b)))
    return frozenset(out)


def sumset(A, m: int) -> frozenset[tuple[int, ...]]:
    """Exact set {a + a' mod m}."""
    A = [tuple(v) for v in A]
    size, _ = _check_homogeneous(A)
    budget.check(size * size, what="pairwise sums")
    out = set()
    for a in A:
        for b in A:
            out.add(tuple((x + y) % m for x, y in zip(a, b)))
    return frozenset(out)


def build_orbit(family: str, n: int, modulus: int | None = None) -> OrbitSet:
    """Orbit of (1, ..., n) under adjacent swaps ("A"), plus a sign flip of
    the last coordinate ("C"), computed by breadth-first closure.

    Defaults: modulus n for family A, 2n+1 for family C.  At the default
    modulus the size is checked against n! (A) and 2^n n! (C).
    """
    if family not in ("A", "C"):
        raise BadLength(f"unknown family {family!r}")
    default = n if family == "A" else 2 * n + 1
    m = default if modulus is None else modulus
    start = tuple(i % m for i in range(1, n + 1))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n - 1):
                w = v[:i] + (v[i + 1], v[i]) + v[i + 2:]
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
            if family == "C":
                w = v[:-1] + ((-v[-1]) % m,)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    orbit = OrbitSet(family, n, m, frozenset(seen))
    if modulus is None or modulus == default:
        expected = _factorial(n) if family == "A" else 2 ** n * _factorial(n)
        if len(orbit) != expected:
            raise SearchFailed(
                f"orbit {family},{n} mod {m} has size {len(orbit)}, "
                f"expected {expected}")
    return orbit


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def zero_sum_subgroup(n: int, m: int) -> frozenset[tuple[int, ...]]:
    """All vectors in (Z/mZ)^n with coordinate sum 0; size m^(n-1)."""
    budget.check(m ** (n - 1), what="zero-sum subgroup enumeration")
    out = []

    def rec(prefix, s):
        if len(prefix) == n - 1:
            out.append(tuple(prefix + [(-s) % m]))
            return
        for v in range(m):
            rec(prefix + [v], s + v)

    rec([], 0)
    return frozenset(out)


@dataclass(frozen=True)
class SumsetCertificate:
    family: str
    n: int
    modulus: int
    equal: bool
    missing: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "modulus": self.modulus,
                "equal": self.equal,
                "missing": [list(v) for v in self.missing]}


def verify_sumset_equality(family: str, n: int,
                           modulus: int | None = None) -> SumsetCertificate:
    """Check the difference-set identity for the orbit family.

    Family A: orbit minus itself must be the zero-sum subgroup of (Z/nZ)^n.
    Family C: orbit minus itself must be all of (Z/(2n+1)Z)^n (or of the
    overridden modulus group).  The certificate lists missing elements.
    """
    orbit = build_orbit(family, n, modulus)
    m = orbit.modulus
    diffs = difference_set(orbit.elements, m)
    if family == "A":
        target = zero_sum_subgroup(n, m)
    else:
        budget.check(m ** n, what="full group enumeration")
        target = _full_group(n, m)
    missing = tuple(sorted(target - diffs))
    if not diffs <= target:
        # differences always live in the target group for family A by the
        # zero-sum invariant; anything else is a bug
        raise SearchFailed(f"difference set escapes target for {family},{n}")
    return SumsetCertificate(family, n, m, not missing, missing)


def _full_group(n: int, m: int) -> frozenset[tuple[int, ...]]:
    import itertools

    return frozenset(itertools.product(range(m), repeat=n))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def c_difference_witness(n: int, a) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Write a in (Z/pZ)^n, p = 2n+1 prime, as w1 - w2 with both factors in
    the signed-permutation orbit of (1, ..., n).

    The orbit consists exactly of the vectors with nonzero, pairwise
    +/- distinct coordinates, so it is enough to backtrack over x with
    x_i != 0, x_i != +/-x_j and the same for x - a; then w1 = x, w2 = x - a.
    A failure would contradict the existence theorem, so it raises.
    """
    p = 2 * n + 1
    if not _is_prime(p):
        raise NotPrime(f"2n+1 = {p} is not prime")
    a = tuple(v % p for v in a)
    if len(a) != n:
        raise BadLength(f"need {n} coordinates, got {len(a)}")

    x = [0] * n
    used_x = bytearray(p)   # +/- classes 1..n
    used_y = bytearray(p)

    def cls(v: int) -> int:
        return min(v, p - v)

    def rec(i: int) -> bool:
        if i == n:
            return True
        for v in range(1, p):
            if used_x[cls(v)]:
                continue
            w = (v - a[i]) % p
            if w == 0 or used_y[cls(w)]:
                continue
            used_x[cls(v)] = used_y[cls(w)] = 1
            x[i] = v
            if rec(i + 1):
                return True
            used_x[cls(v)] = used_y[cls(w)] = 0
        return False

    if not rec(0):
        raise SearchFailed(f"no difference witness for {a} mod {p}")
    w1 = tuple(x)
    w2 = tuple((v - ai) % p for v, ai in zip(x, a))
    return w1, w2
