"""Exact arithmetic on finitely generated abelian groups.

Every group is stored in invariant-factor canonical form: a free rank
together with a chain of torsion coefficients d1 | d2 | ... | dt, each
di >= 2.  Canonical form makes equality of isomorphism types a plain
``==`` on values:

>>> canonicalize([4, 6]) == canonicalize([2, 12])
True
>>> canonicalize([2, 4]) == canonicalize([8])
False

Besides canonicalization this module computes direct sums, kernels and
cokernels of multiplication maps, and solves the subgroup/quotient
recognition problems needed for extension bookkeeping: given a short
exact sequence 0 -> A -> B -> C -> 0 with A and C known, the middle
group is only determined up to a finite set of candidates, which
``enumerate_extensions`` finds by exhaustive search.

All values are immutable and all functions are pure, so everything here
is safe to use concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod


class ExtensionBudgetError(Exception):
    """Raised when an extension enumeration would exceed its order budget."""


# Hard cap on brute-force subgroup walks, independent of the order budget.
# Exceeding it means the caller asked for an enumeration that is not
# desk-scale; we refuse rather than silently truncate.
_SUBGROUP_WORK_LIMIT = 500_000


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    result: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            result[p] = e
        p += 1 if p == 2 else 2
    if n > 1:
        result[n] = 1
    return result


@dataclass(frozen=True)
class FinAbGroup:
    """A finitely generated abelian group in invariant-factor form.

    ``torsion`` is the chain (d1, ..., dt) with di | d(i+1) and di >= 2.
    The trivial group is ``FinAbGroup(0, ())``.  Construct through
    :func:`canonicalize` unless the chain is already known to be valid.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"not a divisibility chain: {a} does not divide {b}")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @staticmethod
    def from_dict(data: dict) -> "FinAbGroup":
        return FinAbGroup(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))


TRIVIAL = FinAbGroup()


def cyclic(n: int) -> FinAbGroup:
    """The cyclic group Z/n (n >= 1); Z/1 is the trivial group."""
    return canonicalize([n])


def free(rank: int) -> FinAbGroup:
    return FinAbGroup(free_rank=rank)


def canonicalize(summands, free_rank: int = 0) -> FinAbGroup:
    """Invariant-factor form of (+) Z/n over ``summands`` plus a free part.

    Order-1 summands are dropped; an order of 0 is rejected (a zero
    "cyclic order" always signals malformed input upstream, never Z).

    >>> canonicalize([2, 56]).torsion
    (2, 56)
    >>> canonicalize([4, 6]).torsion
    (2, 12)
    >>> canonicalize([], 0).is_trivial
    True
    """
    by_prime: dict[int, list[int]] = {}
    for n in summands:
        if n == 0:
            raise ValueError("cyclic order 0 is not allowed; use free_rank for Z summands")
        if n < 0:
            raise ValueError(f"cyclic order must be positive, got {n}")
        for p, e in _factorint(n).items():
            by_prime.setdefault(p, []).append(e)
    for exps in by_prime.values():
        exps.sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    # The i-th largest invariant factor collects the i-th largest
    # exponent of every prime.
    factors = []
    for i in range(depth):
        d = prod(p ** exps[i] for p, exps in by_prime.items() if i < len(exps))
        factors.append(d)
    return FinAbGroup(free_rank, tuple(reversed(factors)))


def direct_sum(*groups: FinAbGroup) -> FinAbGroup:
    """Canonical form of the direct sum; commutative and associative.

    >>> str(direct_sum(cyclic(2), cyclic(56)))
    'Z/2 ⊕ Z/56'
    >>> direct_sum(cyclic(4), cyclic(14)).torsion
    (2, 28)
    """
    orders: list[int] = []
    rank = 0
    for g in groups:
        orders.extend(g.torsion)
        rank += g.free_rank
    return canonicalize(orders, rank)


def order(g: FinAbGroup):
    """Number of elements; ``float('inf')`` when the free rank is positive.

    >>> order(canonicalize([2, 56]))
    112
    >>> order(TRIVIAL)
    1
    """
    if g.free_rank > 0:
        return float("inf")
    return prod(g.torsion)


def mult_kernel(g: FinAbGroup, n: int) -> FinAbGroup:
    """Kernel of multiplication by n on g.

    Multiplication by n acts diagonally on the invariant factors, so the
    kernel is (+) Z/gcd(di, n).  On a free summand the kernel of a
    non-zero multiple is trivial.

    >>> mult_kernel(cyclic(992), 2) == cyclic(2)
    True
    >>> mult_kernel(cyclic(992), 64) == cyclic(32)
    True
    """
    if n == 0:
        raise ValueError("multiplication by 0 has the whole group as kernel; rejected")
    return canonicalize([gcd(d, n) for d in g.torsion])


def mult_cokernel(g: FinAbGroup, n: int) -> FinAbGroup:
    """Cokernel g/nG of multiplication by n.

    Per invariant factor Z/gcd(di, n), plus (Z/n)^free_rank.

    >>> mult_cokernel(cyclic(28), 2) == cyclic(2)
    True
    >>> mult_cokernel(cyclic(28), 4) == cyclic(4)
    True
    >>> mult_cokernel(cyclic(7), 7) == cyclic(7)
    True
    """
    if n == 0:
        raise ValueError("multiplication by 0 rejected")
    return canonicalize([gcd(d, n) for d in g.torsion] + [abs(n)] * g.free_rank)


# ---------------------------------------------------------------------------
# Primary decomposition


@dataclass(frozen=True)
class PrimaryDecomposition:
    """Prime-power form of a group: a multiset of (prime, exponent) summands.

    Converting to invariant factors and back is the identity on canonical
    forms; this is the display form for expressions like "Z/2 ⊕ Z/2 ⊕ Z/4".
    """

    free_rank: int
    summands: tuple[tuple[int, int], ...]  # sorted (prime, exponent) pairs


def primary_decomposition(g: FinAbGroup) -> PrimaryDecomposition:
    pairs = []
    for d in g.torsion:
        for p, e in _factorint(d).items():
            pairs.append((p, e))
    return PrimaryDecomposition(g.free_rank, tuple(sorted(pairs)))


def from_primary(pd: PrimaryDecomposition) -> FinAbGroup:
    return canonicalize([p ** e for p, e in pd.summands], pd.free_rank)


def _prime_exponents(g: FinAbGroup) -> dict[int, tuple[int, ...]]:
    """Map prime -> descending exponent partition of the p-primary part."""
    by_prime: dict[int, list[int]] = {}
    for d in g.torsion:
        for p, e in _factorint(d).items():
            by_prime.setdefault(p, []).append(e)
    return {p: tuple(sorted(v, reverse=True)) for p, v in sorted(by_prime.items())}


def _from_prime_exponents(parts: dict[int, tuple[int, ...]]) -> FinAbGroup:
    orders = [p ** e for p, exps in parts.items() for e in exps]
    return canonicalize(orders)


# ---------------------------------------------------------------------------
# Enumeration of p-groups and of extensions


def _partitions(n: int, cap: int | None = None):
    """Descending partitions of n with parts <= cap."""
    if n == 0:
        yield ()
        return
    if cap is None or cap > n:
        cap = n
    for first in range(cap, 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n: int) -> frozenset[FinAbGroup]:
    """All abelian groups of order n, one per isomorphism type.

    >>> sorted(str(g) for g in abelian_groups_of_order(4))
    ['Z/2 ⊕ Z/2', 'Z/4']
    """
    if n < 1:
        raise ValueError("order must be positive")
    per_prime = []
    for p, e in _factorint(n).items():
        per_prime.append([(p, part) for part in _partitions(e)])
    groups = set()
    for combo in itertools.product(*per_prime):
        orders = [p ** e for p, part in combo for e in part]
        groups.add(canonicalize(orders))
    return frozenset(groups) if n > 1 else frozenset({TRIVIAL})


def _partition_from_ge_counts(ge_counts: list[int]) -> tuple[int, ...]:
    """Partition whose number of parts >= j is ge_counts[j-1]."""
    n_parts = ge_counts[0] if ge_counts else 0
    parts = []
    for idx in range(n_parts):
        e = 0
        for j, ge in enumerate(ge_counts, start=1):
            if ge > idx:
                e = j
        parts.append(e)
    return tuple(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def _p_sub_quot_types(p: int, exps: tuple[int, ...], sub_size: int):
    """All (subgroup type, quotient type) pairs over subgroups of a p-group.

    The group is (+) Z/p^e for e in ``exps``; only subgroups of order
    ``sub_size`` are reported.  Types are descending exponent partitions.
    Subgroups are walked by closing generator sets, deduplicating by the
    underlying element set; a finite abelian p-group is pinned down by its
    p^j-torsion counts, which is how both types are read off.
    """
    orders = tuple(p ** e for e in exps if e > 0)
    total = prod(orders)
    canon = tuple(sorted((e for e in exps if e > 0), reverse=True))
    if sub_size == 1:
        return frozenset({((), canon)})
    if sub_size == total:
        return frozenset({(canon, ())})
    if total % sub_size != 0 or sub_size > total:
        return frozenset()
    if total > _SUBGROUP_WORK_LIMIT:
        raise ExtensionBudgetError(f"p-group of order {total} too large to walk")

    elements = list(itertools.product(*[range(o) for o in orders]))
    zero = tuple(0 for _ in orders)
    e_max = max(exps, default=0)

    def add(x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, orders))

    def closure(base: frozenset, x) -> frozenset:
        # <base, x> as a set: translates of base by multiples of x
        out = set(base)
        cur = x
        while cur != zero:
            out.update(add(b, cur) for b in base)
            cur = add(cur, x)
        return frozenset(out)

    def log_p(c: int) -> int:
        s = 0
        while p ** s < c:
            s += 1
        return s

    def member_type(members: frozenset) -> tuple[int, ...]:
        ge = []
        prev = 0
        for j in range(1, e_max + 1):
            q = p ** j
            c = sum(1 for x in members if all((a * q) % o == 0 for a, o in zip(x, orders)))
            s = log_p(c)
            ge.append(s - prev)
            prev = s
        return _partition_from_ge_counts(ge)

    def quotient_type(members: frozenset) -> tuple[int, ...]:
        size = len(members)
        ge = []
        prev = 0
        for j in range(1, e_max + 1):
            q = p ** j
            c = sum(
                1
                for x in elements
                if tuple((a * q) % o for a, o in zip(x, orders)) in members
            )
            s = log_p(c // size)
            ge.append(s - prev)
            prev = s
        return _partition_from_ge_counts(ge)

    results = set()
    seen = {frozenset({zero})}
    frontier = [frozenset({zero})]
    work = 0
    while frontier:
        nxt = []
        for H in frontier:
            if len(H) == sub_size:
                results.add((member_type(H), quotient_type(H)))
                continue
            for x in elements:
                if x in H:
                    continue
                H2 = closure(H, x)
                work += len(H2)
                if work > _SUBGROUP_WORK_LIMIT:
                    raise ExtensionBudgetError("subgroup enumeration exceeded work limit")
                if len(H2) <= sub_size and H2 not in seen:
                    seen.add(H2)
                    nxt.append(H2)
        frontier = nxt
    return frozenset(results)


def _p_part_exps(g: FinAbGroup, p: int) -> tuple[int, ...]:
    return _prime_exponents(g).get(p, ())


def quotient_types(big: FinAbGroup, sub: FinAbGroup) -> frozenset[FinAbGroup]:
    """Isomorphism types of big/H over all subgroups H of big isomorphic to sub.

    Both groups finite.  Empty result means big has no subgroup of type sub.
    """
    if not (big.is_finite and sub.is_finite):
        raise ValueError("quotient_types needs finite groups")
    per_prime: list[set[tuple[int, tuple[int, ...]]]] = []
    primes = set(_prime_exponents(big)) | set(_prime_exponents(sub))
    for p in sorted(primes):
        b_exps = _p_part_exps(big, p)
        s_exps = _p_part_exps(sub, p)
        size = p ** sum(s_exps)
        options = {
            (p, quot)
            for stype, quot in _p_sub_quot_types(p, b_exps, size)
            if stype == s_exps
        }
        if not options:
            return frozenset()
        per_prime.append(options)
    out = set()
    for combo in itertools.product(*per_prime):
        out.add(_from_prime_exponents({p: exps for p, exps in combo}))
    return frozenset(out)


def kernel_types(source: FinAbGroup, image: FinAbGroup) -> frozenset[FinAbGroup]:
    """Isomorphism types of ker f over surjections f: source -> image.

    By Pontryagin duality for finite abelian groups the kernels of
    surjections onto ``image`` have the same types as the quotients by
    subgroups isomorphic to ``image``, so this walks the (usually much
    smaller) subgroups of type ``image``.  Empty means no surjection
    exists.
    """
    return quotient_types(source, image)


def enumerate_extensions(
    sub: FinAbGroup, quot: FinAbGroup, budget: int = 10 ** 6
) -> frozenset[FinAbGroup]:
    """All abelian B admitting a subgroup iso to ``sub`` with B/sub iso ``quot``.

    Brute force, prime by prime: the candidate p-parts are the partitions
    of the combined exponent, each tested by walking its subgroups of
    order |sub_p|.  Exceeding ``budget`` (on |sub|*|quot|) raises
    :class:`ExtensionBudgetError` rather than truncating.

    >>> sorted(str(b) for b in enumerate_extensions(cyclic(2), cyclic(2)))
    ['Z/2 ⊕ Z/2', 'Z/4']
    """
    if not (sub.is_finite and quot.is_finite):
        raise ValueError("extension enumeration needs finite groups")
    n = order(sub) * order(quot)
    if n > budget:
        raise ExtensionBudgetError(f"|sub|*|quot| = {n} exceeds budget {budget}")
    primes = set(_prime_exponents(sub)) | set(_prime_exponents(quot))
    per_prime: list[list[tuple[int, tuple[int, ...]]]] = []
    for p in sorted(primes):
        a_exps = _p_part_exps(sub, p)
        c_exps = _p_part_exps(quot, p)
        e_total = sum(a_exps) + sum(c_exps)
        # A sits inside B with quotient C iff C sits inside B with
        # quotient A (duality for finite abelian groups), so walk
        # subgroups of the smaller order.
        small, other = (a_exps, c_exps) if sum(a_exps) <= sum(c_exps) else (c_exps, a_exps)
        size = p ** sum(small)
        admissible = []
        for b_part in _partitions(e_total):
            # Cheap necessary conditions before walking subgroups: both the
            # subgroup and the quotient have rank and exponent bounded by B's.
            if len(a_exps) > len(b_part) or len(c_exps) > len(b_part):
                continue
            top = b_part[0] if b_part else 0
            if (a_exps and a_exps[0] > top) or (c_exps and c_exps[0] > top):
                continue
            pairs = _p_sub_quot_types(p, b_part, size)
            if (small, other) in pairs:
                admissible.append((p, b_part))
        per_prime.append(admissible)
    out = set()
    for combo in itertools.product(*per_prime):
        out.add(_from_prime_exponents({p: exps for p, exps in combo}))
    return frozenset(out)
