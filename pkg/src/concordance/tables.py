"""Graded group tables from classical smoothing theory.

Static data used by every computation downstream:

* stable stems pi_n^s through n = 5 and the low-degree homotopy of mod-b
  Moore spectra (Toda's composition calculus),
* pi_k(Top/O) for k <= 20 -- Theta_k for k >= 5 by Kirby-Siebenmann,
* pi_k(G/O) for k <= 20 and the mod-4 formula for pi_k(G/Top),
* the images (with kernels and cokernels where pinned down) of
  precomposition by eta, eta^2, i o eta, and the Moore-spectrum lift
  eta~ on those groups.

Each entry carries a citation string naming its source or derivation
route.  Queries outside a table's validated range raise
:class:`TableRangeError`; silent zeros would corrupt direct sums
assembled from these values, so nothing is ever extrapolated.

All tables are immutable module-level data; lookups are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

from .abgroup import TRIVIAL, FinAbGroup, canonicalize, cyclic


class TableRangeError(LookupError):
    """A degree query outside the validated range of a table."""


@dataclass(frozen=True)
class TableEntry:
    group: FinAbGroup
    citation: str


@dataclass(frozen=True)
class GradedTable:
    """Degree-indexed groups with per-entry provenance."""

    name: str
    valid_range: tuple[int, int]
    entries: Mapping[int, TableEntry]

    def __post_init__(self):
        lo, hi = self.valid_range
        missing = [k for k in range(lo, hi + 1) if k not in self.entries]
        if missing:
            raise ValueError(f"table {self.name} is missing degrees {missing}")

    def entry(self, k: int) -> TableEntry:
        lo, hi = self.valid_range
        if not lo <= k <= hi:
            raise TableRangeError(f"{self.name} is tabulated for {lo} <= k <= {hi}, got {k}")
        return self.entries[k]

    def group(self, k: int) -> FinAbGroup:
        return self.entry(k).group

    def rows(self):
        lo, hi = self.valid_range
        for k in range(lo, hi + 1):
            e = self.entries[k]
            yield str(k), e.group, e.citation


@dataclass(frozen=True)
class MapEntry:
    """Image data for one graded piece of a map between the tables.

    ``kernel`` is the isomorphism type of the kernel in the source group
    and ``cokernel`` the type of target/image; either may be ``None``
    when the group structure does not force it and no derivation pins it
    down.
    """

    image: FinAbGroup
    kernel: FinAbGroup | None
    cokernel: FinAbGroup | None
    citation: str


@dataclass(frozen=True)
class MapImageTable:
    name: str
    valid_range: tuple[int, int]
    entries: Mapping[int, MapEntry]

    def entry(self, k: int) -> MapEntry:
        lo, hi = self.valid_range
        if not lo <= k <= hi:
            raise TableRangeError(f"{self.name} covers {lo} <= k <= {hi}, got {k}")
        return self.entries[k]

    def rows(self):
        lo, hi = self.valid_range
        for k in range(lo, hi + 1):
            e = self.entries[k]
            yield str(k), e.image, e.citation


def _g(*orders: int) -> FinAbGroup:
    return canonicalize(orders)


_Z = FinAbGroup(free_rank=1)


# ---------------------------------------------------------------------------
# Stable stems and Moore spectrum homotopy

_STEM_CITE = "stable stems through dimension 5 (Toda)"

PI_STABLE = GradedTable(
    "pi_stable",
    (0, 5),
    {
        0: TableEntry(_Z, "pi_0^s = Z"),
        1: TableEntry(_g(2), _STEM_CITE + ": Z/2 generated by eta"),
        2: TableEntry(_g(2), _STEM_CITE + ": Z/2 generated by eta^2"),
        3: TableEntry(_g(24), _STEM_CITE + ": Z/24"),
        4: TableEntry(TRIVIAL, _STEM_CITE),
        5: TableEntry(TRIVIAL, _STEM_CITE),
    },
)


def pi_stable(n: int) -> FinAbGroup:
    """pi_n^s for 0 <= n <= 5."""
    return PI_STABLE.group(n)


def pi_moore(b: int, n: int) -> FinAbGroup:
    """pi_n of the mod-b Moore spectrum, 0 <= n <= 5, b >= 2.

    The mapping cone of multiplication by b on the sphere spectrum; the
    cases branch on divisibility of b by 2, 4, and gcd(24, b).
    """
    if b < 2:
        raise ValueError(f"Moore spectrum coefficient must be >= 2, got {b}")
    if not 0 <= n <= 5:
        raise TableRangeError(f"pi_n of Moore spectra tabulated for 0 <= n <= 5, got {n}")
    if n == 0:
        return cyclic(b)
    if n == 1:
        return _g(2) if b % 2 == 0 else TRIVIAL
    if n == 2:
        if b % 4 == 2:
            return _g(4)
        if b % 4 == 0:
            return _g(2, 2)
        return TRIVIAL
    if n == 3:
        base = [gcd(24, b)]
        if b % 2 == 0:
            base.append(2)
        return _g(*base)
    if n == 4:
        return cyclic(gcd(24, b))
    return TRIVIAL


# ---------------------------------------------------------------------------
# pi_k(Top/O), pi_k(G/O), pi_k(G/Top)

_KM = "Kervaire-Milnor group Theta_k, identified with pi_k(Top/O) for k >= 5"

PI_TOP_O = GradedTable(
    "pi_top_o",
    (1, 20),
    {
        1: TableEntry(TRIVIAL, "pi_1(Top/O) = 0"),
        2: TableEntry(TRIVIAL, "pi_2(Top/O) = 0"),
        3: TableEntry(_g(2), "pi_3(Top/O) = Z/2 (Kirby-Siebenmann); note Theta_3 = 0"),
        4: TableEntry(TRIVIAL, "pi_4(Top/O) = 0"),
        5: TableEntry(TRIVIAL, _KM + "; Theta_5 = 0"),
        6: TableEntry(TRIVIAL, _KM + "; Theta_6 = 0"),
        7: TableEntry(_g(28), _KM + "; Theta_7 = Z/28"),
        8: TableEntry(_g(2), _KM + "; Theta_8 = Z/2"),
        9: TableEntry(_g(2, 2, 2), _KM + "; Theta_9 = (Z/2)^3"),
        10: TableEntry(_g(6), _KM + "; Theta_10 = Z/6"),
        11: TableEntry(_g(992), _KM + "; Theta_11 = Z/992"),
        12: TableEntry(TRIVIAL, _KM + "; Theta_12 = 0"),
        13: TableEntry(_g(3), _KM + "; Theta_13 = Z/3"),
        14: TableEntry(_g(2), _KM + "; Theta_14 = Z/2"),
        15: TableEntry(_g(2, 8128), _KM + "; Theta_15 = Z/2 + Z/8128"),
        16: TableEntry(_g(2), _KM + "; Theta_16 = Z/2"),
        17: TableEntry(_g(2, 2, 2, 2), _KM + "; Theta_17 = (Z/2)^4"),
        18: TableEntry(_g(2, 8), _KM + "; Theta_18 = Z/2 + Z/8"),
        19: TableEntry(_g(2, 130816), _KM + "; Theta_19 = Z/130816 + Z/2"),
        20: TableEntry(_g(24), _KM + "; Theta_20 = Z/24"),
    },
)


def pi_top_o(k: int) -> FinAbGroup:
    """pi_k(Top/O) for 1 <= k <= 20."""
    return PI_TOP_O.group(k)


def theta(n: int) -> FinAbGroup:
    """The group of homotopy n-spheres, n >= 5, via pi_n(Top/O).

    Theta_3 is deliberately not exposed here: pi_3(Top/O) = Z/2 is a
    table value distinct from Theta_3 = 0.
    """
    if n < 5:
        raise TableRangeError("Theta_n is exposed through pi_n(Top/O) only for n >= 5")
    return pi_top_o(n)


_GO = "surgery-theory table for pi_k(G/O)"

PI_G_O = GradedTable(
    "pi_g_o",
    (1, 20),
    {
        1: TableEntry(TRIVIAL, _GO),
        2: TableEntry(_g(2), _GO),
        3: TableEntry(TRIVIAL, _GO),
        4: TableEntry(_Z, _GO),
        5: TableEntry(TRIVIAL, _GO),
        6: TableEntry(_g(2), _GO),
        7: TableEntry(TRIVIAL, _GO),
        8: TableEntry(canonicalize([2], 1), _GO),
        9: TableEntry(_g(2, 2), _GO + " (two Z/2 summands)"),
        10: TableEntry(_g(6), _GO),
        11: TableEntry(TRIVIAL, _GO),
        12: TableEntry(_Z, _GO),
        13: TableEntry(_g(3), _GO),
        14: TableEntry(_g(2, 2), _GO + " (two Z/2 summands)"),
        15: TableEntry(_g(2), _GO),
        16: TableEntry(canonicalize([2], 1), _GO),
        17: TableEntry(_g(2, 2, 2), _GO + " (three Z/2 summands)"),
        18: TableEntry(_g(2, 8), _GO),
        19: TableEntry(_g(2), _GO),
        20: TableEntry(canonicalize([24], 1), _GO),
    },
)


def pi_g_o(k: int) -> FinAbGroup:
    """pi_k(G/O) for 1 <= k <= 20."""
    return PI_G_O.group(k)


def pi_g_top(k: int) -> FinAbGroup:
    """pi_k(G/Top): Z, 0, Z/2, 0 as k = 0, 1, 2, 3 mod 4 (Sullivan).

    Valid for every k >= 1; this is a closed formula, not a finite table.
    """
    if k < 1:
        raise TableRangeError(f"pi_k(G/Top) needs k >= 1, got {k}")
    m = k % 4
    if m == 0:
        return _Z
    if m == 2:
        return _g(2)
    return TRIVIAL


# ---------------------------------------------------------------------------
# Image of eta^*: pi_k(Top/O) -> pi_(k+1)(Top/O)
#
# Kernels and cokernels are stored alongside the image.  Where the
# source/target is cyclic or elementary abelian the subgroup of the
# forced order is unique; the three exceptions carry their own
# derivations in the citation.

_ETA = "image of precomposition by eta on pi_k(Top/O)"


def _zero_eta(k: int, target: FinAbGroup, source: FinAbGroup) -> MapEntry:
    return MapEntry(TRIVIAL, source, target, _ETA + f", trivial at k={k}")


ETA_STAR = MapImageTable(
    "eta_star",
    (1, 19),
    {
        1: _zero_eta(1, TRIVIAL, TRIVIAL),
        2: _zero_eta(2, _g(2), TRIVIAL),
        3: _zero_eta(3, TRIVIAL, _g(2)),
        4: _zero_eta(4, TRIVIAL, TRIVIAL),
        5: _zero_eta(5, TRIVIAL, TRIVIAL),
        6: _zero_eta(6, _g(28), TRIVIAL),
        7: _zero_eta(7, _g(2), _g(28)),
        8: MapEntry(_g(2), TRIVIAL, _g(2, 2), _ETA + ": Z/2 at k=8 (eta.epsilon class)"),
        9: MapEntry(_g(2), _g(2, 2), _g(3), _ETA + ": Z/2 at k=9 (eta.mu class)"),
        10: MapEntry(_g(2), _g(3), _g(496), _ETA + ": Z/2 at k=10"),
        11: _zero_eta(11, TRIVIAL, _g(992)),
        12: _zero_eta(12, _g(3), TRIVIAL),
        13: _zero_eta(13, _g(2), _g(3)),
        14: MapEntry(
            _g(2),
            TRIVIAL,
            _g(8128),
            _ETA + ": Z/2 at k=14 (eta.kappa class); the image has non-zero"
            " normal invariant, hence misses bP_16, forcing a cyclic cokernel",
        ),
        15: _zero_eta(15, _g(2), _g(2, 8128)),
        16: MapEntry(_g(2), TRIVIAL, _g(2, 2, 2), _ETA + ": Z/2 at k=16 (eta.eta* class)"),
        17: MapEntry(
            _g(2, 2),
            _g(2, 2),
            _g(4),
            _ETA + ": (Z/2)^2 at k=17, spanned by the classes of 4.nu* and"
            " eta.mu-bar inside Z/8{nu*} + Z/2{eta.mu-bar}",
        ),
        18: MapEntry(
            _g(2),
            _g(8),
            None,
            _ETA + ": Z/2 at k=18; the kernel is the nu*-cyclic summand Z/8;"
            " the embedding of the image in Theta_19 is not pinned down",
        ),
        19: _zero_eta(19, _g(24), _g(2, 130816)),
    },
)


def eta_star_image(k: int) -> FinAbGroup:
    """Image of eta^*: pi_k(Top/O) -> pi_(k+1)(Top/O), 1 <= k <= 19."""
    return ETA_STAR.entry(k).image


def eta_star_kernel(k: int) -> FinAbGroup:
    """Kernel of eta^* inside pi_k(Top/O)."""
    kernel = ETA_STAR.entry(k).kernel
    assert kernel is not None  # stored for every tabulated degree
    return kernel


def eta_star_cokernel(k: int) -> FinAbGroup | None:
    """Type of pi_(k+1)(Top/O) / im(eta^*); None where not pinned down (k=18)."""
    return ETA_STAR.entry(k).cokernel


# Image of (eta^2)^*: pi_k(Top/O) -> pi_(k+2)(Top/O)

_ETA_SQ = "image of precomposition by eta^2 on pi_k(Top/O)"

ETA_SQ = MapImageTable(
    "eta_sq",
    (7, 19),
    {
        k: MapEntry(
            _g(2) if k in (9, 16, 17) else TRIVIAL,
            None,
            None,
            _ETA_SQ + (": Z/2" if k in (9, 16, 17) else ": zero"),
        )
        for k in range(7, 20)
    },
)


def eta_sq_image(k: int) -> FinAbGroup:
    """Image of (eta^2)^*: pi_k(Top/O) -> pi_(k+2)(Top/O), 7 <= k <= 19."""
    return ETA_SQ.entry(k).image


# Image of (i o eta)^*: [Sigma^(3+k) M(Z/2^r), Top/O] -> pi_(4+k)(Top/O),
# independent of r; i is the bottom-cell inclusion of the Moore spectrum.

_I_ETA = "image of (bottom-cell inclusion o eta)^* into pi_(4+k)(Top/O)"


def _i_eta_group(k: int) -> FinAbGroup:
    if k == 14:
        return _g(2, 2)
    if k in (5, 6, 7, 11, 13, 15):
        return _g(2)
    return TRIVIAL


I_ETA = MapImageTable(
    "i_eta",
    (1, 16),
    {k: MapEntry(_i_eta_group(k), None, None, _I_ETA) for k in range(1, 17)},
)


def i_eta_image(k: int) -> FinAbGroup:
    """Image of (i o eta)^* into pi_(4+k)(Top/O), 1 <= k <= 16; r-independent."""
    return I_ETA.entry(k).image


# ---------------------------------------------------------------------------
# Image of (eta~_{2^r})^*: [Sigma^(3+k) M(Z/2^r), Top/O] -> pi_(5+k)(Top/O)
#
# eta~_{2^r} is the lift of eta to the mod-2^r Moore spectrum; this is
# the attaching-map datum of non-spin 5-manifolds whose w_2 is carried
# by torsion.  The image branches on r at k = 4 and k = 6.

_ETA_TILDE = "image of (eta~_{2^r})^* into pi_(5+k)(Top/O)"


def eta_tilde_image(k: int, r: int) -> FinAbGroup:
    """Image of (eta~_{2^r})^* into pi_(5+k)(Top/O); k in 1..10, r >= 1."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if not 1 <= k <= 10:
        raise TableRangeError(f"eta~ image tabulated for 1 <= k <= 10, got {k}")
    if k in (1, 2, 3, 7, 8, 9):
        return TRIVIAL
    if k in (5, 10):
        return _g(2)
    if k == 4:
        return _g(2, 2) if r <= 2 else _g(2)
    # k == 6
    return _g(4) if r == 1 else _g(2)


def eta_tilde_citation(k: int, r: int) -> str:
    if k == 4:
        return _ETA_TILDE + (": (Z/2)^2 for r <= 2" if r <= 2 else ": Z/2 for r >= 3")
    if k == 6:
        return _ETA_TILDE + (": Z/4 for r = 1" if r == 1 else ": Z/2 for r >= 2")
    if k in (5, 10):
        return _ETA_TILDE + f": Z/2 at k={k}"
    return _ETA_TILDE + f": trivial at k={k}"


def eta_tilde_kernel_override(k: int, r: int) -> FinAbGroup | None:
    """Stored kernel types for (eta~_{2^r})^* where order counting alone
    leaves more than one candidate.

    k=4, r>=3: the map factors through the comparison map to the mod-2
    Moore bracket, whose kernel is cyclic of order 4.
    k=5, r=1: the kernel meets the image of pi_9(Top/O) in exactly
    (Z/2)^2, ruling out the elementary-abelian candidate.
    """
    if k == 4 and r >= 3:
        return _g(4)
    if k == 5 and r == 1:
        return _g(2, 4)
    return None


def eta_tilde_cokernel_override(k: int, r: int) -> FinAbGroup | None:
    """Stored cokernel types of pi_(5+k)/im(eta~^*) not forced by order.

    k=10: the image coincides with the eta-image in Theta_15 (the
    eta.kappa class), which misses bP_16; the quotient is cyclic.
    """
    if k == 10:
        return _g(8128)
    return None


# ---------------------------------------------------------------------------
# Registry for table dumps

TABLES: dict[str, GradedTable | MapImageTable] = {
    t.name: t for t in (PI_STABLE, PI_TOP_O, PI_G_O, ETA_STAR, ETA_SQ, I_ETA)
}


def pi_g_top_rows(up_to: int = 20):
    for k in range(1, up_to + 1):
        yield str(k), pi_g_top(k), "pi_k(G/Top) by the mod-4 periodicity formula"


def eta_tilde_rows():
    for k in range(1, 11):
        branches = [1, 2, 3] if k in (4, 6) else [1]
        for r in branches:
            label = f"k={k}" if len(branches) == 1 else f"k={k},r={'1' if r == 1 else ('2' if r == 2 else '>=3')}"
            yield label, eta_tilde_image(k, r), eta_tilde_citation(k, r)
