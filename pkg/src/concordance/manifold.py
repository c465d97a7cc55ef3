"""Homology-profile input model and stable wedge decompositions.

A :class:`ManifoldSpec` records what the computations actually depend
on: dimension (4 or 5), spin or not, the free ranks of H_1 and H_2, the
prime-power torsion of H_2, and -- for non-spin 5-manifolds -- which of
the two possible top-cell attaching types to use.

``stable_splitting`` turns a valid profile into the formal wedge of
stable summands (spheres, suspended Moore spectra, a suspended CP^2, or
the cone on the Moore-spectrum eta lift) that the manifold is stably
homotopy equivalent to:

* 4-dim spin:      S^4 v m(S^1 v S^3) v (Sigma M(Z/b) v Sigma^2 M(Z/b))_b v d S^2
* 4-dim non-spin:  CP^2 in place of S^4, consuming one S^2
* 5-dim spin:      S^5 v d(S^2 v S^3) v (Sigma^2 M(Z/p^r))_j
* 5-dim non-spin:  either Sigma CP^2 (consuming an S^3) or
                   Cone(eta~_{2^r}) on the smallest 2-power Moore piece

Splittings are deterministic: equal specs give equal summand multisets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from collections import Counter

from .abgroup import TRIVIAL, FinAbGroup, canonicalize, direct_sum
from ._primes import is_prime_power, prime_power_parts

SPHERE_ETA = "sphere_eta"
MOORE_ETA_TILDE = "moore_eta_tilde"
AUTO = "auto"
_ATTACHING_CHOICES = (AUTO, SPHERE_ETA, MOORE_ETA_TILDE)

_SPEC_FIELDS = {
    "dimension",
    "spin",
    "h1_free_rank",
    "h2_free_rank",
    "h2_torsion",
    "nonspin_attaching",
}


class SpecFormatError(ValueError):
    """A spec file or mapping that cannot be parsed into a ManifoldSpec."""


class SpecValidationError(ValueError):
    """Raised when an operation is asked to run on an invalid spec."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class ManifoldSpec:
    """Homology profile plus spin/attaching data for a 4- or 5-manifold."""

    dimension: int
    spin: bool
    h1_free_rank: int = 0
    h2_free_rank: int = 0
    h2_torsion: tuple[int, ...] = ()
    nonspin_attaching: str = AUTO

    def __post_init__(self):
        object.__setattr__(self, "h2_torsion", tuple(self.h2_torsion))

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "spin": self.spin,
            "h1_free_rank": self.h1_free_rank,
            "h2_free_rank": self.h2_free_rank,
            "h2_torsion": list(self.h2_torsion),
            "nonspin_attaching": self.nonspin_attaching,
        }


CP2_SPEC = ManifoldSpec(dimension=4, spin=False, h2_free_rank=1)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(spec: ManifoldSpec) -> ValidationReport:
    """Check a spec against the hypotheses the splitting rules assume.

    Violations are fatal for downstream computation and are never
    silently repaired.  Warnings flag 5-dimensional torsion profiles
    that do not look like a Smale-Barden manifold's paired torsion; the
    splitting rules do not depend on realizability, so these stay
    non-fatal.
    """
    violations = []
    warnings = []
    if spec.dimension not in (4, 5):
        violations.append(f"dimension must be 4 or 5, got {spec.dimension}")
    if spec.h1_free_rank < 0 or spec.h2_free_rank < 0:
        violations.append("free ranks must be non-negative")
    if spec.nonspin_attaching not in _ATTACHING_CHOICES:
        violations.append(
            f"nonspin_attaching must be one of {_ATTACHING_CHOICES}, got {spec.nonspin_attaching!r}"
        )
    for b in spec.h2_torsion:
        if b < 2 or not is_prime_power(b):
            violations.append(f"torsion coefficient {b} is not a prime power >= 2")

    if spec.dimension == 5 and spec.h1_free_rank != 0:
        violations.append("a simply connected 5-manifold has H_1 = 0; h1_free_rank must be 0")

    if spec.dimension == 4 and not spec.spin and spec.h2_free_rank < 1:
        violations.append(
            "a non-spin 4-manifold needs h2_free_rank >= 1: w_2 reduces an"
            " integral class, so the eta attaching map lands on a free S^2 factor"
        )

    has_2_torsion = any(b % 2 == 0 for b in spec.h2_torsion)
    if spec.nonspin_attaching != AUTO:
        if spec.spin or spec.dimension != 5:
            violations.append("nonspin_attaching overrides apply only to non-spin 5-manifolds")
        elif spec.nonspin_attaching == MOORE_ETA_TILDE and not has_2_torsion:
            violations.append("moore_eta_tilde attaching needs a 2-power torsion coefficient")
        elif spec.nonspin_attaching == SPHERE_ETA and spec.h2_free_rank < 1:
            violations.append("sphere_eta attaching consumes an S^3; needs h2_free_rank >= 1")

    if (
        spec.dimension == 5
        and not spec.spin
        and not has_2_torsion
        and spec.h2_free_rank < 1
    ):
        violations.append(
            "a non-spin simply connected 5-manifold needs 2-torsion or a free"
            " H_2 class to carry w_2"
        )

    if spec.dimension == 5 and spec.h2_torsion and not violations:
        counts = Counter(spec.h2_torsion)
        odd_unpaired = [b for b, c in counts.items() if c % 2 and b % 2 == 1]
        even_unpaired = [b for b, c in counts.items() if c % 2 and b % 2 == 0]
        if odd_unpaired or len(even_unpaired) > 1:
            warnings.append(
                "torsion profile is not paired in the Smale-Barden pattern;"
                " accepted, since the splitting rules do not require realizability"
            )

    return ValidationReport(tuple(violations), tuple(warnings))


def ensure_valid(spec: ManifoldSpec) -> None:
    report = validate(spec)
    if not report.ok:
        raise SpecValidationError(report.violations)


def resolve_attaching(spec: ManifoldSpec) -> str:
    """Concrete attaching type for a non-spin 5-manifold.

    ``auto`` picks the Moore lift whenever 2-torsion is present (the
    inertia formulas key on the least 2-power exponent in that case)
    and the sphere type otherwise; an explicit override is honored.
    """
    if spec.nonspin_attaching != AUTO:
        return spec.nonspin_attaching
    if any(b % 2 == 0 for b in spec.h2_torsion):
        return MOORE_ETA_TILDE
    return SPHERE_ETA


def min_two_exponent(spec: ManifoldSpec) -> int:
    """Least r with Z/2^r among the torsion coefficients."""
    rs = [e for (p, e) in (prime_power_parts(b) for b in spec.h2_torsion) if p == 2]
    if not rs:
        raise ValueError("spec has no 2-power torsion")
    return min(rs)


# ---------------------------------------------------------------------------
# Summand types


@dataclass(frozen=True)
class Sphere:
    n: int

    def __str__(self):
        return f"S^{self.n}"


@dataclass(frozen=True)
class SuspMoore:
    """Sigma^s M(Z/b): reduced homology Z/b in degree s."""

    b: int
    s: int

    def __str__(self):
        return f"Σ^{self.s} M(Z/{self.b})"


@dataclass(frozen=True)
class SuspCP2:
    """Sigma^s CP^2: reduced homology Z in degrees s+2 and s+4."""

    s: int

    def __str__(self):
        return f"Σ^{self.s} CP^2" if self.s else "CP^2"


@dataclass(frozen=True)
class ConeEtaTilde:
    """Cone(eta~_{2^r}): homology Z/2^r in degree 2 and Z in degree 5."""

    r: int

    def __str__(self):
        return f"Cone(η~_{2 ** self.r})"


Summand = Sphere | SuspMoore | SuspCP2 | ConeEtaTilde


def _summand_key(s: Summand):
    return (type(s).__name__, tuple(sorted(vars(s).items())))


@dataclass(frozen=True)
class StableSplitting:
    summands: tuple[Summand, ...]

    def __str__(self):
        return " ∨ ".join(str(s) for s in self.summands) if self.summands else "(point)"

    def counts(self) -> Counter:
        return Counter(self.summands)


def stable_splitting(spec: ManifoldSpec) -> StableSplitting:
    """The stable wedge decomposition of a valid spec.

    Deterministic; summands come out in a fixed canonical order.
    """
    ensure_valid(spec)
    m, d = spec.h1_free_rank, spec.h2_free_rank
    torsion = sorted(spec.h2_torsion)
    out: list[Summand] = []

    if spec.dimension == 4:
        if spec.spin:
            out.append(Sphere(4))
            sphere2_count = d
        else:
            out.append(SuspCP2(0))
            sphere2_count = d - 1
        out.extend(Sphere(1) for _ in range(m))
        out.extend(Sphere(3) for _ in range(m))
        for b in torsion:
            out.append(SuspMoore(b, 1))
            out.append(SuspMoore(b, 2))
        out.extend(Sphere(2) for _ in range(sphere2_count))
        return StableSplitting(tuple(out))

    # dimension 5
    if spec.spin:
        out.append(Sphere(5))
        pair_count = d
        moore = torsion
    else:
        kind = resolve_attaching(spec)
        if kind == SPHERE_ETA:
            out.append(SuspCP2(1))
            pair_count = d - 1
            out.append(Sphere(2))  # the S^2 not absorbed into Sigma CP^2
            moore = torsion
        else:
            r = min_two_exponent(spec)
            out.append(ConeEtaTilde(r))
            pair_count = d
            moore = list(torsion)
            moore.remove(2 ** r)
    out.extend(Sphere(2) for _ in range(pair_count))
    out.extend(Sphere(3) for _ in range(pair_count))
    out.extend(SuspMoore(b, 2) for b in moore)
    return StableSplitting(tuple(out))


def splitting_homology(splitting: StableSplitting) -> dict[int, FinAbGroup]:
    """Reduced homology of the wedge, degree by degree."""
    ranks: Counter = Counter()
    torsion: dict[int, list[int]] = {}
    for s in splitting.summands:
        if isinstance(s, Sphere):
            ranks[s.n] += 1
        elif isinstance(s, SuspMoore):
            torsion.setdefault(s.s, []).append(s.b)
        elif isinstance(s, SuspCP2):
            ranks[s.s + 2] += 1
            ranks[s.s + 4] += 1
        else:
            torsion.setdefault(2, []).append(2 ** s.r)
            ranks[5] += 1
    degrees = set(ranks) | set(torsion)
    return {
        deg: canonicalize(torsion.get(deg, []), ranks.get(deg, 0))
        for deg in sorted(degrees)
    }


def homology_profile(spec: ManifoldSpec) -> dict[int, FinAbGroup]:
    """Reduced homology of the manifold the spec describes."""
    tors = canonicalize(spec.h2_torsion)
    if spec.dimension == 4:
        profile = {
            1: direct_sum(canonicalize([], spec.h1_free_rank), tors),
            2: direct_sum(canonicalize([], spec.h2_free_rank), tors),
            3: canonicalize([], spec.h1_free_rank),
            4: canonicalize([], 1),
        }
    else:
        profile = {
            2: direct_sum(canonicalize([], spec.h2_free_rank), tors),
            3: canonicalize([], spec.h2_free_rank),
            5: canonicalize([], 1),
        }
    return {deg: g for deg, g in profile.items() if g != TRIVIAL}


# ---------------------------------------------------------------------------
# Spec files


def spec_from_dict(data: dict) -> ManifoldSpec:
    if not isinstance(data, dict):
        raise SpecFormatError(f"spec must be a JSON object, got {type(data).__name__}")
    unknown = set(data) - _SPEC_FIELDS
    if unknown:
        raise SpecFormatError(f"unknown spec fields: {', '.join(sorted(unknown))}")
    missing = {"dimension", "spin"} - set(data)
    if missing:
        raise SpecFormatError(f"missing required spec fields: {', '.join(sorted(missing))}")
    try:
        return ManifoldSpec(
            dimension=int(data["dimension"]),
            spin=bool(data["spin"]),
            h1_free_rank=int(data.get("h1_free_rank", 0)),
            h2_free_rank=int(data.get("h2_free_rank", 0)),
            h2_torsion=tuple(int(b) for b in data.get("h2_torsion", [])),
            nonspin_attaching=str(data.get("nonspin_attaching", AUTO)),
        )
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"malformed spec field: {exc}") from exc


def load_spec(path: str) -> ManifoldSpec:
    """Parse a spec file; JSON errors keep their line/column diagnostics."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return spec_from_dict(data)
