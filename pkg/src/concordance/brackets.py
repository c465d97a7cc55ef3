"""Homotopy-class groups [Sigma^k X, Top/O] per stable summand.

For each summand type produced by :mod:`concordance.manifold` this
module computes the group of homotopy classes of maps into Top/O,
suspension by suspension:

* spheres: a table lookup, [Sigma^k S^n, Top/O] = pi_(n+k)(Top/O);
* Moore spectra: the resolved bracket tables where available, otherwise
  the two-sided exact sequence of the mod-p^r cofibration
  0 -> coker(x p^r) -> [Sigma^s M(Z/p^r), Top/O] -> ker(x p^r) -> 0;
* suspended CP^2: the resolved table for suspensions 2..10, otherwise
  the eta cofibration 0 -> coker(eta^*) -> * -> ker(eta^*) -> 0;
* Cone(eta~_{2^r}): assembled from the eta~ image table and the Moore
  brackets of its two pieces.

Results are honest about extension problems: when the middle group of a
short exact sequence is not forced, the full candidate set is reported
and no splitting is assumed.  Resolved table values always win over the
generic route, and every result records the route that produced it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .abgroup import (
    TRIVIAL,
    FinAbGroup,
    canonicalize,
    cyclic,
    direct_sum,
    enumerate_extensions,
    kernel_types,
    mult_cokernel,
    mult_kernel,
    quotient_types,
)
from ._primes import prime_power_parts
from . import tables
from .tables import TableRangeError
from .manifold import (
    ConeEtaTilde,
    ManifoldSpec,
    Sphere,
    SuspCP2,
    SuspMoore,
    ensure_valid,
    stable_splitting,
)


# ---------------------------------------------------------------------------
# Result variants


@dataclass(frozen=True)
class Known:
    group: FinAbGroup
    citation: str

    def __str__(self):
        return f"{self.group} [{self.citation}]"


@dataclass(frozen=True)
class ExtensionAmbiguous:
    """An unresolved extension: candidates share the forced order.

    ``sub``/``quot`` are the flanks of the underlying short exact
    sequence when those are themselves determined; ``None`` marks a
    flank that is only known up to several types (its options are all
    folded into ``candidates``).
    """

    sub: FinAbGroup | None
    quot: FinAbGroup | None
    candidates: frozenset[FinAbGroup]
    citation: str

    def __str__(self):
        opts = " or ".join(sorted(str(c) for c in self.candidates))
        return f"one of {{{opts}}} [{self.citation}]"


@dataclass(frozen=True)
class LowerBound:
    group: FinAbGroup
    citation: str

    def __str__(self):
        return f"contains {self.group} [{self.citation}]"


@dataclass(frozen=True)
class OutOfRange:
    reason: str

    def __str__(self):
        return f"out of tabulated range: {self.reason}"


GroupResult = Known | ExtensionAmbiguous | LowerBound | OutOfRange


def result_to_dict(res: GroupResult) -> dict:
    if isinstance(res, Known):
        return {"kind": "known", "group": res.group.to_dict(), "citation": res.citation}
    if isinstance(res, ExtensionAmbiguous):
        return {
            "kind": "extension_ambiguous",
            "sub": res.sub.to_dict() if res.sub is not None else None,
            "quot": res.quot.to_dict() if res.quot is not None else None,
            "candidates": sorted(
                (c.to_dict() for c in res.candidates),
                key=lambda d: (d["free_rank"], d["torsion"]),
            ),
            "citation": res.citation,
        }
    if isinstance(res, LowerBound):
        return {"kind": "lower_bound", "group": res.group.to_dict(), "citation": res.citation}
    return {"kind": "out_of_range", "reason": res.reason}


def result_from_dict(data: dict) -> GroupResult:
    kind = data["kind"]
    if kind == "known":
        return Known(FinAbGroup.from_dict(data["group"]), data["citation"])
    if kind == "extension_ambiguous":
        return ExtensionAmbiguous(
            FinAbGroup.from_dict(data["sub"]) if data["sub"] is not None else None,
            FinAbGroup.from_dict(data["quot"]) if data["quot"] is not None else None,
            frozenset(FinAbGroup.from_dict(c) for c in data["candidates"]),
            data["citation"],
        )
    if kind == "lower_bound":
        return LowerBound(FinAbGroup.from_dict(data["group"]), data["citation"])
    if kind == "out_of_range":
        return OutOfRange(data["reason"])
    raise ValueError(f"unknown result kind {kind!r}")


def _ses_result(
    subs: frozenset[FinAbGroup], quots: frozenset[FinAbGroup], citation: str
) -> GroupResult:
    """Assemble 0 -> sub -> B -> quot -> 0 where each flank is a candidate set.

    A two-sided sequence with several extension candidates never
    auto-selects the split one; the full set is returned.
    """
    if len(subs) == 1 and len(quots) == 1:
        (sub,) = subs
        (quot,) = quots
        if sub.is_trivial:
            return Known(quot, citation)
        if quot.is_trivial:
            return Known(sub, citation)
        candidates = enumerate_extensions(sub, quot)
        if len(candidates) == 1:
            (only,) = candidates
            return Known(only, citation + "; unique extension")
        return ExtensionAmbiguous(sub, quot, candidates, citation)
    candidates = set()
    for sub, quot in itertools.product(subs, quots):
        if sub.is_trivial:
            candidates.add(quot)
        elif quot.is_trivial:
            candidates.add(sub)
        else:
            candidates.update(enumerate_extensions(sub, quot))
    if len(candidates) == 1:
        (only,) = candidates
        return Known(only, citation + "; all flank options force the same group")
    return ExtensionAmbiguous(
        next(iter(subs)) if len(subs) == 1 else None,
        next(iter(quots)) if len(quots) == 1 else None,
        frozenset(candidates),
        citation + "; one flank is itself undetermined",
    )


# ---------------------------------------------------------------------------
# Spheres


def sphere_bracket(n: int, k: int) -> GroupResult:
    """[Sigma^k S^n, Top/O] = pi_(n+k)(Top/O)."""
    degree = n + k
    try:
        return Known(tables.pi_top_o(degree), f"pi_{degree}(Top/O) table")
    except TableRangeError:
        return OutOfRange(f"pi_{degree}(Top/O) is beyond the degree-20 table")


# ---------------------------------------------------------------------------
# Moore spectra

_ODD_RESOLVED = {
    3: ({9, 10, 12, 13}, 3, "mod-3^r Moore bracket table, suspensions 1..17"),
    7: ({6, 7}, 7, "mod-7^r Moore bracket table, suspensions 1..17"),
}

# (s, branch) -> group; branch is "r1" or "r2+" (None = any r)
_TWO_RESOLVED: dict[int, list[tuple[int | None, FinAbGroup, str]]] = {
    6: [
        (1, cyclic(2), "mod-2 Moore bracket at suspension 6"),
        (None, cyclic(4), "mod-2^r Moore bracket at suspension 6, r >= 2"),
    ],
    7: [
        (1, canonicalize([2, 2]), "mod-2 Moore bracket at suspension 7"),
        (None, canonicalize([2, 4]), "mod-2^r Moore bracket at suspension 7, r >= 2"),
    ],
    8: [(1, canonicalize([4, 2, 2]), "mod-2 Moore bracket at suspension 8")],
    9: [
        (1, canonicalize([4, 2, 2]), "mod-2 Moore bracket at suspension 9"),
        (None, canonicalize([2, 2, 2, 2]), "mod-2^r Moore bracket at suspension 9, r >= 2"),
    ],
    10: [(1, canonicalize([2, 2]), "mod-2 Moore bracket at suspension 10 (split by the eta-image criterion)")],
}


def _moore_resolved(p: int, r: int, s: int) -> Known | None:
    if p in _ODD_RESOLVED and 1 <= s <= 17:
        nonzero, value, cite = _ODD_RESOLVED[p]
        group = cyclic(value) if s in nonzero else TRIVIAL
        return Known(group, cite)
    if p == 31 and s == 11:
        return Known(cyclic(31), "mod-31^r Moore bracket at suspension 11")
    if p == 2 and s in _TWO_RESOLVED:
        for branch, group, cite in _TWO_RESOLVED[s]:
            if branch is None or r == branch:
                if branch is None and r == 1:
                    continue
                return Known(group, cite)
        return None
    if p == 2 and s == 11:
        return Known(
            cyclic(2 ** min(r, 5)),
            "mod-2^r Moore bracket at suspension 11: kernel of x2^r on Z/992",
        )
    return None


def moore_bracket(p: int, r: int, s: int) -> GroupResult:
    """[Sigma^s M(Z/p^r), Top/O].

    Resolved table values first; otherwise the exact sequence of the
    multiplication-by-p^r cofibration, whose flanks are the cokernel on
    pi_(s+1)(Top/O) and the kernel on pi_s(Top/O).
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    _, e = prime_power_parts(p)
    if e != 1:
        raise ValueError(f"p must be prime, got {p}")

    resolved = _moore_resolved(p, r, s)
    if resolved is not None:
        return resolved

    if s < 1 or s + 1 > 20:
        return OutOfRange(f"needs pi_{s}(Top/O) and pi_{s + 1}(Top/O); table stops at 20")
    b = p ** r
    sub = mult_cokernel(tables.pi_top_o(s + 1), b)
    quot = mult_kernel(tables.pi_top_o(s), b)
    cite = (
        f"exact sequence of the mod-{b} cofibration: coker(x{b}) on"
        f" pi_{s + 1}(Top/O) by ker(x{b}) on pi_{s}(Top/O)"
    )
    return _ses_result(frozenset({sub}), frozenset({quot}), cite)


def moore_bracket_for(b: int, s: int) -> GroupResult:
    """Convenience wrapper taking the cyclic order b = p^r directly."""
    p, r = prime_power_parts(b)
    return moore_bracket(p, r, s)


# ---------------------------------------------------------------------------
# Suspended CP^2

_CP2_RESOLVED: dict[int, tuple[FinAbGroup, str]] = {
    2: (TRIVIAL, "suspended-CP^2 bracket table: zero at suspension 2"),
    3: (cyclic(28), "suspended-CP^2 bracket table: Theta_7 at suspension 3"),
    4: (cyclic(2), "suspended-CP^2 bracket table: Theta_8 at suspension 4"),
    5: (
        canonicalize([2, 56]),
        "suspended-CP^2 bracket table: non-split extension of Theta_7 by"
        " (Z/2)^2 resolved to Z/2 + Z/56 via the G/Top comparison",
    ),
    6: (cyclic(3), "suspended-CP^2 bracket table: Z/3 inside Theta_10"),
    8: (cyclic(3), "suspended-CP^2 bracket table: Z/3 inside Theta_10"),
    9: (
        canonicalize([3, 992]),
        "suspended-CP^2 bracket table: Theta_13 + Theta_11 at suspension 9",
    ),
    10: (cyclic(2), "suspended-CP^2 bracket table: Theta_14 at suspension 10"),
}


def susp_cp2_bracket(s: int) -> GroupResult:
    """[Sigma^s CP^2, Top/O].

    Suspensions 2..10 come from the resolved table; suspension 7 is the
    honestly unresolved extension of (Z/2)^2 by Z/496 and is reported as
    its candidate set.  Other suspensions fall back to the eta
    cofibration, using the stored kernels and cokernels of eta^*.
    """
    if s < 0:
        return OutOfRange("suspension must be non-negative")
    if s in _CP2_RESOLVED:
        group, cite = _CP2_RESOLVED[s]
        return Known(group, cite)
    if s == 7:
        sub = cyclic(496)
        quot = canonicalize([2, 2])
        return ExtensionAmbiguous(
            sub,
            quot,
            enumerate_extensions(sub, quot),
            "suspended-CP^2 bracket table: extension of (Z/2)^2 inside Theta_9"
            " by Z/496 inside Theta_11, not resolved",
        )
    if s > 16:
        return OutOfRange(f"needs the eta image at degree {s + 3}; table stops at 19")
    cite = (
        f"eta cofibration: coker(eta^*) into pi_{s + 4}(Top/O) by"
        f" ker(eta^*) on pi_{s + 2}(Top/O)"
    )
    sub_coker = tables.eta_star_cokernel(s + 3)
    if sub_coker is not None:
        subs = frozenset({sub_coker})
    else:
        subs = quotient_types(tables.pi_top_o(s + 4), tables.eta_star_image(s + 3))
    quots = frozenset({tables.eta_star_kernel(s + 2)})
    return _ses_result(subs, quots, cite)


# ---------------------------------------------------------------------------
# Cone(eta~_{2^r})


def _eta_tilde_coker_candidates(k: int, r: int) -> frozenset[FinAbGroup] | OutOfRange:
    """Candidate types of pi_(5+k)(Top/O) / im(eta~_{2^r})^*."""
    if 5 + k > 20:
        return OutOfRange(f"pi_{5 + k}(Top/O) is beyond the degree-20 table")
    target = tables.pi_top_o(5 + k)
    if target.is_trivial:
        return frozenset({TRIVIAL})
    if not 1 <= k <= 10:
        return OutOfRange(f"eta~ image not tabulated at shift {k}")
    image = tables.eta_tilde_image(k, r)
    override = tables.eta_tilde_cokernel_override(k, r)
    if override is not None:
        return frozenset({override})
    return quotient_types(target, image)


def _eta_tilde_kernel_candidates(
    shift: int, r: int, sources: frozenset[FinAbGroup]
) -> frozenset[FinAbGroup] | OutOfRange:
    """Candidate kernels of (eta~)^* on [Sigma^(3+shift) M(Z/2^r), Top/O].

    ``sources`` is the candidate set for the Moore bracket itself; the
    map lands in pi_(5+shift)(Top/O).
    """
    if 5 + shift > 20:
        return OutOfRange(f"pi_{5 + shift}(Top/O) is beyond the degree-20 table")
    target = tables.pi_top_o(5 + shift) if 5 + shift >= 1 else TRIVIAL
    if target.is_trivial:
        return sources
    if not 1 <= shift <= 10:
        return OutOfRange(f"eta~ image not tabulated at shift {shift}")
    image = tables.eta_tilde_image(shift, r)
    if image.is_trivial:
        return sources
    override = tables.eta_tilde_kernel_override(shift, r)
    if override is not None and len(sources) == 1:
        return frozenset({override})
    out: set[FinAbGroup] = set()
    for source in sources:
        options = kernel_types(source, image)
        if not options:
            raise RuntimeError(
                f"table inconsistency: {image} is not a quotient of {source}"
            )
        out.update(options)
    return frozenset(out)


def cone_eta_tilde_bracket(r: int, k: int) -> GroupResult:
    """[Sigma^k Cone(eta~_{2^r}), Top/O].

    The cofibration S^4 -> Sigma^2 M(Z/2^r) -> Cone(eta~_{2^r}) gives
    0 -> coker((eta~)^* into pi_(5+k)) -> result
      -> ker((eta~)^* on [Sigma^(2+k) M(Z/2^r), Top/O]) -> 0.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if k < 0:
        raise ValueError(f"suspension must be non-negative, got {k}")
    subs = _eta_tilde_coker_candidates(k, r)
    if isinstance(subs, OutOfRange):
        return subs
    source_result = moore_bracket(2, r, 2 + k)
    if isinstance(source_result, OutOfRange):
        return OutOfRange(f"Moore piece at suspension {2 + k}: {source_result.reason}")
    if isinstance(source_result, Known):
        sources = frozenset({source_result.group})
    else:
        sources = source_result.candidates
    quots = _eta_tilde_kernel_candidates(k - 1, r, sources)
    if isinstance(quots, OutOfRange):
        return quots
    cite = (
        f"cofibration of Cone(eta~_{2 ** r}): coker(eta~^* into"
        f" pi_{5 + k}(Top/O)) by ker(eta~^* on the suspension-{2 + k} Moore bracket)"
    )
    return _ses_result(subs, quots, cite)


# ---------------------------------------------------------------------------
# Aggregation over a stable splitting


def summand_bracket(summand, k: int) -> GroupResult:
    if isinstance(summand, Sphere):
        return sphere_bracket(summand.n, k)
    if isinstance(summand, SuspMoore):
        return moore_bracket_for(summand.b, summand.s + k)
    if isinstance(summand, SuspCP2):
        return susp_cp2_bracket(summand.s + k)
    if isinstance(summand, ConeEtaTilde):
        return cone_eta_tilde_bracket(summand.r, k)
    raise TypeError(f"unknown summand {summand!r}")


def combine_results(parts, citation: str) -> GroupResult:
    """Direct sum of per-summand results.

    Any out-of-range part poisons the total (naming the culprit); any
    ambiguous part makes the total ambiguous with the fixed part summed
    into every candidate.  Order of parts does not matter.
    """
    fixed = TRIVIAL
    ambiguous: list[ExtensionAmbiguous] = []
    for label, res in parts:
        if isinstance(res, OutOfRange):
            return OutOfRange(f"{label}: {res.reason}")
        if isinstance(res, LowerBound):
            raise ValueError("lower bounds cannot be direct-summed")
        if isinstance(res, Known):
            fixed = direct_sum(fixed, res.group)
        else:
            ambiguous.append(res)
    if not ambiguous:
        return Known(fixed, citation)
    candidate_sets = [sorted(a.candidates, key=str) for a in ambiguous]
    candidates = frozenset(
        direct_sum(fixed, *combo) for combo in itertools.product(*candidate_sets)
    )
    if len(ambiguous) == 1 and ambiguous[0].sub is not None:
        sub = direct_sum(fixed, ambiguous[0].sub)
        quot = ambiguous[0].quot
    else:
        sub = quot = None
    return ExtensionAmbiguous(
        sub, quot, candidates, citation + f"; unresolved: {ambiguous[0].citation}"
    )


def splitting_bracket(spec: ManifoldSpec, k: int) -> GroupResult:
    """[Sigma^k M, Top/O] assembled summand by summand from the splitting."""
    ensure_valid(spec)
    if k < 0:
        raise ValueError(f"suspension must be non-negative, got {k}")
    splitting = stable_splitting(spec)
    parts = [(str(s), summand_bracket(s, k)) for s in splitting.summands]
    return combine_results(
        parts, f"direct sum over the stable splitting, suspended {k} times"
    )


# ---------------------------------------------------------------------------
# Closed forms for 4-manifolds, suspensions 1..5


def _torsion_counts(spec: ManifoldSpec) -> tuple[int, int, int]:
    """(l2, l2_1, l7): counts of 2-power, exactly-2, and 7-power torsion."""
    l2 = l2_1 = l7 = 0
    for b in spec.h2_torsion:
        p, _ = prime_power_parts(b)
        if p == 2:
            l2 += 1
            if b == 2:
                l2_1 += 1
        elif p == 7:
            l7 += 1
    return l2, l2_1, l7


def closed_form_cM4(spec: ManifoldSpec, k: int) -> GroupResult:
    """[Sigma^k M, Top/O] for a 4-manifold by the closed formulas in
    m, d, l_2, l_2^1, l_7, valid for 1 <= k <= 5.

    This is the independent cross-check for ``splitting_bracket``: the
    two must agree on every valid 4-dimensional profile.
    """
    ensure_valid(spec)
    if spec.dimension != 4:
        raise ValueError("closed forms cover 4-manifolds only")
    if not 1 <= k <= 5:
        raise TableRangeError(f"closed forms cover suspensions 1..5, got {k}")
    m, d = spec.h1_free_rank, spec.h2_free_rank
    l2, l2_1, l7 = _torsion_counts(spec)
    cite = f"closed form at suspension {k} in m, d, l_2, l_2^1, l_7"
    if k == 1:
        return Known(canonicalize([2] * (2 * l2 + d)), cite)
    if k == 2:
        return Known(canonicalize([2] * (m + l2)), cite)
    if k == 3:
        return Known(cyclic(28), cite)
    if k == 4:
        orders = [2] + [28] * m + [2] * l2_1 + [4] * (l2 - l2_1) + [7] * l7
        return Known(canonicalize(orders), cite)
    # k == 5: the only spin-sensitive suspension in this range
    orders = (
        [2] * m
        + [2] * l2_1
        + [4] * (l2 - l2_1)
        + [7] * (2 * l7)
        + [2, 2] * l2_1
        + [2, 4] * (l2 - l2_1)
    )
    if spec.spin:
        orders += [2, 2, 2] + [28] * d
    else:
        orders += [56, 2] + [28] * (d - 1)
    return Known(canonicalize(orders), cite + (" (spin)" if spec.spin else " (non-spin)"))
