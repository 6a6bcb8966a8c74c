"""Closed-form bounds and extremal-condition checks for star sizes.

Central objects:

* the ratio chain (k_i - j)/(n_i - j), j = 0..k_i-1, per part: strictly
  decreasing whenever n_i > k_i;
* t-distributions (t_1, ..., t_p), sum t: ways to split a star center
  across the parts;
* the star objective prod_i C(n_i - t_i, k_i - t_i), whose maximum over
  distributions bounds every t-intersecting subfamily of a block in the
  large-part regime.

The greedy optimizer fills the center from the top of the merged ratio
chain, taking whole equal-ratio groups while they fit and branching over
the c-subsets of the group that overshoots.  A brute-force enumeration
over all distributions is kept as an independent route and the two are
compared in the test suite; neither calls the other.

Every count is an exact int and every ratio an exact Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import (
    EmptyFamilyError,
    Family,
    GroundSet,
    InvalidParametersError,
    ProfileSet,
    binom,
    bounded_compositions,
    star_size,
)

__all__ = [
    "RatioEntry",
    "BoundReport",
    "RatioBound",
    "ratio_entries",
    "optimal_t_distributions",
    "max_star_size",
    "enumerate_distribution_argmax",
    "star_density",
    "star_density_chain_form",
    "exchange_optimal",
    "ratio_bound",
    "max_union_star_size",
    "prefix_core",
    "min_core_overlap",
    "hypothesis_flags",
]


@dataclass(frozen=True)
class RatioEntry:
    """One link of a part's ratio chain: value = (k_i - j)/(n_i - j)."""

    part: int
    level: int
    value: Fraction


@dataclass(frozen=True)
class BoundReport:
    """An exact bound value with every distribution that achieves it."""

    value: int
    optimal_distributions: frozenset[tuple[int, ...]]
    hypothesis_flags: dict[str, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class RatioBound:
    """Density bound max_i k_i/n_i with its absolute consequence."""

    ratio: Fraction
    block: int
    absolute: int
    hypothesis_ok: bool


def _check_block_params(ground: GroundSet, k: tuple[int, ...]) -> tuple[int, ...]:
    k = tuple(k)
    ground.check_profile(k)
    for k_i, n_i in zip(k, ground.sizes):
        if k_i < 1:
            raise InvalidParametersError(f"need k_i >= 1, got {k_i}")
        if not n_i > k_i:
            raise InvalidParametersError(
                f"need n_i > k_i so the ratio chain strictly decreases, "
                f"got n_i={n_i}, k_i={k_i}")
    return k


def ratio_entries(ground: GroundSet, k: tuple[int, ...]) -> list[RatioEntry]:
    """The merged ratio chain, sorted by decreasing value.

    Ties across parts stay adjacent; within one part the chain is
    strictly decreasing, so a part contributes at most one entry to any
    equal-value group.
    """
    k = _check_block_params(ground, k)
    entries = [RatioEntry(i, j, Fraction(k_i - j, n_i - j))
               for i, (k_i, n_i) in enumerate(zip(k, ground.sizes))
               for j in range(k_i)]
    entries.sort(key=lambda e: (-e.value, e.part, e.level))
    return entries


def optimal_t_distributions(t: int, ground: GroundSet,
                            k: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """All t-distributions maximizing prod_i C(n_i - t_i, k_i - t_i).

    Greedy over the merged ratio chain: whole equal-value groups are
    taken while the running count stays at most t; the group that would
    overshoot contributes every c-subset, c being the remaining budget.
    Distributions from different subsets with equal part-counts collapse
    to one.
    """
    k = _check_block_params(ground, k)
    if t < 0:
        raise InvalidParametersError(f"t must be >= 0, got {t}")
    if t > sum(k):
        raise InvalidParametersError(f"t={t} exceeds the total profile {sum(k)}")
    p = ground.p
    if t == 0:
        return frozenset({(0,) * p})

    entries = ratio_entries(ground, k)
    groups: list[list[RatioEntry]] = []
    for e in entries:
        if groups and groups[-1][0].value == e.value:
            groups[-1].append(e)
        else:
            groups.append([e])

    taken: list[RatioEntry] = []
    count = 0
    for grp in groups:
        if count + len(grp) <= t:
            taken.extend(grp)
            count += len(grp)
            if count == t:
                break
        else:
            c = t - count
            out = set()
            for extra in combinations(grp, c):
                dist = [0] * p
                for e in taken:
                    dist[e.part] += 1
                for e in extra:
                    dist[e.part] += 1
                out.add(tuple(dist))
            return frozenset(out)
    dist = [0] * p
    for e in taken:
        dist[e.part] += 1
    return frozenset({tuple(dist)})


def max_star_size(t: int, ground: GroundSet, k: tuple[int, ...]) -> int:
    """Largest full-star size over all t-distributions for one block."""
    dists = optimal_t_distributions(t, ground, k)
    return star_size(ground, tuple(k), next(iter(dists)))


def enumerate_distribution_argmax(t: int, ground: GroundSet,
                                  k: tuple[int, ...]) -> BoundReport:
    """Independent route: scan every t-distribution and keep the argmax.

    Deliberately shares no logic with the greedy optimizer; the test
    suite holds the two outputs equal across a parameter grid.
    """
    k = _check_block_params(ground, k)
    if t < 0 or t > sum(k):
        raise InvalidParametersError(f"t={t} out of range [0, {sum(k)}]")
    best = -1
    arg: set[tuple[int, ...]] = set()
    for dist in bounded_compositions(t, (0,) * ground.p, k):
        v = star_size(ground, k, dist)
        if v > best:
            best = v
            arg = {dist}
        elif v == best:
            arg.add(dist)
    return BoundReport(best, frozenset(arg))


# ---------------------------------------------------------------------------
# star densities and the exchange condition

def star_density(ground: GroundSet, k: tuple[int, ...], center: int) -> Fraction:
    """Fraction of the block contained in the full star at the center:
    prod_i C(n_i - s_i, k_i - s_i) / prod_i C(n_i, k_i)."""
    k = tuple(k)
    ground.check_profile(k)
    s = ground.profile(center)
    for s_i, k_i in zip(s, k):
        if s_i > k_i:
            raise InvalidParametersError(
                f"center meets a part in {s_i} > k_i = {k_i} elements")
    num = math.prod(binom(n_i - s_i, k_i - s_i)
                    for n_i, k_i, s_i in zip(ground.sizes, k, s))
    den = math.prod(binom(n_i, k_i) for n_i, k_i in zip(ground.sizes, k))
    return Fraction(num, den)


def star_density_chain_form(ground: GroundSet, k: tuple[int, ...],
                            center: int) -> Fraction:
    """Same density through the ratio chain: prod over parts i and
    levels j < s_i of (k_i - j)/(n_i - j).  Kept as a separate route."""
    k = tuple(k)
    ground.check_profile(k)
    s = ground.profile(center)
    out = Fraction(1)
    for i, s_i in enumerate(s):
        if s_i > k[i]:
            raise InvalidParametersError(
                f"center meets a part in {s_i} > k_i = {k[i]} elements")
        for j in range(s_i):
            out *= Fraction(k[i] - j, ground.sizes[i] - j)
    return out


def exchange_optimal(ground: GroundSet, k: tuple[int, ...], t: int,
                     center: int) -> bool:
    """True iff no single-element move of the center between parts can
    increase the star size.

    For every ordered part pair (i, j) with the center meeting part j,
    the next ratio of part i must not exceed the last taken ratio of
    part j:  (k_i - s_i)/(n_i - s_i) <= (k_j - s_j + 1)/(n_j - s_j + 1).
    """
    k = tuple(k)
    ground.check_profile(k)
    s = ground.profile(center)
    if sum(s) != t:
        raise InvalidParametersError(f"center has {sum(s)} elements, expected t={t}")
    for s_i, k_i in zip(s, k):
        if s_i > k_i:
            raise InvalidParametersError(
                f"center meets a part in {s_i} > k_i = {k_i} elements")
    p = ground.p
    for jj in range(p):
        if s[jj] < 1:
            continue
        threshold = Fraction(k[jj] - s[jj] + 1, ground.sizes[jj] - s[jj] + 1)
        for ii in range(p):
            if Fraction(k[ii] - s[ii], ground.sizes[ii] - s[ii]) > threshold:
                return False
    return True


# ---------------------------------------------------------------------------
# ratio bound for intersecting subfamilies of a block

def ratio_bound(ground: GroundSet, k: tuple[int, ...]) -> RatioBound:
    """Density bound for 1-intersecting subfamilies: max_i k_i/n_i.

    Valid under n_i >= 2k_i for every part (reported, never enforced);
    the absolute form is the density times the block size, rounded down.
    """
    k = tuple(k)
    ground.check_profile(k)
    for k_i in k:
        if k_i < 1:
            raise InvalidParametersError(f"need k_i >= 1, got {k_i}")
    r = max(Fraction(k_i, n_i) for k_i, n_i in zip(k, ground.sizes))
    blk = math.prod(binom(n_i, k_i) for n_i, k_i in zip(ground.sizes, k))
    hyp = all(n_i >= 2 * k_i for n_i, k_i in zip(ground.sizes, k))
    return RatioBound(ratio=r, block=blk, absolute=(r.numerator * blk) // r.denominator,
                      hypothesis_ok=hyp)


# ---------------------------------------------------------------------------
# union-space star bound

def max_union_star_size(t: int, ground: GroundSet, profiles: ProfileSet,
                        strict: bool = True) -> BoundReport:
    """Largest full-star size over the profile-union space.

    Scans every t-distribution (there is no greedy shortcut for unions)
    and sums, per distribution, the per-profile star counts; binomials
    with r_i < t_i contribute zero.  t <= c (the smallest profile entry)
    is the intended regime; pass strict=False to compute outside it,
    with the flag recorded.
    """
    profiles.check_against(ground)
    if t < 0:
        raise InvalidParametersError(f"t must be >= 0, got {t}")
    t_le_c = t <= profiles.c
    if strict and not t_le_c:
        raise InvalidParametersError(
            f"t={t} exceeds the smallest profile entry c={profiles.c}; "
            f"pass strict=False to compute anyway")
    best = -1
    arg: set[tuple[int, ...]] = set()
    limits = tuple(min(t, n_i) for n_i in ground.sizes)
    for dist in bounded_compositions(t, (0,) * ground.p, limits):
        v = 0
        for r in profiles.profiles:
            v += math.prod(binom(n_i - t_i, r_i - t_i)
                           for n_i, r_i, t_i in zip(ground.sizes, r, dist))
        if v > best:
            best = v
            arg = {dist}
        elif v == best:
            arg.add(dist)
    return BoundReport(best, frozenset(arg),
                       hypothesis_flags(t, ground, profiles=profiles))


# ---------------------------------------------------------------------------
# prefix core and minimum overlap

def prefix_core(ground: GroundSet, profiles: ProfileSet) -> int:
    """Union over parts of the first 2 b_i - 1 elements, b_i being the
    largest i-th entry over the profiles."""
    profiles.check_against(ground)
    core = 0
    for i, b_i in enumerate(profiles.b_vector):
        width = 2 * b_i - 1
        if width > ground.sizes[i]:
            raise InvalidParametersError(
                f"core width {width} exceeds part size {ground.sizes[i]}")
        core |= ground.prefix_mask(i, width)
    return core


def min_core_overlap(fam: Family, profiles: ProfileSet) -> int:
    """Minimum over members of the overlap with the prefix core."""
    if not fam.members:
        raise EmptyFamilyError("minimum overlap needs a non-empty family")
    core = prefix_core(fam.ground, profiles)
    return min((m & core).bit_count() for m in fam.members)


# ---------------------------------------------------------------------------
# hypothesis flags

def hypothesis_flags(t: int, ground: GroundSet,
                     k: tuple[int, ...] | None = None,
                     profiles: ProfileSet | None = None) -> dict[str, bool]:
    """Exact evaluation of the large-part hypotheses; purely informative.

    Block flags (need k): ratio_bound needs n_i >= 2 k_i; block_star
    needs n_i > 2(t+1) p k_i^2.  Union flags (need profiles):
    union_parts_large needs n_i > 2(t+1) p b^(t+2); t_le_c needs
    t <= c; union_star is their conjunction.
    """
    if t < 0:
        raise InvalidParametersError(f"t must be >= 0, got {t}")
    flags: dict[str, bool] = {}
    p = ground.p
    if k is not None:
        k = tuple(k)
        ground.check_profile(k)
        flags["ratio_bound"] = all(
            n_i >= 2 * k_i for n_i, k_i in zip(ground.sizes, k))
        flags["block_star"] = all(
            n_i > 2 * (t + 1) * p * k_i * k_i
            for n_i, k_i in zip(ground.sizes, k))
    if profiles is not None:
        profiles.check_against(ground)
        b = profiles.b
        need = 2 * (t + 1) * p * b ** (t + 2)
        flags["union_parts_large"] = all(n_i > need for n_i in ground.sizes)
        flags["t_le_c"] = t <= profiles.c
        flags["union_star"] = flags["union_parts_large"] and flags["t_le_c"]
    return flags
