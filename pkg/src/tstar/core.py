"""Exact combinatorics of set families over a partitioned ground set.

The ground set [n] = {1, ..., n} is split into p consecutive parts
X_1, ..., X_p of sizes n_1, ..., n_p, so part l occupies a contiguous
index range and its s-prefix Q_l(s) (the first s elements of X_l) is a
contiguous bit range.  Subsets of [n] are encoded as int bitmasks
(bit e-1 <-> element e); Python ints are arbitrary precision, so there
is no width limit beyond the enumeration caps.  Families are immutable
sets of masks tied to their ground set.

Three family constructions are provided:

* block family: sets meeting part i in exactly r_i elements;
* profile-union family: union of blocks over a set of profiles;
* quota family: k-subsets meeting part i in at least q_i elements.

All counts are exact Python ints and all ratios exact fractions; no
floating point is used anywhere in a comparison.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

__all__ = [
    "Error",
    "InvalidParametersError",
    "InstanceTooLargeError",
    "EmptyFamilyError",
    "HypothesisViolationError",
    "NoWalkError",
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_SEARCH_CAP",
    "enumeration_cap",
    "search_cap",
    "binom",
    "mask_of",
    "elements_of",
    "GroundSet",
    "Family",
    "ProfileSet",
    "bounded_compositions",
    "block_size",
    "enumerate_block",
    "union_size",
    "enumerate_profile_union",
    "quota_profiles",
    "quota_size",
    "enumerate_quota",
    "trivial_star",
    "star_size",
    "format_family",
    "parse_family",
    "write_family",
    "read_family",
]


# ---------------------------------------------------------------------------
# errors

class Error(Exception):
    """Base class for all package errors."""


class InvalidParametersError(Error, ValueError):
    """Arguments violate a documented precondition."""


class InstanceTooLargeError(Error):
    """Requested enumeration or search exceeds the configured cap."""


class EmptyFamilyError(Error, ValueError):
    """An operation that needs at least one member got an empty family."""


class HypothesisViolationError(Error):
    """A checker's hypothesis fails on the given input (the input is at
    fault, not the property being checked)."""


class NoWalkError(Error):
    """No walk exists between the requested vertices."""


# ---------------------------------------------------------------------------
# caps

DEFAULT_ENUMERATION_CAP = 10_000_000
DEFAULT_SEARCH_CAP = 50_000

_ENUM_ENV = "TSTAR_ENUM_CAP"
_SEARCH_ENV = "TSTAR_SEARCH_CAP"


def _cap_from_env(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParametersError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise InvalidParametersError(f"{name} must be positive, got {value}")
    return value


def enumeration_cap(cap: int | None = None) -> int:
    """Resolve an enumeration cap: explicit value, else env, else default."""
    if cap is not None:
        if cap < 1:
            raise InvalidParametersError(f"cap must be positive, got {cap}")
        return cap
    return _cap_from_env(_ENUM_ENV, DEFAULT_ENUMERATION_CAP)


def search_cap(cap: int | None = None) -> int:
    """Resolve a search vertex cap: explicit value, else env, else default."""
    if cap is not None:
        if cap < 1:
            raise InvalidParametersError(f"cap must be positive, got {cap}")
        return cap
    return _cap_from_env(_SEARCH_ENV, DEFAULT_SEARCH_CAP)


# ---------------------------------------------------------------------------
# scalars and masks

def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k < 0 or k > n."""
    if n < 0:
        raise InvalidParametersError(f"binom needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask for a collection of 1-based elements."""
    mask = 0
    for e in elements:
        if e < 1:
            raise InvalidParametersError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """Ascending 1-based elements of a bitmask."""
    if mask < 0:
        raise InvalidParametersError("mask must be non-negative")
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


# ---------------------------------------------------------------------------
# ground set

@dataclass(frozen=True)
class GroundSet:
    """Partition of [n] into consecutive parts of the given sizes.

    Elements are 1-based throughout the public API; parts are indexed
    from 0.
    """

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.sizes, tuple):
            object.__setattr__(self, "sizes", tuple(self.sizes))
        if len(self.sizes) < 1:
            raise InvalidParametersError("need at least one part")
        for s in self.sizes:
            if not isinstance(s, int) or s < 1:
                raise InvalidParametersError(f"part sizes must be positive ints, got {s!r}")

    @property
    def p(self) -> int:
        return len(self.sizes)

    @cached_property
    def n(self) -> int:
        return sum(self.sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        # offsets[i] = number of elements before part i (0-based bit offset)
        out = []
        acc = 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def part_masks(self) -> tuple[int, ...]:
        return tuple(((1 << s) - 1) << off for s, off in zip(self.sizes, self.offsets))

    def part_elements(self, part: int) -> range:
        """1-based elements of the given part, ascending."""
        self._check_part(part)
        start = self.offsets[part] + 1
        return range(start, start + self.sizes[part])

    def prefix_mask(self, part: int, s: int) -> int:
        """Mask of the first s elements of the given part."""
        self._check_part(part)
        if not 0 <= s <= self.sizes[part]:
            raise InvalidParametersError(
                f"prefix length {s} out of range for part of size {self.sizes[part]}")
        return ((1 << s) - 1) << self.offsets[part]

    def element_part(self, element: int) -> int:
        """0-based part index containing a 1-based element."""
        if not 1 <= element <= self.n:
            raise InvalidParametersError(f"element {element} not in [1, {self.n}]")
        for i, off in enumerate(self.offsets):
            if element <= off + self.sizes[i]:
                return i
        raise AssertionError("unreachable")

    def profile(self, mask: int) -> tuple[int, ...]:
        """Per-part intersection sizes of a subset mask."""
        return tuple(((mask >> off) & ((1 << s) - 1)).bit_count()
                     for s, off in zip(self.sizes, self.offsets))

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full_mask:
            raise InvalidParametersError(
                f"mask {bin(mask)} has bits outside ground set of size {self.n}")

    def check_profile(self, profile: tuple[int, ...]) -> None:
        if len(profile) != self.p:
            raise InvalidParametersError(
                f"profile length {len(profile)} != number of parts {self.p}")
        for r, s in zip(profile, self.sizes):
            if not 0 <= r <= s:
                raise InvalidParametersError(f"profile entry {r} out of [0, {s}]")

    def _check_part(self, part: int) -> None:
        if not 0 <= part < self.p:
            raise InvalidParametersError(f"part {part} out of range [0, {self.p})")


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class Family:
    """Immutable set family over a fixed ground set.

    Iteration is in ascending mask order, which is colexicographic order
    on the underlying sets; every user-visible ordering derives from it.
    """

    ground: GroundSet
    members: frozenset[int]

    def __post_init__(self) -> None:
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        full = self.ground.full_mask
        for m in self.members:
            if m < 0 or m & ~full:
                raise InvalidParametersError(
                    f"member {bin(m)} has bits outside ground set of size {self.ground.n}")

    @classmethod
    def from_iterables(cls, ground: GroundSet, sets: Iterable[Iterable[int]]) -> "Family":
        return cls(ground, frozenset(mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __contains__(self, mask: int) -> bool:
        return mask in self.members


# ---------------------------------------------------------------------------
# profile sets

@dataclass(frozen=True)
class ProfileSet:
    """A finite set of everywhere-positive profiles over a common p.

    Carries the coordinate maxima b_i, their maximum b, and the overall
    minimum entry c used by the union-space bounds.
    """

    profiles: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        profs = tuple(sorted({tuple(r) for r in self.profiles}))
        if not profs:
            raise InvalidParametersError("profile set must be non-empty")
        p = len(profs[0])
        for r in profs:
            if len(r) != p:
                raise InvalidParametersError("profiles must share one length")
            for x in r:
                if not isinstance(x, int) or x < 1:
                    raise InvalidParametersError(
                        f"profile entries must be positive ints, got {x!r}")
        object.__setattr__(self, "profiles", profs)

    @property
    def p(self) -> int:
        return len(self.profiles[0])

    @cached_property
    def b_vector(self) -> tuple[int, ...]:
        """Coordinatewise maximum over the profiles."""
        return tuple(max(r[i] for r in self.profiles) for i in range(self.p))

    @property
    def b(self) -> int:
        return max(self.b_vector)

    @cached_property
    def c(self) -> int:
        """Smallest entry appearing in any profile."""
        return min(min(r) for r in self.profiles)

    def check_against(self, ground: GroundSet) -> None:
        if self.p != ground.p:
            raise InvalidParametersError(
                f"profile set has {self.p} parts, ground set has {ground.p}")
        for r in self.profiles:
            ground.check_profile(r)


# ---------------------------------------------------------------------------
# enumeration

def bounded_compositions(total: int, lows: tuple[int, ...],
                         highs: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All tuples x with lows[i] <= x[i] <= highs[i] and sum(x) = total."""
    if len(lows) != len(highs):
        raise InvalidParametersError("lows and highs must have equal length")

    p = len(lows)

    def rec(i: int, remaining: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i == p:
            if remaining == 0:
                yield tuple(acc)
            return
        # keep enough/not too much room for the remaining coordinates
        lo = max(lows[i], remaining - sum(highs[i + 1:]))
        hi = min(highs[i], remaining - sum(lows[i + 1:]))
        for x in range(lo, hi + 1):
            acc.append(x)
            yield from rec(i + 1, remaining - x, acc)
            acc.pop()

    return rec(0, total, [])


def block_size(ground: GroundSet, profile: tuple[int, ...]) -> int:
    """Number of sets meeting part i in exactly profile[i] elements."""
    ground.check_profile(profile)
    return math.prod(binom(n, r) for n, r in zip(ground.sizes, profile))


def _part_masks_for(ground: GroundSet, part: int, r: int) -> list[int]:
    from itertools import combinations
    return [mask_of(c) for c in combinations(ground.part_elements(part), r)]


def enumerate_block(ground: GroundSet, profile: tuple[int, ...],
                    cap: int | None = None) -> Family:
    """Materialize the block family for one profile.

    Fails fast with InstanceTooLargeError when the exact size (computed
    before any enumeration) exceeds the cap.
    """
    from itertools import product

    profile = tuple(profile)
    size = block_size(ground, profile)
    limit = enumeration_cap(cap)
    if size > limit:
        raise InstanceTooLargeError(
            f"block has {size} members, cap is {limit}")
    per_part = [_part_masks_for(ground, i, r) for i, r in enumerate(profile)]
    members = set()
    for combo in product(*per_part):
        m = 0
        for piece in combo:
            m |= piece
        members.add(m)
    assert len(members) == size
    return Family(ground, frozenset(members))


def union_size(ground: GroundSet, profiles: ProfileSet) -> int:
    """Size of the profile-union family (blocks are pairwise disjoint)."""
    profiles.check_against(ground)
    return sum(block_size(ground, r) for r in profiles.profiles)


def enumerate_profile_union(ground: GroundSet, profiles: ProfileSet,
                            cap: int | None = None) -> Family:
    """Union of the blocks of every profile in the set."""
    size = union_size(ground, profiles)
    limit = enumeration_cap(cap)
    if size > limit:
        raise InstanceTooLargeError(
            f"profile union has {size} members, cap is {limit}")
    members: set[int] = set()
    for r in profiles.profiles:
        members.update(enumerate_block(ground, r, cap=limit).members)
    assert len(members) == size
    return Family(ground, frozenset(members))


def quota_profiles(ground: GroundSet, k: int,
                   quotas: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Profiles of the k-sets meeting part i in at least quotas[i] elements."""
    quotas = tuple(quotas)
    if len(quotas) != ground.p:
        raise InvalidParametersError(
            f"quota length {len(quotas)} != number of parts {ground.p}")
    for q, n in zip(quotas, ground.sizes):
        if not 0 <= q < n:
            raise InvalidParametersError(f"quota {q} out of [0, {n})")
    if k < 0:
        raise InvalidParametersError(f"k must be >= 0, got {k}")
    if sum(quotas) > k:
        raise InvalidParametersError(
            f"quotas sum to {sum(quotas)} which exceeds k={k}")
    return tuple(bounded_compositions(k, quotas, ground.sizes))


def quota_size(ground: GroundSet, k: int, quotas: tuple[int, ...]) -> int:
    return sum(block_size(ground, r) for r in quota_profiles(ground, k, quotas))


def enumerate_quota(ground: GroundSet, k: int, quotas: tuple[int, ...],
                    cap: int | None = None) -> Family:
    """All k-subsets of the ground set meeting every part's quota."""
    profs = quota_profiles(ground, k, quotas)
    size = sum(block_size(ground, r) for r in profs)
    limit = enumeration_cap(cap)
    if size > limit:
        raise InstanceTooLargeError(
            f"quota family has {size} members, cap is {limit}")
    members: set[int] = set()
    for r in profs:
        members.update(enumerate_block(ground, r, cap=limit).members)
    assert len(members) == size
    return Family(ground, frozenset(members))


# ---------------------------------------------------------------------------
# stars

def trivial_star(space: Family, center: int) -> Family:
    """Members of the space containing every element of the center mask."""
    space.ground.check_mask(center)
    return Family(space.ground,
                  frozenset(m for m in space.members if m & center == center))


def star_size(ground: GroundSet, profile: tuple[int, ...],
              dist: tuple[int, ...]) -> int:
    """Exact size of a full star inside a block.

    The star's center meets part i in dist[i] elements; the count is
    prod_i C(n_i - dist_i, r_i - dist_i).
    """
    profile = tuple(profile)
    dist = tuple(dist)
    ground.check_profile(profile)
    if len(dist) != ground.p:
        raise InvalidParametersError(
            f"distribution length {len(dist)} != number of parts {ground.p}")
    for t_i, r_i in zip(dist, profile):
        if not 0 <= t_i <= r_i:
            raise InvalidParametersError(
                f"distribution entry {t_i} out of [0, {r_i}]")
    return math.prod(binom(n - t_i, r - t_i)
                     for n, r, t_i in zip(ground.sizes, profile, dist))


# ---------------------------------------------------------------------------
# family text format
#
#   # comment lines start with '#', blank lines are skipped
#   ground: 8,10
#   1,2,3,4
#   1,2,9,10
#
# Members are written in ascending mask order (colex).  Empty members are
# not representable and are rejected on write.

def format_family(fam: Family) -> str:
    lines = ["ground: " + ",".join(str(s) for s in fam.ground.sizes)]
    for m in fam:
        if m == 0:
            raise InvalidParametersError(
                "the empty set cannot be written in the family text format")
        lines.append(",".join(str(e) for e in elements_of(m)))
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    ground: GroundSet | None = None
    masks: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ground is None:
            if not line.startswith("ground:"):
                raise InvalidParametersError(
                    f"line {lineno}: expected 'ground: n_1,...,n_p' header")
            body = line[len("ground:"):].strip()
            try:
                sizes = tuple(int(tok) for tok in body.split(","))
            except ValueError:
                raise InvalidParametersError(f"line {lineno}: bad ground sizes {body!r}")
            ground = GroundSet(sizes)
            continue
        try:
            elems = [int(tok) for tok in line.split(",")]
        except ValueError:
            raise InvalidParametersError(f"line {lineno}: bad member line {line!r}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise InvalidParametersError(
                f"line {lineno}: elements must be strictly ascending")
        if elems and (elems[0] < 1 or elems[-1] > ground.n):
            raise InvalidParametersError(
                f"line {lineno}: element out of range [1, {ground.n}]")
        masks.append(mask_of(elems))
    if ground is None:
        raise InvalidParametersError("missing 'ground:' header")
    return Family(ground, frozenset(masks))


def write_family(fam: Family, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_family(fam))


def read_family(path: str) -> Family:
    with open(path, "r", encoding="ascii") as fh:
        return parse_family(fh.read())
