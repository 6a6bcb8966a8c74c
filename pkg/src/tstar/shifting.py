"""Compression operators on set families.

The elementary move replaces element j by element i inside a member
whenever j is present and i is absent; the family-level operator keeps a
compressed image only when it does not collide with an existing member.
Family size is always preserved.  Closures sweep the pairs i < j inside
one part (or all parts round-robin), restarting after every productive
application, until the family is a fixed point of every in-part move.

Each productive application strictly decreases the total element sum of
the family, which bounds the number of steps.
"""

from __future__ import annotations

from .core import Family, GroundSet, InvalidParametersError

__all__ = [
    "compress_member",
    "compress_family",
    "shift_closure",
    "l_shift_closure",
    "full_shift_closure",
    "is_l_shifted",
    "is_shifted",
    "simultaneous_closure",
    "family_weight",
]


def compress_member(mask: int, i: int, j: int, n: int | None = None) -> int:
    """Replace j by i in the mask when j is in and i is out; else identity."""
    if i < 1 or j < 1:
        raise InvalidParametersError(f"elements are 1-based, got i={i}, j={j}")
    if i == j:
        raise InvalidParametersError("need two distinct elements")
    if n is not None and (i > n or j > n):
        raise InvalidParametersError(f"element out of range [1, {n}]")
    bi = 1 << (i - 1)
    bj = 1 << (j - 1)
    if mask & bj and not mask & bi:
        return (mask ^ bj) | bi
    return mask


def compress_family(fam: Family, i: int, j: int) -> Family:
    """Apply the (i, j) move to every member, keeping collisions in place.

    A member whose compressed image already belongs to the family stays;
    every other member is replaced by its image.  |result| == |fam|.
    """
    n = fam.ground.n
    members = fam.members
    out = set()
    for m in members:
        g = compress_member(m, i, j, n)
        if g in members:
            out.add(m)
        else:
            out.add(g)
    return Family(fam.ground, frozenset(out))


def family_weight(fam: Family) -> int:
    """Total element sum over all members; strictly drops per productive move."""
    total = 0
    for m in fam.members:
        for e in _iter_bits(m):
            total += e
    return total


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def _part_pairs(ground: GroundSet, part: int) -> list[tuple[int, int]]:
    elems = list(ground.part_elements(part))
    return [(elems[a], elems[b])
            for a in range(len(elems)) for b in range(a + 1, len(elems))]


def shift_closure(fam: Family, parts: tuple[int, ...] | None = None) -> tuple[Family, int]:
    """Close under the in-part moves for the given parts (default: all).

    Sweeps pairs (i, j), i < j, in ascending element order part by part,
    restarting from the first pair after any change.  Returns the fixed
    point and the number of productive applications.
    """
    ground = fam.ground
    if parts is None:
        parts = tuple(range(ground.p))
    pairs = []
    for l in parts:
        pairs.extend(_part_pairs(ground, l))
    steps = 0
    changed = True
    while changed:
        changed = False
        for i, j in pairs:
            nxt = compress_family(fam, i, j)
            if nxt != fam:
                fam = nxt
                steps += 1
                changed = True
                break
    return fam, steps


def l_shift_closure(fam: Family, part: int) -> Family:
    """Fixed point under the moves of one part."""
    closed, _ = shift_closure(fam, (part,))
    return closed


def full_shift_closure(fam: Family) -> Family:
    """Fixed point under the moves of every part."""
    closed, _ = shift_closure(fam)
    return closed


def is_l_shifted(fam: Family, part: int) -> bool:
    """True when every in-part move of the given part fixes the family."""
    for i, j in _part_pairs(fam.ground, part):
        if compress_family(fam, i, j) != fam:
            return False
    return True


def is_shifted(fam: Family) -> bool:
    """True when the family is l-shifted for every part l."""
    return all(is_l_shifted(fam, l) for l in range(fam.ground.p))


def simultaneous_closure(fams: list[Family]) -> list[Family]:
    """Apply every productive in-part move to all families in lockstep.

    The same (i, j) move is applied to each family whenever it changes at
    least one of them; the sweep restarts after every productive step and
    stops when all families are simultaneously fixed.  Useful because the
    lockstep moves preserve cross-intersection properties between the
    families.
    """
    if not fams:
        return []
    ground = fams[0].ground
    for f in fams[1:]:
        if f.ground != ground:
            raise InvalidParametersError("families must share a ground set")
    pairs = []
    for l in range(ground.p):
        pairs.extend(_part_pairs(ground, l))
    changed = True
    while changed:
        changed = False
        for i, j in pairs:
            nxt = [compress_family(f, i, j) for f in fams]
            if any(a != b for a, b in zip(nxt, fams)):
                fams = nxt
                changed = True
                break
    return fams
