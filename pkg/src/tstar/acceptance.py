"""The numbered acceptance checks.

Each criterion is one callable producing a CriterionOutcome with the
observed numbers and, on failure, witness notes.  The repro subcommand
and tests/test_acceptance.py both walk ACCEPTANCE_CHECKS, so the gate
is runnable from either side.  Randomized criteria use fixed seeds;
every run sees the same instances.  A criterion with a stated runtime
budget fails when the budget is exceeded, even if the numbers agree.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .bounds import (
    enumerate_distribution_argmax,
    exchange_optimal,
    max_star_size,
    max_union_star_size,
    optimal_t_distributions,
    ratio_bound,
)
from .core import (
    Family,
    GroundSet,
    InvalidParametersError,
    ProfileSet,
    binom,
    block_size,
    bounded_compositions,
    enumerate_block,
    mask_of,
)
from .kneser import KneserParams, is_connected, is_connected_union_find
from .search import brute_force_max, max_t_intersecting
from .shifting import (
    compress_family,
    family_weight,
    is_l_shifted,
    shift_closure,
    simultaneous_closure,
)
from .verify import (
    check_partwise_prefix_intersection,
    check_prefix_intersection,
    is_t_intersecting,
)

MAX_NOTES = 5


@dataclass
class CriterionOutcome:
    passed: bool
    details: dict
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass(frozen=True)
class Criterion:
    number: int
    slug: str
    label: str
    budget: float | None
    body: Callable[[], CriterionOutcome]

    def run(self) -> CriterionOutcome:
        start = time.perf_counter()
        outcome = self.body()
        outcome.seconds = time.perf_counter() - start
        if self.budget is not None and outcome.seconds > self.budget:
            outcome.passed = False
            outcome.notes.append(
                f"runtime {outcome.seconds:.1f}s exceeds the "
                f"{self.budget:.0f}s budget")
        return outcome


def _note(notes: list[str], message: str) -> None:
    if len(notes) < MAX_NOTES:
        notes.append(message)


# ---------------------------------------------------------------------------
# 1: the large non-trivial family beats the best star bound

def _criterion_counterexample() -> CriterionOutcome:
    notes: list[str] = []
    ground = GroundSet((8, 10))
    k = (4, 4)
    bound = max_star_size(2, ground, k)
    dists = optimal_t_distributions(2, ground, k)
    space = enumerate_block(ground, k)
    head = mask_of(range(1, 5))
    fam = Family(ground, frozenset(
        m for m in space.members if (m & head).bit_count() >= 3))
    intersecting = is_t_intersecting(fam, 2)
    if bound != 3150:
        _note(notes, f"star bound is {bound}, expected 3150")
    if dists != {(2, 0)}:
        _note(notes, f"optimal distributions {sorted(dists)}, expected [(2, 0)]")
    if len(fam.members) != 3570:
        _note(notes, f"family has {len(fam.members)} members, expected 3570")
    if not intersecting:
        _note(notes, "the half-prefix family is not 2-intersecting")
    return CriterionOutcome(
        passed=not notes,
        details={"star_bound": bound, "family_size": len(fam.members),
                 "is_2_intersecting": intersecting},
        notes=notes)


# ---------------------------------------------------------------------------
# shared grid for criteria 2 and 3

def _grid_instances():
    per_part = [(n, k) for k in range(1, 6) for n in range(k + 1, 13)]
    for p in (1, 2, 3):
        for combo in product(per_part, repeat=p):
            yield (tuple(n for n, _ in combo), tuple(k for _, k in combo))


def _criterion_distribution_oracle() -> CriterionOutcome:
    notes: list[str] = []
    checked = excluded = mismatches = 0
    for sizes, ks in _grid_instances():
        ground = GroundSet(sizes)
        total = sum(ks)
        for t in range(1, 5):
            if t > total:
                excluded += 1
                for fn in (optimal_t_distributions, enumerate_distribution_argmax):
                    try:
                        fn(t, ground, ks)
                        mismatches += 1
                        _note(notes, f"{fn.__name__} accepted t={t} > {total} "
                                     f"on n={sizes} k={ks}")
                    except InvalidParametersError:
                        pass
                continue
            greedy = optimal_t_distributions(t, ground, ks)
            exact = enumerate_distribution_argmax(t, ground, ks)
            checked += 1
            if greedy != exact.optimal_distributions:
                mismatches += 1
                _note(notes, f"n={sizes} k={ks} t={t}: greedy {sorted(greedy)} "
                             f"!= scan {sorted(exact.optimal_distributions)}")
    return CriterionOutcome(
        passed=mismatches == 0,
        details={"instances": checked, "excluded": excluded,
                 "mismatches": mismatches},
        notes=notes)


def _criterion_exchange_condition() -> CriterionOutcome:
    notes: list[str] = []
    centers = mismatches = 0
    for sizes, ks in _grid_instances():
        ground = GroundSet(sizes)
        total = sum(ks)
        for t in range(1, 5):
            if t > total:
                continue
            dists = list(bounded_compositions(
                t, (0,) * len(ks), tuple(min(t, k_i) for k_i in ks)))
            star = []
            for dist in dists:
                v = 1
                for n_i, k_i, s_i in zip(sizes, ks, dist):
                    v *= binom(n_i - s_i, k_i - s_i)
                star.append(v)
            best = max(star)
            for dist, v in zip(dists, star):
                center = 0
                for part, s_i in enumerate(dist):
                    center |= ground.prefix_mask(part, s_i)
                balanced = exchange_optimal(ground, ks, t, center)
                centers += 1
                if (v == best) != balanced:
                    mismatches += 1
                    _note(notes, f"n={sizes} k={ks} t={t} dist={dist}: "
                                 f"size {v} of best {best} but exchange "
                                 f"condition says {balanced}")
    return CriterionOutcome(
        passed=mismatches == 0,
        details={"centers": centers, "mismatches": mismatches},
        notes=notes)


# ---------------------------------------------------------------------------
# 4: compression properties at scale

def _criterion_shifting() -> CriterionOutcome:
    notes: list[str] = []
    rng = random.Random(1009)
    trials = 10_000
    failures = 0
    for _ in range(trials):
        p = rng.randint(1, 3)
        sizes = tuple(rng.randint(1, 5) for _ in range(p))
        ground = GroundSet(sizes)
        core = rng.randint(0, ground.full_mask)
        fam = Family(ground, frozenset(
            core | rng.randint(0, ground.full_mask)
            for _ in range(rng.randint(1, 6))))
        ms = list(fam.members)
        t = min((a & b).bit_count() for a in ms for b in ms)

        if ground.n >= 2:
            i, j = rng.sample(range(1, ground.n + 1), 2)
            moved = compress_family(fam, i, j)
            if len(moved.members) != len(fam.members):
                failures += 1
                _note(notes, f"size changed under ({i},{j}) on {sorted(ms)}")
            if not is_t_intersecting(moved, t):
                failures += 1
                _note(notes, f"{t}-intersection lost under ({i},{j}) "
                             f"on {sorted(ms)}")

        w0 = family_weight(fam)
        closed, steps = shift_closure(fam)
        if steps > w0 - family_weight(closed):
            failures += 1
            _note(notes, f"{steps} steps exceed the weight drop on {sorted(ms)}")
        if len(closed.members) != len(fam.members):
            failures += 1
            _note(notes, f"closure changed the size on {sorted(ms)}")
        for part in range(p):
            if not is_l_shifted(closed, part):
                failures += 1
                _note(notes, f"closure not shifted in part {part} "
                             f"on {sorted(ms)}")
                break
    return CriterionOutcome(
        passed=failures == 0,
        details={"trials": trials, "failures": failures},
        notes=notes)


# ---------------------------------------------------------------------------
# 5: prefix-window inequalities for shifted cross-intersecting pairs

def _criterion_prefix_windows() -> CriterionOutcome:
    notes: list[str] = []
    failures = 0

    rng = random.Random(2003)
    single = 0
    while single < 5000:
        n = rng.randint(4, 10)
        ground = GroundSet((n,))
        t = rng.randint(1, 2)
        r = rng.randint(t, max(t, n // 2))
        s = rng.randint(r, n - 1) if r < n else r
        core = rng.sample(range(1, n + 1), t)
        rest = [e for e in range(1, n + 1) if e not in core]
        a = Family(ground, frozenset(
            mask_of(core) | mask_of(rng.sample(rest, r - t))
            for _ in range(rng.randint(1, 4))))
        b = Family(ground, frozenset(
            mask_of(core) | mask_of(rng.sample(rest, s - t))
            for _ in range(rng.randint(1, 4))))
        sa, sb = simultaneous_closure([a, b])
        single += 1
        if not check_prefix_intersection(sa, sb, t, r, s):
            failures += 1
            _note(notes, f"window failed: n={n} t={t} r={r} s={s} "
                         f"a={sorted(sa.members)} b={sorted(sb.members)}")

    rng = random.Random(2011)
    multi = 0
    while multi < 5000:
        p = rng.randint(2, 3)
        sizes = tuple(rng.randint(4, 10) for _ in range(p))
        ground = GroundSet(sizes)
        ra = tuple(rng.randint(1, (s - 1) // 2) for s in sizes)
        rb = tuple(rng.randint(1, max(1, s - 1 - x))
                   for s, x in zip(sizes, ra))
        if any(not s > x + y - 1 for s, x, y in zip(sizes, ra, rb)):
            continue
        t = rng.randint(1, 2)

        def member(profile):
            m = 0
            for part, r_i in enumerate(profile):
                m |= mask_of(rng.sample(list(ground.part_elements(part)), r_i))
            return m

        a = Family(ground, frozenset(member(ra) for _ in range(rng.randint(1, 3))))
        b = Family(ground, frozenset(member(rb) for _ in range(rng.randint(1, 3))))
        if min((x & y).bit_count() for x in a.members for y in b.members) < t:
            continue
        sa, sb = simultaneous_closure([a, b])
        multi += 1
        if not check_partwise_prefix_intersection(sa, sb, t, ra, rb):
            failures += 1
            _note(notes, f"partwise window failed: n={sizes} t={t} "
                         f"ra={ra} rb={rb} a={sorted(sa.members)} "
                         f"b={sorted(sb.members)}")

    # sensitivity: without shiftedness the partwise conclusion can fail
    tail = Family(GroundSet((7, 7)), frozenset({mask_of([6, 7, 13, 14])}))
    violated = not check_partwise_prefix_intersection(
        tail, tail, 2, (2, 2), (2, 2), require_shifted=False)
    if not violated:
        failures += 1
        _note(notes, "the tail-located pair satisfied the windows; "
                     "expected a violation without shiftedness")
    return CriterionOutcome(
        passed=failures == 0,
        details={"single_part_instances": single, "partwise_instances": multi,
                 "non_shifted_violation_shown": violated,
                 "failures": failures},
        notes=notes)


# ---------------------------------------------------------------------------
# 6: classical single-part maxima via the solver

def _criterion_classical_maxima() -> CriterionOutcome:
    notes: list[str] = []
    observed = {}
    for n, k in ((5, 2), (7, 3), (9, 4)):
        space = enumerate_block(GroundSet((n,)), (k,))
        result = max_t_intersecting(space, 1)
        expected = binom(n - 1, k - 1)
        observed[f"{n},{k}"] = result.max_size
        if result.max_size != expected:
            _note(notes, f"(n,k)=({n},{k}): got {result.max_size}, "
                         f"expected {expected}")
        if result.is_trivial_star is None:
            _note(notes, f"(n,k)=({n},{k}): witness is not a full star")
    return CriterionOutcome(passed=not notes, details=observed, notes=notes)


# ---------------------------------------------------------------------------
# 7: solver against the exhaustive oracle

def _criterion_solver_oracle() -> CriterionOutcome:
    notes: list[str] = []
    checked = mismatches = 0
    per_part = [(n, k) for n in range(1, 7) for k in range(1, min(3, n) + 1)]
    for p in (1, 2):
        for combo in product(per_part, repeat=p):
            sizes = tuple(n for n, _ in combo)
            ks = tuple(k for _, k in combo)
            ground = GroundSet(sizes)
            if block_size(ground, ks) > 24:
                continue
            space = enumerate_block(ground, ks)
            for t in (1, 2):
                got = max_t_intersecting(space, t)
                want = brute_force_max(space, t, mode="subsets")
                checked += 1
                if got.max_size != want.max_size:
                    mismatches += 1
                    _note(notes, f"n={sizes} k={ks} t={t}: solver "
                                 f"{got.max_size} != oracle {want.max_size}")
                elif not is_t_intersecting(got.witness, t):
                    mismatches += 1
                    _note(notes, f"n={sizes} k={ks} t={t}: witness invalid")
    return CriterionOutcome(
        passed=mismatches == 0,
        details={"instances": checked, "mismatches": mismatches},
        notes=notes)


# ---------------------------------------------------------------------------
# 8: disjointness-graph connectivity, two independent routes

def _criterion_kneser() -> CriterionOutcome:
    notes: list[str] = []
    connected_set = [((5, 2),), ((7, 3),), ((5, 2), (5, 2)), ((5, 2), (7, 3))]
    details = {}
    failures = 0
    for pairs in connected_set:
        params = KneserParams(pairs)
        got = is_connected(params)
        details[str(pairs)] = got
        if not got:
            failures += 1
            _note(notes, f"{pairs} reported disconnected")
    lone = KneserParams(((4, 2),))
    if is_connected(lone):
        failures += 1
        _note(notes, "the 2-subset disjointness graph on [4] reported "
                     "connected; it is a perfect matching")
    for pairs in connected_set + [((4, 2),)]:
        params = KneserParams(pairs)
        if params.vertex_count > 10_000:
            continue
        if is_connected(params) != is_connected_union_find(params):
            failures += 1
            _note(notes, f"{pairs}: search and union-find disagree")
    return CriterionOutcome(passed=failures == 0, details=details, notes=notes)


# ---------------------------------------------------------------------------
# 9: union-space star bound, frozen value plus block consistency

def _criterion_union_bound() -> CriterionOutcome:
    notes: list[str] = []
    report = max_union_star_size(1, GroundSet((6, 6)),
                                 ProfileSet(((2, 2), (3, 2))))
    if report.value != 225:
        _note(notes, f"union bound {report.value}, expected 225")
    if report.optimal_distributions != {(1, 0)}:
        _note(notes, f"distributions {sorted(report.optimal_distributions)}, "
                     f"expected [(1, 0)]")
    rng = random.Random(3019)
    agreements = 0
    for _ in range(100):
        p = rng.randint(1, 3)
        ks = tuple(rng.randint(1, 4) for _ in range(p))
        sizes = tuple(k_i + rng.randint(1, 6) for k_i in ks)
        ground = GroundSet(sizes)
        t = rng.randint(1, min(ks))
        single = max_union_star_size(t, ground, ProfileSet((ks,)))
        block = max_star_size(t, ground, ks)
        if single.value != block:
            _note(notes, f"n={sizes} k={ks} t={t}: union route "
                         f"{single.value} != block route {block}")
        else:
            agreements += 1
    return CriterionOutcome(
        passed=not notes,
        details={"value": report.value, "singleton_agreements": agreements},
        notes=notes)


# ---------------------------------------------------------------------------
# 10: density bound versus the exact maximum

def _criterion_density_bound() -> CriterionOutcome:
    notes: list[str] = []
    ground = GroundSet((4, 4))
    k = (2, 2)
    rb = ratio_bound(ground, k)
    space = enumerate_block(ground, k)
    result = max_t_intersecting(space, 1)
    if rb.absolute != 18:
        _note(notes, f"density bound {rb.absolute}, expected 18")
    if result.max_size > rb.absolute:
        _note(notes, f"exact maximum {result.max_size} exceeds the "
                     f"bound {rb.absolute}")
    return CriterionOutcome(
        passed=not notes,
        details={"bound": rb.absolute, "exact_maximum": result.max_size},
        notes=notes)


ACCEPTANCE_CHECKS = [
    Criterion(1, "counterexample", "non-trivial family beats the star bound",
              5.0, _criterion_counterexample),
    Criterion(2, "distribution-oracle", "greedy optimal distributions match "
              "the exhaustive scan", 60.0, _criterion_distribution_oracle),
    Criterion(3, "exchange-condition", "exchange condition characterizes "
              "density-maximal centers", None, _criterion_exchange_condition),
    Criterion(4, "shifting", "compression preserves size and intersection; "
              "closures terminate shifted", None, _criterion_shifting),
    Criterion(5, "prefix-windows", "shifted cross-intersecting pairs meet "
              "inside prefix windows", None, _criterion_prefix_windows),
    Criterion(6, "classical-maxima", "single-part maxima match the "
              "closed form", 120.0, _criterion_classical_maxima),
    Criterion(7, "solver-oracle", "solver equals brute force on the "
              "micro grid", 60.0, _criterion_solver_oracle),
    Criterion(8, "kneser-connectivity", "disjointness products connected "
              "exactly as expected", None, _criterion_kneser),
    Criterion(9, "union-bound", "union-space star bound frozen value and "
              "block consistency", None, _criterion_union_bound),
    Criterion(10, "density-bound", "exact maximum respects the density "
              "bound", 10.0, _criterion_density_bound),
]
