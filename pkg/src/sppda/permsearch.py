"""Search over equivalent PDAs (column permutations) for the pairing that
minimizes the constructed SP-PDA's code count, plus the sufficiency checks
for when the identity ordering is already optimal.

Permutations are tuples mapping old 0-based column index to new 0-based
position, iterated in lexicographic order for deterministic tie-breaking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .arrays import STAR, AssociationProfile, ParameterError, PdaArray, permute_columns
from .construct import DimensionMismatchError, s_count


class BudgetExceededError(ParameterError):
    pass


@dataclass(frozen=True)
class PermutationPair:
    pi1: tuple[int, ...]
    pi2: tuple[int, ...]
    s_value: int


@dataclass(frozen=True)
class SearchResult:
    best: PermutationPair
    s_min: int
    s_max: int
    evaluations: int


def _code_columns(pda: PdaArray) -> list[frozenset[int]]:
    """For each code 1..S, the 0-based columns in which it appears."""
    cols: list[set[int]] = [set() for _ in range(pda.s)]
    for row in pda.grid:
        for c, e in enumerate(row):
            if e != STAR:
                cols[e - 1].add(c)
    return [frozenset(s) for s in cols]


def phi_vector(pda: PdaArray, perm: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """(phi(1), ..., phi(K)) of the array under an optional column permutation."""
    code_cols = _code_columns(pda)
    if perm is None:
        perm = tuple(range(pda.k))
    counts = [0] * pda.k
    for cols in code_cols:
        counts[min(perm[c] for c in cols)] += 1
    return tuple(itertools.accumulate(counts))


def _xi_counts(code_cols, perm, k: int) -> tuple[int, ...]:
    """How many codes have their first (smallest-position) column at each position."""
    counts = [0] * k
    for cols in code_cols:
        counts[min(perm[c] for c in cols)] += 1
    return tuple(counts)


def exhaustive_best(p1: PdaArray, p2: PdaArray, profile: AssociationProfile,
                    budget: int = 10 ** 7) -> SearchResult:
    """Exact min and max of S over all column-permutation pairs.

    Ties go to the lexicographically smallest (pi1, pi2).  Evaluation works on
    xi/phi tables only; permutations sharing a table are collapsed to their
    lexicographically first representative.
    """
    if p1.k != profile.num_groups or p2.k != profile.part(1):
        raise DimensionMismatchError("PDA column counts do not match the profile")
    evaluations = math.factorial(p1.k) * math.factorial(p2.k)
    if evaluations > budget:
        raise BudgetExceededError(
            f"{evaluations} permutation pairs exceed budget {budget}; use the greedy reorder")

    parts = profile.parts
    cols2 = _code_columns(p2)
    # Distinct phi-at-group-width tables for p2, first representative wins.
    phi_tables: dict[tuple[int, ...], tuple[int, ...]] = {}
    for pi2 in itertools.permutations(range(p2.k)):
        counts = _xi_counts(cols2, pi2, p2.k)
        prefix = tuple(itertools.accumulate(counts))
        table = tuple(prefix[w - 1] if w > 0 else 0 for w in parts)
        phi_tables.setdefault(table, pi2)

    cols1 = _code_columns(p1)
    count_classes: dict[tuple[int, ...], tuple[int, ...]] = {}
    for pi1 in itertools.permutations(range(p1.k)):
        count_classes.setdefault(_xi_counts(cols1, pi1, p1.k), pi1)

    s_min = None
    s_max = None
    best = None
    for counts, pi1 in sorted(count_classes.items(), key=lambda kv: kv[1]):
        for table, pi2 in sorted(phi_tables.items(), key=lambda kv: kv[1]):
            s_val = sum(c * t for c, t in zip(counts, table))
            if s_max is None or s_val > s_max:
                s_max = s_val
            if s_min is None or s_val < s_min or \
                    (s_val == s_min and (pi1, pi2) < (best.pi1, best.pi2)):
                s_min = s_val
                best = PermutationPair(pi1, pi2, s_val)
    return SearchResult(best, s_min, s_max, evaluations)


def top_pairs(p1: PdaArray, p2: PdaArray, profile: AssociationProfile,
              limit: int = 10, budget: int = 10 ** 7) -> list[PermutationPair]:
    """The ``limit`` smallest-S permutation pairs (class representatives),
    ordered by (S, pi1, pi2)."""
    if math.factorial(p1.k) * math.factorial(p2.k) > budget:
        raise BudgetExceededError("permutation space exceeds budget")
    parts = profile.parts
    cols1 = _code_columns(p1)
    cols2 = _code_columns(p2)
    count_classes: dict[tuple[int, ...], tuple[int, ...]] = {}
    for pi1 in itertools.permutations(range(p1.k)):
        count_classes.setdefault(_xi_counts(cols1, pi1, p1.k), pi1)
    phi_tables: dict[tuple[int, ...], tuple[int, ...]] = {}
    for pi2 in itertools.permutations(range(p2.k)):
        prefix = tuple(itertools.accumulate(_xi_counts(cols2, pi2, p2.k)))
        table = tuple(prefix[w - 1] if w > 0 else 0 for w in parts)
        phi_tables.setdefault(table, pi2)
    pairs = [
        PermutationPair(pi1, pi2, sum(c * t for c, t in zip(counts, table)))
        for counts, pi1 in count_classes.items()
        for table, pi2 in phi_tables.items()
    ]
    pairs.sort(key=lambda p: (p.s_value, p.pi1, p.pi2))
    return pairs[:limit]


def check_E1(p1: PdaArray, budget: int = 10 ** 7) -> bool:
    """True iff p1's phi vector is componentwise minimal over all column orders."""
    if math.factorial(p1.k) > budget:
        raise BudgetExceededError(f"{p1.k}! permutations exceed budget {budget}")
    base = phi_vector(p1)
    for perm in itertools.permutations(range(p1.k)):
        other = phi_vector(p1, perm)
        if any(b > o for b, o in zip(base, other)):
            return False
    return True


def check_E2(p2: PdaArray, profile: AssociationProfile, budget: int = 10 ** 7) -> bool:
    """True iff p2's phi values at the group widths (L_Lambda, ..., L_1) are
    componentwise minimal over all column orders."""
    if p2.k != profile.part(1):
        raise DimensionMismatchError(
            f"second PDA has {p2.k} columns, largest group is {profile.part(1)}")
    if math.factorial(p2.k) > budget:
        raise BudgetExceededError(f"{p2.k}! permutations exceed budget {budget}")
    widths = tuple(reversed(profile.parts))
    base = phi_vector(p2)
    base_at = tuple(base[w - 1] if w > 0 else 0 for w in widths)
    for perm in itertools.permutations(range(p2.k)):
        other = phi_vector(p2, perm)
        other_at = tuple(other[w - 1] if w > 0 else 0 for w in widths)
        if any(b > o for b, o in zip(base_at, other_at)):
            return False
    return True


def heuristic_reorder(pda: PdaArray, profile: AssociationProfile | None = None,
                      side: str = "first") -> PdaArray:
    """Greedy column reordering: repeatedly append the column introducing the
    fewest new codes (ties to the lowest original index).

    For side "second" the order only matters through the prefix lengths in the
    profile, so the result is kept only if its phi values at those lengths are
    componentwise no worse than the input's; side "first" applies the same
    guard on the full phi vector.  Falling back to the input order keeps the
    no-worsening guarantee for any partner array.
    """
    if side not in ("first", "second"):
        raise ParameterError(f"side must be 'first' or 'second', got {side!r}")
    if side == "second" and profile is None:
        raise ParameterError("side 'second' needs the association profile")

    col_codes = [pda.column_codes(c + 1) for c in range(pda.k)]
    remaining = list(range(pda.k))
    seen: set[int] = set()
    order: list[int] = []
    while remaining:
        chosen = min(remaining, key=lambda c: (len(col_codes[c] - seen), c))
        order.append(chosen)
        seen |= col_codes[chosen]
        remaining.remove(chosen)
    perm = [0] * pda.k
    for pos, old in enumerate(order):
        perm[old] = pos
    candidate = tuple(perm)

    base = phi_vector(pda)
    new = phi_vector(pda, candidate)
    if side == "first":
        improved = all(n <= b for n, b in zip(new, base))
    else:
        widths = [w for w in profile.parts if w > 0]
        improved = all(new[w - 1] <= base[w - 1] for w in widths)
    if not improved:
        return pda
    return permute_columns(pda, candidate)
