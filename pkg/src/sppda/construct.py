"""Shared-and-private PDAs: the two-array construction, validity checking
(conditions D1/D2), and closed-form code counts for the two family pairings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .arrays import (
    STAR,
    AssociationProfile,
    Grid,
    ParameterError,
    PdaArray,
    PdaCheck,
    binom,
    man_pda,
    normalize_grid,
    phi,
    verify_pda,
    xi,
)


class ProfileMismatchError(ParameterError):
    pass


class DimensionMismatchError(ParameterError):
    pass


class GroupingSearchError(ParameterError):
    pass


@dataclass(frozen=True)
class SpPdaParams:
    """Parameters (K, Lambda, L, F, Z, Z^(h), S) plus derived memory ratios."""

    k: int
    num_helpers: int
    profile: AssociationProfile
    f: int
    z: int
    zh: int
    s: int

    @property
    def mh_ratio(self) -> Fraction:
        return Fraction(self.zh, self.f)

    @property
    def mp_ratio(self) -> Fraction:
        return Fraction(self.z - self.zh, self.f)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.s, self.f)


@dataclass(frozen=True)
class SpPdaArray:
    """A PDA together with a profile, helper-star count, and a grouping witness.

    ``grouping`` maps old 0-based column index to its 0-based position in the
    grouped order (None means identity: columns are already consecutive groups
    of sizes L_1, ..., L_Lambda).
    """

    pda: PdaArray
    profile: AssociationProfile
    helper_stars: int
    grouping: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.profile.num_users != self.pda.k:
            raise ProfileMismatchError(
                f"profile sums to {self.profile.num_users}, array has {self.pda.k} columns")
        if not 0 <= self.helper_stars <= self.pda.z:
            raise ParameterError(f"Z^(h)={self.helper_stars} not in [0, Z={self.pda.z}]")

    @property
    def params(self) -> SpPdaParams:
        return SpPdaParams(self.pda.k, self.profile.num_groups, self.profile,
                           self.pda.f, self.pda.z, self.helper_stars, self.pda.s)

    def group_columns(self, group: int) -> tuple[int, ...]:
        """1-based columns belonging to 1-based helper group ``group``."""
        start = sum(self.profile.parts[: group - 1])
        width = self.profile.part(group)
        positions = range(start, start + width)
        if self.grouping is None:
            return tuple(p + 1 for p in positions)
        inv = {new: old for old, new in enumerate(self.grouping)}
        return tuple(inv[p] + 1 for p in positions)

    def helper_of_user(self, k: int) -> int:
        """1-based helper group of 1-based user (column) k."""
        pos = k - 1 if self.grouping is None else self.grouping[k - 1]
        return self.profile.group_of_user(pos + 1)


@dataclass(frozen=True)
class GroupFailure:
    group: int  # 1-based helper index
    star_rows: int  # all-star rows found, < requested Z^(h)


@dataclass(frozen=True)
class SpPdaCheck:
    params: SpPdaParams | None
    witness: tuple[int, ...] | None  # grouping that realizes D2 (None = identity)
    pda_check: PdaCheck
    failures: tuple[GroupFailure, ...]

    @property
    def ok(self) -> bool:
        return self.params is not None


def _star_masks(grid: Grid) -> list[int]:
    """Per column, a bitmask of the rows holding a star."""
    f = len(grid)
    masks = []
    for c in range(len(grid[0])):
        mask = 0
        for j in range(f):
            if grid[j][c] == STAR:
                mask |= 1 << j
        masks.append(mask)
    return masks


def _check_grouping(masks: list[int], parts: tuple[int, ...], zh: int, full: int,
                    grouping: tuple[int, ...] | None) -> list[GroupFailure]:
    order = list(range(len(masks)))
    if grouping is not None:
        inv = [0] * len(masks)
        for old, new in enumerate(grouping):
            inv[new] = old
        order = inv
    failures = []
    start = 0
    for n, width in enumerate(parts, start=1):
        mask = full
        for pos in range(start, start + width):
            mask &= masks[order[pos]]
        start += width
        stars = mask.bit_count()
        if stars < zh:
            failures.append(GroupFailure(n, stars))
    return failures


def _search_grouping(masks: list[int], parts: tuple[int, ...], zh: int, full: int,
                     max_k: int = 12) -> tuple[int, ...] | None:
    """Exhaustive search for a D2 witness; groups of equal size are
    enumerated once (canonical order by smallest member)."""
    k = len(masks)
    if k > max_k:
        raise GroupingSearchError(f"witness search capped at K <= {max_k}, got K={k}")

    groups: list[tuple[int, ...]] = [()] * len(parts)

    def rec(n: int, remaining: frozenset[int]) -> bool:
        if n == len(parts):
            return True
        width = parts[n]
        if width == 0:
            groups[n] = ()
            return rec(n + 1, remaining)
        # canonical anchor for runs of equal-sized groups
        if n > 0 and parts[n - 1] == width and groups[n - 1]:
            floor = groups[n - 1][0]
        else:
            floor = -1
        candidates = sorted(c for c in remaining if c > floor)
        for combo in itertools.combinations(candidates, width):
            mask = full
            for c in combo:
                mask &= masks[c]
            if mask.bit_count() < zh:
                continue
            groups[n] = combo
            if rec(n + 1, remaining - set(combo)):
                return True
        return False

    if not rec(0, frozenset(range(k))):
        return None
    witness = [0] * k
    pos = 0
    for combo in groups:
        for c in combo:
            witness[c] = pos
            pos += 1
    return tuple(witness)


def verify_sppda(rows, profile: AssociationProfile, zh: int,
                 grouping: tuple[int, ...] | None = None,
                 search: bool = False) -> SpPdaCheck:
    """Check D1 (PDA validity) and D2 (Z^(h) all-star rows per column group).

    With ``search`` the column-to-group assignment is searched exhaustively;
    otherwise the supplied grouping (default identity) is checked as given.
    Exhausting the search means "no witness", reported as failures, not an error.
    """
    pda_check = verify_pda(rows)
    grid = normalize_grid(rows)
    f = len(grid)
    k = len(grid[0])
    if profile.num_users != k:
        raise ProfileMismatchError(f"profile sums to {profile.num_users}, grid has {k} columns")
    if not 0 <= zh <= f:
        raise ParameterError(f"Z^(h)={zh} not in [0, F={f}]")
    if not pda_check.ok:
        return SpPdaCheck(None, None, pda_check, ())

    masks = _star_masks(grid)
    full = (1 << f) - 1
    if search:
        witness = _search_grouping(masks, profile.parts, zh, full)
        if witness is None:
            # no assignment works; report the identity grouping's failures
            failures = _check_grouping(masks, profile.parts, zh, full, None)
            return SpPdaCheck(None, None, pda_check, tuple(failures))
    else:
        witness = grouping
        failures = _check_grouping(masks, profile.parts, zh, full, grouping)
        if failures:
            return SpPdaCheck(None, None, pda_check, tuple(failures))

    kk, ff, z, s = pda_check.params
    params = SpPdaParams(kk, profile.num_groups, profile, ff, z, zh, s)
    return SpPdaCheck(params, witness, pda_check, ())


def _pair_tables(p1: PdaArray, p2: PdaArray, profile: AssociationProfile):
    if p1.k != profile.num_groups:
        raise DimensionMismatchError(
            f"first PDA has {p1.k} columns, profile has {profile.num_groups} groups")
    if p2.k != profile.part(1):
        raise DimensionMismatchError(
            f"second PDA has {p2.k} columns, largest group is {profile.part(1)}")
    xi1 = [xi(p1, s) for s in range(1, p1.s + 1)]
    phi2 = [0] + [phi(p2, l) for l in range(1, p2.k + 1)]
    widths = [profile.part(n) for n in xi1]  # L_{xi(s)} per code s of p1
    return xi1, phi2, widths


def s_count(p1: PdaArray, p2: PdaArray, profile: AssociationProfile) -> int:
    """Distinct-code count of the constructed SP-PDA, without materializing it."""
    _, phi2, widths = _pair_tables(p1, p2, profile)
    return sum(phi2[w] for w in widths)


def construct_sppda(p1: PdaArray, p2: PdaArray, profile: AssociationProfile,
                    validate: bool = True) -> SpPdaArray:
    """Build the F1*F2 x K SP-PDA from a Lambda-column PDA and an L_1-column PDA.

    Stars of p1 blow up to all-star blocks; a code s of p1 becomes a copy of
    p2 truncated to the group width, with its codes renumbered
    order-preservingly into the slice of [S] reserved for s.
    """
    xi1, phi2, widths = _pair_tables(p1, p2, profile)

    # Per p1-code renumbering of the codes living in p2's first L_{xi(s)} columns.
    renumber: list[dict[int, int]] = []
    offset = 0
    for s in range(p1.s):
        domain = sorted({e for c in range(widths[s]) for e in p2.column_codes(c + 1)})
        renumber.append({old: offset + i + 1 for i, old in enumerate(domain)})
        offset += phi2[widths[s]]

    parts = profile.parts
    rows = []
    for f1 in range(p1.f):
        p1_row = p1.grid[f1]
        for f2 in range(p2.f):
            p2_row = p2.grid[f2]
            row: list[int] = []
            for lam in range(p1.k):
                width = parts[lam]
                if width == 0:
                    continue
                e = p1_row[lam]
                if e == STAR:
                    row.extend([STAR] * width)
                else:
                    relabel = renumber[e - 1]
                    row.extend(STAR if p2_row[c] == STAR else relabel[p2_row[c]]
                               for c in range(width))
            rows.append(tuple(row))

    zh = p1.z * p2.f
    if validate:
        pda = PdaArray.from_grid(rows)
    else:
        z = p1.z * p2.f + (p1.f - p1.z) * p2.z
        pda = PdaArray(tuple(rows), profile.num_users, p1.f * p2.f, z, offset)
    return SpPdaArray(pda, profile, zh, None)


def s_closed_form_man(num_helpers: int, t1: int, profile: AssociationProfile, t2: int) -> int:
    """Closed-form S for the MaN(Lambda, t1) x MaN(L_1, t2) pairing."""
    if profile.num_groups != num_helpers:
        raise ProfileMismatchError(f"profile has {profile.num_groups} parts, expected {num_helpers}")
    l1 = profile.part(1)
    if not 0 <= t1 <= num_helpers or not 0 <= t2 <= l1:
        raise ParameterError(f"t1={t1}, t2={t2} out of range for Lambda={num_helpers}, L1={l1}")
    total = 0
    for n in range(1, num_helpers - t1 + 1):
        ln = profile.part(n)
        total += binom(num_helpers - n, t1) * (binom(l1, t2 + 1) - binom(l1 - ln, t2 + 1))
    return total


def s_closed_form_construction_a(q: int, m: int, profile: AssociationProfile, t2: int) -> int:
    """Closed-form S for the ConstructionA(q, m) x MaN(L_1, t2) pairing
    (canonical column order of the first PDA)."""
    if profile.num_groups != q * (m + 1):
        raise ProfileMismatchError(
            f"profile has {profile.num_groups} parts, expected q(m+1)={q * (m + 1)}")
    l1 = profile.part(1)
    if q < 2 or m < 1 or not 0 <= t2 <= l1:
        raise ParameterError(f"bad parameters q={q}, m={m}, t2={t2}")
    inner = sum(binom(l1, t2 + 1) - binom(l1 - profile.part(n), t2 + 1) for n in range(1, q + 1))
    return q ** (m - 1) * (q - 1) * inner


def man_sppda_params(k: int, t: int, profile: AssociationProfile) -> SpPdaParams:
    """The MaN(K, t) PDA viewed directly as an SP-PDA.

    Z^(h) = C(K - L_1, t - L_1), which is zero whenever t < L_1 (any column
    group of size exceeding t pins no common star rows).
    """
    if profile.num_users != k:
        raise ProfileMismatchError(f"profile sums to {profile.num_users}, expected K={k}")
    if not 0 <= t <= k:
        raise ParameterError(f"t={t} not in [0, K={k}]")
    l1 = profile.part(1)
    return SpPdaParams(k, profile.num_groups, profile,
                       binom(k, t), binom(k - 1, t - 1), binom(k - l1, t - l1),
                       binom(k, t + 1))


def man_sppda(k: int, t: int, profile: AssociationProfile) -> SpPdaArray:
    """The MaN(K, t) PDA packaged as an SP-PDA with its natural Z^(h)."""
    params = man_sppda_params(k, t, profile)
    return SpPdaArray(man_pda(k, t), profile, params.zh, None)
