"""Placement delivery arrays: validity checking, column statistics, and the
two canonical families (MaN and Construction A).

A grid is a rectangular tuple-of-tuples of ints where ``STAR`` (0) marks a
cached cell and positive integers are transmission codes.  Rows, columns and
codes are 1-based in every public signature, matching the usual convention
for these arrays; only raw Python indexing into ``grid`` is 0-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

STAR = 0

Grid = tuple[tuple[int, ...], ...]


class PdaError(ValueError):
    """Base class for array construction / validation errors."""


class NonRectangularError(PdaError):
    pass


class NonPositiveCodeError(PdaError):
    pass


class InvalidPermutationError(PdaError):
    pass


class ParameterError(PdaError):
    pass


class IndexOutOfRangeError(PdaError):
    pass


class CodeAbsentError(PdaError):
    pass


class InvalidPdaError(PdaError):
    """A grid offered as a PDA failed validation."""

    def __init__(self, violations: tuple["Violation", ...]):
        self.violations = violations
        summary = "; ".join(v.detail for v in violations[:5])
        if len(violations) > 5:
            summary += f"; ... ({len(violations)} total)"
        super().__init__(f"not a valid PDA: {summary}")


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever the pair is out of range."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class Violation:
    """One failed validity condition, with 1-based coordinates."""

    kind: str  # "C1" | "C2" | "C3a" | "C3b"
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class PdaCheck:
    """Result of ``verify_pda``: parameters on success, violations otherwise."""

    params: tuple[int, int, int, int] | None  # (K, F, Z, S)
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def normalize_grid(rows) -> Grid:
    """Freeze ``rows`` into a Grid, rejecting ragged or non-positive entries."""
    grid = tuple(tuple(row) for row in rows)
    if not grid or not grid[0]:
        raise NonRectangularError("grid must have at least one row and column")
    width = len(grid[0])
    for j, row in enumerate(grid):
        if len(row) != width:
            raise NonRectangularError(f"row {j + 1} has {len(row)} entries, expected {width}")
        for k, e in enumerate(row):
            if not isinstance(e, int) or e < 0:
                raise NonPositiveCodeError(f"entry at ({j + 1},{k + 1}) is {e!r}; codes must be positive integers")
    return grid


def verify_pda(rows) -> PdaCheck:
    """Check conditions C1-C3 on a grid.

    Returns the unique (K, F, Z, S) on success.  A grid with no codes at all
    is accepted as a degenerate PDA with S = 0.
    """
    grid = normalize_grid(rows)
    f = len(grid)
    k = len(grid[0])
    violations: list[Violation] = []

    # C1: equal star count in every column; Z is fixed by column 1.
    star_counts = [sum(1 for j in range(f) if grid[j][c] == STAR) for c in range(k)]
    z = star_counts[0]
    for c, count in enumerate(star_counts):
        if count != z:
            violations.append(Violation("C1", (), (c + 1,),
                                        f"column {c + 1} has {count} stars, column 1 has {z}"))

    # C2: the codes present are exactly {1, ..., S}.
    positions: dict[int, list[tuple[int, int]]] = {}
    for j in range(f):
        for c in range(k):
            e = grid[j][c]
            if e != STAR:
                positions.setdefault(e, []).append((j, c))
    s = len(positions)
    if positions:
        top = max(positions)
        for missing in range(1, top + 1):
            if missing not in positions:
                violations.append(Violation("C2", (), (),
                                            f"code {missing} absent but code {top} present"))

    # C3: equal codes pairwise occupy distinct rows/columns with stars across.
    for code, cells in positions.items():
        for (j1, c1), (j2, c2) in itertools.combinations(cells, 2):
            if j1 == j2 or c1 == c2:
                violations.append(Violation("C3a", (j1 + 1, j2 + 1), (c1 + 1, c2 + 1),
                                            f"code {code} repeats in the same row or column"))
            elif grid[j1][c2] != STAR or grid[j2][c1] != STAR:
                violations.append(Violation("C3b", (j1 + 1, j2 + 1), (c1 + 1, c2 + 1),
                                            f"code {code}: crossing cells are not both stars"))

    if violations:
        return PdaCheck(None, tuple(violations))
    return PdaCheck((k, f, z, s), ())


@dataclass(frozen=True)
class PdaArray:
    """A validated (K, F, Z, S) placement delivery array."""

    grid: Grid
    k: int
    f: int
    z: int
    s: int

    @classmethod
    def from_grid(cls, rows) -> "PdaArray":
        check = verify_pda(rows)
        if not check.ok:
            raise InvalidPdaError(check.violations)
        k, f, z, s = check.params
        return cls(normalize_grid(rows), k, f, z, s)

    def column(self, c: int) -> tuple[int, ...]:
        """Column ``c`` (1-based) as a tuple."""
        if not 1 <= c <= self.k:
            raise IndexOutOfRangeError(f"column {c} not in [1, {self.k}]")
        return tuple(self.grid[j][c - 1] for j in range(self.f))

    def column_codes(self, c: int) -> frozenset[int]:
        return frozenset(e for e in self.column(c) if e != STAR)

    def star_rows(self, c: int) -> frozenset[int]:
        """1-based rows where column ``c`` holds a star."""
        return frozenset(j + 1 for j, e in enumerate(self.column(c)) if e == STAR)


def regularity(pda: PdaArray) -> int | None:
    """g if every code occurs exactly g times, else None.

    The degenerate all-star array has no codes and no regularity.
    """
    counts: dict[int, int] = {}
    for row in pda.grid:
        for e in row:
            if e != STAR:
                counts[e] = counts.get(e, 0) + 1
    if not counts:
        return None
    values = set(counts.values())
    return values.pop() if len(values) == 1 else None


def permute_columns(pda: PdaArray, perm) -> PdaArray:
    """Apply a column permutation; ``perm[k]`` is the new 0-based position of
    old 0-based column ``k``.  Parameters are unchanged (equivalent PDA)."""
    perm = tuple(perm)
    if sorted(perm) != list(range(pda.k)):
        raise InvalidPermutationError(f"{perm} is not a bijection on 0..{pda.k - 1}")
    grid = tuple(
        tuple(row[c] for c in _invert(perm))
        for row in pda.grid
    )
    return PdaArray(grid, pda.k, pda.f, pda.z, pda.s)


def _invert(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for old, new in enumerate(perm):
        inv[new] = old
    return tuple(inv)


def phi(pda: PdaArray, prefix: int) -> int:
    """Number of distinct codes in the first ``prefix`` columns (1-based count)."""
    if not 1 <= prefix <= pda.k:
        raise IndexOutOfRangeError(f"prefix {prefix} not in [1, {pda.k}]")
    seen: set[int] = set()
    for c in range(prefix):
        for j in range(pda.f):
            e = pda.grid[j][c]
            if e != STAR:
                seen.add(e)
    return len(seen)


def xi(pda: PdaArray, code: int) -> int:
    """Smallest 1-based column index in which ``code`` appears."""
    if not 1 <= code <= pda.s:
        raise CodeAbsentError(f"code {code} not in [1, {pda.s}]")
    for c in range(pda.k):
        for j in range(pda.f):
            if pda.grid[j][c] == code:
                return c + 1
    raise CodeAbsentError(f"code {code} missing from a supposedly valid PDA")


def all_star_row_count(pda: PdaArray, columns) -> int:
    """Number of rows that are all-star when restricted to ``columns`` (1-based)."""
    cols = sorted(set(columns))
    if not cols:
        raise IndexOutOfRangeError("column set must be nonempty")
    if cols[0] < 1 or cols[-1] > pda.k:
        raise IndexOutOfRangeError(f"columns {cols} not within [1, {pda.k}]")
    count = 0
    for row in pda.grid:
        if all(row[c - 1] == STAR for c in cols):
            count += 1
    return count


def canonicalize_codes(rows) -> Grid:
    """Renumber codes to 1..S in row-major first-appearance order."""
    grid = normalize_grid(rows)
    relabel: dict[int, int] = {}
    out = []
    for row in grid:
        new_row = []
        for e in row:
            if e == STAR:
                new_row.append(STAR)
            else:
                if e not in relabel:
                    relabel[e] = len(relabel) + 1
                new_row.append(relabel[e])
        out.append(tuple(new_row))
    return tuple(out)


def man_pda(k: int, t: int) -> PdaArray:
    """The (t+1)-regular MaN PDA with K = k users.

    Rows are the t-subsets of [K] in lexicographic order; the code at row T,
    column u (u not in T) is the lexicographic rank of T | {u} among the
    (t+1)-subsets.  Parameters: (K, C(K,t), C(K-1,t-1), C(K,t+1)).
    """
    if k < 1 or not 0 <= t <= k:
        raise ParameterError(f"need K >= 1 and 0 <= t <= K, got K={k}, t={t}")
    rank = {subset: i + 1 for i, subset in enumerate(itertools.combinations(range(1, k + 1), t + 1))}
    rows = []
    for subset in itertools.combinations(range(1, k + 1), t):
        members = set(subset)
        row = []
        for u in range(1, k + 1):
            if u in members:
                row.append(STAR)
            else:
                row.append(rank[tuple(sorted(members | {u}))])
        rows.append(tuple(row))
    return PdaArray.from_grid(canonicalize_codes(rows))


def construction_a_pda(q: int, m: int) -> PdaArray:
    """The (m+1)-regular (q(m+1), q^m, q^{m-1}, q^{m+1}-q^m) PDA.

    Rows are indexed by a in {0..q-1}^m; columns come in m+1 groups of q.
    Column (i, j) with i < m is a star at row a iff a_i = j; in group m it is
    a star iff sum(a) = j (mod q).  Group 0 comes first, which makes every
    code's first column land in the first q columns.
    """
    if q < 2 or m < 1:
        raise ParameterError(f"need q >= 2 and m >= 1, got q={q}, m={m}")
    code_ids: dict[tuple[int, ...], int] = {}

    def code_of(vec: tuple[int, ...]) -> int:
        if vec not in code_ids:
            code_ids[vec] = len(code_ids) + 1
        return code_ids[vec]

    rows = []
    for a in itertools.product(range(q), repeat=m):
        total = sum(a) % q
        row = []
        for i in range(m + 1):
            for j in range(q):
                if i < m:
                    if a[i] == j:
                        row.append(STAR)
                    else:
                        row.append(code_of(a[:i] + (j,) + a[i + 1:] + (total,)))
                else:
                    if total == j:
                        row.append(STAR)
                    else:
                        row.append(code_of(a + (j,)))
        rows.append(tuple(row))
    return PdaArray.from_grid(canonicalize_codes(rows))


@dataclass(frozen=True)
class AssociationProfile:
    """Non-increasing partition of the user count into per-helper group sizes."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ParameterError("profile must have at least one part")
        for p in self.parts:
            if not isinstance(p, int) or p < 0:
                raise ParameterError(f"profile parts must be nonnegative integers, got {p!r}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ParameterError(f"profile {self.parts} is not non-increasing")

    @classmethod
    def parse(cls, text: str) -> "AssociationProfile":
        return cls(tuple(int(x) for x in text.replace(",", " ").split()))

    @property
    def num_groups(self) -> int:
        return len(self.parts)

    @property
    def num_users(self) -> int:
        return sum(self.parts)

    def part(self, n: int) -> int:
        """L_n, 1-based."""
        return self.parts[n - 1]

    def group_of_user(self, k: int) -> int:
        """1-based group index of the 1-based user position k (grouped order)."""
        upto = 0
        for n, p in enumerate(self.parts, start=1):
            upto += p
            if k <= upto:
                return n
        raise IndexOutOfRangeError(f"user {k} not in [1, {self.num_users}]")


def enumerate_profiles(total: int, length: int, min_part: int = 1):
    """Yield all AssociationProfiles of ``total`` with exactly ``length`` parts."""

    def rec(remaining: int, slots: int, cap: int):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        lo = max(min_part, -(-remaining // slots))  # ceil keeps parts feasible
        for first in range(min(cap, remaining - min_part * (slots - 1)), lo - 1, -1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    for parts in rec(total, length, total):
        yield AssociationProfile(parts)
