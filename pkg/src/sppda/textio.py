"""Text and JSON serialization for PDAs and SP-PDAs.

PDA text format:
    pda K F Z S
    <F rows of K whitespace-separated tokens, '*' for a star>

SP-PDA text format:
    sppda K Lambda F Z Zh S
    L: L_1 ... L_Lambda
    pi: id                (or the 1-based positions of each column)
    <grid as above>

Writers are deterministic; reading back a written canonical array reproduces
the bytes exactly.
"""

from __future__ import annotations

import json

from .arrays import STAR, AssociationProfile, ParameterError, PdaArray
from .construct import SpPdaArray, verify_sppda
from .arrays import InvalidPdaError


class FormatError(ParameterError):
    pass


def _token(e: int) -> str:
    return "*" if e == STAR else str(e)


def _grid_lines(grid) -> list[str]:
    return [" ".join(_token(e) for e in row) for row in grid]


def grid_from_text(text: str):
    """Parse a bare grid: rows of '*' / integer tokens, blank lines ignored."""
    rows = []
    for line in text.splitlines():
        tokens = line.split()
        if not tokens:
            continue
        row = []
        for tok in tokens:
            if tok == "*":
                row.append(STAR)
            else:
                try:
                    row.append(int(tok))
                except ValueError:
                    raise FormatError(f"bad grid token {tok!r}") from None
        rows.append(tuple(row))
    if not rows:
        raise FormatError("empty grid")
    return tuple(rows)


def write_pda(pda: PdaArray) -> str:
    lines = [f"pda {pda.k} {pda.f} {pda.z} {pda.s}"]
    lines.extend(_grid_lines(pda.grid))
    return "\n".join(lines) + "\n"


def parse_pda(text: str) -> PdaArray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split()[0] != "pda":
        raise FormatError("expected header 'pda K F Z S'")
    header = lines[0].split()
    if len(header) != 5:
        raise FormatError(f"bad pda header: {lines[0]!r}")
    k, f, z, s = (int(x) for x in header[1:])
    grid = grid_from_text("\n".join(lines[1:]))
    pda = PdaArray.from_grid(grid)
    if (pda.k, pda.f, pda.z, pda.s) != (k, f, z, s):
        raise FormatError(
            f"header claims ({k},{f},{z},{s}) but grid is ({pda.k},{pda.f},{pda.z},{pda.s})")
    return pda


def write_sppda(sp: SpPdaArray) -> str:
    p = sp.params
    lines = [f"sppda {p.k} {p.num_helpers} {p.f} {p.z} {p.zh} {p.s}"]
    lines.append("L: " + " ".join(str(x) for x in sp.profile.parts))
    if sp.grouping is None:
        lines.append("pi: id")
    else:
        lines.append("pi: " + " ".join(str(x + 1) for x in sp.grouping))
    lines.extend(_grid_lines(sp.pda.grid))
    return "\n".join(lines) + "\n"


def parse_sppda(text: str) -> SpPdaArray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4 or lines[0].split()[0] != "sppda":
        raise FormatError("expected header 'sppda K Lambda F Z Zh S'")
    header = lines[0].split()
    if len(header) != 7:
        raise FormatError(f"bad sppda header: {lines[0]!r}")
    k, lam, f, z, zh, s = (int(x) for x in header[1:])
    if not lines[1].startswith("L:"):
        raise FormatError("expected profile line 'L: ...'")
    profile = AssociationProfile(tuple(int(x) for x in lines[1][2:].split()))
    if not lines[2].startswith("pi:"):
        raise FormatError("expected grouping line 'pi: ...'")
    pi_text = lines[2][3:].split()
    grouping = None if pi_text == ["id"] else tuple(int(x) - 1 for x in pi_text)
    grid = grid_from_text("\n".join(lines[3:]))
    check = verify_sppda(grid, profile, zh, grouping=grouping)
    if not check.ok:
        if not check.pda_check.ok:
            raise InvalidPdaError(check.pda_check.violations)
        worst = min(check.failures, key=lambda fl: fl.star_rows)
        raise FormatError(
            f"condition D2 fails: group {worst.group} has {worst.star_rows} all-star rows, "
            f"needs {zh}")
    got = check.params
    if (got.k, got.num_helpers, got.f, got.z, got.zh, got.s) != (k, lam, f, z, zh, s):
        raise FormatError("sppda header does not match the grid")
    return SpPdaArray(PdaArray.from_grid(grid), profile, zh, grouping)


def pda_to_json(pda: PdaArray) -> str:
    doc = {
        "type": "pda",
        "k": pda.k, "f": pda.f, "z": pda.z, "s": pda.s,
        "grid": [[_token(e) for e in row] for row in pda.grid],
    }
    return json.dumps(doc, indent=2) + "\n"


def pda_from_json(text: str) -> PdaArray:
    doc = json.loads(text)
    if doc.get("type") != "pda":
        raise FormatError("json document is not a pda")
    grid = tuple(tuple(STAR if t == "*" else int(t) for t in row) for row in doc["grid"])
    pda = PdaArray.from_grid(grid)
    if (pda.k, pda.f, pda.z, pda.s) != (doc["k"], doc["f"], doc["z"], doc["s"]):
        raise FormatError("json parameters do not match the grid")
    return pda


def sppda_to_json(sp: SpPdaArray) -> str:
    p = sp.params
    doc = {
        "type": "sppda",
        "k": p.k, "num_helpers": p.num_helpers, "f": p.f, "z": p.z,
        "zh": p.zh, "s": p.s,
        "profile": list(sp.profile.parts),
        "pi": "id" if sp.grouping is None else [x + 1 for x in sp.grouping],
        "grid": [[_token(e) for e in row] for row in sp.pda.grid],
    }
    return json.dumps(doc, indent=2) + "\n"


def sppda_from_json(text: str) -> SpPdaArray:
    doc = json.loads(text)
    if doc.get("type") != "sppda":
        raise FormatError("json document is not an sppda")
    grid = tuple(tuple(STAR if t == "*" else int(t) for t in row) for row in doc["grid"])
    profile = AssociationProfile(tuple(doc["profile"]))
    grouping = None if doc["pi"] == "id" else tuple(x - 1 for x in doc["pi"])
    return SpPdaArray(PdaArray.from_grid(grid), profile, doc["zh"], grouping)
