"""Closed-form rate and subpacketization comparison of the two family
pairings (MaN x MaN versus Construction-A x MaN), plus the sweep that
regenerates the figure data behind the uniform and skewed profiles.

All rates are exact rationals; floats appear only in rendered output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrays import AssociationProfile, ParameterError, binom, construction_a_pda, man_pda
from .construct import (
    SpPdaArray,
    construct_sppda,
    s_closed_form_construction_a,
    s_closed_form_man,
)


class MemoryMismatchError(ParameterError):
    pass


class UnrealizableMemoryError(ParameterError):
    pass


def rate_man_pair(num_helpers: int, t1: int, profile: AssociationProfile, t2: int) -> Fraction:
    """Exact rate of the MaN(Lambda, t1) x MaN(L_1, t2) scheme."""
    l1 = profile.part(1)
    if not 1 <= t1 <= num_helpers - 1:
        raise ParameterError(f"t1={t1} not in [1, {num_helpers - 1}]")
    if not 0 <= t2 <= l1:
        raise ParameterError(f"t2={t2} not in [0, {l1}]")
    s = s_closed_form_man(num_helpers, t1, profile, t2)
    return Fraction(s, binom(num_helpers, t1) * binom(l1, t2))


def rate_construction_a(q: int, m: int, profile: AssociationProfile, t2: int) -> Fraction:
    """Exact rate of the ConstructionA(q, m) x MaN(L_1, t2) scheme."""
    l1 = profile.part(1)
    if not 0 <= t2 <= l1:
        raise ParameterError(f"t2={t2} not in [0, {l1}]")
    s = s_closed_form_construction_a(q, m, profile, t2)
    return Fraction(s, q ** m * binom(l1, t2))


def man_pair_subpacketization(num_helpers: int, t1: int, l1: int, t2: int) -> int:
    return binom(num_helpers, t1) * binom(l1, t2)


def construction_a_subpacketization(q: int, m: int, l1: int, t2: int) -> int:
    return q ** m * binom(l1, t2)


@dataclass(frozen=True)
class ComparisonReport:
    q: int
    m: int
    t1: int  # = m + 1, fixed by matching the helper memory
    t2: int
    profile: AssociationProfile
    f_ratio_exact: Fraction  # C(Lambda, t1) / q^m
    f_ratio_approx: int  # Lambda * t1^(t1-1), the loose asymptotic
    rate_man: Fraction
    rate_a: Fraction
    rate_ratio: Fraction | None  # rate_man / rate_a; None when rate_a == 0
    uniform: bool

    @property
    def rate_ratio_uniform(self) -> Fraction:
        """t1 / (t1 + 1); exact only for uniform profiles."""
        return Fraction(self.t1, self.t1 + 1)


def compare(q: int, m: int, t2: int, profile: AssociationProfile) -> ComparisonReport:
    """Compare the two pairings at matched helper memory (t1 = m + 1)."""
    num_helpers = profile.num_groups
    if num_helpers != q * (m + 1):
        raise MemoryMismatchError(
            f"profile has {num_helpers} groups but q(m+1)={q * (m + 1)}")
    t1 = m + 1
    rate_man = rate_man_pair(num_helpers, t1, profile, t2)
    rate_a = rate_construction_a(q, m, profile, t2)
    ratio = rate_man / rate_a if rate_a else None
    uniform = len(set(profile.parts)) == 1
    return ComparisonReport(q, m, t1, t2, profile,
                            Fraction(binom(num_helpers, t1), q ** m),
                            num_helpers * t1 ** (t1 - 1),
                            rate_man, rate_a, ratio, uniform)


@dataclass(frozen=True)
class SchemePoint:
    scheme: str  # "man_pair" | "construction_a_pair"
    t2: int
    mp_ratio: Fraction
    rate: Fraction
    subpacketization: int
    s: int
    verified: bool


@dataclass(frozen=True)
class SweepConfig:
    profile: AssociationProfile
    mh_ratio: Fraction
    t2_values: tuple[int, ...]
    schemes: tuple[str, ...] = ("man_pair", "construction_a_pair")
    verify_cap: int = 10 ** 5


def _man_parameters(config: SweepConfig) -> int:
    lam = config.profile.num_groups
    t1 = config.mh_ratio * lam
    if t1.denominator != 1 or not 1 <= t1 <= lam - 1:
        raise UnrealizableMemoryError(
            f"mh_ratio {config.mh_ratio} needs t1 = Lambda*mh in [1, {lam - 1}], got {t1}")
    return int(t1)


def _construction_a_parameters(config: SweepConfig) -> tuple[int, int]:
    lam = config.profile.num_groups
    if config.mh_ratio.numerator != 1:
        raise UnrealizableMemoryError(f"mh_ratio {config.mh_ratio} is not 1/q")
    q = config.mh_ratio.denominator
    if q < 2 or lam % q != 0 or lam // q < 2:
        raise UnrealizableMemoryError(f"Lambda={lam} is not q(m+1) for q={q}")
    return q, lam // q - 1


def _cross_check(sp: SpPdaArray, f: int, s: int, zh: int) -> bool:
    """Check the closed forms against the materialized array: exact F and
    distinct-code count, and D2 star availability under identity grouping."""
    codes = {e for row in sp.pda.grid for e in row if e != 0}
    if sp.pda.f != f or len(codes) != s or sp.helper_stars != zh:
        return False
    for lam in range(1, sp.profile.num_groups + 1):
        cols = sp.group_columns(lam)
        stars = sum(1 for row in sp.pda.grid if all(row[c - 1] == 0 for c in cols))
        if stars < zh:
            return False
    return True


def sweep(config: SweepConfig) -> list[SchemePoint]:
    """One point per (scheme, t2); rows with F under the cap are cross-checked
    against an actually constructed array."""
    profile = config.profile
    l1 = profile.part(1)
    points = []
    for scheme in config.schemes:
        if scheme == "man_pair":
            t1 = _man_parameters(config)
            lam = profile.num_groups
            p1 = None
            for t2 in config.t2_values:
                f = man_pair_subpacketization(lam, t1, l1, t2)
                s = s_closed_form_man(lam, t1, profile, t2)
                mp = (1 - Fraction(t1, lam)) * Fraction(t2, l1)
                verified = False
                if f <= config.verify_cap:
                    if p1 is None:
                        p1 = man_pda(lam, t1)
                    sp = construct_sppda(p1, man_pda(l1, t2), profile, validate=False)
                    if not _cross_check(sp, f, s, binom(lam - 1, t1 - 1) * binom(l1, t2)):
                        raise ParameterError(
                            f"closed form disagrees with construction at man_pair t2={t2}")
                    verified = True
                points.append(SchemePoint(scheme, t2, mp, Fraction(s, f), f, s, verified))
        elif scheme == "construction_a_pair":
            q, m = _construction_a_parameters(config)
            p1 = None
            for t2 in config.t2_values:
                f = construction_a_subpacketization(q, m, l1, t2)
                s = s_closed_form_construction_a(q, m, profile, t2)
                mp = (1 - Fraction(1, q)) * Fraction(t2, l1)
                verified = False
                if f <= config.verify_cap:
                    if p1 is None:
                        p1 = construction_a_pda(q, m)
                    sp = construct_sppda(p1, man_pda(l1, t2), profile, validate=False)
                    if not _cross_check(sp, f, s, q ** (m - 1) * binom(l1, t2)):
                        raise ParameterError(
                            f"closed form disagrees with construction at construction_a t2={t2}")
                    verified = True
                points.append(SchemePoint(scheme, t2, mp, Fraction(s, f), f, s, verified))
        else:
            raise ParameterError(f"unknown scheme {scheme!r}")
    points.sort(key=lambda p: (p.scheme, p.t2))
    return points


def sweep_csv(points) -> str:
    lines = ["scheme,t2,mp_ratio,rate,subpacketization,s,verified"]
    for p in points:
        lines.append(f"{p.scheme},{p.t2},{float(p.mp_ratio):.10g},{float(p.rate):.10g},"
                     f"{p.subpacketization},{p.s},{int(p.verified)}")
    return "\n".join(lines) + "\n"
