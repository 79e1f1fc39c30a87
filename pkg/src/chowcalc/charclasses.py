"""Chern classes, Chern characters, Todd classes and Riemann-Roch."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra import AlgebraError, ChowClass, VarietyPresentation, integrate

__all__ = [
    "SheafData",
    "CharacterData",
    "chern_character",
    "character_to_chern",
    "todd_class",
    "todd",
    "dual_character",
    "endomorphism_character",
    "hrr_chi",
    "euler_pairing",
    "tangent_sheaf",
    "structure_sheaf",
    "line_bundle",
    "bernoulli",
]


@dataclass(frozen=True)
class SheafData:
    """Rank and total Chern class of a (virtual) sheaf."""

    rank: int
    chern: ChowClass

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise AlgebraError(f"rank must be a non-negative integer, got {self.rank!r}")
        if self.chern.constant() != 1:
            raise AlgebraError("total Chern class must have constant term 1")

    @property
    def pres(self) -> VarietyPresentation:
        return self.chern.pres

    def c(self, k: int) -> ChowClass:
        return self.chern.grade(k)

    def __str__(self):
        return f"rank {self.rank}, c = {self.chern}"


@dataclass(frozen=True)
class CharacterData:
    """A Chern character, stored as its total class; ``ch[k]`` is the degree-k part."""

    total: ChowClass

    def __post_init__(self):
        c0 = self.total.grade(0)
        if c0.terms and set(c0.terms) != {()}:
            raise AlgebraError("degree-0 component must be a constant")

    @property
    def pres(self) -> VarietyPresentation:
        return self.total.pres

    @property
    def rank(self) -> Fraction:
        return self.total.constant()

    def __getitem__(self, k: int) -> ChowClass:
        return self.total.grade(k)

    @property
    def components(self) -> tuple[ChowClass, ...]:
        return tuple(self.total.grade(k) for k in range(self.pres.dimension + 1))

    def __add__(self, other: "CharacterData") -> "CharacterData":
        return CharacterData(self.total + other.total)

    def __sub__(self, other: "CharacterData") -> "CharacterData":
        return CharacterData(self.total - other.total)

    def __mul__(self, other: "CharacterData") -> "CharacterData":
        return CharacterData(self.total * other.total)

    def __str__(self):
        return str(self.total)


def _power_sums_from_elementary(e: list[ChowClass], top: int) -> list[ChowClass]:
    # Newton: p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    p = [None]
    for k in range(1, top + 1):
        acc = e[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + e[i] * p[k - i] * ((-1) ** (i - 1))
        p.append(acc)
    return p


def chern_character(s: SheafData) -> CharacterData:
    """ch(s) = rank + sum_k p_k / k!, power sums p_k from Newton's identities."""
    pres = s.pres
    top = pres.dimension
    e = [pres.one()] + [s.c(k) for k in range(1, top + 1)]
    p = _power_sums_from_elementary(e, top)
    total = pres.scalar(s.rank)
    for k in range(1, top + 1):
        total = total + p[k] / factorial(k)
    return CharacterData(total)


def character_to_chern(ch: CharacterData) -> SheafData:
    """Inverse of :func:`chern_character`."""
    rank = ch.rank
    if rank.denominator != 1 or rank < 0:
        raise AlgebraError(f"rank must be a non-negative integer, got {rank}")
    pres = ch.pres
    top = pres.dimension
    p = [None] + [ch[k] * factorial(k) for k in range(1, top + 1)]
    # k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    e = [pres.one()]
    for k in range(1, top + 1):
        acc = pres.zero()
        for i in range(1, k + 1):
            acc = acc + e[k - i] * p[i] * ((-1) ** (i - 1))
        e.append(acc / k)
    total = pres.zero()
    for x in e:
        total = total + x
    return SheafData(int(rank), total)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / Fraction(m + 1))
    return b[n]


def _todd_from_character(ch: CharacterData) -> ChowClass:
    # log Td = ch_1/2 - sum_{k>=1} B_{2k}/(2k) ch_{2k}
    pres = ch.pres
    log_td = ch[1] / 2
    for k in range(1, pres.dimension // 2 + 1):
        log_td = log_td - ch[2 * k] * (bernoulli(2 * k) / (2 * k))
    return log_td.exp()


def _series_sqrt(x: ChowClass) -> ChowClass:
    """Unique square root with constant term 1, solved degree by degree."""
    if x.constant() != 1:
        raise AlgebraError("square root needs constant term 1")
    pres = x.pres
    parts = [pres.one()]
    for k in range(1, pres.dimension + 1):
        acc = x.grade(k)
        for i in range(1, k):
            acc = acc - parts[i] * parts[k - i]
        parts.append(acc / 2)
    total = pres.zero()
    for part in parts:
        total = total + part
    return total


def todd_class(tangent: SheafData, with_sqrt: bool = False) -> tuple[ChowClass, ChowClass | None]:
    """Todd class of ``tangent`` and, optionally, its square root."""
    td = _todd_from_character(chern_character(tangent))
    return td, (_series_sqrt(td) if with_sqrt else None)


def tangent_sheaf(pres: VarietyPresentation) -> SheafData:
    return SheafData(pres.dimension, pres.tangent_chern)


def structure_sheaf(pres: VarietyPresentation) -> SheafData:
    return SheafData(1, pres.one())


def line_bundle(divisor: ChowClass) -> SheafData:
    return SheafData(1, divisor.pres.one() + divisor)


def todd(pres: VarietyPresentation) -> ChowClass:
    cache = pres._cache
    if "todd" not in cache:
        cache["todd"] = todd_class(tangent_sheaf(pres))[0]
    return cache["todd"]


def dual_character(ch: CharacterData) -> CharacterData:
    pres = ch.pres
    total = pres.zero()
    for k in range(pres.dimension + 1):
        total = total + ch[k] * (-1) ** k
    return CharacterData(total)


def endomorphism_character(ch: CharacterData, traceless: bool = False) -> CharacterData:
    """ch(E^*) ch(E), minus the trivial summand when ``traceless``.

    Its degree-2 part is ``2 r ch_2 - c_1^2``.
    """
    if traceless and ch.rank < 1:
        raise AlgebraError("traceless endomorphisms need rank >= 1")
    total = dual_character(ch).total * ch.total
    if traceless:
        total = total - 1
    return CharacterData(total)


def hrr_chi(s: SheafData, pres: VarietyPresentation | None = None) -> Fraction:
    """Euler characteristic by Hirzebruch-Riemann-Roch."""
    if pres is not None and s.pres != pres:
        raise AlgebraError(f"sheaf lives on {s.pres.name}, not {pres.name}")
    return integrate(chern_character(s).total * todd(s.pres))


def euler_pairing(e: SheafData, f: SheafData, pres: VarietyPresentation | None = None) -> Fraction:
    """chi(E, F) = integral of ch(E)^dual ch(F) Td."""
    if e.pres != f.pres or (pres is not None and e.pres != pres):
        raise AlgebraError("sheaves must live on the same presentation")
    ce = dual_character(chern_character(e)).total
    return integrate(ce * chern_character(f).total * todd(e.pres))
