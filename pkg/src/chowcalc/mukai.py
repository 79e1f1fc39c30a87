"""Lattice arithmetic on K3 fibres: Mukai vectors, moduli dimensions,
admissibility, ODP corrections and the degeneration ledger."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraError, ChowClass, VarietyPresentation, integrate, normal_form, solve_linear
from .charclasses import SheafData, chern_character

__all__ = [
    "LatticeError",
    "K3LatticeContext",
    "MukaiVector",
    "Admissibility",
    "LedgerInstance",
    "LedgerVerdict",
    "mukai_vector_of",
    "mukai_pairing",
    "fibre_moduli_dimension",
    "discriminant",
    "admissibility",
    "odp_correction",
    "resolved_dimension",
    "degeneration_ledger",
    "is_k3",
]


class LatticeError(AlgebraError):
    pass


@dataclass(frozen=True)
class K3LatticeContext:
    """An even lattice with a polarisation vector.

    ``basis`` optionally ties lattice coordinates to degree-1 classes of a K3
    presentation, so that sheaf data can be converted to Mukai vectors.
    """

    gram: tuple[tuple[int, ...], ...]
    omega: tuple[int, ...]
    basis: tuple[ChowClass, ...] = field(default=(), compare=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "omega", tuple(int(x) for x in self.omega))
        n = len(gram)
        if n < 1 or any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square and non-empty")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        if any(gram[i][i] % 2 for i in range(n)):
            raise LatticeError("gram matrix must be even")
        if len(self.omega) != n:
            raise LatticeError("polarisation vector has the wrong length")
        if self.dot(self.omega, self.omega) <= 0:
            raise LatticeError("polarisation must have positive square")
        if self.basis and len(self.basis) != n:
            raise LatticeError("basis length must match the lattice rank")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, x: Sequence, y: Sequence):
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))

    @classmethod
    def from_classes(cls, basis: Sequence[ChowClass], omega: Sequence[int]) -> "K3LatticeContext":
        """Gram matrix of degree-1 classes on a surface presentation."""
        basis = tuple(basis)
        gram = []
        for x in basis:
            row = []
            for y in basis:
                v = integrate(x * y)
                if v.denominator != 1:
                    raise LatticeError(f"non-integral intersection {v}")
                row.append(int(v))
            gram.append(tuple(row))
        return cls(tuple(gram), tuple(omega), basis)

    def coordinates(self, c1: ChowClass) -> tuple[int, ...]:
        """Integral coordinates of a degree-1 class in ``basis``."""
        if not self.basis:
            raise LatticeError("context has no basis classes")
        pres = self.basis[0].pres
        c1 = normal_form(c1.terms, pres)
        monos = sorted(
            {m for b in self.basis for m in b.terms} | set(c1.terms), key=pres.term_key
        )
        # columns: basis vectors, augmented by the target
        rows = [[b.terms.get(m, Fraction(0)) for b in self.basis] + [c1.terms.get(m, Fraction(0))] for m in monos]
        sol = solve_linear(rows, len(self.basis))
        if sol is None:
            raise LatticeError(f"{c1} is outside the span of the lattice basis")
        if any(x.denominator != 1 for x in sol):
            raise LatticeError(f"{c1} is not an integral lattice vector")
        return tuple(int(x) for x in sol)


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c1: tuple[int, ...]
    s: int

    def __str__(self):
        return f"({self.r}, ({', '.join(map(str, self.c1))}), {self.s})"


def is_k3(pres: VarietyPresentation) -> bool:
    return (
        pres.dimension == 2
        and pres.tangent_chern.grade(1).is_zero()
        and integrate(pres.tangent_chern) == 24
    )


def mukai_vector_of(s: SheafData, ctx: K3LatticeContext) -> MukaiVector:
    """v = ch . sqrt(Td) = (r, c_1, ch_2 + r) on a K3."""
    if not is_k3(s.pres):
        raise LatticeError(f"{s.pres.name} is not a K3 presentation")
    ch = chern_character(s)
    ch2 = integrate(ch[2])
    if ch2.denominator != 1:
        raise LatticeError(f"half-integral ch_2 = {ch2} is not on an even lattice")
    return MukaiVector(s.rank, ctx.coordinates(ch[1]), int(ch2) + s.rank)


def mukai_pairing(v: MukaiVector, w: MukaiVector, ctx: K3LatticeContext) -> int:
    if len(v.c1) != ctx.rank or len(w.c1) != ctx.rank:
        raise LatticeError("Mukai vectors do not belong to this lattice")
    return ctx.dot(v.c1, w.c1) - v.r * w.s - w.r * v.s


def fibre_moduli_dimension(r: int, c1sq: int, c2: int) -> int:
    """d = 2 r c_2 - (r - 1) c_1^2 - 2 (r^2 - 1)."""
    if r < 1:
        raise LatticeError("rank must be at least 1")
    d = 2 * r * c2 - (r - 1) * c1sq - 2 * (r * r - 1)
    if d % 2:
        raise LatticeError(f"odd moduli dimension {d}: c_1^2 must be even on a K3")
    return d


def discriminant(r: int, c1sq, c2) -> Fraction:
    """c_2 - (1 - 1/r) c_1^2 / 2; then d = 2 r disc - 2 (r^2 - 1)."""
    if r < 1:
        raise LatticeError("rank must be at least 1")
    return Fraction(c2) - Fraction(r - 1, 2 * r) * Fraction(c1sq)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    very_admissible: bool
    gcd: int
    rank_degree_gcd: int

    def __str__(self):
        return (
            f"admissible={str(self.admissible).lower()} "
            f"very_admissible={str(self.very_admissible).lower()} gcd={self.gcd}"
        )


def admissibility(r: int, deg: int, c1sq: int, c2: int) -> Admissibility:
    """gcd(r, c_1.w, c_1^2/2 - c_2) = 1; very admissible also needs gcd(r, c_1.w) = 1."""
    if c1sq % 2:
        raise LatticeError("c_1^2 must be even")
    g = math.gcd(r, deg, c1sq // 2 - c2)
    g2 = math.gcd(r, deg)
    return Admissibility(g == 1, g == 1 and g2 == 1, g, g2)


def odp_correction(multiples: Sequence[int]) -> int:
    """Sum of local c_1^2 = (k Z)^2 = -2 k^2 over ODPs with exceptional curve Z."""
    return sum(-2 * k * k for k in multiples)


def resolved_dimension(d_reflexive: int, multiples: Sequence[int]) -> int:
    """Moduli dimension on the resolution: d(reflexive hull) + ODP correction."""
    return d_reflexive + odp_correction(multiples)


@dataclass(frozen=True)
class LedgerInstance:
    r: int
    n: int
    fibres: tuple[tuple[int, Fraction], ...]
    deg_t: Fraction
    c2_deficit: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "fibres", tuple((int(ri), Fraction(di)) for ri, di in self.fibres))
        object.__setattr__(self, "deg_t", Fraction(self.deg_t))
        if self.c2_deficit is not None:
            object.__setattr__(self, "c2_deficit", Fraction(self.c2_deficit))
        if self.r < 1:
            raise LatticeError("ledger rank must be at least 1")
        for ri, _ in self.fibres:
            if not 1 <= ri <= self.r - 1:
                raise LatticeError(f"fibre rank {ri} outside 1..{self.r - 1}")
        if self.c2_deficit is not None and self.c2_deficit > 0:
            raise LatticeError("c2 deficit must be non-positive")


@dataclass(frozen=True)
class LedgerVerdict:
    rank_balance: bool
    stability_bound: Fraction
    c2_bound: Fraction
    verdict: str  # "consistent" | "infeasible"
    violations: tuple[str, ...]

    def __str__(self):
        v = ",".join(self.violations) or "none"
        return (
            f"{self.verdict} rank_balance={str(self.rank_balance).lower()} "
            f"stability_bound={self.stability_bound} c2_bound={self.c2_bound} violations={v}"
        )


def degeneration_ledger(inst: LedgerInstance) -> LedgerVerdict:
    """Check rank balance, the slope bound and the c_2 bound of a degeneration.

    With fibres present the slope bound asks sum deg_i < n deg_T while the c_2
    bound asks n deg_T - sum deg_i <= 0, so no nonempty instance survives.
    """
    total_rank = sum(ri for ri, _ in inst.fibres)
    total_deg = sum((di for _, di in inst.fibres), Fraction(0))
    balance = total_rank == inst.r * inst.n
    bound = inst.n * inst.deg_t
    c2_bound = bound - total_deg
    violations = []
    if not balance:
        violations.append("rank-balance")
    if inst.fibres:
        if not total_deg < bound:
            violations.append("stability")
        if c2_bound > 0:
            violations.append("c2")
    if inst.c2_deficit is not None and inst.c2_deficit != c2_bound:
        violations.append("c2-identity")
    verdict = "consistent" if not inst.fibres and inst.n == 0 and not violations else "infeasible"
    return LedgerVerdict(balance, bound, c2_bound, verdict, tuple(violations))
