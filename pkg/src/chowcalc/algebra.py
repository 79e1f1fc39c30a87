"""Exact graded quotient rings and their classes.

A :class:`VarietyPresentation` is a polynomial ring in named graded
generators modulo a small set of rewrite rules, truncated above the
dimension.  A :class:`ChowClass` is a sparse rational polynomial kept in
normal form with respect to those rules.

Monomials are tuples of ``(generator, exponent)`` pairs sorted by name with
zero exponents dropped, so ``h^2*t`` is ``(("h", 2), ("t", 1))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "AlgebraError",
    "UnknownGeneratorError",
    "RewriteError",
    "PresentationMismatch",
    "Monomial",
    "VarietyPresentation",
    "ChowClass",
    "monomial",
    "normal_form",
    "combine",
    "integrate",
    "confluence_audit",
    "format_rational",
    "solve_linear",
    "all_monomials",
    "MAX_DIMENSION",
]

MAX_DIMENSION = 6
_REWRITE_GUARD = 100_000

Monomial = tuple  # tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]


class AlgebraError(ValueError):
    pass


class UnknownGeneratorError(AlgebraError):
    pass


class RewriteError(AlgebraError):
    """Raised when rewriting does not terminate within the step guard."""


class PresentationMismatch(AlgebraError):
    pass


def monomial(exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()) -> Monomial:
    """Canonical monomial from a name -> exponent mapping."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    acc: dict[str, int] = {}
    for name, e in items:
        if e < 0:
            raise AlgebraError(f"negative exponent for {name!r}")
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted((n, e) for n, e in acc.items() if e))


def mono_mul(m: Monomial, n: Monomial) -> Monomial:
    if not m:
        return n
    if not n:
        return m
    acc = dict(m)
    for name, e in n:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted(acc.items()))


def mono_divides(lead: Monomial, m: Monomial) -> bool:
    d = dict(m)
    return all(d.get(name, 0) >= e for name, e in lead)


def mono_quotient(m: Monomial, lead: Monomial) -> Monomial:
    acc = dict(m)
    for name, e in lead:
        acc[name] -= e
    return tuple(sorted((n, e) for n, e in acc.items() if e))


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class VarietyPresentation:
    """A graded ring presentation of the cohomology of a variety.

    ``relations`` are rewrite rules ``lead -> rhs`` where ``rhs`` is a tuple of
    ``(monomial, coefficient)`` pairs of the same degree as ``lead``.

    For a root presentation, ``point_class`` is a single monomial with
    coefficient 1 and integration reads off its coefficient.  Subvarieties
    cut out by divisors keep the ring of their ``root`` and integrate by
    multiplying with ``weight`` (the product of the cutting divisors) and
    integrating on the root.
    """

    name: str
    dimension: int
    generators: tuple  # ((name, degree), ...)
    relations: tuple  # ((lead, ((mono, coeff), ...)), ...)
    point_class: tuple  # ((mono, coeff), ...)
    tangent_terms: tuple  # ((mono, coeff), ...)
    root: "VarietyPresentation | None" = None
    weight: tuple = ()  # ((mono, coeff), ...), meaningful only when root is set
    divisors: tuple = ()  # cutting divisors, outermost last
    attributes: tuple = ()  # free-form (key, value) pairs
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.dimension <= MAX_DIMENSION:
            raise AlgebraError(
                f"dimension {self.dimension} outside supported range 0..{MAX_DIMENSION}"
            )
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {names}")
        for g, deg in self.generators:
            if deg < 1:
                raise AlgebraError(f"generator {g!r} must have degree >= 1")

    def __repr__(self) -> str:
        gens = ", ".join(g for g, _ in self.generators)
        return f"<VarietyPresentation {self.name} dim={self.dimension} gens=({gens})>"

    @property
    def degrees(self) -> dict[str, int]:
        d = self._cache.get("degrees")
        if d is None:
            d = self._cache["degrees"] = dict(self.generators)
        return d

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    def attribute(self, key, default=None):
        return dict(self.attributes).get(key, default)

    def degree(self, m: Monomial) -> int:
        degs = self.degrees
        try:
            return sum(degs[n] * e for n, e in m)
        except KeyError as exc:
            raise UnknownGeneratorError(
                f"unknown generator {exc.args[0]!r} for {self.name}"
            ) from None

    def gen(self, name: str) -> "ChowClass":
        if name not in self.degrees:
            raise UnknownGeneratorError(f"unknown generator {name!r} for {self.name}")
        return ChowClass._raw({((name, 1),): Fraction(1)}, self)

    def one(self) -> "ChowClass":
        return ChowClass._raw({(): Fraction(1)}, self)

    def zero(self) -> "ChowClass":
        return ChowClass._raw({}, self)

    def scalar(self, c: Scalar) -> "ChowClass":
        c = _frac(c)
        return ChowClass._raw({(): c} if c else {}, self)

    def cls(self, terms) -> "ChowClass":
        return normal_form(terms, self)

    @property
    def point(self) -> "ChowClass":
        return ChowClass._raw(dict(self.point_class), self)

    @property
    def tangent_chern(self) -> "ChowClass":
        return ChowClass._raw(dict(self.tangent_terms), self)

    def monomials(self, degree: int) -> list[Monomial]:
        """All monomials of exactly ``degree`` in the free ring, before rewriting."""
        out = []
        gens = self.generators

        def rec(i, remaining, acc):
            if i == len(gens):
                if remaining == 0:
                    out.append(monomial(acc))
                return
            name, deg = gens[i]
            for e in range(remaining // deg + 1):
                rec(i + 1, remaining - e * deg, acc + [(name, e)])

        rec(0, degree, [])
        return sorted(out, key=self.term_key)

    def term_key(self, m: Monomial):
        d = dict(m)
        return (self.degree(m), tuple(-d.get(g, 0) for g in self.generator_names))

    def is_root(self) -> bool:
        return self.root is None


def _reduce_monomial(pres: VarietyPresentation, m: Monomial, reverse: bool = False) -> dict:
    """Fully rewrite one monomial; results are cached per presentation."""
    cache = pres._cache.setdefault("reduce_rev" if reverse else "reduce", {})
    hit = cache.get(m)
    if hit is not None:
        return hit
    rules = pres.relations[::-1] if reverse else pres.relations
    dim = pres.dimension
    out: dict = {}
    stack = [(m, Fraction(1))]
    steps = 0
    while stack:
        mono, c = stack.pop()
        if pres.degree(mono) > dim:
            continue
        for lead, rhs in rules:
            if mono_divides(lead, mono):
                steps += 1
                if steps > _REWRITE_GUARD:
                    raise RewriteError(
                        f"rewriting {m} in {pres.name} exceeded {_REWRITE_GUARD} steps"
                    )
                q = mono_quotient(mono, lead)
                stack.extend((mono_mul(q, r), c * rc) for r, rc in rhs)
                break
        else:
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    cache[m] = out
    return out


def _as_terms(raw, pres: VarietyPresentation) -> dict:
    if isinstance(raw, ChowClass):
        if raw.pres != pres:
            raise PresentationMismatch(f"class lives in {raw.pres.name}, not {pres.name}")
        return raw.terms
    if isinstance(raw, (int, Fraction)):
        return {(): Fraction(raw)} if raw else {}
    items = raw.items() if isinstance(raw, Mapping) else raw
    out: dict = {}
    for m, c in items:
        if isinstance(m, str):
            m = ((m, 1),)
        m = monomial(m)
        for name, _ in m:
            if name not in pres.degrees:
                raise UnknownGeneratorError(f"unknown generator {name!r} for {pres.name}")
        out[m] = out.get(m, 0) + _frac(c)
    return out


def normal_form(raw, pres: VarietyPresentation) -> "ChowClass":
    """Canonical representative of a formal polynomial in ``pres``.

    ``raw`` may be a ChowClass of ``pres``, a scalar, or a mapping (or pair
    iterable) from monomials to rational coefficients.  Monomials may be given
    as canonical tuples, plain ``{name: exponent}`` dicts or bare names.
    """
    terms = _as_terms(raw, pres)
    out: dict = {}
    for m, c in terms.items():
        if not c:
            continue
        for r, rc in _reduce_monomial(pres, m).items():
            out[r] = out.get(r, 0) + c * rc
    return ChowClass._raw({m: c for m, c in out.items() if c}, pres)


class ChowClass:
    """An immutable class in a :class:`VarietyPresentation`, kept in normal form.

    Supports ``+``, ``-``, ``*`` (with classes or rationals) and ``**``.
    """

    __slots__ = ("terms", "pres", "_hash")

    def __init__(self, terms, pres: VarietyPresentation):
        nf = normal_form(terms, pres)
        self.terms = nf.terms
        self.pres = pres
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, pres: VarietyPresentation) -> "ChowClass":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.pres = pres
        obj._hash = None
        return obj

    def _check(self, other: "ChowClass"):
        if self.pres != other.pres:
            raise PresentationMismatch(
                f"classes live in different presentations: {self.pres.name} vs {other.pres.name}"
            )

    def _coerce(self, other) -> "ChowClass | None":
        if isinstance(other, ChowClass):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.pres.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ChowClass._raw(out, self.pres)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass._raw({m: -c for m, c in self.terms.items()}, self.pres)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.pres.zero()
            return ChowClass._raw({m: c * other for m, c in self.terms.items()}, self.pres)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        pres = self.pres
        dim = pres.dimension
        by_deg = [(m, c, pres.degree(m)) for m, c in other.terms.items()]
        raw: dict = {}
        for m1, c1 in self.terms.items():
            d1 = pres.degree(m1)
            for m2, c2, d2 in by_deg:
                if d1 + d2 > dim:
                    continue
                m = mono_mul(m1, m2)
                raw[m] = raw.get(m, 0) + c1 * c2
        return normal_form(raw, pres)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("only non-negative integer powers are defined")
        result = self.pres.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, ChowClass):
            return self.pres == other.pres and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.pres.name, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def grade(self, k: int) -> "ChowClass":
        """The homogeneous component of degree ``k``."""
        pres = self.pres
        return ChowClass._raw(
            {m: c for m, c in self.terms.items() if pres.degree(m) == k}, pres
        )

    def truncate(self, k: int) -> "ChowClass":
        pres = self.pres
        return ChowClass._raw(
            {m: c for m, c in self.terms.items() if pres.degree(m) <= k}, pres
        )

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def degrees(self) -> set[int]:
        return {self.pres.degree(m) for m in self.terms}

    def is_homogeneous(self, k: int) -> bool:
        return all(self.pres.degree(m) == k for m in self.terms)

    def coefficient(self, m) -> Fraction:
        return self.terms.get(monomial(m) if not isinstance(m, tuple) else m, Fraction(0))

    def nilpotent_part(self) -> "ChowClass":
        return ChowClass._raw({m: c for m, c in self.terms.items() if m}, self.pres)

    def exp(self) -> "ChowClass":
        """exp of a class with zero constant term (a finite sum by nilpotency)."""
        if self.constant():
            raise AlgebraError("exp needs a class with vanishing constant term")
        result = self.pres.one()
        power = self.pres.one()
        for k in range(1, self.pres.dimension + 1):
            power = power * self / k
            if power.is_zero():
                break
            result = result + power
        return result

    def inverse(self) -> "ChowClass":
        """Multiplicative inverse; requires a nonzero constant term."""
        a0 = self.constant()
        if not a0:
            raise AlgebraError("class with zero constant term is not invertible")
        u = self.nilpotent_part() / a0
        result = self.pres.one()
        power = self.pres.one()
        for _ in range(self.pres.dimension):
            power = power * (-u)
            if power.is_zero():
                break
            result = result + power
        return result / a0

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: self.pres.term_key(mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ChowClass({self}; {self.pres.name})"


def combine(op: str, x: ChowClass, y: ChowClass) -> ChowClass:
    """Ring operation ``op`` ('add' or 'mul') on two classes of one presentation."""
    x._check(y)
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise AlgebraError(f"unknown operation {op!r}")


def integrate(x: ChowClass, pres: VarietyPresentation | None = None) -> Fraction:
    """Degree of the top-dimensional part of ``x``."""
    if pres is not None and x.pres != pres:
        raise PresentationMismatch(f"class lives in {x.pres.name}, not {pres.name}")
    pres = x.pres
    top = x.grade(pres.dimension)
    if top.is_zero():
        return Fraction(0)
    if pres.root is None:
        ((pt, pc),) = pres.point_class
        extra = [m for m in top.terms if m != pt]
        if extra:
            raise AlgebraError(
                f"top-degree monomials {extra} of {pres.name} do not reduce to the point class"
            )
        return top.terms[pt] / pc
    root = pres.root
    lifted = normal_form(top.terms, root) * normal_form(dict(pres.weight), root)
    return integrate(lifted)


def confluence_audit(pres: VarietyPresentation) -> list[Monomial]:
    """Monomials of degree <= dim whose reduction depends on rule order.

    An empty list means the rule set is confluent at this scale.
    """
    bad = []
    for d in range(pres.dimension + 1):
        for m in pres.monomials(d):
            a = _reduce_monomial(pres, m)
            b = _reduce_monomial(pres, m, reverse=True)
            if a != b:
                bad.append(m)
    return bad


def solve_linear(rows, ncols: int):
    """Solve an augmented exact system ``rows = [[a_1..a_n, b], ...]``.

    Returns one solution (free variables set to 0) or None if inconsistent.
    """
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [Fraction(x) / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


def all_monomials(pres: VarietyPresentation, max_degree: int | None = None) -> list[Monomial]:
    top = pres.dimension if max_degree is None else max_degree
    return list(itertools.chain.from_iterable(pres.monomials(d) for d in range(top + 1)))
