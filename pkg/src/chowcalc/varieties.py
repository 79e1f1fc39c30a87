"""Constructors for projective spaces, products, projective bundles over P^1,
divisors and complete intersections, plus pushforwards along inclusions.

Generator naming: ``h`` on a projective space; ``a, b, c, ...`` for the
hyperplane classes of a product of projective spaces; ``omega1`` and ``t`` on a
projective bundle over the line.  Other product collisions get a numeric
suffix.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    MAX_DIMENSION,
    AlgebraError,
    ChowClass,
    VarietyPresentation,
    integrate,
    mono_divides,
    mono_mul,
    monomial,
    normal_form,
    solve_linear,
)
from .charclasses import SheafData, CharacterData, character_to_chern, chern_character

__all__ = [
    "MorphismDescriptor",
    "projective_space",
    "product",
    "projective_bundle_over_line",
    "divisor_subvariety",
    "complete_intersection",
    "restrict",
    "divisor_inclusion",
    "fibre_inclusion",
    "pushforward_divisor",
    "pushforward_fibre_sheaf",
    "section_class",
    "section_t_degree",
    "minimal_section_degree",
    "anticanonical",
    "builtin_varieties",
]


def _terms(cls: ChowClass) -> tuple:
    return tuple(cls.sorted_terms())


def _finish(pres: VarietyPresentation, tangent_raw) -> VarietyPresentation:
    """Attach the normal-formed tangent Chern class to a fresh presentation."""
    tangent = normal_form(tangent_raw, pres)
    return VarietyPresentation(
        name=pres.name,
        dimension=pres.dimension,
        generators=pres.generators,
        relations=pres.relations,
        point_class=pres.point_class,
        tangent_terms=_terms(tangent),
        root=pres.root,
        weight=pres.weight,
        divisors=pres.divisors,
        attributes=pres.attributes,
    )


def _product_of_spaces(dims: tuple[int, ...], names: tuple[str, ...], label: str) -> VarietyPresentation:
    generators = tuple((g, 1) for g in names)
    relations = tuple((((g, n + 1),), ()) for g, n in zip(names, dims))
    point = ((monomial({g: n for g, n in zip(names, dims)}), Fraction(1)),)
    bare = VarietyPresentation(
        name=label,
        dimension=sum(dims),
        generators=generators,
        relations=relations,
        point_class=point,
        tangent_terms=((( ), Fraction(1)),),
        attributes=(("factors", dims),),
    )
    tangent = bare.one()
    for g, n in zip(names, dims):
        tangent = tangent * (1 + bare.gen(g)) ** (n + 1)
    return _finish(bare, tangent.terms)


@lru_cache(maxsize=None)
def projective_space(n: int) -> VarietyPresentation:
    """P^n with hyperplane class ``h``."""
    if not isinstance(n, int) or not 1 <= n <= 5:
        raise AlgebraError(f"projective_space needs 1 <= n <= 5, got {n!r}")
    return _product_of_spaces((n,), ("h",), f"P{n}")


def _product_label(parts) -> str:
    return "*".join(p.name for p in parts)


def product(*parts: VarietyPresentation) -> VarietyPresentation:
    """Product of presentations.

    If every factor is a projective space or a product of them, the result
    uses letters ``a, b, c, ...`` for the factor hyperplanes in order.
    """
    if len(parts) < 2:
        raise AlgebraError("product needs at least two factors")
    if sum(p.dimension for p in parts) > MAX_DIMENSION:
        raise AlgebraError(f"product dimension exceeds {MAX_DIMENSION}")
    if any(not p.is_root() for p in parts):
        raise AlgebraError("products of subvarieties are not supported")
    factor_dims = [p.attribute("factors") for p in parts]
    if all(fd is not None for fd in factor_dims):
        dims = tuple(d for fd in factor_dims for d in fd)
        if len(dims) > len(string.ascii_lowercase):
            raise AlgebraError("too many factors")
        names = tuple(string.ascii_lowercase[: len(dims)])
        return _cached_product_of_spaces(dims, names)
    return _generic_product(parts)


@lru_cache(maxsize=None)
def _cached_product_of_spaces(dims, names):
    return _product_of_spaces(dims, names, "*".join(f"P{d}" for d in dims))


def _generic_product(parts) -> VarietyPresentation:
    used: set[str] = set()
    renamings = []
    for p in parts:
        ren = {}
        for g, _ in p.generators:
            new, k = g, 1
            while new in used:
                k += 1
                new = f"{g}_{k}"
            used.add(new)
            ren[g] = new
        renamings.append(ren)

    def rename(m, ren):
        return monomial((ren[n], e) for n, e in m)

    generators = tuple((ren[g], d) for p, ren in zip(parts, renamings) for g, d in p.generators)
    relations = tuple(
        (rename(lead, ren), tuple((rename(m, ren), c) for m, c in rhs))
        for p, ren in zip(parts, renamings)
        for lead, rhs in p.relations
    )
    point_mono = ()
    for p, ren in zip(parts, renamings):
        ((pm, _),) = p.point_class
        point_mono = mono_mul(point_mono, rename(pm, ren))
    bare = VarietyPresentation(
        name=_product_label(parts),
        dimension=sum(p.dimension for p in parts),
        generators=generators,
        relations=relations,
        point_class=((point_mono, Fraction(1)),),
        tangent_terms=(((), Fraction(1)),),
    )
    tangent = bare.one()
    for p, ren in zip(parts, renamings):
        tangent = tangent * normal_form({rename(m, ren): c for m, c in p.tangent_terms}, bare)
    return _finish(bare, tangent.terms)


@lru_cache(maxsize=None)
def _projective_bundle(twists: tuple[int, ...]) -> VarietyPresentation:
    r = len(twists)
    s = sum(twists)
    # prod_i (t + a_i omega1) with omega1^2 = 0 is t^r + s omega1 t^(r-1)
    t_rule = ((("t", r),), (((("omega1", 1), ("t", r - 1)), Fraction(-s)),) if s else ())
    bare = VarietyPresentation(
        name="P(" + ",".join(f"O({a})" for a in twists) + ")",
        dimension=r,
        generators=(("omega1", 1), ("t", 1)),
        relations=(((("omega1", 2),), ()), t_rule),
        point_class=((monomial({"omega1": 1, "t": r - 1}), Fraction(1)),),
        tangent_terms=(((), Fraction(1)),),
        attributes=(("twists", twists),),
    )
    w, t = bare.gen("omega1"), bare.gen("t")
    tangent = 1 + 2 * w
    for a in twists:
        tangent = tangent * (1 + t + a * w)
    return _finish(bare, tangent.terms)


def projective_bundle_over_line(twists) -> VarietyPresentation:
    """P(E) for E = O(a_1) + ... + O(a_r) over P^1.

    ``t`` is c_1(O_{P(E)}(1)) and satisfies prod_i (t + a_i omega1) = 0, so a
    sub-line-bundle O(a) of E gives a section of t-degree -a.
    """
    twists = tuple(int(a) for a in twists)
    if not 2 <= len(twists) <= 5:
        raise AlgebraError(f"projective_bundle_over_line needs 2..5 twists, got {len(twists)}")
    return _projective_bundle(twists)


def anticanonical(pres: VarietyPresentation) -> ChowClass:
    """c_1 of the tangent bundle."""
    return pres.tangent_chern.grade(1)


def divisor_subvariety(ambient: VarietyPresentation, divisor: ChowClass, name: str | None = None) -> VarietyPresentation:
    """Smooth divisor in the class ``divisor``, with tangent class by adjunction.

    The subvariety reuses the ambient ring; integrating over it multiplies by
    the divisor and integrates over the ambient.
    """
    if divisor.pres != ambient:
        divisor = normal_form(divisor.terms, ambient)
    if divisor.is_zero() or not divisor.is_homogeneous(1):
        raise AlgebraError("divisor class must be nonzero of pure degree 1")
    if ambient.dimension < 2:
        raise AlgebraError("ambient must have dimension >= 2")
    dim = ambient.dimension - 1
    root = ambient.root or ambient
    weight = normal_form(dict(ambient.weight), root) if ambient.root else root.one()
    weight = weight * normal_form(divisor.terms, root)

    relations = _numerical_relations(ambient, root, weight, dim)
    top = _standard(ambient.monomials(dim), relations)
    if not top:
        raise AlgebraError("divisor is numerically trivial; cannot normalise a point class")
    (pm,) = top
    point = ((pm, 1 / integrate(normal_form({pm: 1}, root) * weight)),)

    label = name or f"divisor({ambient.name},{divisor})"
    bare = VarietyPresentation(
        name=label,
        dimension=dim,
        generators=ambient.generators,
        relations=relations,
        point_class=point,
        tangent_terms=(((), Fraction(1)),),
        root=root,
        weight=_terms(weight),
        divisors=ambient.divisors + (_terms(divisor),),
        attributes=ambient.attributes,
    )
    amb_tangent = normal_form(ambient.tangent_terms, bare)
    div = normal_form(divisor.terms, bare)
    return _finish(bare, (amb_tangent * (1 + div).inverse()).terms)


def _standard(monos, relations):
    return [m for m in monos if not any(mono_divides(lead, m) for lead, _ in relations)]


def _numerical_relations(ambient: VarietyPresentation, root: VarietyPresentation, weight: ChowClass, dim: int) -> tuple:
    """Ambient rules plus linear rules killing numerically trivial classes.

    Per degree, standard monomials are scanned in term order; a monomial whose
    pairing row against the complementary degree is a combination of earlier
    kept ones is rewritten to that combination.  The kept monomials then form a
    basis of the numerical ring, so normal forms stay canonical.
    """
    rules = list(ambient.relations)
    for k in range(dim + 1):
        duals = ambient.monomials(dim - k)
        dual_classes = [normal_form({m: 1}, root) * weight for m in duals]
        kept: list = []
        kept_rows: list = []
        for m in _standard(ambient.monomials(k), rules):
            mc = normal_form({m: 1}, root)
            row = [integrate(mc * d) for d in dual_classes]
            sol = solve_linear(
                [[r[i] for r in kept_rows] + [row[i]] for i in range(len(row))], len(kept_rows)
            ) if kept_rows else (None if any(row) else [])
            if sol is None:
                kept.append(m)
                kept_rows.append(row)
            else:
                rhs = tuple((b, c) for b, c in zip(kept, sol) if c)
                rules.append((m, rhs))
    return tuple(rules)


def complete_intersection(ambient: VarietyPresentation, *divisors, name: str | None = None) -> VarietyPresentation:
    """Iterated :func:`divisor_subvariety`; divisors may be classes or term maps."""
    pres = ambient
    for i, d in enumerate(divisors):
        cls = d if isinstance(d, ChowClass) else normal_form(d, pres)
        last = i == len(divisors) - 1
        pres = divisor_subvariety(pres, normal_form(cls.terms, pres), name=name if last else None)
    return pres


def restrict(x: ChowClass, sub: VarietyPresentation) -> ChowClass:
    """Restriction to a subvariety sharing the ambient ring (identity on representatives)."""
    return normal_form(x.terms, sub)


@dataclass(frozen=True)
class MorphismDescriptor:
    kind: str  # "divisor-inclusion" | "fibre-inclusion" | "bundle-projection"
    source: VarietyPresentation
    target: VarietyPresentation
    cls: ChowClass  # divisor or fibre class on the target

    def __post_init__(self):
        if self.kind not in ("divisor-inclusion", "fibre-inclusion", "bundle-projection"):
            raise AlgebraError(f"unknown morphism kind {self.kind!r}")
        if self.cls.pres != self.target:
            raise AlgebraError("class must live on the target")
        if self.kind in ("divisor-inclusion", "fibre-inclusion") and not (
            self.cls and self.cls.is_homogeneous(1)
        ):
            raise AlgebraError("inclusion class must be nonzero of degree 1")
        if self.kind == "fibre-inclusion" and not (self.cls * self.cls).is_zero():
            raise AlgebraError("fibre class must square to zero (trivial normal bundle)")


def divisor_inclusion(target: VarietyPresentation, divisor: ChowClass, name: str | None = None) -> MorphismDescriptor:
    divisor = normal_form(divisor.terms, target)
    sub = divisor_subvariety(target, divisor, name=name)
    return MorphismDescriptor("divisor-inclusion", sub, target, divisor)


def fibre_inclusion(target: VarietyPresentation, fibre: ChowClass, name: str | None = None) -> MorphismDescriptor:
    fibre = normal_form(fibre.terms, target)
    if not (fibre * fibre).is_zero():
        raise AlgebraError("fibre class must square to zero (trivial normal bundle)")
    sub = divisor_subvariety(target, fibre, name=name)
    return MorphismDescriptor("fibre-inclusion", sub, target, fibre)


def pushforward_divisor(x: ChowClass, m: MorphismDescriptor) -> ChowClass:
    """i_* x = x . D on the ambient."""
    if m.kind != "divisor-inclusion":
        raise AlgebraError(f"pushforward_divisor needs a divisor inclusion, got {m.kind}")
    if x.pres != m.source:
        raise AlgebraError("class must live on the source of the inclusion")
    return normal_form(x.terms, m.target) * m.cls


def pushforward_fibre_sheaf(q: SheafData, m: MorphismDescriptor) -> SheafData:
    """Chern data of i_* q for a fibre with trivial normal bundle: ch(i_* q) = f . ch(q)."""
    if m.kind != "fibre-inclusion":
        raise AlgebraError(f"pushforward_fibre_sheaf needs a fibre inclusion, got {m.kind}")
    if not (m.cls * m.cls).is_zero():
        raise AlgebraError("fibre class must square to zero")
    if q.pres != m.source:
        raise AlgebraError("sheaf must live on the source fibre")
    ch = chern_character(q).total
    pushed = normal_form(ch.terms, m.target) * m.cls
    return character_to_chern(CharacterData(pushed))


def section_class(pres: VarietyPresentation, index: int) -> ChowClass:
    """Class of the section of P(E) given by the summand O(a_index) of E."""
    twists = pres.attribute("twists")
    if twists is None or not pres.is_root():
        raise AlgebraError(f"{pres.name} is not a projective bundle over the line")
    if not 0 <= index < len(twists):
        raise AlgebraError(f"summand index {index} out of range")
    w, t = pres.gen("omega1"), pres.gen("t")
    out = pres.one()
    for i, a in enumerate(twists):
        if i != index:
            out = out * (t + a * w)
    return out


def section_t_degree(pres: VarietyPresentation, index: int) -> Fraction:
    return integrate(pres.gen("t") * section_class(pres, index))


def minimal_section_degree(pres: VarietyPresentation) -> Fraction:
    """Lowest t-degree among the coordinate sections of P(E)."""
    return min(section_t_degree(pres, i) for i in range(len(pres.attribute("twists"))))


@lru_cache(maxsize=None)
def builtin_varieties() -> dict[str, VarietyPresentation]:
    """Named presentations used by the worked examples."""
    out: dict[str, VarietyPresentation] = {}
    for n in range(1, 6):
        out[f"P{n}"] = projective_space(n)
    p3, p4, p5 = projective_space(3), projective_space(4), projective_space(5)
    out["K3quartic"] = divisor_subvariety(p3, 4 * p3.gen("h"), name="K3quartic")
    out["quintic"] = divisor_subvariety(p4, 5 * p4.gen("h"), name="quintic")
    amb = product(projective_space(1), projective_space(1), projective_space(2))
    out["P1xP1xP2"] = amb
    a, b, c = amb.gen("a"), amb.gen("b"), amb.gen("c")
    out["X223"] = divisor_subvariety(amb, 2 * a + 2 * b + 3 * c, name="X223")
    out["X223fibre"] = divisor_subvariety(out["X223"], normal_form(a.terms, out["X223"]), name="X223fibre")
    for i, tw in ((1, (0, 0, 0, 0)), (2, (-1, 0, 0, 1))):
        pe = projective_bundle_over_line(tw)
        out[f"PE{i}"] = pe
        x = divisor_subvariety(pe, anticanonical(pe), name=f"X{i}")
        out[f"X{i}"] = x
        out[f"X{i}fibre"] = divisor_subvariety(x, normal_form({"omega1": 1}, x), name=f"X{i}fibre")
    out["Q24"] = complete_intersection(p5, 2 * p5.gen("h"), 4 * p5.gen("h"), name="Q24")
    out["H24"] = complete_intersection(p4, 2 * p4.gen("h"), 4 * p4.gen("h"), name="H24")
    return out
