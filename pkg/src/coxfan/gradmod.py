"""Finitely presented graded modules over a restricted Cox ring.

A module is a free module with one generator per listed degree, modulo a
list of homogeneous relation rows.  On top of the presentation sit degree
components (exact rational vector spaces), submodule membership, colon /
saturation against the restricted irrelevant ideal, and torsion detection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import groeb, ratlin
from .cox import CoxRingData
from .grading import UnboundedFiber, degree_fiber, degree_monomials, finite_fibers
from .groeb import (
    SaturationCapExceeded,
    m_is_zero,
    module_contains,
    module_groebner_basis,
    module_intersection,
    module_saturate_element,
    module_saturate_ideal_iterated,
    submodule_equal,
)

DEFAULT_POWER_CAP = 16


@dataclass(frozen=True)
class GradedModulePresentation:
    cox: CoxRingData
    generator_degrees: tuple  # GroupElements, generator i spans a shifted copy
    relations: tuple  # ModElems (tuples of polynomial dicts), homogeneous

    @property
    def rank(self):
        return len(self.generator_degrees)

    @property
    def nvars(self):
        return self.cox.num_vars

    def shifted(self, alpha):
        """The degree-shifted module: component beta reads off component
        alpha+beta, so generator degrees drop by alpha."""
        A = self.cox.grading.class_group
        return GradedModulePresentation(
            self.cox,
            tuple(A.add(d, A.neg(alpha)) for d in self.generator_degrees),
            self.relations,
        )

    def element_degree(self, x):
        """Degree of a homogeneous module element, or None for zero."""
        A = self.cox.grading.class_group
        for i, p in enumerate(x):
            for e in p:
                return A.add(self.generator_degrees[i], self.cox.grading.a_map(e))
        return None


def free_module(cox: CoxRingData, degrees=None) -> GradedModulePresentation:
    A = cox.grading.class_group
    if degrees is None:
        degrees = [A.zero()]
    return GradedModulePresentation(cox, tuple(degrees), ())


def quotient_by_monomial_ideal(cox: CoxRingData, exponents) -> GradedModulePresentation:
    """S_B / <monomials> as a rank-1 presentation."""
    rels = tuple(({tuple(e): Fraction(1)},) for e in exponents)
    return GradedModulePresentation(
        cox, (cox.grading.class_group.zero(),), rels
    )


@dataclass(frozen=True)
class GradedSubmodule:
    ambient: GradedModulePresentation
    element_generators: tuple  # homogeneous ModElems

    def with_relations(self):
        return list(self.element_generators) + list(self.ambient.relations)


@dataclass(frozen=True)
class DegreeComponent:
    degree: object
    monomial_basis: tuple  # (generator index, exponent) coordinates
    relation_rows: tuple  # rational rows spanning the relation subspace
    quotient_basis: tuple  # coordinate indices forming a basis of the quotient

    @property
    def dimension(self):
        return len(self.quotient_basis)


def _monomials_of_degree(f: GradedModulePresentation, alpha, enum_bound):
    """(generator, exponent) pairs of degree alpha, exact or bounded."""
    g = f.cox.grading
    A = g.class_group
    out = []
    for i, d in enumerate(f.generator_degrees):
        target = A.add(alpha, A.neg(d))
        if enum_bound is None:
            if not finite_fibers(g):
                raise UnboundedFiber(
                    "degree fibers are infinite; supply an enumeration bound"
                )
            fiber = degree_fiber(g, target)
        else:
            fiber = degree_monomials(g, target, set(), enum_bound)
        out.extend((i, e) for e in fiber)
    return out


def component_span_rows(f, elements, alpha, coords, index, enum_bound=None):
    """Rows spanning the degree-alpha slice of the module generated by
    the given homogeneous elements, in the monomial coordinates supplied."""
    g = f.cox.grading
    A = g.class_group
    rows = []
    for rel in elements:
        d_rel = f.element_degree(rel)
        if d_rel is None:
            continue
        target = A.add(alpha, A.neg(d_rel))
        if enum_bound is None:
            mults = degree_fiber(g, target)
        else:
            mults = degree_monomials(g, target, set(), enum_bound)
        for m in mults:
            row = [Fraction(0)] * len(coords)
            for i, p in enumerate(rel):
                for e, c in p.items():
                    key = (i, tuple(a + b for a, b in zip(e, m)))
                    if key in index:
                        row[index[key]] += c
            if any(row):
                rows.append(row)
    return rows


def degree_component(f: GradedModulePresentation, alpha, enum_bound=None) -> DegreeComponent:
    """Exact basis of the degree-alpha component as a rational vector space."""
    coords = _monomials_of_degree(f, alpha, enum_bound)
    index = {c: k for k, c in enumerate(coords)}
    rel_rows = component_span_rows(
        f, f.relations, alpha, coords, index, enum_bound
    )
    red, pivots = ratlin.rref(rel_rows)
    free = tuple(k for k in range(len(coords)) if k not in pivots)
    return DegreeComponent(
        degree=alpha,
        monomial_basis=tuple(coords),
        relation_rows=tuple(tuple(r) for r in red[: len(pivots)]),
        quotient_basis=free,
    )


def submodule_membership(x, sub: GradedSubmodule) -> bool:
    gens = sub.with_relations()
    if not gens:
        return m_is_zero(x)
    gb = module_groebner_basis(gens)
    return module_contains(gb, x)


def _is_monomial_context(sub: GradedSubmodule):
    return not sub.ambient.relations and all(
        groeb.m_is_monomial(x) for x in sub.element_generators
    )


def _monomial_pairs(gens):
    out = []
    for x in gens:
        for i, p in enumerate(x):
            for e, c in p.items():
                out.append((i, e))
    return out


def _pairs_to_elems(pairs, rank):
    elems = []
    for i, e in pairs:
        row = [{} for _ in range(rank)]
        row[i] = {tuple(e): Fraction(1)}
        elems.append(tuple(row))
    return elems


def _minimalize_monomial_pairs(pairs):
    out = []
    pairs = sorted(set(pairs))
    for i, e in pairs:
        if not any(
            j == i and f != e and all(a <= b for a, b in zip(f, e))
            for j, f in pairs
        ):
            out.append((i, e))
    return out


def minimalize_submodule_generators(sub: GradedSubmodule) -> GradedSubmodule:
    """Drop generators already in the submodule spanned by the others."""
    gens = [x for x in sub.element_generators if not m_is_zero(x)]
    changed = True
    while changed:
        changed = False
        for k, x in enumerate(gens):
            rest = gens[:k] + gens[k + 1 :]
            if submodule_membership(
                x, GradedSubmodule(sub.ambient, tuple(rest))
            ):
                gens = rest
                changed = True
                break
    return GradedSubmodule(sub.ambient, tuple(gens))


def saturate_submodule(g: GradedSubmodule, use_iterated_fallback=False) -> GradedSubmodule:
    """The smallest enlargement stable under colon by the restricted
    irrelevant ideal.  Computed as the intersection of the saturations by
    the single cone monomials of the maximal cones; the iterated-colon
    route is available as a cross-check."""
    f = g.ambient
    cox = f.cox
    rank, nvars = f.rank, f.nvars
    maximal = [c.ray_generators for c in cox.grading.fan.maximal_cones()]
    zhats = [cox.zhat[k] for k in maximal]
    if _is_monomial_context(g):
        pairs = _monomial_pairs(g.element_generators)
        per_sigma = []
        for z in zhats:
            supp = {i for i, x in enumerate(z) if x}
            sat = [
                (i, tuple(0 if k in supp else x for k, x in enumerate(e)))
                for i, e in pairs
            ]
            per_sigma.append(_minimalize_monomial_pairs(sat))
        current = per_sigma[0]
        for other in per_sigma[1:]:
            inter = []
            for (i, e) in current:
                for (j, fexp) in other:
                    if i == j:
                        inter.append((i, tuple(max(a, b) for a, b in zip(e, fexp))))
            current = _minimalize_monomial_pairs(inter)
        return GradedSubmodule(f, tuple(_pairs_to_elems(current, rank)))
    gens = g.with_relations()
    if use_iterated_fallback:
        ib = [
            {tuple(e): Fraction(1)} for e in cox.restricted_irrelevant_generators
        ]
        sat = module_saturate_ideal_iterated(gens, ib, rank, nvars)
    else:
        sat = None
        for z in zhats:
            zp = {tuple(z): Fraction(1)}
            part = module_saturate_element(gens, zp, rank, nvars)
            sat = part if sat is None else module_intersection(
                sat, part, rank, nvars
            )
        if sat is None:
            sat = gens
    out = GradedSubmodule(f, tuple(x for x in sat if not m_is_zero(x)))
    return minimalize_submodule_generators(out)


def submodules_equal(a: GradedSubmodule, b: GradedSubmodule) -> bool:
    f = a.ambient
    return submodule_equal(
        a.with_relations(), b.with_relations(), f.rank, f.nvars
    )


@dataclass(frozen=True)
class TorsionCertificate:
    is_torsion: bool
    exponent_table: dict  # (generator index, cone rays) -> least killing power
    failure: object  # (generator index, cone rays) at the cap, when not torsion
    capped: bool  # True when a negative verdict is only cap-limited


def is_torsion(f: GradedModulePresentation, power_cap: int = DEFAULT_POWER_CAP):
    """Whether every generator is annihilated, on each maximal cone, by a
    power of the cone monomial modulo the relations."""
    if power_cap < 1:
        raise ValueError("power cap must be >= 1")
    if f.rank == 0:
        return TorsionCertificate(True, {}, None, False)
    cox = f.cox
    maximal = [c.ray_generators for c in cox.grading.fan.maximal_cones()]
    rel_gb = (
        module_groebner_basis(list(f.relations)) if f.relations else []
    )
    table = {}
    for i in range(f.rank):
        for key in maximal:
            z = cox.zhat[key]
            found = None
            for k in range(1, power_cap + 1):
                e = tuple(k * x for x in z)
                elem = [
                    {} if j != i else {e: Fraction(1)} for j in range(f.rank)
                ]
                if module_contains(rel_gb, tuple(elem)):
                    found = k
                    break
            if found is None:
                return TorsionCertificate(False, table, (i, key), True)
            table[(i, key)] = found
    return TorsionCertificate(True, table, None, False)
