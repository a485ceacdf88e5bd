"""Degree bookkeeping for a fan: the ray-evaluation map, its cokernel (the
grading group), ray degrees, the Picard subgroup, and subgroup
classification (big / small).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intlat
from .intlat import (
    INFINITE,
    AbelianGroup,
    GroupElement,
    IntMatrix,
    cokernel_presentation,
    hermite_row_basis,
    lattice_intersection,
    subgroup_canonical_basis,
    subgroup_contains,
    subgroup_index,
    subgroup_leq,
)
from .polyfan import Fan


class UnboundedFiber(ValueError):
    pass


@dataclass(frozen=True)
class GradingData:
    fan: Fan
    c_matrix: IntMatrix  # rows indexed by Sigma_1, row = ray generator
    class_group: AbelianGroup
    a_map: object  # QuotientMap Z^Sigma_1 -> class_group
    ray_degrees: tuple  # GroupElement per ray, in Sigma_1 order
    delta_basis: tuple  # the rays, tagging the canonical basis of Z^Sigma_1

    @property
    def num_rays(self):
        return len(self.delta_basis)

    def degree_of_exponent(self, v):
        """Degree in the class group of the monomial with exponent vector v."""
        return self.a_map(v)


@dataclass(frozen=True)
class SubgroupB:
    generators: tuple  # GroupElements of the class group
    index_in_A: object  # int or INFINITE
    is_big: bool
    is_small: bool


@dataclass(frozen=True)
class PicardGroup:
    generators: tuple  # GroupElements presenting pic as a subgroup of A


def build_grading(f: Fan) -> GradingData:
    rays = f.ray_index
    n = f.ambient_rank
    c = IntMatrix.from_rows([list(r) for r in rays], cols=n)
    group, proj = cokernel_presentation(c)
    nr = len(rays)
    degrees = []
    for i in range(nr):
        e = [0] * nr
        e[i] = 1
        degrees.append(proj(e))
    return GradingData(
        fan=f,
        c_matrix=c,
        class_group=group,
        a_map=proj,
        ray_degrees=tuple(degrees),
        delta_basis=tuple(rays),
    )


def cartier_lattice(g: GradingData):
    """Hermite basis of the lattice of support functions: vectors v in
    Z^Sigma_1 that admit, on every cone, an integral linear form agreeing
    with v on that cone's rays."""
    nr = g.num_rays
    maximal = g.fan.maximal_cones()
    if not maximal or nr == 0:
        return hermite_row_basis(
            [[int(i == j) for j in range(nr)] for i in range(nr)], nr
        )
    current = None
    for cone in maximal:
        idxs = g.fan.cone_ray_indices(cone)
        basis = []
        # Values realizable on this cone's rays by a linear form u.
        for j in range(g.fan.ambient_rank):
            v = [0] * nr
            for i in idxs:
                v[i] = g.delta_basis[i][j]
            basis.append(tuple(v))
        for i in range(nr):
            if i not in idxs:
                e = [0] * nr
                e[i] = 1
                basis.append(tuple(e))
        basis = hermite_row_basis(basis, nr)
        if current is None:
            current = basis
        else:
            current = lattice_intersection(current, basis, nr)
    return current


def picard_group(g: GradingData) -> PicardGroup:
    basis = cartier_lattice(g)
    gens = []
    for v in basis:
        x = g.a_map(v)
        if not x.is_zero():
            gens.append(x)
    # Canonicalize: drop generators already generated by the others.
    out = []
    for i, x in enumerate(gens):
        rest = out + gens[i + 1 :]
        if not subgroup_contains(rest, x, g.class_group):
            out.append(x)
    return PicardGroup(tuple(out))


def classify_subgroup(g: GradingData, generators) -> SubgroupB:
    generators = tuple(generators)
    idx = subgroup_index(generators, g.class_group)
    pic = picard_group(g)
    small = subgroup_leq(generators, pic.generators, g.class_group)
    return SubgroupB(
        generators=generators,
        index_in_A=idx,
        is_big=idx != INFINITE,
        is_small=small,
    )


def subgroup_of_whole_group(g: GradingData) -> SubgroupB:
    return classify_subgroup(g, g.class_group.generators())


def degree_monomials(g: GradingData, alpha: GroupElement, allow_negative, bound):
    """All exponent vectors v with degree alpha, v >= 0 outside the
    allow_negative ray-index set, and sum |v| <= bound."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    nr = g.num_rays
    allow_negative = set(allow_negative)
    out = []

    def rec(i, budget, acc):
        if i == nr:
            if g.a_map(acc) == alpha:
                out.append(tuple(acc))
            return
        lo = -budget if i in allow_negative else 0
        for x in range(lo, budget + 1):
            acc.append(x)
            rec(i + 1, budget - abs(x), acc)
            acc.pop()

    rec(0, bound, [])
    return sorted(out)


def _free_degree_rows(g: GradingData):
    """Free parts of the ray degrees, as rows (one per ray)."""
    return [list(d.free_part) for d in g.ray_degrees]


def finite_fibers(g: GradingData):
    """True iff every degree has finitely many monomials: no nonzero
    nonnegative exponent vector maps to a torsion degree."""
    from .polyfan import cone_generators_from_inequalities

    nr = g.num_rays
    if nr == 0:
        return True
    fr = g.class_group.free_rank
    ineqs = []
    for i in range(nr):
        e = [0] * nr
        e[i] = 1
        ineqs.append(tuple(e))
    eqs = []
    rows = _free_degree_rows(g)
    for j in range(fr):
        eqs.append(tuple(rows[i][j] for i in range(nr)))
    rays, lin = cone_generators_from_inequalities(ineqs, eqs, nr)
    return not rays and not lin


def positive_weight_vector(g: GradingData):
    """A rational row w with w . free_degree(ray) > 0 for every ray.

    Exists precisely when fibers are finite; raises UnboundedFiber otherwise.
    """
    from .polyfan import cone_inequalities

    if not finite_fibers(g):
        raise UnboundedFiber("grading admits infinite degree fibers")
    rows = _free_degree_rows(g)
    fr = g.class_group.free_rank
    ineqs, eqs = cone_inequalities([tuple(r) for r in rows], fr)
    # Sum of the dual generators is strictly positive on every degree vector.
    cand = [Fraction(0)] * fr
    for f in ineqs:
        cand = [a + b for a, b in zip(cand, f)]
    for r in rows:
        if sum(c * x for c, x in zip(cand, r)) <= 0:
            raise UnboundedFiber("no strictly positive weight vector found")
    return cand


def degree_fiber(g: GradingData, alpha: GroupElement):
    """The exact finite set of exponent vectors v >= 0 with degree alpha.

    Requires finite fibers; raises UnboundedFiber otherwise.
    """
    w = positive_weight_vector(g)
    rows = _free_degree_rows(g)
    nr = g.num_rays
    weights = [sum(c * x for c, x in zip(w, rows[i])) for i in range(nr)]
    target = sum(c * x for c, x in zip(w, alpha.free_part))
    out = []

    def rec(i, remaining, acc):
        if i == nr:
            if remaining == 0 and g.a_map(acc) == alpha:
                out.append(tuple(acc))
            return
        x = 0
        while True:
            rem = remaining - x * weights[i]
            if rem < 0:
                break
            acc.append(x)
            rec(i + 1, rem, acc)
            acc.pop()
            x += 1

    if target >= 0:
        rec(0, target, [])
    return sorted(out)


def subgroup_membership(g: GradingData, generators, x) -> bool:
    return subgroup_contains(list(generators), x, g.class_group)


def subgroup_canonical(g: GradingData, generators):
    return subgroup_canonical_basis(list(generators), g.class_group)
