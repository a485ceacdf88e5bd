"""Quasicoherent sheaves on the toric cover, presented chart by chart.

A graded module is turned into a family of localized chart modules (one
per maximal cone), glued along overlaps.  All computations are windowed:
degrees come from explicit finite lists and denominator exponents are
raised until the answer stabilizes; outputs carry a stabilization flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import ratlin
from .cox import CoxRingData
from .gradmod import (
    GradedModulePresentation,
    GradedSubmodule,
    _is_monomial_context,
    _minimalize_monomial_pairs,
    _monomial_pairs,
    _monomials_of_degree,
    _pairs_to_elems,
    component_span_rows,
    minimalize_submodule_generators,
)
from .groeb import (
    m_is_zero,
    module_contains,
    module_groebner_basis,
    module_saturate_element,
    submodule_equal,
)

DEFAULT_MAX_LEVEL = 8
DEFAULT_ENUM_BOX = 6
KILL_POWER_CAP = 16


class Unstabilized(RuntimeError):
    """A windowed computation did not settle within its bound."""


@dataclass(frozen=True)
class LocalModuleWindow:
    """The localized chart module at one maximal cone."""

    cone_key: tuple  # ray generators of the cone
    denominator_step: int  # least power of the cone monomial inside S_B
    generators: tuple  # (generator index, fractional exponent vector)
    killed: dict  # generator index -> least annihilating power
    stabilized: bool

    @property
    def is_zero(self):
        return not self.generators


@dataclass(frozen=True)
class SheafCoverPresentation:
    origin: GradedModulePresentation
    charts: dict  # cone key -> LocalModuleWindow
    kernels: dict = field(default_factory=dict)  # cone key -> localization kernel gens

    @property
    def cox(self):
        return self.origin.cox


@dataclass(frozen=True)
class ChartSubmoduleFamily:
    """A subsheaf given by its (saturated) chart submodule generators."""

    ambient: GradedModulePresentation
    charts: dict  # cone key -> tuple of homogeneous elements


@dataclass(frozen=True)
class GlobalSectionsWindow:
    degree: object
    mode: str
    dimension: int
    level: int
    stabilized: bool
    internals: object = field(compare=False, repr=False, default=None)


def _sigma_positions(cox: CoxRingData, cone_key):
    rays = set(cone_key)
    return [p for p, r in enumerate(cox.grading.delta_basis) if r in rays]


def _laurent_component_generators(cox: CoxRingData, alpha, cone_key, box):
    """Minimal fractional-monomial generators of the degree-alpha part of
    the chart localization, as a module over its degree-0 ring."""
    g = cox.grading
    n = g.num_rays
    rnk = g.c_matrix.cols
    v0 = g.a_map.lift(alpha)
    pos = _sigma_positions(cox, cone_key)
    rows = g.c_matrix.to_rows()

    def collect(k):
        best = {}
        for u in product(range(-k, k + 1), repeat=rnk):
            v = tuple(
                v0[i] + sum(rows[i][j] * u[j] for j in range(rnk))
                for i in range(n)
            )
            if any(v[p] < 0 for p in pos):
                continue
            key = tuple(v[p] for p in pos)
            if key not in best or v < best[key]:
                best[key] = v
        keys = sorted(best)
        minimal = [
            p
            for p in keys
            if not any(
                q != p and all(a - b >= 0 for a, b in zip(p, q)) for q in keys
            )
        ]
        return {p: best[p] for p in minimal}

    small, large = collect(box), collect(box + 2)
    if set(small) != set(large):
        raise Unstabilized(
            "fractional generator search did not settle; raise the box"
        )
    return tuple(small[p] for p in sorted(small))


def twist_generators(cox: CoxRingData, alpha, sigma, box=DEFAULT_ENUM_BOX):
    """Minimal monomial generators (fractional exponents) of the
    degree-alpha component of the chart localization of the ring."""
    key = sigma.ray_generators if hasattr(sigma, "ray_generators") else tuple(sigma)
    return _laurent_component_generators(cox, alpha, key, box)


def _localization_kernel(f: GradedModulePresentation, zexp):
    if not f.relations:
        return ()
    zp = {tuple(zexp): Fraction(1)}
    sat = module_saturate_element(list(f.relations), zp, f.rank, f.nvars)
    return tuple(x for x in sat if not m_is_zero(x))


def _kill_power(rel_gb, i, zexp, rank, cap=KILL_POWER_CAP):
    for k in range(1, cap + 1):
        e = tuple(k * x for x in zexp)
        elem = tuple({} if j != i else {e: Fraction(1)} for j in range(rank))
        if module_contains(rel_gb, elem):
            return k
    return None


def sheafify(f: GradedModulePresentation, box=DEFAULT_ENUM_BOX) -> SheafCoverPresentation:
    """The cover presentation of the associated sheaf: one localized
    module per maximal cone, with killed generators certified."""
    cox = f.cox
    A = cox.grading.class_group
    rel_gb = module_groebner_basis(list(f.relations)) if f.relations else []
    charts = {}
    kernels = {}
    for cone in cox.grading.fan.maximal_cones():
        key = cone.ray_generators
        z = cox.zhat[key]
        kern = _localization_kernel(f, z)
        kernels[key] = kern
        kern_gb = module_groebner_basis(list(kern)) if kern else []
        killed = {}
        gens = []
        for i in range(f.rank):
            unit = tuple(
                {} if j != i else {(0,) * f.nvars: Fraction(1)}
                for j in range(f.rank)
            )
            if kern and module_contains(kern_gb, unit):
                k = _kill_power(rel_gb, i, z, f.rank)
                killed[i] = k if k is not None else KILL_POWER_CAP
                continue
            alpha = A.neg(f.generator_degrees[i])
            for v in _laurent_component_generators(cox, alpha, key, box):
                gens.append((i, v))
        charts[key] = LocalModuleWindow(
            cone_key=key,
            denominator_step=cox.m_exponents[key],
            generators=tuple(gens),
            killed=killed,
            stabilized=True,
        )
    return SheafCoverPresentation(origin=f, charts=charts, kernels=kernels)


def is_zero_sheaf(s: SheafCoverPresentation) -> bool:
    for chart in s.charts.values():
        if not chart.stabilized:
            raise Unstabilized(f"chart {chart.cone_key} is not stabilized")
        if not chart.is_zero:
            return False
    return True


def _kernel_for(s: SheafCoverPresentation, key, zexp):
    if key not in s.kernels:
        s.kernels[key] = _localization_kernel(s.origin, zexp)
    return s.kernels[key]


def _reduce_mod(vec, rrows, pivots):
    v = list(vec)
    for r, p in zip(rrows, pivots):
        if v[p]:
            c = v[p]
            v = [a - c * b for a, b in zip(v, r)]
    return v


class _Window:
    """Monomial coordinates of one chart at one denominator level,
    together with the subspace to quotient by (relations + localization
    kernel, and for twisted windows the tensor identifications)."""

    def __init__(self, coords, sub_rows):
        self.coords = list(coords)
        self.index = {c: k for k, c in enumerate(self.coords)}
        self.w_rref, self.w_pivots = ratlin.rref(sub_rows)
        self.w_rref = self.w_rref[: len(self.w_pivots)]

    @property
    def size(self):
        return len(self.coords)

    @property
    def sub_rank(self):
        return len(self.w_pivots)

    def reduce(self, vec):
        return _reduce_mod(vec, self.w_rref, self.w_pivots)


def _shift_window(s, key, alpha, level_k, enum_bound):
    f = s.origin
    g = f.cox.grading
    A = g.class_group
    z = f.cox.zhat[key]
    ksigma = level_k * f.cox.m_exponents[key]
    target = A.add(alpha, g.a_map(tuple(ksigma * x for x in z)))
    coords = _monomials_of_degree(f, target, enum_bound)
    index = {c: k for k, c in enumerate(coords)}
    kern = _kernel_for(s, key, z)
    rows = component_span_rows(
        f, list(kern) + list(f.relations), target, coords, index, enum_bound
    )
    w = _Window(coords, rows)
    w.level = ksigma
    return w


def _twist_window(s, key, alpha, level_k, enum_bound, box):
    f = s.origin
    cox = f.cox
    g = cox.grading
    z = cox.zhat[key]
    ksigma = level_k * cox.m_exponents[key]
    twists = _laurent_component_generators(cox, alpha, key, box)
    target = g.a_map(tuple(ksigma * x for x in z))
    base = _monomials_of_degree(f, target, enum_bound)
    base_index = {c: k for k, c in enumerate(base)}
    kern = _kernel_for(s, key, z)
    base_rows = component_span_rows(
        f, list(kern) + list(f.relations), target, base, base_index, enum_bound
    )
    coords = [(j, i, e) for j in range(len(twists)) for (i, e) in base]
    index = {c: k for k, c in enumerate(coords)}
    rows = []
    width = len(base)
    for j in range(len(twists)):
        for r in base_rows:
            row = [Fraction(0)] * len(coords)
            row[j * width : (j + 1) * width] = r
            rows.append(row)
    for j, j2 in combinations(range(len(twists)), 2):
        diff = tuple(a - b for a, b in zip(twists[j], twists[j2]))
        for (i, e) in base:
            e2 = tuple(a + b for a, b in zip(e, diff))
            if (i, e2) in base_index:
                row = [Fraction(0)] * len(coords)
                row[index[(j, i, e)]] = Fraction(1)
                row[index[(j2, i, e2)]] = Fraction(-1)
                rows.append(row)
    w = _Window(coords, rows)
    w.level = ksigma
    w.twists = twists
    return w


def _overlap_level(cox, tau_key, needed):
    m = cox.m_exponents[tau_key]
    return m * (-(-needed // m))


def _shift_constraints(s, alpha, level_k, windows, keys, cones, enum_bound):
    """Equalizer rows for the plain (via_shift) cover at one level."""
    f = s.origin
    cox = f.cox
    offsets = {}
    total = 0
    for key in keys:
        offsets[key] = total
        total += windows[key].size
    rows = []
    for (k1, c1), (k2, c2) in combinations(list(zip(keys, cones)), 2):
        tau = c1.intersect(c2)
        tau_key = tau.ray_generators
        ztau = cox.zhat[tau_key]
        ktau = _overlap_level(
            cox, tau_key, max(windows[k1].level, windows[k2].level)
        )
        g = cox.grading
        A = g.class_group
        target = A.add(alpha, g.a_map(tuple(ktau * x for x in ztau)))
        coords_t = _monomials_of_degree(f, target, enum_bound)
        index_t = {c: k for k, c in enumerate(coords_t)}
        kern = _kernel_for(s, tau_key, ztau)
        sub = component_span_rows(
            f, list(kern) + list(f.relations), target, coords_t, index_t, enum_bound
        )
        wt = _Window(coords_t, sub)
        images = {}
        for key in (k1, k2):
            w = windows[key]
            zs = cox.zhat[key]
            shift = tuple(
                ktau * a - w.level * b for a, b in zip(ztau, zs)
            )
            cols = []
            for (i, e) in w.coords:
                e2 = tuple(a + b for a, b in zip(e, shift))
                vec = [Fraction(0)] * wt.size
                vec[wt.index[(i, e2)]] = Fraction(1)
                cols.append(wt.reduce(vec))
            images[key] = cols
        for t in range(wt.size):
            row = [Fraction(0)] * total
            for key, sign in ((k1, 1), (k2, -1)):
                off = offsets[key]
                for jcol, col in enumerate(images[key]):
                    if col[t]:
                        row[off + jcol] += sign * col[t]
            if any(row):
                rows.append(row)
    return rows, offsets, total


def _twist_constraints(s, alpha, level_k, windows, keys, cones, enum_bound, box):
    f = s.origin
    cox = f.cox
    g = cox.grading
    offsets = {}
    total = 0
    for key in keys:
        offsets[key] = total
        total += windows[key].size
    rows = []
    for (k1, c1), (k2, c2) in combinations(list(zip(keys, cones)), 2):
        tau = c1.intersect(c2)
        tau_key = tau.ray_generators
        ztau = cox.zhat[tau_key]
        tau_pos = _sigma_positions(cox, tau_key)
        tw_tau = _laurent_component_generators(cox, alpha, tau_key, box)
        # express every source twist generator over a target twist generator
        plans = {}
        slack = 0
        for key in (k1, k2):
            w = windows[key]
            per = []
            for v in w.twists:
                choice = None
                for l, vt in enumerate(tw_tau):
                    d = tuple(a - b for a, b in zip(v, vt))
                    if all(d[p] >= 0 for p in tau_pos):
                        choice = (l, d)
                        break
                if choice is None:
                    raise Unstabilized(
                        "twist generator not covered on the overlap chart"
                    )
                per.append(choice)
                slack = max(slack, max(0, -min(choice[1])))
            plans[key] = per
        needed = max(windows[k1].level, windows[k2].level) + slack
        ktau = _overlap_level(cox, tau_key, needed)
        target = g.a_map(tuple(ktau * x for x in ztau))
        base_t = _monomials_of_degree(f, target, enum_bound)
        base_index = {c: k for k, c in enumerate(base_t)}
        kern = _kernel_for(s, tau_key, ztau)
        base_rows = component_span_rows(
            f, list(kern) + list(f.relations), target, base_t, base_index, enum_bound
        )
        coords_t = [
            (l, i, e) for l in range(len(tw_tau)) for (i, e) in base_t
        ]
        index_t = {c: k for k, c in enumerate(coords_t)}
        sub = []
        width = len(base_t)
        for l in range(len(tw_tau)):
            for r in base_rows:
                row = [Fraction(0)] * len(coords_t)
                row[l * width : (l + 1) * width] = r
                sub.append(row)
        for l, l2 in combinations(range(len(tw_tau)), 2):
            diff = tuple(a - b for a, b in zip(tw_tau[l], tw_tau[l2]))
            for (i, e) in base_t:
                e2 = tuple(a + b for a, b in zip(e, diff))
                if (i, e2) in base_index:
                    row = [Fraction(0)] * len(coords_t)
                    row[index_t[(l, i, e)]] = Fraction(1)
                    row[index_t[(l2, i, e2)]] = Fraction(-1)
                    sub.append(row)
        wt = _Window(coords_t, sub)
        images = {}
        for key in (k1, k2):
            w = windows[key]
            zs = cox.zhat[key]
            cols = []
            for (j, i, e) in w.coords:
                l, d = plans[key][j]
                e2 = tuple(
                    a + b + ktau * zt - w.level * z
                    for a, b, zt, z in zip(e, d, ztau, zs)
                )
                vec = [Fraction(0)] * wt.size
                vec[wt.index[(l, i, e2)]] = Fraction(1)
                cols.append(wt.reduce(vec))
            images[key] = cols
        for t in range(wt.size):
            row = [Fraction(0)] * total
            for key, sign in ((k1, 1), (k2, -1)):
                off = offsets[key]
                for jcol, col in enumerate(images[key]):
                    if col[t]:
                        row[off + jcol] += sign * col[t]
            if any(row):
                rows.append(row)
    return rows, offsets, total


def _sections_at_level(s, alpha, mode, level_k, enum_bound, box):
    cones = list(s.cox.grading.fan.maximal_cones())
    keys = [c.ray_generators for c in cones]
    windows = {}
    for key in keys:
        if mode == "via_shift":
            windows[key] = _shift_window(s, key, alpha, level_k, enum_bound)
        else:
            windows[key] = _twist_window(s, key, alpha, level_k, enum_bound, box)
    if mode == "via_shift":
        rows, offsets, total = _shift_constraints(
            s, alpha, level_k, windows, keys, cones, enum_bound
        )
    else:
        rows, offsets, total = _twist_constraints(
            s, alpha, level_k, windows, keys, cones, enum_bound, box
        )
    null = ratlin.nullspace(rows, ncols=total)
    trivial = sum(windows[k].sub_rank for k in keys)
    dim = len(null) - trivial
    return dim, (windows, offsets, total, null, keys)


def global_sections_degree(
    s: SheafCoverPresentation,
    alpha,
    mode="via_shift",
    max_level=DEFAULT_MAX_LEVEL,
    enum_bound=None,
    box=DEFAULT_ENUM_BOX,
) -> GlobalSectionsWindow:
    """Global sections of the sheaf (via_shift: of the shifted module's
    sheaf; via_twist: of the sheaf tensored with the twisting sheaf) as
    the equalizer of the restriction maps, stabilized over denominator
    levels."""
    if mode not in ("via_shift", "via_twist"):
        raise ValueError(f"unknown mode {mode!r}")
    prev = None
    for level in range(1, max_level + 1):
        dim, internals = _sections_at_level(s, alpha, mode, level, enum_bound, box)
        if prev is not None and dim == prev:
            return GlobalSectionsWindow(
                degree=alpha,
                mode=mode,
                dimension=dim,
                level=level,
                stabilized=True,
                internals=internals,
            )
        prev = dim
    raise Unstabilized(
        f"section dimension did not settle within {max_level} levels"
    )


def eta_component_is_bijective(
    s: SheafCoverPresentation, alpha, max_level=DEFAULT_MAX_LEVEL, enum_bound=None
) -> bool:
    """Whether the canonical map from the degree-alpha component of the
    module to the sections of the shifted sheaf is an isomorphism."""
    from .gradmod import degree_component

    f = s.origin
    cox = f.cox
    sec = global_sections_degree(
        s, alpha, mode="via_shift", max_level=max_level, enum_bound=enum_bound
    )
    windows, offsets, total, _null, keys = sec.internals
    comp = degree_component(f, alpha, enum_bound)
    if comp.dimension != sec.dimension:
        return False
    # injectivity: a degree component element mapping into every chart's
    # quotient-by-zero subspace must already lie in the relation span
    reduced_images = []
    for (i, e) in comp.monomial_basis:
        img = [Fraction(0)] * total
        for key in keys:
            w = windows[key]
            z = cox.zhat[key]
            e2 = tuple(a + w.level * b for a, b in zip(e, z))
            vec = [Fraction(0)] * w.size
            vec[w.index[(i, e2)]] = Fraction(1)
            red = w.reduce(vec)
            off = offsets[key]
            for t, x in enumerate(red):
                img[off + t] = x
        reduced_images.append(img)
    system = [
        [reduced_images[j][t] for j in range(len(reduced_images))]
        for t in range(total)
    ]
    kernel = ratlin.nullspace(system, ncols=len(reduced_images))
    rel_rows = list(comp.relation_rows)
    return all(ratlin.in_row_span(rel_rows, v) for v in kernel)


def xi_forward(g: GradedSubmodule) -> ChartSubmoduleFamily:
    """The chart family of the subsheaf generated by a graded submodule:
    per maximal cone, the saturation by the cone monomial."""
    f = g.ambient
    cox = f.cox
    charts = {}
    monomial = _is_monomial_context(g)
    for cone in cox.grading.fan.maximal_cones():
        key = cone.ray_generators
        z = cox.zhat[key]
        if monomial:
            supp = {i for i, x in enumerate(z) if x}
            pairs = [
                (i, tuple(0 if k in supp else x for k, x in enumerate(e)))
                for i, e in _monomial_pairs(g.element_generators)
            ]
            pairs = _minimalize_monomial_pairs(pairs)
            charts[key] = tuple(_pairs_to_elems(pairs, f.rank))
        else:
            zp = {tuple(z): Fraction(1)}
            sat = module_saturate_element(
                g.with_relations(), zp, f.rank, f.nvars
            )
            charts[key] = tuple(x for x in sat if not m_is_zero(x))
    return ChartSubmoduleFamily(ambient=f, charts=charts)


def family_equal(a: ChartSubmoduleFamily, b: ChartSubmoduleFamily) -> bool:
    f = a.ambient
    if set(a.charts) != set(b.charts):
        return False
    return all(
        submodule_equal(
            list(a.charts[k]) + list(f.relations),
            list(b.charts[k]) + list(f.relations),
            f.rank,
            f.nvars,
        )
        for k in a.charts
    )


def xi_preimage(
    t: ChartSubmoduleFamily,
    f: GradedModulePresentation,
    window_degrees,
    enum_bound=None,
) -> GradedSubmodule:
    """The saturated graded submodule whose image is t, reconstructed
    degree by degree over the window: the intersection over charts of
    the chart modules' graded components."""
    gens = []
    for alpha in window_degrees:
        coords = _monomials_of_degree(f, alpha, enum_bound)
        if not coords:
            continue
        index = {c: k for k, c in enumerate(coords)}
        inter = None
        for key, chart_gens in sorted(t.charts.items()):
            rows = component_span_rows(
                f,
                list(chart_gens) + list(f.relations),
                alpha,
                coords,
                index,
                enum_bound,
            )
            red, piv = ratlin.rref(rows)
            basis = red[: len(piv)]
            inter = basis if inter is None else ratlin.subspace_intersection(
                inter, basis
            )
            if not inter:
                break
        if not inter:
            continue
        for vec in inter:
            elem = [dict() for _ in range(f.rank)]
            for (i, e), c in zip(coords, vec):
                if c:
                    elem[i][e] = Fraction(c)
            gens.append(tuple(elem))
    out = GradedSubmodule(f, tuple(gens))
    return minimalize_submodule_generators(out)


def lift_finite_type(
    t: ChartSubmoduleFamily,
    f: GradedModulePresentation,
    clear_cap=DEFAULT_MAX_LEVEL,
) -> GradedSubmodule:
    """A finite-type graded submodule with the given chart family: every
    chart generator is cleared by a power of its cone monomial until the
    result lies in the family on all the other charts as well."""
    from .groeb import m_term_mul

    cox = f.cox
    keys = sorted(t.charts)
    sat_gbs = {}
    for key in keys:
        gens = list(t.charts[key]) + list(f.relations)
        sat_gbs[key] = module_groebner_basis(gens) if gens else []
    gens = []
    for key in keys:
        z = cox.zhat[key]
        step = cox.m_exponents[key]
        for x in t.charts[key]:
            if m_is_zero(x):
                continue
            lifted = None
            for j in range(clear_cap + 1):
                e = tuple(j * step * zi for zi in z)
                cand = m_term_mul(x, e, Fraction(1))
                if all(
                    module_contains(sat_gbs[other], cand)
                    for other in keys
                    if other != key
                ):
                    lifted = cand
                    break
            if lifted is None:
                raise Unstabilized(
                    "chart generator could not be cleared into the family"
                )
            gens.append(lifted)
    out = GradedSubmodule(f, tuple(gens))
    return minimalize_submodule_generators(out)
