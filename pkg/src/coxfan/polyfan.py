"""Rational polyhedral cones and fans.

Cones are given by primitive integer ray generators; conversion between
generator and inequality descriptions goes through Fourier-Motzkin
elimination with exact rational arithmetic.  Hilbert bases are computed by
bounded lattice enumeration.  Everything is capped at ambient rank 6; the
algorithms here are enumeration-based and meant for desk-scale inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import ratlin
from .intlat import IntMatrix, integer_kernel, smith_normal_form, _unimodular_inverse

RANK_CAP = 6


class PolyfanError(ValueError):
    pass


class RankTooLarge(PolyfanError):
    pass


class NonPointed(PolyfanError):
    pass


class FanInvalid(PolyfanError):
    pass


def _check_rank(n):
    if n > RANK_CAP:
        raise RankTooLarge(f"ambient rank {n} exceeds the supported cap {RANK_CAP}")


def primitive(v):
    """Primitive integer vector on the same ray."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        return v
    return tuple(x // g for x in v)


# --- Fourier-Motzkin machinery -------------------------------------------

def _fm_eliminate(eqs, ineqs, idx):
    """Eliminate coordinate idx from a system of equations and inequalities.

    Each constraint is a rational vector; eqs mean v.x = 0, ineqs v.x >= 0.
    """
    pivot = None
    for e in eqs:
        if e[idx] != 0:
            pivot = e
            break
    out_eqs, out_ineqs = [], []
    if pivot is not None:
        p = pivot[idx]
        for e in eqs:
            if e is pivot:
                continue
            out_eqs.append([x - e[idx] * y / p for x, y in zip(e, pivot)])
        for f in ineqs:
            out_ineqs.append([x - f[idx] * y / p for x, y in zip(f, pivot)])
    else:
        pos = [f for f in ineqs if f[idx] > 0]
        neg = [f for f in ineqs if f[idx] < 0]
        zer = [f for f in ineqs if f[idx] == 0]
        out_eqs = list(eqs)
        out_ineqs = list(zer)
        for fp in pos:
            for fn in neg:
                out_ineqs.append(
                    [fp[idx] * b - fn[idx] * a for a, b in zip(fp, fn)]
                )
    return out_eqs, out_ineqs


def _normalize_int(vec):
    """Clear denominators and make primitive, keeping orientation."""
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    return primitive(ints)


def _prune(vectors):
    seen = set()
    out = []
    for v in vectors:
        if all(x == 0 for x in v):
            continue
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def cone_inequalities(generators, rank):
    """H-representation of cone(generators): (inequality normals, equality normals).

    The cone is {x : f.x >= 0 for f in ineqs, e.x = 0 for e in eqs}.
    Obtained by eliminating the multiplier variables lambda from
    {x = sum lambda_i g_i, lambda >= 0} with Fourier-Motzkin.
    """
    _check_rank(rank)
    gens = [tuple(g) for g in generators]
    k = len(gens)
    width = rank + k
    eqs = []
    for c in range(rank):
        row = [Fraction(0)] * width
        row[c] = Fraction(1)
        for i, g in enumerate(gens):
            row[rank + i] = Fraction(-g[c])
        eqs.append(row)
    ineqs = []
    for i in range(k):
        row = [Fraction(0)] * width
        row[rank + i] = Fraction(1)
        ineqs.append(row)
    for i in range(k):
        eqs, ineqs = _fm_eliminate(eqs, ineqs, rank + k - 1 - i)
        ineqs = [f for f in _dedup_frac(ineqs)]
    out_ineq = _prune([_normalize_int(f[:rank]) for f in ineqs])
    out_eq_rows = [f[:rank] for f in eqs]
    # Canonical independent set of equality normals.
    red, piv = ratlin.rref(out_eq_rows)
    out_eq = [_normalize_int(red[i]) for i in range(len(piv))]
    # Inequalities implied by the equalities are redundant.
    out_ineq = [f for f in out_ineq if not ratlin.in_row_span(out_eq, f)]
    return out_ineq, out_eq


def _dedup_frac(rows):
    seen = set()
    out = []
    for r in rows:
        if all(x == 0 for x in r):
            continue
        key = _normalize_int(list(r))
        if key not in seen:
            seen.add(key)
            out.append([Fraction(x) for x in key])
    return out


def cone_generators_from_inequalities(ineqs, eqs, rank):
    """V-representation of {x : ineqs.x >= 0, eqs.x = 0}.

    Returns (rays, lineality_basis); the cone is cone(rays) + lattice
    spanned by +/- the lineality basis.  Uses duality: the dual of the
    constraint cone is generated by the normals, and one more H-rep
    computation dualizes back.
    """
    _check_rank(rank)
    dual_gens = [tuple(f) for f in ineqs]
    for e in eqs:
        dual_gens.append(tuple(e))
        dual_gens.append(tuple(-x for x in e))
    if not dual_gens:
        basis = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
        return [], basis
    f2, e2 = cone_inequalities(dual_gens, rank)
    rays = _prune([tuple(f) for f in f2])
    lin = [tuple(e) for e in e2]
    return rays, lin


def in_cone(v, generators, rank):
    """Exact membership of a vector in cone(generators)."""
    ineqs, eqs = _hrep_cached(tuple(tuple(g) for g in generators), rank)
    return _satisfies(v, ineqs, eqs)


def _satisfies(v, ineqs, eqs):
    return all(_dot(f, v) >= 0 for f in ineqs) and all(
        _dot(e, v) == 0 for e in eqs
    )


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@lru_cache(maxsize=4096)
def _hrep_cached(gens, rank):
    return cone_inequalities(list(gens), rank)


def minimal_generators(generators, rank):
    """Drop generators lying in the cone of the others (extreme rays only,
    for pointed inputs)."""
    gens = _prune([primitive(g) for g in generators])
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            rest = [h for h in gens if h != g]
            if rest and in_cone(g, rest, rank):
                gens = rest
                changed = True
                break
    return gens


@dataclass(frozen=True)
class Cone:
    ambient_rank: int
    ray_generators: tuple  # sorted tuple of primitive integer vectors

    @staticmethod
    def make(rank, generators):
        _check_rank(rank)
        gens = minimal_generators(generators, rank)
        return Cone(rank, tuple(sorted(gens)))

    def dim(self):
        if not self.ray_generators:
            return 0
        return ratlin.rank([list(g) for g in self.ray_generators])

    def is_zero(self):
        return not self.ray_generators

    def hrep(self):
        return _hrep_cached(self.ray_generators, self.ambient_rank)

    def is_pointed(self):
        ineqs, eqs = self.hrep()
        ker = ratlin.nullspace(
            [list(f) for f in ineqs] + [list(e) for e in eqs],
            ncols=self.ambient_rank,
        )
        return not ker

    def contains(self, v):
        ineqs, eqs = self.hrep()
        return _satisfies(v, ineqs, eqs)

    def faces(self):
        """All faces (including the cone itself and, when pointed, 0)."""
        ineqs, eqs = self.hrep()
        found = {}
        stack = [self]
        while stack:
            c = stack.pop()
            if c.ray_generators in found:
                continue
            found[c.ray_generators] = c
            f_ineqs, _ = c.hrep()
            for u in f_ineqs:
                sub = [g for g in c.ray_generators if _dot(u, g) == 0]
                face = Cone.make(self.ambient_rank, sub)
                if face.ray_generators not in found:
                    stack.append(face)
        if self.is_pointed():
            zero = Cone(self.ambient_rank, ())
            found.setdefault((), zero)
        return sorted(found.values(), key=lambda c: (len(c.ray_generators), c.ray_generators))

    def intersect(self, other):
        ineqs_a, eqs_a = self.hrep()
        ineqs_b, eqs_b = other.hrep()
        rays, lin = cone_generators_from_inequalities(
            list(ineqs_a) + list(ineqs_b),
            list(eqs_a) + list(eqs_b),
            self.ambient_rank,
        )
        if lin:
            raise NonPointed("intersection of pointed cones should be pointed")
        return Cone.make(self.ambient_rank, rays)


@dataclass(frozen=True)
class DualCone:
    ambient_rank: int
    generators: tuple  # rays; for non-pointed duals includes +/- pairs
    inequalities: tuple  # H-rep normals of the dual cone (= primal rays)


def dual_cone(c: Cone) -> DualCone:
    """Dual cone {u : u.g >= 0 for all generators g} in both descriptions."""
    ineqs, eqs = c.hrep()
    gens = list(ineqs)
    for e in eqs:
        gens.append(tuple(e))
        gens.append(tuple(-x for x in e))
    gens = minimal_generators(gens, c.ambient_rank) if gens else []
    if not c.ray_generators:
        # Dual of the zero cone is everything.
        gens = []
        for i in range(c.ambient_rank):
            e = [0] * c.ambient_rank
            e[i] = 1
            gens.append(tuple(e))
            gens.append(tuple(-x for x in e))
    return DualCone(
        c.ambient_rank,
        tuple(sorted(gens)),
        tuple(sorted(tuple(g) for g in c.ray_generators)),
    )


# --- Hilbert bases --------------------------------------------------------

def _np_rows(rows):
    return np.array([list(r) for r in rows], dtype=np.int64)


def _hilbert_basis_pointed(generators, rank):
    gens = minimal_generators(generators, rank)
    if not gens:
        return []
    ineqs, eqs = cone_inequalities(gens, rank)
    s = tuple(sum(g[c] for g in gens) for c in range(rank))
    lo = [sum(min(0, g[c]) for g in gens) for c in range(rank)]
    hi = [sum(max(0, g[c]) for g in gens) for c in range(rank)]
    grids = np.meshgrid(
        *[np.arange(lo[c], hi[c] + 1, dtype=np.int64) for c in range(rank)],
        indexing="ij",
    )
    pts = np.stack([g.ravel() for g in grids], axis=1)
    if ineqs:
        F = _np_rows(ineqs)
        vals = pts @ F.T
        mask = (vals >= 0).all(axis=1)
        bound = F @ np.array(s, dtype=np.int64)
        mask &= (vals <= bound).all(axis=1)
        pts = pts[mask]
    if eqs:
        E = _np_rows(eqs)
        pts = pts[(pts @ E.T == 0).all(axis=1)]
    nz = pts[(pts != 0).any(axis=1)]
    if len(nz) == 0:
        return []
    # Irreducibility: x stays iff no nonzero candidate y != x has x - y in the cone.
    diffs = nz[:, None, :] - nz[None, :, :]
    ok = np.ones((len(nz), len(nz)), dtype=bool)
    if ineqs:
        F = _np_rows(ineqs)
        ok &= (np.einsum("ijk,lk->ijl", diffs, F) >= 0).all(axis=2)
    if eqs:
        E = _np_rows(eqs)
        ok &= (np.einsum("ijk,lk->ijl", diffs, E) == 0).all(axis=2)
    nonzero_diff = (diffs != 0).any(axis=2)
    reducible = (ok & nonzero_diff & ~np.eye(len(nz), dtype=bool)).any(axis=1)
    basis = [tuple(int(x) for x in row) for row in nz[~reducible]]
    return sorted(basis)


def _lineality_lattice(generators, rank):
    ineqs, eqs = cone_inequalities(generators, rank)
    rows = [list(f) for f in ineqs] + [list(e) for e in eqs]
    if not rows:
        return [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    m = IntMatrix.from_rows(rows, cols=rank)
    return integer_kernel(m)


def hilbert_basis(generators, rank):
    """Minimal generating set of cone(generators) ∩ Z^rank.

    For a pointed cone this is the Hilbert basis.  For a non-pointed cone
    the result is a +/- pair basis of the lineality lattice together with a
    deterministic lift of the Hilbert basis of the pointed quotient.
    """
    _check_rank(rank)
    gens = [primitive(g) for g in generators if any(x != 0 for x in g)]
    if not gens:
        return []
    lin = _lineality_lattice(gens, rank)
    if not lin:
        return _hilbert_basis_pointed(gens, rank)
    l = len(lin)
    kt = IntMatrix.from_rows([list(v) for v in lin], cols=rank).transpose()
    d, u, v = smith_normal_form(kt)
    uinv = _unimodular_inverse(u)
    proj_rows = [list(u.row(i)) for i in range(l, rank)]
    section_cols = [
        tuple(uinv.at(i, j) for i in range(rank)) for j in range(l, rank)
    ]
    out = []
    for b in lin:
        out.append(tuple(b))
        out.append(tuple(-x for x in b))
    if rank > l:
        proj = IntMatrix.from_rows(proj_rows, cols=rank)
        proj_gens = _prune([primitive(proj.mul_vec(g)) for g in gens])
        proj_gens = [g for g in proj_gens if any(x != 0 for x in g)]
        hb = _hilbert_basis_pointed(proj_gens, rank - l)
        for h in hb:
            lift = tuple(
                sum(section_cols[j][i] * h[j] for j in range(rank - l))
                for i in range(rank)
            )
            out.append(lift)
    return sorted(set(out))


# --- Fans -----------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    ambient_rank: int
    cones: tuple  # all cones, face-closed, deduplicated, sorted
    ray_index: tuple  # ordered primitive ray generators (Sigma_1 order)

    def rays(self):
        return self.ray_index

    def maximal_cones(self):
        out = []
        for c in self.cones:
            if not any(
                c is not d and set(c.ray_generators) <= set(d.ray_generators)
                for d in self.cones
            ):
                out.append(c)
        return out

    def cone_ray_indices(self, cone):
        return tuple(self.ray_index.index(g) for g in cone.ray_generators)

    def has_cone(self, cone):
        return any(c.ray_generators == cone.ray_generators for c in self.cones)


@dataclass(frozen=True)
class FanProperties:
    is_full: bool
    is_complete: bool
    is_simplicial: bool
    is_regular: bool
    cone_equals_span: bool
    is_empty: bool


def validate_fan(max_cones, ray_order=None) -> Fan:
    """Close under faces, deduplicate, and verify the fan axioms."""
    if not max_cones:
        return Fan(0 if ray_order is None else 0, (), ())
    rank = max_cones[0].ambient_rank
    _check_rank(rank)
    for c in max_cones:
        if c.ambient_rank != rank:
            raise FanInvalid("mixed ambient ranks")
        if not c.is_pointed():
            raise NonPointed(f"cone {c.ray_generators} contains a line")
    all_cones = {}
    for c in max_cones:
        for f in c.faces():
            all_cones[f.ray_generators] = f
    cones = sorted(
        all_cones.values(), key=lambda c: (len(c.ray_generators), c.ray_generators)
    )
    for i, a in enumerate(cones):
        for b in cones[i + 1 :]:
            inter = a.intersect(b)
            if inter.ray_generators not in all_cones:
                raise FanInvalid(
                    f"cones {a.ray_generators} and {b.ray_generators} "
                    f"intersect in a non-face {inter.ray_generators}"
                )
            if not (
                set(inter.ray_generators) <= set(a.ray_generators)
                and set(inter.ray_generators) <= set(b.ray_generators)
            ):
                raise FanInvalid("intersection is not a common face")
            # A common face must arise by cutting with a supporting hyperplane;
            # for pointed cones subset-of-rays + membership in the face list of
            # both suffices.
            if not any(
                f.ray_generators == inter.ray_generators for f in a.faces()
            ) or not any(
                f.ray_generators == inter.ray_generators for f in b.faces()
            ):
                raise FanInvalid("intersection is not a common face")
    if ray_order is None:
        seen = []
        for c in max_cones:
            for g in c.ray_generators:
                if g not in seen:
                    seen.append(g)
        ray_order = seen
    else:
        ray_order = [primitive(g) for g in ray_order]
    fan_rays = {
        c.ray_generators[0] for c in cones if len(c.ray_generators) == 1
    }
    if set(ray_order) != fan_rays:
        raise FanInvalid("ray order does not match the rays of the fan")
    return Fan(rank, tuple(cones), tuple(ray_order))


def build_fan(rank, rays, max_cone_ray_indices) -> Fan:
    """Fan from a ray list and maximal cones given by ray indices."""
    rays = [primitive(r) for r in rays]
    cones = [
        Cone.make(rank, [rays[i] for i in idxs]) for idxs in max_cone_ray_indices
    ]
    if not cones:
        if rays:
            raise FanInvalid("rays given but no cones")
        return Fan(rank, (), ())
    return validate_fan(cones, ray_order=rays)


def _invariant_factors(rows, rank):
    if not rows:
        return []
    m = IntMatrix.from_rows([list(r) for r in rows], cols=rank)
    d, _, _ = smith_normal_form(m)
    k = min(m.rows, m.cols)
    return [d.at(i, i) for i in range(k) if d.at(i, i) != 0]


def fan_properties(f: Fan) -> FanProperties:
    if not f.cones:
        return FanProperties(
            is_full=f.ambient_rank == 0,
            is_complete=False,
            is_simplicial=True,
            is_regular=True,
            cone_equals_span=True,
            is_empty=True,
        )
    n = f.ambient_rank
    rays = [list(r) for r in f.ray_index]
    is_full = (ratlin.rank(rays) == n) if rays else (n == 0)
    is_simplicial = all(
        len(c.ray_generators) == c.dim() for c in f.cones
    )
    is_regular = is_simplicial and all(
        all(x == 1 for x in _invariant_factors(c.ray_generators, n))
        for c in f.cones
    )
    maximal = f.maximal_cones()
    if n == 0:
        is_complete = True
    else:
        is_complete = bool(maximal) and all(c.dim() == n for c in maximal)
        if is_complete:
            walls = [c for c in f.cones if c.dim() == n - 1]
            tops = [c for c in f.cones if c.dim() == n]
            for w in walls:
                count = sum(
                    1
                    for t in tops
                    if set(w.ray_generators) <= set(t.ray_generators)
                    and any(
                        fc.ray_generators == w.ray_generators for fc in t.faces()
                    )
                )
                if count != 2:
                    is_complete = False
                    break
    support_gens = list(f.ray_index)
    if not support_gens:
        cone_equals_span = True
    else:
        cone_equals_span = all(
            in_cone(tuple(-x for x in g), support_gens, n) for g in support_gens
        )
    return FanProperties(
        is_full=is_full,
        is_complete=is_complete,
        is_simplicial=is_simplicial,
        is_regular=is_regular,
        cone_equals_span=cone_equals_span,
        is_empty=False,
    )
