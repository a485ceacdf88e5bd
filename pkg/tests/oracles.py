"""Independent brute-force oracles.

Everything in this file is deliberately written from scratch, without
importing the package's own algorithms: naive elementary-operation
normal forms, half-space elimination by the textbook recipe, explicit
lattice-point enumeration, and set-based monomial combinatorics.  Tests
compare the fast implementations against these.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product


# ---------------------------------------------------------------------------
# Smith normal form by repeated elementary reduction (diagonal only)


def snf_diagonal(rows):
    """Invariant factors of an integer matrix, by naive reduction."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    top = 0
    while top < nr and top < nc:
        # find the smallest nonzero entry and move it to the corner
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        m[top], m[i] = m[i], m[top]
        for r in m:
            r[top], r[j] = r[j], r[top]
        dirty = False
        for i in range(top + 1, nr):
            q = m[i][top] // m[top][top]
            for j in range(nc):
                m[i][j] -= q * m[top][j]
            if m[i][top]:
                dirty = True
        for j in range(top + 1, nc):
            q = m[top][j] // m[top][top]
            for i in range(nr):
                m[i][j] -= q * m[i][top]
            if m[top][j]:
                dirty = True
        if dirty:
            continue
        # force divisibility of everything below-right
        bad = None
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if m[i][j] % m[top][top]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(nc):
                m[top][j] += m[bad][j]
            continue
        diag.append(abs(m[top][top]))
        top += 1
    return diag


# ---------------------------------------------------------------------------
# Cone geometry by direct Fourier–Motzkin elimination


def _fm_step(ineqs, col):
    keep, pos, neg = [], [], []
    for row in ineqs:
        if row[col] > 0:
            pos.append(row)
        elif row[col] < 0:
            neg.append(row)
        else:
            keep.append(row)
    out = list(keep)
    for p in pos:
        for n in neg:
            combo = [p[col] * n[k] - n[col] * p[k] for k in range(len(p))]
            if any(combo):
                out.append(combo)
    return out


def cone_halfspaces(generators, rank):
    """Inequality description of cone(generators) ⊆ Q^rank: returns rows u
    with the cone equal to {x : u·x ≥ 0 for all u} (equalities appear as
    opposite pairs).  Derived by eliminating the combination multipliers."""
    gens = [list(g) for g in generators]
    k = len(gens)
    # variables (x, t); encode x = sum t_i g_i, t >= 0 as inequalities
    rows = []
    for j in range(rank):
        row = [0] * (rank + k)
        row[j] = 1
        for i in range(k):
            row[rank + i] = -gens[i][j]
        rows.append(row)
        rows.append([-x for x in row])
    for i in range(k):
        row = [0] * (rank + k)
        row[rank + i] = 1
        rows.append(row)
    for col in range(rank, rank + k):
        rows = _fm_step(rows, col)
    out = []
    seen = set()
    for row in rows:
        u = tuple(row[:rank])
        if any(u) and u not in seen:
            seen.add(u)
            out.append(list(u))
    return out


def in_cone(v, generators, rank=None):
    rank = rank if rank is not None else len(v)
    for u in cone_halfspaces(generators, rank):
        if sum(a * b for a, b in zip(u, v)) < 0:
            return False
    return True


def cone_lattice_points(generators, rank, bound):
    """All integer points of the cone with coordinate |sum| ≤ bound."""
    halfspaces = cone_halfspaces(generators, rank)
    pts = []
    rng = range(-bound, bound + 1)
    for v in product(rng, repeat=rank):
        if sum(abs(x) for x in v) > bound:
            continue
        if all(sum(a * b for a, b in zip(u, v)) >= 0 for u in halfspaces):
            pts.append(v)
    return pts


def monoid_generates(points, generators, workspace=None):
    """True iff every listed point is a nonnegative integer combination of
    the generators.  Reachability is computed by forward closure inside a
    workspace point set (default: the points themselves), which must be
    large enough to hold the intermediate sums."""
    gens = [tuple(g) for g in generators if any(g)]
    allowed = set(map(tuple, workspace if workspace is not None else points))
    zero = (0,) * len(next(iter(allowed))) if allowed else ()
    have = {zero}
    frontier = [zero]
    while frontier:
        h = frontier.pop()
        for g in gens:
            q = tuple(a + b for a, b in zip(h, g))
            if q in allowed and q not in have:
                have.add(q)
                frontier.append(q)
    return all(tuple(p) in have for p in points)


# ---------------------------------------------------------------------------
# Exact dense linear solve (for small Cartier-data systems)


def solve_rational(rows, rhs):
    """One solution x of rows·x = rhs over Q, or None."""
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        x[c] = m[i][ncols]
    return x


def divisor_is_cartier(rays, max_cone_indices, coefficients):
    """Whether the ray-coefficient vector admits per-cone integral linear
    forms u_sigma with u_sigma · ray = -coefficient on every cone ray."""
    rank = len(rays[0])
    for cone in max_cone_indices:
        rows = [list(rays[i]) for i in cone]
        rhs = [-coefficients[i] for i in cone]
        x = solve_rational(rows, rhs)
        if x is None or any(v.denominator != 1 for v in x):
            return False
        # the solved form must match on all cone rays (overdetermined case)
        for i in cone:
            if sum(a * b for a, b in zip(x, rays[i])) != -coefficients[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# Monomial ideal combinatorics


def minimalize(exponents):
    out = sorted(set(map(tuple, exponents)))
    return [
        e
        for e in out
        if not any(
            f != e and all(a <= b for a, b in zip(f, e)) for f in out
        )
    ]


def colon_monomial(ideal, f):
    return minimalize(
        [tuple(max(a - b, 0) for a, b in zip(e, f)) for e in ideal]
    )


def intersect_monomial(a, b):
    return minimalize(
        [tuple(max(x, y) for x, y in zip(e, f)) for e in a for f in b]
    )


def colon_by_ideal(ideal, by):
    cur = None
    for f in by:
        c = colon_monomial(ideal, f)
        cur = c if cur is None else intersect_monomial(cur, c)
    return cur if cur is not None else list(map(tuple, ideal))


def saturate_monomial(ideal, by, max_steps=64):
    """Union of iterated colons, with stabilization detected."""
    cur = minimalize(ideal)
    for _ in range(max_steps):
        nxt = colon_by_ideal(cur, by)
        if sorted(nxt) == sorted(cur):
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def count_monomials_total_degree(nvars, degree):
    if degree < 0:
        return 0
    return len(list(combinations_with_replacement(range(nvars), degree)))


def monomials_of_weighted_degree(weights, degree, cap=None):
    """All exponent vectors with given nonnegative-weight degree."""
    cap = cap if cap is not None else (abs(degree) + 1) * 4
    out = []
    n = len(weights)
    for e in product(range(cap + 1), repeat=n):
        if sum(w * x for w, x in zip(weights, e)) == degree:
            out.append(e)
    return out
