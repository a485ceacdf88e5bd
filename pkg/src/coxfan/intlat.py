"""Exact integer linear algebra.

Smith and Hermite normal forms, integer kernels, cokernel presentations of
integer matrices, and arithmetic in finitely generated abelian groups.  All
arithmetic is arbitrary-precision; nothing here ever touches floats.

An abelian group is kept in the canonical shape Z/t_1 x ... x Z/t_k x Z^f
with t_1 | t_2 | ... | t_k and every t_i >= 2, so two groups are equal iff
their field tuples are equal.  Element coordinates list the torsion residues
first and the free part last.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


INFINITE = "infinite"


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows_list, cols=None):
        rows_list = [tuple(int(x) for x in r) for r in rows_list]
        if rows_list:
            cols = len(rows_list[0])
            if any(len(r) != cols for r in rows_list):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        flat = tuple(x for r in rows_list for x in r)
        return IntMatrix(len(rows_list), cols, flat)

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix.from_rows(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append(
                [
                    sum(r[k] * other.at(k, j) for k in range(self.cols))
                    for j in range(other.cols)
                ]
            )
        return IntMatrix.from_rows(out, cols=other.cols)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(
            sum(self.at(i, k) * v[k] for k in range(self.cols))
            for i in range(self.rows)
        )

    def is_diagonal(self):
        return all(
            self.at(i, j) == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )


def det(m: IntMatrix):
    """Determinant by fraction-free expansion; only used on small matrices."""
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    if n == 0:
        return 1
    rows = m.to_rows()

    def _det(rs):
        k = len(rs)
        if k == 1:
            return rs[0][0]
        total = 0
        for j in range(k):
            if rs[0][j] == 0:
                continue
            minor = [r[:j] + r[j + 1 :] for r in rs[1:]]
            total += (-1) ** j * rs[0][j] * _det(minor)
        return total

    return _det(rows)


def smith_normal_form(m: IntMatrix):
    """Return (d, u, v) with d = u*m*v, u and v unimodular, d diagonal with
    nonnegative entries forming a divisibility chain.

    Pivot selection: smallest nonzero absolute value in the working
    submatrix, ties broken by lowest (row, column) index, so the transforms
    are deterministic.
    """
    a = m.to_rows()
    r, c = m.rows, m.cols
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(r, c):
        # Locate the pivot: minimal |entry| over the trailing submatrix.
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # Clear row and column t; restart whenever a remainder shrinks the pivot.
        while True:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # Divisibility: the pivot must divide every remaining entry.
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            addmul_row(t, bad, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    d = IntMatrix.from_rows(a, cols=c)
    return d, IntMatrix.from_rows(u, cols=r), IntMatrix.from_rows(v, cols=c)


def hermite_row_basis(rows, ncols):
    """Canonical basis of the row lattice (row-style Hermite normal form).

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    Zero rows are dropped, so equal lattices give equal outputs.
    """
    work = [list(map(int, r)) for r in rows if any(x != 0 for x in r)]
    basis = []
    col = 0
    while col < ncols and work:
        sel = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not sel:
            col += 1
            continue
        while len(sel) > 1:
            sel.sort(key=lambda r: abs(r[col]))
            p = sel[0]
            new_sel = [p]
            for r in sel[1:]:
                q = r[col] // p[col]
                rr = [x - q * y for x, y in zip(r, p)]
                if rr[col] != 0:
                    new_sel.append(rr)
                elif any(x != 0 for x in rr):
                    rest.append(rr)
            sel = new_sel
        p = sel[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        work = rest
        col += 1
    # Reduce above-pivot entries for canonicity.
    for i in range(len(basis)):
        pcol = next(j for j in range(ncols) if basis[i][j] != 0)
        for k in range(i):
            q = basis[k][pcol] // basis[i][pcol]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return [tuple(r) for r in basis]


def integer_kernel(m: IntMatrix):
    """Basis of {x in Z^cols : m x = 0}; the lattice returned is saturated."""
    d, u, v = smith_normal_form(m)
    nz = sum(1 for i in range(min(m.rows, m.cols)) if d.at(i, i) != 0)
    return [
        tuple(v.at(i, j) for i in range(m.cols)) for j in range(nz, m.cols)
    ]


def column_lattice_basis(m: IntMatrix):
    """Hermite basis of the lattice generated by the columns of m."""
    cols = [tuple(m.at(i, j) for i in range(m.rows)) for j in range(m.cols)]
    return hermite_row_basis(cols, m.rows)


def lattice_intersection(basis_a, basis_b, ncols):
    """Hermite basis of the intersection of two integer lattices."""
    if not basis_a or not basis_b:
        return []
    na, nb = len(basis_a), len(basis_b)
    system = IntMatrix.from_rows(
        [
            [basis_a[i][c] for i in range(na)] + [-basis_b[j][c] for j in range(nb)]
            for c in range(ncols)
        ],
        cols=na + nb,
    )
    combos = integer_kernel(system)
    vecs = []
    for s in combos:
        vecs.append(
            tuple(
                sum(s[i] * basis_a[i][c] for i in range(na)) for c in range(ncols)
            )
        )
    return hermite_row_basis(vecs, ncols)


def lattice_contains(basis, v, ncols):
    """True iff v lies in the integer row lattice spanned by basis."""
    before = hermite_row_basis(basis, ncols)
    after = hermite_row_basis(list(basis) + [tuple(v)], ncols)
    return before == after


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion_orders: tuple

    def __post_init__(self):
        for t in self.torsion_orders:
            if t < 2:
                raise ValueError("torsion orders must be >= 2")
        for x, y in zip(self.torsion_orders, self.torsion_orders[1:]):
            if y % x != 0:
                raise ValueError("torsion orders must form a divisibility chain")

    @property
    def ngens(self):
        return len(self.torsion_orders) + self.free_rank

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion_orders

    def order(self):
        """Group order, or INFINITE."""
        if self.free_rank:
            return INFINITE
        n = 1
        for t in self.torsion_orders:
            n *= t
        return n

    def zero(self):
        return GroupElement(
            tuple([0] * len(self.torsion_orders)), tuple([0] * self.free_rank)
        )

    def element(self, torsion_part, free_part):
        tp = tuple(
            int(x) % t for x, t in zip(torsion_part, self.torsion_orders)
        )
        if len(torsion_part) != len(self.torsion_orders) or len(free_part) != self.free_rank:
            raise ValueError("coordinate length mismatch")
        return GroupElement(tp, tuple(int(x) for x in free_part))

    def from_coords(self, coords):
        k = len(self.torsion_orders)
        return self.element(coords[:k], coords[k:])

    def add(self, x, y):
        return self.element(
            [a + b for a, b in zip(x.torsion_part, y.torsion_part)],
            [a + b for a, b in zip(x.free_part, y.free_part)],
        )

    def neg(self, x):
        return self.element(
            [-a for a in x.torsion_part], [-a for a in x.free_part]
        )

    def smul(self, k, x):
        return self.element(
            [k * a for a in x.torsion_part], [k * a for a in x.free_part]
        )

    def generators(self):
        out = []
        for i in range(self.ngens):
            coords = [0] * self.ngens
            coords[i] = 1
            out.append(self.from_coords(coords))
        return out


@dataclass(frozen=True)
class GroupElement:
    torsion_part: tuple
    free_part: tuple

    def is_zero(self):
        return all(x == 0 for x in self.torsion_part) and all(
            x == 0 for x in self.free_part
        )

    def coords(self):
        return tuple(self.torsion_part) + tuple(self.free_part)


class QuotientMap:
    """Surjection Z^n -> G recorded via a Smith normal form.

    Holds the unimodular row transform u with u*m*v = d, so proj(x) reads
    off coordinates of u*x at the torsion and free positions of d.
    """

    def __init__(self, group, u, torsion_positions, free_positions):
        self.group = group
        self._u = u
        self._uinv = _unimodular_inverse(u)
        self._torsion_positions = torsion_positions
        self._free_positions = free_positions

    @property
    def ambient_rank(self):
        return self._u.rows

    def __call__(self, x):
        y = self._u.mul_vec(tuple(x))
        return self.group.element(
            [y[i] for i in self._torsion_positions],
            [y[i] for i in self._free_positions],
        )

    def lift(self, g):
        """Some preimage in Z^n of a group element."""
        y = [0] * self.ambient_rank
        for i, p in enumerate(self._torsion_positions):
            y[p] = g.torsion_part[i]
        for i, p in enumerate(self._free_positions):
            y[p] = g.free_part[i]
        return self._uinv.mul_vec(tuple(y))


def _unimodular_inverse(u: IntMatrix):
    """Exact inverse of a unimodular integer matrix via integer elimination."""
    n = u.rows
    a = u.to_rows()
    inv = IntMatrix.identity(n).to_rows()
    for col in range(n):
        piv = None
        # gcd-style elimination keeps everything integral.
        while True:
            nz = [i for i in range(col, n) if a[i][col] != 0]
            nz.sort(key=lambda i: (abs(a[i][col]), i))
            piv = nz[0]
            if len(nz) == 1:
                break
            for i in nz[1:]:
                q = a[i][col] // a[piv][col]
                a[i] = [x - q * y for x, y in zip(a[i], a[piv])]
                inv[i] = [x - q * y for x, y in zip(inv[i], inv[piv])]
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        if a[col][col] < 0:
            a[col] = [-x for x in a[col]]
            inv[col] = [-x for x in inv[col]]
        if a[col][col] != 1:
            raise ValueError("matrix is not unimodular")
        for i in range(n):
            if i != col and a[i][col] != 0:
                q = a[i][col]
                a[i] = [x - q * y for x, y in zip(a[i], a[col])]
                inv[i] = [x - q * y for x, y in zip(inv[i], inv[col])]
    return IntMatrix.from_rows(inv, cols=n) if n else IntMatrix(0, 0, ())


def cokernel_presentation(m: IntMatrix):
    """Present Z^rows / (column lattice of m) as (AbelianGroup, QuotientMap)."""
    d, u, v = smith_normal_form(m)
    k = min(m.rows, m.cols)
    diag = [d.at(i, i) for i in range(k)]
    torsion_positions = [i for i, x in enumerate(diag) if x >= 2]
    free_positions = [i for i, x in enumerate(diag) if x == 0] + list(
        range(k, m.rows)
    )
    group = AbelianGroup(
        len(free_positions), tuple(diag[i] for i in torsion_positions)
    )
    return group, QuotientMap(group, u, torsion_positions, free_positions)


def _presentation_rows(g: AbelianGroup, extra_elements=()):
    """Rows presenting the subgroup <torsion relations, extra> of Z^ngens."""
    n = g.ngens
    rows = []
    for i, t in enumerate(g.torsion_orders):
        r = [0] * n
        r[i] = t
        rows.append(tuple(r))
    for e in extra_elements:
        rows.append(tuple(e.coords()))
    return rows, n


def quotient_presentation(g: AbelianGroup, sub):
    """Quotient g/<sub> as (AbelianGroup, map from elements of g)."""
    rows, n = _presentation_rows(g, sub)
    m = IntMatrix.from_rows([list(r) for r in rows], cols=n).transpose()
    q, proj = cokernel_presentation(m)

    def project(x):
        return proj(x.coords())

    return q, project


def subgroup_index(sub, g: AbelianGroup):
    """[g : <sub>] exactly, or INFINITE."""
    q, _ = quotient_presentation(g, sub)
    return q.order()


def element_order_in_quotient(x, sub, g: AbelianGroup):
    """Least m >= 1 with m*x in <sub>, or INFINITE."""
    q, project = quotient_presentation(g, sub)
    y = project(x)
    if any(v != 0 for v in y.free_part):
        return INFINITE
    order = 1
    for r, t in zip(y.torsion_part, q.torsion_orders):
        o = t // gcd(r % t, t) if r % t else 1
        order = order * o // gcd(order, o)
    return order


def subgroup_contains(sub, x, g: AbelianGroup):
    return element_order_in_quotient(x, sub, g) == 1


def subgroup_canonical_basis(gens, g: AbelianGroup):
    """Canonical (Hermite) rows for <gens> + torsion relations in Z^ngens."""
    rows, n = _presentation_rows(g, gens)
    return hermite_row_basis(rows, n)


def subgroup_leq(gens_a, gens_b, g: AbelianGroup):
    """<gens_a> contained in <gens_b>."""
    return all(subgroup_contains(gens_b, x, g) for x in gens_a)


def subgroup_equal(gens_a, gens_b, g: AbelianGroup):
    return subgroup_canonical_basis(gens_a, g) == subgroup_canonical_basis(
        gens_b, g
    )


def subgroup_intersection(gens_a, gens_b, g: AbelianGroup):
    """Generators of <gens_a> ∩ <gens_b> as a subgroup of g."""
    rows_a, n = _presentation_rows(g, gens_a)
    rows_b, _ = _presentation_rows(g, gens_b)
    inter = lattice_intersection(
        hermite_row_basis(rows_a, n), hermite_row_basis(rows_b, n), n
    )
    out = []
    for r in inter:
        e = g.from_coords(r)
        if not e.is_zero():
            out.append(e)
    return out
