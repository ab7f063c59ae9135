"""Exact linear algebra over the integers.

Dense matrices are small, immutable and arbitrary precision.  The Smith
normal form runs on a sparse elimination core so that the large,
mostly-empty matrices coming from chain-level constructions stay
tractable.  All results are deterministic: the pivot rule is
smallest-absolute-value, ties broken by lowest (row, column) index.
"""

from __future__ import annotations

import heapq
from math import gcd


class Mat:
    """Immutable integer matrix, stored dense as a tuple of row tuples."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, m, n, rows):
        self.m = m
        self.n = n
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        if len(self.rows) != m or any(len(r) != n for r in self.rows):
            raise ValueError(f"shape mismatch: want {m}x{n}")

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [tuple(r) for r in rows]
        m = len(rows)
        if m == 0:
            if ncols is None:
                raise ValueError("ncols required for a 0-row matrix")
            return cls(0, ncols, [])
        n = len(rows[0]) if ncols is None else ncols
        return cls(m, n, rows)

    @classmethod
    def from_cols(cls, cols, nrows):
        cols = [tuple(c) for c in cols]
        return cls(nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, m, n):
        return cls(m, n, [[0] * n for _ in range(m)])

    @classmethod
    def diagonal(cls, entries, m=None, n=None):
        entries = list(entries)
        m = len(entries) if m is None else m
        n = len(entries) if n is None else n
        rows = [[0] * n for _ in range(m)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return cls(m, n, rows)

    def col(self, j):
        return tuple(row[j] for row in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.n)]

    def transpose(self):
        return Mat(self.n, self.m, [self.col(j) for j in range(self.n)])

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.m == other.m
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.m, self.n, self.rows))

    def __neg__(self):
        return Mat(self.m, self.n, [[-x for x in row] for row in self.rows])

    def __add__(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("shape mismatch in addition")
        return Mat(
            self.m,
            self.n,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Mat(self.m, self.n, [[k * x for x in row] for row in self.rows])

    def __matmul__(self, other):
        if self.n != other.m:
            raise ValueError(f"shape mismatch: {self.m}x{self.n} @ {other.m}x{other.n}")
        out = []
        for row in self.rows:
            acc = [0] * other.n
            for k, v in enumerate(row):
                if v:
                    brow = other.rows[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += v * b
            out.append(acc)
        return Mat(self.m, other.n, out)

    def apply(self, vec):
        """Matrix-vector product, returning a list."""
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.rows:
            s = 0
            for v, x in zip(row, vec):
                if v and x:
                    s += v * x
            out.append(s)
        return out

    def __repr__(self):
        return f"Mat({self.m}x{self.n}, {list(map(list, self.rows))})"


def hstack(*mats):
    mats = [m for m in mats]
    if not mats:
        raise ValueError("nothing to stack")
    m = mats[0].m
    if any(a.m != m for a in mats):
        raise ValueError("row count mismatch")
    rows = [sum((list(a.rows[i]) for a in mats), []) for i in range(m)]
    return Mat(m, sum(a.n for a in mats), rows)


def vstack(*mats):
    mats = [m for m in mats]
    n = mats[0].n
    if any(a.n != n for a in mats):
        raise ValueError("column count mismatch")
    rows = []
    for a in mats:
        rows.extend(a.rows)
    return Mat(sum(a.m for a in mats), n, rows)


def _sparse_rows(M):
    """Accept a Mat or an iterable of {col: val} dicts."""
    if isinstance(M, Mat):
        return (
            M.m,
            M.n,
            {
                i: {j: v for j, v in enumerate(row) if v}
                for i, row in enumerate(M.rows)
                if any(row)
            },
        )
    m, n, rows = M
    return m, n, {i: dict(r) for i, r in rows.items() if r}


class SmithForm:
    """Result of a Smith reduction U @ M @ V = S.

    Transforms are kept sparse; ``U``/``V``/``S`` densify on demand.
    """

    def __init__(self, m, n, diag, pivot_rows, pivot_cols, u_rows, v_cols):
        self.m = m
        self.n = n
        self.diag = diag  # positive invariant pivots, divisibility chain
        self.rank = len(diag)
        self._prows = pivot_rows
        self._pcols = pivot_cols
        self._u = u_rows  # dict r -> {c: v}, or None
        self._v = v_cols  # dict c -> {r: v}, or None
        self._row_order = None
        self._col_order = None

    def _orders(self):
        if self._row_order is None:
            rest = sorted(set(range(self.m)) - set(self._prows))
            self._row_order = list(self._prows) + rest
            rest = sorted(set(range(self.n)) - set(self._pcols))
            self._col_order = list(self._pcols) + rest
        return self._row_order, self._col_order

    @property
    def S(self):
        return Mat.diagonal(self.diag, self.m, self.n)

    @property
    def U(self):
        if self._u is None:
            raise ValueError("U was not tracked")
        ro, _ = self._orders()
        rows = []
        for r in ro:
            row = [0] * self.m
            for c, v in self._u.get(r, {}).items():
                row[c] = v
            rows.append(row)
        return Mat(self.m, self.m, rows)

    @property
    def V(self):
        if self._v is None:
            raise ValueError("V was not tracked")
        _, co = self._orders()
        cols = []
        for c in co:
            col = [0] * self.n
            for r, v in self._v.get(c, {}).items():
                col[r] = v
            cols.append(col)
        return Mat.from_cols(cols, self.n)

    def apply_u(self, vec):
        """U @ vec in the final (pivot-first) row order."""
        if self._u is None:
            raise ValueError("U was not tracked")
        ro, _ = self._orders()
        out = []
        for r in ro:
            s = 0
            for c, v in self._u.get(r, {}).items():
                x = vec[c]
                if x:
                    s += v * x
            out.append(s)
        return out

    def nullspace_cols(self):
        """Basis of the integer kernel, one dense column per free column."""
        if self._v is None:
            raise ValueError("V was not tracked")
        _, co = self._orders()
        out = []
        for c in co[self.rank :]:
            col = [0] * self.n
            for r, v in self._v.get(c, {}).items():
                col[r] = v
            out.append(tuple(col))
        return out

    def solve(self, vec):
        """A solution x of M x = vec, or None when none exists."""
        y = self.apply_u(vec)
        coeffs = []
        for k, d in enumerate(self.diag):
            if y[k] % d:
                return None
            coeffs.append(y[k] // d)
        if any(y[k] for k in range(self.rank, self.m)):
            return None
        x = [0] * self.n
        for k, z in enumerate(coeffs):
            if z:
                for r, v in self._v.get(self._pcols[k], {}).items():
                    x[r] += z * v
        return x


def smith(M, want_u=True, want_v=True):
    """Smith normal form of M (a Mat, or (m, n, {row: {col: val}}))."""
    m, n, rows = _sparse_rows(M)
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    u = {r: {r: 1} for r in range(m)} if want_u else None
    v = {c: {c: 1} for c in range(n)} if want_v else None

    heap = []
    for r in sorted(rows):
        for c, val in sorted(rows[r].items()):
            heapq.heappush(heap, (abs(val), r, c))

    active_r = set(rows)
    active_c = set(cols)

    def set_entry(r, c, val):
        row = rows.setdefault(r, {})
        if val:
            if c not in row:
                cols.setdefault(c, set()).add(r)
            row[c] = val
            heapq.heappush(heap, (abs(val), r, c))
        else:
            if c in row:
                del row[c]
                cols[c].discard(r)

    def row_add(dst, src, q):
        # row dst += q * row src (also applied to U)
        for c, val in list(rows.get(src, {}).items()):
            set_entry(dst, c, rows.get(dst, {}).get(c, 0) + q * val)
        if u is not None:
            urow = u.setdefault(dst, {})
            for c, val in u.get(src, {}).items():
                nv = urow.get(c, 0) + q * val
                if nv:
                    urow[c] = nv
                elif c in urow:
                    del urow[c]

    def col_add(dst, src, q):
        # col dst += q * col src (also applied to V)
        for r in list(cols.get(src, set())):
            set_entry(r, dst, rows.get(r, {}).get(dst, 0) + q * rows[r][src])
        if v is not None:
            vcol = v.setdefault(dst, {})
            for r, val in v.get(src, {}).items():
                nv = vcol.get(r, 0) + q * val
                if nv:
                    vcol[r] = nv
                elif r in vcol:
                    del vcol[r]

    def row_negate(r):
        for c in list(rows.get(r, {})):
            rows[r][c] = -rows[r][c]
        if u is not None and r in u:
            u[r] = {c: -val for c, val in u[r].items()}

    pivots = []  # (r, c, d)
    while heap:
        absval, r, c = heapq.heappop(heap)
        if r not in active_r or c not in active_c:
            continue
        cur = rows.get(r, {}).get(c)
        if cur is None or abs(cur) != absval:
            continue
        if cur < 0:
            row_negate(r)
            cur = -cur
        clean = True
        for r2 in sorted(cols.get(c, set()) - {r}):
            q = rows[r2][c] // cur
            if q:
                row_add(r2, r, -q)
            if rows.get(r2, {}).get(c):
                clean = False
        if clean:
            for c2 in sorted(set(rows.get(r, {})) - {c}):
                q = rows[r][c2] // cur
                if q:
                    col_add(c2, c, -q)
                if rows.get(r, {}).get(c2):
                    clean = False
        if not clean:
            heapq.heappush(heap, (abs(rows[r][c]), r, c))
            continue
        pivots.append([r, c, cur])
        active_r.discard(r)
        active_c.discard(c)
        del rows[r][c]
        cols[c].discard(r)

    # Enforce the divisibility chain d_i | d_j (i < j) with explicit
    # 2x2 unimodular transforms on the recorded pivots.
    def pair_fix(i, j):
        a, b = pivots[i][2], pivots[j][2]
        g = gcd(a, b)
        lcm = a // g * b
        x, y = _bezout(a, b)
        ri, rj = pivots[i][0], pivots[j][0]
        ci, cj = pivots[i][1], pivots[j][1]
        if u is not None:
            ui = dict(u.get(ri, {}))
            uj = dict(u.get(rj, {}))
            u[ri] = _combine(ui, x, uj, y)
            u[rj] = _combine(ui, -(b // g), uj, a // g)
        if v is not None:
            vi = dict(v.get(ci, {}))
            vj = dict(v.get(cj, {}))
            v[ci] = _combine(vi, 1, vj, 1)
            v[cj] = _combine(vi, -(y * b // g), vj, x * a // g)
        pivots[i][2] = g
        pivots[j][2] = lcm

    for i in range(len(pivots)):
        for j in range(i + 1, len(pivots)):
            if pivots[j][2] % pivots[i][2]:
                pair_fix(i, j)

    diag = [p[2] for p in pivots]
    return SmithForm(m, n, diag, [p[0] for p in pivots], [p[1] for p in pivots], u, v)


def _bezout(a, b):
    """(x, y) with x*a + y*b = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_x, old_y


def _combine(da, ka, db, kb):
    out = {}
    for k, val in da.items():
        nv = ka * val
        if nv:
            out[k] = nv
    for k, val in db.items():
        nv = out.get(k, 0) + kb * val
        if nv:
            out[k] = nv
        elif k in out:
            del out[k]
    return out


def smith_normal_form(M):
    """(U, S, V) with U @ M @ V = S, all dense."""
    sf = smith(M)
    return sf.U, sf.S, sf.V


def kernel_basis(M):
    """Columns forming a basis of {x : M x = 0}, as a Mat (n x nullity)."""
    if isinstance(M, Mat):
        n = M.n
    else:
        n = M[1]
    sf = smith(M, want_u=False)
    return Mat.from_cols(sf.nullspace_cols(), n)


class Echelon:
    """Column echelon form of a lattice's generating set.

    Keeps a basis of the column span as sparse columns, each with a
    distinct pivot row, so membership tests and coordinate solves are a
    cheap forward substitution.
    """

    def __init__(self, M):
        m, n, rows = _sparse_rows(M)
        self.nrows = m
        cols = {}
        for r, row in rows.items():
            for c, val in row.items():
                cols.setdefault(c, {})[r] = val
        active = set(cols)
        self.pivot_rows = []
        self.cols = []
        for r in range(m):
            cand = sorted(c for c in active if rows.get(r, {}).get(c))
            while len(cand) > 1:
                cand.sort(key=lambda c: (abs(rows[r][c]), c))
                c0 = cand[0]
                base = rows[r][c0]
                nxt = [c0]
                for c in cand[1:]:
                    q = rows[r][c] // base
                    if q:
                        for rr, val in list(cols[c0].items()):
                            nv = cols[c].get(rr, 0) - q * val
                            if nv:
                                cols[c][rr] = nv
                                rows.setdefault(rr, {})[c] = nv
                            else:
                                cols[c].pop(rr, None)
                                rows.get(rr, {}).pop(c, None)
                    if rows.get(r, {}).get(c):
                        nxt.append(c)
                    elif not cols[c]:
                        active.discard(c)
                cand = nxt
            if cand:
                c0 = cand[0]
                if rows[r][c0] < 0:
                    for rr in list(cols[c0]):
                        cols[c0][rr] = -cols[c0][rr]
                        rows[rr][c0] = cols[c0][rr]
                self.pivot_rows.append(r)
                self.cols.append(dict(cols[c0]))
                active.discard(c0)
        self.rank = len(self.cols)

    def basis_matrix(self):
        return Mat.from_cols(
            [self._dense(c) for c in self.cols], self.nrows
        )

    def _dense(self, col):
        out = [0] * self.nrows
        for r, val in col.items():
            out[r] = val
        return tuple(out)

    def solve(self, vec):
        """Coordinates of vec in the basis, or None if not in the lattice."""
        residual = None
        coeffs = [0] * self.rank
        for j, pr in enumerate(self.pivot_rows):
            val = residual[pr] if residual is not None else vec[pr]
            piv = self.cols[j][pr]
            if val % piv:
                return None
            q = val // piv
            coeffs[j] = q
            if q:
                if residual is None:
                    residual = list(vec)
                for r, v in self.cols[j].items():
                    residual[r] -= q * v
        check = residual if residual is not None else vec
        if any(check):
            return None
        return coeffs

    def contains(self, vec):
        return self.solve(vec) is not None


def lattice_basis(M):
    """A basis (column echelon) of the lattice spanned by M's columns."""
    return Echelon(M).basis_matrix()
