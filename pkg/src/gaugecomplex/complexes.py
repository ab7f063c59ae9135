"""Bounded chain complexes of finitely generated abelian groups.

Degrees outside the stored range are implicitly zero.  Homology is
computed as a subquotient of the ambient free cover of each degree, so
generators of homology classes can be lifted back to chain coordinates.
"""

from .abelian import FgAbGroup, GroupHom, Subquotient, hom_kernel, hom_cokernel, unit
from .exactla import Mat, hstack, kernel_basis

TRIVIAL = FgAbGroup(())


class ChainComplex:

    def __init__(self, groups, diffs, check=True, meta=None):
        self.groups = {n: g for n, g in groups.items()}
        self.diffs = dict(diffs)
        self.meta = meta or {}
        if check:
            self.validate()

    @property
    def degrees(self):
        return sorted(self.groups)

    @property
    def lo(self):
        return min(self.groups) if self.groups else 0

    @property
    def hi(self):
        return max(self.groups) if self.groups else 0

    def group(self, n):
        return self.groups.get(n, TRIVIAL)

    def d(self, n):
        if n in self.diffs:
            return self.diffs[n]
        return GroupHom.zero(self.group(n), self.group(n - 1))

    def validate(self):
        for n, f in self.diffs.items():
            if f.source != self.group(n) or f.target != self.group(n - 1):
                raise ValueError(f"differential at degree {n} has wrong shape")
            if not f.well_defined():
                raise ValueError(f"differential at degree {n} not well defined")
        for n in self.degrees:
            if not (self.d(n - 1) @ self.d(n)).is_zero():
                raise ValueError(f"d o d nonzero at degree {n}")

    def homology_data(self, n):
        """Subquotient ker(d_n)/im(d_{n+1}) inside Z^(gens of C_n)."""
        key = ("H", n)
        if key not in self.meta:
            cn = self.group(n)
            below = self.group(n - 1)
            dn = self.d(n).matrix
            rt = Mat.from_cols(below.relation_cols(), below.ngens)
            stacked = hstack(dn, rt) if rt.n else dn
            full = kernel_basis(stacked)
            sub = [tuple(full.col(j)[: cn.ngens]) for j in range(full.n)]
            sub += cn.relation_cols()
            rel = [self.d(n + 1).matrix.col(j) for j in range(self.group(n + 1).ngens)]
            rel += cn.relation_cols()
            self.meta[key] = Subquotient(cn.ngens, sub, rel)
        return self.meta[key]

    def homology(self):
        return {n: self.homology_data(n).group for n in self.degrees}

    def shift(self, k):
        """Degree shift: result_n = self_(n-k), differentials negated per shift."""
        sign = -1 if k % 2 else 1
        groups = {n + k: g for n, g in self.groups.items()}
        diffs = {n + k: f.scale(sign) for n, f in self.diffs.items()}
        return ChainComplex(groups, diffs, check=False)


def report_homology(hom):
    return "\n".join(f"H_{n} = {g.describe()}" for n, g in sorted(hom.items()))


class ChainMap:

    def __init__(self, source, target, comps, check=True):
        self.source = source
        self.target = target
        self.comps = dict(comps)
        if check and not self.verify():
            raise ValueError("not a chain map")

    def component(self, n):
        if n in self.comps:
            return self.comps[n]
        return GroupHom.zero(self.source.group(n), self.target.group(n))

    def verify(self):
        degs = set(self.source.degrees) | set(self.comps)
        for n in degs:
            f = self.component(n)
            if f.source != self.source.group(n) or f.target != self.target.group(n):
                return False
            lhs = self.target.d(n) @ f
            rhs = self.component(n - 1) @ self.source.d(n)
            if not lhs.same(rhs):
                return False
        return True

    def __matmul__(self, other):
        degs = set(self.comps) | set(other.comps)
        comps = {n: self.component(n) @ other.component(n) for n in degs}
        return ChainMap(other.source, self.target, comps, check=False)

    def induced_on_homology(self, n):
        src = self.source.homology_data(n)
        tgt = self.target.homology_data(n)
        cols = []
        for j in range(src.group.ngens):
            v = src.lift(unit(src.group.ngens, j))
            cols.append(tgt.reduce(self.component(n).matrix.apply(v)))
        return GroupHom(src.group, tgt.group,
                        Mat.from_cols(cols, tgt.group.ngens), check=False)


def identity_map(c):
    comps = {n: GroupHom.identity(c.group(n)) for n in c.degrees}
    return ChainMap(c, c, comps, check=False)


def verify_chain_map(f):
    return f.verify()


def quasi_iso_check(f):
    if not f.verify():
        raise ValueError("chain map invariant violated")
    degs = set(f.source.degrees) | set(f.target.degrees)
    for n in sorted(degs):
        h = f.induced_on_homology(n)
        k, _ = hom_kernel(h)
        c, _ = hom_cokernel(h)
        if not (k.is_trivial and c.is_trivial):
            return False
    return True


class ChainHomotopy:
    """Components h_n : C_n -> D_{n+1} witnessing f - g = d h + h d."""

    def __init__(self, f, g, comps):
        self.f = f
        self.g = g
        self.comps = dict(comps)

    def component(self, n):
        if n in self.comps:
            return self.comps[n]
        return GroupHom.zero(self.f.source.group(n), self.f.target.group(n + 1))

    def verify(self):
        src, tgt = self.f.source, self.f.target
        degs = set(src.degrees) | set(self.comps)
        for n in degs:
            lhs = self.f.component(n) - self.g.component(n)
            rhs = tgt.d(n + 1) @ self.component(n)
            rhs = rhs + (self.component(n - 1) @ src.d(n))
            if not lhs.same(rhs):
                return False
        return True


def verify_homotopy(h):
    return h.verify()


def mapping_cone(f):
    """cone(f)_n = C_(n-1) (+) D_n with d(c, x) = (-dc, f c + dx)."""
    src, tgt = f.source, f.target
    degs = range(min(src.lo + 1, tgt.lo), max(src.hi + 1, tgt.hi) + 1)
    groups = {}
    for n in degs:
        groups[n] = FgAbGroup.direct_sum(src.group(n - 1), tgt.group(n))
    diffs = {}
    for n in degs:
        a, b = src.group(n - 1), tgt.group(n)
        ta, tb = src.group(n - 2), tgt.group(n - 1)
        rows = []
        dc = src.d(n - 1).matrix
        fm = f.component(n - 1).matrix
        dd = tgt.d(n).matrix
        for i in range(ta.ngens):
            rows.append([-v for v in dc.rows[i]] + [0] * b.ngens)
        for i in range(tb.ngens):
            rows.append(list(fm.rows[i]) + list(dd.rows[i]))
        diffs[n] = GroupHom(groups[n], groups.get(n - 1, TRIVIAL),
                            Mat(ta.ngens + tb.ngens, a.ngens + b.ngens, rows),
                            check=False)
    return ChainComplex(groups, diffs, check=False)


def cone_acyclic(f):
    cone = mapping_cone(f)
    return all(g.is_trivial for g in cone.homology().values())


class DoubleComplex:
    """Commuting squares; the totalization sign enters only in total_complex.

    vert maps (p, q) -> (p-1, q); horiz maps (p, q) -> (p, q-1).
    """

    def __init__(self, groups, vert, horiz, check=True):
        self.groups = dict(groups)
        self.vert = dict(vert)
        self.horiz = dict(horiz)
        if check:
            self.validate()

    def group(self, p, q):
        return self.groups.get((p, q), TRIVIAL)

    def v(self, p, q):
        if (p, q) in self.vert:
            return self.vert[(p, q)]
        return GroupHom.zero(self.group(p, q), self.group(p - 1, q))

    def h(self, p, q):
        if (p, q) in self.horiz:
            return self.horiz[(p, q)]
        return GroupHom.zero(self.group(p, q), self.group(p, q - 1))

    def validate(self):
        for (p, q) in self.groups:
            if not (self.v(p - 1, q) @ self.v(p, q)).is_zero():
                raise ValueError(f"vertical square fails at {(p, q)}")
            if not (self.h(p, q - 1) @ self.h(p, q)).is_zero():
                raise ValueError(f"horizontal square fails at {(p, q)}")
            a = self.v(p, q - 1) @ self.h(p, q)
            b = self.h(p - 1, q) @ self.v(p, q)
            if not a.same(b):
                raise ValueError(f"square does not commute at {(p, q)}")

    def transpose(self):
        groups = {(q, p): g for (p, q), g in self.groups.items()}
        vert = {(q, p): f for (p, q), f in self.horiz.items()}
        horiz = {(q, p): f for (p, q), f in self.vert.items()}
        return DoubleComplex(groups, vert, horiz, check=False)


class SumLayout:
    """Offsets for a direct sum of labeled blocks."""

    def __init__(self, blocks):
        # blocks: list of (key, FgAbGroup)
        self.keys = [k for k, _ in blocks]
        self.parts = {k: g for k, g in blocks}
        self.offsets = {}
        pos = 0
        for k, g in blocks:
            self.offsets[k] = pos
            pos += g.ngens
        self.total = pos

    def group(self):
        labels = []
        for k in self.keys:
            g = self.parts[k]
            if g.labels is not None:
                labels.extend((k, lab) for lab in g.labels)
            else:
                labels.extend((k, i) for i in range(g.ngens))
        orders = sum((self.parts[k].orders for k in self.keys), ())
        return FgAbGroup(orders, labels)

    def place(self, key, vec, out):
        off = self.offsets[key]
        for i, v in enumerate(vec):
            out[off + i] += v

    def extract(self, key, vec):
        off = self.offsets[key]
        return vec[off:off + self.parts[key].ngens]


def total_complex(dbl, sum_mode="product", truncation=None):
    """Truncated total complex with differential d_v + (-1)^p d_h.

    sum_mode is recorded only; finite rectangles make product and
    coproduct coincide.  truncation: None, "nonneg" (degree 0 becomes
    the kernel into degree -1) or "nonpos" (degree 0 becomes the
    cokernel from degree 1).
    """
    layouts = {}
    for (p, q), g in sorted(dbl.groups.items()):
        n = p + q
        layouts.setdefault(n, []).append(((p, q), g))
    layouts = {n: SumLayout(blocks) for n, blocks in layouts.items()}
    tot_groups = {n: lay.group() for n, lay in layouts.items()}

    def tot_diff(n):
        src = layouts[n]
        tgt = layouts.get(n - 1)
        tgt_group = tot_groups.get(n - 1, TRIVIAL)
        rows = {}
        if tgt is not None:
            for (p, q) in src.keys:
                for f, tkey, sign in ((dbl.v(p, q), (p - 1, q), 1),
                                      (dbl.h(p, q), (p, q - 1), -1 if p % 2 else 1)):
                    if tkey not in tgt.parts:
                        continue
                    soff = src.offsets[(p, q)]
                    toff = tgt.offsets[tkey]
                    for i, row in enumerate(f.matrix.rows):
                        for j, val in enumerate(row):
                            if val:
                                rows.setdefault(toff + i, {})[soff + j] = \
                                    rows.get(toff + i, {}).get(soff + j, 0) + sign * val
        m = Mat.zero(tgt_group.ngens, src.total)
        dense = [[0] * src.total for _ in range(tgt_group.ngens)]
        for i, row in rows.items():
            for j, v in row.items():
                dense[i][j] = v
        m = Mat(tgt_group.ngens, src.total, dense)
        return GroupHom(tot_groups[n], tgt_group, m, check=False)

    diffs = {n: tot_diff(n) for n in layouts}
    meta = {"layouts": layouts, "sum_mode": sum_mode}

    if truncation is None:
        return ChainComplex(tot_groups, diffs, check=False, meta=meta)

    if truncation == "nonneg":
        groups = {n: g for n, g in tot_groups.items() if n >= 1}
        newdiffs = {n: f for n, f in diffs.items() if n >= 2}
        g0 = tot_groups.get(0, TRIVIAL)
        below = tot_groups.get(-1, TRIVIAL)
        d0 = diffs.get(0, GroupHom.zero(g0, below))
        rt = Mat.from_cols(below.relation_cols(), below.ngens)
        stacked = hstack(d0.matrix, rt) if rt.n else d0.matrix
        full = kernel_basis(stacked)
        sub = [tuple(full.col(j)[: g0.ngens]) for j in range(full.n)]
        sub += g0.relation_cols()
        ker = Subquotient(g0.ngens, sub, g0.relation_cols())
        groups[0] = ker.group
        if 1 in tot_groups:
            cols = [ker.reduce(diffs[1].matrix.col(j))
                    for j in range(tot_groups[1].ngens)]
            newdiffs[1] = GroupHom(tot_groups[1], ker.group,
                                   Mat.from_cols(cols, ker.group.ngens), check=False)
        meta["degree0"] = ker
        return ChainComplex(groups, newdiffs, check=False, meta=meta)

    if truncation == "nonpos":
        groups = {n: g for n, g in tot_groups.items() if n <= -1}
        newdiffs = {n: f for n, f in diffs.items() if n <= -1}
        g0 = tot_groups.get(0, TRIVIAL)
        rel = []
        if 1 in diffs:
            rel = [diffs[1].matrix.col(j) for j in range(tot_groups[1].ngens)]
        rel += g0.relation_cols()
        quo = Subquotient(g0.ngens, [unit(g0.ngens, i) for i in range(g0.ngens)], rel)
        groups[0] = quo.group
        below = tot_groups.get(-1, TRIVIAL)
        d0 = diffs.get(0, GroupHom.zero(g0, below))
        cols = [below.reduce(d0.matrix.apply(quo.lift(unit(quo.group.ngens, j))))
                for j in range(quo.group.ngens)]
        newdiffs[0] = GroupHom(quo.group, below,
                               Mat.from_cols(cols, below.ngens), check=False)
        meta["degree0"] = quo
        return ChainComplex(groups, newdiffs, check=False, meta=meta)

    raise ValueError(f"unknown truncation {truncation!r}")
