"""Dold-Kan style Moore complexes for (co)simplicial abelian groups.

The normalized complex quotients out degeneracies and takes the
alternating face sum; the co-normalized complex intersects the
co-degeneracy kernels and takes the alternating co-face sum.  Levels are
supported up to a finite cutoff, with everything above assumed
degenerate.
"""

from .abelian import FgAbGroup, GroupHom, Subquotient, unit
from .complexes import ChainComplex
from .exactla import Mat, hstack, vstack, kernel_basis


class SimplicialObject:
    """Levels 0..n_max of abelian groups with face/degeneracy maps.

    faces[(n, i)]: level n -> level n-1, for 1 <= n <= n_max, 0 <= i <= n.
    degens[(n, i)]: level n -> level n+1, for 0 <= n < n_max, 0 <= i <= n.
    """

    def __init__(self, levels, faces, degens):
        self.levels = list(levels)
        self.n_max = len(self.levels) - 1
        self.faces = dict(faces)
        self.degens = dict(degens)

    def face(self, n, i):
        return self.faces[(n, i)]

    def degen(self, n, i):
        return self.degens[(n, i)]

    def verify_identities(self):
        for n in range(2, self.n_max + 1):
            for j in range(n + 1):
                for i in range(j):
                    a = self.face(n - 1, i) @ self.face(n, j)
                    b = self.face(n - 1, j - 1) @ self.face(n, i)
                    if not a.same(b):
                        return False
        for n in range(self.n_max - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    a = self.degen(n + 1, j + 1) @ self.degen(n, i)
                    b = self.degen(n + 1, i) @ self.degen(n, j)
                    if not a.same(b):
                        return False
        for n in range(self.n_max):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.face(n + 1, i) @ self.degen(n, j)
                    if i == j or i == j + 1:
                        rhs = GroupHom.identity(self.levels[n])
                    elif i < j:
                        rhs = self.degen(n - 1, j - 1) @ self.face(n, i)
                    else:
                        rhs = self.degen(n - 1, j) @ self.face(n, i - 1)
                    if not lhs.same(rhs):
                        return False
        return True


class CosimplicialObject:
    """Levels 0..n_max with co-face/co-degeneracy maps.

    cofaces[(n, i)]: level n -> level n+1, 0 <= n < n_max, 0 <= i <= n+1.
    codegens[(n, i)]: level n -> level n-1, 1 <= n <= n_max, 0 <= i <= n-1.
    """

    def __init__(self, levels, cofaces, codegens):
        self.levels = list(levels)
        self.n_max = len(self.levels) - 1
        self.cofaces = dict(cofaces)
        self.codegens = dict(codegens)

    def coface(self, n, i):
        return self.cofaces[(n, i)]

    def codegen(self, n, i):
        return self.codegens[(n, i)]

    def verify_identities(self):
        for n in range(self.n_max - 1):
            for j in range(n + 2):
                for i in range(j):
                    a = self.coface(n + 1, j + 1) @ self.coface(n, i)
                    b = self.coface(n + 1, i) @ self.coface(n, j)
                    if not a.same(b):
                        return False
        for n in range(2, self.n_max + 1):
            for j in range(n - 1):
                for i in range(j + 1):
                    a = self.codegen(n - 1, i) @ self.codegen(n, j + 1)
                    b = self.codegen(n - 1, j) @ self.codegen(n, i)
                    if not a.same(b):
                        return False
        for n in range(self.n_max):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.codegen(n + 1, j) @ self.coface(n, i)
                    if i == j or i == j + 1:
                        rhs = GroupHom.identity(self.levels[n])
                    elif i < j:
                        rhs = self.coface(n - 1, i) @ self.codegen(n, j - 1)
                    else:
                        rhs = self.coface(n - 1, i - 1) @ self.codegen(n, j)
                    if not lhs.same(rhs):
                        return False
        return True


def normalized_moore(s, up_to=None):
    """Quotient by degeneracy images, differential = alternating face sum."""
    if not s.verify_identities():
        raise ValueError("simplicial identities violated")
    top = s.n_max if up_to is None else up_to
    if top > s.n_max:
        raise ValueError("cutoff too small for requested degrees")
    quots = {}
    for n in range(top + 1):
        amb = s.levels[n]
        rel = []
        if n >= 1:
            for i in range(n):
                m = s.degen(n - 1, i).matrix
                rel += [m.col(j) for j in range(m.n)]
        rel += amb.relation_cols()
        quots[n] = Subquotient(amb.ngens,
                               [unit(amb.ngens, i) for i in range(amb.ngens)], rel)
    groups = {n: q.group for n, q in quots.items()}
    diffs = {}
    for n in range(1, top + 1):
        delta = s.face(n, 0).matrix
        for i in range(1, n + 1):
            m = s.face(n, i).matrix
            delta = delta + m if i % 2 == 0 else delta - m
        cols = [quots[n - 1].reduce(delta.apply(quots[n].lift(
            unit(groups[n].ngens, j)))) for j in range(groups[n].ngens)]
        diffs[n] = GroupHom(groups[n], groups[n - 1],
                            Mat.from_cols(cols, groups[n - 1].ngens), check=False)
    return ChainComplex(groups, diffs, check=True, meta={"quots": quots})


def _codegen_kernel(c, n):
    """Subquotient for the intersection of co-degeneracy kernels at level n."""
    amb = c.levels[n]
    if n == 0:
        sub = [unit(amb.ngens, i) for i in range(amb.ngens)]
        return Subquotient(amb.ngens, sub, amb.relation_cols())
    mats = [c.codegen(n, i).matrix for i in range(n)]
    stacked = vstack(*mats)
    tgt = c.levels[n - 1]
    rel_blocks = []
    for k in range(n):
        cols = tgt.relation_cols()
        for col in cols:
            v = [0] * (n * tgt.ngens)
            for r, x in enumerate(col):
                v[k * tgt.ngens + r] = x
            rel_blocks.append(tuple(v))
    rt = Mat.from_cols(rel_blocks, n * tgt.ngens)
    full = kernel_basis(hstack(stacked, rt) if rt.n else stacked)
    sub = [tuple(full.col(j)[: amb.ngens]) for j in range(full.n)]
    sub += amb.relation_cols()
    return Subquotient(amb.ngens, sub, amb.relation_cols())


def conormalized_moore(c, up_to=None):
    """Co-degeneracy kernels with the alternating co-face sum, degrees <= 0."""
    if not c.verify_identities():
        raise ValueError("cosimplicial identities violated")
    top = c.n_max if up_to is None else up_to
    if top > c.n_max:
        raise ValueError("cutoff too small for requested degrees")
    kers = {n: _codegen_kernel(c, n) for n in range(top + 1)}
    groups = {-n: k.group for n, k in kers.items()}
    diffs = {}
    for n in range(top):
        delta = c.coface(n, 0).matrix
        for i in range(1, n + 2):
            m = c.coface(n, i).matrix
            delta = delta + m if i % 2 == 0 else delta - m
        src = groups[-n]
        cols = [kers[n + 1].reduce(delta.apply(kers[n].lift(
            unit(src.ngens, j)))) for j in range(src.ngens)]
        diffs[-n] = GroupHom(src, groups[-n - 1],
                             Mat.from_cols(cols, groups[-n - 1].ngens), check=False)
    return ChainComplex(groups, diffs, check=True, meta={"kers": kers})


def action_groupoid_nerve(g, x, tau, n_max=3):
    """Nerve of the action groupoid of g acting on x through tau.

    Level n is g^n x X.  The zeroth face drops the first group entry,
    middle faces multiply neighbours, the last face moves the base point
    by tau of the last entry.
    """
    if tau.source != g or tau.target != x:
        raise ValueError("tau must map the acting group to the base group")
    levels = []
    for n in range(n_max + 1):
        parts = [g] * n + [x]
        levels.append(FgAbGroup.direct_sum(*parts))
    faces = {}
    degens = {}
    ng, nx = g.ngens, x.ngens

    def block_cols(n):
        # offsets for g-slots 0..n-1 and the x slot
        return [k * ng for k in range(n)] + [n * ng]

    for n in range(1, n_max + 1):
        for i in range(n + 1):
            # target has n-1 group slots
            rows = [[0] * levels[n].ngens for _ in range(levels[n - 1].ngens)]

            def put(dst_off, src_off, mat_rows):
                for r, row in enumerate(mat_rows):
                    for cix, v in enumerate(row):
                        if v:
                            rows[dst_off + r][src_off + cix] += v

            eye_g = Mat.identity(ng).rows
            eye_x = Mat.identity(nx).rows
            if i == 0:
                # drop g_1
                for k in range(2, n + 1):
                    put((k - 2) * ng, (k - 1) * ng, eye_g)
                put((n - 1) * ng, n * ng, eye_x)
            elif i < n:
                # merge g_i and g_(i+1)
                for k in range(1, n + 1):
                    dst = k - 1 if k <= i else k - 2
                    if k == i or k == i + 1:
                        dst = i - 1
                    put(dst * ng, (k - 1) * ng, eye_g)
                put((n - 1) * ng, n * ng, eye_x)
            else:
                # act on the base point by tau(g_n)
                for k in range(1, n):
                    put((k - 1) * ng, (k - 1) * ng, eye_g)
                put((n - 1) * ng, n * ng, eye_x)
                put((n - 1) * ng, (n - 1) * ng, tau.matrix.rows)
            faces[(n, i)] = GroupHom(levels[n], levels[n - 1],
                                     Mat(levels[n - 1].ngens, levels[n].ngens, rows),
                                     check=False)
    for n in range(n_max):
        for i in range(n + 1):
            rows = [[0] * levels[n].ngens for _ in range(levels[n + 1].ngens)]
            eye_g = Mat.identity(ng).rows
            eye_x = Mat.identity(nx).rows

            def put(dst_off, src_off, mat_rows):
                for r, row in enumerate(mat_rows):
                    for cix, v in enumerate(row):
                        if v:
                            rows[dst_off + r][src_off + cix] += v

            # insert the identity element as new slot i+1
            for k in range(1, n + 1):
                dst = k if k > i else k - 1
                put(dst * ng, (k - 1) * ng, eye_g)
            put((n + 1) * ng, n * ng, eye_x)
            degens[(n, i)] = GroupHom(levels[n], levels[n + 1],
                                      Mat(levels[n + 1].ngens, levels[n].ngens, rows),
                                      check=False)
    return SimplicialObject(levels, faces, degens)
