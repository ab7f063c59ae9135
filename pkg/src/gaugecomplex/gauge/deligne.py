"""Cech-style Deligne complex over the star cover, with comparison maps.

The Deligne complex keeps transition cochains g_UV on arbitrary
non-empty intersections K_U with K_V, not only on nested pairs.  With
antisymmetry g_VU = -g_UV and g_UU = 0 built into the coordinates, the
gluing data reduces to one cochain per unordered pair and one cocycle
condition per sorted triple with non-empty triple intersection.

psi forgets down to the nested pairs of the extended configuration
complex; phi reconstructs the missing transition data by gluing over
stars contained in the intersection, and is only defined when those
stars cover it.
"""

from ..abelian import FgAbGroup, GroupHom, Subquotient, unit
from ..complexes import ChainComplex, ChainMap, DoubleComplex, SumLayout, \
    total_complex
from ..exactla import Mat, hstack, kernel_basis
from ..simplicial import SimplicialComplex, boundary_matrix, chain_group, \
    restrict_hom, star_poset
from .extended import _add_block, extended_config_direct


def _intersection(a, b):
    common = a.simplex_set() & b.simplex_set()
    if not common:
        return None
    return SimplicialComplex(common)


def _cgroup(complex_, k, order, kind):
    base = chain_group(complex_, k, order)
    return FgAbGroup(base.orders, labels=tuple((kind, s) for s in base.labels))


def deligne_complex(K, coeff):
    """Two-term gauge complex with transition data on all overlaps."""
    poset = star_poset(K)
    stars = poset.objects
    q = coeff.order
    n = len(stars)
    inters = {}
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            inter = _intersection(stars[i].complex, stars[j].complex)
            if inter is not None:
                pairs.append((i, j))
                inters[(i, j)] = inter
    triples = []
    for (i, j) in pairs:
        for k in range(j + 1, n):
            if (i, k) not in inters or (j, k) not in inters:
                continue
            inter = _intersection(inters[(i, j)], stars[k].complex)
            if inter is not None:
                triples.append((i, j, k))
                inters[(i, j, k)] = inter

    lay1 = SumLayout([((i,), _cgroup(st.complex, 0, q, "g"))
                      for i, st in enumerate(stars)])
    blocks0 = [((i,), _cgroup(st.complex, 1, q, "A"))
               for i, st in enumerate(stars)]
    blocks0 += [((i, j), _cgroup(inters[(i, j)], 0, q, "g"))
                for (i, j) in pairs]
    lay0 = SumLayout(blocks0)
    cond = SumLayout(
        [((i, j), _cgroup(inters[(i, j)], 1, q, "A"))
         for (i, j) in pairs] +
        [((i, j, k), _cgroup(inters[(i, j, k)], 0, q, "g"))
         for (i, j, k) in triples])

    rows = [[0] * lay0.total for _ in range(cond.total)]
    for (i, j) in pairs:
        toff = cond.offsets[(i, j)]
        inter = inters[(i, j)]
        _add_block(rows, toff, lay0.offsets[(j,)],
                   restrict_hom(stars[j].complex, inter, 1).matrix)
        _add_block(rows, toff, lay0.offsets[(i,)],
                   restrict_hom(stars[i].complex, inter, 1).matrix, sign=-1)
        _add_block(rows, toff, lay0.offsets[(i, j)],
                   boundary_matrix(inter, 1).transpose())
    for (i, j, k) in triples:
        toff = cond.offsets[(i, j, k)]
        inter = inters[(i, j, k)]
        _add_block(rows, toff, lay0.offsets[(j, k)],
                   restrict_hom(inters[(j, k)], inter, 0).matrix)
        _add_block(rows, toff, lay0.offsets[(i, k)],
                   restrict_hom(inters[(i, k)], inter, 0).matrix, sign=-1)
        _add_block(rows, toff, lay0.offsets[(i, j)],
                   restrict_hom(inters[(i, j)], inter, 0).matrix)
    cond_mat = Mat(cond.total, lay0.total, rows)
    rt = Mat.from_cols(cond.group().relation_cols(), cond.total)
    full = kernel_basis(hstack(cond_mat, rt) if rt.n else cond_mat)
    sub = [tuple(full.col(j)[: lay0.total]) for j in range(full.n)]
    amb0 = lay0.group()
    sub += amb0.relation_cols()
    sq = Subquotient(lay0.total, sub, amb0.relation_cols())

    d1_rows = [[0] * lay1.total for _ in range(lay0.total)]
    for i, st in enumerate(stars):
        _add_block(d1_rows, lay0.offsets[(i,)], lay1.offsets[(i,)],
                   boundary_matrix(st.complex, 1).transpose(), sign=-1)
    for (i, j) in pairs:
        toff = lay0.offsets[(i, j)]
        inter = inters[(i, j)]
        _add_block(d1_rows, toff, lay1.offsets[(j,)],
                   restrict_hom(stars[j].complex, inter, 0).matrix)
        _add_block(d1_rows, toff, lay1.offsets[(i,)],
                   restrict_hom(stars[i].complex, inter, 0).matrix, sign=-1)
    d1_amb = Mat(lay0.total, lay1.total, d1_rows)
    g1 = lay1.group()
    cols = [sq.reduce(d1_amb.col(j)) for j in range(lay1.total)]
    d1 = GroupHom(g1, sq.group, Mat.from_cols(cols, sq.group.ngens), check=False)
    meta = {"poset": poset, "coeff": coeff, "degree0": sq, "layout0": lay0,
            "layout1": lay1, "pairs": pairs, "triples": triples,
            "inters": inters, "d1_ambient": d1_amb, "kind": "deligne"}
    return ChainComplex({1: g1, 0: sq.group}, {1: d1}, check=True, meta=meta)


def psi_map(K, coeff, deligne=None, ext=None):
    """Forgetful chain map from the Deligne complex onto nested-pair data."""
    if deligne is None:
        deligne = deligne_complex(K, coeff)
    if ext is None:
        ext = extended_config_direct(K, coeff)
    dl0, el0 = deligne.meta["layout0"], ext.meta["layout0"]
    esq, dsq = ext.meta["degree0"], deligne.meta["degree0"]
    psi1 = GroupHom(deligne.group(1), ext.group(1),
                    Mat.identity(deligne.group(1).ngens), check=False)
    # strictly nested pairs are listed with the smaller star first, and
    # there the intersection is the smaller star itself
    cols = []
    for jgen in range(deligne.group(0).ngens):
        v = dsq.lift(unit(deligne.group(0).ngens, jgen))
        out = [0] * el0.total
        for key in el0.keys:
            part = dl0.extract(key, v)
            off = el0.offsets[key]
            for r, x in enumerate(part):
                out[off + r] += x
        cols.append(esq.reduce(out))
    psi0 = GroupHom(deligne.group(0), ext.group(0),
                    Mat.from_cols(cols, ext.group(0).ngens), check=False)
    return ChainMap(deligne, ext, {1: psi1, 0: psi0}, check=True)


def phi_map(K, coeff, deligne=None, ext=None):
    """Gluing chain map from nested-pair data to the Deligne complex.

    For an unordered pair of stars the missing transition cochain is
    glued from stars contained in the intersection via
    g_UV = g_(W in V) - g_(W in U); raises when no such stars cover the
    intersection or when two choices disagree.
    """
    if deligne is None:
        deligne = deligne_complex(K, coeff)
    if ext is None:
        ext = extended_config_direct(K, coeff)
    poset = deligne.meta["poset"]
    stars = poset.objects
    q = coeff.order
    dl0, el0 = deligne.meta["layout0"], ext.meta["layout0"]
    esq, dsq = ext.meta["degree0"], deligne.meta["degree0"]
    inters = deligne.meta["inters"]

    def pair_coord(v, a, b, vertex):
        # g value of the nested pair (a < b) at a vertex, 0 when a == b
        if a == b:
            return 0
        part = el0.extract((a, b), v)
        ix = stars[a].complex.simplices(0).index(vertex)
        return part[ix]

    phi1 = GroupHom(ext.group(1), deligne.group(1),
                    Mat.identity(ext.group(1).ngens), check=False)
    cols = []
    for jgen in range(ext.group(0).ngens):
        v = esq.lift(unit(ext.group(0).ngens, jgen))
        out = [0] * dl0.total
        for key in dl0.keys:
            if len(key) == 1:
                for r, x in enumerate(el0.extract(key, v)):
                    out[dl0.offsets[key] + r] += x
                continue
            i, j = key
            inter = inters[key]
            off = dl0.offsets[key]
            if poset.lt(i, j):
                for r, x in enumerate(el0.extract((i, j), v)):
                    out[off + r] += x
                continue
            iset = inter.simplex_set()
            inside = [w for w in range(len(stars))
                      if stars[w].complex.simplex_set() <= iset]
            for r, vertex in enumerate(inter.simplices(0)):
                cands = [w for w in inside
                         if (vertex,) in stars[w].complex]
                if not cands:
                    raise ValueError(
                        f"covering precondition fails for stars "
                        f"{sorted(stars[i].centers)} and "
                        f"{sorted(stars[j].centers)}")
                vals = set()
                for w in cands:
                    val = (pair_coord(v, w, j, vertex)
                           - pair_coord(v, w, i, vertex)) % q if q else \
                        (pair_coord(v, w, j, vertex)
                         - pair_coord(v, w, i, vertex))
                    vals.add(val)
                if len(vals) != 1:
                    raise ValueError(
                        f"gluing inconsistency: cocycle condition violated "
                        f"over vertex {vertex} for stars "
                        f"{sorted(stars[i].centers)} and "
                        f"{sorted(stars[j].centers)}")
                out[off + r] += vals.pop()
        cols.append(dsq.reduce(out))
    phi0 = GroupHom(ext.group(0), deligne.group(0),
                    Mat.from_cols(cols, deligne.group(0).ngens), check=False)
    return ChainMap(ext, deligne, {1: phi1, 0: phi0}, check=True)


def cech_deligne_oracle(K, coeff):
    """Independent Cech double complex over the star cover.

    Rows are 0-, 1- and 2-fold overlaps of the cover sets with the
    two-term coefficient complex [0-cochains -> 1-cochains, -d]; totalized
    and truncated exactly like the limit engine, but assembled from the
    cover combinatorics alone.
    """
    poset = star_poset(K)
    stars = poset.objects
    q = coeff.order
    n = len(stars)
    overlaps = {0: [((i,), stars[i].complex) for i in range(n)]}
    for depth in (1, 2):
        prev = overlaps[depth - 1]
        level = []
        for (t, c) in prev:
            for k in range(t[-1] + 1, n):
                inter = _intersection(c, stars[k].complex)
                if inter is not None:
                    level.append((t + (k,), inter))
        overlaps[depth] = level
    by_tuple = {t: c for lvl in overlaps.values() for (t, c) in lvl}

    groups, vert, horiz = {}, {}, {}
    lays = {}
    for depth, lvl in overlaps.items():
        if not lvl:
            continue
        for qq in (0, 1):
            lay = SumLayout([(t, _cgroup(c, 1 - qq, q, "x"))
                             for (t, c) in lvl])
            lays[(-depth, qq)] = lay
            groups[(-depth, qq)] = lay.group()
    for (p, qq) in groups:
        depth = -p
        if (p - 1, qq) in groups:
            src, tgt = lays[(p, qq)], lays[(p - 1, qq)]
            rows = [[0] * src.total for _ in range(tgt.total)]
            for (t, c) in overlaps[depth + 1]:
                for i in range(len(t)):
                    s = t[:i] + t[i + 1:]
                    if s not in src.parts:
                        continue
                    rm = restrict_hom(by_tuple[s], c, 1 - qq).matrix
                    _add_block(rows, tgt.offsets[t], src.offsets[s], rm,
                               sign=-1 if i % 2 else 1)
            vert[(p, qq)] = GroupHom(groups[(p, qq)], groups[(p - 1, qq)],
                                     Mat(tgt.total, src.total, rows),
                                     check=False)
        if (p, qq - 1) in groups:
            src, tgt = lays[(p, qq)], lays[(p, qq - 1)]
            rows = [[0] * src.total for _ in range(tgt.total)]
            for (t, c) in overlaps[depth]:
                _add_block(rows, tgt.offsets[t], src.offsets[t],
                           boundary_matrix(c, 1).transpose(), sign=-1)
            horiz[(p, qq)] = GroupHom(groups[(p, qq)], groups[(p, qq - 1)],
                                      Mat(tgt.total, src.total, rows),
                                      check=False)
    dbl = DoubleComplex(groups, vert, horiz, check=True)
    return total_complex(dbl, sum_mode="product", truncation="nonneg")
