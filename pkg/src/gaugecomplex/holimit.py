"""Homotopy limits of contravariant diagrams of chain complexes.

The engine realizes the co-normalized Moore complex of the cosimplicial
replacement directly on products over strictly increasing poset chains,
totalizes with d_v + (-1)^p d_h and truncates so that degree 0 becomes
the kernel into degree -1.  The generic replacement (over nerve chains
with identities) and its co-degeneracy-kernel Moore complex are kept as
an independent path for cross-checking that combinatorial shortcut.
"""

from .abelian import GroupHom, unit
from .complexes import DoubleComplex, SumLayout, total_complex
from .exactla import Mat
from .moore import CosimplicialObject, conormalized_moore


def _chain_layout(diagram, chains, q):
    return SumLayout([(c, diagram.value(c[0]).group(q)) for c in chains])


def _nerve_coface_sum(diagram, src_chains, tgt_chains, q):
    """Alternating co-face sum between chain-indexed products."""
    src = _chain_layout(diagram, src_chains, q)
    tgt = _chain_layout(diagram, tgt_chains, q)
    rows = [[0] * src.total for _ in range(tgt.total)]
    src_ix = {c: c for c in src.parts}
    for t in tgt_chains:
        toff = tgt.offsets[t]
        for i in range(len(t)):
            s = t[:i] + t[i + 1:]
            if s not in src_ix:
                continue
            sign = -1 if i % 2 else 1
            soff = src.offsets[s]
            if i == 0:
                m = diagram.map_for(t[0], t[1]).component(q).matrix
                for r in range(m.m):
                    for cix, v in enumerate(m.rows[r]):
                        if v:
                            rows[toff + r][soff + cix] += sign * v
            else:
                for r in range(tgt.parts[t].ngens):
                    rows[toff + r][soff + r] += sign
    return GroupHom(src.group(), tgt.group(),
                    Mat(tgt.total, src.total, rows), check=False)


def holim_double(diagram, max_chain=None):
    """The strict-chain double complex of a contravariant diagram."""
    if diagram.variance != "contravariant":
        raise ValueError("holim needs a contravariant diagram")
    d_max = max(v.hi for v in diagram.values)
    if min(v.lo for v in diagram.values) < 0:
        raise ValueError("holim needs non-negatively graded values")
    if max_chain is None:
        max_chain = d_max + 1
    chains = {}
    for n in range(max_chain + 1):
        chains[n] = diagram.shape.chains(n)
        if not chains[n]:
            break
    groups, vert, horiz = {}, {}, {}
    for n, cs in chains.items():
        for q in range(d_max + 1):
            lay = _chain_layout(diagram, cs, q)
            if lay.total == 0 and not cs:
                continue
            groups[(-n, q)] = lay.group()
    for (p, q) in groups:
        n = -p
        if (p - 1, q) in groups:
            vert[(p, q)] = _nerve_coface_sum(diagram, chains[n], chains[n + 1], q)
        if (p, q - 1) in groups:
            lay = _chain_layout(diagram, chains[n], q)
            tgt = _chain_layout(diagram, chains[n], q - 1)
            rows = [[0] * lay.total for _ in range(tgt.total)]
            for c in chains[n]:
                m = diagram.value(c[0]).d(q).matrix
                soff, toff = lay.offsets[c], tgt.offsets[c]
                for r in range(m.m):
                    for cix, v in enumerate(m.rows[r]):
                        if v:
                            rows[toff + r][soff + cix] += v
            horiz[(p, q)] = GroupHom(groups[(p, q)], groups[(p, q - 1)],
                                     Mat(tgt.total, lay.total, rows), check=False)
    return DoubleComplex(groups, vert, horiz, check=False)


def holim(diagram, validate=True):
    dbl = holim_double(diagram)
    out = total_complex(dbl, sum_mode="product", truncation="nonneg")
    if validate:
        out.validate()
    out.meta["double"] = dbl
    return out


def cosimplicial_replacement(diagram, n_max):
    """Per internal degree: the product-over-nerve-chains cosimplicial group.

    Returns (by_degree, chains) where by_degree maps q to a
    CosimplicialObject whose level n is the product over weakly
    increasing (n+1)-tuples of objects, valued at the smallest one.
    """
    if diagram.variance != "contravariant":
        raise ValueError("replacement implemented for contravariant diagrams")
    chains = {n: diagram.shape.weak_chains(n) for n in range(n_max + 1)}
    d_max = max(v.hi for v in diagram.values)
    by_degree = {}
    for q in range(d_max + 1):
        levels = [_chain_layout(diagram, chains[n], q).group()
                  for n in range(n_max + 1)]
        cofaces = {}
        codegens = {}
        for n in range(n_max):
            src = _chain_layout(diagram, chains[n], q)
            tgt = _chain_layout(diagram, chains[n + 1], q)
            for i in range(n + 2):
                rows = [[0] * src.total for _ in range(tgt.total)]
                for t in chains[n + 1]:
                    s = t[:i] + t[i + 1:]
                    toff, soff = tgt.offsets[t], src.offsets[s]
                    if i == 0:
                        m = diagram.map_for(t[0], t[1]).component(q).matrix
                        for r in range(m.m):
                            for cix, v in enumerate(m.rows[r]):
                                if v:
                                    rows[toff + r][soff + cix] += v
                    else:
                        for r in range(tgt.parts[t].ngens):
                            rows[toff + r][soff + r] += 1
                cofaces[(n, i)] = GroupHom(levels[n], levels[n + 1],
                                           Mat(tgt.total, src.total, rows),
                                           check=False)
        for n in range(1, n_max + 1):
            src = _chain_layout(diagram, chains[n], q)
            tgt = _chain_layout(diagram, chains[n - 1], q)
            for i in range(n):
                rows = [[0] * src.total for _ in range(tgt.total)]
                for t in chains[n - 1]:
                    s = t[: i + 1] + t[i:]     # duplicate object i
                    toff, soff = tgt.offsets[t], src.offsets[s]
                    for r in range(tgt.parts[t].ngens):
                        rows[toff + r][soff + r] += 1
                codegens[(n, i)] = GroupHom(levels[n], levels[n - 1],
                                            Mat(tgt.total, src.total, rows),
                                            check=False)
        by_degree[q] = CosimplicialObject(levels, cofaces, codegens)
    return by_degree, chains


def strict_chain_identity_check(diagram, up_to=2):
    """Cross-check: co-degeneracy-kernel Moore complex of the replacement
    is isomorphic, via coordinate projection, to the strict-chain product
    with the alternating co-face differential."""
    by_degree, chains = cosimplicial_replacement(diagram, up_to)
    dbl = holim_double(diagram, max_chain=up_to)
    for q, cos in by_degree.items():
        if not cos.verify_identities():
            return False
        moore = conormalized_moore(cos, up_to=up_to)
        kers = moore.meta["kers"]
        strict = {n: diagram.shape.chains(n) for n in range(up_to + 1)}
        projs = {}
        for n in range(up_to + 1):
            weak = _chain_layout(diagram, chains[n], q)
            lay = _chain_layout(diagram, strict[n], q)
            grp = moore.group(-n)
            cols = []
            for j in range(grp.ngens):
                v = kers[n].lift(unit(grp.ngens, j))
                out = [0] * lay.total
                for c in strict[n]:
                    woff, soff = weak.offsets[c], lay.offsets[c]
                    for r in range(lay.parts[c].ngens):
                        out[soff + r] = v[woff + r]
                cols.append(out)
            tgt_group = dbl.group(-n, q)
            proj = GroupHom(grp, tgt_group, Mat.from_cols(cols, lay.total),
                            check=False)
            projs[n] = proj
            # bijective: both groups in canonical form must agree and the
            # matrix must be invertible modulo the orders
            from .abelian import hom_kernel, hom_cokernel
            k, _ = hom_kernel(proj)
            c, _ = hom_cokernel(proj)
            if not (k.is_trivial and c.is_trivial):
                return False
        for n in range(up_to):
            lhs = projs[n + 1] @ moore.d(-n)
            rhs = dbl.v(-n, q) @ projs[n]
            if not lhs.same(rhs):
                return False
    return True
