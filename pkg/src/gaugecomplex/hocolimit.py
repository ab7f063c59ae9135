"""Homotopy colimits of covariant diagrams of chain complexes.

Mirror image of the limit side: the normalized Moore complex of the
simplicial replacement is realized on coproducts over strictly
increasing poset chains, totalized with d_v + (-1)^p d_h and truncated
so that degree 0 becomes the cokernel out of degree 1.
"""

from .abelian import GroupHom, unit
from .complexes import DoubleComplex, SumLayout, total_complex
from .exactla import Mat
from .moore import SimplicialObject, normalized_moore


def _chain_layout(diagram, chains, q):
    return SumLayout([(c, diagram.value(c[0]).group(q)) for c in chains])


def _nerve_face_sum(diagram, src_chains, tgt_chains, q):
    """Alternating face sum between chain-indexed coproducts.

    Face i deletes the object in slot n - i; deleting the smallest one
    (i = n) pushes the value forward along the next extension map.
    """
    src = _chain_layout(diagram, src_chains, q)
    tgt = _chain_layout(diagram, tgt_chains, q)
    rows = [[0] * src.total for _ in range(tgt.total)]
    n = len(src_chains[0]) - 1
    for c in src_chains:
        soff = src.offsets[c]
        for i in range(n + 1):
            t = c[: n - i] + c[n - i + 1:]
            sign = -1 if i % 2 else 1
            toff = tgt.offsets[t]
            if i == n:
                m = diagram.map_for(c[0], c[1]).component(q).matrix
                for r in range(m.m):
                    for cix, v in enumerate(m.rows[r]):
                        if v:
                            rows[toff + r][soff + cix] += sign * v
            else:
                for r in range(src.parts[c].ngens):
                    rows[toff + r][soff + r] += sign
    return GroupHom(src.group(), tgt.group(),
                    Mat(tgt.total, src.total, rows), check=False)


def hocolim_double(diagram, max_chain=None):
    """The strict-chain double complex of a covariant diagram."""
    if diagram.variance != "covariant":
        raise ValueError("hocolim needs a covariant diagram")
    d_hi = max(v.hi for v in diagram.values)
    d_lo = min(v.lo for v in diagram.values)
    if max_chain is None:
        # every summand with total degree <= 1 can reach the truncation
        max_chain = 1 - d_lo
    chains = {}
    for n in range(max_chain + 1):
        chains[n] = diagram.shape.chains(n)
        if not chains[n]:
            break
    groups, vert, horiz = {}, {}, {}
    for n, cs in chains.items():
        if not cs:
            continue
        for q in range(d_lo, d_hi + 1):
            groups[(n, q)] = _chain_layout(diagram, cs, q).group()
    for (p, q) in groups:
        n = p
        if (p - 1, q) in groups:
            vert[(p, q)] = _nerve_face_sum(diagram, chains[n], chains[n - 1], q)
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


def hocolim(diagram, validate=True):
    dbl = hocolim_double(diagram)
    out = total_complex(dbl, sum_mode="coproduct", truncation="nonpos")
    if validate:
        out.validate()
    out.meta["double"] = dbl
    return out


def simplicial_replacement(diagram, n_max):
    """Per internal degree: the coproduct-over-nerve-chains simplicial group.

    Level n is the direct sum over weakly increasing (n+1)-tuples of
    objects, valued at the smallest one.  Face i deletes slot n - i,
    degeneracy i duplicates slot n - i.
    """
    if diagram.variance != "covariant":
        raise ValueError("replacement implemented for covariant diagrams")
    chains = {n: diagram.shape.weak_chains(n) for n in range(n_max + 1)}
    d_hi = max(v.hi for v in diagram.values)
    d_lo = min(v.lo for v in diagram.values)
    by_degree = {}
    for q in range(d_lo, d_hi + 1):
        levels = [_chain_layout(diagram, chains[n], q).group()
                  for n in range(n_max + 1)]
        faces = {}
        degens = {}
        for n in range(1, n_max + 1):
            src = _chain_layout(diagram, chains[n], q)
            tgt = _chain_layout(diagram, chains[n - 1], q)
            for i in range(n + 1):
                rows = [[0] * src.total for _ in range(tgt.total)]
                for c in chains[n]:
                    t = c[: n - i] + c[n - i + 1:]
                    soff, toff = src.offsets[c], tgt.offsets[t]
                    if i == n:
                        m = diagram.map_for(c[0], c[1]).component(q).matrix
                        for r in range(m.m):
                            for cix, v in enumerate(m.rows[r]):
                                if v:
                                    rows[toff + r][soff + cix] += v
                    else:
                        for r in range(src.parts[c].ngens):
                            rows[toff + r][soff + r] += 1
                faces[(n, i)] = GroupHom(levels[n], levels[n - 1],
                                         Mat(tgt.total, src.total, rows),
                                         check=False)
        for n in range(n_max):
            src = _chain_layout(diagram, chains[n], q)
            tgt = _chain_layout(diagram, chains[n + 1], q)
            for i in range(n + 1):
                rows = [[0] * src.total for _ in range(tgt.total)]
                for c in chains[n]:
                    t = c[: n - i + 1] + c[n - i:]    # duplicate slot n - i
                    soff, toff = src.offsets[c], tgt.offsets[t]
                    for r in range(src.parts[c].ngens):
                        rows[toff + r][soff + r] += 1
                degens[(n, i)] = GroupHom(levels[n], levels[n + 1],
                                          Mat(tgt.total, src.total, rows),
                                          check=False)
        by_degree[q] = SimplicialObject(levels, faces, degens)
    return by_degree, chains


def strict_chain_identity_check(diagram, up_to=2):
    """Cross-check: the degeneracy quotient Moore complex of the
    replacement is isomorphic, via strict-chain inclusion, to the
    strict-chain coproduct with the alternating face differential."""
    by_degree, chains = simplicial_replacement(diagram, up_to)
    dbl = hocolim_double(diagram, max_chain=up_to)
    from .abelian import hom_kernel, hom_cokernel
    for q, simp in by_degree.items():
        if not simp.verify_identities():
            return False
        moore = normalized_moore(simp, up_to=up_to)
        quots = moore.meta["quots"]
        strict = {n: diagram.shape.chains(n) for n in range(up_to + 1)}
        incls = {}
        for n in range(up_to + 1):
            if not strict[n]:
                break
            weak = _chain_layout(diagram, chains[n], q)
            lay = _chain_layout(diagram, strict[n], q)
            grp = moore.group(n)
            src_group = dbl.group(n, q)
            cols = []
            for c in strict[n]:
                woff = weak.offsets[c]
                for r in range(lay.parts[c].ngens):
                    v = [0] * weak.total
                    v[woff + r] = 1
                    cols.append(quots[n].reduce(v))
            incl = GroupHom(src_group, grp, Mat.from_cols(cols, grp.ngens),
                            check=False)
            incls[n] = incl
            k, _ = hom_kernel(incl)
            co, _ = hom_cokernel(incl)
            if not (k.is_trivial and co.is_trivial):
                return False
        for n in range(1, up_to + 1):
            if n not in incls:
                break
            lhs = moore.d(n) @ incls[n]
            rhs = incls[n - 1] @ dbl.v(n, q)
            if not lhs.same(rhs):
                return False
    return True
