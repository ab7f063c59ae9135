"""Finite simplicial complexes and the closed-star cover poset.

Simplices are sorted vertex tuples; orientation signs come from the
position of the omitted vertex in the sorted order.  The text format for
complexes is one maximal simplex per line, vertices separated by
whitespace, with # starting a comment.
"""

from .abelian import FgAbGroup, GroupHom
from .complexes import ChainComplex
from .exactla import Mat


def _vertex_key(v):
    return (type(v).__name__, v)


class SimplicialComplex:

    def __init__(self, simplices):
        # closure under faces
        closed = set()
        for s in simplices:
            s = tuple(sorted(set(s), key=_vertex_key))
            if not s:
                continue
            for mask in range(1, 1 << len(s)):
                face = tuple(v for i, v in enumerate(s) if mask >> i & 1)
                closed.add(face)
        self.by_dim = {}
        for s in closed:
            self.by_dim.setdefault(len(s) - 1, []).append(s)
        for k in self.by_dim:
            self.by_dim[k].sort(key=lambda s: tuple(_vertex_key(v) for v in s))
        self.vertices = [s[0] for s in self.by_dim.get(0, [])]

    @classmethod
    def from_text(cls, text):
        maximal = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            maximal.append(tuple(line.split()))
        if not maximal:
            raise ValueError("no simplices")
        return cls(maximal)

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls.from_text(fh.read())

    @property
    def dim(self):
        return max(self.by_dim) if self.by_dim else -1

    def simplices(self, k):
        return self.by_dim.get(k, [])

    def all_simplices(self):
        out = []
        for k in sorted(self.by_dim):
            out.extend(self.by_dim[k])
        return out

    def __contains__(self, s):
        s = tuple(sorted(set(s), key=_vertex_key))
        return s in set(self.by_dim.get(len(s) - 1, []))

    def simplex_set(self):
        return frozenset(self.all_simplices())

    def is_subcomplex_of(self, other):
        return self.simplex_set() <= other.simplex_set()

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and \
            self.simplex_set() == other.simplex_set()

    def __hash__(self):
        return hash(self.simplex_set())

    def n_components(self):
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for (a, b) in self.simplices(1):
            parent[find(a)] = find(b)
        return len({find(v) for v in self.vertices})

    def chain_complex(self, order=0):
        groups = {k: chain_group(self, k, order) for k in range(self.dim + 1)}
        diffs = {k: boundary_hom(self, k, order) for k in range(1, self.dim + 1)}
        return ChainComplex(groups, diffs, check=False)

    def __repr__(self):
        counts = ",".join(f"{len(self.simplices(k))}" for k in range(self.dim + 1))
        return f"SimplicialComplex(dim={self.dim}, counts=[{counts}])"


def boundary_matrix(base, k):
    """Integer matrix of the boundary C_k -> C_(k-1), sorted bases."""
    rows_ix = {s: i for i, s in enumerate(base.simplices(k - 1))}
    cols = base.simplices(k)
    m = [[0] * len(cols) for _ in rows_ix]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            m[rows_ix[face]][j] += -1 if i % 2 else 1
    return Mat(len(rows_ix), len(cols), m)


def chain_group(base, k, order=0):
    sims = base.simplices(k)
    return FgAbGroup((order,) * len(sims), labels=tuple(sims))


def boundary_hom(base, k, order=0):
    return GroupHom(chain_group(base, k, order), chain_group(base, k - 1, order),
                    boundary_matrix(base, k), check=False)


def coboundary_hom(base, k, order=0):
    """C^k -> C^(k+1); the matrix is the transpose of the boundary."""
    return GroupHom(chain_group(base, k, order), chain_group(base, k + 1, order),
                    boundary_matrix(base, k + 1).transpose(), check=False)


def restrict_hom(big, small, k, order=0):
    """Cochain restriction C^k(big) -> C^k(small) by dropping coordinates."""
    if not small.is_subcomplex_of(big):
        raise ValueError("restriction target is not a subcomplex")
    src = chain_group(big, k, order)
    tgt = chain_group(small, k, order)
    ix = {s: j for j, s in enumerate(big.simplices(k))}
    rows = []
    for s in small.simplices(k):
        row = [0] * src.ngens
        row[ix[s]] = 1
        rows.append(row)
    return GroupHom(src, tgt, Mat(tgt.ngens, src.ngens, rows), check=False)


def extend_hom(small, big, k, order=0):
    """Chain extension by zero C_k(small) -> C_k(big)."""
    if not small.is_subcomplex_of(big):
        raise ValueError("extension source is not a subcomplex")
    return GroupHom(chain_group(small, k, order), chain_group(big, k, order),
                    restrict_hom(big, small, k, order).matrix.transpose(),
                    check=False)


class Star:
    """Closed star of a simplex: faces of every simplex containing it."""

    def __init__(self, centers, subcomplex):
        self.centers = frozenset(centers)
        self.complex = subcomplex

    def is_acyclic(self):
        """Reduced integer homology vanishes in every degree."""
        h = self.complex.chain_complex().homology()
        if not h.get(0, FgAbGroup(())).iso(FgAbGroup.free(1)):
            return False
        return all(g.is_trivial for n, g in h.items() if n != 0)

    def __repr__(self):
        return f"Star(centers={sorted(self.centers)})"


def closed_star(K, sigma):
    sigma = tuple(sorted(set(sigma), key=_vertex_key))
    if sigma not in K:
        raise ValueError(f"simplex {sigma} not in complex")
    cofaces = [s for s in K.all_simplices() if set(sigma) <= set(s)]
    return Star({sigma}, SimplicialComplex(cofaces))


class StarPoset:
    """Deduplicated closed stars ordered by subcomplex inclusion."""

    def __init__(self, K):
        self.base = K
        merged = {}
        for sigma in K.all_simplices():
            st = closed_star(K, sigma)
            key = st.complex.simplex_set()
            if key in merged:
                merged[key] = Star(merged[key].centers | {sigma},
                                   merged[key].complex)
            else:
                merged[key] = st
        stars = sorted(merged.values(),
                       key=lambda st: (len(st.complex.all_simplices()),
                                       [tuple(_vertex_key(v) for v in s)
                                        for s in st.complex.all_simplices()]))
        self.objects = stars
        n = len(stars)
        sets = [st.complex.simplex_set() for st in stars]
        self._leq = [[sets[i] <= sets[j] for j in range(n)] for i in range(n)]

    def __len__(self):
        return len(self.objects)

    def leq(self, i, j):
        return self._leq[i][j]

    def lt(self, i, j):
        return i != j and self._leq[i][j]

    def hasse(self):
        n = len(self.objects)
        out = []
        for i in range(n):
            for j in range(n):
                if not self.lt(i, j):
                    continue
                if any(self.lt(i, k) and self.lt(k, j) for k in range(n)):
                    continue
                out.append((i, j))
        return out

    def top(self):
        """Index of the maximum object, or None."""
        n = len(self.objects)
        for j in range(n):
            if all(self._leq[i][j] for i in range(n)):
                return j
        return None

    def chains(self, length):
        """Strictly increasing chains (i_0 < ... < i_length) as tuples."""
        n = len(self.objects)
        if length == 0:
            return [(i,) for i in range(n)]
        shorter = self.chains(length - 1)
        return [c + (j,) for c in shorter for j in range(n) if self.lt(c[-1], j)]

    def weak_chains(self, length):
        """Weakly increasing chains, i.e. nerve chains with identities."""
        n = len(self.objects)
        if length == 0:
            return [(i,) for i in range(n)]
        shorter = self.weak_chains(length - 1)
        return [c + (j,) for c in shorter
                for j in range(n) if c[-1] == j or self.lt(c[-1], j)]


def star_poset(K):
    return StarPoset(K)
