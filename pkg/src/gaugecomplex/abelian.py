"""Finitely generated abelian groups and their homomorphisms.

A group is a list of generator orders (0 marks a free generator, d >= 2
a cyclic factor of order d).  Canonical invariant factors are derived on
demand, so direct sums can keep their natural generator bases and labels
while isomorphism testing stays a tuple comparison.
"""

from .exactla import Mat, Echelon, smith, kernel_basis, hstack


class FgAbGroup:
    """Direct sum of cyclic groups, given by generator orders.

    orders: tuple of ints, 0 for a free (Z) generator, d >= 2 for Z/d.
    labels: optional opaque per-generator labels.
    """

    __slots__ = ("orders", "labels", "_canon")

    def __init__(self, orders, labels=None):
        self.orders = tuple(int(d) for d in orders)
        if any(d < 0 or d == 1 for d in self.orders):
            raise ValueError("generator orders must be 0 or >= 2")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(self.orders):
                raise ValueError("label count mismatch")
        self.labels = labels
        self._canon = None

    @classmethod
    def free(cls, rank, labels=None):
        return cls((0,) * rank, labels)

    @classmethod
    def cyclic(cls, d):
        return cls(() if d == 1 else (d,))

    @classmethod
    def from_invariants(cls, free_rank, factors, labels=None):
        return cls((0,) * free_rank + tuple(factors), labels)

    @classmethod
    def direct_sum(cls, *groups):
        orders = sum((g.orders for g in groups), ())
        labels = None
        if all(g.labels is not None for g in groups) and groups:
            labels = sum((g.labels for g in groups), ())
        return cls(orders, labels)

    @property
    def ngens(self):
        return len(self.orders)

    @property
    def is_trivial(self):
        return not self.orders

    def canonical(self):
        """(free_rank, invariant_factors) with the divisibility chain."""
        if self._canon is None:
            free = sum(1 for d in self.orders if d == 0)
            torsion = [d for d in self.orders if d]
            sf = smith(Mat.diagonal(torsion), want_u=False, want_v=False)
            self._canon = (free, tuple(d for d in sf.diag if d > 1))
        return self._canon

    @property
    def free_rank(self):
        return self.canonical()[0]

    @property
    def invariant_factors(self):
        return self.canonical()[1]

    def iso(self, other):
        return self.canonical() == other.canonical()

    def describe(self):
        free, factors = self.canonical()
        parts = []
        if free == 1:
            parts.append("Z")
        elif free:
            parts.append(f"Z^{free}")
        parts.extend(f"Z/{d}" for d in factors)
        return " + ".join(parts) if parts else "0"

    def reduce(self, coords):
        """Normalize: torsion coordinates into [0, d)."""
        if len(coords) != self.ngens:
            raise ValueError("coordinate length mismatch")
        return [int(c) % d if d else int(c) for c, d in zip(coords, self.orders)]

    def is_zero_vec(self, coords):
        return all(v == 0 for v in self.reduce(coords))

    def relation_cols(self):
        """Columns d_i * e_i spanning the relation lattice in Z^ngens."""
        cols = []
        for i, d in enumerate(self.orders):
            if d:
                col = [0] * self.ngens
                col[i] = d
                cols.append(col)
        return cols

    def elements(self):
        """All elements (finite groups only), as coordinate lists."""
        if any(d == 0 for d in self.orders):
            raise ValueError("group is infinite")
        out = [[]]
        for d in self.orders:
            out = [e + [k] for e in out for k in range(d)]
        return out

    def __eq__(self, other):
        return isinstance(other, FgAbGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return f"FgAbGroup({self.describe()})"


def iso_check(a, b):
    return a.iso(b)


class GroupElement:
    """An element of an FgAbGroup, coordinates kept normalized."""

    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        self.group = group
        self.coords = tuple(group.reduce(coords))

    def __add__(self, other):
        if other.group != self.group:
            raise ValueError("elements of different groups")
        return GroupElement(
            self.group, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __neg__(self):
        return GroupElement(self.group, [-c for c in self.coords])

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.group == other.group
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.group.orders, self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        return f"GroupElement({list(self.coords)})"


class GroupHom:
    """Homomorphism as an integer matrix, target gens by source gens."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, check=True):
        if matrix.m != target.ngens or matrix.n != source.ngens:
            raise ValueError(
                f"matrix {matrix.m}x{matrix.n} does not fit "
                f"{target.ngens}x{source.ngens}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.well_defined():
            raise ValueError("hom not well defined on torsion")

    @classmethod
    def identity(cls, group):
        return cls(group, group, Mat.identity(group.ngens), check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Mat.zero(target.ngens, source.ngens), check=False)

    def well_defined(self):
        # source gen of order d must map to a d-torsion element
        for j, d in enumerate(self.source.orders):
            if not d:
                continue
            for i, e in enumerate(self.target.orders):
                v = d * self.matrix.rows[i][j]
                if (v % e) if e else v:
                    return False
        return True

    def apply(self, coords):
        return self.target.reduce(self.matrix.apply(list(coords)))

    def __matmul__(self, other):
        """Composition self after other."""
        if other.target.orders != self.source.orders:
            raise ValueError("composition mismatch")
        return GroupHom(
            other.source, self.target, self.matrix @ other.matrix, check=False
        )

    def __add__(self, other):
        return GroupHom(
            self.source, self.target, self.matrix + other.matrix, check=False
        )

    def __sub__(self, other):
        return GroupHom(
            self.source, self.target, self.matrix - other.matrix, check=False
        )

    def __neg__(self):
        return GroupHom(self.source, self.target, -self.matrix, check=False)

    def scale(self, k):
        return GroupHom(self.source, self.target, self.matrix.scale(k), check=False)

    def is_zero(self):
        for j in range(self.source.ngens):
            if not self.target.is_zero_vec(self.matrix.col(j)):
                return False
        return True

    def same(self, other):
        """Equality as maps, i.e. congruence modulo target orders."""
        return (self - other).is_zero()

    def __repr__(self):
        return f"GroupHom({self.source.describe()} -> {self.target.describe()})"


class MatrixPresentation:
    """Generators and a relation matrix whose columns span the relations."""

    __slots__ = ("generator_count", "relations")

    def __init__(self, generator_count, relations):
        if relations.m != generator_count:
            raise ValueError("relation rows must match generator count")
        self.generator_count = generator_count
        self.relations = relations


def normalize_group(pres):
    """Canonical invariant-factor form of a presentation."""
    sf = smith(pres.relations, want_u=False, want_v=False)
    factors = tuple(d for d in sf.diag if d > 1)
    free = pres.generator_count - sf.rank
    return FgAbGroup.from_invariants(free, factors)


class Subquotient:
    """A subquotient S/T of Z^N in canonical form, with lift and reduce.

    sub_cols span the sublattice S, rel_cols span T (each rel column must
    lie in S).  Coordinates of the canonical group are free generators
    first, then torsion generators in invariant-factor order.
    """

    def __init__(self, ambient_dim, sub_cols, rel_cols, labels=None):
        self.ambient_dim = ambient_dim
        self.sub = Echelon(Mat.from_cols([tuple(c) for c in sub_cols], ambient_dim))
        rank = self.sub.rank
        rel_coords = []
        for c in rel_cols:
            x = self.sub.solve(list(c))
            if x is None:
                raise ValueError("relation not contained in the subgroup")
            rel_coords.append(tuple(x))
        self._rel_sf = smith(Mat.from_cols(rel_coords, rank))
        r = self._rel_sf.rank
        diag = self._rel_sf.diag
        # canonical generators: free rows beyond the relation rank, then
        # torsion rows with invariant factor > 1
        self._gen_rows = list(range(r, rank)) + [i for i in range(r) if diag[i] > 1]
        orders = (0,) * (rank - r) + tuple(d for d in diag if d > 1)
        self.group = FgAbGroup(orders, labels)
        self._uinv = None

    def _u_inverse(self):
        if self._uinv is None:
            u = self._rel_sf.U
            sf = smith(u)
            cols = []
            for j in range(u.m):
                e = [0] * u.m
                e[j] = 1
                cols.append(sf.solve(e))
            self._uinv = Mat.from_cols(cols, u.m)
        return self._uinv

    def lift(self, coords):
        """An ambient representative of the class with these coordinates."""
        uinv = self._u_inverse()
        x = [0] * self.sub.rank
        for j, c in enumerate(coords):
            if c:
                row = self._gen_rows[j]
                for i in range(self.sub.rank):
                    x[i] += c * uinv.rows[i][row]
        out = [0] * self.ambient_dim
        for i, xi in enumerate(x):
            if xi:
                for r, v in self.sub.cols[i].items():
                    out[r] += xi * v
        return out

    def reduce(self, vec):
        """Canonical coordinates of an ambient vector's class."""
        x = self.sub.solve(list(vec))
        if x is None:
            raise ValueError("vector not in the subgroup")
        y = self._rel_sf.apply_u(x)
        return self.group.reduce([y[row] for row in self._gen_rows])

    def contains(self, vec):
        return self.sub.contains(list(vec))

    def is_zero_class(self, vec):
        return all(v == 0 for v in self.reduce(vec))


def hom_kernel(f):
    """(kernel group, inclusion into f's source)."""
    if not f.well_defined():
        raise ValueError("hom not well defined on torsion")
    ns = f.source.ngens
    rt = Mat.from_cols(f.target.relation_cols(), f.target.ngens)
    stacked = hstack(f.matrix, rt) if rt.n else f.matrix
    full = kernel_basis(stacked)
    sub_cols = [tuple(full.col(j)[:ns]) for j in range(full.n)]
    sq = Subquotient(ns, sub_cols, f.source.relation_cols())
    incl_cols = [f.source.reduce(sq.lift(unit(sq.group.ngens, j)))
                 for j in range(sq.group.ngens)]
    incl = GroupHom(sq.group, f.source, Mat.from_cols(incl_cols, ns), check=False)
    return sq.group, incl


def hom_cokernel(f):
    """(cokernel group, projection from f's target)."""
    if not f.well_defined():
        raise ValueError("hom not well defined on torsion")
    nt = f.target.ngens
    sub_cols = [unit(nt, i) for i in range(nt)]
    rel_cols = [f.matrix.col(j) for j in range(f.matrix.n)]
    rel_cols += f.target.relation_cols()
    sq = Subquotient(nt, sub_cols, rel_cols)
    proj_cols = [sq.reduce(unit(nt, i)) for i in range(nt)]
    proj = GroupHom(f.target, sq.group, Mat.from_cols(proj_cols, sq.group.ngens),
                    check=False)
    return sq.group, proj


def unit(n, j):
    out = [0] * n
    out[j] = 1
    return tuple(out)
