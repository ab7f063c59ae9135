"""Functors from a finite poset to chain complexes.

Maps are stored on covering (Hasse) relations only; longer arrows are
composed along a path, and verify_diagram confirms the composite does
not depend on the chosen path.
"""

from .complexes import ChainMap, identity_map


class Diagram:
    """variance "covariant": map(i<=j) goes value(i) -> value(j);
    "contravariant": value(j) -> value(i)."""

    def __init__(self, shape, variance, values, hasse_maps):
        if variance not in ("covariant", "contravariant"):
            raise ValueError("variance must be covariant or contravariant")
        self.shape = shape
        self.variance = variance
        self.values = list(values)
        self.hasse_maps = dict(hasse_maps)
        self._memo = {}

    def value(self, i):
        return self.values[i]

    def map_for(self, i, j):
        """The chain map for the relation i <= j."""
        if not self.shape.leq(i, j):
            raise ValueError(f"{i} is not below {j}")
        if i == j:
            return identity_map(self.values[i])
        key = (i, j)
        if key not in self._memo:
            step = None
            for (a, b) in self.hasse_maps:
                if a == i and self.shape.leq(b, j):
                    step = (a, b)
                    break
            if step is None:
                raise ValueError(f"no path from {i} to {j}")
            rest = self.map_for(step[1], j)
            edge = self.hasse_maps[step]
            if self.variance == "covariant":
                self._memo[key] = rest @ edge
            else:
                self._memo[key] = edge @ rest
        return self._memo[key]


class DiagramMorphism:
    """Componentwise chain maps between diagrams on the same shape."""

    def __init__(self, source, target, comps):
        self.source = source
        self.target = target
        self.comps = list(comps)

    def verify(self):
        n = len(self.source.values)
        for i in range(n):
            for j in range(n):
                if not self.source.shape.lt(i, j):
                    continue
                if self.source.variance == "covariant":
                    a = self.comps[j] @ self.source.map_for(i, j)
                    b = self.target.map_for(i, j) @ self.comps[i]
                else:
                    a = self.comps[i] @ self.source.map_for(i, j)
                    b = self.target.map_for(i, j) @ self.comps[j]
                ok = all(a.component(d).same(b.component(d))
                         for d in set(a.comps) | set(b.comps))
                if not ok:
                    return False
        return True


def verify_diagram(d, report=False):
    """Check identities and path-independent composition on all triangles."""
    n = len(d.values)
    failure = None
    for i in range(n):
        for j in range(n):
            if not d.shape.lt(i, j):
                continue
            base = d.map_for(i, j)
            # every intermediate object gives the same composite
            for k in range(n):
                if not (d.shape.lt(i, k) and d.shape.lt(k, j)):
                    continue
                if d.variance == "covariant":
                    comp = d.map_for(k, j) @ d.map_for(i, k)
                else:
                    comp = d.map_for(i, k) @ d.map_for(k, j)
                degs = set(base.comps) | set(comp.comps)
                if not all(base.component(m).same(comp.component(m))
                           for m in degs):
                    failure = (i, k, j)
                    break
            if failure:
                break
        if failure:
            break
    if report:
        return failure is None, failure
    return failure is None


def config_diagram(K, coeff):
    """Local configuration complexes with restriction maps, contravariant."""
    from .gauge.local import local_config_complex, config_restriction
    from .simplicial import star_poset
    poset = star_poset(K)
    values = [local_config_complex(st, coeff) for st in poset.objects]
    hasse = {}
    for (i, j) in poset.hasse():
        hasse[(i, j)] = config_restriction(poset.objects[j], poset.objects[i],
                                           coeff, values[j], values[i])
    return Diagram(poset, "contravariant", values, hasse)


def obs_diagram(K, coeff):
    """Local observable complexes with extension-by-zero maps, covariant."""
    from .gauge.local import local_obs_complex, obs_extension
    from .simplicial import star_poset
    poset = star_poset(K)
    values = [local_obs_complex(st, coeff) for st in poset.objects]
    hasse = {}
    for (i, j) in poset.hasse():
        hasse[(i, j)] = obs_extension(poset.objects[i], poset.objects[j],
                                      coeff, values[i], values[j])
    return Diagram(poset, "covariant", values, hasse)
