"""Local configuration and observable complexes on a closed star.

The structure group is Z (configurations only) or Z/q.  A configuration
is a 1-cochain A (degree 0) together with a 0-cochain g (degree 1); the
differential sends g to -dg.  An observable is a 1-chain phi (degree 0)
with a 0-chain chi (degree -1); its differential is -boundary, the sign
being forced by the adjunction <delta* F, B> = <F, delta B> against the
pairing (phi . A + chi . g)/q mod 1.
"""

from fractions import Fraction

from ..abelian import FgAbGroup, GroupHom
from ..complexes import ChainComplex, ChainMap
from ..exactla import Mat
from ..simplicial import boundary_matrix, restrict_hom


class CoeffGroup:
    """Z or Z/q, parsed from "Z" or "Z/<q>"."""

    def __init__(self, order):
        if order != 0 and order < 2:
            raise ValueError("coefficient order must be 0 (Z) or >= 2")
        self.order = order

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text == "Z":
            return cls(0)
        if text.startswith("Z/"):
            try:
                q = int(text[2:])
            except ValueError:
                raise ValueError(f"bad coefficient spec {text!r}")
            return cls(q)
        raise ValueError(f"bad coefficient spec {text!r}")

    @property
    def is_cyclic(self):
        return self.order != 0

    def __eq__(self, other):
        return isinstance(other, CoeffGroup) and self.order == other.order

    def __repr__(self):
        return "CoeffGroup(Z)" if self.order == 0 else f"CoeffGroup(Z/{self.order})"


def _labeled_group(base, k, order, kind):
    sims = base.simplices(k)
    return FgAbGroup((order,) * len(sims), labels=tuple((kind, s) for s in sims))


def local_config_complex(star, coeff):
    """Degrees {0, 1}: 0-cochains over 1-cochains, differential -d."""
    base = star.complex
    c0 = _labeled_group(base, 0, coeff.order, "g")
    c1 = _labeled_group(base, 1, coeff.order, "A")
    d = GroupHom(c0, c1, -boundary_matrix(base, 1).transpose(), check=False)
    return ChainComplex({1: c0, 0: c1}, {1: d}, check=False,
                        meta={"star": star, "coeff": coeff})


def local_obs_complex(star, coeff):
    """Degrees {0, -1}: 1-chains over 0-chains, differential -boundary."""
    if not coeff.is_cyclic:
        raise ValueError("observables need a finite cyclic structure group")
    base = star.complex
    c1 = _labeled_group(base, 1, coeff.order, "phi")
    c0 = _labeled_group(base, 0, coeff.order, "chi")
    d = GroupHom(c1, c0, -boundary_matrix(base, 1), check=False)
    return ChainComplex({0: c1, -1: c0}, {0: d}, check=False,
                        meta={"star": star, "coeff": coeff})


def config_restriction(big_star, small_star, coeff, val_big, val_small):
    """Cochain restriction as a chain map of local config complexes."""
    r1 = restrict_hom(big_star.complex, small_star.complex, 0, coeff.order)
    r0 = restrict_hom(big_star.complex, small_star.complex, 1, coeff.order)
    comps = {1: GroupHom(val_big.group(1), val_small.group(1), r1.matrix,
                         check=False),
             0: GroupHom(val_big.group(0), val_small.group(0), r0.matrix,
                         check=False)}
    return ChainMap(val_big, val_small, comps, check=True)


def obs_extension(small_star, big_star, coeff, val_small, val_big):
    """Chain extension by zero as a map of local observable complexes."""
    e0 = restrict_hom(big_star.complex, small_star.complex, 1,
                      coeff.order).matrix.transpose()
    em = restrict_hom(big_star.complex, small_star.complex, 0,
                      coeff.order).matrix.transpose()
    comps = {0: GroupHom(val_small.group(0), val_big.group(0), e0, check=False),
             -1: GroupHom(val_small.group(-1), val_big.group(-1), em,
                          check=False)}
    return ChainMap(val_small, val_big, comps, check=True)


class PairingValue:
    """An element of Q/Z as an exact fraction in [0, 1)."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = Fraction(value) % 1

    def __add__(self, other):
        return PairingValue(self.value + other.value)

    def __neg__(self):
        return PairingValue(-self.value)

    def __eq__(self, other):
        return isinstance(other, PairingValue) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def is_zero(self):
        return self.value == 0

    def __repr__(self):
        return f"PairingValue({self.value})"


class LocalConfig:
    """A = 1-cochain coordinates, g = 0-cochain coordinates, on one star."""

    def __init__(self, star, a, g):
        self.star = star
        self.a = list(a)
        self.g = list(g)


class LocalObs:
    """phi = 1-chain coordinates, chi = 0-chain coordinates, on one star."""

    def __init__(self, star, phi, chi):
        self.star = star
        self.phi = list(phi)
        self.chi = list(chi)


def local_pairing(obs, config, coeff):
    """(phi . A + chi . g)/q in Q/Z; simplex bases must match."""
    if not coeff.is_cyclic:
        raise ValueError("pairing needs a finite cyclic structure group")
    if obs.star.complex != config.star.complex:
        raise ValueError("pairing across different stars")
    dot = sum(p * a for p, a in zip(obs.phi, config.a))
    dot += sum(c * g for c, g in zip(obs.chi, config.g))
    return PairingValue(Fraction(dot, coeff.order))
