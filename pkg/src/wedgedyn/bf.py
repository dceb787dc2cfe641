"""Bowen-Franks groups BF_k(A) = Z^b / (A^k - I) Z^b and their direct limit.

The standing hypothesis (no eigenvalue of A is a root of unity) makes every
A^k - I invertible, so each BF_k is finite of order |det(A^k - I)| and the
monomorphism Psi embeds it into the rational points of the torus fixed by
the k-th power of the induced toral map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DimensionMismatch, NotDivisible, RootOfUnitySpectrum
from .intmat import IntMatrix, RatMatrix, c_matrix, rat_inverse, snf
from .polys import char_poly, has_root_of_unity_factor


@dataclass(frozen=True)
class TorusPoint:
    """A point of T^b = (R/Z)^b with exact rational coordinates in [0, 1)."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) % 1 for c in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def phi_apply(a: IntMatrix, p: TorusPoint) -> TorusPoint:
    """The toral endomorphism induced by A, applied once."""
    if a.dim != len(p.coords):
        raise DimensionMismatch("matrix and point dimensions differ")
    return TorusPoint(a.to_rat().apply(p.coords))


@dataclass(frozen=True)
class BFGroup:
    """BF_k(A), with coset canonicalization through the Smith form of A^k - I."""

    A: IntMatrix
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if has_root_of_unity_factor(char_poly(self.A)):
            raise RootOfUnitySpectrum("A has a root-of-unity eigenvalue; BF groups degenerate")

    @cached_property
    def M(self) -> IntMatrix:
        return self.A ** self.k - IntMatrix.identity(self.A.dim)

    @cached_property
    def _snf(self):
        return snf(self.M)

    @cached_property
    def diagonal(self) -> tuple:
        return self._snf.diagonal

    @cached_property
    def invariant_factors(self) -> tuple:
        return self._snf.invariant_factors

    @cached_property
    def order(self) -> int:
        n = 1
        for d in self.diagonal:
            n *= d
        det = abs(self.M.det())
        if n != det:
            raise RuntimeError("order mismatch between SNF and determinant")
        return n

    @cached_property
    def _u_inv(self) -> IntMatrix:
        rows = rat_inverse(self._snf.U).rows
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))

    @cached_property
    def _m_inv(self) -> RatMatrix:
        return rat_inverse(self.M)

    def reduce(self, n) -> "BFElement":
        """The class of the integer vector n."""
        if len(n) != self.A.dim:
            raise DimensionMismatch("vector length mismatch")
        un = self._snf.U.apply(tuple(int(x) for x in n))
        r = tuple(x % d for x, d in zip(un, self.diagonal))
        return BFElement(self, r)

    def zero(self) -> "BFElement":
        return BFElement(self, (0,) * self.A.dim)

    def elements(self):
        """All elements, in lexicographic order of their SNF coordinates."""
        for r in itertools.product(*(range(d) for d in self.diagonal)):
            yield BFElement(self, r)


@dataclass(frozen=True)
class BFElement:
    group: BFGroup
    r: tuple

    def __post_init__(self):
        for x, d in zip(self.r, self.group.diagonal):
            if not (0 <= x < d):
                raise ValueError("coordinates outside the SNF box")

    def representative(self) -> tuple:
        """An integer vector in this coset."""
        return self.group._u_inv.apply(self.r)

    def __add__(self, other: "BFElement") -> "BFElement":
        self._check(other)
        return BFElement(self.group, tuple((x + y) % d for x, y, d in
                                           zip(self.r, other.r, self.group.diagonal)))

    def __sub__(self, other: "BFElement") -> "BFElement":
        self._check(other)
        return BFElement(self.group, tuple((x - y) % d for x, y, d in
                                           zip(self.r, other.r, self.group.diagonal)))

    def __neg__(self) -> "BFElement":
        return BFElement(self.group, tuple((-x) % d for x, d in zip(self.r, self.group.diagonal)))

    def _check(self, other):
        if self.group != other.group:
            raise DimensionMismatch("elements of different BF groups")

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.r) + "]"


def reduce(group: BFGroup, n) -> BFElement:
    return group.reduce(n)


def psi(e: BFElement) -> TorusPoint:
    """The monomorphism BF_k -> T^b, n + Gamma |-> (A^k - I)^-1 n mod 1.

    Well-defined because shifting n by (A^k - I) z moves the image by the
    integer vector z. Injective under the standing hypothesis, so equality
    of Psi images is the canonical equality test in the direct limit.
    """
    rep = e.representative()
    return TorusPoint(e.group._m_inv.apply(rep))


def upsilon(e: BFElement, j: int) -> BFElement:
    """The direct-limit bonding map BF_i -> BF_j for i | j."""
    i = e.group.k
    if j % i != 0:
        raise NotDivisible(f"{i} does not divide {j}")
    target = BFGroup(e.group.A, j)
    c = c_matrix(e.group.A, i, j)
    return target.reduce(c.apply(e.representative()))


def enumerate_fixed(a: IntMatrix, k: int):
    """All points of T^b fixed by the k-th power of the toral map, sorted.

    These are exactly the Psi images of BF_k(A); there are |det(A^k - I)|
    of them.
    """
    g = BFGroup(a, k)
    pts = [psi(e) for e in g.elements()]
    pts.sort(key=lambda p: p.coords)
    return pts
