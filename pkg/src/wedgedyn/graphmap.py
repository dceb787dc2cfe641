"""Tight graph maps on a wedge of b circles and their abelian-cover lifts.

The wedge X has one vertex and edges a, b, ... each parametrized by [0, 1].
The universal abelian cover sits inside R^b as the grid of coordinate-axis
unit segments based at lattice points (for b = 2: Z x R union R x Z). A
tight map runs along the image word of each edge at constant speed, so all
lifted data is piecewise affine with rational breakpoints and exact
arithmetic goes through.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .bf import BFElement, BFGroup, TorusPoint, psi
from .errors import DimensionMismatch, NotExpanding, RootOfUnitySpectrum
from .intmat import IntMatrix
from .spectra import LipschitzNormData, rational_sqrt_upper, spectral, sup_norm_data
from .words import Endomorphism


class GraphPoint(NamedTuple):
    edge: int
    t: Fraction


VERTEX = GraphPoint(0, Fraction(0))


def graph_point(edge: int, t) -> GraphPoint:
    """Canonical point of the wedge; both edge endpoints collapse to VERTEX."""
    t = Fraction(t)
    if not (0 <= t <= 1):
        raise ValueError(f"edge parameter {t} outside [0, 1]")
    if t == 0 or t == 1:
        return VERTEX
    return GraphPoint(edge, t)


class CoverPoint(NamedTuple):
    """A point of the abelian cover: a graph point plus the lattice base of
    its edge (for the vertex, the lattice point itself)."""

    point: GraphPoint
    base: tuple


def cover_point(edge: int, t, base) -> CoverPoint:
    t = Fraction(t)
    base = tuple(int(x) for x in base)
    if t == 1:
        base = tuple(x + (1 if i == edge else 0) for i, x in enumerate(base))
        t = Fraction(0)
    if t == 0:
        return CoverPoint(VERTEX, base)
    return CoverPoint(GraphPoint(edge, t), base)


def iota(cp: CoverPoint) -> tuple:
    """Embed the cover into R^b: base + t * e_edge."""
    p, base = cp
    return tuple(Fraction(x) + (p.t if i == p.edge else 0) for i, x in enumerate(base))


def cover_from_coords(coords) -> CoverPoint:
    """Inverse of iota for points actually on the grid."""
    coords = [Fraction(c) for c in coords]
    frac_idx = [i for i, c in enumerate(coords) if c.denominator != 1]
    if len(frac_idx) > 1:
        raise ValueError(f"{tuple(coords)} is not on the cover grid")
    if not frac_idx:
        return CoverPoint(VERTEX, tuple(int(c) for c in coords))
    i = frac_idx[0]
    base = tuple(int(c) if j != i else (c.numerator // c.denominator) for j, c in enumerate(coords))
    t = coords[i] - base[i]
    return cover_point(i, t, base)


def deck(cp: CoverPoint, n) -> CoverPoint:
    return CoverPoint(cp.point, tuple(x + int(y) for x, y in zip(cp.base, n)))


@dataclass(frozen=True)
class SigmaReport:
    """Certified bounds on sigma(x) = iota(lift(f(x))) - A iota(lift(x)).

    c bounds sup||sigma|| in the operative norm (rational upper bound),
    c_sup is the exact sup-norm value, delta = c/(lam - 1) is the global
    shadowing constant, and q2max is the exact squared adapted-norm maximum
    used for threshold comparisons without any square roots.
    """

    c: Fraction
    c_sup: Fraction
    delta: Fraction
    lam: Fraction
    norm: LipschitzNormData
    q2max: Fraction


@dataclass(frozen=True)
class PeriodicPoint:
    """One point of Fix(phi^k), with its lifted translation vector.

    period is the k of the listing; least_period divides it. displacement
    and alpha_image are None when A fails the standing hypothesis (then the
    Bowen-Franks quotient is unavailable, but the raw translation is not).
    """

    point: GraphPoint
    period: int
    least_period: int
    itinerary: tuple
    translation: tuple
    displacement: "BFElement | None"
    alpha_image: "TorusPoint | None"


class TightMap:
    """A free-group endomorphism realized as a constant-speed graph map."""

    def __init__(self, endo: Endomorphism, name: str = ""):
        self.endo = endo
        self.name = name or "phi"
        for w in endo.images:
            if len(w) == 0:
                raise ValueError("empty image word; the map would crush an edge")

    @property
    def rank(self) -> int:
        return self.endo.rank

    @cached_property
    def speeds(self) -> tuple:
        return tuple(len(w) for w in self.endo.images)

    @cached_property
    def A(self) -> IntMatrix:
        return self.endo.abelianize()

    @cached_property
    def prefixes(self) -> tuple:
        """prefixes[e][i] = lattice position after the first i letters of psi(e)."""
        out = []
        for w in self.endo.images:
            pos = [0] * self.rank
            path = [tuple(pos)]
            for letter in w:
                pos[letter.generator] += letter.sign
                path.append(tuple(pos))
            out.append(tuple(path))
        return tuple(out)

    @cached_property
    def spectral(self):
        return spectral(self.A)

    def __repr__(self):
        rules = ", ".join(f"{chr(ord('a') + i)}->{w}" for i, w in enumerate(self.endo.images))
        return f"TightMap({self.name}: {rules})"

    # -- evaluation --------------------------------------------------------

    def eval(self, x: GraphPoint) -> GraphPoint:
        """phi(x) on the wedge."""
        if x == VERTEX:
            return VERTEX
        e, t = x
        d = self.speeds[e]
        pos = d * t
        i = int(pos)  # letter slot; pos < d since t < 1
        u = pos - i
        letter = self.endo.images[e].letters[i]
        if letter.sign > 0:
            return graph_point(letter.generator, u)
        return graph_point(letter.generator, 1 - u)

    def eval_iter(self, x: GraphPoint, k: int) -> GraphPoint:
        for _ in range(k):
            x = self.eval(x)
        return x

    def lift_eval(self, cp: CoverPoint) -> CoverPoint:
        """The origin-fixing lift of phi to the abelian cover."""
        p, base = cp
        abase = self.A.apply(base)
        if p == VERTEX:
            return CoverPoint(VERTEX, abase)
        e, t = p
        d = self.speeds[e]
        pos = d * t
        i = int(pos)
        u = pos - i
        letter = self.endo.images[e].letters[i]
        pref = self.prefixes[e]
        if letter.sign > 0:
            seg_base = tuple(a + x for a, x in zip(abase, pref[i]))
            return cover_point(letter.generator, u, seg_base)
        seg_base = tuple(a + x for a, x in zip(abase, pref[i + 1]))
        return cover_point(letter.generator, 1 - u, seg_base)

    def lift_iter(self, cp: CoverPoint, k: int) -> CoverPoint:
        for _ in range(k):
            cp = self.lift_eval(cp)
        return cp

    # -- sigma and shadowing constants ------------------------------------

    def sigma_values(self):
        """Exact sigma at every breakpoint: list of (edge, t, vector)."""
        out = []
        for e in range(self.rank):
            d = self.speeds[e]
            ae = tuple(self.A.rows[i][e] for i in range(self.rank))
            for j in range(d + 1):
                t = Fraction(j, d)
                sig = tuple(Fraction(p) - t * a for p, a in zip(self.prefixes[e][j], ae))
                out.append((e, t, sig))
        return out

    def sigma_report(self, norm: str = "adapted") -> SigmaReport:
        """Certified shadowing constants; sigma is affine between breakpoints,
        so the maxima over breakpoints are the true suprema."""
        if not self.spectral.is_expanding:
            raise NotExpanding("abelianization is not expanding")
        if norm == "sup":
            nd = sup_norm_data(self.A)
        elif norm == "adapted":
            nd = self.spectral.lipschitz_like_norm_data
            if nd is None:
                from .errors import AdaptedNormUnavailable

                raise AdaptedNormUnavailable("no exact adapted norm for this matrix")
        else:
            raise ValueError(f"unknown norm {norm!r}")
        vals = self.sigma_values()
        c_sup = max(max(abs(x) for x in sig) for _, _, sig in vals)
        q2max = max(nd.q2(sig) for _, _, sig in vals)
        if nd.kind == "sup":
            c = c_sup
        else:
            c = rational_sqrt_upper(q2max)
        delta = c / (nd.lam - 1)
        return SigmaReport(c=c, c_sup=c_sup, delta=delta, lam=nd.lam, norm=nd, q2max=q2max)

    # -- periodic points ---------------------------------------------------

    def _slot_cycles(self, k: int):
        """All length-k slot itineraries that close up, in lexicographic order."""
        slots = []
        for e in range(self.rank):
            slots.append([(i, l.generator, l.sign) for i, l in enumerate(self.endo.images[e].letters)])
        cycles = []

        def extend(start_edge, path, cur_edge):
            if len(path) == k:
                if cur_edge == start_edge:
                    cycles.append(tuple(path))
                return
            for i, gen, sign in slots[cur_edge]:
                path.append((cur_edge, i, sign))
                extend(start_edge, path, gen)
                path.pop()

        for e0 in range(self.rank):
            extend(e0, [], e0)
        return cycles

    def periodic_points(self, k: int):
        """Fix(phi^k) as a deduplicated, sorted list of PeriodicPoint.

        Each admissible slot itinerary supports exactly one fixed point of
        the composed affine map (its inverse contracts [0,1] into the slot
        cylinder), so enumeration plus endpoint deduplication is complete.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        found = {}
        for cyc in self._slot_cycles(k):
            alpha, beta = Fraction(1), Fraction(0)
            for e, i, sign in cyc:
                d = self.speeds[e]
                if sign > 0:
                    alpha, beta = d * alpha, d * beta - i
                else:
                    alpha, beta = -d * alpha, (i + 1) - d * beta
            if alpha == 1:
                raise NotExpanding("slot cycle composes to the identity; fixed points not isolated")
            t0 = beta / (1 - alpha)
            e0 = cyc[0][0]
            # defensive: confirm the orbit really follows the itinerary
            t = t0
            for e, i, sign in cyc:
                d = self.speeds[e]
                if not (Fraction(i, d) <= t <= Fraction(i + 1, d)):
                    raise RuntimeError("slot cycle solve left its cylinder")
                u = d * t - i
                t = u if sign > 0 else 1 - u
            if t != t0:
                raise RuntimeError("slot cycle solve did not close up")
            pt = graph_point(e0, t0)
            if pt not in found:
                found[pt] = cyc
        # the vertex is fixed by every power but its itinerary may not close
        # as a slot cycle (its edge-end walk can have a period not dividing k)
        if VERTEX not in found:
            found[VERTEX] = self._vertex_itinerary(k)
        bf_group = None
        try:
            bf_group = BFGroup(self.A, k)
        except RootOfUnitySpectrum:
            bf_group = None
        out = []
        for pt, cyc in found.items():
            end = self.lift_iter(CoverPoint(pt, (0,) * self.rank), k)
            if end.point != pt:
                raise RuntimeError("periodic point lift did not close up")
            delta_vec = end.base
            disp = bf_group.reduce(delta_vec) if bf_group is not None else None
            alpha_img = psi(disp) if disp is not None else None
            least = k
            for div in range(1, k):
                if k % div == 0 and self.eval_iter(pt, div) == pt:
                    least = div
                    break
            out.append(PeriodicPoint(point=pt, period=k, least_period=least,
                                     itinerary=cyc, translation=delta_vec,
                                     displacement=disp, alpha_image=alpha_img))
        out.sort(key=lambda p: (p.point.edge, p.point.t))
        return out

    def _vertex_itinerary(self, k: int):
        """The vertex orbit written in slot coordinates, starting at (a, t=0)."""
        cyc = []
        state = (0, 0)  # (edge, end), end 0 or 1
        for _ in range(k):
            e, end = state
            slot = 0 if end == 0 else self.speeds[e] - 1
            letter = self.endo.images[e].letters[slot]
            cyc.append((e, slot, letter.sign))
            u = 0 if (end == 0) == (letter.sign > 0) else 1
            state = (letter.generator, u)
        return tuple(cyc)

    def displacement_set(self, k: int):
        """Distinct displacement classes of Fix(phi^k) in BF_k, sorted."""
        pts = self.periodic_points(k)
        classes = {p.displacement for p in pts if p.displacement is not None}
        return sorted(classes, key=lambda e: e.r)

    def alpha(self, p: PeriodicPoint) -> TorusPoint:
        """The global-shadowing invariant of a periodic point."""
        if p.alpha_image is None:
            raise RootOfUnitySpectrum("alpha needs the standing hypothesis")
        return p.alpha_image

    def shadowing_classes(self, k: int):
        """Fix(phi^k) grouped by alpha image: list of (TorusPoint, points)."""
        groups = {}
        for p in self.periodic_points(k):
            if p.alpha_image is None:
                raise RootOfUnitySpectrum("shadowing classes need the standing hypothesis")
            groups.setdefault(p.alpha_image.coords, []).append(p)
        return [(TorusPoint(c), pts) for c, pts in sorted(groups.items())]
