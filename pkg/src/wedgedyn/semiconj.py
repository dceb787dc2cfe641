"""The Franks semiconjugacy beta: exact breakpoint values, tail bounds,
eigen-direction projections, Holder exponents, and injectivity certification
by symbolic segment-pair tracking in the abelian cover.

For a uniformly expanding map (all speeds M), the points i/M^k on an edge
are exactly the points whose k-th lifted image is a lattice point n, and
beta there equals A^-k n on the nose. Everything else is bounded by the
geometric tail of the defect series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceeded,
    ComplexOrSmallEigenvalue,
    NotExpanding,
)
from .graphmap import CoverPoint, TightMap, cover_point
from .intmat import rat_inverse
from .spectra import _rational_kernel
from .words import Letter


@dataclass(frozen=True)
class BetaApproximation:
    """Exact beta values at the level-k breakpoints i/M^k of every edge.

    values[e][i] is beta at i/M^k on edge e (a rational vector); these are
    exact values of the semiconjugacy, not approximations. tail_bound bounds
    |beta - level-k normalized iterate| everywhere else.
    """

    map: TightMap
    level: int
    M: int
    values: tuple
    tail_bound: Fraction


def kappa(m: TightMap, letter: Letter, k: int):
    """The per-letter increment of beta at level k: sign * A^-k e_gen."""
    if not m.spectral.is_expanding:
        raise NotExpanding("kappa needs an expanding abelianization")
    ainv = rat_inverse(m.A ** k)
    col = tuple(ainv.rows[i][letter.generator] for i in range(m.rank))
    if letter.sign > 0:
        return col
    return tuple(-x for x in col)


def beta_breakpoints(m: TightMap, k: int) -> BetaApproximation:
    """Beta at every i/M^k breakpoint, by partial sums of kappa.

    The i-th breakpoint of edge e is carried by phi^k onto the lattice
    point reached after the first i letters of psi^k(e), so its beta value
    is the exact partial sum; the full edge telescopes to e_e.
    """
    mexp = m.endo.require_uniform_expansion()
    if not m.spectral.is_expanding:
        raise NotExpanding("beta needs an expanding abelianization")
    ainv = rat_inverse(m.A ** k)
    cols = [tuple(ainv.rows[i][g] for i in range(m.rank)) for g in range(m.rank)]
    power = m.endo.power(k)
    values = []
    for e in range(m.rank):
        word = power.images[e]
        if len(word) != mexp ** k:
            raise RuntimeError("uniform expansion must give M^k letters at level k")
        acc = tuple(Fraction(0) for _ in range(m.rank))
        row = [acc]
        for letter in word:
            col = cols[letter.generator]
            acc = tuple(a + letter.sign * c for a, c in zip(acc, col))
            row.append(acc)
        unit = tuple(Fraction(int(i == e)) for i in range(m.rank))
        if row[-1] != unit:
            raise RuntimeError("edge endpoint must telescope to the basis vector")
        values.append(tuple(row))
    return BetaApproximation(map=m, level=k, M=mexp, values=tuple(values),
                             tail_bound=tail_bound(m, k))


def tail_bound(m: TightMap, k: int, norm: str = "adapted") -> Fraction:
    """tau_k = delta(f) / lambda^k; tau_0 is the shadowing constant itself."""
    sr = m.sigma_report(norm=norm)
    return sr.delta / sr.lam ** k


def beta_mu(m: TightMap, approx: BetaApproximation, mu):
    """Projection of the breakpoint table onto an expanding eigenline of A^T.

    mu must be an exact rational eigenvalue with |mu| > 1; the eigenvector
    is computed exactly and normalized to a primitive integer vector.
    Returns one tuple of scalars per edge.
    """
    mu = Fraction(mu)
    if abs(mu) <= 1:
        raise ComplexOrSmallEigenvalue(f"|mu| must exceed 1, got {mu}")
    from .intmat import RatMatrix

    n = m.rank
    at = m.A.transpose()
    shifted = RatMatrix(tuple(tuple(Fraction(at.rows[i][j]) - (mu if i == j else 0)
                                    for j in range(n)) for i in range(n)))
    kernel = _rational_kernel(shifted)
    if not kernel:
        raise ComplexOrSmallEigenvalue(f"{mu} is not a rational eigenvalue of A^T")
    v = kernel[0]
    return tuple(tuple(sum(Fraction(a) * b for a, b in zip(v, val)) for val in edge_vals)
                 for edge_vals in approx.values)


def holder_bound(m: TightMap) -> Fraction:
    """A rational Holder exponent for beta: min(log lambda / log L, 1).

    Exact when the log ratio is rational (integer-power certificate),
    otherwise a certified rational lower bound within 1e-6; any exponent
    below the true ratio is valid, so a lower bound is sound.
    """
    if not m.spectral.is_expanding:
        raise NotExpanding("Holder bound needs an expanding abelianization")
    lam = m.spectral.lambda_lower
    big_l = max(m.speeds)
    if lam >= big_l:
        return Fraction(1)

    def cmp_ratio(p, q):
        # sign of p/q - log(lam)/log(L), by exact comparison of L^p vs lam^q
        lhs = Fraction(big_l) ** p
        rhs = lam ** q
        if lhs == rhs:
            return 0
        return 1 if lhs > rhs else -1

    lo, hi = (0, 1), (1, 1)
    for _ in range(200):
        med = (lo[0] + hi[0], lo[1] + hi[1])
        c = cmp_ratio(*med)
        if c == 0:
            return Fraction(med[0], med[1])
        if c < 0:
            lo = med
        else:
            hi = med
        if Fraction(hi[0], hi[1]) - Fraction(lo[0], lo[1]) < Fraction(1, 10 ** 7):
            break
    return Fraction(lo[0], lo[1])


# ---------------------------------------------------------------------------
# injectivity certification


@dataclass(frozen=True)
class InjectivityCertificate:
    """Outcome of the shadowing-pair search.

    status is CERTIFIED_INJECTIVE, NOT_INJECTIVE (then witness holds two
    distinct cover points with exactly equal lifted images, hence equal
    beta), or UNKNOWN (depth budget exhausted).
    """

    status: str
    depth: int
    delta: Fraction
    witness: "tuple | None"
    norm: str


@dataclass(frozen=True)
class _Tracked:
    """A full lifted edge together with an affine chart back to the original
    point whose forward image it is: orig param = o_a + o_b * u, u in [0,1]."""

    edge: int
    base: tuple
    o_edge: int
    o_base: tuple
    o_a: Fraction
    o_b: Fraction

    def sort_key(self):
        return (self.edge, self.base, self.o_edge, self.o_base, self.o_a, self.o_b)

    def orig_point(self, u) -> CoverPoint:
        return cover_point(self.o_edge, self.o_a + self.o_b * u, self.o_base)

    def orig_interval(self):
        lo, hi = sorted((self.o_a, self.o_a + self.o_b))
        return lo, hi


def _advance(m: TightMap, tr: _Tracked):
    """All letter pieces of the lifted image of a full tracked edge."""
    d = m.speeds[tr.edge]
    abase = m.A.apply(tr.base)
    pref = m.prefixes[tr.edge]
    out = []
    for j, letter in enumerate(m.endo.images[tr.edge].letters):
        if letter.sign > 0:
            nbase = tuple(a + x for a, x in zip(abase, pref[j]))
            na = tr.o_a + tr.o_b * Fraction(j, d)
            nb = tr.o_b / d
        else:
            nbase = tuple(a + x for a, x in zip(abase, pref[j + 1]))
            na = tr.o_a + tr.o_b * Fraction(j + 1, d)
            nb = -tr.o_b / d
        out.append(_Tracked(letter.generator, nbase, tr.o_edge, tr.o_base, na, nb))
    return out


def _sup_gap2(e1, n1, e2, n2):
    worst = Fraction(0)
    for i in range(len(n1)):
        lo = Fraction(n1[i] - n2[i]) - (1 if i == e2 else 0)
        hi = Fraction(n1[i] - n2[i]) + (1 if i == e1 else 0)
        gap = lo if lo > 0 else (-hi if hi < 0 else Fraction(0))
        if gap > worst:
            worst = gap
    return worst * worst


def _q_dist2(gram, e1, n1, e2, n2):
    """Exact min of (w^T G w) between two unit axis segments."""
    b = len(n1)
    c = tuple(Fraction(x - y) for x, y in zip(n1, n2))
    g = gram.rows
    q0 = sum(c[i] * sum(g[i][j] * c[j] for j in range(b)) for i in range(b))
    l1 = sum(c[i] * g[i][e1] for i in range(b))
    l2 = sum(c[i] * g[i][e2] for i in range(b))
    q11 = g[e1][e1]
    q22 = g[e2][e2]
    q12 = g[e1][e2]

    if e1 == e2:
        # w = c + s*e1, s = t - u in [-1, 1]
        def val(s):
            return q0 + 2 * s * l1 + s * s * q11

        s = -l1 / q11
        s = max(Fraction(-1), min(Fraction(1), s))
        return val(s)

    def val(t, u):
        return (q0 + 2 * t * l1 - 2 * u * l2 + t * t * q11 + u * u * q22 - 2 * t * u * q12)

    det = q11 * q22 - q12 * q12
    if det > 0:
        t_star = (-l1 * q22 + q12 * l2) / det
        u_star = (q11 * l2 - q12 * l1) / det
        if 0 <= t_star <= 1 and 0 <= u_star <= 1:
            return val(t_star, u_star)
    best = None
    for t_fix in (Fraction(0), Fraction(1)):
        u = (l2 + t_fix * q12) / q22
        u = max(Fraction(0), min(Fraction(1), u))
        v = val(t_fix, u)
        best = v if best is None or v < best else best
    for u_fix in (Fraction(0), Fraction(1)):
        t = (u_fix * q12 - l1) / q11
        t = max(Fraction(0), min(Fraction(1), t))
        v = val(t, u_fix)
        best = v if best is None or v < best else best
    return best


def _seg_dist2(nd, e1, n1, e2, n2):
    if nd.kind == "sup":
        return _sup_gap2(e1, n1, e2, n2)
    return _q_dist2(nd.gram, e1, n1, e2, n2)


def _touch(e1, n1, e2, n2):
    """'ident', the single shared point, or None for two unit axis segments."""
    if e1 == e2 and n1 == n2:
        return "ident"
    box = []
    for i in range(len(n1)):
        a_lo, a_hi = n1[i], n1[i] + (1 if i == e1 else 0)
        b_lo, b_hi = n2[i], n2[i] + (1 if i == e2 else 0)
        lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
        if lo > hi:
            return None
        box.append((lo, hi))
    if any(lo != hi for lo, hi in box):
        raise RuntimeError("distinct grid segments cannot overlap in a segment")
    return tuple(lo for lo, _ in box)


def _preimages_intersect(p: _Tracked, q: _Tracked) -> bool:
    plo, phi = p.orig_interval()
    qlo, qhi = q.orig_interval()
    for i in range(len(p.o_base)):
        a_lo = Fraction(p.o_base[i]) + (plo if i == p.o_edge else 0)
        a_hi = Fraction(p.o_base[i]) + (phi if i == p.o_edge else 0)
        b_lo = Fraction(q.o_base[i]) + (qlo if i == q.o_edge else 0)
        b_hi = Fraction(q.o_base[i]) + (qhi if i == q.o_edge else 0)
        if max(a_lo, b_lo) > min(a_hi, b_hi):
            return False
    return True


def _cell_key(p: _Tracked, q: _Tracked):
    """Translation-invariant germ signature of a benign cell."""
    t = _touch(p.edge, p.base, q.edge, q.base)
    if t == "ident":
        return ("ident", p.edge)
    if t is None:
        raise RuntimeError("benign cell without touching segments")

    def end_dir(tr):
        return 1 if t[tr.edge] == tr.base[tr.edge] else -1

    rel = tuple(a - b for a, b in zip(q.base, p.base))
    return (p.edge, end_dir(p), q.edge, end_dir(q), rel)


def _witness_from_cell(p: _Tracked, q: _Tracked):
    """Distinct original points with the same current image, if any."""
    t = _touch(p.edge, p.base, q.edge, q.base)
    cands = []
    if t == "ident":
        for u in (Fraction(0), Fraction(1, 2), Fraction(1)):
            x, y = p.orig_point(u), q.orig_point(u)
            if x != y:
                cands.append((x, y))
    elif t is not None:
        u1 = Fraction(t[p.edge] - p.base[p.edge])
        u2 = Fraction(t[q.edge] - q.base[q.edge])
        x, y = p.orig_point(u1), q.orig_point(u2)
        if x != y:
            cands.append((x, y))
    return cands


def shadow_pairs(m: TightMap, depth: int = 12, norm: str = "adapted",
                 max_cells: int = 100000) -> InjectivityCertificate:
    """Search for distinct cover points whose orbits shadow each other.

    Pairs with equal beta stay within 2*delta of each other forever (each
    is within delta of the same toral orbit), so segment pairs separating
    beyond 2*delta are discarded. Surviving exact coincidences with distinct
    preimages are non-injectivity witnesses. When every survivor is benign
    (preimage closures intersect) and the survivor germ-signature set
    repeats at consecutive depths, the self-similar regime forces any
    shadowing pair onto the diagonal: CERTIFIED_INJECTIVE.
    """
    sr = m.sigma_report(norm=norm)
    nd = sr.norm
    theta = 2 * sr.delta
    theta2 = theta * theta
    b = m.rank
    can_certify = min(m.speeds) >= 2

    if nd.kind == "sup":
        row_scale = Fraction(1)
    else:
        row_scale = max(sum(abs(x) for x in r) for r in nd.P.rows)
    w = int(row_scale * theta) + 2

    cells = []
    seen = set()
    for e in range(b):
        s1 = _Tracked(e, (0,) * b, e, (0,) * b, Fraction(0), Fraction(1))
        for base in itertools.product(range(-w, w + 1), repeat=b):
            for e2 in range(b):
                s2 = _Tracked(e2, base, e2, base, Fraction(0), Fraction(1))
                if _seg_dist2(nd, s1.edge, s1.base, s2.edge, s2.base) > theta2:
                    continue
                a, c = sorted((s1, s2), key=_Tracked.sort_key)
                key = (a.sort_key(), c.sort_key())
                if key not in seen:
                    seen.add(key)
                    cells.append((a, c))
    cells.sort(key=lambda pc: (pc[0].sort_key(), pc[1].sort_key()))

    prev_keys = _stable_state(cells)

    for d in range(1, depth + 1):
        nxt = {}
        witnesses = []
        for p, q in cells:
            for np_ in _advance(m, p):
                for nq in _advance(m, q):
                    if _seg_dist2(nd, np_.edge, np_.base, nq.edge, nq.base) > theta2:
                        continue
                    a, c = sorted((np_, nq), key=_Tracked.sort_key)
                    nxt[(a.sort_key(), c.sort_key())] = (a, c)
                    witnesses.extend(_witness_from_cell(a, c))
        if witnesses:
            pairs = []
            for x, y in witnesses:
                x, y = sorted((x, y))
                pairs.append((x, y))
            x, y = min(pairs)
            fx = m.lift_iter(x, d)
            fy = m.lift_iter(y, d)
            if fx != fy:
                raise RuntimeError("witness verification failed")
            return InjectivityCertificate(status="NOT_INJECTIVE", depth=d,
                                          delta=sr.delta, witness=(x, y), norm=nd.kind)
        cells = [nxt[k] for k in sorted(nxt)]
        if len(cells) > max_cells:
            raise BudgetExceeded(f"segment-pair cells exceeded {max_cells}")
        keys = _stable_state(cells)
        if can_certify and keys is not None and keys == prev_keys:
            return InjectivityCertificate(status="CERTIFIED_INJECTIVE", depth=d,
                                          delta=sr.delta, witness=None, norm=nd.kind)
        prev_keys = keys
    return InjectivityCertificate(status="UNKNOWN", depth=depth,
                                  delta=sr.delta, witness=None, norm=nd.kind)


def _stable_state(cells):
    """The germ-signature set when every cell is benign, else None."""
    keys = set()
    for p, q in cells:
        if not _preimages_intersect(p, q):
            return None
        keys.add(_cell_key(p, q))
    return frozenset(keys)
