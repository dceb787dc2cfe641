"""Certified spectral analysis of integer matrices.

Eigenvalues of small integer matrices with exact or rigorously bounded
values, an exact root-of-unity test, an exact expansion test, and adapted
norm data used by the shadowing machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import polys
from .errors import NotExpanding
from .intmat import IntMatrix, RatMatrix, rat_inverse


def _sqrt_interval(x: Fraction):
    """Rational lo <= sqrt(x) <= hi with hi - lo = 1e-14."""
    if x < 0:
        raise ValueError("negative radicand")
    scale = 10 ** 28
    n = (x.numerator * scale) // x.denominator
    s = isqrt(n)
    return Fraction(s, 10 ** 14), Fraction(s + 1, 10 ** 14)


def rational_sqrt_upper(x: Fraction) -> Fraction:
    """A rational c >= sqrt(x), exact when x is a perfect rational square,
    otherwise within 1e-14."""
    if x < 0:
        raise ValueError("negative radicand")
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    scale = 10 ** 28
    n = -((-x.numerator * scale) // x.denominator)
    return Fraction(isqrt(n) + 1, 10 ** 14)


@dataclass(frozen=True)
class Eigenvalue:
    """One eigenvalue, re + im*i, |true - reported| <= eps (eps=0 means exact).

    eps=None marks a best-effort float estimate with no certificate; the
    boolean report fields never depend on those.
    """

    re: Fraction
    im: Fraction
    eps: "Fraction | None"
    multiplicity: int

    @property
    def exact(self) -> bool:
        return self.eps == 0


@dataclass(frozen=True)
class LipschitzNormData:
    """A norm in which A certifiably expands by lam (and A^-1 contracts).

    kind "eigenbasis": ||v|| = ||P^-1 v||_2 with P exact rational eigenbasis;
    gram = P^-T P^-1 gives ||v||^2 = v^T gram v for exact comparisons.
    kind "sup": plain sup norm, usable when ||A^-1||_inf < 1.
    """

    kind: str
    P: "RatMatrix | None"
    P_inv: "RatMatrix | None"
    gram: "RatMatrix | None"
    lam: Fraction
    contraction: Fraction

    def q2(self, vec) -> Fraction:
        """Squared norm of a rational vector, exact."""
        if self.kind == "sup":
            m = max(abs(Fraction(x)) for x in vec)
            return m * m
        w = self.P_inv.apply(vec)
        return sum(x * x for x in w)


@dataclass(frozen=True)
class SpectralReport:
    matrix: IntMatrix
    charpoly: tuple
    eigenvalues: tuple
    is_expanding: bool
    has_root_of_unity: bool
    lambda_lower: "Fraction | None"
    lipschitz_like_norm_data: "LipschitzNormData | None"


def _rational_kernel(m: RatMatrix):
    """Primitive integer basis of ker(m), deterministic RREF order."""
    n = m.dim
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for pr, pc in enumerate(pivots):
            v[pc] = -rows[pr][f]
        basis.append(_primitive_vector(v))
    return basis


def _primitive_vector(v):
    from math import gcd

    denom = 1
    fr = [Fraction(x) for x in v]
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def _integer_roots(p):
    """(root, multiplicity) pairs over Z, plus the deflated remainder."""
    p = polys.trim(p)
    roots = []
    if polys.degree(p) <= 0:
        return roots, p
    while p[-1] == 0 and polys.degree(p) > 0:
        roots.append(0)
        p = p[:-1]
    const = abs(p[-1]) if p else 0
    if const:
        cands = sorted({d for d in range(1, isqrt(const) + 1) if const % d == 0}
                       | {const // d for d in range(1, isqrt(const) + 1) if const % d == 0})
        for base in cands:
            for r in (base, -base):
                while polys.degree(p) > 0 and polys.evaluate(p, Fraction(r)) == 0:
                    roots.append(r)
                    p = polys.deflate_root(p, r)
    grouped = []
    for r in sorted(set(roots)):
        grouped.append((r, roots.count(r)))
    return grouped, p


def _squarefree_decomposition(p):
    """Musser's algorithm; returns (primitive integer factor, multiplicity)."""
    p = polys.monic_over_q(p)
    if polys.degree(p) <= 0:
        return []
    c = polys.gcd_over_q(p, polys.derivative(p))
    w, _ = polys._quo_over_q(p, c)
    out = []
    i = 1
    while polys.degree(w) > 0:
        y = polys.gcd_over_q(w, c)
        z, _ = polys._quo_over_q(w, y)
        if polys.degree(z) > 0:
            out.append((polys.primitive_int(z), i))
        w = y
        c, _ = polys._quo_over_q(c, y)
        i += 1
    return out


def _durand_kerner(p):
    """Float root estimates for leftovers we cannot certify. Deterministic."""
    p = polys.trim(p)
    n = polys.degree(p)
    lead = p[0]
    coeffs = [complex(c) / lead for c in p]

    def ev(z):
        acc = 0j
        for c in coeffs:
            acc = acc * z + c
        return acc

    roots = [(0.4 + 0.9j) ** k for k in range(n)]
    for _ in range(300):
        new = []
        for i, z in enumerate(roots):
            den = 1 + 0j
            for j, w in enumerate(roots):
                if i != j:
                    den *= (z - w)
            new.append(z - ev(z) / den if den != 0 else z)
        roots = new
    return roots


def spectral(a: IntMatrix) -> SpectralReport:
    """Full certified spectral report for a square integer matrix."""
    p = polys.char_poly(a)
    unity = polys.has_root_of_unity_factor(p)
    eigs = []
    all_rational = True

    int_roots, rest = _integer_roots(p)
    for r, mult in int_roots:
        eigs.append(Eigenvalue(Fraction(r), Fraction(0), Fraction(0), mult))

    for sf, mult in _squarefree_decomposition(rest):
        deg = polys.degree(sf)
        intervals = polys.isolate_real_roots(sf)
        for lo, hi in intervals:
            mid = (lo + hi) / 2
            eigs.append(Eigenvalue(mid, Fraction(0), (hi - lo) / 2, mult))
            all_rational = False
        ncomplex = deg - len(intervals)
        if ncomplex == 0:
            continue
        all_rational = False
        if ncomplex == 2:
            # exactly one conjugate pair: pin it down through Vieta
            mon = polys.monic_over_q(sf)
            top = mon[1] if len(mon) > 1 else Fraction(0)
            const = mon[-1]
            sum_lo = sum(lo for lo, _ in intervals)
            sum_hi = sum(hi for _, hi in intervals)
            re_lo = (-top - sum_hi) / 2
            re_hi = (-top - sum_lo) / 2
            prod_lo, prod_hi = Fraction(1), Fraction(1)
            for lo, hi in intervals:
                cand = [prod_lo * lo, prod_lo * hi, prod_hi * lo, prod_hi * hi]
                prod_lo, prod_hi = min(cand), max(cand)
            total = const if deg % 2 == 0 else -const
            if intervals:
                # pair_prod = total / (product of real roots)
                cand = [total / prod_lo, total / prod_hi]
                mod2_lo, mod2_hi = min(cand), max(cand)
            else:
                mod2_lo = mod2_hi = total
            re_mid = (re_lo + re_hi) / 2
            if re_lo <= 0 <= re_hi:
                re2_lo = Fraction(0)
            else:
                re2_lo = min(re_lo * re_lo, re_hi * re_hi)
            re2_hi = max(re_lo * re_lo, re_hi * re_hi)
            im2_lo = max(Fraction(0), mod2_lo - re2_hi)
            im2_hi = max(Fraction(0), mod2_hi - re2_lo)
            im_lo, _ = _sqrt_interval(im2_lo)
            _, im_hi = _sqrt_interval(im2_hi)
            im_mid = (im_lo + im_hi) / 2
            eps = max((re_hi - re_lo) / 2, (im_hi - im_lo) / 2)
            eigs.append(Eigenvalue(re_mid, im_mid, eps, mult))
            eigs.append(Eigenvalue(re_mid, -im_mid, eps, mult))
        else:
            seen_real = 0
            for z in sorted(_durand_kerner(sf), key=lambda z: (z.real, z.imag)):
                if abs(z.imag) < 1e-9:
                    if seen_real < len(intervals):
                        seen_real += 1
                        continue
                eigs.append(Eigenvalue(Fraction(z.real).limit_denominator(10 ** 12),
                                       Fraction(z.imag).limit_denominator(10 ** 12), None, mult))

    eigs.sort(key=lambda e: (e.re, e.im))

    det = a.det()
    expanding = det != 0 and polys.all_roots_outside_closed_disk(p, Fraction(1))

    if all_rational:
        lam = min((abs(e.re) for e in eigs), default=Fraction(0))
    else:
        lam = _bisect_lambda(p)

    norm_data = _build_norm_data(a, p, eigs, all_rational, expanding, lam)

    return SpectralReport(
        matrix=a,
        charpoly=p,
        eigenvalues=tuple(eigs),
        is_expanding=expanding,
        has_root_of_unity=unity,
        lambda_lower=lam,
        lipschitz_like_norm_data=norm_data,
    )


def _bisect_lambda(p):
    """Certified rational lower bound for the smallest root modulus."""
    if polys.evaluate(p, Fraction(0)) == 0:
        return Fraction(0)
    lo = Fraction(0)
    hi = polys.cauchy_bound(p)
    for _ in range(80):
        if hi - lo < Fraction(1, 10 ** 9):
            break
        mid = (lo + hi) / 2
        if polys.all_roots_outside_closed_disk(p, mid):
            lo = mid
        else:
            hi = mid
    return lo


def _build_norm_data(a, p, eigs, all_rational, expanding, lam):
    if not expanding:
        return None
    n = a.dim
    if all_rational:
        basis = []
        for lam_i in sorted({e.re for e in eigs}):
            m = RatMatrix(tuple(tuple(Fraction(a.rows[i][j]) - (lam_i if i == j else 0)
                                      for j in range(n)) for i in range(n)))
            basis.extend(_rational_kernel(m))
        if len(basis) == n:
            P = RatMatrix(tuple(zip(*basis)))
            P_inv = rat_inverse(P)
            gram = P_inv.transpose() * P_inv
            return LipschitzNormData(kind="eigenbasis", P=P, P_inv=P_inv, gram=gram,
                                     lam=lam, contraction=1 / lam)
    ainv = rat_inverse(a)
    row_sums = [sum(abs(x) for x in r) for r in ainv.rows]
    contr = max(row_sums)
    if contr < 1:
        return LipschitzNormData(kind="sup", P=None, P_inv=None, gram=None,
                                 lam=1 / contr, contraction=contr)
    return None


def sup_norm_data(a: IntMatrix) -> LipschitzNormData:
    """Sup-norm certificate, for the RunConfig norm="sup" path."""
    ainv = rat_inverse(a)
    contr = max(sum(abs(x) for x in r) for r in ainv.rows)
    if contr >= 1:
        raise NotExpanding("matrix does not contract the sup norm backwards")
    return LipschitzNormData(kind="sup", P=None, P_inv=None, gram=None,
                             lam=1 / contr, contraction=contr)
