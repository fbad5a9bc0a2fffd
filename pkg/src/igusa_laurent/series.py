"""Exact Laurent expansion of rational functions in t over Q.

A function N(t) / prod(1 - c_i t^d_i) is expanded in the annulus where every
factor with d_i > 0 is expanded in positive powers of t and every factor with
d_i < 0 in negative powers. The two groups are separated by partial fractions
(extended Euclid over Q), so every coefficient is a finite exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

Poly1 = list  # dense list of Fractions, index = degree


def _trim(a: Poly1) -> Poly1:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a: Poly1, b: Poly1) -> Poly1:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a: Poly1, b: Poly1) -> Poly1:
    return padd(a, [-x for x in b])


def pmul(a: Poly1, b: Poly1) -> Poly1:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pdivmod(a: Poly1, b: Poly1) -> tuple[Poly1, Poly1]:
    a = _trim([Fraction(x) for x in a])
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = _trim(a)
    return _trim(q), a


def pext_gcd(a: Poly1, b: Poly1) -> tuple[Poly1, Poly1, Poly1]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    lead = r0[-1]
    return [x / lead for x in r0], [x / lead for x in s0], [x / lead for x in t0]


def binomial_poly(c: Fraction, d: int) -> Poly1:
    """1 - c t^d for d > 0."""
    out = [Fraction(0)] * (d + 1)
    out[0] = Fraction(1)
    out[d] -= c
    return out


def power_series(num: Poly1, den: Poly1, n: int) -> list[Fraction]:
    """First n coefficients of num/den as a power series; den[0] must be nonzero."""
    inv = 1 / Fraction(den[0])
    out = []
    for k in range(n):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc * inv)
    return out


class SeriesError(ValueError):
    pass


@dataclass
class SplitForm:
    """num(t) / (D_plus(t) * E(t)) * t^shift * scalar, as a sum of two one-sided parts.

    part_pos / D_plus is expanded in t; part_neg / E is expanded in u = 1/t.
    """

    shift: int
    scalar: Fraction
    plus_factors: list[tuple[Fraction, int]]
    minus_factors: list[tuple[Fraction, int]]
    d_plus: Poly1
    e_poly: Poly1
    part_pos: Poly1
    part_neg: Poly1


def split(num: dict[int, Fraction], factors: list[tuple[Fraction, int]]) -> SplitForm:
    scalar = Fraction(1)
    plus, minus = [], []
    shift = 0
    for c, d in factors:
        c = Fraction(c)
        if d == 0:
            if c == 1:
                raise SeriesError("constant factor 1 - 1 vanishes")
            scalar /= 1 - c
        elif d > 0:
            plus.append((c, d))
        else:
            minus.append((c, -d))
            shift += -d  # 1 - c t^d = t^d (t^|d| - c)
    if not num:
        return SplitForm(0, scalar, plus, minus, [Fraction(1)], [Fraction(1)], [], [])
    v = min(num)
    np_ = [Fraction(0)] * (max(num) - v + 1)
    for k, c in num.items():
        np_[k - v] = Fraction(c)
    d_plus: Poly1 = [Fraction(1)]
    for c, d in plus:
        d_plus = pmul(d_plus, binomial_poly(c, d))
    e_poly: Poly1 = [Fraction(1)]
    for c, d in minus:
        f = [Fraction(0)] * (d + 1)
        f[0] = -c
        f[d] = Fraction(1)
        e_poly = pmul(e_poly, f)
    g, s, t = pext_gcd(e_poly, d_plus)
    if len(g) != 1:
        raise SeriesError("positive and negative denominator parts share a root")
    # np/(D E) = np*s/D + np*t/E  since s*E + t*D = 1
    part_pos = pmul(np_, s)
    part_neg = pmul(np_, t)
    return SplitForm(v + shift, scalar, plus, minus, d_plus, e_poly, part_pos, part_neg)


def laurent_coefficients(num: dict[int, Fraction], factors, lo: int, hi: int) -> dict[int, Fraction]:
    """Exact coefficients of t^m for lo <= m <= hi."""
    sf = split(num, factors)
    out = {m: Fraction(0) for m in range(lo, hi + 1)}
    if not sf.part_pos and not sf.part_neg:
        return out
    # positive part: t^shift * part_pos / d_plus, series in t
    n_pos = hi - sf.shift + 1
    if n_pos > 0 and sf.part_pos:
        coeffs = power_series(sf.part_pos, sf.d_plus, n_pos)
        for n, c in enumerate(coeffs):
            m = n + sf.shift
            if lo <= m <= hi:
                out[m] += c * sf.scalar
    # negative part: t^shift * R(t)/E(t) = t^(shift + r - k) * R~(u)/E~(u)
    if sf.part_neg:
        r = len(sf.part_neg) - 1
        k = len(sf.e_poly) - 1
        top = sf.shift + r - k
        n_neg = top - lo + 1
        if n_neg > 0:
            coeffs = power_series(list(reversed(sf.part_neg)), list(reversed(sf.e_poly)), n_neg)
            for j, c in enumerate(coeffs):
                m = top - j
                if lo <= m <= hi:
                    out[m] += c * sf.scalar
    return out


@dataclass
class Family:
    """Coefficients c(m) = P_r(K) * base^K for m = r + K*period, K >= 0, m >= valid_from.

    gamma is the exponent with base = q^(gamma*period); index m counts powers of t
    on the positive side and powers of 1/t on the negative side.
    """

    side: str
    gamma: Fraction
    period: int
    base: Fraction
    residues: dict[int, list[Fraction]] = field(default_factory=dict)
    valid_from: int = 0

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.residues.values() if p), default=-1)

    def value(self, m: int) -> Fraction:
        r = m % self.period
        K = (m - r) // self.period
        poly = self.residues.get(r, [])
        return sum((c * K**i for i, c in enumerate(poly)), Fraction(0)) * self.base**K


def _poly_in_K_shift(poly: list[Fraction], delta: int) -> list[Fraction]:
    """Coefficients of P(K + delta) given those of P(K)."""
    out = [Fraction(0)] * len(poly)
    from math import comb
    for i, c in enumerate(poly):
        for j in range(i + 1):
            out[j] += c * comb(i, j) * Fraction(delta) ** (i - j)
    return out


def _binom_poly(n: int, i: int) -> list[Fraction]:
    """binom(K - i + n - 1, n - 1) as a polynomial in K."""
    out = [Fraction(1)]
    for j in range(1, n):
        out = pmul(out, [Fraction(j - i), Fraction(1)])
        out = [x / j for x in out]
    return out or [Fraction(1)]


def _families_one_side(numer: Poly1, factors: list[tuple[Fraction, int]], q: int,
                       side: str) -> list[Family]:
    """Families of numer / prod(1 - c u^d) (all d > 0) as a power series in u."""
    if not factors or not numer:
        return []
    groups: dict[Fraction, list[tuple[Fraction, int]]] = {}
    for c, d in factors:
        e = _log_q(c, q)
        groups.setdefault(Fraction(-e, d), []).append((c, d))
    total: Poly1 = [Fraction(1)]
    polys = {}
    for gam, fs in groups.items():
        gp: Poly1 = [Fraction(1)]
        for c, d in fs:
            gp = pmul(gp, binomial_poly(c, d))
        polys[gam] = gp
        total = pmul(total, gp)
    out = []
    for gam, gp in sorted(polys.items()):
        other, rem = pdivmod(total, gp)
        _, s, _ = pext_gcd(other, gp)
        # numer/total = R/gp + (rest), with R = numer * s mod gp
        _, R = pdivmod(pmul(numer, s), gp)
        fs = groups[gam]
        L = lcm(*[d for _, d in fs])
        n = len(fs)
        C = fs[0][0] ** (L // fs[0][1])
        Rp = R
        for c, d in fs:
            geo = [Fraction(0)] * (L - d + 1)
            for j in range(L // d):
                geo[d * j] = c**j
            Rp = pmul(Rp, geo)
        fam = Family(side, gam, L, C)
        for r in range(L):
            acc: list[Fraction] = []
            i = 0
            while r + i * L < len(Rp):
                coef = Rp[r + i * L]
                if coef:
                    acc = padd(acc, [x * coef / C**i for x in _binom_poly(n, i)])
                i += 1
            if acc:
                fam.residues[r] = acc
        fam.valid_from = max(len(Rp) - 1, 0)
        if fam.residues:
            out.append(fam)
    return out


def _log_q(c: Fraction, q: int) -> int:
    """Integer e with c = q^(-e)."""
    e = 0
    x = Fraction(c)
    while x < 1:
        x *= q
        e += 1
    while x > 1:
        x /= q
        e -= 1
    if x != 1:
        raise SeriesError(f"{c} is not a power of {q}")
    return e


def asymptotic_families(num: dict[int, Fraction], factors, q: int, side: str) -> list[Family]:
    """Exponential-polynomial families for the positive ('pos', powers t^m) or
    negative ('neg', powers t^-m) side of the expansion."""
    sf = split(num, factors)
    if side == "pos":
        fams = _families_one_side(sf.part_pos, sf.plus_factors, q, "pos")
        offset = sf.shift  # coefficient of t^m is series index m - shift
    else:
        r = len(sf.part_neg) - 1
        k = len(sf.e_poly) - 1
        numer = list(reversed(sf.part_neg)) if sf.part_neg else []
        fams = _families_one_side(numer, sf.minus_factors, q, "neg")
        # u-index j corresponds to t^(top - j), i.e. negative-side index m = j - top
        offset = -(sf.shift + r - k)
    out = []
    for fam in fams:
        shifted = Family(fam.side, fam.gamma, fam.period, fam.base)
        for r0, poly in fam.residues.items():
            m0 = r0 + offset
            r1 = m0 % fam.period
            delta = (m0 - r1) // fam.period  # m = r1 + (K + delta) * L
            # value at index m: P(K) base^K with K = K' - delta
            newp = _poly_in_K_shift(poly, -delta)
            newp = [x * fam.base ** (-delta) for x in newp]
            shifted.residues[r1] = _trim(newp)
        shifted.residues = {k: v for k, v in sorted(shifted.residues.items()) if v}
        shifted.valid_from = fam.valid_from + offset
        for key in shifted.residues:
            shifted.residues[key] = [x * sf.scalar for x in shifted.residues[key]]
        if shifted.residues:
            out.append(shifted)
    return out
