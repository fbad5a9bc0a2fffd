"""Ground-truth p-adic integration over Q_p by residue-box refinement.

A residue box is  x_i in p^(a_i) (c_i + p^k Z_p)  with c_i a unit mod p^k. On a
box, f is written as a constant, a linear part and a remainder of known order;
this decides when ord f is constant, when f is equidistributed on a coset
(Hensel), and otherwise the box is split into p^2 children.

For non-compact supports the valuation strata a = (a_1, a_2) are grouped into
families a_0 + n g along directions in which the normalized function changes
only by terms of large p-order. Every member of a family then has the same box
analysis, so the family is summed as a geometric series in n.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import (
    CharacterSpec, ComplexValue, RootSum, fractional_part_p, gauss_sum,
    primitive_characters, unit_residue,
)
from .laurent import LaurentPolynomial
from .parallel import parallel_map
from .series import laurent_coefficients

INF = 10**9


class UnresolvedMassError(ValueError):
    def __init__(self, message, mass):
        super().__init__(message)
        self.mass = mass


class ConductorBoundNotReached(ValueError):
    pass


class EnumerationBudgetError(ValueError):
    pass


# ---- support specifications ---------------------------------------------------

@dataclass(frozen=True)
class Phi:
    """Indicator of a union of valuation strata or of one residue box.

    kind "strata": a_i ranges over [lo_i, hi_i] (hi None means unbounded), and
    x_i ranges over p^(a_i) Z_p^*.  kind "box": a single residue box.
    """

    kind: str
    ranges: tuple = ()
    box: tuple = ()  # (a1, c1, a2, c2, k)
    text: str = ""

    @property
    def compact(self) -> bool:
        return self.kind == "box" or all(hi is not None for _, hi in self.ranges)

    def contains_stratum(self, a) -> bool:
        return all(lo <= x and (hi is None or x <= hi) for x, (lo, hi) in zip(a, self.ranges))

    def volume(self, p: int) -> Fraction:
        if self.kind == "box":
            a1, _, a2, _, k = self.box
            return Fraction(1, p ** (2 * k)) * Fraction(p) ** (-a1 - a2)
        out = Fraction(1)
        for lo, hi in self.ranges:
            top = Fraction(0) if hi is None else Fraction(p) ** (-hi - 1)
            out *= Fraction(p) ** (-lo) - top
        return out


def parse_phi(text: str, p: int | None = None) -> Phi:
    """`unit2`, `ball e`, `box a1:c1,a2:c2,k` or `strata lo1:hi1,lo2:hi2` (hi may be `*`).

    In a box spec c_i is the unit residue mod p^k written in decimal.
    """
    s = " ".join(text.strip().split())
    if s == "unit2":
        return Phi("strata", ((0, 0), (0, 0)), text=s)
    if s.startswith("ball"):
        try:
            e = int(s[4:])
        except ValueError:
            raise ValueError(f"bad ball spec {text!r}") from None
        if e < 0:
            raise ValueError("ball exponent must be >= 0")
        return Phi("strata", ((e, None), (e, None)), text=s)
    if s.startswith("strata"):
        try:
            parts = s[6:].replace(" ", "").split(",")
            rng = []
            for part in parts:
                lo, hi = part.split(":")
                rng.append((int(lo), None if hi == "*" else int(hi)))
        except ValueError:
            raise ValueError(f"bad strata spec {text!r}") from None
        if len(rng) != 2 or any(lo < 0 or (hi is not None and hi < lo) for lo, hi in rng):
            raise ValueError(f"bad strata spec {text!r}")
        return Phi("strata", tuple(rng), text=s)
    if s.startswith("box"):
        try:
            first, second, k = s[3:].replace(" ", "").split(",")
            a1, c1 = map(int, first.split(":"))
            a2, c2 = map(int, second.split(":"))
            k = int(k)
        except ValueError:
            raise ValueError(f"bad box spec {text!r}") from None
        if k < 1:
            raise ValueError("box depth k must be >= 1")
        if p is not None:
            for c in (c1, c2):
                if not (0 < c < p**k) or c % p == 0:
                    raise ValueError(f"box residue {c} is not a unit mod {p}^{k}")
        return Phi("box", box=(a1, c1, a2, c2, k), text=s)
    raise ValueError(f"unknown support spec {text!r}")


# ---- box analysis -------------------------------------------------------------

def vp(x: Fraction, p: int) -> int:
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass
class BoxData:
    F0: Fraction
    order: int  # ord F0
    lam: int  # order of the linear part
    bound: int  # lower bound for the order of everything past the linear part
    pert_limited: bool


def analyse_box(terms, mu0: int, pert: int | None, p: int, c1: int, c2: int, k: int) -> BoxData:
    """terms: (coefficient, exponent) of the main part; pert: order of the perturbation."""
    F0 = d1 = d2 = Fraction(0)
    for coef, (l1, l2) in terms:
        m = coef * Fraction(c1) ** l1 * Fraction(c2) ** l2
        F0 += m
        if l1:
            d1 += m * Fraction(l1, c1)
        if l2:
            d2 += m * Fraction(l2, c2)
    lam = k + min(vp(d1, p), vp(d2, p))
    second = mu0 + 2 * k
    bound = second if pert is None else min(second, pert)
    return BoxData(F0, vp(F0, p), min(lam, INF), bound, pert is not None and pert <= second)


def _children(p: int, c1: int, c2: int, k: int):
    step = p**k
    for i in range(p):
        for j in range(p):
            yield c1 + i * step, c2 + j * step, k + 1


def _roots(p: int):
    return [(c1, c2, 1) for c1 in range(1, p) for c2 in range(1, p)]


@dataclass
class StratumResult:
    """Normalized box statistics for one stratum or one family base.

    masses are relative to the v-coordinates (the unit torus has mass (1-1/p)^2).
    ords[o][(r, res)]: mass where ord = o and the angular component is res mod p^r.
    hensel[l]: mass equidistributed on p^l Z_p.
    """

    ords: dict = field(default_factory=dict)
    hensel: dict = field(default_factory=dict)
    psi: RootSum = field(default_factory=RootSum)
    dropped: Fraction = Fraction(0)
    unresolved: Fraction = Fraction(0)
    pert_limited: bool = False


def stratum_distribution(terms, pert, p, depth_cap, drop_at=None, conductor=0, roots=None) -> StratumResult:
    """Law of (ord f, ac f mod p^conductor) on the torus part of one stratum."""
    res = StratumResult()
    mu0 = min(vp(c, p) for c, _ in terms)
    stack = list(roots or _roots(p))
    while stack:
        c1, c2, k = stack.pop()
        mass = Fraction(1, p ** (2 * k))
        b = analyse_box(terms, mu0, pert, p, c1, c2, k)
        top = min(b.lam, b.bound)
        if drop_at is not None and b.order >= drop_at and top >= drop_at:
            res.dropped += mass
            continue
        if b.order < top:
            r = top - b.order
            if conductor == 0 or r >= conductor or b.lam < b.bound:
                r_eff = min(r, conductor)
                ac = b.F0 / Fraction(p) ** b.order
                key = (r_eff, unit_residue(ac, p, r_eff) if r_eff else 0)
                slot = res.ords.setdefault(b.order, {})
                slot[key] = slot.get(key, Fraction(0)) + mass
                continue
        elif b.lam < b.bound:
            res.hensel[b.lam] = res.hensel.get(b.lam, Fraction(0)) + mass
            continue
        if k >= depth_cap or (b.pert_limited and b.lam >= b.bound):
            res.unresolved += mass
            res.pert_limited |= b.pert_limited
            continue
        stack.extend(_children(p, c1, c2, k))
    return res


def stratum_psi(terms, p, m_eff: int, u, depth_cap, roots=None) -> StratumResult:
    """Integral of Psi(u p^-m_eff f) over the torus part of one stratum."""
    res = StratumResult()
    mu0 = min(vp(c, p) for c, _ in terms)
    stack = list(roots or _roots(p))
    z = Fraction(u) * Fraction(p) ** (-m_eff)
    while stack:
        c1, c2, k = stack.pop()
        mass = Fraction(1, p ** (2 * k))
        b = analyse_box(terms, mu0, None, p, c1, c2, k)
        top = min(b.lam, b.bound)
        if top >= m_eff:
            res.psi.add_term(fractional_part_p(z * b.F0, p), mass)
            continue
        if b.lam < b.bound:
            continue  # equidistributed on a coset p^lam Z_p with lam < m: integral 0
        if k >= depth_cap:
            res.unresolved += mass
            continue
        stack.extend(_children(p, c1, c2, k))
    return res


# ---- strata and families ------------------------------------------------------

def _dot(a, b) -> int:
    return a[0] * b[0] + a[1] * b[1]


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _primitive(a):
    g = math.gcd(a[0], a[1])
    return (a[0] // g, a[1] // g)


def linearity_rays(support) -> list[tuple[int, int]]:
    """e1, e2 and every positive direction where two monomials tie, by angle."""
    rays = {(1, 0), (0, 1)}
    pts = sorted(support)
    for i, l in enumerate(pts):
        for l2 in pts[i + 1:]:
            v = (l[0] - l2[0], l[1] - l2[1])
            for a in ((v[1], -v[0]), (-v[1], v[0])):
                if a[0] > 0 and a[1] > 0:
                    rays.add(_primitive(a))
    return sorted(rays, key=lambda a: Fraction(a[1], a[0]) if a[0] else Fraction(10**18))


def parallelogram_points(g1, g2) -> list[tuple[int, int]]:
    """Lattice points s1 g1 + s2 g2 with 0 < s1, s2 <= 1."""
    D = _cross(g1, g2)
    out = []
    for x in range(0, g1[0] + g2[0] + 1):
        for y in range(0, g1[1] + g2[1] + 1):
            s1, s2 = _cross((x, y), g2), _cross(g1, (x, y))
            if 0 < s1 <= D and 0 < s2 <= D:
                out.append((x, y))
    return out


@dataclass(frozen=True)
class Family:
    base: tuple[int, int]
    directions: tuple


def strata_families(support, T: int):
    """Partition of the closed first quadrant of strata into single strata and families."""
    out = [Family((0, 0), ())]
    rays = linearity_rays(support)
    for g in rays:
        out.extend(Family((n * g[0], n * g[1]), ()) for n in range(1, T))
        out.append(Family((T * g[0], T * g[1]), (g,)))
    for g1, g2 in zip(rays, rays[1:]):
        for h in parallelogram_points(g1, g2):
            def at(n1, n2):
                return (h[0] + n1 * g1[0] + n2 * g2[0], h[1] + n1 * g1[1] + n2 * g2[1])
            for n1 in range(T):
                for n2 in range(T):
                    out.append(Family(at(n1, n2), ()))
            for j in range(T):
                out.append(Family(at(T, j), (g1,)))
                out.append(Family(at(j, T), (g2,)))
            out.append(Family(at(T, T), (g1, g2)))
    return out


def _dmin(a, f: LaurentPolynomial) -> int:
    return min(_dot(a, l) for l in f)


def normalized_terms(f: LaurentPolynomial, a, directions, p):
    """Main terms of p^-d(a) f(p^a v) (constant along the family) and the perturbation order."""
    d0 = _dmin(a, f)
    dirs = [(g, _dmin(g, f)) for g in directions]
    main, pert = [], None
    for l, c in f.items():
        eps = _dot(a, l) - d0
        coef = c * Fraction(p) ** eps
        if all(_dot(g, l) == dg for g, dg in dirs):
            main.append((coef, l))
        else:
            o = vp(coef, p)
            pert = o if pert is None else min(pert, o)
    return d0, main, pert


@dataclass
class GeneratingFunction:
    """sum of t^e c / prod(1 - coef t^d) grouped by denominator signature."""

    groups: dict = field(default_factory=lambda: defaultdict(lambda: defaultdict(Fraction)))

    def add(self, sig, te: int, c: Fraction):
        if c:
            self.groups[tuple(sorted(sig))][te] += c

    def coefficients(self, lo: int, hi: int) -> dict[int, Fraction]:
        out = {m: Fraction(0) for m in range(lo, hi + 1)}
        for sig, num in sorted(self.groups.items()):
            num = {k: v for k, v in num.items() if v}
            if not num:
                continue
            for m, c in laurent_coefficients(num, list(sig), lo, hi).items():
                out[m] += c
        return out

    def at_one(self) -> Fraction:
        total = Fraction(0)
        for sig, num in self.groups.items():
            v = sum(num.values(), Fraction(0))
            for c, _ in sig:
                v /= 1 - c
            total += v
        return total

    def min_exponent(self):
        exps = [e for num in self.groups.values() for e, c in num.items() if c]
        return min(exps) if exps else 0


@dataclass
class OracleSpectrum:
    """coefficients[k] = volume of {x in supp Phi : ord f(x) = k} for -M <= k <= M."""

    p: int
    M: int
    coefficients: dict[int, Fraction]
    unresolved_mass: Fraction
    dropped_mass: Fraction
    resolved_mass: Fraction
    threshold: int = 0

    def V(self, m: int) -> Fraction:
        """Volume of {|f| = p^m}."""
        return self.coefficients.get(-m, Fraction(0))

    @property
    def mass_beyond_M(self) -> Fraction:
        """Dropped boxes plus the resolved tail that falls outside the listed orders."""
        return self.dropped_mass + self.resolved_mass - sum(self.coefficients.values(), Fraction(0))

    def to_json(self) -> dict:
        from .laurent import rational_str

        return {"p": self.p, "M": self.M,
                "coefficients": [{"ord": k, "volume": rational_str(c)}
                                 for k, c in sorted(self.coefficients.items())],
                "unresolved_mass": rational_str(self.unresolved_mass),
                "mass_beyond_M": rational_str(self.mass_beyond_M),
                "resolved_mass": rational_str(self.resolved_mass)}


def _family_job(args):
    f, fam, p, depth_cap, M = args
    d0, main, pert = normalized_terms(f, fam.base, fam.directions, p)
    drop = None
    if all(_dmin(g, f) >= 0 for g in fam.directions):
        drop = M + 1 - d0
    return d0, stratum_distribution(main, pert, p, depth_cap, drop)


def _box_roots(phi: Phi, p: int):
    a1, c1, a2, c2, k = phi.box
    return (a1, a2), [(c1, c2, k)]


def _compact_jobs(f, phi: Phi):
    if phi.kind == "box":
        a, roots = _box_roots(phi, 0)
        return [(a, roots)]
    (lo1, hi1), (lo2, hi2) = phi.ranges
    return [((a1, a2), None) for a1 in range(lo1, hi1 + 1) for a2 in range(lo2, hi2 + 1)]


def valuation_spectrum_bruteforce(f: LaurentPolynomial, phi: Phi | str, p: int, M: int,
                                  depth_cap: int | None = None, threads: int = 1,
                                  max_threshold: int = 64) -> OracleSpectrum:
    """Exact volumes of the level sets of |f|_p on supp Phi, |ord| <= M."""
    if isinstance(phi, str):
        phi = parse_phi(phi, p)
    depth_cap = depth_cap if depth_cap is not None else M + 4
    if phi.compact:
        return _compact_spectrum(f, phi, p, M, depth_cap, threads)
    finite = [hi for _, hi in phi.ranges if hi is not None]
    T = max([3] + [lo for lo, _ in phi.ranges] + [h + 1 for h in finite])
    while True:
        fams = [fam for fam in strata_families(f, T) if phi.contains_stratum(fam.base)]
        results = parallel_map(_family_job, [(f, fam, p, depth_cap, M) for fam in fams], threads)
        if not any(r.pert_limited for _, r in results) or 2 * T > max_threshold:
            break
        T *= 2
    gf = GeneratingFunction()
    unresolved = dropped = Fraction(0)
    for fam, (d0, r) in zip(fams, results):
        a = fam.base
        weight = Fraction(1, p ** (a[0] + a[1]))
        sig = [(Fraction(1, p ** (g[0] + g[1])), _dmin(g, f)) for g in fam.directions]
        scale = weight
        for c, _ in sig:
            scale /= 1 - c
        _add_stratum(gf, r, sig, d0, weight, p)
        unresolved += r.unresolved * scale
        dropped += r.dropped * scale
    coeffs = gf.coefficients(-M, M)
    return OracleSpectrum(p, M, coeffs, unresolved, dropped, gf.at_one(), T)


def _add_stratum(gf: GeneratingFunction, r: StratumResult, sig, d0, weight, p):
    for o, parts in r.ords.items():
        gf.add(sig, d0 + o, weight * sum(parts.values(), Fraction(0)))
    for lam, mass in r.hensel.items():
        gf.add(list(sig) + [(Fraction(1, p), 1)], d0 + lam, weight * mass * (1 - Fraction(1, p)))


def _compact_job(args):
    f, a, roots, p, depth_cap, M, conductor = args
    d0, main, _ = normalized_terms(f, a, (), p)
    return d0, stratum_distribution(main, None, p, depth_cap, M + 1 - d0, conductor, roots)


def _compact_results(f, phi, p, M, depth_cap, threads, conductor=0):
    jobs = _compact_jobs(f, phi)
    return jobs, parallel_map(
        _compact_job, [(f, a, roots, p, depth_cap, M, conductor) for a, roots in jobs], threads)


def _compact_spectrum(f, phi, p, M, depth_cap, threads) -> OracleSpectrum:
    jobs, results = _compact_results(f, phi, p, M, depth_cap, threads)
    gf = GeneratingFunction()
    unresolved = dropped = Fraction(0)
    for (a, _), (d0, r) in zip(jobs, results):
        weight = Fraction(p) ** (-a[0] - a[1])
        _add_stratum(gf, r, (), d0, weight, p)
        unresolved += r.unresolved * weight
        dropped += r.dropped * weight
    lo = min(-M, gf.min_exponent())
    coeffs = {k: v for k, v in gf.coefficients(lo, M).items() if k >= -M or v}
    return OracleSpectrum(p, M, coeffs, unresolved, dropped, gf.at_one())


# ---- twisted coefficients -----------------------------------------------------

@dataclass
class TwistedData:
    """Exact law of (ord f, ac f) on a compact support, enough for every character
    of conductor <= max_conductor and every ord <= M."""

    p: int
    M: int
    max_conductor: int
    ords: dict  # ord -> {(r, residue): mass}
    hensel: dict  # ord offset -> mass (only feeds the trivial character)
    unresolved: Fraction
    dropped: Fraction

    def coefficient(self, chi: CharacterSpec, m: int) -> RootSum:
        """Coefficient of t^m in Z(s, chi)."""
        out = RootSum()
        c = chi.conductor
        if c > self.max_conductor:
            raise ValueError("character conductor exceeds the computed resolution")
        for (r, res), mass in self.ords.get(m, {}).items():
            if r >= c:
                out.add_term(chi.angle(res % self.p**c) if c else 0, mass)
        if c == 0:
            p = self.p
            for lam, mass in self.hensel.items():
                if m >= lam:
                    out.add_term(0, mass * (1 - Fraction(1, p)) * Fraction(1, p ** (m - lam)))
        return out

    def min_order(self) -> int:
        keys = [o for o, d in self.ords.items() if d] + list(self.hensel)
        return min(keys) if keys else 0


def twisted_data(f: LaurentPolynomial, phi: Phi | str, p: int, M: int, max_conductor: int,
                 depth_cap: int | None = None, threads: int = 1) -> TwistedData:
    if isinstance(phi, str):
        phi = parse_phi(phi, p)
    if not phi.compact:
        raise ValueError("twisted coefficients need a compact support (unit2, box or bounded strata)")
    depth_cap = depth_cap if depth_cap is not None else M + max_conductor + 4
    jobs, results = _compact_results(f, phi, p, M, depth_cap, threads, max_conductor)
    ords = defaultdict(lambda: defaultdict(Fraction))
    hensel = defaultdict(Fraction)
    unresolved = dropped = Fraction(0)
    for (a, _), (d0, r) in zip(jobs, results):
        weight = Fraction(p) ** (-a[0] - a[1])
        for o, parts in r.ords.items():
            for key, mass in parts.items():
                ords[d0 + o][key] += weight * mass
        for lam, mass in r.hensel.items():
            hensel[d0 + lam] += weight * mass
        unresolved += r.unresolved * weight
        dropped += r.dropped * weight
    return TwistedData(p, M, max_conductor, {k: dict(v) for k, v in ords.items()}, dict(hensel),
                       unresolved, dropped)


def zeta_coefficients_bruteforce(f, phi, p: int, chi: CharacterSpec, M: int,
                                 depth_cap: int | None = None, threads: int = 1) -> dict[int, RootSum]:
    """m -> coefficient of t^m in Z_Phi(s, chi), exact as a sum of roots of unity."""
    if isinstance(phi, str):
        phi = parse_phi(phi, p)
    if chi.is_trivial():
        spec = valuation_spectrum_bruteforce(f, phi, p, M, depth_cap, threads)
        return {m: RootSum.rational(v) for m, v in spec.coefficients.items()}
    data = twisted_data(f, phi, p, M, chi.conductor, depth_cap, threads)
    lo = min(-M, data.min_order())
    return {m: data.coefficient(chi, m) for m in range(lo, M + 1)}


# ---- oscillatory integrals ----------------------------------------------------

@dataclass
class OscillatoryValue:
    exact: RootSum
    value: ComplexValue
    unresolved_mass: Fraction
    tail_mass: Fraction

    def to_json(self) -> dict:
        from .laurent import rational_str

        return {"value": self.value.to_json(), "unresolved_mass": rational_str(self.unresolved_mass),
                "tail_mass": rational_str(self.tail_mass)}


def _psi_job(args):
    f, a, roots, p, m, u, depth_cap = args
    d0, main, _ = normalized_terms(f, a, (), p)
    return stratum_psi(main, p, m - d0, u, depth_cap, roots)


def oscillatory_integral_direct(f: LaurentPolynomial, phi: Phi | str, p: int, m: int, u=1,
                                depth_cap: int | None = None, threads: int = 1,
                                tail_tol: float = 1e-15) -> OscillatoryValue:
    """Integral of Phi(x) Psi(z f(x)) with z = u p^-m.

    Unbounded strata ranges are truncated once the remaining volume is below
    tail_tol; that volume is added to the error bound.
    """
    if isinstance(phi, str):
        phi = parse_phi(phi, p)
    if Fraction(u).numerator % p == 0 or Fraction(u).denominator % p == 0:
        raise ValueError("u must be a p-adic unit")
    depth_cap = depth_cap if depth_cap is not None else abs(m) + 8
    tail = Fraction(0)
    if phi.kind == "box":
        jobs = [_box_roots(phi, p)]
    else:
        rng = []
        for lo, hi in phi.ranges:
            if hi is None:
                hi = lo
                while Fraction(p) ** (-hi - 1) > Fraction(tail_tol):
                    hi += 1
            rng.append((lo, hi))
        trunc = Phi("strata", tuple(rng))
        tail = phi.volume(p) - trunc.volume(p)
        jobs = [((a1, a2), None) for a1 in range(rng[0][0], rng[0][1] + 1)
                for a2 in range(rng[1][0], rng[1][1] + 1)]
    results = parallel_map(_psi_job, [(f, a, roots, p, m, u, depth_cap) for a, roots in jobs], threads)
    total = RootSum()
    unresolved = Fraction(0)
    for (a, _), r in zip(jobs, results):
        weight = Fraction(p) ** (-a[0] - a[1])
        total = total + r.psi * weight
        unresolved += r.unresolved * weight
    cv = total.to_complex()
    cv = ComplexValue(cv.re, cv.im, cv.err + float(unresolved) + float(tail))
    return OscillatoryValue(total, cv, unresolved, tail)


def _modular_terms(f: LaurentPolynomial, p: int, mod: int):
    out = []
    for (l1, l2), c in f.items():
        if c.denominator % p == 0:
            raise ValueError("coefficients must be p-adic integers")
        out.append(((l1, l2), c.numerator * pow(c.denominator, -1, mod) % mod))
    return out


def _one_variable_histogram(terms, p, m, unit: bool) -> dict[int, int]:
    mod = p**m
    hist: dict[int, int] = defaultdict(int)
    for x in range(mod):
        if unit and x % p == 0:
            continue
        v = sum(c * pow(x, e, mod) for e, c in terms)
        hist[v % mod] += 1
    return hist


def _hist_sum(hist, u, mod, scale) -> ComplexValue:
    rs = RootSum()
    for r, n in hist.items():
        rs.add_term(Fraction(u * r % mod, mod), Fraction(n) * scale)
    return rs.to_complex()


def exponential_sum(f: LaurentPolynomial, i: int, p: int, m: int, u: int = 1,
                    budget: int = 4_000_000) -> ComplexValue:
    """p^-2m times the sum of Psi(u p^-m f(x)) over x mod p^m, with x_(i+1) a unit and
    the other coordinate arbitrary. f may have negative exponents only in x_(i+1)."""
    if m <= 0:
        raise ValueError("m must be >= 1")
    if i not in (0, 1):
        raise ValueError("side must be 0 or 1")
    if u % p == 0:
        raise ValueError("u must be a unit")
    other = 1 - i
    if any(l[other] < 0 for l in f):
        raise ValueError(f"f has a denominator in x{other + 1}; use side {other}")
    mod = p**m
    terms = _modular_terms(f, p, mod)
    scale = Fraction(1, mod * mod)
    if all(l[0] == 0 or l[1] == 0 for l, _ in terms):
        const = sum(c for l, c in terms if l == (0, 0)) % mod
        unit_terms = [(l[i], c) for l, c in terms if l[i] != 0]
        free_terms = [(l[other], c) for l, c in terms if l[other] != 0]
        hu = _one_variable_histogram(unit_terms, p, m, True)
        hf = _one_variable_histogram(free_terms, p, m, False)
        a = _hist_sum(hu, u, mod, Fraction(1, mod))
        b = _hist_sum(hf, u, mod, Fraction(1, mod))
        shift = RootSum({Fraction(u * const % mod, mod): 1}).to_complex()
        return a * b * shift
    if (p - 1) * p ** (m - 1) * mod > budget:
        raise EnumerationBudgetError(f"p^2m = {mod * mod} residues exceed the enumeration budget")
    hist: dict[int, int] = defaultdict(int)
    for x in range(mod):
        for y in range(mod):
            pt = (x, y)
            if pt[i] % p == 0:
                continue
            v = sum(c * pow(x, l1, mod) * pow(y, l2, mod) for (l1, l2), c in terms)
            hist[v % mod] += 1
    return _hist_sum(hist, u, mod, scale)


@dataclass
class ZetaAssemblyResult:
    value: ComplexValue
    exact: RootSum
    trivial_part: Fraction
    largest_conductor_found: int
    bound_reached: bool
    unresolved_mass: Fraction

    def to_json(self) -> dict:
        from .laurent import rational_str

        return {"value": self.value.to_json(), "trivial_part": rational_str(self.trivial_part),
                "largest_conductor_with_nonzero_coefficient": self.largest_conductor_found,
                "conductor_bound_reached": self.bound_reached,
                "unresolved_mass": rational_str(self.unresolved_mass)}


def oscillatory_via_prop4(f: LaurentPolynomial, phi: Phi | str, p: int, u: int, m: int,
                          conductor_bound: int, depth_cap: int | None = None,
                          threads: int = 1) -> ZetaAssemblyResult:
    """E(u p^-m) from zeta coefficients:

        sum_{k >= m} Z_k - Z_{m-1}/(q-1) + sum_{chi != 1} g_{chi^-1} chi(u) Z_{m-c(chi)}(chi)

    where Z_k are trivial-character coefficients and Z(0) is the total volume.
    The conductor level conductor_bound + 1 is also scanned to report whether
    the bound was large enough.
    """
    if isinstance(phi, str):
        phi = parse_phi(phi, p)
    if not phi.compact:
        raise ValueError("the zeta-coefficient assembly needs a compact support")
    top = conductor_bound + 1
    data = twisted_data(f, phi, p, m, top, depth_cap, threads)
    if data.unresolved:
        raise UnresolvedMassError("unresolved mass in the coefficient computation", data.unresolved)
    triv = CharacterSpec(p, 0, 0)
    total = phi.volume(p)
    lo = data.min_order()
    below = sum((data.coefficient(triv, k).rational_part() for k in range(lo, m)), Fraction(0))
    trivial_part = total - below - data.coefficient(triv, m - 1).rational_part() / (p - 1)
    acc = RootSum.rational(trivial_part)
    largest = 0
    reached = True
    for c in range(1, top + 1):
        for chi in primitive_characters(p, c):
            coef = data.coefficient(chi, m - c)
            if coef.is_zero():
                continue
            if c == top:
                reached = False
                continue
            largest = c
            term = gauss_sum(chi.inverse()) * coef
            term = term * RootSum({chi.angle(u): 1})
            acc = acc + term
    if not reached:
        largest = top
    return ZetaAssemblyResult(acc.to_complex(), acc, trivial_part, largest, reached, data.unresolved)


__all__ = [
    "Phi", "parse_phi", "valuation_spectrum_bruteforce", "zeta_coefficients_bruteforce",
    "twisted_data", "oscillatory_integral_direct", "oscillatory_via_prop4", "exponential_sum",
    "OracleSpectrum", "CharacterSpec", "ComplexValue", "RootSum", "UnresolvedMassError",
    "ConductorBoundNotReached", "EnumerationBudgetError",
]
