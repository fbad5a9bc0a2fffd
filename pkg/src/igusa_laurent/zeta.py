"""First-quadrant local zeta function, its poles, series and asymptotics."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .fan import Cone, Fan, attainable_fan, fundamental_lattice_points, refine_to_simple
from .finite_field import face_count, is_nondegenerate_mod_p
from .laurent import LaurentPolynomial, rational_str
from .polytope import Face, NewtonPolytope, cross, newton_polytope
from .rational_qt import RationalQT
from .series import Family, asymptotic_families, laurent_coefficients


class DegenerateError(ValueError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class AsymptoticsNotCertified(ValueError):
    pass


def norm(a) -> int:
    return a[0] + a[1]


def L_tau(N, form: str = "standard") -> RationalQT:
    """q^-2((q-1)^2 - N(1-t)/(1-q^-1 t)); N an integer or a symbol name.

    form="printed" gives the variant with leading constant q^2 - 1.
    """
    Nq = RationalQT.symbol(N) if isinstance(N, str) else RationalQT.constant(N)
    if form == "standard":
        lead = RationalQT({(0, 0, ()): Fraction(1), (-1, 0, ()): Fraction(-2), (-2, 0, ()): Fraction(1)})
    elif form == "printed":
        lead = RationalQT({(0, 0, ()): Fraction(1), (-2, 0, ()): Fraction(-1)})
    else:
        raise ValueError(f"unknown form {form!r}")
    one_minus_t = RationalQT({(0, 0, ()): Fraction(1), (0, 1, ()): Fraction(-1)})
    tail = RationalQT.monomial(1, -2) * Nq * one_minus_t * RationalQT.geometric(1, 1)
    return (lead - tail).reduced()


def S_tau(cone: Cone, P: NewtonPolytope) -> RationalQT:
    """Lattice-point generating function of the relative interior of a cone,
    weighted by q^-|a| t^d(a)."""
    gens = cone.generators
    total_q = sum(norm(a) for a in gens)
    total_d = sum(P.d(a) for a in gens)
    num = RationalQT()
    for h in fundamental_lattice_points(cone):
        num = num + RationalQT.monomial(1, norm(h) - total_q, total_d - P.d(h))
    for a in gens:
        num = num * RationalQT.geometric(norm(a), P.d(a))
    return num


def S_tau_shifted(cone: Cone, P: NewtonPolytope, e: int) -> RationalQT:
    """Same sum restricted to lattice points a with a1, a2 >= e."""
    if e <= 0:
        return S_tau(cone, P)
    if cone.dim == 1:
        g = cone.generators[0]
        if min(g) == 0:
            return RationalQT()
        n0 = max(1, max(ceil(e / gi) for gi in g))
        return RationalQT.monomial(1, -n0 * norm(g), n0 * P.d(g)) * RationalQT.geometric(norm(g), P.d(g))
    g1, g2 = cone.generators
    w = [(norm(g1), P.d(g1)), (norm(g2), P.d(g2))]
    total = RationalQT()
    s = (g1[0] + g2[0], g1[1] + g2[1])
    for h in fundamental_lattice_points(cone):
        hp = (s[0] - h[0], s[1] - h[1])  # interior representative with coordinates in (0, 1]
        base = (-norm(hp), P.d(hp))
        r = [e - hp[0], e - hp[1]]
        K = 0
        for i in range(2):
            if g2[i] > 0 and r[i] > 0:
                K = max(K, ceil(r[i] / g2[i]))

        def row_start(n2):
            b = 0
            for i in range(2):
                need = r[i] - g2[i] * n2
                if need > 0:
                    if g1[i] == 0:
                        return None
                    b = max(b, ceil(need / g1[i]))
            return b

        for n2 in range(K):
            b = row_start(n2)
            if b is None:
                continue
            total = total + RationalQT.monomial(
                1, base[0] - n2 * w[1][0] - b * w[0][0], base[1] + n2 * w[1][1] + b * w[0][1]
            ) * RationalQT.geometric(*w[0])
        b = row_start(K)
        if b is not None:
            total = total + RationalQT.monomial(
                1, base[0] - K * w[1][0] - b * w[0][0], base[1] + K * w[1][1] + b * w[0][1]
            ) * RationalQT.geometric(*w[0]) * RationalQT.geometric(*w[1])
    return total


def face_symbol(face: Face) -> str:
    return "N_" + ("Gamma" if face.dim == 2 else face.label())


@dataclass
class ZetaRow:
    cone: Cone
    face: Face
    N: int | str
    L: RationalQT
    S: RationalQT

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.cone.generators],
                "face": self.face.to_json(), "N": self.N if isinstance(self.N, str) else self.N,
                "L": self.L.to_json(), "S": self.S.to_json(), "L_text": str(self.L),
                "S_text": str(self.S)}


@dataclass
class ZetaResult:
    f: LaurentPolynomial
    p: int | None
    ball: int
    gamma_term: RationalQT
    gamma_N: int | str
    rows: list[ZetaRow]
    total: RationalQT
    fan: Fan

    def to_json(self) -> dict:
        return {"p": self.p, "symbolic": self.p is None, "ball": self.ball,
                "L_Gamma": self.gamma_term.to_json(), "N_Gamma": self.gamma_N,
                "rows": [r.to_json() for r in self.rows],
                "zeta": self.total.to_json(), "zeta_text": str(self.total)}


def zeta_first_quadrant(f: LaurentPolynomial, p: int | None = None, *, ball: int = 0,
                        fan: Fan | None = None, form: str = "standard",
                        threads: int = 1, check: bool = True) -> ZetaResult:
    """Z(s) = integral of |f|^s over (p^ball R minus the axes)^2, for ball >= 0.

    With p=None every torus count stays a symbol named after its face; vertex faces
    have count 0 regardless of p.
    """
    if ball < 0:
        raise ValueError("ball exponent must be >= 0")
    P = newton_polytope(f)
    if p is not None and check:
        res = is_nondegenerate_mod_p(f, p)
        if not res:
            raise DegenerateError(f"f is degenerate modulo {p} on face {res.face.label()}", res)
    F = fan if fan is not None else attainable_fan(P)

    def count(face: Face):
        if face.dim == 0:
            return 0
        if p is None:
            return face_symbol(face)
        return face_count(f, face, p, threads).count

    full = P.full_face()
    nG = count(full)
    lg = L_tau(nG, form) if ball == 0 else RationalQT()
    total = lg
    rows = []
    for cone in F.cones:
        N = count(cone.face_tau)
        L = L_tau(N, form)
        S = S_tau(cone, P) if ball == 0 else S_tau_shifted(cone, P, ball)
        rows.append(ZetaRow(cone, cone.face_tau, N, L, S))
        total = total + L * S
    return ZetaResult(f, p, ball, lg, nG, rows, total.reduced(), F)


# ---- poles -------------------------------------------------------------------

@dataclass(frozen=True)
class PoleDatum:
    real_part: Fraction
    period_d: int
    multiplicity: int
    source: tuple[int, int] | str

    def to_json(self) -> dict:
        src = list(self.source) if isinstance(self.source, tuple) else self.source
        return {"real": rational_str(self.real_part), "period_d": self.period_d,
                "mult": self.multiplicity, "source": src}


@dataclass
class ConvergenceStrip:
    beta: Fraction
    alpha: Fraction | None  # None encodes +infinity
    alpha_max: Fraction | None
    A: list[Fraction] = field(default_factory=list)
    B: list[Fraction] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"beta": rational_str(self.beta),
                "alpha": "inf" if self.alpha is None else rational_str(self.alpha),
                "alpha_max": None if self.alpha_max is None else rational_str(self.alpha_max),
                "A": [rational_str(x) for x in self.A], "B": [rational_str(x) for x in self.B]}


def edge_ratio(a, P: NewtonPolytope) -> Fraction | None:
    d = P.d(a)
    if d == 0:
        return None
    return Fraction(norm(a), -d)


def multiplicity(F: Fan, P: NewtonPolytope, value: Fraction) -> int:
    """Largest number of edges of a single cone whose ratio |a|/(-d(a)) equals value."""
    best = 0
    for c in F.cones:
        best = max(best, sum(1 for a in c.generators if edge_ratio(a, P) == value))
    return best


def candidate_poles(F: Fan, P: NewtonPolytope) -> tuple[list[PoleDatum], ConvergenceStrip]:
    poles = []
    A, B = set(), set()
    for a in F.rays():
        d = P.d(a)
        if d == 0:
            continue
        r = Fraction(norm(a), -d)
        (A if d < 0 else B).add(r)
        poles.append(PoleDatum(r, abs(d), multiplicity(F, P, r), a))
    poles.append(PoleDatum(Fraction(-1), 1, max(1, multiplicity(F, P, Fraction(-1))),
                           "constant -1 family"))
    strip = ConvergenceStrip(
        beta=max(B | {Fraction(-1)}),
        alpha=min(A) if A else None,
        alpha_max=max(A) if A else None,
        A=sorted(A), B=sorted(B),
    )
    return poles, strip


def pole_multiplicities(F: Fan, P: NewtonPolytope, strip: ConvergenceStrip) -> dict:
    """mu(alpha), mu(beta), mu(alpha_max); None where not applicable."""
    out = {"alpha": None, "beta": None, "alpha_max": None}
    if strip.A:
        out["alpha"] = multiplicity(F, P, strip.alpha)
        out["alpha_max"] = multiplicity(F, P, strip.alpha_max)
    if strip.B:
        out["beta"] = max(1, multiplicity(F, P, strip.beta))
    return out


def denominator_real_parts(Z: RationalQT) -> set[Fraction]:
    return {Fraction(-e, d) for e, d, _ in Z.reduced().factors() if d != 0}


# ---- series ------------------------------------------------------------------

@dataclass
class ValuationSpectrum:
    """coefficients[k] = volume of {ord f = k}, i.e. |f| = q^-k, for |k| <= M."""

    p: int
    M: int
    coefficients: dict[int, Fraction]

    def V(self, m: int) -> Fraction:
        """Volume of {|f| = q^m}."""
        return self.coefficients.get(-m, Fraction(0))

    def positive_side(self) -> dict[int, Fraction]:
        """m -> V_{-m} for 0 < m <= M (small |f|)."""
        return {k: c for k, c in self.coefficients.items() if k > 0}

    def negative_side(self) -> dict[int, Fraction]:
        """m -> V_m for 0 < m <= M (large |f|)."""
        return {-k: c for k, c in self.coefficients.items() if k < 0}

    def to_json(self) -> dict:
        return {"p": self.p, "M": self.M,
                "coefficients": [{"ord": k, "volume": rational_str(c)}
                                 for k, c in sorted(self.coefficients.items())]}


def _numeric(Z: RationalQT, q: int, values: dict | None = None):
    if values:
        Z = Z.substitute(values)
    return Z.numeric_in_t(q)


def series_expand(Z: RationalQT, q: int, M: int, values: dict | None = None) -> ValuationSpectrum:
    """Exact coefficients of t^k, |k| <= M, in the expansion valid on the convergence strip."""
    num, factors = _numeric(Z, q, values)
    coeffs = laurent_coefficients(num, factors, -M, M)
    return ValuationSpectrum(q, M, coeffs)


def asymptotic_terms(Z: RationalQT, q: int, side: str, strip: ConvergenceStrip | None = None,
                     mu_beta: int | None = None, values: dict | None = None) -> list[Family]:
    """Exponential-polynomial families of V_{-m} (side 'pos') or V_m (side 'neg').

    On the 'pos' side, beta = -1 with multiplicity 1 is outside the certified range.
    """
    if side not in ("pos", "neg"):
        raise ValueError("side must be 'pos' or 'neg'")
    if side == "pos" and strip is not None and strip.beta == -1 and (mu_beta or 1) == 1:
        raise AsymptoticsNotCertified("asymptotics not certified: beta_f = -1 with multiplicity 1")
    num, factors = _numeric(Z, q, values)
    return asymptotic_families(num, factors, q, side)


def family_to_json(fam: Family) -> dict:
    return {"side": fam.side, "gamma": rational_str(fam.gamma), "period": fam.period,
            "base": rational_str(fam.base), "j": fam.degree, "valid_from": fam.valid_from,
            "residues": {str(r): [rational_str(c) for c in poly] for r, poly in fam.residues.items()}}


def analyse(f: LaurentPolynomial):
    """Polytope, F_A, F_+ and strip data in one call."""
    P = newton_polytope(f)
    FA = attainable_fan(P)
    FP = refine_to_simple(FA, P)
    return P, FA, FP


__all__ = [
    "L_tau", "S_tau", "S_tau_shifted", "zeta_first_quadrant", "candidate_poles",
    "pole_multiplicities", "series_expand", "asymptotic_terms", "ValuationSpectrum",
    "PoleDatum", "ConvergenceStrip", "DegenerateError", "AsymptoticsNotCertified", "cross",
]
