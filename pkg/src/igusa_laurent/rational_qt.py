"""Rational functions in q and t = q^(-s) with a factored denominator.

The numerator is a Laurent polynomial in q, t whose coefficients are polynomials
in named symbols (the unknown torus counts). The denominator is a multiset of
binomials 1 - q^(-e) t^d, kept factored so pole data can be read off directly.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

# numerator key: (q exponent, t exponent, sorted tuple of symbol names)
Key = tuple[int, int, tuple[str, ...]]
Poly = dict[Key, Fraction]


def _clean(p: Poly) -> Poly:
    return {k: p[k] for k in sorted(p) if p[k] != 0}


def poly_add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Fraction(0)) + sign * c
    return _clean(out)


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: dict[Key, Fraction] = {}
    for (qa, ta, sa), ca in a.items():
        for (qb, tb, sb), cb in b.items():
            k = (qa + qb, ta + tb, tuple(sorted(sa + sb)))
            out[k] = out.get(k, Fraction(0)) + ca * cb
    return _clean(out)


def binomial(e: int, d: int) -> Poly:
    """The polynomial 1 - q^(-e) t^d."""
    return poly_add({(0, 0, ()): Fraction(1)}, {(-e, d, ()): Fraction(1)}, -1)


def divide_by_binomial(p: Poly, e: int, d: int) -> Poly | None:
    """Exact quotient p / (1 - q^(-e) t^d), or None if it does not divide.

    Exponents are grouped into cosets of the step (-e, d); the binomial divides iff
    every coset's coefficients sum to zero, and the quotient is the running sum.
    """
    a, b = -e, d
    if a == 0 and b == 0:
        raise ZeroDivisionError("binomial with zero step")
    groups: dict[tuple, list[tuple[int, Fraction]]] = {}
    for (qe, te, syms), c in p.items():
        if a != 0:
            m = abs(a)
            r = qe % m
            k = (qe - r) // a
        else:
            m = abs(b)
            r = te % m
            k = (te - r) // b
        base = (qe - k * a, te - k * b, syms)
        groups.setdefault(base, []).append((k, c))
    out: Poly = {}
    for (q0, t0, syms), items in groups.items():
        items.sort()
        if sum(c for _, c in items) != 0:
            return None
        run = Fraction(0)
        idx = 0
        for k in range(items[0][0], items[-1][0]):
            while idx < len(items) and items[idx][0] == k:
                run += items[idx][1]
                idx += 1
            if run:
                out[(q0 + k * a, t0 + k * b, syms)] = run
    return _clean(out)


class RationalQT:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly | None = None, den=None):
        self.num: Poly = _clean(dict(num or {}))
        cnt = Counter()
        for item in den or ():
            if len(item) == 3:
                e, d, m = item
            else:
                (e, d), m = item, 1
            if d == 0 and e == 0:
                raise ValueError("factor 1 - 1 is zero")
            cnt[(e, d)] += m
        self.den: Counter = Counter({k: v for k, v in cnt.items() if v > 0})

    # construction helpers
    @classmethod
    def monomial(cls, c=1, qe: int = 0, te: int = 0, syms: tuple[str, ...] = ()) -> "RationalQT":
        return cls({(qe, te, tuple(sorted(syms))): Fraction(c)})

    @classmethod
    def constant(cls, c) -> "RationalQT":
        return cls.monomial(c)

    @classmethod
    def symbol(cls, name: str) -> "RationalQT":
        return cls.monomial(1, syms=(name,))

    @classmethod
    def geometric(cls, e: int, d: int) -> "RationalQT":
        """1 / (1 - q^(-e) t^d)."""
        return cls({(0, 0, ()): Fraction(1)}, [(e, d, 1)])

    def copy(self) -> "RationalQT":
        return RationalQT(self.num, [(e, d, m) for (e, d), m in self.den.items()])

    def factors(self) -> list[tuple[int, int, int]]:
        return sorted((e, d, m) for (e, d), m in self.den.items())

    def is_zero(self) -> bool:
        return not self.num

    # arithmetic
    def _expand_to(self, target: Counter) -> Poly:
        out = self.num
        for (e, d), m in target.items():
            for _ in range(m - self.den.get((e, d), 0)):
                out = poly_mul(out, binomial(e, d))
        return out

    def __add__(self, other) -> "RationalQT":
        other = _lift(other)
        target = self.den | other.den
        num = poly_add(self._expand_to(target), other._expand_to(target))
        return RationalQT(num, [(e, d, m) for (e, d), m in target.items()])

    __radd__ = __add__

    def __neg__(self):
        return RationalQT({k: -c for k, c in self.num.items()}, self.factors())

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other) -> "RationalQT":
        other = _lift(other)
        return RationalQT(poly_mul(self.num, other.num), self.factors() + other.factors())

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RationalQT, int, Fraction)):
            return NotImplemented
        other = _lift(other)
        target = self.den | other.den
        return self._expand_to(target) == other._expand_to(target)

    def __hash__(self):
        return hash(tuple(self.reduced().num.items()))

    def expanded_denominator(self) -> Poly:
        out: Poly = {(0, 0, ()): Fraction(1)}
        for (e, d), m in self.den.items():
            for _ in range(m):
                out = poly_mul(out, binomial(e, d))
        return out

    def reduced(self) -> "RationalQT":
        """Cancel every denominator factor that divides the numerator exactly."""
        num = self.num
        den = Counter(self.den)
        changed = True
        while changed and num:
            changed = False
            for (e, d) in sorted(den):
                if den[(e, d)] == 0:
                    continue
                quotient = divide_by_binomial(num, e, d)
                if quotient is not None:
                    num = quotient
                    den[(e, d)] -= 1
                    changed = True
                    break
        if not num:
            return RationalQT()
        return RationalQT(num, [(e, d, m) for (e, d), m in den.items() if m > 0])

    # substitution
    def symbols(self) -> set[str]:
        return {s for (_, _, syms) in self.num for s in syms}

    def substitute(self, values: dict[str, int | Fraction]) -> "RationalQT":
        num: Poly = {}
        for (qe, te, syms), c in self.num.items():
            keep = []
            for s in syms:
                if s in values:
                    c = c * Fraction(values[s])
                else:
                    keep.append(s)
            k = (qe, te, tuple(keep))
            num[k] = num.get(k, Fraction(0)) + c
        return RationalQT(num, self.factors())

    def at_t_equals_one(self) -> "RationalQT":
        """Specialize t = 1; returns a rational function in q alone."""
        num: Poly = {}
        for (qe, _, syms), c in self.num.items():
            k = (qe, 0, syms)
            num[k] = num.get(k, Fraction(0)) + c
        factors = []
        for (e, d), m in self.den.items():
            if e == 0:
                raise ZeroDivisionError("factor 1 - t^d vanishes at t = 1")
            factors.append((e, 0, m))
        return RationalQT(num, factors)

    def numeric_in_t(self, q: int) -> tuple[dict[int, Fraction], list[tuple[Fraction, int]]]:
        """Specialize q to a number: numerator as {t exponent: value}, factors as (coef, d)
        meaning 1 - coef * t^d. Symbols must already be substituted."""
        if self.symbols():
            raise ValueError(f"unsubstituted symbols: {sorted(self.symbols())}")
        q = Fraction(q)
        num: dict[int, Fraction] = {}
        for (qe, te, _), c in self.num.items():
            num[te] = num.get(te, Fraction(0)) + c * q**qe
        num = {k: v for k, v in sorted(num.items()) if v}
        factors = []
        for (e, d), m in sorted(self.den.items()):
            factors.extend([(q ** (-e), d)] * m)
        return num, factors

    def evaluate(self, q, t, values: dict | None = None):
        """Numeric value at given q, t (Fractions give exact results)."""
        values = values or {}
        total = 0
        for (qe, te, syms), c in self.num.items():
            term = c * q**qe * t**te
            for s in syms:
                term *= values[s]
            total += term
        den = 1
        for (e, d), m in self.den.items():
            den *= (1 - q ** (-e) * t**d) ** m
        return total / den

    # output
    def to_json(self) -> dict:
        from .laurent import rational_str

        return {
            "num": [{"q": qe, "t": te, "c": rational_str(c), "N": list(syms)}
                    for (qe, te, syms), c in self.num.items()],
            "den": [{"e": e, "d": d, "mult": m} for e, d, m in self.factors()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalQT":
        num = {(t["q"], t["t"], tuple(t.get("N", []))): Fraction(t["c"]) for t in data["num"]}
        return cls(num, [(f["e"], f["d"], f["mult"]) for f in data["den"]])

    def __str__(self):
        return format_rational(self)

    def __repr__(self):
        return f"RationalQT({self})"


def _lift(x) -> RationalQT:
    if isinstance(x, RationalQT):
        return x
    return RationalQT.constant(Fraction(x))


def _mono(qe: int, te: int, syms=()) -> str:
    parts = list(syms)
    if qe:
        parts.append("q" if qe == 1 else f"q^{qe}")
    if te:
        parts.append("t" if te == 1 else f"t^{te}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    out = ""
    for i, ((qe, te, syms), c) in enumerate(p.items()):
        m = _mono(qe, te, syms)
        a = abs(c)
        body = m if (a == 1 and m) else (f"{a}*{m}" if m else f"{a}")
        sign = "-" if c < 0 else "+"
        out += (("-" if sign == "-" else "") + body) if i == 0 else f" {sign} {body}"
    return out


def format_rational(r: RationalQT) -> str:
    num = format_poly(r.num)
    if not r.den:
        return num
    dens = []
    for e, d, m in r.factors():
        f = f"(1 - {_mono(-e, d) or '1'})"
        dens.append(f if m == 1 else f"{f}^{m}")
    return f"({num}) / ({'*'.join(dens)})"
