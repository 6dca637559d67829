"""
Zeta functions as exact products of cyclotomic factors.

:class:`TwistedZeta` stores ``prod_c (1 - e[c] t)^{m_c}`` with every factor of
degree one, so products, quotients and twists are exponent-map arithmetic and
equality is decidable without a cyclotomic field.  :class:`IntegerZeta` stores
``prod_n (1 - t^n)^{e_n}``, the form zeta functions with integer series
coefficients take.
"""

import re
from collections import defaultdict
from fractions import Fraction
from math import lcm

from sympy import divisors, mobius

from .abelian import qz, qz_key
from .errors import NotIntegral, ParseError


def _clean(factors):
    return {c: e for c, e in factors.items() if e}


class TwistedZeta:
    __slots__ = ("factors",)

    def __init__(self, factors=None):
        merged = defaultdict(int)
        for c, e in (factors or {}).items():
            merged[qz(c)] += e
        self.factors = _clean(merged)

    @classmethod
    def cycle(cls, k, c=0, exponent=1):
        """``(1 - e[c] t^k)^exponent``, split into degree-one factors."""
        c = Fraction(c)
        return cls({(c + j) / k: exponent for j in range(k)})

    def __mul__(self, other):
        out = defaultdict(int, self.factors)
        for c, e in other.factors.items():
            out[c] += e
        return TwistedZeta(out)

    def __truediv__(self, other):
        return self * other ** -1

    def __pow__(self, p):
        return TwistedZeta({c: e * p for c, e in self.factors.items()})

    def __eq__(self, other):
        return isinstance(other, TwistedZeta) and self.factors == other.factors

    def __hash__(self):
        return hash(frozenset(self.factors.items()))

    def __repr__(self):
        body = ", ".join(f"{c}: {e}" for c, e in sorted(self.factors.items(),
                                                      key=lambda kv: qz_key(kv[0])))
        return f"TwistedZeta({{{body}}})"


def twist(z, beta):
    """``psi(t) -> psi(e[-beta] t)``: every root and pole is multiplied by ``e[beta]``."""
    beta = qz(beta)
    return TwistedZeta({c - beta: e for c, e in z.factors.items()})


class IntegerZeta:
    """``prod_n (1 - t^n)^{e_n}`` with nonzero integer exponents."""

    __slots__ = ("factors",)

    def __init__(self, factors=None):
        merged = defaultdict(int)
        for n, e in (factors or {}).items():
            if n < 1:
                raise ValueError("factor degree must be positive")
            merged[int(n)] += int(e)
        self.factors = _clean(merged)

    def __mul__(self, other):
        out = defaultdict(int, self.factors)
        for n, e in other.factors.items():
            out[n] += e
        return IntegerZeta(out)

    def __truediv__(self, other):
        return self * other ** -1

    def __pow__(self, p):
        return IntegerZeta({n: e * p for n, e in self.factors.items()})

    def __eq__(self, other):
        return isinstance(other, IntegerZeta) and self.factors == other.factors

    def __hash__(self):
        return hash(frozenset(self.factors.items()))

    def __str__(self):
        return format_zeta(self)

    def __repr__(self):
        return f"IntegerZeta({self.factors})"

    def split(self):
        out = TwistedZeta()
        for n, e in self.factors.items():
            out = out * TwistedZeta.cycle(n, 0, e)
        return out

    def degree(self):
        """Degree of numerator minus degree of denominator."""
        return sum(n * e for n, e in self.factors.items())

    def series(self, degree):
        """Power-series coefficients up to ``t^degree`` (exact integers)."""
        coeffs = [1] + [0] * degree
        for n, e in sorted(self.factors.items()):
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(degree, n - 1, -1):
                        coeffs[i] -= coeffs[i - n]
                else:
                    for i in range(n, degree + 1):
                        coeffs[i] += coeffs[i - n]
        return coeffs


def to_integer_form(z):
    """Rewrite a split zeta as ``prod (1 - t^n)^{e_n}`` by Mobius inversion.

    Raises :class:`NotIntegral` when the exponent is not constant on the
    primitive ``d``-th roots of unity for some ``d``.
    """
    by_den = defaultdict(set)
    for c, e in z.factors.items():
        by_den[c.denominator].add((c, e))
    F = {}
    for d, entries in by_den.items():
        exps = {e for _, e in entries}
        full = sum(1 for j in range(d) if Fraction(j, d).denominator == d)
        if len(exps) != 1 or len(entries) != full:
            raise NotIntegral(f"exponents are not constant on the primitive {d}-th roots of unity")
        F[d] = exps.pop()
    if not F:
        return IntegerZeta()
    top = lcm(*F)
    out = {}
    for n in divisors(top):
        e = sum(int(mobius(m // n)) * Fm for m, Fm in F.items() if m % n == 0)
        if e:
            out[n] = e
    return IntegerZeta(out)


def zeta_of_basic(H, k, alpha):
    """Closed form ``(1 - t^L)^{k|H|/L}`` with ``L = lcm(k, m)``, ``m = |image of alpha|``."""
    m = alpha.image_order()
    L = lcm(k, m)
    return IntegerZeta({L: k * H.order // L})


def zeta_of_permutation(perm, points=None):
    """``prod over cycles (1 - t^length)`` of a permutation restricted to ``points``."""
    points = range(len(perm)) if points is None else points
    seen = set()
    out = defaultdict(int)
    for p in points:
        if p in seen:
            continue
        length, q = 0, p
        while q not in seen:
            seen.add(q)
            q = perm[q]
            length += 1
        out[length] += 1
    return IntegerZeta(out)


def orbifold_zeta_of_set(s):
    """Orbifold zeta of a concrete enhanced set, straight from the definition.

    For each ``g`` and each value ``beta`` of the point characters at ``g``,
    the ``g``-fixed points with ``alpha_x(g) = beta`` are divided by ``G``; the
    zeta function of the map induced by ``h`` on that quotient is twisted by
    ``beta``; all of these are multiplied together.
    """
    G = s.group
    perms = s.element_perms
    total = TwistedZeta()
    for g in G.elements:
        pg = perms[g]
        sectors = defaultdict(list)
        for x in range(s.size):
            if pg[x] == x:
                sectors[s.alpha[x](g)].append(x)
        for beta, pts in sectors.items():
            orbit_of = {}
            reps = []
            for x in pts:
                if x in orbit_of:
                    continue
                r = len(reps)
                reps.append(x)
                for pe in perms.values():
                    orbit_of[pe[x]] = r
            induced = [orbit_of[s.h[x]] for x in reps]
            total = total * twist(zeta_of_permutation(induced).split(), beta)
    return to_integer_form(total)


def orbifold_zeta(a, method="fast"):
    """Orbifold zeta of a Burnside element; multiplicative in the coefficients."""
    from .burnside import materialize

    out = IntegerZeta()
    for x, c in a.items():
        if method == "fast":
            z = zeta_of_basic(x.H, x.k, x.alpha)
        elif method == "brute":
            z = orbifold_zeta_of_set(materialize(x))
        else:
            raise ValueError(f"unknown method {method!r}")
        out = out * z ** c
    return out


def format_zeta(z):
    """``(1-t^4)^2*(1-t^2)^-1``: factors by decreasing degree, ``1`` when empty."""
    if not z.factors:
        return "1"
    parts = []
    for n, e in sorted(z.factors.items(), reverse=True):
        base = "(1-t)" if n == 1 else f"(1-t^{n})"
        parts.append(f"{base}^{e}")
    return "*".join(parts)


_FACTOR = re.compile(r"\(1-t(?:\^(\d+))?\)(?:\^(-?\d+))?")


def parse_zeta(text):
    """Inverse of :func:`format_zeta`; a missing exponent means 1."""
    s = text.strip()
    if s == "1":
        return IntegerZeta()
    out = defaultdict(int)
    pos = 0
    while True:
        m = _FACTOR.match(s, pos)
        if not m:
            raise ParseError(f"malformed zeta factor in {text!r}", pos, text)
        out[int(m.group(1) or 1)] += int(m.group(2) or 1)
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "*":
            raise ParseError(f"expected '*' in {text!r}", pos, text)
        pos += 1
    return IntegerZeta(out)
