"""
Invertible polynomials, their diagonal symmetries, and the duality checks.

An invertible polynomial ``sum_i a_i prod_j x_j^E_ij`` is determined (for
everything computed here) by its square, nondegenerate exponent matrix ``E``.
Its symmetry group ``G_f = {s : E s = 0 mod Z^n}`` has order ``|det E|``; the
Berglund-Hubsch transpose has exponent matrix ``E^T`` and symmetry group
canonically dual to ``G_f`` via ``(r, s) -> r E s^T``.
"""

import itertools
import logging
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod

from . import abelian
from .abelian import (AbelianGroup, Character, PairedGroups, add, format_element,
                      integer_det, qz, rational_inverse, scale)
from .burnside import BurnsideElement, Irreducible, reduce, saito_dual, b1_generators
from .errors import (Degenerate, DomainMismatch, InternalInconsistency, NotSquare,
                     ParseError)
from .zeta import orbifold_zeta, zeta_of_basic

log = logging.getLogger(__name__)


class WeightWarning(UserWarning):
    """Some quasihomogeneous weight lies outside (0, 1)."""


@dataclass(frozen=True)
class InvertiblePolynomial:
    E: tuple
    var_names: tuple
    coefficients: tuple

    def __post_init__(self):
        E = tuple(tuple(int(v) for v in row) for row in self.E)
        object.__setattr__(self, "E", E)
        n = len(E)
        if any(len(row) != n for row in E) or len(self.var_names) != n:
            raise NotSquare(f"{n} monomials in {len(self.var_names)} variables")
        if any(v < 0 for row in E for v in row):
            raise ParseError("negative exponent")
        if integer_det(E) == 0:
            raise Degenerate("exponent matrix is degenerate (det E = 0)")

    @classmethod
    def from_matrix(cls, E, var_names=None, coefficients=None):
        n = len(E)
        names = tuple(var_names) if var_names else tuple(f"x{i + 1}" for i in range(n))
        coeffs = tuple(coefficients) if coefficients else (Fraction(1),) * n
        return cls(tuple(map(tuple, E)), names, coeffs)

    @property
    def n(self):
        return len(self.E)

    @cached_property
    def det(self):
        return integer_det(self.E)

    def __str__(self):
        terms = []
        for a, row in zip(self.coefficients, self.E):
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.var_names, row) if e]
            mono = "*".join(factors)
            if a != 1:
                mono = f"{a}*{mono}"
            terms.append(mono)
        return " + ".join(terms)

    def to_spec(self):
        return f"vars: {' '.join(self.var_names)}\nf: {self}\n"


@dataclass(frozen=True)
class PolySpec:
    """A parsed polynomial spec file: the polynomial and an optional subgroup."""

    poly: InvertiblePolynomial
    subgroup: list = field(default=None)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^]))")


def _tokens(text, offset=0):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             offset + pos + len(text[pos:]) - len(text[pos:].lstrip()), text)
        kind = m.lastgroup
        out.append((kind, m.group(kind), offset + m.start(kind)))
        pos = m.end()
    out.append(("end", "", offset + len(text)))
    return out


def _parse_monomials(text, offset=0):
    """Return a list of ``(coefficient, {variable: exponent})`` and the variable order."""
    toks = _tokens(text, offset)
    i = 0
    order = []
    terms = []

    def peek():
        return toks[i]

    def expect_int():
        nonlocal i
        kind, val, pos = toks[i]
        if kind != "num":
            raise ParseError("expected an integer", pos, text)
        i += 1
        return int(val)

    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    while True:
        coeff = Fraction(sign)
        powers = {}
        kind, val, pos = peek()
        if kind == "num":
            num = expect_int()
            den = 1
            if peek() == ("op", "/", peek()[2]):
                i += 1
                den = expect_int()
                if den == 0:
                    raise ParseError("zero denominator", toks[i - 1][2], text)
            coeff *= Fraction(num, den)
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
            elif peek()[0] != "name":
                raise ParseError("constant monomial", pos, text)
        if peek()[0] != "name":
            raise ParseError("expected a variable", peek()[2], text)
        while True:
            kind, name, pos = peek()
            if kind != "name":
                raise ParseError("expected a variable", pos, text)
            i += 1
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                e = expect_int()
            if name not in order:
                order.append(name)
            powers[name] = powers.get(name, 0) + e
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
                continue
            break
        if coeff == 0:
            raise ParseError("zero coefficient", pos, text)
        terms.append((coeff, powers))
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise ParseError(f"unexpected {val!r}", pos, text)
    return terms, order


def parse_polynomial(text, var_names=None, offset=0):
    """Parse ``"x^2*y + y^3"`` into an :class:`InvertiblePolynomial`.

    Rows of ``E`` follow the monomials, columns follow ``var_names`` (or the
    order of first appearance).
    """
    terms, order = _parse_monomials(text, offset)
    if var_names is None:
        var_names = order
    else:
        var_names = list(var_names)
        unknown = [v for v in order if v not in var_names]
        if unknown:
            raise ParseError(f"undeclared variable {unknown[0]!r}", offset + text.find(unknown[0]), text)
    if len(terms) != len(var_names):
        raise NotSquare(f"{len(terms)} monomials in {len(var_names)} variables", offset, text)
    E = [[powers.get(v, 0) for v in var_names] for _, powers in terms]
    if len({tuple(r) for r in E}) != len(E):
        raise Degenerate("repeated monomial", offset, text)
    poly = InvertiblePolynomial(tuple(map(tuple, E)), tuple(var_names),
                                tuple(c for c, _ in terms))
    _check_weights(poly)
    if any(c != 1 for c in poly.coefficients):
        log.info("coefficients of %s are ignored: only the exponent matrix matters", poly)
    return poly


def _parse_matrix(text, offset):
    s = text.strip()
    if not re.fullmatch(r"\[\s*(\[[\d\s,]*\]\s*,?\s*)+\]", s):
        raise ParseError("malformed matrix literal", offset, text)
    rows = re.findall(r"\[([\d\s,]*)\]", s[1:-1])
    return [[int(v) for v in row.replace(",", " ").split()] for row in rows]


def parse_spec(text):
    """Parse a polynomial spec file (``vars:``, ``f:``/``E:``, ``subgroup:`` lines).

    Text without any ``key:`` line is read as a bare polynomial.
    """
    fields = {}
    offsets = {}
    pos = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        if body.strip():
            m = re.match(r"\s*(\w+)\s*:", body)
            if not m:
                if not fields and ":" not in text:
                    break
                raise ParseError("expected 'key: value'", pos, text)
            key = m.group(1)
            if key not in ("vars", "f", "E", "subgroup"):
                raise ParseError(f"unknown key {key!r}", pos, text)
            if key in fields:
                raise ParseError(f"duplicate key {key!r}", pos, text)
            fields[key] = body[m.end():].rstrip("\n")
            offsets[key] = pos + m.end()
        pos += len(line)
    if not fields:
        return PolySpec(parse_polynomial(text.strip()))
    var_names = fields["vars"].split() if "vars" in fields else None
    if "f" in fields and "E" in fields:
        raise ParseError("give either 'f:' or 'E:', not both", offsets["E"], text)
    if "f" in fields:
        poly = parse_polynomial(fields["f"], var_names, offsets["f"])
    elif "E" in fields:
        E = _parse_matrix(fields["E"], offsets["E"])
        if len(E) == 0 or any(len(r) != len(E) for r in E):
            raise NotSquare("exponent matrix is not square", offsets["E"], text)
        if var_names is not None and len(var_names) != len(E):
            raise NotSquare("matrix size does not match 'vars:'", offsets["E"], text)
        poly = InvertiblePolynomial.from_matrix(E, var_names)
        _check_weights(poly)
    else:
        raise ParseError("missing 'f:' or 'E:' line", len(text), text)
    subgroup = None
    if "subgroup" in fields:
        subgroup = abelian.parse_element_list(fields["subgroup"])
        if any(len(g) != poly.n for g in subgroup):
            raise ParseError("subgroup generator of the wrong dimension", offsets["subgroup"], text)
    return PolySpec(poly, subgroup)


def _check_weights(poly):
    q = weights(poly)
    if any(w <= 0 or w >= 1 for w in q):
        warnings.warn(f"weights {[str(w) for w in q]} of {poly} are not all in (0, 1)",
                      WeightWarning, stacklevel=3)


def weights(poly):
    inv = rational_inverse(poly.E)
    return tuple(sum(row) for row in inv)


def transpose(p):
    return InvertiblePolynomial(tuple(zip(*p.E)), p.var_names, p.coefficients)


# ---------------------------------------------------------------------------
# symmetry data

@dataclass(frozen=True, eq=False)
class SymmetryData:
    poly: InvertiblePolynomial
    Gf: AbelianGroup
    q: tuple
    hf: tuple
    alphaf: Character

    @property
    def n(self):
        return self.poly.n


def symmetry_data(p):
    Gf = abelian.group_of_matrix(p.E)
    q = weights(p)
    hf = tuple(qz(w) for w in q)
    if hf not in Gf:
        raise InternalInconsistency("the grading operator is not a symmetry")
    alphaf = Character(Gf, tuple(sum(x) % 1 for x in Gf.elements))
    return SymmetryData(p, Gf, q, hf, alphaf)


@dataclass(frozen=True, eq=False)
class DualPair:
    """``P`` pairs ``G_ft`` (first) with ``G_f`` (second) by ``r E s^T``."""

    f: SymmetryData
    ft: SymmetryData
    P: PairedGroups


def build_dual_pair(p):
    f = symmetry_data(p)
    ft = symmetry_data(transpose(p))
    P = PairedGroups(ft.Gf, f.Gf, p.E)
    if not P.is_nondegenerate():
        raise InternalInconsistency("the pairing of dual symmetry groups is degenerate")
    for lam in ft.Gf:
        if P.pair(lam, f.hf) != sum(lam) % 1:
            raise InternalInconsistency(f"pair({format_element(lam)}, h_f) != alpha_ft")
    for mu in f.Gf:
        if P.pair(ft.hf, mu) != sum(mu) % 1:
            raise InternalInconsistency(f"pair(h_ft, {format_element(mu)}) != alpha_f")
    return DualPair(f, ft, P)


# ---------------------------------------------------------------------------
# strata and Euler characteristics

def _strata(p):
    """``(I, rows)`` for every nonempty coordinate set whose torus meets ``V_f``.

    ``rows`` are the monomials supported in ``I``; tori where their number
    differs from ``|I|`` have Euler characteristic zero and are skipped.
    """
    n = p.n
    for size in range(1, n + 1):
        for I in itertools.combinations(range(n), size):
            rows = [i for i in range(n) if all(p.E[i][j] == 0 for j in range(n) if j not in I)]
            if len(rows) == len(I):
                yield I, rows


def _stratum_euler(p, I, rows):
    """chi of ``V_f`` on the torus of ``I``: a degree ``|det E_I|`` cover of a
    hyperplane complement of Euler characteristic ``(-1)^(|I|-1)``."""
    EI = [[p.E[i][j] for j in I] for i in rows]
    return (-1) ** (len(I) - 1) * abs(integer_det(EI))


def enhanced_euler(s):
    """Enhanced Euler characteristic of the Milnor fibre with its monodromy.

    On the torus of ``I`` every point has isotropy ``K_I`` (symmetries trivial
    on the coordinates in ``I``), the monodromy acts by ``h_f`` and the age
    character is ``alpha_f``; ``G_f / K_I`` acts freely, so the torus
    contributes ``chi / [G_f : K_I]`` copies of ``[K_I, 1, h_f, alpha_f]``.
    """
    p, G = s.poly, s.Gf
    coeffs = {}
    for I, rows in _strata(p):
        K = G.subgroup_from_elements(g for g in G if all(g[j] == 0 for j in I))
        num = _stratum_euler(p, I, rows) * K.order
        if num % G.order:
            raise InternalInconsistency(f"non-integral stratum multiplicity for I={I}")
        x = Irreducible(G, K, 1, s.hf, s.alphaf.restrict(K))
        coeffs[x] = coeffs.get(x, 0) + num // G.order
    return BurnsideElement(G, coeffs)


def point_class(s):
    """``[(pt, id, alpha_f)]``."""
    G = s.Gf
    full = G.subgroup_from_elements(G.elements)
    return BurnsideElement.of(Irreducible(G, full, 1, G.identity, s.alphaf.restrict(full)))


def reduced_enhanced_euler(s):
    return enhanced_euler(s) - point_class(s)


def milnor_number(s):
    return prod(1 / w - 1 for w in s.q)


def geometric_lefschetz(s, g, m):
    """Euler characteristic of the fixed locus of ``g h_f^m`` on the Milnor fibre."""
    if g not in s.Gf:
        raise DomainMismatch(f"{format_element(g)} is not a symmetry of {s.poly}")
    t = add(g, scale(m, s.hf))
    J = {j for j in range(s.n) if t[j] == 0}
    return sum(_stratum_euler(s.poly, I, rows) for I, rows in _strata(s.poly) if set(I) <= J)


def resolve_subgroup(s, G):
    """Accept a subgroup, a list of generators, or ``None`` (the trivial subgroup)."""
    if G is None:
        return s.Gf.trivial_subgroup()
    if isinstance(G, AbelianGroup):
        if not G.issubgroup(s.Gf):
            raise DomainMismatch("not a subgroup of G_f")
        return G
    return s.Gf.subgroup(G)


def reduced_orbifold_zeta(s, G=None):
    """Reduced orbifold zeta of ``f`` with respect to a subgroup ``G`` of ``G_f``."""
    G = resolve_subgroup(s, G)
    numerator = orbifold_zeta(reduce(enhanced_euler(s), G))
    restricted = s.alphaf.restrict(G.subgroup_from_elements(G.elements))
    denominator = zeta_of_basic(restricted.domain, 1, restricted)
    return numerator / denominator


# ---------------------------------------------------------------------------
# verification

@dataclass
class Check:
    name: str
    status: str
    lhs: str = ""
    rhs: str = ""

    @property
    def passed(self):
        return self.status == "PASS"


def _check(name, lhs, rhs):
    return Check(name, "PASS" if lhs == rhs else "FAIL", str(lhs), str(rhs))


def _sign(n, x):
    return x if n % 2 == 0 else -x


THEOREMS = ("prop_dual", "thm1", "thm2", "corollary")


def verify_duality(p, which, G=None):
    """Run one duality check on ``p``; returns a list of :class:`Check`.

    ``G`` (a list of generators or a subgroup of ``G_f``) restricts ``thm1``
    and ``corollary`` to one subgroup; by default every subgroup is used.
    """
    if which not in THEOREMS:
        raise ValueError(f"unknown check {which!r}; choose from {THEOREMS}")
    dp = build_dual_pair(p)
    f, ft, P = dp.f, dp.ft, dp.P
    n = p.n
    if G is None:
        groups = abelian.subgroups(f.Gf)
    else:
        groups = [resolve_subgroup(f, G)]
    checks = []
    if which == "prop_dual":
        lhs = [str(P.pair(lam, f.hf)) for lam in ft.Gf]
        rhs = [str(sum(lam) % 1) for lam in ft.Gf]
        checks.append(_check("alpha_ft = h_f", ",".join(lhs), ",".join(rhs)))
        lhs = [str(P.pair(ft.hf, mu)) for mu in f.Gf]
        rhs = [str(sum(mu) % 1) for mu in f.Gf]
        checks.append(_check("h_ft = alpha_f", ",".join(lhs), ",".join(rhs)))
    elif which == "thm2":
        Pf = P.transposed()  # G_f first
        lhs = reduced_enhanced_euler(ft)
        rhs = _sign(n, saito_dual(reduced_enhanced_euler(f), Pf))
        checks.append(_check("reduced euler of transpose = (-1)^n D(reduced euler)", lhs, rhs))
    elif which == "thm1":
        Pf = P.transposed()
        chi = reduced_enhanced_euler(f)
        gens = b1_generators(f.Gf)
        for H in groups:
            Ht = abelian.dual_subgroup(H, Pf)
            lhs = orbifold_zeta(reduce(chi, H))
            rhs = orbifold_zeta(reduce(saito_dual(chi, Pf), Ht))
            checks.append(_check(f"zeta duality, reduced euler, G={H}", lhs, rhs))
            bad = None
            for x in gens:
                a = BurnsideElement.of(x)
                l = orbifold_zeta(reduce(a, H))
                r = orbifold_zeta(reduce(saito_dual(a, Pf), Ht))
                if l != r:
                    bad = (x, l, r)
                    break
            if bad:
                checks.append(Check(f"zeta duality, generator {bad[0]}, G={H}", "FAIL",
                                    str(bad[1]), str(bad[2])))
            else:
                checks.append(Check(f"zeta duality, all {len(gens)} B1 generators, G={H}",
                                    "PASS", "", ""))
    elif which == "corollary":
        Pf = P.transposed()
        for H in groups:
            Ht = abelian.dual_subgroup(H, Pf)
            lhs = reduced_orbifold_zeta(ft, Ht)
            rhs = reduced_orbifold_zeta(f, H) ** ((-1) ** n)
            checks.append(_check(f"reduced orbifold zeta, G={H}", lhs, rhs))
    return checks
