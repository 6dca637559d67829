"""
Finite abelian groups realized inside (Q/Z)^n.

A residue modulo 1 is stored as a :class:`fractions.Fraction` in ``[0, 1)``;
it stands for the root of unity ``e[r] = exp(2 pi i r)``.  A group element is
a tuple of such residues and the group law is componentwise addition mod 1.
Every group is fully enumerated, so subgroups, characters and dual subgroups
are all computed by exact filtering.

>>> G = enumerate_closure([parse_element("(1/3, 0)"), parse_element("(0, 1/3)")])
>>> G.order, G.cyclic_type
(9, [3, 3])
"""

import os
import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import lcm

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import DomainMismatch, GroupTooLarge, PairingInconsistent, ParseError

QZ = Fraction

DEFAULT_MAX_ORDER = 5000
_max_order = ContextVar("max_order", default=None)


def max_order():
    """Current size guard: explicit override, then $SAITO_MAX_ORDER, then the default."""
    value = _max_order.get()
    if value is not None:
        return value
    env = os.environ.get("SAITO_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


@contextmanager
def size_guard(limit):
    token = _max_order.set(limit)
    try:
        yield
    finally:
        _max_order.reset(token)


# ---------------------------------------------------------------------------
# residues and elements

def qz(value):
    """Normalize a rational (or a ``"p/q"`` literal) into [0, 1)."""
    if isinstance(value, str):
        value = parse_rational(value)
    return Fraction(value) % 1


_RATIONAL = re.compile(r"\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text):
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", 0, text)
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", text.index("/"), text)
    r = Fraction(int(num), int(den or 1))
    return -r if sign == "-" else r


def qz_key(c):
    return (c.denominator, c.numerator)


def elem_key(x):
    return tuple((c.denominator, c.numerator) for c in x)


def add(x, y):
    return tuple((a + b) % 1 for a, b in zip(x, y))


def sub(x, y):
    return tuple((a - b) % 1 for a, b in zip(x, y))


def neg(x):
    return tuple((-a) % 1 for a in x)


def scale(m, x):
    return tuple((m * a) % 1 for a in x)


def zero(n):
    return (Fraction(0),) * n


def element_order(x):
    return reduce(lcm, (c.denominator for c in x), 1)


def format_qz(c):
    return str(c)


def format_element(x):
    return "(" + ",".join(str(c) for c in x) + ")"


def parse_element(text):
    """Parse ``"(1/3, 2/3, 0)"``; a bare rational is read as a 1-tuple."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    elif "(" in s or ")" in s:
        raise ParseError(f"unbalanced parentheses in {text!r}", 0, text)
    if not s.strip():
        raise ParseError(f"empty element {text!r}", 0, text)
    return tuple(qz(part) for part in s.split(","))


def parse_element_list(text):
    """Parse a whitespace separated list of parenthesized elements."""
    found = re.findall(r"\([^()]*\)", text)
    rest = re.sub(r"\([^()]*\)", "", text).strip()
    if rest:
        raise ParseError(f"unexpected text {rest!r} in element list", text.find(rest), text)
    return [parse_element(e) for e in found]


# ---------------------------------------------------------------------------
# integer linear algebra

def smith_decomposition(M):
    """Return ``(D, P, Q)`` with ``P*M*Q == D``, P and Q unimodular and
    ``D`` diagonal with ``d1 | d2 | ...``.  All entries are Python ints."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0 or cols == 0:
        ident = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]
        return [[0] * cols for _ in range(rows)], ident(rows), ident(cols)
    D, P, Q = smith_normal_decomp(Matrix(M))
    D, P, Q = (m.tolist() for m in (D, P, Q))
    as_int = lambda A: [[int(v) for v in row] for row in A]
    D, P, Q = as_int(D), as_int(P), as_int(Q)
    # sympy may leave a negative diagonal entry; absorb the sign into P
    for i in range(min(rows, cols)):
        if D[i][i] < 0:
            D[i][i] = -D[i][i]
            P[i] = [-v for v in P[i]]
    return D, P, Q


def integer_det(M):
    return int(Matrix(M).det()) if M else 1


def rational_inverse(M):
    """Exact inverse of an integer matrix, entries as Fractions."""
    inv = Matrix(M).inv()
    return [[Fraction(int(v.p), int(v.q)) for v in row] for row in inv.tolist()]


def _cyclic_type(gens, n):
    if not gens:
        return []
    N = reduce(lcm, (c.denominator for g in gens for c in g), 1)
    if N == 1:
        return []
    cols = [[int(c * N) for c in g] for g in gens]
    A = [[col[i] for col in cols] + [N if j == i else 0 for j in range(n)] for i in range(n)]
    D, _, _ = smith_decomposition(A)
    diag = [D[i][i] for i in range(n)]
    return sorted(N // d for d in diag if N // d > 1)


# ---------------------------------------------------------------------------
# groups

class AbelianGroup:
    """A finite subgroup of (Q/Z)^n given by its full sorted element list.

    Equality and hashing depend only on ``n`` and the element set, so a
    subgroup constructed inside different parents compares equal.
    """

    def __init__(self, elements, n, gens=None, parent=None):
        self.n = n
        self.elements = tuple(sorted(set(elements), key=elem_key))
        self._set = frozenset(self.elements)
        self.parent = parent
        self._gens = tuple(gens) if gens is not None else None
        self._hash = hash((n, self.elements))

    def __repr__(self):
        return f"AbelianGroup(order={self.order}, type={self.cyclic_type})"

    def __str__(self):
        return "{" + ",".join(format_element(x) for x in self.elements) + "}"

    def __eq__(self, other):
        return (isinstance(other, AbelianGroup) and self.n == other.n
                and self.elements == other.elements)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._set

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return zero(self.n)

    @property
    def generators(self):
        """The generators this group was built from (canonical ones if none were given)."""
        return self._gens if self._gens is not None else self.gens

    @cached_property
    def gens(self):
        """Canonical small generating set; depends only on the element set."""
        return _canonical_gens(self.n, self.elements)

    @cached_property
    def cyclic_type(self):
        return _cyclic_type(self.gens, self.n)

    def sort_key(self):
        return (self.order, tuple(elem_key(x) for x in self.elements))

    def issubgroup(self, other):
        return self.n == other.n and self._set <= other._set

    def subgroup(self, gens):
        gens = [tuple(g) for g in gens]
        for g in gens:
            if g not in self:
                raise DomainMismatch(f"{format_element(g)} is not in the group")
        return AbelianGroup(_closure(gens, self.n), self.n, gens=gens, parent=self)

    def subgroup_from_elements(self, elements):
        return AbelianGroup(elements, self.n, parent=self)

    def trivial_subgroup(self):
        return AbelianGroup([self.identity], self.n, gens=[], parent=self)

    def intersection(self, other):
        return _intersection(self, other)

    def join(self, other):
        return _join(self, other)

    def coset_rep(self, x):
        """Lexicographically minimal element of ``x + self``."""
        return min((add(x, h) for h in self.elements), key=elem_key)

    def coset_reps(self, K):
        """Canonical representatives of ``self / K`` in canonical order."""
        return sorted({K.coset_rep(x) for x in self.elements}, key=elem_key)

    def quotient_order(self, x, K):
        """Order of ``x`` in ``self / K``."""
        ell, y = 1, x
        while y not in K:
            y = add(y, x)
            ell += 1
        return ell

    def subgroups(self):
        return subgroups(self)


def _closure(gens, n):
    e = zero(n)
    seen = {e}
    frontier = [e]
    limit = max_order()
    gens = [g for g in gens if any(g)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise GroupTooLarge(f"group order exceeds the size guard {limit}")
        frontier = nxt
    return seen


@lru_cache(maxsize=65536)
def _canonical_gens(n, elements):
    # greedy by decreasing element order, ties broken canonically
    chosen = []
    span = {zero(n)}
    for x in sorted(elements, key=lambda y: (-element_order(y), elem_key(y))):
        if x not in span:
            chosen.append(x)
            span = set(_closure(chosen, n))
            if len(span) == len(elements):
                break
    return tuple(chosen)


@lru_cache(maxsize=65536)
def _intersection(A, B):
    return AbelianGroup(A._set & B._set, A.n, parent=A)


@lru_cache(maxsize=65536)
def _join(A, B):
    return AbelianGroup(_closure(list(A.gens) + list(B.gens), A.n), A.n,
                        parent=A.parent or B.parent)


AmbientGroup = AbelianGroup
Subgroup = AbelianGroup


def enumerate_closure(generators, n=None):
    """The subgroup of (Q/Z)^n generated by ``generators``."""
    generators = [tuple(qz(c) for c in g) for g in generators]
    if n is None:
        if not generators:
            raise ValueError("dimension required for an empty generating set")
        n = len(generators[0])
    if any(len(g) != n for g in generators):
        raise DomainMismatch("generators of different dimensions")
    return AbelianGroup(_closure(generators, n), n, gens=generators)


def subgroups(G):
    """All subgroups of ``G``, sorted by order then elements."""
    cyclic = {G.subgroup([x]) for x in G.elements}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if C.issubgroup(A):
                    continue
                J = A.join(C)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return sorted(found, key=AbelianGroup.sort_key)


# ---------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class Character:
    """A homomorphism ``domain -> Q/Z``; values aligned with ``domain.elements``."""

    domain: AbelianGroup
    values: tuple

    def __call__(self, x):
        return self.table[x]

    @cached_property
    def table(self):
        return dict(zip(self.domain.elements, self.values))

    def __add__(self, other):
        if self.domain != other.domain:
            raise DomainMismatch("characters on different subgroups")
        return Character(self.domain, tuple((a + b) % 1 for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return Character(self.domain, tuple((-a) % 1 for a in self.values))

    def restrict(self, K):
        if not K.issubgroup(self.domain):
            raise DomainMismatch("restriction to a non-subgroup")
        return Character(K, tuple(self.table[x] for x in K.elements))

    def kernel(self):
        return self.domain.subgroup_from_elements(
            x for x, v in zip(self.domain.elements, self.values) if v == 0)

    def is_trivial(self):
        return not any(self.values)

    def image_order(self):
        return self.domain.order // self.kernel().order

    def is_homomorphism(self):
        t = self.table
        return all(t[add(a, b)] == (t[a] + t[b]) % 1
                   for a in self.domain.elements for b in self.domain.gens)

    def sort_key(self):
        return tuple(qz_key(v) for v in self.values)

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.values) + "]"


def character(H, fn):
    """Build the character ``x -> fn(x) mod 1`` on ``H`` (not checked)."""
    return Character(H, tuple(qz(fn(x)) for x in H.elements))


def trivial_character(H):
    return Character(H, (Fraction(0),) * H.order)


def _extend_on_generators(H, gens, vals):
    table = {H.identity: Fraction(0)}
    frontier = [H.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, v in zip(gens, vals):
                y = add(x, g)
                w = (table[x] + v) % 1
                if y in table:
                    if table[y] != w:
                        return None
                else:
                    table[y] = w
                    nxt.append(y)
        frontier = nxt
    # every element is expanded once along every generator, so each Cayley
    # edge has been checked and the table is a homomorphism
    return Character(H, tuple(table[x] for x in H.elements))


def character_group(H):
    """All ``|H|`` characters of ``H``, sorted by their value tables."""
    gens = H.gens
    orders = [element_order(g) for g in gens]
    result = []

    def assign(i, vals):
        if i == len(gens):
            chi = _extend_on_generators(H, gens, vals)
            if chi is not None:
                result.append(chi)
            return
        for j in range(orders[i]):
            assign(i + 1, vals + [Fraction(j, orders[i])])

    assign(0, [])
    result.sort(key=Character.sort_key)
    return result


# ---------------------------------------------------------------------------
# pairings

@dataclass(frozen=True, eq=False)
class PairedGroups:
    """Two groups in perfect duality via ``pair(a, b) = a . M . b^T mod 1``."""

    G: AbelianGroup
    Gstar: AbelianGroup
    matrix: tuple

    def pair(self, a, b):
        M = self.matrix
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = M[i]
                total += ai * sum(row[j] * bj for j, bj in enumerate(b))
        return total % 1

    def transposed(self):
        Mt = tuple(tuple(row[i] for row in self.matrix) for i in range(len(self.matrix[0])))
        return PairedGroups(self.Gstar, self.G, Mt)

    @classmethod
    def from_exponent_matrix(cls, E):
        """``G = {s : E s = 0 mod Z^n}`` paired with ``{r : E^T r = 0}`` by ``r E s^T``."""
        E = [list(map(int, row)) for row in E]
        Et = [list(col) for col in zip(*E)]
        G = group_of_matrix(E)
        Gstar = group_of_matrix(Et)
        return cls(G, Gstar, tuple(tuple(row) for row in Et))

    def is_nondegenerate(self):
        if self.G.order != self.Gstar.order:
            return False
        left = [a for a in self.G if all(self.pair(a, b) == 0 for b in self.Gstar.gens)]
        right = [b for b in self.Gstar if all(self.pair(a, b) == 0 for a in self.G.gens)]
        return left == [self.G.identity] and right == [self.Gstar.identity]


def group_of_matrix(E):
    """``{s in (Q/Z)^n : E s = 0 mod Z^n}``, generated by the columns of ``E^-1``."""
    n = len(E)
    inv = rational_inverse(E)
    cols = [tuple(qz(inv[i][j]) for i in range(n)) for j in range(n)]
    G = enumerate_closure(cols, n)
    d = abs(integer_det(E))
    if G.order != d:
        raise PairingInconsistent(f"|G| = {G.order} but |det E| = {d}")
    return G


@lru_cache(maxsize=65536)
def dual_subgroup(H, P):
    """Elements of ``P.Gstar`` that pair to zero with all of ``H``."""
    if not H.issubgroup(P.G):
        raise DomainMismatch("H is not a subgroup of the paired group")
    gens = H.gens
    return P.Gstar.subgroup_from_elements(
        b for b in P.Gstar if all(P.pair(a, b) == 0 for a in gens))


@lru_cache(maxsize=65536)
def extend_character(alpha, P):
    """Some ``g in P.Gstar`` with ``pair(h, g) == alpha(h)`` on the domain of ``alpha``.

    The solutions form one coset of the dual subgroup; the canonically
    smallest element is returned, so the result is the coset's canonical
    representative.
    """
    H = alpha.domain
    if not H.issubgroup(P.G):
        raise DomainMismatch("character domain is not a subgroup of the paired group")
    gens = H.gens
    targets = [alpha(g) for g in gens]
    for b in P.Gstar.elements:
        if all(P.pair(a, b) == t for a, t in zip(gens, targets)):
            return b
    raise PairingInconsistent("no element of the dual group realizes the character")
