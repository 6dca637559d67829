"""
The enhanced Burnside ring of a finite abelian group.

An enhanced G-set is a finite G-set with an equivariant bijection ``h`` and a
one-dimensional character of each point's stabilizer, preserved by G and by
``h``.  Isomorphism classes of such sets form a ring freely generated (as a
group) by the irreducibles ``[H, k, hbar, alpha]``: the set ``G/H x {0..k-1}``
where ``h`` climbs the levels and translates by ``hbar`` on wrapping around.

Two representations are kept side by side.  :class:`BurnsideElement` is a
finite integer combination of :class:`Irreducible` keys and is what the rest
of the package manipulates.  :class:`ConcreteEnhancedSet` is an honest finite
set with explicit permutations; ring operations without a closed formula
(products, restriction to a subgroup) are defined by materializing, acting,
and reading the orbits back with :func:`canonicalize`.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import abelian
from .abelian import (AbelianGroup, Character, add, elem_key, format_element, scale,
                      trivial_character)
from .errors import DomainMismatch, MalformedEnhancedSet, NotInB1


@dataclass(frozen=True)
class Irreducible:
    """The irreducible enhanced set ``[H, k, hbar, alpha]`` over ``group``.

    ``hbar`` is replaced by the canonical (smallest) representative of its
    coset modulo ``H`` on construction.
    """

    group: AbelianGroup
    H: AbelianGroup
    k: int
    hbar: tuple
    alpha: Character

    def __post_init__(self):
        if not self.H.issubgroup(self.group):
            raise DomainMismatch("H is not a subgroup of the group")
        if self.alpha.domain != self.H:
            raise DomainMismatch("alpha is not a character of H")
        if self.k < 1:
            raise ValueError("k must be positive")
        hbar = tuple(self.hbar)
        if hbar not in self.group:
            raise DomainMismatch(f"{format_element(hbar)} is not in the group")
        object.__setattr__(self, "hbar", self.H.coset_rep(hbar))
        # conjugation by hbar is trivial in an abelian group, so the
        # compatibility alpha(hbar^-1 a hbar) = alpha(a) always holds
        assert all(self.alpha(abelian.sub(add(a, hbar), hbar)) == self.alpha(a)
                   for a in self.H.gens)

    @cached_property
    def period(self):
        """Length of every ``h``-cycle: ``k`` times the order of hbar in G/H."""
        return self.k * self.group.quotient_order(self.hbar, self.H)

    @property
    def size(self):
        return self.group.order // self.H.order * self.k

    def sort_key(self):
        return (self.H.sort_key(), self.k, elem_key(self.hbar), self.alpha.sort_key())

    def __str__(self):
        return f"[H={self.H}; k={self.k}; h={format_element(self.hbar)}; a={self.alpha}]"


class BurnsideElement:
    """A finite integer combination of irreducibles over one group."""

    __slots__ = ("group", "_coeffs", "_hash")

    def __init__(self, group, coeffs=None):
        self.group = group
        clean = {}
        for x, c in (coeffs or {}).items():
            if x.group != group:
                raise DomainMismatch("irreducible over a different group")
            if c:
                clean[x] = clean.get(x, 0) + c
        self._coeffs = {x: c for x, c in clean.items() if c}
        self._hash = None

    @classmethod
    def of(cls, x, c=1):
        return cls(x.group, {x: c})

    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def one(cls, group):
        """The one-point set: the multiplicative unit."""
        G = group
        full = G.subgroup(G.gens)
        return cls.of(Irreducible(G, full, 1, G.identity, trivial_character(full)))

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: kv[0].sort_key())

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._coeffs
        return (isinstance(other, BurnsideElement) and self.group == other.group
                and self._coeffs == other._coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, frozenset(self._coeffs.items())))
        return self._hash

    def _check(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        if other.group != self.group:
            raise DomainMismatch("elements over different groups")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        merged = defaultdict(int, self._coeffs)
        for x, c in other._coeffs.items():
            merged[x] += c
        return BurnsideElement(self.group, merged)

    def __neg__(self):
        return BurnsideElement(self.group, {x: -c for x, c in self._coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.group, {x: c * other for x, c in self._coeffs.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        return product(self, other)

    __rmul__ = __mul__

    def augmentation(self):
        """Signed number of points."""
        return sum(c * x.size for x, c in self._coeffs.items())

    def in_b1(self):
        return all(x.k == 1 for x in self._coeffs)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for x, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = str(x) if mag == 1 else f"{mag}*{x}"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"BurnsideElement({self})"


# ---------------------------------------------------------------------------
# concrete enhanced sets

@dataclass(frozen=True, eq=False)
class ConcreteEnhancedSet:
    """Points ``0..size-1``; ``action[i]`` is the permutation of ``group.gens[i]``.

    ``alpha[x]`` is a character whose domain is the stabilizer of ``x``.
    """

    group: AbelianGroup
    size: int
    action: tuple
    h: tuple
    alpha: tuple

    @cached_property
    def element_perms(self):
        """Permutation of every group element, composed along the generators."""
        G = self.group
        ident = tuple(range(self.size))
        perms = {G.identity: ident}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for g in frontier:
                pg = perms[g]
                for gen, pa in zip(G.gens, self.action):
                    y = add(g, gen)
                    if y not in perms:
                        perms[y] = tuple(pa[i] for i in pg)
                        nxt.append(y)
            frontier = nxt
        return perms

    def act(self, g, x):
        return self.element_perms[g][x]

    def stabilizer(self, x):
        perms = self.element_perms
        return [g for g in self.group.elements if perms[g][x] == x]

    def h_power(self, m):
        perm = list(range(self.size))
        for _ in range(m):
            perm = [self.h[i] for i in perm]
        return perm

    def validate(self):
        n = self.size
        if sorted(self.h) != list(range(n)):
            raise MalformedEnhancedSet("h is not a bijection")
        if len(self.action) != len(self.group.gens):
            raise MalformedEnhancedSet("one permutation per group generator is required")
        for pa in self.action:
            if sorted(pa) != list(range(n)):
                raise MalformedEnhancedSet("group action is not by permutations")
            if any(pa[self.h[i]] != self.h[pa[i]] for i in range(n)):
                raise MalformedEnhancedSet("h is not G-equivariant")
        perms = self.element_perms
        if len(perms) != self.group.order:
            raise MalformedEnhancedSet("action does not define a group action")
        for g, pg in perms.items():
            for gen, pa in zip(self.group.gens, self.action):
                if perms[add(g, gen)] != tuple(pa[i] for i in pg):
                    raise MalformedEnhancedSet("generator permutations do not satisfy the group relations")
        if len(self.alpha) != n:
            raise MalformedEnhancedSet("one character per point is required")
        for x in range(n):
            stab = tuple(sorted(self.stabilizer(x), key=elem_key))
            if self.alpha[x].domain.elements != stab:
                raise MalformedEnhancedSet(f"alpha at point {x} is not defined on its stabilizer")
            if self.alpha[self.h[x]] != self.alpha[x]:
                raise MalformedEnhancedSet(f"alpha is not h-invariant at point {x}")
            for pa in self.action:
                if self.alpha[pa[x]] != self.alpha[x]:
                    raise MalformedEnhancedSet(f"alpha is not G-invariant at point {x}")
        return self

    def __add__(self, other):
        """Disjoint union."""
        if other.group != self.group:
            raise DomainMismatch("sets over different groups")
        off = self.size
        action = tuple(a + tuple(i + off for i in b) for a, b in zip(self.action, other.action))
        h = self.h + tuple(i + off for i in other.h)
        return ConcreteEnhancedSet(self.group, self.size + other.size, action, h,
                                   self.alpha + other.alpha)

    def __mul__(self, other):
        """Cartesian product with diagonal action and summed characters."""
        if other.group != self.group:
            raise DomainMismatch("sets over different groups")
        n2 = other.size
        action = tuple(tuple(a[p] * n2 + b[q] for p in range(self.size) for q in range(n2))
                       for a, b in zip(self.action, other.action))
        h = tuple(self.h[p] * n2 + other.h[q] for p in range(self.size) for q in range(n2))
        combined = {}
        alpha = []
        for p in range(self.size):
            for q in range(n2):
                key = (id(self.alpha[p]), id(other.alpha[q]))
                if key not in combined:
                    a1, a2 = self.alpha[p], other.alpha[q]
                    K = a1.domain.intersection(a2.domain)
                    combined[key] = a1.restrict(K) + a2.restrict(K)
                alpha.append(combined[key])
        return ConcreteEnhancedSet(self.group, self.size * n2, action, h, tuple(alpha))

    def restrict(self, G):
        """The same set viewed as a G-set for a subgroup ``G``."""
        if not G.issubgroup(self.group):
            raise DomainMismatch("restriction to a non-subgroup")
        perms = self.element_perms
        action = tuple(perms[g] for g in G.gens)
        cache = {}
        alpha = []
        for a in self.alpha:
            if id(a) not in cache:
                cache[id(a)] = a.restrict(a.domain.intersection(G))
            alpha.append(cache[id(a)])
        return ConcreteEnhancedSet(G, self.size, action, self.h, tuple(alpha))


@lru_cache(maxsize=4096)
def materialize(x):
    """The concrete set ``G/H x {0..k-1}`` of an irreducible."""
    G, H, k = x.group, x.H, x.k
    reps = G.coset_reps(H)
    index = {}
    for c, r in enumerate(reps):
        for a in H.elements:
            index[add(r, a)] = c
    action = tuple(tuple(index[add(reps[p // k], g)] * k + p % k for p in range(len(reps) * k))
                   for g in G.gens)
    h = []
    for c, r in enumerate(reps):
        for i in range(k):
            h.append(c * k + i + 1 if i < k - 1 else index[add(r, x.hbar)] * k)
    return ConcreteEnhancedSet(G, len(reps) * k, action, tuple(h), (x.alpha,) * (len(reps) * k))


def _orbits(s):
    parent = list(range(s.size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in (*s.action, s.h):
        for i, j in enumerate(perm):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups = defaultdict(list)
    for i in range(s.size):
        groups[find(i)].append(i)
    return [groups[r] for r in sorted(groups)]


def canonicalize(s, validate=True):
    """Read a concrete enhanced set back as a combination of irreducibles."""
    if validate:
        s.validate()
    G = s.group
    perms = s.element_perms
    coeffs = defaultdict(int)
    for orbit in _orbits(s):
        x = orbit[0]
        Gx = {}
        for g in G.elements:
            Gx.setdefault(perms[g][x], g)
        y, k = s.h[x], 1
        while y not in Gx:
            y, k = s.h[y], k + 1
        alpha = s.alpha[x]
        coeffs[Irreducible(G, alpha.domain, k, Gx[y], alpha)] += 1
    return BurnsideElement(G, coeffs)


@lru_cache(maxsize=65536)
def _product_irreducibles(x, y):
    return canonicalize(materialize(x) * materialize(y), validate=False)


def product(a, b):
    """Ring product, bilinear over products of materialized irreducibles."""
    if a.group != b.group:
        raise DomainMismatch("elements over different groups")
    total = defaultdict(int)
    for x, cx in a._coeffs.items():
        for y, cy in b._coeffs.items():
            key = (x, y) if x.sort_key() <= y.sort_key() else (y, x)
            for z, cz in _product_irreducibles(*key)._coeffs.items():
                total[z] += cx * cy * cz
    return BurnsideElement(a.group, total)


# ---------------------------------------------------------------------------
# reduction to a subgroup

@lru_cache(maxsize=65536)
def _reduce_general(x, G):
    return canonicalize(materialize(x).restrict(G), validate=False)


@lru_cache(maxsize=65536)
def _reduce_fast(x, G):
    """Closed form for ``k = 1`` generators.

    The restricted set consists of ``|Gamma||G n H| / (|H||G|)`` free
    ``G/(G n H)``-orbits, which ``h`` permutes in cycles of length ``k'``,
    the order of ``hbar`` modulo ``G + H``; on each orbit ``h^k'`` acts as
    translation by the ``G``-part of ``k' hbar``.
    """
    Gamma, H = x.group, x.H
    GH = G.intersection(H)
    GplusH = G.join(H)
    kk = Gamma.quotient_order(x.hbar, GplusH)
    shift = scale(kk, x.hbar)
    g = next(g for g in G.elements if abelian.sub(shift, g) in H)
    num = Gamma.order * GH.order
    den = kk * H.order * G.order
    assert num % den == 0
    Gsub = G.subgroup_from_elements(GH.elements)
    y = Irreducible(G, Gsub, kk, g, x.alpha.restrict(Gsub))
    return BurnsideElement.of(y, num // den)


def _as_group(G):
    """Detach a subgroup so that it can act as an ambient group."""
    return AbelianGroup(G.elements, G.n, gens=G.gens)


def reduce(a, G, method="auto"):
    """Restrict the acting group of ``a`` to the subgroup ``G``.

    ``method`` is ``"general"`` (materialize and re-canonicalize), ``"fast"``
    (closed form, ``k = 1`` generators only) or ``"auto"``.
    """
    if not G.issubgroup(a.group):
        raise DomainMismatch("reduction to a non-subgroup")
    G = _as_group(G)
    total = defaultdict(int)
    for x, c in a._coeffs.items():
        if method == "fast" or (method == "auto" and x.k == 1):
            if x.k != 1:
                raise NotInB1("the closed-form reduction needs k = 1")
            part = _reduce_fast(x, G)
        else:
            part = _reduce_general(x, G)
        for z, cz in part._coeffs.items():
            total[z] += c * cz
    return BurnsideElement(G, total)


# ---------------------------------------------------------------------------
# duality

def saito_dual(a, P):
    """The enhanced Saito duality from ``B1(P.G)`` to ``B1(P.Gstar)``.

    Swaps the roles of translation and character: the subgroup goes to its
    annihilator, the character to the translation realizing it under the
    pairing, and the translation to the character it induces.
    """
    if a.group != P.G:
        raise DomainMismatch("element is not over the paired group")
    total = defaultdict(int)
    for x, c in a._coeffs.items():
        if x.k != 1:
            raise NotInB1(f"{x} has k = {x.k}")
        total[_dual_irreducible(x, P)] += c
    return BurnsideElement(P.Gstar, total)


@lru_cache(maxsize=65536)
def _dual_irreducible(x, P):
    Ht = abelian.dual_subgroup(x.H, P)
    new_h = abelian.extend_character(x.alpha, P)
    new_alpha = Character(Ht, tuple(P.pair(x.hbar, g) for g in Ht.elements))
    return Irreducible(P.Gstar, Ht, 1, new_h, new_alpha)


def b1_generators(G):
    """Every ``[H, 1, hbar, alpha]`` over ``G``."""
    out = []
    for H in abelian.subgroups(G):
        chars = abelian.character_group(H)
        for hbar in G.coset_reps(H):
            for alpha in chars:
                out.append(Irreducible(G, H, 1, hbar, alpha))
    return out


def irreducibles(G, max_k):
    """Every irreducible over ``G`` with ``k <= max_k``."""
    return [Irreducible(G, x.H, k, x.hbar, x.alpha)
            for k in range(1, max_k + 1) for x in b1_generators(G)]


# ---------------------------------------------------------------------------
# fixed points and filtration

@dataclass(frozen=True)
class FixedPointData:
    """Fixed points of ``g h^m`` counted per (stabilizer, character)."""

    group: AbelianGroup
    terms: dict

    @property
    def total(self):
        return sum(self.terms.values())

    def __eq__(self, other):
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash((self.group, frozenset(self.terms.items())))


def fixed_point_data(a, g, m):
    """Points fixed by ``g . h^m`` (with multiplicities), keyed by ``(H, alpha)``."""
    if g not in a.group:
        raise DomainMismatch(f"{format_element(g)} is not in the group")
    if m < 1:
        raise ValueError("m must be positive")
    terms = defaultdict(int)
    if isinstance(a, ConcreteEnhancedSet):
        pg = a.element_perms[g]
        hm = a.h_power(m)
        for x in range(a.size):
            if pg[hm[x]] == x:
                terms[(a.alpha[x].domain, a.alpha[x])] += 1
    else:
        # on [H,k,hbar,alpha], h^m moves levels unless k | m, and then
        # translates by (m/k) hbar; g h^m is either the identity or fixed-point free
        for x, c in a._coeffs.items():
            if m % x.k == 0 and add(g, scale(m // x.k, x.hbar)) in x.H:
                terms[(x.H, x.alpha)] += c * x.size
    return FixedPointData(a.group, {key: v for key, v in terms.items() if v})


def filtration_level(a):
    """Largest ``i`` with ``a`` in ``F^i``: no point returns under ``h^j``, ``j <= i``."""
    if not a:
        return math.inf
    return min(x.period for x in a._coeffs) - 1
