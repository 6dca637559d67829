"""Seeded randomized checks of the structural laws.

Every case draws its own ``random.Random`` from ``(seed, law, index)``, so a
failure is reproduced by rerunning that single case.
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import abelian
from .abelian import PairedGroups, integer_det
from .burnside import (BurnsideElement, Irreducible, materialize, reduce, saito_dual)
from .zeta import orbifold_zeta, orbifold_zeta_of_set

LAWS = ("involution", "reduce_additive", "reduce_multiplicative", "zeta_multiplicative",
        "kernel_duality", "double_duality")


@dataclass
class FuzzResult:
    law: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


@lru_cache(maxsize=None)
def _paired(E):
    return PairedGroups.from_exponent_matrix(E)


@lru_cache(maxsize=None)
def _subgroups(G):
    return abelian.subgroups(G)


@lru_cache(maxsize=None)
def _characters(H):
    return abelian.character_group(H)


def random_paired_group(rng, max_order=24):
    """A group of order ``<= max_order`` with its dual, from a random exponent matrix."""
    while True:
        n = rng.choice((1, 1, 2, 2, 2, 3))
        E = tuple(tuple(rng.randint(0, 4) for _ in range(n)) for _ in range(n))
        d = abs(integer_det(E)) if n > 1 else E[0][0]
        if 1 <= d <= max_order:
            return _paired(E)


def random_subgroup(rng, G):
    return rng.choice(_subgroups(G))


def random_irreducible(rng, G, max_k=1):
    H = random_subgroup(rng, G)
    return Irreducible(G, H, rng.randint(1, max_k), rng.choice(G.elements),
                       rng.choice(_characters(H)))


def random_element(rng, G, max_k=1, terms=3, nonnegative=False):
    lo = 1 if nonnegative else -2
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        x = random_irreducible(rng, G, max_k)
        coeffs[x] = coeffs.get(x, 0) + rng.choice([c for c in range(lo, 3) if c])
    return BurnsideElement(G, coeffs)


def _concrete(a):
    parts = [materialize(x) for x, c in a.items() for _ in range(c)]
    s = parts[0]
    for t in parts[1:]:
        s = s + t
    return s


def check_case(law, rng, max_order=24):
    """Run one case; returns ``None`` on success or a description of the failure."""
    P = random_paired_group(rng, max_order)
    G = P.G
    if law == "involution":
        a = random_element(rng, G)
        back = saito_dual(saito_dual(a, P), P.transposed())
        return None if back == a else f"D*D({a}) = {back}"
    if law == "reduce_additive":
        a, b = random_element(rng, G, 3), random_element(rng, G, 3)
        K = random_subgroup(rng, G)
        lhs, rhs = reduce(a + b, K, "general"), reduce(a, K, "general") + reduce(b, K, "general")
        return None if lhs == rhs else f"R({a} + {b}) != R(a) + R(b) on {K}"
    if law == "reduce_multiplicative":
        a, b = random_element(rng, G, 2, 2), random_element(rng, G, 2, 2)
        K = random_subgroup(rng, G)
        lhs, rhs = reduce(a * b, K), reduce(a, K) * reduce(b, K)
        return None if lhs == rhs else f"R({a} * {b}) != R(a) * R(b) on {K}"
    if law == "zeta_multiplicative":
        a = random_element(rng, G, 3, 2, nonnegative=True)
        b = random_element(rng, G, 3, 2, nonnegative=True)
        union = orbifold_zeta_of_set(_concrete(a) + _concrete(b))
        split = orbifold_zeta_of_set(_concrete(a)) * orbifold_zeta_of_set(_concrete(b))
        if union != split:
            return f"zeta({a} + {b}) = {union} != {split}"
        c, d = random_element(rng, G, 3), random_element(rng, G, 3)
        if orbifold_zeta(c - d) != orbifold_zeta(c) / orbifold_zeta(d):
            return f"zeta({c} - {d}) is not the quotient"
        return None
    if law == "kernel_duality":
        H = random_subgroup(rng, G)
        alpha = rng.choice(_characters(H))
        lhs = abelian.dual_subgroup(alpha.kernel(), P)
        rhs = P.Gstar.subgroup([abelian.extend_character(alpha, P)]).join(
            abelian.dual_subgroup(H, P))
        return None if lhs == rhs else f"dual(ker {alpha}) = {lhs} != {rhs}"
    if law == "double_duality":
        H = random_subgroup(rng, G)
        Ht = abelian.dual_subgroup(H, P)
        if H.order * Ht.order != G.order:
            return f"|H| |dual H| != |G| for H = {H}"
        back = abelian.dual_subgroup(Ht, P.transposed())
        return None if back == H else f"dual(dual({H})) = {back}"
    raise ValueError(f"unknown law {law!r}")


def case_rng(seed, law, index):
    return random.Random(f"{seed}:{law}:{index}")


def run_fuzz(seed=0, iterations=500, laws=LAWS, max_order=24):
    results = []
    for law in laws:
        res = FuzzResult(law)
        for i in range(iterations):
            msg = check_case(law, case_rng(seed, law, i), max_order)
            res.cases += 1
            if msg is not None:
                res.failures.append(f"seed={seed} case={i}: {msg}")
        results.append(res)
    return results
