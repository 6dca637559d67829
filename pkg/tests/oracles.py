"""Independent reference computations used to freeze and cross-check expected values.

Nothing here imports the code under test except for plain data types.
"""

import itertools
from fractions import Fraction
from math import gcd, lcm, prod

import sympy


def naive_closure(gens, n):
    """All integer combinations sum c_i g_i with 0 <= c_i < order(g_i)."""
    if not gens:
        return {(Fraction(0),) * n}
    orders = [lcm(*(c.denominator for c in g)) for g in gens]
    out = set()
    for cs in itertools.product(*(range(o) for o in orders)):
        out.add(tuple(sum((c * g[i] for c, g in zip(cs, gens)), Fraction(0)) % 1
                      for i in range(n)))
    return out


def determinantal_divisors(M):
    """Invariant factors from gcds of k x k minors (nonzero ones only)."""
    rows, cols = len(M), len(M[0])
    A = sympy.Matrix(M)
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = gcd(g, int(A.extract(list(r), list(c)).det()))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def invariant_factors(cyclic_orders):
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups."""
    per_prime = {}
    for d in cyclic_orders:
        for p, e in sympy.factorint(d).items():
            per_prime.setdefault(p, []).append(p ** e)
    length = max((len(v) for v in per_prime.values()), default=0)
    out = [1] * length
    for p, powers in per_prime.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            out[length - 1 - i] *= q
    return [d for d in out if d > 1]


def abelian_groups_up_to(order):
    """One cyclic decomposition per isomorphism class of abelian groups of order <= ``order``."""
    seen = set()
    out = []
    for N in range(1, order + 1):
        def parts(n, smallest):
            if n == 1:
                yield []
                return
            for d in sympy.divisors(n):
                if d >= max(smallest, 2):
                    for rest in parts(n // d, d):
                        if all(r % d == 0 for r in rest[:1]):
                            yield [d] + rest
        for ds in parts(N, 2):
            key = tuple(invariant_factors(ds))
            if key not in seen:
                seen.add(key)
                out.append(list(key))
    return out


def diagonal_generators(ds):
    """Generators (1/d_i) e_i of Z/d_1 x ... x Z/d_r inside (Q/Z)^r."""
    r = max(len(ds), 1)
    gens = []
    for i, d in enumerate(ds):
        gens.append(tuple(Fraction(1, d) if j == i else Fraction(0) for j in range(r)))
    return gens, r


# ---------------------------------------------------------------------------
# exact expansion in Z[zeta_N]

def _polymod(a, m):
    """Remainder of integer polynomial ``a`` modulo monic ``m`` (low degree first)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] -= c * m[j]
    return a[:dm] + [0] * (dm - len(a[:dm]))


def cyclotomic(N):
    coeffs = sympy.Poly(sympy.cyclotomic_poly(N, sympy.Symbol("x")), sympy.Symbol("x")).all_coeffs()
    return [int(c) for c in reversed(coeffs)]


def expand_root_product(factors, degree):
    """Series of ``prod (1 - e[c] t^k)^{+-1}`` to ``t^degree``.

    ``factors`` is a list of ``(c, k, sign)``.  Arithmetic happens in
    ``Z[x]/Phi_N(x)`` with ``x = e[1/N]``; every coefficient must reduce to an
    integer, which is returned.
    """
    N = lcm(*(Fraction(c).denominator for c, _, _ in factors)) if factors else 1
    phi = cyclotomic(N)
    dim = len(phi) - 1
    zero = [0] * dim

    def mul(a, b):
        out = [0] * (2 * dim)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _polymod(out, phi)

    def root(c):
        e = [0] * N
        e[int(Fraction(c) * N) % N] = 1
        return _polymod(e, phi)

    series = [list(zero) for _ in range(degree + 1)]
    series[0] = _polymod([1], phi)
    for c, k, sign in factors:
        r = root(c)
        if sign > 0:
            for i in range(degree, k - 1, -1):
                sub = mul(r, series[i - k])
                series[i] = [a - b for a, b in zip(series[i], sub)]
        else:
            # 1/(1 - r t^k) = sum_j r^j t^{jk}
            for i in range(k, degree + 1):
                add = mul(r, series[i - k])
                series[i] = [a + b for a, b in zip(series[i], add)]
    out = []
    for coeff in series:
        if any(coeff[1:]):
            raise ValueError(f"non-integral coefficient {coeff}")
        out.append(coeff[0])
    return out


def lefschetz_zeta(lefschetz, period):
    """Cycle counts ``{d: a_d}`` of a periodic map from its Lefschetz numbers.

    ``lefschetz(m)`` is the signed count of fixed points of the ``m``-th
    iterate; ``sum_{d | m} d a_d = L(m)`` is solved by Mobius inversion.
    """
    out = {}
    for d in sympy.divisors(period):
        total = sum(int(sympy.mobius(d // e)) * lefschetz(e) for e in sympy.divisors(d))
        assert total % d == 0
        if total:
            out[d] = total // d
    return out


def milnor_euler(weights):
    """Euler characteristic 1 + (-1)^(n-1) prod(1/q_i - 1) of a quasihomogeneous Milnor fibre."""
    n = len(weights)
    return 1 + (-1) ** (n - 1) * prod(1 / Fraction(q) - 1 for q in weights)
