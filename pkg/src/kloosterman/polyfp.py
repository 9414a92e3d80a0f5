"""Dense polynomials over a prime field F_p.

A polynomial is a list of ints in ``range(p)``, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Everything here is exact
integer arithmetic; the module backs the irreducibility test used when
building finite fields and the factorizer used for Coxeter characteristic
polynomials.
"""

from __future__ import annotations

import random
from collections.abc import Sequence

Poly = list[int]


def trim(f: Sequence[int], p: int) -> Poly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(f: Sequence[int]) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim([c * a for a in f], p)


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return []
    return scale(f, pow(f[-1], -1, p), p)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = r[-1] * inv_lead % p
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = (r[shift + i] - c * b) % p
        r = trim(r, p)
    return trim(q, p), r


def rem(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_(f, g, p)[1]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    f, g = trim(f, p), trim(g, p)
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def mulmod(f: Poly, g: Poly, m: Poly, p: int) -> Poly:
    return rem(mul(f, g, p), m, p)


def powmod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1] if len(m) > 1 else []
    base = rem(f, m, p)
    while e > 0:
        if e & 1:
            result = mulmod(result, base, m, p)
        base = mulmod(base, base, m, p)
        e >>= 1
    return result


def evaluate(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def derivative(f: Poly, p: int) -> Poly:
    return trim([i * f[i] for i in range(1, len(f))], p)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return prime_factors(n) == [n]


def is_irreducible(f: Poly, p: int) -> bool:
    """Irreducibility of a monic ``f`` of degree k over F_p.

    ``f`` has no factor of degree d iff gcd(f, X^{p^d} - X) = 1; it suffices
    to check every proper divisor d of k and that f | X^{p^k} - X.
    """
    k = deg(f)
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    for d in divisors(k)[:-1]:
        xp = powmod(x, p**d, f, p)
        if len(gcd(f, sub(xp, x, p), p)) > 1:
            return False
    return powmod(x, p**k, f, p) == rem(x, f, p)


def frobenius_orbit_order(f: Poly, h: int, p: int) -> bool:
    """True iff X has multiplicative order exactly ``h`` modulo ``f``."""
    x = [0, 1]
    if powmod(x, h, f, p) != [1]:
        return False
    return all(powmod(x, h // ell, f, p) != [1] for ell in prime_factors(h))


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Square-free decomposition in characteristic p (gcd with the derivative, plus p-th roots).

    Returns pairs (g, e) with f = lead * prod g^e, each g square-free and
    pairwise coprime.
    """
    f = monic(f, p)
    if deg(f) < 1:
        return []
    out: dict[int, Poly] = {}

    def merge(g: Poly, e: int) -> None:
        if deg(g) < 1:
            return
        out[e] = mul(out[e], g, p) if e in out else g

    fp = derivative(f, p)
    if not fp:
        # f = g(X^p); take the p-th root coefficientwise (a^p = a in F_p)
        root = [f[i] for i in range(0, len(f), p)]
        for g, e in squarefree_decomposition(root, p):
            merge(g, e * p)
        return sorted(((g, e) for e, g in out.items()), key=lambda t: t[1])
    c = gcd(f, fp, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        merge(z, i)
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if deg(c) > 0:
        root = [c[j] for j in range(0, len(c), p)]
        for g, e in squarefree_decomposition(root, p):
            merge(g, e * p)
    return sorted(((g, e) for e, g in out.items()), key=lambda t: t[1])


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic square-free ``f`` into products of equal-degree factors."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    f = monic(f, p)
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-``d`` irreducibles."""
    f = monic(f, p)
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^{2^{d-1}}
            t = a
            s = a
            for _ in range(d - 1):
                s = mulmod(s, s, f, p)
                t = add(t, s, p)
            b = t
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 0 < deg(g) < n:
            return sorted(
                equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)
            )


def factor(f: Poly, p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of ``f`` with multiplicities.

    Output is sorted by (degree, coefficients low-degree first), so it does
    not depend on the random choices made while splitting.
    """
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, e))
    return sorted(out, key=lambda t: (len(t[0]), t[0]))


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    a %= n
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
        if k > n:
            raise ValueError(f"{a} is not a unit modulo {n}")
    return k
