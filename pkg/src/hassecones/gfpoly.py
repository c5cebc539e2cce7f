"""Polynomial arithmetic over GF(p) and the splitting machinery built on it.

Polynomials are tuples of ints in [0, p), ascending degree, with no trailing
zeros; the zero polynomial is the empty tuple.  On top of the arithmetic sit
squarefree decomposition (characteristic p, with the p-th root step),
distinct-degree factorization, Cantor-Zassenhaus equal-degree splitting with a
seeded generator, Dedekind's p-maximality criterion, and the derivation of a
splitting profile from a minimal polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InternalCheckError, InvariantError, NotPMaximal
from .profile import MAX_DEGREE, MAX_PRIME, PrimeLocus, SplittingProfile, is_prime

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def trim(coeffs) -> Poly:
    """Strip trailing zeros; canonical form of a coefficient sequence."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def normalize(coeffs, p: int) -> Poly:
    return trim(c % p for c in coeffs)


def degree(a: Poly) -> int:
    """Degree with deg 0 = -1 for the zero polynomial."""
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return trim((x + y) % p for x, y in zip(a, b))


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return trim((x - y) % p for x, y in zip(a, b))


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def scale(a: Poly, c: int, p: int) -> Poly:
    c %= p
    return trim(x * c % p for x in a)


def divmod_poly(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    """Quotient and remainder; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    rem = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = rem[shift + len(b) - 1] * inv_lead % p
        if coef:
            q[shift] = coef
            for i, bc in enumerate(b):
                rem[shift + i] = (rem[shift + i] - coef * bc) % p
    return trim(q), trim(rem)


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_poly(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a or a[-1] == 1:
        return a
    return scale(a, pow(a[-1], p - 2, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    """a**e modulo the polynomial m."""
    result = mod(ONE, m, p)
    a = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, a, p), m, p)
        a = mod(mul(a, a, p), m, p)
        e >>= 1
    return result


def derivative(a: Poly, p: int) -> Poly:
    return trim(i * c % p for i, c in enumerate(a) if i >= 1)


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def pth_root(a: Poly, p: int) -> Poly:
    """p-th root of a p-th power: over GF(p) just reindex x**(jp) -> x**j."""
    if any(c and i % p for i, c in enumerate(a)):
        raise InternalCheckError("pth_root applied to a polynomial that is not a p-th power")
    return trim(a[i] for i in range(0, len(a), p))


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic f -> list of (squarefree monic g, multiplicity), pairwise coprime."""
    out: dict[Poly, int] = {}

    def rec(f: Poly, outer: int) -> None:
        df = derivative(f, p)
        if not df:
            if degree(f) == 0:
                return
            rec(pth_root(f, p), outer * p)
            return
        c = gcd(f, df, p)
        w = divmod_poly(f, c, p)[0]
        i = 1
        while degree(w) > 0:
            y = gcd(w, c, p)
            z = divmod_poly(w, y, p)[0]
            if degree(z) > 0:
                out[z] = out.get(z, 0) + i * outer
            w = y
            c = divmod_poly(c, y, p)[0]
            i += 1
        if degree(c) > 0:
            rec(pth_root(c, p), outer * p)

    rec(monic(f, p), 1)
    return sorted(out.items(), key=lambda item: (item[1], item[0]))


def distinct_degree_factorization(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Squarefree monic f -> [(product of irreducible factors of degree d, d)]."""
    out = []
    h = mod(X, f, p)
    rest = f
    d = 0
    while degree(rest) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, rest, p)
        g = gcd(sub(h, X, p), rest, p)
        if degree(g) > 0:
            out.append((g, d))
            rest = divmod_poly(rest, g, p)[0]
            h = mod(h, rest, p)
    if degree(rest) > 0:
        out.append((rest, degree(rest)))
    return out


def _random_poly(max_deg: int, p: int, rng: random.Random) -> Poly:
    return trim(rng.randrange(p) for _ in range(max_deg + 1))


def equal_degree_factorization(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f, all of whose irreducible factors have degree d."""
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = _random_poly(n - 1, p, rng)
        if degree(a) < 1:
            continue
        g = gcd(a, f, p)
        if 0 < degree(g) < n:
            break
        if p % 2 == 1:
            b = powmod(a, (p**d - 1) // 2, f, p)
            g = gcd(sub(b, ONE, p), f, p)
        else:
            # Trace map replaces the odd-characteristic power trick.
            b = ZERO
            t = mod(a, f, p)
            for _ in range(d):
                b = add(b, t, p)
                t = mod(mul(t, t, p), f, p)
            g = gcd(b, f, p)
        if 0 < degree(g) < n:
            break
    other = divmod_poly(f, g, p)[0]
    return equal_degree_factorization(g, d, p, rng) + equal_degree_factorization(other, d, p, rng)


@dataclass(frozen=True)
class MinPolySpec:
    """Monic integer polynomial (ascending coefficients) and a prime p."""

    coefficients: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not isinstance(self.p, int) or self.p >= MAX_PRIME or not is_prime(self.p):
            raise InvariantError(f"p = {self.p!r} is not a prime below 2**64")
        coeffs = self.coefficients
        if len(coeffs) < 3:
            raise InvariantError("minimal polynomial must have degree at least 2")
        if coeffs[-1] != 1:
            raise InvariantError("minimal polynomial must be monic (last coefficient 1)")
        if len(coeffs) - 1 > MAX_DEGREE:
            raise InvariantError(f"degree must be at most {MAX_DEGREE}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def reduced(self) -> Poly:
        return normalize(self.coefficients, self.p)


@dataclass(frozen=True)
class ModPFactorization:
    """Factorization of a monic polynomial over GF(p): ((factor, multiplicity), ...)."""

    p: int
    factors: tuple[tuple[Poly, int], ...]

    def product(self) -> Poly:
        acc = ONE
        for g, m in self.factors:
            for _ in range(m):
                acc = mul(acc, g, self.p)
        return acc


def factor_irreducible(f: Poly, p: int, rng: random.Random) -> list[Poly]:
    """Factor a squarefree monic polynomial into irreducibles."""
    out = []
    for g, d in distinct_degree_factorization(f, p):
        out.extend(equal_degree_factorization(g, d, p, rng))
    return out


def factor_mod_p(g: MinPolySpec, seed: int = 0) -> ModPFactorization:
    """Full factorization of g mod p into monic irreducibles with multiplicities.

    The equal-degree stage draws from random.Random(seed); the returned order
    (by degree, then lexicographic coefficients) is canonical regardless.
    """
    p = g.p
    fbar = g.reduced()
    if degree(fbar) < 1:
        raise InvariantError("polynomial reduces to a constant mod p")
    rng = random.Random(seed)
    collected: dict[Poly, int] = {}
    for piece, mult in squarefree_decomposition(fbar, p):
        for irr in factor_irreducible(piece, p, rng):
            collected[irr] = collected.get(irr, 0) + mult
    factors = tuple(sorted(collected.items(), key=lambda item: (degree(item[0]), item[0])))
    result = ModPFactorization(p, factors)
    if result.product() != fbar:
        raise InternalCheckError("factorization product check failed")
    return result


def _lift(a: Poly) -> tuple[int, ...]:
    # Representative with coefficients in [0, p); already how Poly is stored.
    return a


def _int_poly_mul(a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def dedekind_p_maximal(g: MinPolySpec, seed: int = 0) -> bool:
    """Dedekind's criterion: is Z[x]/(g) maximal at p?

    With g mod p = prod gi**ei, set g* = prod lift(gi), h* = lift(g mod p / g*),
    F = (g* h* - g)/p; the order is p-maximal iff gcd(F mod p, g*, h*) = 1.
    """
    p = g.p
    fact = factor_mod_p(g, seed)
    gstar_bar = ONE
    hstar_bar = ONE
    for gi, ei in fact.factors:
        gstar_bar = mul(gstar_bar, gi, p)
        for _ in range(ei - 1):
            hstar_bar = mul(hstar_bar, gi, p)
    product = _int_poly_mul(_lift(gstar_bar), _lift(hstar_bar))
    gc = g.coefficients
    n = max(len(product), len(gc))
    diff = [(product[i] if i < len(product) else 0) - (gc[i] if i < len(gc) else 0) for i in range(n)]
    if any(c % p for c in diff):
        raise InternalCheckError("g* h* - g is not divisible by p")
    fbar = normalize((c // p for c in diff), p)
    d1 = gcd(fbar, gstar_bar, p)
    return degree(gcd(d1, hstar_bar, p)) == 0


def profile_from_minpoly(g: MinPolySpec, seed: int = 0) -> SplittingProfile:
    """Splitting profile of p read off a p-maximal minimal polynomial."""
    if not dedekind_p_maximal(g, seed):
        raise NotPMaximal(
            f"polynomial {list(g.coefficients)} is not p-maximal at p={g.p}; "
            "the mod-p factorization does not determine the splitting"
        )
    fact = factor_mod_p(g, seed)
    loci = tuple(PrimeLocus(e=mult, f=degree(irr)) for irr, mult in fact.factors)
    profile = SplittingProfile(g.p, loci)
    if profile.degree != g.degree:
        raise InternalCheckError("sum of e*f does not match the polynomial degree")
    return profile
