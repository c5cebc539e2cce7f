"""Goren-Oort strata, Picard relation lattices, torsion orders, fibre degrees.

A stratum is labelled by a subset T of Sigma; its closed locus has dimension
d - |T| and its closure is the union of strata for supersets of T.  On the
open part of the stratum each line bundle omega_tau is forced against its
shifted neighbour, one integer relation row per embedding:

    row_tau = e_tau + s_tau * n_tau * e_{sigma^{-1} tau},
    s_tau = +1 if tau in T else -1.

The quotient of Z^Sigma by the row lattice is computed exactly through a
Smith normal form with unimodular transforms, giving the order of each
omega_tau class in the quotient; those orders always divide p**(2f) - 1 for
the locus's residue degree f.

The fibre-degree bridge: the relevant projective bundle on the Iwahori side
has fibre degree p**r k_tau - (p**r / n_tau) k_{sigma^{-1} tau} over the
tau-line, and its negativity is equivalent to tau being a reducible
direction, tying the geometry back to the reduction engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .carousel import Carousel, Embedding
from .errors import (
    InternalCheckError,
    InvariantError,
    MultiplierNotDividing,
    SingletonOrbit,
)
from .hasse import Weight, check_weight
from .reduction import reducible_directions


@dataclass(frozen=True)
class StratumLabel:
    """A subset of Sigma in canonical order, with the ambient size."""

    size: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if self.size < 0:
            raise InvariantError("ambient size must be nonnegative")
        for j in self.members:
            if not isinstance(j, int) or not (0 <= j < self.size):
                raise InvariantError(f"stratum member {j!r} out of range for size {self.size}")

    @classmethod
    def from_bitstring(cls, text: str) -> "StratumLabel":
        """Parse '10' as {embedding 0} in ambient size 2; leftmost char is index 0."""
        if not text or any(ch not in "01" for ch in text):
            raise InvariantError(f"stratum bitstring must be nonempty over 0/1, got {text!r}")
        return cls(len(text), frozenset(i for i, ch in enumerate(text) if ch == "1"))

    def bitstring(self) -> str:
        return "".join("1" if i in self.members else "0" for i in range(self.size))


def stratum_dimension(d: int, T: StratumLabel) -> int:
    if T.size != d:
        raise InvariantError(f"stratum has ambient size {T.size}, expected {d}")
    return d - len(T.members)


def closure_set(T: StratumLabel) -> tuple[StratumLabel, ...]:
    """All supersets of T (the strata in the closure), in bitstring order."""
    rest = sorted(set(range(T.size)) - T.members)
    out = []
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            out.append(StratumLabel(T.size, T.members | set(extra)))
    return tuple(sorted(out, key=lambda label: label.bitstring()))


def picard_relations(c: Carousel, T: StratumLabel, locus: str = "open") -> tuple[tuple[int, ...], ...]:
    """Integer relation rows among the omega_tau on the stratum labelled T.

    locus="open": one row per embedding, sign +n_tau for tau in T and -n_tau
    otherwise.  locus="closed": only the rows for tau in T are forced.
    """
    if T.size != c.d:
        raise InvariantError(f"stratum has ambient size {T.size}, carousel degree {c.d}")
    if locus not in ("open", "closed"):
        raise InvariantError(f"locus must be 'open' or 'closed', got {locus!r}")
    rows = []
    for j in range(c.d):
        if locus == "closed" and j not in T.members:
            continue
        sign = 1 if j in T.members else -1
        row = [0] * c.d
        row[j] += 1
        row[c.sigma_inv_table[j]] += sign * c.n_table[j]
        rows.append(tuple(row))
    return tuple(rows)


def smith_normal_form(rows) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (U, D, V) with U A V = D.

    U and V are unimodular; D is diagonal with nonnegative entries and each
    diagonal entry divides the next.  Pivot selection takes the smallest
    nonzero absolute value in the working submatrix.
    """
    A = [list(row) for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        # Move the smallest nonzero entry of the submatrix to the pivot seat.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            if A[t][t] < 0:
                negate_row(t)
            pivot = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // pivot))
                    if A[i][t]:
                        dirty = True
            if dirty:
                # A strictly smaller residue appeared below; promote it.
                bi = min(
                    (i for i in range(t + 1, m) if A[i][t]),
                    key=lambda i: abs(A[i][t]),
                )
                swap_rows(t, bi)
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // pivot))
                    if A[t][j]:
                        dirty = True
            if dirty:
                bj = min(
                    (j for j in range(t + 1, n) if A[t][j]),
                    key=lambda j: abs(A[t][j]),
                )
                swap_cols(t, bj)
                continue
            # Row and column are clean; enforce divisibility of the rest.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1
    for i in range(min(m, n)):
        if A[i][i] < 0:
            negate_row(i)
    return U, A, V


def invariant_factors(rows) -> tuple[int, ...]:
    _, D, _ = smith_normal_form(rows)
    size = min(len(D), len(D[0]) if D else 0)
    return tuple(D[i][i] for i in range(size))


@dataclass(frozen=True)
class PicardSummary:
    """Quotient of Z^Sigma by the relation rows of a stratum.

    torsion_orders[tau] is the order of the class of omega_tau in the
    quotient, with 0 standing for infinite order.
    """

    stratum: StratumLabel
    locus: str
    invariant_factors: tuple[int, ...]
    torsion_orders: tuple[int, ...]

    @property
    def group_order(self) -> int:
        """Order of the full quotient group; 0 when infinite."""
        if len(self.invariant_factors) < self.stratum.size:
            return 0
        out = 1
        for v in self.invariant_factors:
            if v == 0:
                return 0
            out *= v
        return out


def _element_order(moduli, coords) -> int:
    order = 1
    for modulus, v in zip(moduli, coords):
        if modulus == 0:
            if v != 0:
                return 0
            continue
        if modulus == 1:
            continue
        step = modulus // gcd(modulus, v % modulus)
        order = order * step // gcd(order, step)
    return order


def torsion_summary(c: Carousel, T: StratumLabel, locus: str = "open") -> PicardSummary:
    """Invariant factors and per-embedding torsion orders for a stratum.

    The order of omega_tau is read off the Smith transform: with U A V = D,
    the class of e_tau in the quotient is row tau of V expressed against the
    moduli on the diagonal of D (missing rows of D contribute free factors).
    Orders for embeddings of a locus whose block of relations is complete are
    checked against the divisor bound p**(2f) - 1.
    """
    rows = picard_relations(c, T, locus)
    d = c.d
    if not rows:
        return PicardSummary(T, locus, (), tuple(0 for _ in range(d)))
    _, D, V = smith_normal_form(rows)
    facs = tuple(D[i][i] for i in range(min(len(D), d)))
    moduli = list(facs) + [0] * (d - len(facs))
    orders = tuple(_element_order(moduli, V[tau]) for tau in range(d))

    p = c.profile.p
    offset = 0
    for locus_data in c.profile.loci:
        span = range(offset, offset + locus_data.degree)
        complete = locus == "open" or all(j in T.members for j in span)
        if complete:
            bound = p ** (2 * locus_data.f) - 1
            for j in span:
                if orders[j] == 0 or bound % orders[j]:
                    raise InternalCheckError(
                        f"torsion order {orders[j]} at index {j} does not divide p^2f-1 = {bound}"
                    )
        offset += locus_data.degree
    return PicardSummary(T, locus, facs, orders)


def fibre_degree(c: Carousel, k: Weight, tau0: Embedding, r: int) -> int:
    """Degree p**r k_tau0 - (p**r / n_tau0) k_{sigma^{-1} tau0} of the bridge bundle."""
    check_weight(c, k)
    j = c.index_of(tau0)
    locus = c.profile.loci[tau0.locus]
    if locus.e * locus.f == 1:
        raise SingletonOrbit(f"{tau0.label()} has a singleton orbit; fibre degree undefined")
    if not isinstance(r, int) or r < 0:
        raise InvariantError(f"power r must be a nonnegative integer, got {r!r}")
    pr = c.profile.p**r
    n = c.n_table[j]
    if pr % n:
        raise MultiplierNotDividing(f"n_tau = {n} does not divide p^r = {pr}")
    return pr * k[j] - (pr // n) * k[c.sigma_inv_table[j]]


def theorem_bridge(c: Carousel, k: Weight, tau0: Embedding, r: int) -> bool:
    """Negativity of the fibre degree; equals tau0 being a reducible direction."""
    return fibre_degree(c, k, tau0, r) < 0
