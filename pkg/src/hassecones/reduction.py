"""Reduction of weights toward the minimal cone, and decomposition search.

A direction tau is reducible at k when n_tau * k_tau < k_{sigma^{-1} tau};
subtracting the Hasse weight h_tau then preserves the space of forms, and in
Hasse coordinates it decrements y_tau by exactly 1.  Greedy reduction walks
earliest-reducible-first until it lands in C^min, detects a negative Hasse
coordinate of the current weight (a weight-level vanishing certificate), or
exhausts its step budget (believed unreachable; see the budget argument in
greedy_reduce).

Decompositions k = w + sum a_tau h_tau with w in C^min and integral a >= 0
are enumerated exactly: since y(w) = y(k) - a must be componentwise
nonnegative, each a_tau ranges over [0, floor(y_tau(k))].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .carousel import Carousel, Embedding
from .errors import InvariantError, NotReducible
from .hasse import Weight, check_weight, coordinates_scaled, hasse_weight


def _reducible_indices(c: Carousel, coords: tuple[int, ...]) -> list[int]:
    return [
        j
        for j in range(c.d)
        if c.n_table[j] * coords[j] < coords[c.sigma_inv_table[j]]
    ]


def reducible_directions(c: Carousel, k: Weight) -> tuple[Embedding, ...]:
    """Embeddings tau with n_tau k_tau < k_{sigma^{-1} tau}, canonical order."""
    check_weight(c, k)
    return tuple(c.embeddings[j] for j in _reducible_indices(c, k.coords))


def in_min_cone(c: Carousel, k: Weight) -> bool:
    check_weight(c, k)
    return not _reducible_indices(c, k.coords)


def reduce_step(c: Carousel, k: Weight, tau: Embedding) -> Weight:
    """k - h_tau; requires tau reducible at k."""
    check_weight(c, k)
    j = c.index_of(tau)
    if c.n_table[j] * k[j] >= k[c.sigma_inv_table[j]]:
        raise NotReducible(f"{tau.label()} is not a reducible direction at {tuple(k)}")
    return k - hasse_weight(c, tau)


@dataclass(frozen=True)
class Decomposition:
    """k = w + sum a_tau h_tau with w in C^min and a integral nonnegative."""

    w: Weight
    a: tuple[int, ...]


def make_decomposition(c: Carousel, k: Weight, a) -> Decomposition:
    """Build a Decomposition from exponents a, checking every invariant."""
    check_weight(c, k)
    a = tuple(int(v) for v in a)
    if len(a) != c.d:
        raise InvariantError(f"exponent vector has length {len(a)}, expected {c.d}")
    if any(v < 0 for v in a):
        raise InvariantError("decomposition exponents must be nonnegative")
    w = k
    for j, mult in enumerate(a):
        if mult:
            h = hasse_weight(c, c.embeddings[j])
            w = Weight(tuple(x - mult * y for x, y in zip(w.coords, h.coords)))
    if not in_min_cone(c, w):
        raise InvariantError(f"w = {tuple(w)} is not in the minimal cone")
    return Decomposition(w, a)


@dataclass(frozen=True)
class InMinCone:
    """Greedy reduction ended inside C^min with the accumulated exponents."""

    decomposition: Decomposition
    steps: tuple[int, ...]


@dataclass(frozen=True)
class Vanishing:
    """A weight reached by valid reduction steps left the Hasse cone.

    `weight` is the weight at detection (the input itself when no steps were
    taken) and `coordinate` its offending Hasse coordinate y_tau < 0.  This
    certifies that the space of forms in the original weight is zero; when
    steps is empty it also certifies the input lies outside C^Hasse.
    """

    tau: int
    coordinate: Fraction
    weight: Weight
    steps: tuple[int, ...]


@dataclass(frozen=True)
class BudgetExceeded:
    """Step budget ran out; not believed reachable."""

    trace: tuple[int, ...]


ReductionOutcome = InMinCone | Vanishing | BudgetExceeded


def greedy_reduce(c: Carousel, k: Weight) -> ReductionOutcome:
    """Repeatedly step along the earliest reducible direction.

    Before each step the current weight's Hasse coordinates are checked; the
    first negative one returns Vanishing.  The step budget is
    sum_tau max(0, ceil(y_tau(k))) + d: every step decrements one coordinate
    by 1 and coordinates are only stepped while nonnegative overall, so the
    budget covers any terminating walk with room to spare.
    """
    check_weight(c, k)
    nums, den = coordinates_scaled(c, k)
    nums = list(nums)
    budget = sum(max(0, -(-num // den)) for num in nums) + c.d
    current = k
    steps: list[int] = []
    while True:
        for j, num in enumerate(nums):
            if num < 0:
                return Vanishing(j, Fraction(num, den), current, tuple(steps))
        reducible = _reducible_indices(c, current.coords)
        if not reducible:
            a = [0] * c.d
            for j in steps:
                a[j] += 1
            return InMinCone(make_decomposition(c, k, a), tuple(steps))
        if len(steps) == budget:
            return BudgetExceeded(tuple(steps))
        j = reducible[0]
        current = current - hasse_weight(c, c.embeddings[j])
        nums[j] -= den
        steps.append(j)


def enumerate_min_decompositions(c: Carousel, k: Weight) -> tuple[Decomposition, ...]:
    """All decompositions k = w + sum a_tau h_tau, in lexicographic a order.

    Empty when k has a negative Hasse coordinate (no integral a can exist)
    and also when the cone membership is rational-only, i.e. y(k) >= 0 but no
    integral exponent choice lands in C^min.
    """
    check_weight(c, k)
    nums, den = coordinates_scaled(c, k)
    if any(num < 0 for num in nums):
        return ()
    bounds = [num // den for num in nums]
    columns = [hasse_weight(c, c.embeddings[j]).coords for j in range(c.d)]
    d = c.d
    sigma_inv = c.sigma_inv_table
    n_table = c.n_table
    found: list[Decomposition] = []
    a = [0] * d

    def descend(j: int, w: list[int]) -> None:
        if j == d:
            if all(n_table[t] * w[t] >= w[sigma_inv[t]] for t in range(d)):
                found.append(Decomposition(Weight(tuple(w)), tuple(a)))
            return
        col = columns[j]
        descend(j + 1, w)
        for step in range(bounds[j]):
            a[j] = step + 1
            w = [x - y for x, y in zip(w, col)]
            descend(j + 1, w)
        a[j] = 0

    descend(0, list(k.coords))
    return tuple(found)


def pareto_maximal_decompositions(c: Carousel, k: Weight) -> tuple[Decomposition, ...]:
    """The componentwise-maximal exponent vectors among all decompositions."""
    all_decs = enumerate_min_decompositions(c, k)
    out = []
    for dec in all_decs:
        dominated = any(
            other is not dec
            and all(x >= y for x, y in zip(other.a, dec.a))
            and other.a != dec.a
            for other in all_decs
        )
        if not dominated:
            out.append(dec)
    return tuple(out)
