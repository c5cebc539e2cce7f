"""Hasse weight vectors, the Hasse matrix, and exact coordinate solves.

The partial Hasse invariant attached to tau has weight

    h_tau = n_tau * e_{sigma^{-1} tau} - e_tau,

one column of the Hasse matrix M per embedding.  M is invertible with
|det M| = prod over loci of (p**f - 1), so every integer weight k has unique
rational Hasse coordinates y with M y = k; their denominators divide |det M|.
The solve is exact: a cached integer adjugate (computed once per carousel by
fraction-free elimination) turns each request into integer dot products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .carousel import Carousel, Embedding
from .errors import DimensionMismatch
from .intlinalg import adjugate_with_det, mat_vec
from .profile import SplittingProfile


@dataclass(frozen=True)
class Weight:
    """An integer weight vector indexed by the canonical order of Sigma."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index: int) -> int:
        return self.coords[index]

    def __add__(self, other: "Weight") -> "Weight":
        if len(self) != len(other):
            raise DimensionMismatch("weight lengths differ")
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        if len(self) != len(other):
            raise DimensionMismatch("weight lengths differ")
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class RationalVector:
    """Exact rational vector; entries are fractions.Fraction."""

    entries: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]


@dataclass(frozen=True)
class HasseMatrix:
    """Rows of M in the canonical order; column tau is h_tau."""

    rows: tuple[tuple[int, ...], ...]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)


def check_weight(c: Carousel, k: Weight) -> None:
    if len(k) != c.d:
        raise DimensionMismatch(f"weight has length {len(k)}, carousel has degree {c.d}")


def hasse_weight(c: Carousel, tau: Embedding) -> Weight:
    """Weight of the partial Hasse invariant at tau."""
    j = c.index_of(tau)
    coords = [0] * c.d
    coords[c.sigma_inv_table[j]] += c.n_table[j]
    coords[j] -= 1
    return Weight(tuple(coords))


def hasse_matrix(c: Carousel) -> HasseMatrix:
    """The d x d matrix whose column at position tau is hasse_weight(tau).

    Built by summation so that a split locus (e = f = 1, sigma fixing tau)
    lands both terms on the diagonal: entry p - 1.
    """
    rows = [[0] * c.d for _ in range(c.d)]
    for j in range(c.d):
        rows[c.sigma_inv_table[j]][j] += c.n_table[j]
        rows[j][j] -= 1
    return HasseMatrix(tuple(tuple(row) for row in rows))


def hasse_lattice_index(profile: SplittingProfile) -> int:
    """prod over loci of (p**f - 1): the index of the Hasse lattice, |det M|."""
    out = 1
    for locus in profile.loci:
        out *= profile.p**locus.f - 1
    return out


@lru_cache(maxsize=None)
def _solver(c: Carousel) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Adjugate rows and positive determinant for the carousel's Hasse matrix.

    Normalized so the returned denominator is positive: y = (adj @ k) / den.
    """
    adj, det = adjugate_with_det(hasse_matrix(c).rows)
    if det < 0:
        adj = tuple(tuple(-a for a in row) for row in adj)
        det = -det
    return adj, det


def coordinates_scaled(c: Carousel, k: Weight) -> tuple[tuple[int, ...], int]:
    """Hasse coordinates as (numerators, common positive denominator)."""
    check_weight(c, k)
    adj, den = _solver(c)
    return mat_vec(adj, k.coords), den


def hasse_coordinates(c: Carousel, k: Weight) -> RationalVector:
    """The unique rational y with M y = k."""
    nums, den = coordinates_scaled(c, k)
    return RationalVector(tuple(Fraction(num, den) for num in nums))
