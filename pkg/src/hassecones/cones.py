"""Rational polyhedral cones: H/V representations, conversion, membership.

Three cones in Q^Sigma drive the weight combinatorics:

  * minimal cone  C^min  : rows n_tau * e_tau - e_{sigma^{-1} tau} >= 0
  * standard cone C^st   : rows e_tau >= 0 (the nonnegative orthant)
  * Hasse cone    C^Hasse: generated by the Hasse weights h_tau

with C^min contained in C^st contained in C^Hasse, and C^min = C^Hasse
exactly when p is totally split.

Representation conversion is the double description method, maintained as a
pair (lineality basis B, extreme rays R).  Constraints are inserted in
lexicographic order; a constraint that meets the lineality space pivots one
basis vector into a new ray and projects the rest, otherwise the classical
ray step runs with the rank-based adjacency test (two rays are adjacent iff
the inserted rows tight at both have rank = rank(inserted) - 2).  The V-to-H
direction is the same computation applied to the dual cone.

Membership in a V-representation is decided independently of conversion by an
exact phase-I simplex over Fraction with Bland's rule; both routes return
verified certificates, never bare booleans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .carousel import Carousel
from .errors import DimensionMismatch, DimensionTooLarge, InternalCheckError, InvariantError
from .hasse import Weight, check_weight, coordinates_scaled
from .intlinalg import dot, primitive, rank

MAX_DD_DIMENSION = 16


def _canonical_rows(rows, dim: int):
    seen = []
    for row in rows:
        row = tuple(row)
        if len(row) != dim:
            raise DimensionMismatch(f"row {row} has length {len(row)}, expected {dim}")
        if all(x == 0 for x in row):
            raise InvariantError("zero vector is not a valid normal or ray")
        seen.append(primitive(row))
    return tuple(sorted(set(seen)))


@dataclass(frozen=True)
class HRepCone:
    """Cone cut out by normals: {x : a . x >= 0 for every row a}."""

    dim: int
    normals: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows, dim: int) -> "HRepCone":
        return cls(dim, _canonical_rows(rows, dim))


@dataclass(frozen=True)
class VRepCone:
    """Cone generated by rays: {sum lambda_j r_j : lambda_j >= 0}."""

    dim: int
    rays: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows, dim: int) -> "VRepCone":
        return cls(dim, _canonical_rows(rows, dim))


def min_cone(c: Carousel) -> HRepCone:
    """H-representation of C^min; split loci contribute (p - 1) e_tau rows."""
    rows = []
    for j in range(c.d):
        row = [0] * c.d
        row[j] += c.n_table[j]
        row[c.sigma_inv_table[j]] -= 1
        rows.append(row)
    return HRepCone.from_rows(rows, c.d)


def std_cone(c: Carousel) -> HRepCone:
    rows = [[1 if i == j else 0 for i in range(c.d)] for j in range(c.d)]
    return HRepCone.from_rows(rows, c.d)


def hasse_cone(c: Carousel) -> VRepCone:
    """V-representation of C^Hasse, one primitive ray per Hasse weight."""
    rays = []
    for j in range(c.d):
        ray = [0] * c.d
        ray[c.sigma_inv_table[j]] += c.n_table[j]
        ray[j] -= 1
        rays.append(ray)
    return VRepCone.from_rows(rays, c.d)


# ---------------------------------------------------------------------------
# Double description


def _adjacent(rp, rm, inserted, cur_rank: int) -> bool:
    tight = [row for row in inserted if dot(row, rp) == 0 and dot(row, rm) == 0]
    return rank(tight, len(rp)) == cur_rank - 2


def _dd_pair(constraints, dim: int):
    """Core DD sweep: returns (lineality basis, extreme rays mod lineality)."""
    basis = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    rays: list[tuple[int, ...]] = []
    inserted: list[tuple[int, ...]] = []
    for a in sorted(constraints):
        bdots = [dot(a, b) for b in basis]
        if any(bdots):
            # A lineality vector leaves the hyperplane: pivot it into a ray.
            j = next(i for i, t in enumerate(bdots) if t != 0)
            b0 = basis[j] if bdots[j] > 0 else tuple(-x for x in basis[j])
            s = abs(bdots[j])
            new_basis = []
            for idx, b in enumerate(basis):
                if idx == j:
                    continue
                t = bdots[idx]
                new_basis.append(primitive(tuple(s * x - t * y for x, y in zip(b, b0))))
            projected = []
            for r in rays:
                t = dot(a, r)
                projected.append(primitive(tuple(s * x - t * y for x, y in zip(r, b0))))
            rays = sorted(set(projected) | {primitive(b0)})
            basis = new_basis
        else:
            signed = [(dot(a, r), r) for r in rays]
            plus = [r for t, r in signed if t > 0]
            zero = [r for t, r in signed if t == 0]
            minus = [(t, r) for t, r in signed if t < 0]
            if minus:
                cur_rank = dim - len(basis)
                fresh = set()
                for tp, rp in ((t, r) for t, r in signed if t > 0):
                    for tm, rm in minus:
                        if _adjacent(rp, rm, inserted, cur_rank):
                            combo = tuple(tp * x - tm * y for x, y in zip(rm, rp))
                            if any(combo):
                                fresh.add(primitive(combo))
                rays = sorted(set(plus) | set(zero) | fresh)
        inserted.append(a)
    return basis, rays


def _dd_generators(constraints, dim: int) -> tuple[tuple[int, ...], ...]:
    basis, rays = _dd_pair(constraints, dim)
    out = set(rays)
    for b in basis:
        out.add(primitive(b))
        out.add(primitive(tuple(-x for x in b)))
    return tuple(sorted(out))


def dd_h_to_v(cone: HRepCone) -> VRepCone:
    """Extreme rays (plus +/- a lineality basis) of an H-represented cone."""
    if cone.dim > MAX_DD_DIMENSION:
        raise DimensionTooLarge(f"double description capped at dimension {MAX_DD_DIMENSION}")
    generators = _dd_generators(cone.normals, cone.dim)
    if not generators:
        return VRepCone(cone.dim, ())
    return VRepCone.from_rows(generators, cone.dim)


def dd_v_to_h(cone: VRepCone) -> HRepCone:
    """Facet normals of a V-represented cone, via double description on the dual."""
    if cone.dim > MAX_DD_DIMENSION:
        raise DimensionTooLarge(f"double description capped at dimension {MAX_DD_DIMENSION}")
    normals = _dd_generators(cone.rays, cone.dim)
    return HRepCone(cone.dim, normals)


# ---------------------------------------------------------------------------
# Membership


@dataclass(frozen=True)
class MembershipCertificate:
    """Verdict plus an exact certificate.

    member=True : witness is slacks (H-rep), a nonnegative combination
                  lambda over the rays (V-rep), or Hasse coordinates.
    member=False: witness is (row index, slack) for a violated inequality, or
                  a separating integer vector z with z.x < 0 <= z.rays.
    """

    member: bool
    kind: str
    witness: tuple

    def __bool__(self) -> bool:
        return self.member


def _as_fractions(x, dim: int) -> tuple[Fraction, ...]:
    entries = tuple(Fraction(v) for v in x)
    if len(entries) != dim:
        raise DimensionMismatch(f"vector has length {len(entries)}, expected {dim}")
    return entries


def contains(cone, x) -> MembershipCertificate:
    """Exact membership of a rational vector in an H- or V-represented cone."""
    if isinstance(cone, HRepCone):
        vec = _as_fractions(x, cone.dim)
        slacks = tuple(sum(a * v for a, v in zip(row, vec)) for row in cone.normals)
        for index, slack in enumerate(slacks):
            if slack < 0:
                return MembershipCertificate(False, "hrep-violation", (index, slack))
        return MembershipCertificate(True, "hrep-slacks", slacks)
    if isinstance(cone, VRepCone):
        vec = _as_fractions(x, cone.dim)
        ok, witness = farkas_membership(cone.rays, vec)
        if ok:
            return MembershipCertificate(True, "vrep-combination", witness)
        return MembershipCertificate(False, "vrep-separator", witness)
    raise TypeError(f"not a cone: {cone!r}")


def hasse_contains(c: Carousel, k: Weight) -> MembershipCertificate:
    """Membership of a weight in C^Hasse via the coordinate sign check."""
    check_weight(c, k)
    nums, den = coordinates_scaled(c, k)
    for index, num in enumerate(nums):
        if num < 0:
            return MembershipCertificate(False, "hasse-coordinate", (index, Fraction(num, den)))
    return MembershipCertificate(True, "hasse-coordinates", tuple(Fraction(n, den) for n in nums))


def farkas_membership(rays, x: tuple[Fraction, ...]):
    """Is x a nonnegative rational combination of the rays?

    Exact phase-I simplex with Bland's rule.  Returns (True, lambdas) or
    (False, separator) where the separator z is integral, z.x < 0, and
    z.r >= 0 for every ray; both certificates are verified before returning.
    """
    dim = len(x)
    n = len(rays)
    sign = [1 if xi >= 0 else -1 for xi in x]
    # Columns: n lambda variables then dim artificials; rhs last.
    table = []
    for i in range(dim):
        row = [Fraction(sign[i] * r[i]) for r in rays]
        row += [Fraction(1 if j == i else 0) for j in range(dim)]
        row.append(sign[i] * x[i])
        table.append(row)
    basis = [n + i for i in range(dim)]
    ncols = n + dim
    # Reduced-cost row for minimizing the artificial sum: z_j = sum_i A[i][j] - c_j.
    zrow = [sum(table[i][j] for i in range(dim)) for j in range(ncols + 1)]
    for j in range(n, ncols):
        zrow[j] -= 1

    while True:
        enter = next((j for j in range(ncols) if zrow[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(dim):
            coef = table[i][enter]
            if coef > 0:
                ratio = table[i][ncols] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise InternalCheckError("phase-I simplex unbounded")
        pivot = table[leave][enter]
        table[leave] = [v / pivot for v in table[leave]]
        for i in range(dim):
            if i != leave and table[i][enter]:
                factor = table[i][enter]
                table[i] = [v - factor * w for v, w in zip(table[i], table[leave])]
        factor = zrow[enter]
        zrow = [v - factor * w for v, w in zip(zrow, table[leave])]
        basis[leave] = enter

    objective = zrow[ncols]
    if objective == 0:
        lam = [Fraction(0)] * n
        for i, var in enumerate(basis):
            if var < n:
                lam[var] = table[i][ncols]
        if any(l < 0 for l in lam):
            raise InternalCheckError("simplex produced a negative multiplier")
        for i in range(dim):
            if sum(lam[j] * rays[j][i] for j in range(n)) != x[i]:
                raise InternalCheckError("membership combination failed verification")
        return True, tuple(lam)

    # Dual certificate: the simplex multipliers satisfy y_i = 1 + (z_j - c_j)
    # on the artificial column for row i; the separator is z = -sign * y.
    y = [1 + zrow[n + i] for i in range(dim)]
    z = [-sign[i] * y[i] for i in range(dim)]
    denom_lcm = 1
    for v in z:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    zi = primitive(tuple(int(v * denom_lcm) for v in z))
    if sum(w * v for w, v in zip(zi, x)) >= 0:
        raise InternalCheckError("separator fails z.x < 0")
    for r in rays:
        if dot(zi, r) < 0:
            raise InternalCheckError("separator fails z.r >= 0")
    return False, zi


# ---------------------------------------------------------------------------
# Subset and equality


@dataclass(frozen=True)
class SubsetCertificate:
    """Outcome of cone_subset: per-ray membership certificates in order."""

    holds: bool
    ray_certificates: tuple[tuple[tuple[int, ...], MembershipCertificate], ...]

    def __bool__(self) -> bool:
        return self.holds


def _as_vrep(cone) -> VRepCone:
    return cone if isinstance(cone, VRepCone) else dd_h_to_v(cone)


def cone_subset(inner, outer) -> SubsetCertificate:
    """Is every generator of `inner` contained in `outer`?

    `inner` is converted to rays if needed; membership in `outer` uses its
    native representation (no conversion, so H-rep outers have no dimension
    cap).  Sound because cones are closed under nonnegative combinations.
    """
    rays = _as_vrep(inner).rays
    certs = []
    holds = True
    for ray in rays:
        cert = contains(outer, ray)
        certs.append((ray, cert))
        if not cert.member:
            holds = False
    return SubsetCertificate(holds, tuple(certs))


def cone_equal(a, b) -> bool:
    return bool(cone_subset(a, b)) and bool(cone_subset(b, a))


@dataclass(frozen=True)
class SplitEqualityReport:
    """The split criterion: C^min equals C^Hasse iff p is totally split."""

    is_totally_split: bool
    cones_equal: bool

    @property
    def consistent(self) -> bool:
        return self.is_totally_split == self.cones_equal


def split_equality_report(c: Carousel) -> SplitEqualityReport:
    return SplitEqualityReport(
        is_totally_split=c.profile.is_totally_split(),
        cones_equal=cone_equal(min_cone(c), hasse_cone(c)),
    )
