"""Embedded invariant suite run by the `selftest` subcommand.

Five checks over a fixed panel of profiles: the determinant identity
|det M| = prod (p**f - 1), the cone chain C^min <= C^st <= C^Hasse, the split
criterion (equality iff totally split), the fibre-degree bridge against
reducible directions, and the torsion divisor bound on all strata.

The `bad_hasse` hook deliberately builds the Hasse matrix with the wrong sign
on the e_tau term so the determinant check trips; it exists as a negative
control proving the suite can fail.
"""

from __future__ import annotations

from itertools import product

from .carousel import build_carousel
from .cones import cone_subset, hasse_cone, min_cone, split_equality_report, std_cone
from .errors import InternalCheckError
from .hasse import Weight, hasse_lattice_index, hasse_matrix
from .intlinalg import bareiss_determinant
from .profile import PrimeLocus, SplittingProfile
from .reduction import reducible_directions
from .strata import StratumLabel, theorem_bridge, torsion_summary


def _profile(p: int, pairs) -> SplittingProfile:
    return SplittingProfile(p, tuple(PrimeLocus(e, f) for e, f in pairs))


DEFAULT_PANEL: tuple[SplittingProfile, ...] = (
    _profile(2, [(2, 1)]),
    _profile(2, [(1, 2)]),
    _profile(3, [(1, 1), (1, 1)]),
    _profile(2, [(2, 2)]),
    _profile(5, [(1, 3)]),
    _profile(2, [(3, 1), (1, 1)]),
)

BRIDGE_BOX = 2
BRIDGE_POWERS = (1, 2)


def _determinant_check(c, bad_hasse: bool) -> bool:
    rows = [list(row) for row in hasse_matrix(c).rows]
    if bad_hasse:
        # Negative control: flip the -e_tau term to +e_tau in every column.
        for j in range(c.d):
            rows[j][j] += 2
    return abs(bareiss_determinant(rows)) == hasse_lattice_index(c.profile)


def _cone_chain_check(c) -> bool:
    lower = cone_subset(min_cone(c), std_cone(c))
    upper = cone_subset(std_cone(c), hasse_cone(c))
    return bool(lower) and bool(upper)


def _split_check(c) -> bool:
    return split_equality_report(c).consistent


def _bridge_check(c) -> bool:
    taus = [
        tau
        for tau in c.embeddings
        if c.profile.loci[tau.locus].degree > 1
    ]
    for coords in product(range(-BRIDGE_BOX, BRIDGE_BOX + 1), repeat=c.d):
        k = Weight(coords)
        reducible = set(reducible_directions(c, k))
        for tau in taus:
            for r in BRIDGE_POWERS:
                if theorem_bridge(c, k, tau, r) != (tau in reducible):
                    return False
    return True


def _torsion_check(c) -> bool:
    d = c.d
    p = c.profile.p
    bounds = []
    for locus in c.profile.loci:
        bounds.extend([p ** (2 * locus.f) - 1] * locus.degree)
    for mask in range(2**d):
        label = StratumLabel(d, frozenset(j for j in range(d) if mask >> j & 1))
        try:
            summary = torsion_summary(c, label, locus="open")
        except InternalCheckError:
            return False
        for order, bound in zip(summary.torsion_orders, bounds):
            if order == 0 or bound % order:
                return False
    return True


CHECKS = (
    ("determinant_identity", lambda c, bad: _determinant_check(c, bad)),
    ("cone_chain", lambda c, bad: _cone_chain_check(c)),
    ("split_criterion", lambda c, bad: _split_check(c)),
    ("bridge_identity", lambda c, bad: _bridge_check(c)),
    ("torsion_bound", lambda c, bad: _torsion_check(c)),
)


def run_selftest(panel=None, bad_hasse: bool = False):
    """Run all checks over the panel; returns (rows, all_passed, vacuous)."""
    panel = DEFAULT_PANEL if panel is None else tuple(panel)
    rows = []
    all_passed = True
    for profile in panel:
        c = build_carousel(profile)
        for name, check in CHECKS:
            passed = bool(check(c, bad_hasse))
            rows.append({"check": name, "profile": profile.as_dict(), "pass": passed})
            all_passed = all_passed and passed
    return rows, all_passed, not panel
