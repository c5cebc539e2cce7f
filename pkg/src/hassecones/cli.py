"""Command-line front end: structured JSON reports over the library.

One report per invocation on stdout; human diagnostics on stderr.  Reports
are byte-deterministic for a fixed argv and seed.  Exit codes: 0 success,
2 usage/schema error, 3 invariant violation (including Dedekind rejection),
4 internal check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction

from . import selftest as selftest_mod
from .carousel import build_carousel
from .cones import (
    cone_subset,
    dd_h_to_v,
    dd_v_to_h,
    hasse_cone,
    hasse_contains,
    min_cone,
    split_equality_report,
    std_cone,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    ForeignEmbedding,
    HasseConesError,
    InternalCheckError,
    InvariantError,
    MultiplierNotDividing,
    NotPMaximal,
    NotReducible,
    SchemaError,
    SingletonOrbit,
)
from .gfpoly import MinPolySpec, factor_mod_p, profile_from_minpoly
from .hasse import Weight, hasse_coordinates, hasse_lattice_index, hasse_matrix
from .intlinalg import bareiss_determinant
from .profile import SplittingProfile, parse_profile, profile_from_data
from .reduction import (
    BudgetExceeded,
    InMinCone,
    Vanishing,
    greedy_reduce,
    reducible_directions,
)
from .strata import StratumLabel, fibre_degree, stratum_dimension, theorem_bridge, torsion_summary

SCHEMA_VERSION = "1"
MAX_SWEEP_DEGREE = 12

USAGE_ERRORS = (
    SchemaError,
    ForeignEmbedding,
    DimensionMismatch,
    DimensionTooLarge,
    NotReducible,
    SingletonOrbit,
    MultiplierNotDividing,
)


class UsageError(HasseConesError):
    """Flag-level misuse detected by the CLI itself."""


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _load_profile(args) -> SplittingProfile:
    if getattr(args, "profile", None) and getattr(args, "minpoly", None):
        raise UsageError("pass either --profile or --minpoly/--p, not both")
    if getattr(args, "profile", None):
        text = args.profile
        if text.startswith("@"):
            try:
                with open(text[1:], "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                raise UsageError(f"cannot read profile file {text[1:]!r}: {exc}") from exc
        return parse_profile(text)
    if getattr(args, "minpoly", None):
        if getattr(args, "p", None) is None:
            raise UsageError("--minpoly requires --p")
        coeffs = _parse_int_list(args.minpoly, "--minpoly")
        return profile_from_minpoly(MinPolySpec(tuple(coeffs), args.p), seed=args.seed)
    raise UsageError("a profile is required: --profile or --minpoly with --p")


def _parse_int_list(text: str, flag: str) -> list[int]:
    raw = text.strip()
    if raw.startswith("["):
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{flag} is not a valid JSON array: {exc}") from exc
        if not isinstance(data, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
            raise UsageError(f"{flag} must be an array of integers")
        return data
    try:
        return [int(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"{flag} must be a JSON array or comma-separated integers") from exc


def _profile_payload(profile: SplittingProfile, c) -> dict:
    return {
        "profile": profile.as_dict(),
        "degree": profile.degree,
        "embeddings": [tau.label() for tau in c.embeddings],
        "sigma": [c.embeddings[j].label() for j in c.sigma_table],
        "multipliers": list(c.n_table),
        "totally_split": profile.is_totally_split(),
        "hasse_lattice_index": hasse_lattice_index(profile),
    }


def _cmd_profile(args) -> dict:
    profile = _load_profile(args)
    c = build_carousel(profile)
    payload = _profile_payload(profile, c)
    if getattr(args, "minpoly", None):
        coeffs = _parse_int_list(args.minpoly, "--minpoly")
        fact = factor_mod_p(MinPolySpec(tuple(coeffs), args.p), seed=args.seed)
        payload["mod_p_factorization"] = [
            {"coefficients": list(poly), "multiplicity": mult} for poly, mult in fact.factors
        ]
    return payload


def _cmd_cones(args) -> dict:
    profile = _load_profile(args)
    c = build_carousel(profile)
    cone_min = min_cone(c)
    cone_std = std_cone(c)
    cone_hasse = hasse_cone(c)
    matrix = hasse_matrix(c)
    det = bareiss_determinant(matrix.rows)
    expected = hasse_lattice_index(profile)
    if abs(det) != expected:
        raise InternalCheckError(f"determinant {det} does not match the locus product {expected}")
    report = split_equality_report(c)
    if not report.consistent:
        raise InternalCheckError("split criterion and cone equality disagree")
    chain_low = cone_subset(cone_min, cone_std)
    chain_high = cone_subset(cone_std, cone_hasse)
    if not (chain_low and chain_high):
        raise InternalCheckError("cone chain containment failed")
    return {
        "profile": profile.as_dict(),
        "min_cone": {
            "normals": [list(row) for row in cone_min.normals],
            "rays": [list(ray) for ray in dd_h_to_v(cone_min).rays],
        },
        "std_cone": {"normals": [list(row) for row in cone_std.normals]},
        "hasse_cone": {
            "rays": [list(ray) for ray in cone_hasse.rays],
            "normals": [list(row) for row in dd_v_to_h(cone_hasse).normals],
        },
        "hasse_matrix": [list(row) for row in matrix.rows],
        "determinant": det,
        "hasse_lattice_index": expected,
        "chain": {"min_in_std": bool(chain_low), "std_in_hasse": bool(chain_high)},
        "split": {"totally_split": report.is_totally_split, "cones_equal": report.cones_equal},
    }


def _cmd_reduce(args) -> dict:
    profile = _load_profile(args)
    c = build_carousel(profile)
    if args.weight is None:
        raise UsageError("reduce requires --weight")
    coords = _parse_int_list(args.weight, "--weight")
    k = Weight(tuple(coords))
    coords_exact = hasse_coordinates(c, k)
    membership = hasse_contains(c, k)
    outcome = greedy_reduce(c, k)
    payload: dict = {
        "profile": profile.as_dict(),
        "weight": list(k.coords),
        "hasse_coordinates": [_frac(v) for v in coords_exact],
        "in_hasse_cone": membership.member,
        "reducible_directions": [tau.label() for tau in reducible_directions(c, k)],
    }
    if isinstance(outcome, InMinCone):
        payload["outcome"] = {
            "kind": "in_min_cone",
            "w": list(outcome.decomposition.w.coords),
            "a": list(outcome.decomposition.a),
            "steps": [c.embeddings[j].label() for j in outcome.steps],
        }
    elif isinstance(outcome, Vanishing):
        payload["outcome"] = {
            "kind": "vanishing",
            "tau": c.embeddings[outcome.tau].label(),
            "coordinate": _frac(outcome.coordinate),
            "weight_at_detection": list(outcome.weight.coords),
            "steps": [c.embeddings[j].label() for j in outcome.steps],
        }
    else:
        assert isinstance(outcome, BudgetExceeded)
        payload["outcome"] = {
            "kind": "budget_exceeded",
            "steps": [c.embeddings[j].label() for j in outcome.trace],
        }
    return payload


def _stratum_row(c, label: StratumLabel) -> dict:
    summary = torsion_summary(c, label, locus="open")
    p = c.profile.p
    bounds = []
    for locus in c.profile.loci:
        bounds.extend([p ** (2 * locus.f) - 1] * locus.degree)
    divisibility = all(
        order != 0 and bound % order == 0 for order, bound in zip(summary.torsion_orders, bounds)
    )
    return {
        "stratum": label.bitstring(),
        "dimension": stratum_dimension(c.d, label),
        "invariant_factors": list(summary.invariant_factors),
        "torsion_orders": list(summary.torsion_orders),
        "group_order": summary.group_order,
        "divisibility": "pass" if divisibility else "fail",
    }


def _cmd_picard(args) -> dict:
    profile = _load_profile(args)
    c = build_carousel(profile)
    if args.stratum is not None:
        label = StratumLabel.from_bitstring(args.stratum)
        if label.size != c.d:
            raise UsageError(f"--stratum has length {label.size}, profile degree is {c.d}")
        return {"profile": profile.as_dict(), "strata": [_stratum_row(c, label)]}
    if c.d > MAX_SWEEP_DEGREE:
        raise UsageError(
            f"degree {c.d} > {MAX_SWEEP_DEGREE}: pass --stratum to pick one of the 2^d strata"
        )
    rows = []
    for seq in itertools.product("01", repeat=c.d):
        rows.append(_stratum_row(c, StratumLabel.from_bitstring("".join(seq))))
    return {"profile": profile.as_dict(), "strata": rows}


def _cmd_bridge(args) -> dict:
    profile = _load_profile(args)
    c = build_carousel(profile)
    if args.weight is None:
        raise UsageError("bridge requires --weight")
    if args.tau is None:
        raise UsageError("bridge requires --tau (canonical embedding index)")
    if args.r is None:
        raise UsageError("bridge requires --r")
    k = Weight(tuple(_parse_int_list(args.weight, "--weight")))
    if not (0 <= args.tau < c.d):
        raise UsageError(f"--tau must be in [0, {c.d})")
    tau = c.embeddings[args.tau]
    degree = fibre_degree(c, k, tau, args.r)
    bridge = theorem_bridge(c, k, tau, args.r)
    reducible = tau in set(reducible_directions(c, k))
    if bridge != reducible:
        raise InternalCheckError("fibre-degree sign disagrees with reducibility")
    return {
        "profile": profile.as_dict(),
        "weight": list(k.coords),
        "tau": tau.label(),
        "r": args.r,
        "multiplier": c.n_table[args.tau],
        "fibre_degree": degree,
        "negative": bridge,
        "reducible": reducible,
    }


def _cmd_selftest(args) -> tuple[dict, int]:
    panel = None
    if args.panel is not None:
        try:
            data = json.loads(args.panel)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--panel is not valid JSON: {exc}") from exc
        if not isinstance(data, list):
            raise UsageError("--panel must be a JSON array of profile objects")
        panel = tuple(profile_from_data(entry) for entry in data)
    rows, all_passed, vacuous = selftest_mod.run_selftest(panel, bad_hasse=args.debug_bad_hasse)
    if vacuous:
        print("warning: empty selftest panel; vacuous pass", file=sys.stderr)
    payload = {
        "checks": rows,
        "panel_size": len(rows) // len(selftest_mod.CHECKS) if rows else 0,
        "all_passed": all_passed,
        "vacuous": vacuous,
    }
    return payload, 0 if all_passed else 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hassecones",
        description="Exact weight combinatorics of mod-p Hilbert modular forms.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, profile_flags=True):
        if profile_flags:
            sp.add_argument("--profile", help="inline JSON profile or @path to a file")
            sp.add_argument("--minpoly", help="monic integer polynomial, ascending coefficients")
            sp.add_argument("--p", type=int, help="prime for --minpoly")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized factorization steps")
        sp.add_argument("--csv", action="store_true", help="emit tabular payloads as RFC-4180 CSV")

    sp = sub.add_parser("profile", help="echo a profile with its embedding carousel")
    common(sp)

    sp = sub.add_parser("cones", help="cone representations, chain and split checks")
    common(sp)

    sp = sub.add_parser("reduce", help="Hasse coordinates and greedy reduction of a weight")
    common(sp)
    sp.add_argument("--weight", help="integer weight vector in canonical embedding order")

    sp = sub.add_parser("picard", help="stratum relation quotients and torsion orders")
    common(sp)
    sp.add_argument("--stratum", help="bitstring over the canonical order, e.g. 10")

    sp = sub.add_parser("bridge", help="fibre degree vs reducibility for one direction")
    common(sp)
    sp.add_argument("--weight", help="integer weight vector in canonical embedding order")
    sp.add_argument("--tau", type=int, help="canonical index of the embedding")
    sp.add_argument("--r", type=int, help="power of p for the fibre degree")

    sp = sub.add_parser("selftest", help="run the embedded invariant suite")
    common(sp, profile_flags=False)
    sp.add_argument("--panel", help="JSON array of profile objects overriding the default panel")
    sp.add_argument(
        "--debug-bad-hasse",
        action="store_true",
        help="negative control: corrupt the Hasse matrix sign so checks must fail",
    )

    return parser


def _csv_payload(subcommand: str, payload: dict) -> str | None:
    if subcommand != "picard":
        return None
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(["stratum", "dimension", "invariant_factors", "torsion_orders", "group_order", "divisibility"])
    for row in payload["strata"]:
        writer.writerow(
            [
                row["stratum"],
                row["dimension"],
                " ".join(str(v) for v in row["invariant_factors"]),
                " ".join(str(v) for v in row["torsion_orders"]),
                row["group_order"],
                row["divisibility"],
            ]
        )
    return buffer.getvalue()


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute one invocation; returns (report, exit_code) without printing."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return {"schema_version": SCHEMA_VERSION, "error": "usage", "exit_status": 2}, int(exc.code or 2)

    command_echo = {"subcommand": args.subcommand, "argv": list(argv)}
    try:
        if args.subcommand == "profile":
            payload, status = _cmd_profile(args), 0
        elif args.subcommand == "cones":
            payload, status = _cmd_cones(args), 0
        elif args.subcommand == "reduce":
            payload, status = _cmd_reduce(args), 0
        elif args.subcommand == "picard":
            payload, status = _cmd_picard(args), 0
        elif args.subcommand == "bridge":
            payload, status = _cmd_bridge(args), 0
        else:
            payload, status = _cmd_selftest(args)
    except (UsageError,) + USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return {
            "schema_version": SCHEMA_VERSION,
            "command": command_echo,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "exit_status": 2,
        }, 2
    except (InvariantError, NotPMaximal) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return {
            "schema_version": SCHEMA_VERSION,
            "command": command_echo,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "exit_status": 3,
        }, 3
    except InternalCheckError as exc:
        print(f"internal check failure: {exc}", file=sys.stderr)
        return {
            "schema_version": SCHEMA_VERSION,
            "command": command_echo,
            "error": {"type": "InternalCheckError", "message": str(exc)},
            "exit_status": 4,
        }, 4

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command_echo,
        "payload": payload,
        "exit_status": status,
    }
    return report, status


def render(report: dict, args_csv: bool) -> str:
    subcommand = report.get("command", {}).get("subcommand")
    if args_csv and "payload" in report:
        table = _csv_payload(subcommand, report["payload"])
        if table is not None:
            return table
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, status = run(argv)
    wants_csv = "--csv" in argv
    sys.stdout.write(render(report, wants_csv))
    return status


if __name__ == "__main__":
    sys.exit(main())
