"""Command-line front end.

    burniat <command> --config <path> [--height N] [--json]

Commands: invariants, moduli, twists, search, fiber, report.  The config
is a single JSON document; rationals travel as "p/q" strings so nothing
is ever rounded.  Exit codes: 0 success, 1 domain error (including a
malformed config), 2 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, InvariantViolation
from .moduli import automorphism_group, census, is_generic, moduli_point, strata, validate_moduli
from .numbers import PrimeSet, format_rational, is_prime, rational
from .oracle import OracleFact
from .quartic import QuarticCurve
from .report import build_report, report_to_dict
from .search import hyperelliptic_search
from .surface import (
    BurniatSurface,
    bad_primes,
    discriminant_D,
    fiber_models,
    fiber_type,
    is_smooth_surface,
    sigma,
)
from .twists import enumerate_twists, filter_twists, twist_surface


class Config:
    def __init__(
        self,
        surface: BurniatSurface,
        height: int,
        extra_primes: tuple[int, ...],
        oracle: tuple[OracleFact, ...],
        output_json: bool,
    ):
        self.surface = surface
        self.height = height
        self.extra_primes = extra_primes
        self.oracle = oracle
        self.output_json = output_json

    def prime_set(self) -> PrimeSet:
        return bad_primes(self.surface) | PrimeSet(self.extra_primes)


def _config_error(field: str, reason: str) -> DomainError:
    return DomainError(f"config field '{field}': {reason}")


def _parse_rational(field: str, value) -> Fraction:
    if isinstance(value, float):
        raise _config_error(field, f"floats are not accepted (got {value!r}); use 'p/q' strings")
    try:
        return rational(value)
    except DomainError as exc:
        raise _config_error(field, str(exc)) from exc


def parse_oracle_entry(index: int, entry) -> OracleFact:
    field = f"oracle[{index}]"
    if not isinstance(entry, dict):
        raise _config_error(field, "expected an object")
    subject = entry.get("subject")
    if not isinstance(subject, dict) or "kind" not in subject:
        raise _config_error(field + ".subject", "expected an object with a 'kind'")
    kind = subject["kind"]
    points = entry.get("points")
    if points is not None:
        if not isinstance(points, list):
            raise _config_error(field + ".points", "expected a list of point entries")
        points = tuple(
            (str(p[0]), str(p[1])) for p in points
        )
    kwargs = dict(
        subject_kind=kind,
        rank=entry.get("rank"),
        points=points,
        provenance=entry.get("provenance", ""),
    )
    if kind == "hexagon_side":
        kwargs["side"] = subject.get("side")
    elif kind == "twist_factor":
        twist = subject.get("twist")
        if not isinstance(twist, list) or len(twist) != 3:
            raise _config_error(field + ".subject.twist", "expected a triple of integers")
        kwargs["twist"] = tuple(int(v) for v in twist)
        kwargs["curve_index"] = subject.get("curve")
    elif kind == "fiber_curve":
        kwargs["projection"] = subject.get("projection")
        kwargs["x0"] = _parse_rational(field + ".subject.x0", subject.get("x0", "0"))
        kwargs["model"] = subject.get("model")
    try:
        return OracleFact(**kwargs)
    except DomainError as exc:
        raise _config_error(field, str(exc)) from exc


def load_config(path: str, height_override: Optional[int], output_json: bool) -> Config:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise DomainError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise _config_error("<root>", "expected a JSON object")

    curves_raw = raw.get("curves")
    if not isinstance(curves_raw, list) or len(curves_raw) != 3:
        raise _config_error("curves", "expected a list of exactly three [r, s, t] triples")
    curves = []
    for i, triple in enumerate(curves_raw):
        if not isinstance(triple, list) or len(triple) != 3:
            raise _config_error(f"curves[{i}]", "expected a triple [r, s, t]")
        coeffs = [_parse_rational(f"curves[{i}][{k}]", v) for k, v in enumerate(triple)]
        curves.append(QuarticCurve(*coeffs))

    if "c" not in raw:
        raise _config_error("c", "missing; the product constant is required")
    c = _parse_rational("c", raw["c"])
    if c == 0:
        raise _config_error("c", "must be nonzero")

    height = raw.get("height", 1000)
    if height_override is not None:
        height = height_override
    if not isinstance(height, int) or isinstance(height, bool) or height < 1:
        raise _config_error("height", f"expected a positive integer, got {height!r}")

    extra = raw.get("extra_primes", [])
    if not isinstance(extra, list):
        raise _config_error("extra_primes", "expected a list of primes")
    for p in extra:
        if not isinstance(p, int) or not is_prime(p):
            raise _config_error("extra_primes", f"{p!r} is not prime")

    oracle_raw = raw.get("oracle", [])
    if not isinstance(oracle_raw, list):
        raise _config_error("oracle", "expected a list of fact objects")
    oracle = tuple(parse_oracle_entry(i, entry) for i, entry in enumerate(oracle_raw))

    surface = BurniatSurface(curves, c)
    return Config(
        surface=surface,
        height=height,
        extra_primes=tuple(extra),
        oracle=oracle,
        output_json=output_json,
    )


def _emit(payload: dict, lines: list[str], as_json: bool) -> str:
    if as_json:
        return json.dumps(payload, indent=2, sort_keys=True)
    return "\n".join(lines)


def cmd_invariants(cfg: Config) -> str:
    S = cfg.surface
    smooth = is_smooth_surface(S)
    D = discriminant_D(S)
    sg = sigma(S)
    payload = {
        "smooth": smooth,
        "discriminant": format_rational(D),
        "sigma": [format_rational(v) for v in sg.as_tuple()],
    }
    lines = [
        f"smooth = {str(smooth).lower()}",
        f"D = {format_rational(D)}",
        "sigma = (" + ", ".join(format_rational(v) for v in sg.as_tuple()) + ")",
    ]
    if smooth:
        bad = bad_primes(S)
        payload["bad_primes"] = list(bad)
        lines.append("bad primes = " + repr(bad))
    return _emit(payload, lines, cfg.output_json)


def cmd_moduli(cfg: Config) -> str:
    S = cfg.surface
    mp = moduli_point(S)
    flags = strata(mp)
    group = automorphism_group(flags)
    cens = census(S)
    stratum_names = [
        name.upper()
        for name, on in (
            ("m1", flags.m1),
            ("m2", flags.m2),
            ("m3", flags.m3),
            ("m4", flags.m4),
            ("n1", flags.n1),
            ("n2", flags.n2),
        )
        if on
    ]
    payload = {
        "moduli": [format_rational(v) for v in mp.as_tuple()],
        "valid": validate_moduli(mp),
        "strata": stratum_names,
        "n2_parameter": format_rational(flags.n2_parameter)
        if flags.n2_parameter is not None
        else None,
        "automorphism_group": group,
        "census": {"infinity": cens.infinity, "type_i": cens.type_i, "type_ii": cens.type_ii},
        "generic": is_generic(S),
    }
    lines = [
        "moduli point = (" + ", ".join(format_rational(v) for v in mp.as_tuple()) + ")",
        f"valid = {str(payload['valid']).lower()}",
        "strata = " + (", ".join(stratum_names) if stratum_names else "(generic)"),
        f"automorphism group = {group}",
        f"census: infinity={cens.infinity} typeI={cens.type_i} typeII={cens.type_ii}",
        f"generic = {str(payload['generic']).lower()}",
    ]
    return _emit(payload, lines, cfg.output_json)


def cmd_twists(cfg: Config) -> str:
    S = cfg.surface
    bad = cfg.prime_set()
    twist_list = enumerate_twists(bad)
    statuses = filter_twists(S, cfg.height, bad=bad, twists=twist_list)
    survivors = [tw for tw in twist_list if statuses[tw].kind == "points"]
    undetermined = [tw for tw in twist_list if statuses[tw].kind == "undetermined"]
    empty = len(twist_list) - len(survivors) - len(undetermined)
    payload = {
        "bad_primes": list(bad),
        "total": len(twist_list),
        "empty_proven": empty,
        "points_found": [list(t.as_tuple()) for t in survivors],
        "undetermined": [list(t.as_tuple()) for t in undetermined],
        "height": cfg.height,
    }
    lines = [
        f"bad primes = {bad!r}",
        f"twists enumerated = {len(twist_list)}",
        f"empty proven = {empty}",
        f"points found ({len(survivors)}): " + ", ".join(str(t) for t in survivors),
        f"undetermined ({len(undetermined)}): " + ", ".join(str(t) for t in undetermined),
    ]
    return _emit(payload, lines, cfg.output_json)


def cmd_search(cfg: Config) -> str:
    from .search import search_twist

    S = cfg.surface
    bad = cfg.prime_set()
    twist_list = enumerate_twists(bad)
    statuses = filter_twists(S, cfg.height, bad=bad, twists=twist_list)
    payload = {"height": cfg.height, "twists": []}
    lines = []
    for tw in twist_list:
        if statuses[tw].kind != "points":
            continue
        twisted = twist_surface(S, tw)
        points = search_twist(twisted, cfg.height)
        payload["twists"].append(
            {
                "twist": list(tw.as_tuple()),
                "points": [
                    [[format_rational(a.x), format_rational(a.y)] for a in p.components]
                    for p in points
                ],
            }
        )
        lines.append(f"twist {tw}: {len(points)} affine points")
        for p in points:
            coords = "; ".join(
                f"x{j}={format_rational(p.components[j-1].x)}, y{j}={format_rational(p.components[j-1].y)}"
                for j in (1, 2, 3)
            )
            lines.append("  " + coords)
    if not lines:
        lines = ["no surviving twists"]
    return _emit(payload, lines, cfg.output_json)


def cmd_fiber(cfg: Config, projection: int, x0: Fraction) -> str:
    S = cfg.surface
    fm = fiber_models(S, projection, x0)
    ftype = fiber_type(S, projection, x0)
    points = hyperelliptic_search(fm.curve_f, min(cfg.height, 100))
    payload = {
        "projection": projection,
        "x0": format_rational(x0),
        "quartic_a": [format_rational(v) for v in fm.quartic_a],
        "quartic_b": [format_rational(v) for v in fm.quartic_b],
        "curve_d": [format_rational(v) for v in fm.curve_d],
        "curve_e": [format_rational(v) for v in fm.curve_e],
        "curve_f": [format_rational(v) for v in fm.curve_f],
        "fiber_type": ftype.value,
        "curve_f_points": [
            ["inf"] if p == "inf" else [format_rational(p[0]), format_rational(p[1])]
            for p in points
        ],
    }
    lines = [
        f"fiber of projection {projection} over x = {format_rational(x0)}",
        "quartic A = (" + ", ".join(format_rational(v) for v in fm.quartic_a) + ")",
        "quartic B = (" + ", ".join(format_rational(v) for v in fm.quartic_b) + ")",
        f"type = {ftype.value}",
        "genus-2 model F coefficients (x'^6 .. z'^6) = ("
        + ", ".join(format_rational(v) for v in fm.curve_f)
        + ")",
        f"F points up to height {min(cfg.height, 100)}: "
        + ", ".join(
            "infinity" if p == "inf" else f"({format_rational(p[0])}, {format_rational(p[1])})"
            for p in points
        ),
    ]
    return _emit(payload, lines, cfg.output_json)


def cmd_report(cfg: Config) -> str:
    rep = build_report(cfg.surface, cfg.height, cfg.oracle)
    payload = report_to_dict(rep)
    summary = rep.summary
    lines = [
        f"D = {format_rational(rep.discriminant)}",
        f"bad primes = {rep.bad!r}",
        "moduli point = (" + ", ".join(format_rational(v) for v in rep.moduli.as_tuple()) + ")",
        f"automorphism group = {rep.aut_group}",
        f"census: infinity={rep.census_counts.infinity} typeI={rep.census_counts.type_i}"
        f" typeII={rep.census_counts.type_ii}",
        f"twists: {len(rep.statuses)} total, "
        f"{sum(1 for _, st in rep.statuses if st.kind == 'empty')} empty proven, "
        f"{len(rep.searches)} with points, "
        f"{sum(1 for _, st in rep.statuses if st.kind == 'undetermined')} undetermined",
        "hexagon side counts = (" + ", ".join(str(c) for c in rep.hexagon.counts) + ")",
        f"positive-rank sides = {list(rep.hexagon.positive_rank_sides)}",
        f"S at infinity: {summary.at_infinity} ({summary.at_infinity_qualifier})",
        f"sporadic points on S: {summary.sporadic_orbits} ({summary.sporadic_qualifier})",
        f"type-I classes: {len(rep.type_i_classes)}",
    ]
    for caveat in summary.caveats:
        lines.append(f"caveat: {caveat}")
    return _emit(payload, lines, cfg.output_json)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burniat",
        description="Exact analysis of a primary Burniat surface over Q",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("invariants", "discriminant, sigma invariants and bad primes"),
        ("moduli", "moduli point, strata, automorphism group and census"),
        ("twists", "enumerate twists and filter by local solvability and search"),
        ("search", "rational points on the surviving twists"),
        ("fiber", "fiber models of one projection over a given x-value"),
        ("report", "the full classified report"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="path to the JSON configuration")
        p.add_argument("--height", type=int, default=None, help="override the height bound")
        p.add_argument("--json", action="store_true", help="emit structured JSON")
        if name == "fiber":
            p.add_argument("--projection", type=int, required=True, choices=(1, 2, 3))
            p.add_argument("--x0", type=str, required=True, help="base x-value, e.g. 1 or 3/2")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, args.height, args.json)
        if args.command == "invariants":
            out = cmd_invariants(cfg)
        elif args.command == "moduli":
            out = cmd_moduli(cfg)
        elif args.command == "twists":
            out = cmd_twists(cfg)
        elif args.command == "search":
            out = cmd_search(cfg)
        elif args.command == "fiber":
            out = cmd_fiber(cfg, args.projection, _parse_rational("--x0", args.x0))
        elif args.command == "report":
            out = cmd_report(cfg)
        else:  # pragma: no cover
            raise DomainError(f"unknown command {args.command}")
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
