#!/usr/bin/env python3
# Command-line front end: landmark reports, bound curves as CSV and finite-length oracle experiments
import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass
from typing import Callable, TextIO

import numpy as np

from AWGNBounds import THETA_MIN, ChannelAWGN, E0_awgn, EU_awgn, landmarks_awgn, nats_to_bits, psi
from BSCBounds import (bound_theorem3, bound_theorem5, bound_theorem6, expurgation_Ex, random_coding_E0,
                       sphere_packing, union_bound_low_rate)
from BSCLandmarks import landmarks, lower_envelope, straight_line_curve, upper_envelope
from DistanceProfile import DistanceProfile, binomial_profile, lp_profile, script_profile
from EntropyCore import EDGE_SLACK, ChannelBSC, pairwise_exponent_A
from Errors import DomainError, NumericalFailure, ProfileSyntaxError, ReliabilityError, ResourceLimit
from Oracle import (BinaryCode, PairwiseGeometry, distance_distribution, exact_pe_ml, joint_set_logprob,
                    krawtchouk_value, monte_carlo_pe, pairwise_set_logprob)
from OverlapExponent import overlap_exponent_B
from PolyExponents import krawtchouk_exponent_k
from ProfileJIT import CompiledProfile, load_profile
from Settings import LANDMARK_TOL, MC_MIN_TRIALS, QUAD_TOL, RESOLUTIONS, ROOT_TOL, Resolution

EXIT_OK: int = 0
EXIT_DOMAIN: int = 2
EXIT_NUMERICAL: int = 3

CSV_HEADER: list[str] = ["R", "bound", "value"]
REPORT_HEADER: str = "quantity,value,unit,tolerance"

BSCBound = Callable[[float, ChannelBSC, Resolution, Callable[[float], DistanceProfile]], float]


@dataclass(frozen=True)
class RateDomain:
    """Rates a bound is defined on; closed ends allow EDGE_SLACK."""
    lo: float
    hi: float
    open_lo: bool = False
    open_hi: bool = False

    def contains(self, R: float) -> bool:
        above = R > self.lo if self.open_lo else R >= self.lo - EDGE_SLACK
        below = R < self.hi if self.open_hi else R <= self.hi + EDGE_SLACK
        return above and below


EMPTY_DOMAIN: RateDomain = RateDomain(0.0, 0.0, open_lo=True, open_hi=True)


def _straight(R: float, ch: ChannelBSC, res: Resolution, profile) -> float:
    curve = straight_line_curve(ch, res)
    value = math.inf if curve is None else curve.value_at(R)
    if not math.isfinite(value):
        raise DomainError(f"straight line does not reach R={R}")
    return value


def _straight_domain(ch: ChannelBSC, res: Resolution) -> RateDomain:
    curve = straight_line_curve(ch, res)
    return EMPTY_DOMAIN if curve is None else RateDomain(float(curve.rates[0]), ch.capacity)


# Registration order is the row order inside each rate
BSC_BOUNDS: dict[str, BSCBound] = {
    "sp": lambda R, ch, res, profile: sphere_packing(R, ch),
    "e0": lambda R, ch, res, profile: random_coding_E0(R, ch),
    "ex": lambda R, ch, res, profile: expurgation_Ex(R, ch),
    "union": lambda R, ch, res, profile: union_bound_low_rate(R, ch, res),
    "thm3": lambda R, ch, res, profile: bound_theorem3(R, ch, res),
    "thm6": lambda R, ch, res, profile: bound_theorem6(R, ch, res),
    "thm5": lambda R, ch, res, profile: bound_theorem5(R, profile(R), ch, res),
    "straightline": _straight,
    "upper_env": lambda R, ch, res, profile: upper_envelope(R, ch, res),
    "lower_env": lambda R, ch, res, profile: lower_envelope(R, ch),
}

# Rows outside these are left out; a DomainError inside is a numerical failure
BSC_DOMAINS: dict[str, Callable[[ChannelBSC, Resolution], RateDomain]] = {
    "sp": lambda ch, res: RateDomain(0.0, ch.capacity),
    "e0": lambda ch, res: RateDomain(0.0, ch.r_crit),
    "ex": lambda ch, res: RateDomain(0.0, ch.r_x),
    "union": lambda ch, res: RateDomain(0.0, ch.capacity, open_lo=True, open_hi=True),
    "thm3": lambda ch, res: RateDomain(0.0, ch.capacity, open_lo=True, open_hi=True),
    "thm6": lambda ch, res: RateDomain(0.0, ch.capacity, open_lo=True, open_hi=True),
    "thm5": lambda ch, res: RateDomain(0.0, 1.0, open_lo=True, open_hi=True),
    "straightline": _straight_domain,
    "upper_env": lambda ch, res: RateDomain(0.0, ch.capacity),
    "lower_env": lambda ch, res: RateDomain(0.0, ch.capacity),
}

AWGN_BOUNDS: dict[str, Callable[[float, ChannelAWGN], float]] = {
    "e0": E0_awgn,
    "eu": EU_awgn,
}

AWGN_DOMAINS: dict[str, Callable[[ChannelAWGN], RateDomain]] = {
    "e0": lambda ch: RateDomain(0.0, ch.r_crit),
    "eu": lambda ch: RateDomain(0.0, psi(THETA_MIN), open_lo=True),
}


def _evaluate(name: str, R: float, bound: Callable[[], float]) -> float:
    try:
        return bound()
    except (DomainError, NumericalFailure) as e:
        raise NumericalFailure(f"bound '{name}' failed at R={R:.9f}: {e}") from e


def parse_rates(text: str) -> np.ndarray:
    """'start:stop:step' with the stop included when it lies on the grid."""
    try:
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise DomainError(f"Rate grid must look like start:stop:step, got '{text}'")

    if not step > 0.0 or not start < stop:
        raise DomainError(f"Rate grid needs step > 0 and start < stop, got '{text}'")

    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def parse_bounds(text: str, registry: dict) -> list[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise DomainError("No bounds requested")

    unknown = [name for name in names if name not in registry]
    if unknown:
        raise DomainError(f"Unknown bound(s) {', '.join(unknown)}; choose from {', '.join(registry)}")

    return [name for name in registry if name in names]  # Registration order


def _format(value: float | None) -> str:
    if value is None:
        return "none"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.9f}"


def _report(out: TextIO, rows: list[tuple[str, float | None, str, str]]) -> None:
    print(REPORT_HEADER, file=out)
    for quantity, value, unit, tolerance in rows:
        print(f"{quantity},{_format(value)},{unit},{tolerance}", file=out)


def _profile_factory(choice: str, res: Resolution) -> Callable[[float], DistanceProfile]:
    match choice:
        case "binomial":
            return binomial_profile
        case "lp":
            return lambda R: lp_profile(R, resolution=res)
        case _:
            compiled: CompiledProfile = load_profile(choice)
            return lambda R: script_profile(compiled, R)


def cmd_bsc_landmarks(args: argparse.Namespace, out: TextIO) -> int:
    ch = ChannelBSC(args.p)
    res = RESOLUTIONS[args.resolution]
    marks = landmarks(ch, res)
    window = marks.tight_window

    _report(out, [
        ("p", ch.p, "probability", "exact"),
        ("r_x", marks.r_x, "bits", f"{ROOT_TOL:g}"),
        ("r_crit", marks.r_crit, "bits", f"{ROOT_TOL:g}"),
        ("delta1", marks.delta1, "relative distance", f"{ROOT_TOL:g}"),
        ("r1", marks.r1, "bits", f"{res.refine_tol:g}"),
        ("r0", marks.r0, "bits", f"{LANDMARK_TOL:g}"),
        ("r0_star", marks.r0_star, "bits", f"{LANDMARK_TOL:g}"),
        ("window_lo", window[0] if window else None, "bits", f"{res.refine_tol:g}"),
        ("window_hi", window[1] if window else None, "bits", f"{ROOT_TOL:g}"),
        ("window_fraction", marks.window_fraction, "ratio", f"{res.refine_tol:g}"),
    ])
    print(f"verdict,{'E=E0 on [r1,r_crit]' if marks.tightness_established else 'tight window not established'}",
          file=out)
    return EXIT_OK


def _write_curves(out: TextIO, rows: list[tuple[float, str, float]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for R, name, value in rows:
        writer.writerow([f"{R:.9f}", name, f"{value:.9f}"])


def _open_output(path: str | None, stdout: TextIO) -> TextIO:
    return open(path, "w", newline="") if path else stdout


def cmd_bsc_curves(args: argparse.Namespace, out: TextIO) -> int:
    ch = ChannelBSC(args.p)
    res = RESOLUTIONS[args.resolution]
    names = parse_bounds(args.bounds, BSC_BOUNDS)
    rates = parse_rates(args.rates)
    profile = _profile_factory(args.profile, res)

    domains = {name: BSC_DOMAINS[name](ch, res) for name in names}

    rows = []
    for R in rates:
        R = float(R)
        inside = [name for name in names if domains[name].contains(R)]
        built = None  # Profile errors stay input errors (exit 2)
        if "thm5" in inside:
            built = profile(R)
        for name in inside:
            value = _evaluate(name, R, lambda: BSC_BOUNDS[name](R, ch, res, lambda _: built))
            rows.append((R, name, value))

    target = _open_output(args.output, out)
    try:
        _write_curves(target, rows)
    finally:
        if target is not out:
            target.close()
    return EXIT_OK


def cmd_awgn_landmarks(args: argparse.Namespace, out: TextIO) -> int:
    marks = landmarks_awgn(ChannelAWGN(args.a))
    window = marks.tight_window

    _report(out, [
        ("a", marks.a, "snr", "exact"),
        ("r_x", marks.r_x, "nats", "exact"),
        ("theta_x", marks.theta_x, "radians", "exact"),
        ("r_crit", marks.r_crit, "nats", "exact"),
        ("r1", marks.r1, "nats", "exact"),
        ("r_star", marks.r_star, "nats", f"{ROOT_TOL:g}"),
        ("window_lo", window[0] if window else None, "nats", "exact"),
        ("window_hi", window[1] if window else None, "nats", "exact"),
    ])
    print(f"verdict,{'E=E0 on [r1,r_crit]' if marks.applicable else 'tight window not established'}", file=out)
    return EXIT_OK


def cmd_awgn_curves(args: argparse.Namespace, out: TextIO) -> int:
    ch = ChannelAWGN(args.a)
    names = parse_bounds(args.bounds, AWGN_BOUNDS)
    rates = parse_rates(args.rates)
    scale = nats_to_bits if args.bits else (lambda x: x)

    domains = {name: AWGN_DOMAINS[name](ch) for name in names}

    rows = []
    for R in rates:
        R = float(R)
        for name in names:
            if not domains[name].contains(R):
                continue
            value = _evaluate(name, R, lambda: AWGN_BOUNDS[name](R, ch))
            rows.append((scale(R), name, scale(value)))

    target = _open_output(args.output, out)
    try:
        _write_curves(target, rows)
    finally:
        if target is not out:
            target.close()
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    match args.oracle:
        case "pe":
            code = BinaryCode.load(args.code)
            _report(out, [("pe", exact_pe_ml(code, args.p), "probability", "exact")])
        case "mc":
            code = BinaryCode.load(args.code)
            found = monte_carlo_pe(code, args.p, args.trials, args.seed)
            _report(out, [
                ("pe_estimate", found.estimate, "probability", f"{found.stderr:.3e}"),
                ("stderr", found.stderr, "probability", "-"),
                ("errors", float(found.errors), "count", "exact"),
            ])
            print(f"rng,{found.rng},seed={args.seed},trials={found.trials}", file=out)
        case "pairwise":
            geom = PairwiseGeometry.from_fractions(args.n, args.omega, 0.0, args.p)
            finite = pairwise_set_logprob(geom, args.p)
            target = pairwise_exponent_A(geom.w / args.n, ChannelBSC(args.p))
            _gap_report(out, finite, target, "A")
        case "joint":
            geom = PairwiseGeometry.from_fractions(args.n, args.omega, args.lam, args.p)
            finite = joint_set_logprob(geom, args.p) - pairwise_set_logprob(geom, args.p)
            target = overlap_exponent_B(geom.w / args.n, geom.l / args.n, ChannelBSC(args.p))
            _gap_report(out, finite, target, "B")
        case "krawtchouk":
            k, x = round(args.tau * args.n), round(args.omega * args.n)
            finite = krawtchouk_value(args.n, k, x).normalized(args.n)
            target = krawtchouk_exponent_k(k / args.n, x / args.n)
            _gap_report(out, finite, target, "k")
        case "dist":
            code = BinaryCode.load(args.code)
            dist = distance_distribution(code)
            print("w,B_w", file=out)
            for w, count in enumerate(dist.average):
                if count > 0:
                    print(f"{w},{count:.9f}", file=out)
    return EXIT_OK


def _gap_report(out: TextIO, finite: float, target: float, label: str) -> None:
    _report(out, [
        ("finite_n", finite, "bits", "exact"),
        (f"asymptotic_{label}", target, "bits", f"{QUAD_TOL:g}"),
        ("gap", abs(finite - target), "bits", "-"),
    ])


def cmd_profile(args: argparse.Namespace, out: TextIO) -> int:
    compiled = load_profile(args.script)

    if args.dump_ast:
        print(compiled.ast_json(), file=out)
    if args.dump_ir:
        print(compiled.ir, file=out)

    ch = ChannelBSC(args.p)
    profile = script_profile(compiled, args.R)
    value = bound_theorem5(args.R, profile, ch, RESOLUTIONS[args.resolution])

    _report(out, [
        ("delta_min", profile.delta_min, "relative distance", f"{ROOT_TOL:g}"),
        ("thm5", value, "bits", f"{RESOLUTIONS[args.resolution].plane_step:g}"),
    ])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reliability",
        description="Bounds on the reliability function of the BSC and the Gaussian channel.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Print the run time on stderr.")
    commands = parser.add_subparsers(dest="command", required=True)

    def with_resolution(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--resolution", choices=sorted(RESOLUTIONS), default="fine",
                         help="fine: 1e-3 omega/lambda/delta grids with local zoom; coarse: 1e-2 grids, no zoom.")

    sub = commands.add_parser("bsc-landmarks", help="R_x, R_crit, R1, R0 and R0* of a BSC.")
    sub.add_argument("--p", type=float, required=True, help="Crossover probability.")
    with_resolution(sub)
    sub.set_defaults(handler=cmd_bsc_landmarks)

    sub = commands.add_parser("bsc-curves", help="Tabulate BSC exponent bounds as CSV (bits).")
    sub.add_argument("--p", type=float, required=True, help="Crossover probability.")
    sub.add_argument("--rates", default="0.01:0.9:0.01", help="Rate grid start:stop:step.")
    sub.add_argument("--bounds", default="sp,union", help=f"Comma separated, from {','.join(BSC_BOUNDS)}.")
    sub.add_argument("--profile", default="lp", help="Distance profile of thm5: binomial, lp or a script file.")
    sub.add_argument("-o", "--output", default=None, help="CSV file; stdout when omitted.")
    with_resolution(sub)
    sub.set_defaults(handler=cmd_bsc_curves)

    sub = commands.add_parser("awgn-landmarks", help="R_x, R1, R* and R_crit of a Gaussian channel (nats).")
    sub.add_argument("--a", type=float, required=True, help="Signal-to-noise ratio.")
    sub.set_defaults(handler=cmd_awgn_landmarks)

    sub = commands.add_parser("awgn-curves", help="Tabulate Gaussian exponent bounds as CSV (nats).")
    sub.add_argument("--a", type=float, required=True, help="Signal-to-noise ratio.")
    sub.add_argument("--rates", default="0.01:0.3:0.01", help="Rate grid start:stop:step in nats.")
    sub.add_argument("--bounds", default="e0,eu", help=f"Comma separated, from {','.join(AWGN_BOUNDS)}.")
    sub.add_argument("--bits", action="store_true", help="Convert rates and exponents to bits.")
    sub.add_argument("-o", "--output", default=None, help="CSV file; stdout when omitted.")
    sub.set_defaults(handler=cmd_awgn_curves)

    sub = commands.add_parser("oracle", help="Finite-length ground truth.")
    sub.set_defaults(handler=cmd_oracle)
    oracles = sub.add_subparsers(dest="oracle", required=True)

    o = oracles.add_parser("pe", help="Exact ML error probability of a code file.")
    o.add_argument("--code", required=True, help="One codeword of 0/1 characters per line.")
    o.add_argument("--p", type=float, required=True)

    o = oracles.add_parser("mc", help="Monte-Carlo ML error probability of a code file.")
    o.add_argument("--code", required=True)
    o.add_argument("--p", type=float, required=True)
    o.add_argument("--trials", type=int, default=MC_MIN_TRIALS * 10)
    o.add_argument("--seed", type=int, default=0)

    o = oracles.add_parser("pairwise", help="(1/n) log2 P_i(X_ij) against A(omega).")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--omega", type=float, required=True)
    o.add_argument("--p", type=float, required=True)

    o = oracles.add_parser("joint", help="(1/n) log2 P_i(X_ik | X_ij) against B(omega, lambda).")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--omega", type=float, required=True)
    o.add_argument("--lambda", dest="lam", type=float, required=True)
    o.add_argument("--p", type=float, required=True)

    o = oracles.add_parser("krawtchouk", help="(1/n) log2 |K_k(x)| against k(tau, omega).")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--tau", type=float, required=True)
    o.add_argument("--omega", type=float, required=True)

    o = oracles.add_parser("dist", help="Average distance distribution of a code file.")
    o.add_argument("--code", required=True)

    sub = commands.add_parser("profile", help="Compile a distance-profile script and evaluate the thm5 bound with it.")
    sub.add_argument("script", help="Script defining beta(w: float, R: float) -> float.")
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--R", type=float, required=True)
    sub.add_argument("--dump-ast", action="store_true", help="Print the AST as JSON.")
    sub.add_argument("--dump-ir", action="store_true", help="Print the LLVM IR.")
    with_resolution(sub)
    sub.set_defaults(handler=cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the exit code (0 ok, 2 argument or domain error, 3 numerical failure)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    st = time.time()
    try:
        code = args.handler(args, sys.stdout)
    except ProfileSyntaxError as e:
        for err in e.errors:
            print(err, file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ResourceLimit, FileNotFoundError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalFailure as e:
        print(f"Numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ReliabilityError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    et = time.time()

    if args.verbose:
        print(f'Executed in {round((et - st) * 1000, 3)}ms', file=sys.stderr)

    return code


if __name__ == '__main__':
    sys.exit(main())
