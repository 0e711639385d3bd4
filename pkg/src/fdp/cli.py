"""``fdp`` command-line front end.

Every command builds a report document {command, parameters, results, seed,
toolkit_version} and prints it as JSON (default, keys sorted, so identical
invocations give identical bytes) or as CSV with a fixed column order.

Exit status: 0 on success, 2 on usage errors, 1 on domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from . import core, hash_attack, nbprg, puzzle
from .codes import code_from_spec, reed_muller
from .errors import FDPError, ParameterOutOfRange

TABLE2_PAIRS = ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3))


def _plain(value):
    """JSON-friendly copy: Fractions become "num/den" strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value


@dataclass
class ReportDocument:
    command: str
    parameters: dict
    results: Any
    seed: Optional[int] = None
    toolkit_version: str = __version__
    # CSV view: fixed column order and one dict per row
    columns: list = field(default_factory=list, repr=False)
    rows: list = field(default_factory=list, repr=False)

    def as_record(self) -> dict:
        return {"command": self.command, "parameters": _plain(self.parameters),
                "results": _plain(self.results), "seed": self.seed,
                "toolkit_version": self.toolkit_version}

    def to_json(self) -> str:
        return json.dumps(self.as_record(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        if not self.columns:
            raise ParameterOutOfRange(f"command {self.command!r} has no CSV form")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in self.columns})
        return buf.getvalue()


def _csv_cell(v):
    v = _plain(v)
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return "" if v is None else v


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _frac_list(text: str) -> list[Fraction]:
    return [_frac(t) for t in text.split(",") if t.strip()]


def _subset(text: str) -> int:
    """Subset of Y written as a digit list ("0,2,5"), "{}" or a mask "0b101"."""
    text = text.strip()
    if text.startswith(("0b", "0x")):
        return int(text, 0)
    body = text.strip("{}")
    mask = 0
    for t in filter(None, (s.strip() for s in body.split(","))):
        mask |= 1 << int(t)
    return mask


# -- commands ---------------------------------------------------------------------

def cmd_table1(args) -> ReportDocument:
    """l_{m,k} for m = 2..8 and m-k = 1..m."""
    rows, grid = [], {}
    for m in range(2, 9):
        vals = []
        for gap in range(1, m + 1):
            ell = core.boolean_bounds(m, m - gap).lower_ell
            vals.append(ell)
            rows.append({"n": m, "n_minus_k": gap, "ell": ell})
        grid[str(m)] = vals
    return ReportDocument("table1", {}, {"ell": grid}, columns=["n", "n_minus_k", "ell"], rows=rows)


def cmd_table2(args) -> ReportDocument:
    rows = []
    for m, k in TABLE2_PAIRS:
        rec = core.coset_profile(reed_muller(k, m)).as_record()
        rows.append({"n": m, "k": k, "r": rec["r"], "h": rec["h"]})
    return ReportDocument("table2", {}, rows, columns=["n", "k", "r", "h"], rows=rows)


def cmd_codes(args) -> ReportDocument:
    code = code_from_spec(args.code)
    results = {"label": code.label, "q": code.q, "n": code.n, "dim": code.k_dim,
               "codim": code.codim}
    if args.min_distance:
        results["min_distance"] = code.min_distance()
    if args.profile:
        results["profile"] = core.coset_profile(code).as_record()
    if args.export:
        with open(args.export, "w") as fh:
            fh.write(code.to_text())
        results["exported"] = args.export
    row = dict(results)
    if "profile" in row:
        prof = row.pop("profile")
        row.update(r=prof["r"], h=prof["h"])
    return ReportDocument("codes", {"code": args.code, "profile": args.profile,
                                    "min_distance": args.min_distance, "export": args.export},
                          results, columns=list(row), rows=[row])


def cmd_radius(args) -> ReportDocument:
    rows = []
    for spec in args.codes:
        code = code_from_spec(spec)
        rows.append({"code": spec, "label": code.label, "n": code.n, "dim": code.k_dim,
                     "q": code.q, "r": core.covering_radius(code)})
    return ReportDocument("radius", {"codes": args.codes}, rows,
                          columns=["code", "label", "n", "dim", "q", "r"], rows=rows)


def _bound_record(rep: core.BoundReport) -> dict:
    return {"lower_ell": rep.lower_ell, "upper_codim": rep.upper_codim,
            "upper_extra": rep.upper_extra, "upper": rep.upper, "exact_r": rep.exact_r,
            "lower_printed": rep.lower_printed,
            "sandwiches": rep.sandwiches()}


def cmd_bounds(args) -> ReportDocument:
    if args.boolean:
        m, k = args.boolean
        rep = core.boolean_bounds(m, k)
        if args.exact:
            rep = core.BoundReport(rep.lower_ell, rep.upper_codim, rep.upper_extra,
                                   core.covering_radius(reed_muller(k, m)))
        params = {"boolean": [m, k], "exact": args.exact}
    elif args.code:
        code = code_from_spec(args.code)
        if code.q == 2 and args.count:
            rep = core.count_bounds(code, exact=args.exact)
        else:
            rep = core.code_bounds(code, exact=args.exact)
        params = {"code": args.code, "count": args.count, "exact": args.exact}
    else:
        raise _Usage("bounds needs a code or --boolean M K")
    rec = _bound_record(rep)
    if args.tightness:
        length, q = ((1 << args.boolean[0]), 2) if args.boolean else (code.n, code.q)
        rec["tightness_ratio"] = core.tightness_gap(length, rep.upper_codim, q)
    return ReportDocument("bounds", params, rec, columns=list(rec), rows=[rec])


def cmd_lemma1(args) -> ReportDocument:
    x, n, d = args.x_size, args.n, args.d
    num, den = hash_attack.lemma1_terms(x, n, d)
    results: dict = {"x_size": x, "n": n, "d": d, "alpha0": hash_attack.alpha0(x, n, d),
                     "bound": hash_attack.lemma1_bound(x, n, d), "numerator": num,
                     "denominator": den}
    if args.oracle:
        results["oracle_min"] = hash_attack.phi_min_oracle(x, n, d)
        results["bound_le_oracle"] = results["bound"] <= results["oracle_min"]
    if args.simulate:
        _need_seed(args, "lemma1 --simulate")
        H = hash_attack.random_hash(x, n, args.seed)
        inst = hash_attack.random_approximation(H, n, d, args.seed + 1)
        rep = hash_attack.simulate_attack(inst, args.simulate, args.seed + 2)
        results["simulation"] = rep.as_record()
        results["simulation"]["exact"] = hash_attack.exact_success_probability(inst)
    row = {k: v for k, v in results.items() if k != "simulation"}
    return ReportDocument("lemma1", {"x_size": x, "n": n, "d": d, "oracle": args.oracle,
                                     "simulate": args.simulate}, results,
                          seed=args.seed if args.simulate else None, columns=list(row), rows=[row])


SIMULATE_COLUMNS = ["x_size", "n", "d", "instance", "alpha0", "bound", "exact", "empirical",
                    "trials", "seed"]


def cmd_simulate(args) -> ReportDocument:
    _need_seed(args, "simulate")
    rows = []
    idx = 0
    for x in sorted(args.x_sizes):
        for n in sorted(args.ns):
            for d in sorted(args.ds):
                if not 0 < d < x:
                    continue
                for i in range(args.instances):
                    s = args.seed * 1_000_003 + idx
                    idx += 1
                    H = hash_attack.random_hash(x, n, s)
                    inst = hash_attack.random_approximation(H, n, d, s + 1)
                    try:
                        rep = hash_attack.simulate_attack(inst, args.trials, s + 2)
                        exact = hash_attack.exact_success_probability(inst)
                    except FDPError:
                        continue
                    rec = rep.as_record()
                    rec.update(instance=i, exact=exact, seed=s)
                    rows.append(rec)
    params = {"x_sizes": sorted(args.x_sizes), "ns": sorted(args.ns), "ds": sorted(args.ds),
              "instances": args.instances, "trials": args.trials}
    return ReportDocument("simulate", params, rows, seed=args.seed,
                          columns=SIMULATE_COLUMNS, rows=rows)


def cmd_puzzle(args) -> ReportDocument:
    include_P = args.variant == puzzle.WITH_P
    state = puzzle.LampState.parse(args.state, args.m, include_P)
    goal = puzzle.PuzzleGoal(args.k)
    moves = puzzle.min_moves(state, goal)
    results = {"state": str(state), "m": args.m, "k": args.k, "variant": args.variant,
               "moves": moves, "solved": goal.solved(state)}
    if args.radius:
        results["radius"] = puzzle.puzzle_radius(args.m, args.k, args.variant)
    return ReportDocument("puzzle", {"state": args.state, "m": args.m, "k": args.k,
                                     "variant": args.variant, "radius": args.radius},
                          results, columns=list(results), rows=[results])


def _load_instance(args) -> nbprg.PrgInstance:
    if args.instance:
        with open(args.instance) as fh:
            return nbprg.PrgInstance.from_record(json.load(fh))
    _need_seed(args, "nbprg check without --instance")
    return nbprg.random_prg_instance(args.s_size, args.x_size, args.n, args.family_size,
                                     args.seed, linear=args.linear)


def cmd_nbprg(args) -> ReportDocument:
    sub = args.nb_command
    if sub == "distance":
        support = range(len(args.p1))
        p1 = nbprg.FiniteDistribution.on(support, dict(enumerate(args.p1)))
        p2 = nbprg.FiniteDistribution.on(support, dict(enumerate(args.p2)))
        res = {"sum": nbprg.stat_distance_sum(p1, p2)}
        if len(args.p1) <= nbprg.SUBSET_MAX_SUPPORT:
            res["max_subsets"] = nbprg.stat_distance_max(p1, p2, "subsets")
        res["max_positive"] = nbprg.stat_distance_max(p1, p2, "positive")
        params = {"p1": args.p1, "p2": args.p2}
    elif sub == "prop1":
        t, eps = nbprg.prop1_params(args.T, args.delta1, args.n, args.epsilon)
        res = {"T_prime": t, "epsilon_prime": eps}
        params = {"T": args.T, "delta1": args.delta1, "n": args.n, "epsilon": args.epsilon}
    elif sub == "prop2":
        t, eps = nbprg.prop2_params(args.T, args.delta2, args.epsilon)
        res = {"T_prime": t, "epsilon_prime": eps}
        params = {"T": args.T, "delta2": args.delta2, "epsilon": args.epsilon}
    elif sub == "thm1":
        res = nbprg.thm1_params(args.T, args.delta1, args.delta3, args.epsilon1, args.epsilon3,
                                args.r, n=args.n).as_record()
        params = {"T": args.T, "delta1": args.delta1, "delta3": args.delta3,
                  "epsilon1": args.epsilon1, "epsilon3": args.epsilon3, "r": args.r, "n": args.n}
    elif sub == "radius":
        res = {"r": nbprg.subset_family_radius(args.n, args.family, args.method)}
        params = {"n": args.n, "family": args.family, "method": args.method}
    elif sub == "check":
        inst = _load_instance(args)
        res = nbprg.theorem1_empirical_check(inst).as_record()
        res["instance"] = inst.as_record()
        params = {"instance": args.instance, "S_size": inst.s_size, "X_size": inst.x_size,
                  "n": inst.n, "family_size": len(inst.family)}
        if not args.instance:
            params["linear"] = args.linear
    else:  # pragma: no cover - argparse enforces the choice
        raise _Usage(f"unknown nbprg command {sub!r}")
    row = {k: v for k, v in res.items() if k != "instance"}
    seed = args.seed if sub == "check" and not args.instance else None
    return ReportDocument(f"nbprg {sub}", params, res, seed=seed, columns=list(row), rows=[row])


# -- parser -----------------------------------------------------------------------

class _Usage(Exception):
    pass


def _need_seed(args, what: str) -> None:
    if args.seed is None:
        raise _Usage(f"{what} is randomized: --seed is required")


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     default=argparse.SUPPRESS if suppress else "json", help="JSON output (default)")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv",
                     default=argparse.SUPPRESS, help="CSV output")
    p.add_argument("--seed", type=int, default=default, help="RNG seed for randomized commands")
    p.add_argument("--out", metavar="FILE", default=default, help="write the report to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="lower bounds l_{n,k}, n = 2..8")
    p.set_defaults(func=cmd_table1)
    p = sub.add_parser("table2", parents=[common], help="r and coset profiles of RM(k, n), n <= 4")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("codes", parents=[common], help="describe a code (golay23, hamming:R, "
                       "rm:K:M, rs:Q:N:K, file:PATH)")
    p.add_argument("code")
    p.add_argument("--profile", action="store_true", help="coset-leader weight profile and r")
    p.add_argument("--min-distance", action="store_true")
    p.add_argument("--export", metavar="PATH", help="write the code in FDPCODE format")
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("radius", parents=[common], help="covering radius of one or more codes")
    p.add_argument("codes", nargs="+")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("bounds", parents=[common], help="sphere-count bounds on r")
    p.add_argument("code", nargs="?")
    p.add_argument("--boolean", nargs=2, type=int, metavar=("M", "K"),
                   help="bounds for RM(K, M) without building the code")
    p.add_argument("--count", action="store_true", help="binary coset-count form")
    p.add_argument("--exact", action="store_true", help="also compute the exact radius")
    p.add_argument("--tightness", action="store_true", help="report the tightness ratio")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lemma1", parents=[common], help="collision-attack success bound")
    p.add_argument("x_size", type=int)
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive minimiser")
    p.add_argument("--simulate", type=int, metavar="TRIALS", default=0,
                   help="simulate on a random instance (needs --seed)")
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("simulate", parents=[common], help="attack simulation over a grid")
    p.add_argument("--x-sizes", type=_int_list, default=[16, 64])
    p.add_argument("--ns", type=_int_list, default=[2, 4])
    p.add_argument("--ds", type=_int_list, default=[1, 2, 4])
    p.add_argument("--instances", type=int, default=1)
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("puzzle", parents=[common], help="optimal lamp-puzzle moves")
    p.add_argument("state", help='lit faces, e.g. "{13,24}" or "{P,1}"')
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", choices=[puzzle.WITH_P, puzzle.SIMPLIFIED], default=puzzle.WITH_P)
    p.add_argument("--radius", action="store_true", help="also report the worst-case moves")
    p.set_defaults(func=cmd_puzzle)

    p = sub.add_parser("nbprg", help="nb-PRG distances, parameters and checks")
    nb = p.add_subparsers(dest="nb_command", required=True)
    q = nb.add_parser("distance", parents=[common], help="statistical distance of two vectors")
    q.add_argument("p1", type=_frac_list)
    q.add_argument("p2", type=_frac_list)
    q = nb.add_parser("prop1", parents=[common], help="PRG budget from 2*eps/n")
    for name in ("T", "delta1"):
        q.add_argument(name, type=_frac)
    q.add_argument("n", type=int)
    q.add_argument("epsilon", type=_frac)
    q = nb.add_parser("prop2", parents=[common], help="PRG budget with overhead delta2")
    for name in ("T", "delta2", "epsilon"):
        q.add_argument(name, type=_frac)
    q = nb.add_parser("thm1", parents=[common], help="epsilon = r*eps1 + eps3")
    for name in ("T", "delta1", "delta3", "epsilon1", "epsilon3"):
        q.add_argument(name, type=_frac)
    q.add_argument("r", type=int)
    q.add_argument("--n", type=int)
    q = nb.add_parser("radius", parents=[common], help="covering radius of a subset family")
    q.add_argument("n", type=int)
    q.add_argument("family", nargs="+", type=_subset, help='subsets like "0,2" or "{}"')
    q.add_argument("--method", choices=["auto", "exhaustive", "linear"], default="auto")
    q = nb.add_parser("check", parents=[common], help="verify the family bound on an instance")
    q.add_argument("--instance", metavar="JSON", help="instance record file")
    q.add_argument("--s-size", type=int, default=32)
    q.add_argument("--x-size", type=int, default=64)
    q.add_argument("--n", type=int, default=8)
    q.add_argument("--family-size", type=int, default=4)
    q.add_argument("--linear", action="store_true", help="use the span of the random subsets")
    for q in nb.choices.values():
        q.set_defaults(func=cmd_nbprg)
    return parser


def run(argv=None) -> ReportDocument:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
        text = doc.to_csv() if args.fmt == "csv" else doc.to_json()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except _Usage as exc:
        parser.error(str(exc))  # exits with status 2
    except (FDPError, OSError) as exc:
        print(f"fdp: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
