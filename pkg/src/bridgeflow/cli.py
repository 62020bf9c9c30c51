"""Command-line front end: solve, mincut, oracle, trace, scan, regions.

Exit codes: 0 success, 1 an oracle disagreed with the solver, 2 usage error.
``--json`` output follows the schemas in :mod:`bridgeflow.schemas`.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .arithmetic import DomainError, classify_region
from .castling import BridgeInstance
from .oracle import DEFAULT_MODULUS, DEFAULT_TRIALS, OracleCapError, sample_rank
from .solver import FlowResult, all_cuts, min_cut, qmaxflow

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2

SCAN_COLUMNS = (
    "a", "b", "w", "b_prime", "a_prime",
    "region_top", "region_bottom",
    "mincut", "status", "value", "lower", "upper", "conjectured", "method",
    "oracle_best_rank", "agreement", "conjecture_hit",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own; raise instead so main() owns the exit path
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class ScanRow:
    a: int
    b: int
    w: int
    b_prime: int
    a_prime: int
    region_top: str
    region_bottom: str
    mincut: int
    status: str
    value: int | None
    lower: int | None
    upper: int | None
    conjectured: int | None
    method: str
    oracle_best_rank: int | None = None
    agreement: bool | None = None
    conjecture_hit: bool | None = None

    @classmethod
    def from_result(cls, res: FlowResult) -> "ScanRow":
        inst = res.instance
        return cls(
            *inst.as_tuple(),
            region_top=_region(inst.a, inst.b, inst.w),
            region_bottom=_region(inst.a_prime, inst.b_prime, inst.w),
            mincut=res.mincut,
            status=res.status.value,
            value=res.value,
            lower=res.lower,
            upper=res.upper,
            conjectured=res.conjectured,
            method=res.method,
        )

    def record_oracle(self, best_rank: int) -> None:
        self.oracle_best_rank = best_rank
        if self.status == "exact":
            self.agreement = best_rank == self.value
        else:
            self.agreement = self.lower <= best_rank <= self.upper
            self.conjecture_hit = best_rank == self.conjectured

    def csv_cells(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return [cell(getattr(self, c)) for c in SCAN_COLUMNS]


def _region(x: int, y: int, w: int) -> str:
    # regions are defined on the sorted pair
    return classify_region(min(x, y), max(x, y), w).value


def _instance(ns: argparse.Namespace) -> BridgeInstance:
    if ns.w < 2:
        raise DomainError(f"bridge dimension w must be >= 2, got {ns.w}")
    return BridgeInstance(ns.a, ns.b, ns.w, ns.bp, ns.ap)


def _emit_json(obj, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _defects(res: FlowResult) -> list[int | None]:
    # defect = a*b' - QMF, which every castling step preserves
    out = []
    for step in res.trace:
        sub = qmaxflow(step.instance)
        out.append(step.product - sub.value if sub.is_exact else None)
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(ns, out) -> int:
    res = qmaxflow(_instance(ns))
    if ns.json:
        _emit_json(res.to_dict(), out)
        return EXIT_OK
    inst = res.instance
    print(f"instance     {inst}", file=out)
    print(f"regions      top {_region(inst.a, inst.b, inst.w)}, bottom {_region(inst.a_prime, inst.b_prime, inst.w)}",
          file=out)
    print(f"status       {res.status.value}", file=out)
    if res.is_exact:
        print(f"value        {res.value}", file=out)
    else:
        print(f"bounds       {res.lower} <= QMF <= {res.upper}", file=out)
        print(f"conjectured  {res.conjectured}", file=out)
    print(f"mincut       {res.mincut}", file=out)
    print(f"method       {res.method}", file=out)
    if len(res.trace):
        print(f"trace        {len(res.trace)} castling step(s)", file=out)
    return EXIT_OK


def cmd_mincut(ns, out) -> int:
    inst = _instance(ns)
    best = min_cut(inst)
    if ns.json:
        _emit_json({"mincut": best.capacity, "cut": best.to_dict(), "cuts": [c.to_dict() for c in all_cuts(inst)]}, out)
        return EXIT_OK
    print(best.capacity, file=out)
    print(f"cut edges {{{', '.join(best.edges)}}}  source side {{{', '.join(best.source_side)}}}", file=out)
    return EXIT_OK


def cmd_oracle(ns, out) -> int:
    inst = _instance(ns)
    rep = sample_rank(inst, trials=ns.trials, modulus=ns.modulus, seed=ns.seed)
    if ns.json:
        _emit_json(rep.to_dict(), out)
        return EXIT_OK
    print(f"best rank {rep.best_rank} over {rep.trials} trial(s) mod {rep.modulus} (seed {rep.seed}, "
          f"first at trial {rep.attained_at_trial})", file=out)
    return EXIT_OK


def cmd_trace(ns, out) -> int:
    res = qmaxflow(_instance(ns))
    steps = res.trace.to_list()
    for rec, d in zip(steps, _defects(res)):
        rec["defect"] = d
    if ns.json:
        _emit_json(steps, out)
        return EXIT_OK
    inst = res.instance
    start = inst.defect_product - res.value if res.is_exact else None
    print(f"start {inst}  a*b' = {inst.defect_product}  defect = {_fmt(start)}", file=out)
    if not steps:
        print(f"no castling steps ({res.method})", file=out)
    for i, step in enumerate(res.trace, 1):
        print(f"{i:>3} {step.direction.value:<4} {step.instance}  a*b' = {step.product}  "
              f"defect = {_fmt(steps[i - 1]['defect'])}", file=out)
    return EXIT_OK


def _fmt(v) -> str:
    return "?" if v is None else str(v)


def scan_rows(w: int, max_dim: int, trials: int = 0, modulus: int = DEFAULT_MODULUS, seed: int = 0) -> list[ScanRow]:
    rows = []
    for a in range(1, max_dim + 1):
        for b in range(a, max_dim + 1):
            for ap in range(1, max_dim + 1):
                for bp in range(ap, max_dim + 1):
                    inst = BridgeInstance(a, b, w, bp, ap)
                    row = ScanRow.from_result(qmaxflow(inst))
                    if trials > 0:
                        row.record_oracle(sample_rank(inst, trials=trials, modulus=modulus, seed=seed).best_rank)
                    rows.append(row)
    return rows


def rows_to_csv(rows: Sequence[ScanRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for r in rows:
        writer.writerow(r.csv_cells())
    return buf.getvalue()


def cmd_scan(ns, out) -> int:
    if ns.w < 2:
        raise DomainError(f"bridge dimension w must be >= 2, got {ns.w}")
    if ns.max < 1:
        raise DomainError(f"--max must be >= 1, got {ns.max}")
    if ns.trials < 0:
        raise DomainError(f"--trials must be >= 0, got {ns.trials}")
    rows = scan_rows(ns.w, ns.max, ns.trials, ns.modulus, ns.seed)
    if ns.csv:
        Path(ns.csv).write_text(rows_to_csv(rows), encoding="utf-8")
    if ns.json:
        _emit_json([asdict(r) for r in rows], out)
    elif not ns.csv:
        out.write(rows_to_csv(rows))
    bad = [r for r in rows if r.agreement is False]
    n_open = sum(r.status == "open" for r in rows)
    print(f"{len(rows)} instances, {n_open} open, {len(bad)} disagreement(s)", file=sys.stderr)
    return EXIT_DISAGREE if bad else EXIT_OK


def cmd_regions(ns, out) -> int:
    if ns.w < 2:
        raise DomainError(f"bridge dimension w must be >= 2, got {ns.w}")
    if ns.max < 1:
        raise DomainError(f"--max must be >= 1, got {ns.max}")
    cells = [(a, b, classify_region(a, b, ns.w).value) for a in range(1, ns.max + 1) for b in range(a, ns.max + 1)]
    if ns.json:
        _emit_json({"w": ns.w, "max": ns.max, "regions": [{"a": a, "b": b, "region": r} for a, b, r in cells]}, out)
        return EXIT_OK
    width = len(str(ns.max))
    print(" " * (width + 2) + " ".join(f"{b:>{width}}" for b in range(1, ns.max + 1)), file=out)
    grid = {(a, b): r for a, b, r in cells}
    for a in range(1, ns.max + 1):
        line = " ".join(f"{grid.get((a, b), '.'):>{width}}" for b in range(1, ns.max + 1))
        print(f"{a:>{width}}  {line}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-a", type=int, required=True, help="top-left bond dimension")
    p.add_argument("-b", type=int, required=True, help="top-right bond dimension")
    p.add_argument("-w", type=int, required=True, help="bridge bond dimension (>= 2)")
    p.add_argument("--bp", type=int, required=True, help="bottom-left bond dimension b'")
    p.add_argument("--ap", type=int, required=True, help="bottom-right bond dimension a'")
    p.add_argument("--json", action="store_true", help="emit JSON")


def _oracle_flags(p: argparse.ArgumentParser, trials: int) -> None:
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--modulus", type=int, default=DEFAULT_MODULUS, help="prime field size")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bridgeflow", description="Quantum max-flow and min-cut of the bridge graph.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="closed-form max-flow")
    _instance_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("mincut", help="min-cut by cut enumeration")
    _instance_flags(p)
    p.set_defaults(func=cmd_mincut)

    p = sub.add_parser("oracle", help="randomized finite-field rank of the flow map")
    _instance_flags(p)
    _oracle_flags(p, DEFAULT_TRIALS)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("trace", help="castling steps used by the solver, with defects")
    _instance_flags(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("scan", help="solve every instance on a grid, optionally checking with the oracle")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--max", type=int, required=True, help="largest dimension D")
    _oracle_flags(p, 0)
    p.add_argument("--csv", metavar="PATH", help="write CSV here")
    p.add_argument("--json", action="store_true", help="emit JSON rows on stdout")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("regions", help="region table for 1 <= a <= b <= D")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_regions)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        return ns.func(ns, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, OracleCapError) as exc:
        print(f"bridgeflow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
