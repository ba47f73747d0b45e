"""Command-line front end.

    edgecodes params --graph union:cycle:4+cycle:4 --q 5 --d 1..8
    edgecodes verify --graph cycle:6 --q 4
    edgecodes reproduce-paper
    edgecodes points --graph cycle:4 --q 3

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from math import comb
from pathlib import Path

from . import codes, formulas, ideals
from .gf import GF, FieldError, FieldSpec
from .graphs import Graph, GraphError, analyze, canonicalize, from_dsl, perfect_matching
from .points import DEFAULT_BUDGET, BudgetExceeded, build_x, build_y

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

PARAM_FIELDS = [
    "graph", "q", "d", "length", "dim", "delta_lo", "delta_hi", "exact",
    "l_d", "u_d", "B_d", "reg_lower", "reg_upper",
]
ALL_CHECKS = (
    "length", "hilbert", "dimension", "regularity", "distance",
    "complete_intersection", "prop_theta", "iy_decomposition",
)
# ideal checks need the full evaluation matrix; skip degrees above this size
IDEAL_CELL_LIMIT = 1 << 21


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    graph: str
    q: int
    d_min: int = 1
    d_max: int | None = None
    budget: int = DEFAULT_BUDGET
    fmt: str = "table"
    out: str | None = None
    checks: tuple[str, ...] = ALL_CHECKS

    def __post_init__(self) -> None:
        if self.d_min < 0 or (self.d_max is not None and self.d_max < self.d_min):
            raise InputError(f"bad degree range {self.d_min}..{self.d_max}")
        if self.budget < 1:
            raise InputError("budget must be positive")
        if self.fmt not in ("table", "csv", "json"):
            raise InputError(f"unknown format {self.fmt!r}")
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise InputError(f"unknown checks: {sorted(unknown)}")

    def field(self) -> FieldSpec:
        try:
            return GF(self.q)
        except FieldError as exc:
            raise InputError(str(exc)) from None

    def load_graph(self) -> Graph:
        try:
            return from_dsl(self.graph)
        except GraphError as exc:
            raise InputError(str(exc)) from None


def parse_degrees(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise InputError(f"bad degree range {text!r}; use 'a' or 'a..b'") from None


# -- params ------------------------------------------------------------------


def cmd_params(config: RunConfig) -> list[dict]:
    """One row per degree: code parameters plus the closed-form bounds."""
    spec = config.field()
    graph = config.load_graph()
    X = build_x(graph, spec, config.budget)
    bipartite = codes.has_bipartite_matching(graph)
    d_max = config.d_max if config.d_max is not None else config.d_min
    rows = []
    for d in range(config.d_min, d_max + 1):
        cp = codes.code_params(graph, spec, d, config.budget, xset=X)
        row = {**cp.as_dict(), "exact": int(cp.exact)}
        if bipartite and d >= 1:
            b = formulas.theorem3_bounds(graph, spec.q, d, cp.dim)
            row.update(l_d=b.l_d, u_d=b.u_d, B_d=b.B_d, reg_lower=b.reg_lower, reg_upper=b.reg_upper)
        else:
            row.update({k: "" for k in ("l_d", "u_d", "B_d", "reg_lower", "reg_upper")})
        rows.append(row)
    return rows


def render_rows(rows: list[dict], fields: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    def cell(r: dict, f: str) -> str:
        v = r.get(f)
        return "" if v is None else str(v)

    widths = {f: max(len(f), *(len(cell(r, f)) for r in rows)) if rows else len(f) for f in fields}
    lines = ["  ".join(f.rjust(widths[f]) for f in fields)]
    lines += ["  ".join(cell(r, f).rjust(widths[f]) for f in fields) for r in rows]
    return "\n".join(lines) + "\n"


# -- verify ------------------------------------------------------------------


@dataclass
class CheckEntry:
    check: str
    status: str  # pass / fail / skipped
    degree: int | None = None
    expected: object = None
    got: object = None
    witness: object = None
    reason: str = ""
    seconds: float = 0.0


@dataclass
class VerificationSummary:
    graph: str
    q: int
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def add(self, check, ok, degree=None, expected=None, got=None, witness=None, seconds=0.0) -> CheckEntry:
        if not ok and witness is None:
            witness = {"degree": degree, "expected": expected, "got": got}
        e = CheckEntry(check, "pass" if ok else "fail", degree, expected, got, None if ok else witness, "", seconds)
        self.entries.append(e)
        return e

    def skip(self, check, reason) -> None:
        self.entries.append(CheckEntry(check, "skipped", reason=reason))

    def rows(self) -> list[dict]:
        return [asdict(e) for e in self.entries]


def _timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def cmd_verify(config: RunConfig) -> VerificationSummary:
    """Run every applicable check on one (graph, q) instance."""
    spec = config.field()
    graph = analyze(config.load_graph())
    q = spec.q
    summary = VerificationSummary(graph.name, q)
    checks = set(config.checks)

    reason = ""
    if graph.gamma:
        reason = f"non-bipartite (γ={graph.gamma})"
    elif perfect_matching(graph) is None:
        reason = "no perfect matching"
    if reason:
        X = build_x(graph, spec, config.budget)
        summary.add("length", True, got=len(X), witness=None)
        for name in ALL_CHECKS:
            if name != "length":
                summary.skip(name, reason)
        return summary

    g, co = canonicalize(graph)
    n, m, k = graph.n, graph.m, co.k
    X, tx = _timed(build_x, g, spec, config.budget)
    Y = build_y(co.block_degrees, spec, config.budget)
    if "length" in checks:
        summary.add("length", len(X) == formulas.length_formula(n, m, q), None,
                    formulas.length_formula(n, m, q), len(X), seconds=tx)

    b0 = formulas.theorem3_bounds(g, q, 1)
    cap = b0.reg_upper + 1
    H: list[int] = []
    for d in range(cap + 1):
        H.append(codes.hilbert_function(X, d))
        if H[-1] == len(X):
            break
    reg = len(H) - 1 if H[-1] == len(X) else None
    if reg is None:
        summary.add("regularity", False, None, f"<= {b0.reg_upper}", None,
                    witness={"H": H[-1], "length": len(X)})
        return summary
    d_hi = reg + 1 if config.d_max is None else config.d_max
    degrees = range(config.d_min, d_hi + 1)
    HY = {d: codes.hilbert_function(Y, d) for d in range(max(d_hi, reg) + 2)}

    if "hilbert" in checks:
        for d in degrees:
            h_x = H[d] if d < len(H) else len(X)
            h_t = formulas.torus_hilbert(k, d, q)
            summary.add("H_Y(d) = H_T(d)", HY[d] == h_t, d, h_t, HY[d])
            summary.add("H_X(d) = H_psi(d) + H_T(d)", (h_x - HY[d]) + h_t == h_x, d, h_x, (h_x - HY[d]) + h_t)
        psi = [H[d] - HY[d] for d in range(reg + 1)]
        mono = all(a <= b for a, b in zip(psi, psi[1:]))
        summary.add("H_psi non-decreasing", mono, None, True, mono, witness=None if mono else {"H_psi": psi})
        strict = all(H[d] < H[d + 1] for d in range(reg))
        summary.add("H_X strictly increasing below reg", strict, None, True, strict)

    if "dimension" in checks:
        for d in degrees:
            h_x = H[d] if d < len(H) else len(X)
            lo = formulas.torus_hilbert(k, d, q)
            summary.add("dim >= torus Hilbert bound", h_x >= lo, d, f">= {lo}", h_x)

    if "regularity" in checks:
        summary.add("reg within bounds", b0.reg_lower <= reg <= b0.reg_upper, None,
                    f"[{b0.reg_lower}, {b0.reg_upper}]", reg)
        summary.add("reg >= (q-2)(k-1)", reg >= b0.reg_torus_lower, None, f">= {b0.reg_torus_lower}", reg)
        reg_psi = next(d for d in range(reg + 1) if H[d] - HY[d] == len(X) - len(Y))
        expect = max(formulas.torus_reg(k, q), reg_psi)
        summary.add("reg = max(reg_T, reg_psi)", reg == expect, None, expect, reg)
        if _all_even_cycles(graph):
            summary.add("reg of even-cycle union = (q-2)(k-1)", reg == b0.reg_torus_lower, None,
                        b0.reg_torus_lower, reg)

    if "distance" in checks:
        for d in degrees:
            if d < 1:
                continue
            h_x = H[d] if d < len(H) else len(X)
            b = formulas.theorem3_bounds(g, q, d, h_x)
            if h_x == len(X):
                summary.add("distance = 1 beyond reg", True, d, 1, 1)
                continue
            prof = codes.evaluation_profile(X, d)
            dist, t = _timed(codes.min_distance, prof, config.budget)
            if dist.exact:
                ok = b.l_d <= dist.value <= min(b.u_d, b.B_d)
                summary.add("l_d <= distance <= min(u_d, B_d)", ok, d,
                            f"[{b.l_d}, {min(b.u_d, b.B_d)}]", dist.value, seconds=t)
            else:
                ok = b.l_d <= dist.hi and b.l_d <= b.u_d
                summary.add("bounds consistent with sampled weights", ok, d,
                            f"l_d={b.l_d} <= observed", dist.hi, seconds=t)

    if "complete_intersection" in checks:
        rep, t = _timed(ideals.verify_complete_intersection, co.block_degrees, spec)
        _merge(summary, rep, t)

    ideal_checks = [c for c in ("prop_theta", "iy_decomposition") if c in checks]
    if ideal_checks:
        s = g.s
        sizes = [d for d in range(d_hi + 1) if comb(s - 1 + d, s - 1) * len(X) <= IDEAL_CELL_LIMIT]
        ideal_max = max(sizes) if sizes else -1
        setup = ideals._setup(g, spec)
        for name in ideal_checks:
            fn = ideals.verify_prop_theta if name == "prop_theta" else ideals.verify_iy_decomposition
            rep, t = _timed(fn, g, spec, ideal_max, setup=setup)
            _merge(summary, rep, t)
            if ideal_max < d_hi:
                summary.skip(name, f"degrees {ideal_max + 1}..{d_hi} exceed {IDEAL_CELL_LIMIT} matrix cells")
    return summary


def _all_even_cycles(graph: Graph) -> bool:
    return all(d == 2 for d in graph.degrees) and graph.gamma == 0


def _merge(summary: VerificationSummary, rep: ideals.Report, seconds: float) -> None:
    for r in rep.results:
        summary.add(r.check, r.ok, r.degree, r.expected, r.got, r.witness if not r.ok else None,
                    seconds / max(1, len(rep.results)))


# -- reproduce-paper ---------------------------------------------------------


def load_fixture() -> list[dict]:
    text = resources.files("edgecodes").joinpath("data/paper_tables.csv").read_text()
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def cmd_reproduce_paper(q: int = 5) -> tuple[list[dict], bool]:
    """Recompute the worked example and diff it against the fixture cell by cell."""
    spec = GF(q)
    graph = from_dsl("union:cycle:4+cycle:4")
    g, co = canonicalize(graph)
    X = build_x(g, spec)
    Y = build_y(co.block_degrees, spec)
    k = co.k
    got: dict[tuple[str, str], str] = {}
    for d in range(1, 9):
        h_x = codes.hilbert_function(X, d, "rank")
        h_y = codes.hilbert_function(Y, d, "rank")
        b = formulas.theorem3_bounds(g, q, d, h_x)
        got[("H_T", str(d))] = str(formulas.torus_hilbert(k, d, q))
        got[("H_psi", str(d))] = str(h_x - h_y)
        got[("H_X", str(d))] = str(h_x)
        got[("l_d", str(d))] = str(b.l_d)
        got[("u_d", str(d))] = str(b.u_d)
        got[("B_d", str(d))] = str(b.B_d)
    got[("length", "")] = str(len(X))
    got[("reg", "")] = str(codes.regularity_index(X, cap=10, method="rank"))
    gens = ideals.i_y_generators(co.block_degrees, spec)
    for i, label in enumerate(gens.labels, start=1):
        got[("I_Y", str(i))] = label
    rows = []
    for row in load_fixture():
        key = (row["quantity"], row["d"])
        value = got.get(key, "<missing>")
        rows.append({**row, "computed": value, "match": value == row["value"]})
    return rows, all(r["match"] for r in rows)


# -- entry point -------------------------------------------------------------


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgecodes", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_graph=True):
        if need_graph:
            p.add_argument("--graph", required=True, help="cycle:N, path:N, kmm:N, kab:A,B, union:G+G, file:PATH")
            p.add_argument("--q", type=int, required=True, help="field size (prime power)")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
        p.add_argument("--format", dest="fmt", default="table", choices=["table", "csv", "json"])
        p.add_argument("--out", default=None, help="write output here instead of stdout")

    p = sub.add_parser("params", help="length, dimension, distance and bounds per degree")
    common(p)
    p.add_argument("--d", default="1", help="degree or range a..b")

    p = sub.add_parser("verify", help="check every formula and identity on one instance")
    common(p)
    p.add_argument("--d", default=None, help="degree range for per-degree checks (default 1..reg+1)")
    p.add_argument("--checks", default="all", help="'all' or comma-separated subset of " + ",".join(ALL_CHECKS))

    p = sub.add_parser("reproduce-paper", help="recompute the two-squares example over GF(5)")
    common(p, need_graph=False)

    p = sub.add_parser("points", help="export the toric set as CSV")
    common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce-paper":
            rows, ok = cmd_reproduce_paper()
            fields = ["table", "quantity", "d", "value", "computed", "match"]
            text = render_rows(rows, fields, args.fmt)
            if args.fmt == "table":
                reg = next(r["computed"] for r in rows if r["quantity"] == "reg")
                text += f"regularity index: {reg}\n"
                text += "all cells match\n" if ok else "MISMATCH\n"
            _write(text, args.out)
            return EXIT_OK if ok else EXIT_FAIL

        d_min, d_max = (1, None)
        if getattr(args, "d", None):
            d_min, d_max = parse_degrees(args.d)
        checks = ALL_CHECKS
        if getattr(args, "checks", "all") != "all":
            checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        config = RunConfig(args.graph, args.q, d_min, d_max, args.budget, args.fmt, args.out, checks)

        if args.command == "params":
            _write(render_rows(cmd_params(config), PARAM_FIELDS, config.fmt), config.out)
            return EXIT_OK
        if args.command == "points":
            X = build_x(config.load_graph(), config.field(), config.budget)
            _write(X.to_csv(), config.out)
            return EXIT_OK
        summary = cmd_verify(config)
        fields = ["check", "status", "degree", "expected", "got", "witness", "reason"]
        text = render_rows(summary.rows(), fields, config.fmt)
        if config.fmt == "table":
            npass = sum(e.status == "pass" for e in summary.entries)
            nskip = sum(e.status == "skipped" for e in summary.entries)
            text += f"{npass} passed, {len(summary.failed)} failed, {nskip} skipped\n"
        _write(text, config.out)
        return EXIT_OK if summary.ok else EXIT_FAIL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
