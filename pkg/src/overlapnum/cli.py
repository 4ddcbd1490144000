"""Command-line interface.

Exit codes: 0 ok, 2 parse error, 3 verification failure, 4 search budget
exceeded, 5 precondition not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .constructions import (
    BoundCertificate,
    CliqueDecomposition,
    best_pure_upper,
    best_upper,
    clique_rep,
    decomposition_rep,
    edge_bound_rep,
    format_certificate,
    greedy_triangle_decomposition,
    lower_bound,
    parse_certificate,
    reduce,
    small_graph_rep,
)
from .errors import BudgetExceeded, ParseError, PreconditionError, VerificationError
from .exact import SearchConfig, exact_phi, exact_pol
from .families import FAMILIES, FamilySpec, generate, planar_embedding
from .graph import Graph, format_edge_list, parse_edge_list, parse_graph6
from .model import OverlapRep, RepKind, format_rep, parse_rep, verify
from .planar import PlaneGraph, format_rotation, parse_rotation, plan_decompose, planar_phi_upper
from .trees import skeleton, tree_overlap_rep

EXIT_PARSE, EXIT_VERIFY, EXIT_BUDGET, EXIT_PRECONDITION = 2, 3, 4, 5
BUDGET_ENV = "OVERLAP_NODE_BUDGET"
CSV_COLUMNS = ["name", "n", "m", "lower", "lower_rule", "upper", "upper_rule", "pinned", "exact"]


# -- input / output ----------------------------------------------------------


def parse_graph_text(text: str) -> Graph | PlaneGraph:
    """Rotation system if any line has a colon, graph6 if the input is one
    non-numeric token, edge list otherwise."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if any(":" in ln for ln in lines):
        return parse_rotation(text)
    tokens = " ".join(lines).split()
    if len(tokens) == 1 and not tokens[0].lstrip("-").isdigit():
        return parse_graph6(tokens[0])
    return parse_edge_list(text)


def read_input(path: str) -> Graph | PlaneGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_graph_text(text)


def as_graph(obj: Graph | PlaneGraph) -> Graph:
    return obj.graph if isinstance(obj, PlaneGraph) else obj


def as_plane(obj: Graph | PlaneGraph) -> PlaneGraph:
    if isinstance(obj, PlaneGraph):
        return obj
    PG = planar_embedding(obj)
    if PG is None:
        raise PreconditionError("graph is not planar")
    return PG


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _upper(quantity: str, rep: OverlapRep, rule: str, G: Graph) -> BoundCertificate:
    cert = BoundCertificate(quantity, "upper", rep.t, rule, witness=rep)
    if not cert.check(G):
        raise VerificationError(f"{rule} output does not verify")
    return cert


def _default_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise PreconditionError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc


# -- commands ----------------------------------------------------------------


def cmd_skeleton(args) -> int:
    T = as_graph(read_input(args.input))
    res = skeleton(T)
    lines = [f"size {res.size}", "vertices " + " ".join(map(str, sorted(res.vertices)))]
    for step in res.steps:
        legs = " ".join(f"{x}->{p}" for x, p in sorted(step.legs.items()))
        attach = "-" if step.attachment is None else str(step.attachment)
        lines.append(f"step attach={attach} spine={' '.join(map(str, step.spine))} legs={legs}".rstrip())
    emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_tree_rep(args) -> int:
    T = as_graph(read_input(args.input))
    rep = tree_overlap_rep(T, naive=args.naive)
    if not verify(T, rep).ok:
        raise VerificationError("tree representation does not verify")
    emit(format_rep(rep), args.output)
    return 0


def cmd_verify(args) -> int:
    G = as_graph(read_input(args.graph))
    try:
        text = Path(args.rep).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.rep}: {exc}") from exc
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    # certificate files carry a "quantity direction value rule" header
    rep = parse_certificate(text).witness if len(first.split()) > 1 else parse_rep(text)
    if rep is None:
        raise ParseError("certificate has no representation")
    if rep.n != G.n:
        raise PreconditionError(f"representation has {rep.n} sets for {G.n} vertices")
    result = verify(G, rep, RepKind.parse(args.kind))
    if result.ok:
        print(f"ok {result.kind.value} size {rep.t}")
        return 0
    for v in result.violations:
        print(v)
    print(f"FAILED {len(result.violations)} violations")
    return EXIT_VERIFY


def cmd_construct(args) -> int:
    how = args.method
    if how == "clique":
        n = int(args.input)
        from .families import complete

        cert = _upper("pol", clique_rep(n), "clique", complete(n))
        emit(format_certificate(cert), args.output)
        return 0
    obj = read_input(args.input)
    G = as_graph(obj)
    if how == "edge-bound":
        u, v = args.edge if args.edge else (None, None)
        cert = _upper("phi", edge_bound_rep(G, u, v), "edge-bound", G)
    elif how == "decomp":
        F = greedy_triangle_decomposition(G) if args.triangles else CliqueDecomposition.edges(G)
        req = "incidence" if args.triangles else "degree"
        cert = _upper("pol", decomposition_rep(G, F, require=req), "decomposition", G)
    elif how == "planar":
        cert = planar_phi_upper(as_plane(obj))
    else:
        cert = _upper("phi", small_graph_rep(G), "small", G)
    emit(format_certificate(cert), args.output)
    return 0


def cmd_decompose_planar(args) -> int:
    PG = as_plane(read_input(args.input))
    D = plan_decompose(PG)
    lines = [f"parts {len(D)} edges {D.n_edges} triangles {D.n_triangles}"]
    lines += [f"{p.kind} " + " ".join(map(str, sorted(p.vertices))) for p in D.parts]
    emit("\n".join(lines) + "\n", args.output)
    return 0


def _config(args) -> SearchConfig:
    limit = args.node_limit if args.node_limit is not None else _default_budget()
    return SearchConfig(
        t_max=args.t_max, node_limit=limit, parallel=args.parallel, workers=args.workers, order=args.order
    )


def cmd_exact(args) -> int:
    G = as_graph(read_input(args.input))
    solve = exact_pol if args.quantity == "pol" else exact_phi
    res = solve(G, _config(args))
    print(f"{res.quantity} {res.value if res.value is not None else '-'} status {res.status} nodes {res.nodes}")
    if res.witness is not None:
        sys.stdout.write(format_rep(res.witness))
    if res.status == "budget-exceeded":
        return EXIT_BUDGET
    return 0


def bounds_row(G: Graph, exact_threshold: int, node_limit: int | None = None) -> dict:
    lows = lower_bound(G)
    up = best_upper(G)
    for c in lows:
        if not c.check(G):
            raise VerificationError(f"lower bound {c.rule} does not re-check")
    low = lows[0]
    lower, lower_rule = low.value, low.rule
    exact_val = ""
    H, _ = reduce(G)
    if H.n <= exact_threshold and lower < up.value:
        res = exact_phi(H, SearchConfig(node_limit=node_limit))
        if res.is_exact:
            exact_val = str(res.value)
            lower, lower_rule = res.value, "exhaustive-search"
    if lower > up.value:
        raise VerificationError(f"lower bound {lower} exceeds upper bound {up.value}")
    return {
        "n": G.n,
        "m": G.m,
        "lower": lower,
        "lower_rule": lower_rule,
        "upper": up.value,
        "upper_rule": up.rule,
        "pinned": "yes" if lower == up.value else "no",
        "exact": exact_val,
        "certificates": lows,
        "upper_cert": up,
    }


def cmd_bounds(args) -> int:
    G = as_graph(read_input(args.input))
    row = bounds_row(G, args.exact_threshold, args.node_limit if args.node_limit is not None else _default_budget())
    for c in row["certificates"]:
        print(f"phi lower {c.value} {c.rule}")
    print(f"phi upper {row['upper']} {row['upper_rule']}")
    if row["exact"]:
        print(f"phi exact {row['exact']}")
    if row["pinned"] == "yes":
        print(f"pinned phi = {row['upper']}")
    else:
        print(f"open {row['lower']} <= phi <= {row['upper']}")
    if args.pure:
        pc = best_pure_upper(G)
        pl = lower_bound(G, "pol")[0]
        print(f"pol lower {pl.value} {pl.rule}")
        print(f"pol upper {pc.value} {pc.rule}")
    if args.witness:
        sys.stdout.write(format_rep(row["upper_cert"].witness))
    return 0


def cmd_generate(args) -> int:
    spec = FamilySpec(args.family, args.n, tuple(args.params or ()))
    obj = generate(spec)
    text = format_rotation(obj) if isinstance(obj, PlaneGraph) else format_edge_list(obj)
    emit(text, args.output)
    return 0


def _batch_one(job: tuple[str, str, int, int | None]) -> dict:
    name, path, threshold, limit = job
    try:
        G = as_graph(parse_graph_text(Path(path).read_text()))
        row = bounds_row(G, threshold, limit)
        row = {k: row[k] for k in CSV_COLUMNS[1:]}
    except (ParseError, PreconditionError, VerificationError, BudgetExceeded, OSError) as exc:
        row = {k: "" for k in CSV_COLUMNS[1:]}
        row["lower_rule"] = f"error:{type(exc).__name__}"
        row["upper_rule"] = str(exc).replace("\n", " ")
    row["name"] = name
    return row


def batch_report(directory: str, exact_threshold: int = 6, jobs: int = 1, node_limit: int | None = None) -> str:
    files = sorted(p for p in Path(directory).iterdir() if p.is_file() and not p.name.startswith("."))
    work = [(p.name, str(p), exact_threshold, node_limit) for p in files]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_batch_one, work))
    else:
        rows = [_batch_one(w) for w in work]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def cmd_batch(args) -> int:
    if not Path(args.directory).is_dir():
        raise ParseError(f"{args.directory} is not a directory")
    limit = args.node_limit if args.node_limit is not None else _default_budget()
    text = batch_report(args.directory, args.exact_threshold, args.jobs, limit)
    emit(text, args.output)
    failed = sum(1 for line in text.splitlines()[1:] if ",error:" in line)
    if failed:
        print(f"{failed} input(s) failed", file=sys.stderr)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="overlapnum", description="Overlap numbers of graphs.")
    p.add_argument("--seed", help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("skeleton", help="skeleton of a tree and its caterpillar steps")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_skeleton)

    s = sub.add_parser("tree-rep", help="optimal overlap representation of a tree")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--naive", action="store_true", help="apply superset updates eagerly")
    s.set_defaults(func=cmd_tree_rep)

    s = sub.add_parser("verify", help="check a representation against a graph")
    s.add_argument("graph")
    s.add_argument("rep")
    s.add_argument("--kind", default="overlap", choices=["overlap", "pure", "intersection"])
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="build a representation with one construction")
    s.add_argument("method", choices=["edge-bound", "decomp", "planar", "clique", "small"])
    s.add_argument("input", help="graph file, or the clique order for 'clique'")
    s.add_argument("--edge", nargs=2, type=int, metavar=("U", "V"), help="edge left without a label")
    s.add_argument("--triangles", action="store_true", help="decomp: greedy triangles plus edges")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("decompose-planar", help="edges and facial triangles decomposition")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose_planar)

    for name, func in (("exact", cmd_exact), ("bounds", cmd_bounds)):
        s = sub.add_parser(name, help="exhaustive search" if name == "exact" else "all certified bounds")
        s.add_argument("input")
        s.add_argument("--node-limit", type=int, default=None)
        if name == "exact":
            s.add_argument("--quantity", choices=["phi", "pol"], default="phi")
            s.add_argument("--t-max", type=int, default=16)
            s.add_argument("--order", choices=["degeneracy", "index"], default="degeneracy")
            s.add_argument("--parallel", action="store_true")
            s.add_argument("--workers", type=int, default=None)
        else:
            s.add_argument("--exact-threshold", type=int, default=6)
            s.add_argument("--pure", action="store_true", help="also report pure overlap bounds")
            s.add_argument("--witness", action="store_true", help="print the upper-bound representation")
        s.set_defaults(func=func)

    s = sub.add_parser("generate", help="write a family member")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("n", type=int)
    s.add_argument("--params", nargs="*", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("batch", help="CSV of bounds for every graph file in a directory")
    s.add_argument("directory")
    s.add_argument("--exact-threshold", type=int, default=6)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--node-limit", type=int, default=None)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        print("error: --seed is not accepted; every command is deterministic", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
