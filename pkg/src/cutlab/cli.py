"""Command-line front end: ``cutlab <subcommand> ...``.

Exit codes: 0 success, 1 invalid input (bad flags, malformed files, contract
violations, inconsistent results), 2 guard refusal (instance too large for
exact enumeration).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import attack, certificates, constructions, schemes
from .errors import CutLabError, GuardRefusal
from .families import analyze, enumerate_family, parse_family, to_csv
from .gomory_hu import build_gh_tree
from .graph import WeightedGraph, dump_graph, load_graph, parse_demands
from .solvers import directed_mincut, groupcut, solve


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: report them with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _terminals(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad terminal list {text!r}") from None


def _read_graph(path: str) -> WeightedGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read graph file {path}: {exc.strerror}") from None
    return load_graph(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "path":
        G = constructions.gen_path_lb(args.n)
        notes = [f"path lower bound, n={args.n}, edge (i-1,i) weighs 2^i"]
    elif kind == "matching":
        G = constructions.gen_matching_lb(args.n)
        notes = [f"perfect matching lower bound, n={args.n}, edge (2i-2,2i-1) weighs 2^i"]
    elif kind == "group":
        G, lay = constructions.gen_group_lb_with_layout(args.n, args.alpha, args.beta)
        notes = [
            f"group-cut lower bound, n={args.n}, alpha={args.alpha}, beta={args.beta}",
            f"s={lay.s} t={lay.t} u={lay.u} big={lay.big}",
            f"expected distinct >= {constructions.group_lb_expected(args.n, args.alpha, args.beta)}",
        ]
    elif kind == "directed":
        G = constructions.gen_directed_bipartite(args.n)
        notes = [f"directed bipartite, X=0..{args.n - 1}, Y={args.n}..{2 * args.n - 1}"]
    elif kind == "adversarial":
        inst = attack.gen_adversarial(args.n, args.seed)
        G = inst.to_graph()
        notes = [f"adversarial complete graph, n={args.n}, seed={args.seed}, vertex i is label i+1"]
    else:
        G = constructions.gen_random(args.n, args.seed, args.p, args.wmin, args.wmax)
        notes = [f"random connected graph, n={args.n}, seed={args.seed}, p={args.p}, weights {args.wmin}..{args.wmax}"]
    _emit(dump_graph(G, notes), args.out)
    return 0


def cmd_solve(args) -> int:
    G = _read_graph(args.graph)
    D = parse_demands(args.demands, directed=G.directed)
    if G.directed:
        print(f"value={directed_mincut(G, D)}")
        return 0
    res = solve(G, D)
    print(f"value={res.value}")
    print(f"partition={res.partition}")
    return 0


def cmd_ghtree(args) -> int:
    G = _read_graph(args.graph)
    T = build_gh_tree(G)
    lines = [f"{u} {v} {w}" for u, v, w in T.edges]
    lines.append(f"# distinct={len({w for _, _, w in T.edges})} bound={max(G.n - 1, 0)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_analyze(args) -> int:
    G = _read_graph(args.graph)
    fam = parse_family(args.family)
    if args.terminals is not None:
        fam = fam.over(args.terminals)
    report = analyze(G, fam, args.jobs)
    _emit(to_csv([report]), args.out)
    return 0


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def cmd_certify(args) -> int:
    failed = False
    if args.claim == "span":
        if args.kind == "group":
            M = certificates.build_group_matrix(args.n, args.alpha, args.beta)
        else:
            M = certificates.build_multiway_matrix(args.n, args.k)
        for v0 in range(args.n):
            ok, bad = certificates.check_span(M, v0)
            failed |= not ok
            bound = len(M.spanning_labels(v0))
            extra = "" if ok else f" first_failing_row={bad}"
            print(f"{_status(ok)} span {M.kind}{M.params} n={args.n} v0={v0} rank={M.rank()} spanning_rows={bound}{extra}")
    elif args.claim == "feasibility":
        ok, bad = certificates.check_feasibility(args.n)
        failed = not ok
        extra = "" if ok else f" counterexample={bad[0]} D={bad[1]} partition={bad[2]}"
        print(f"{_status(ok)} feasibility n={args.n}{extra}")
    else:
        G = _read_graph(args.graph)
        fam = parse_family(args.family).resolve(G)
        results = [(D, solve(G, D)) for D in enumerate_family(fam)]
        demands, values = certificates.increasing_demands(results)
        M = certificates.build_poly_eval_matrix(G, demands, values)
        ok = certificates.check_independence(M)
        failed = not ok
        print(f"{_status(ok)} independence family={fam} rows={len(M.rows)} rank={M.rank()}")
    return 1 if failed else 0


def cmd_scheme(args) -> int:
    if args.action == "build":
        G = _read_graph(args.graph)
        fam = parse_family(args.family)
        scheme = schemes.build_scheme(G, fam, args.terminals)
        schemes.save(scheme, args.out)
        bits, bound = schemes.storage_bits(scheme), schemes.storage_bound(scheme)
        print(f"entries={len(scheme.entries)} storage_bits={bits} bound={bound} C={schemes.STORAGE_C}")
        return 0
    scheme = schemes.load(args.scheme)
    D = parse_demands(args.demands)
    print(f"value={schemes.query_value(scheme, D)}")
    if args.partition:
        P = schemes.query_partition(scheme, D)
        blocks = " | ".join(" ".join(str(scheme.terminals[i]) for i in b) for b in P.blocks())
        print(f"partition={blocks}")
    return 0


def cmd_attack(args) -> int:
    inst = attack.gen_adversarial(args.n, args.seed)
    G = inst.to_graph()
    recovered, queries = attack.recover_weights(lambda D: groupcut(G, D.A, D.B).value, args.n)
    print(f"queries={queries}")
    diff = [(e, inst.weights[e], recovered.get(e)) for e in sorted(inst.weights) if recovered.get(e) != inst.weights[e]]
    if not diff:
        print("RECOVERED: exact")
        return 0
    for (i, j), want, got in diff:
        print(f"w({i},{j}): generated={want} recovered={got}")
    return 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cutlab", description="Exact minimum cuts, distinct-value counts and evaluation schemes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a generated graph")
    g.add_argument("kind", choices=["path", "matching", "group", "directed", "adversarial", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--alpha", type=int, default=1)
    g.add_argument("--beta", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--p", type=float, default=0.5, help="edge probability (random)")
    g.add_argument("--wmin", type=int, default=1)
    g.add_argument("--wmax", type=int, default=100)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="minimum cut for one demand graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--demands", required=True, help="K:{a,..},{b,..} | S:{..} | P:(u,v);(x,y)")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("ghtree", help="Gomory-Hu tree as 'u v weight' lines")
    t.add_argument("--graph", required=True)
    t.add_argument("--out")
    t.set_defaults(func=cmd_ghtree)

    a = sub.add_parser("analyze", help="distinct values and redundancy factor as CSV")
    a.add_argument("--graph", required=True)
    a.add_argument("--family", required=True, help="groupcut:A,B | multiway:K | multicut:K, optional :le suffix")
    a.add_argument("--terminals", type=_terminals)
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("certify", help="check the rank certificates")
    c.add_argument("claim", choices=["span", "feasibility", "independence"])
    c.add_argument("--kind", choices=["group", "multiway"], default="group")
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--alpha", type=int, default=1)
    c.add_argument("--beta", type=int, default=1)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--graph")
    c.add_argument("--family")
    c.set_defaults(func=cmd_certify)

    e = sub.add_parser("scheme", help="build or query an evaluation scheme")
    esub = e.add_subparsers(dest="action", required=True, parser_class=_Parser)
    eb = esub.add_parser("build")
    eb.add_argument("--graph", required=True)
    eb.add_argument("--family", required=True)
    eb.add_argument("--terminals", type=_terminals)
    eb.add_argument("--out", required=True)
    eb.set_defaults(func=cmd_scheme)
    eq = esub.add_parser("query")
    eq.add_argument("--scheme", required=True)
    eq.add_argument("--demands", required=True)
    eq.add_argument("--partition", action="store_true", help="also print the attaining partition of T")
    eq.set_defaults(func=cmd_scheme)

    k = sub.add_parser("attack", help="recover adversarial weights from group-cut values")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_attack)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "certify" and args.claim == "independence" and not (args.graph and args.family):
            parser.error("certify independence needs --graph and --family")
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except GuardRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (CutLabError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
