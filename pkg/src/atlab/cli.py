"""Command-line front end: ``atlab <verb> [graph6 ...] [options]``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds, constructions, games, orientation, reduction, structure
from .errors import AtlabError, CapExceeded, Graph6Error, HypothesisError, InvariantViolation
from .graph import Graph, as_degree_function
from .graph6 import parse_graph6, read_graph6_lines
from .limits import DEFAULT, Limits

OK, FALSE, USAGE, CAP, INVARIANT = 0, 1, 2, 3, 4

GRAPH_VERBS = ("at-number", "is-at", "ee-eo", "coeff", "gallai", "blocks", "reduce", "mh-reduce",
               "choosable", "online", "critical", "at-critical", "bounds", "audit")


class UsageError(AtlabError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()] if text.strip() else []


def _degree_function(G: Graph, spec: str | None) -> tuple[int, ...]:
    if spec is None:
        raise UsageError("--f is required (an integer, a comma list, or d0 for the degree function)")
    if spec == "d0":
        return G.degrees
    vals = _int_list(spec)
    if len(vals) == 1:
        return (vals[0],) * G.n
    return as_degree_function(G, vals)


def _arcs(G: Graph, spec: str | None) -> orientation.Orientation:
    if spec is None:
        return orientation.Orientation.lexicographic(G)
    arcs = {}
    for part in spec.split(","):
        t, _, h = part.partition(">")
        arcs[(min(int(t), int(h)), max(int(t), int(h)))] = (int(t), int(h))
    missing = [e for e in G.edge_list if e not in arcs]
    if missing or len(arcs) != G.m:
        raise UsageError(f"--arcs must orient every edge exactly once (missing {missing})")
    return orientation.Orientation(G, tuple(arcs[e] for e in G.edge_list))


def _need_k(args) -> int:
    if args.k is None:
        raise UsageError("-k is required")
    return args.k


# -- verbs acting on one graph --------------------------------------------------
# each returns (status, json payload, human text)

def _at_number(G, args, limits):
    k = orientation.at_number(G, limits)
    cert = orientation.is_f_at(G, (k,) * G.n, limits) if G.n else None
    return OK, {"at_number": k, "certificate": cert.to_dict() if cert else None}, str(k)


def _is_at(G, args, limits):
    f = _degree_function(G, args.f)
    cert = orientation.is_f_at(G, f, limits)
    if cert is None:
        return FALSE, {"value": False, "f": list(f), "certificate": None}, "not f-AT"
    return OK, {"value": True, "f": list(f), "certificate": cert.to_dict()}, f"f-AT: {cert.to_json()}"


def _ee_eo(G, args, limits):
    D = _arcs(G, args.arcs)
    ee, eo = orientation.count_eulerian(D, limits)
    return OK, {"arcs": [list(a) for a in D.arcs], "ee": ee, "eo": eo}, f"{ee} {eo}"


def _coeff(G, args, limits):
    if args.exponents is None:
        raise UsageError("--exponents is required")
    e = _int_list(args.exponents)
    try:
        c = orientation.graph_poly_coefficient(G, e)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return OK, {"exponents": e, "coefficient": c}, str(c)


def _gallai(G, args, limits):
    yes = G.n > 0 and G.is_connected() and structure.is_gallai_tree(G)
    payload = {"value": yes, "certificate": None}
    if not yes and G.n > 0 and G.is_connected():
        payload["certificate"] = constructions.d0_orientation(G, limits).to_dict()
    return (OK if yes else FALSE), payload, "Gallai tree" if yes else "not a Gallai tree"


def _blocks(G, args, limits):
    bt = structure.block_decomposition(G)
    payload = {"blocks": [list(b) for b in bt.blocks], "cut_vertices": sorted(bt.cut_vertices),
               "endblocks": list(bt.endblocks)}
    text = "\n".join(" ".join(map(str, b)) for b in bt.blocks)
    return OK, payload, text + f"\ncut vertices: {' '.join(map(str, sorted(bt.cut_vertices))) or '-'}"


def _reduce(G, args, limits):
    red = reduction.find_at_reduction(G, limits)
    if red is None:
        return FALSE, {"value": False, "reduction": None}, "AT-irreducible"
    return OK, {"value": True, "reduction": red.to_dict()}, f"reducible to {list(red.vertices)}"


def _mh_reduce(G, args, limits):
    if args.Y is None:
        raise UsageError("--Y is required")
    rep = reduction.multiple_high_reduction(G, _int_list(args.Y), _need_k(args), args.variant, limits)
    return OK, rep.to_dict(), f"G' = {list(rep.vertices)}: {rep.certificate.to_json()}"


def _choosable(G, args, limits):
    yes = games.is_f_choosable(G, _degree_function(G, args.f), limits)
    return (OK if yes else FALSE), {"value": yes}, "f-choosable" if yes else "not f-choosable"


def _online(G, args, limits):
    yes = games.is_online_f_choosable(G, _degree_function(G, args.f), limits)
    return (OK if yes else FALSE), {"value": yes}, "online f-choosable" if yes else "not online f-choosable"


def _critical(G, args, limits):
    k = _need_k(args)
    yes = bounds.is_k_critical(G, k, limits)
    return (OK if yes else FALSE), {"value": yes, "k": k}, f"{k}-critical" if yes else f"not {k}-critical"


def _at_critical(G, args, limits):
    k = _need_k(args)
    yes = bounds.is_k_at_critical(G, k, limits)
    return (OK if yes else FALSE), {"value": yes, "k": k}, f"{k}-AT-critical" if yes else f"not {k}-AT-critical"


def _bounds(G, args, limits):
    rep = bounds.bound_functionals(G, _need_k(args), Fraction(args.c))
    d = rep.to_dict()
    text = "\n".join(f"{key} = {d[key]}" for key in ("sigma", "tau", "tau_proof", "q", "g_bound", "bound_holds"))
    return OK, d, text


def _audit(G, args, limits):
    if args.kind == "sigma-tau":
        k = args.k if args.k is not None else G.min_degree + 1
        a = bounds.audit_sigma_tau(G, k, Fraction(args.c))
        d = a.to_dict()
        text = f"{a.status} (proof form: {a.proof_status})"
    else:
        a = bounds.audit_sigma_bound(G, _need_k(args))
        d = a.to_dict()
        text = f"sigma={d['sigma']} required={d['required']} {'ok' if a.ok else 'FAIL'}"
    d["kind"] = args.kind
    return (OK if a.ok else INVARIANT), d, text


HANDLERS = {
    "at-number": _at_number, "is-at": _is_at, "ee-eo": _ee_eo, "coeff": _coeff, "gallai": _gallai,
    "blocks": _blocks, "reduce": _reduce, "mh-reduce": _mh_reduce, "choosable": _choosable,
    "online": _online, "critical": _critical, "at-critical": _at_critical, "bounds": _bounds, "audit": _audit,
}


def _run_one(job) -> tuple[int, str, str]:
    """(status, stdout text, stderr text) for one input graph."""
    g6, args, limits = job
    try:
        G = parse_graph6(g6)
        status, payload, text = HANDLERS[args.verb](G, args, limits)
    except (UsageError, HypothesisError, Graph6Error, ValueError) as exc:
        return USAGE, "", f"error: {exc}"
    except CapExceeded as exc:
        return CAP, "", f"error: {exc}"
    except InvariantViolation as exc:
        return INVARIANT, "", f"invariant violation: {exc}"
    if args.json:
        payload = {"verb": args.verb, "graph6": g6, **payload}
        return status, _dump(payload), ""
    return status, text, ""


def _merge_status(statuses: list[int]) -> int:
    # errors dominate verdicts; the worst error wins
    errors = [s for s in statuses if s >= USAGE]
    if errors:
        return max(errors)
    return FALSE if FALSE in statuses else OK


# -- argument handling -----------------------------------------------------------

def _parse_budget(items: list[str]) -> Limits:
    limits = DEFAULT
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or key not in Limits.field_names():
            raise UsageError(f"--budget expects key=value with key in {', '.join(Limits.field_names())}")
        try:
            n = int(value)
        except ValueError as exc:
            raise UsageError(f"--budget {key} needs an integer") from exc
        print(f"warning: budget override {key}={n} (default {getattr(DEFAULT, key)})", file=sys.stderr)
        limits = limits.replace(**{key: n})
    return limits


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("ATLAB_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atlab", description="Alon-Tarsi orientations, reductions and edge bounds.")
    p.add_argument("verb", choices=GRAPH_VERBS + ("table1", "scan"))
    p.add_argument("graphs", nargs="*", help="graph6 strings; '-' or none reads stdin (one per line)")
    p.add_argument("--file", help="read graph6 lines from a file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget", action="append", default=[], metavar="KEY=N", help="raise a desk-scale cap")
    p.add_argument("--jobs", type=int, default=_jobs_default(), help="worker processes across input graphs")
    p.add_argument("-k", type=int)
    p.add_argument("--f", help="degree function: integer, comma list, or d0")
    p.add_argument("--c", default="0", help="rational c for bounds and audits, e.g. 5/12")
    p.add_argument("--arcs", help="orientation as t>h,t>h,... (default low-to-high)")
    p.add_argument("--exponents", help="comma list of exponents")
    p.add_argument("--Y", help="comma list of high vertices for mh-reduce")
    p.add_argument("--variant", choices=reduction.VARIANTS, default=reduction.SYMMETRIC)
    p.add_argument("--kind", choices=("sigma-tau", "sigma-bound"), default="sigma-bound")
    p.add_argument("--mode", choices=bounds.MODES, default="at-critical")
    p.add_argument("--n-max", type=int)
    return p


def _input_lines(args) -> list[str]:
    if args.file and args.graphs:
        raise UsageError("give graphs either as arguments or with --file, not both")
    if args.file:
        with open(args.file) as fh:
            lines = fh.readlines()
    elif args.graphs and args.graphs != ["-"]:
        lines = args.graphs
    else:
        lines = sys.stdin.readlines()
    return [ln.strip() for ln in lines if ln.strip()]


def _table1(args) -> int:
    col = bounds.table1_here_column()
    if args.json:
        print(_dump({"verb": "table1", "here": {str(k): str(v) for k, v in col.items()},
                     "history": {str(k): v for k, v in bounds.TABLE1_HISTORY.items()}}))
    else:
        print("k\tGallai\tKriv\tKS\tKY\tKS-list\tHere")
        for k, row in bounds.TABLE1_HISTORY.items():
            cells = [row[name] or "---" for name in ("Gallai", "Kriv", "KS", "KY", "KS-list")]
            print("\t".join([str(k)] + cells + [str(col.get(k, "---"))]))
    return OK


def _scan(args, limits: Limits) -> int:
    if args.graphs or args.file:
        graphs = list(read_graph6_lines(_input_lines(args)))
        rep = bounds.scan_graphs(graphs, args.k, args.mode, limits, args.jobs)
    else:
        if args.n_max is None:
            raise UsageError("scan needs --n-max or input graphs")
        rep = bounds.scan_edge_bound(args.k, args.n_max, args.mode, limits, args.jobs)
    for r in rep.records:
        if args.json:
            print(_dump({"verb": "scan", "record": r.to_dict()}))
        else:
            print(f"{r.graph6}\tn={r.n}\t2m={2 * r.m}\tbound={float(r.bound):.4f}\t{'ok' if r.ok else 'VIOLATION'}")
    summary = rep.summary()
    if args.json:
        print(_dump({"verb": "scan", "summary": summary}))
    else:
        print(f"examined {summary['examined']}, qualifying {summary['qualifying']}, "
              f"excluded {len(summary['excluded'])}, violations {summary['violations']}")
    for r in rep.violations:
        print(f"falsification witness: {_dump(r.to_dict())}", file=sys.stderr)
    return INVARIANT if rep.violations else OK


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        limits = _parse_budget(args.budget)
        if args.verb == "table1":
            return _table1(args)
        if args.verb == "scan":
            return _scan(args, limits)
        jobs = [(g6, args, limits) for g6 in _input_lines(args)]
        if not jobs:
            raise UsageError("no input graph")
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_run_one, jobs))
        else:
            results = [_run_one(j) for j in jobs]
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (HypothesisError, Graph6Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return INVARIANT
    for status, out, err in results:
        if out:
            print(out)
        if err:
            print(err, file=sys.stderr)
    return _merge_status([s for s, _, _ in results])


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
