"""Command-line front end.

Every command prints one JSON report::

    {"command": [...], "digest": ..., "outcome": ..., "witnesses": {...}, "wall_time": ...}

Exit codes: 0 success, 1 certified negative, 2 unknown, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import isinf

from . import core
from .connectivity import connectivity_report, diameter, is_k_linked, pair_k_connected, unreachable_pair
from .core import Digraph, canonical_digest
from .dominating import almost_dominating, residue, sparse_linkage
from .errors import BadLength, NotStronglyConnected, SearchIncomplete, TourneyError
from .extremal import ExtremalSpec, certify_extremal, extremal_tournament
from .factors import FactorSpec, find_factor
from .hamiltonicity import camion_cycle, moon_cycle, two_cycle_partition
from .pipeline import PathLinkSpec, linked_paths_with_lengths, partition_k_connected
from .results import Status

SUCCESS, NEGATIVE, UNKNOWN, ERROR = "success", "negative", "unknown", "error"
EXIT_CODES = {SUCCESS: 0, NEGATIVE: 1, UNKNOWN: 2, ERROR: 3}
_STATUS_OUTCOME = {Status.FOUND: SUCCESS, Status.NONE: NEGATIVE, Status.UNKNOWN: UNKNOWN}


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


# -- argument parsing helpers ------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pair_list(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition("-")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected pairs like 0-5,1-6, got {text!r}")
        try:
            out.append((int(a), int(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad pair {item!r}")
    return out


def _pins(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        try:
            if not sep:
                raise ValueError
            out.append((int(a), int(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected INDEX:VERTEX[,INDEX:VERTEX...], got {text!r}")
    return out


def _default_seed() -> int:
    raw = os.environ.get("TOURNEYKIT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TOURNEYKIT_SEED must be an integer, got {raw!r}")


def read_instance(path: str) -> Digraph:
    """Instance JSON, a report carrying ``witnesses.instance``, or compact ``n:hex``."""
    text = sys.stdin.read() if path == "-" else open(path).read()
    text = text.strip()
    if not text.startswith("{"):
        return core.from_compact(text)
    data = json.loads(text)
    if "witnesses" in data and "instance" in data["witnesses"]:
        data = data["witnesses"]["instance"]
    return core.from_dict(data)


def write_instance(d: Digraph, path: str, fmt: str) -> None:
    if fmt == "json":
        core.save(d, path)
        return
    text = core.to_compact(d) + "\n" if fmt == "compact" else core.to_dot(d)
    with open(path, "w") as f:
        f.write(text)


# -- commands: each returns (outcome, witnesses) ----------------------------


def cmd_hamilton(d, o):
    if d.n < 3:
        return NEGATIVE, {"reason": "fewer than 3 vertices"}
    try:
        return SUCCESS, {"cycle": camion_cycle(d).vertices}
    except NotStronglyConnected as e:
        return NEGATIVE, {"unreachable": e.pair}


def cmd_pancyclic(d, o):
    pair = unreachable_pair(d)
    if pair is not None or d.n < 3:
        return NEGATIVE, {"unreachable": pair, "reason": "not strongly connected on 3+ vertices"}
    vs = [o["v"]] if o.get("v") is not None else list(range(d.n))
    lengths = [o["length"]] if o.get("length") is not None else list(range(3, d.n + 1))
    cycles = [{"v": v, "length": L, "cycle": moon_cycle(d, v, L).vertices} for v in vs for L in lengths]
    return SUCCESS, {"cycles": cycles}


def cmd_twocycles(d, o):
    res = two_cycle_partition(d, o["v"], o["length"])
    w = {"nodes": res.nodes}
    if res.found:
        w["cycles"] = [c.vertices for c in res.value]
    return _STATUS_OUTCOME[res.status], w


def cmd_kappa(d, o):
    rep = connectivity_report(d)
    return SUCCESS, {"kappa": rep.kappa, "witness_pair": rep.witness_pair, "separator": rep.witness_separator}


def cmd_pairconn(d, o):
    cert = pair_k_connected(d, o["u"], o["v"], o["k"])
    w = {"paths": cert.paths, "separator": cert.separator, "direct_arc": cert.direct}
    return (SUCCESS if cert else NEGATIVE), w


def cmd_linked(d, o):
    res = is_k_linked(d, o["pairs"])
    w = {"nodes": res.nodes, "note": res.note}
    if res.found:
        w["paths"] = res.value.paths
    return _STATUS_OUTCOME[res.status], w


def cmd_diameter(d, o):
    diam = diameter(d)
    if isinf(diam):
        return NEGATIVE, {"diameter": diam, "unreachable": unreachable_pair(d)}
    return SUCCESS, {"diameter": int(diam)}


def cmd_dominate(d, o):
    ds = almost_dominating(d, o["x"], o["c"], o["kind"])
    direct = residue(d, ds.kind, ds.members)
    ok = ds.holds() and direct == frozenset(ds.uncovered)
    return (SUCCESS if ok else NEGATIVE), {
        "kind": ds.kind, "path": ds.path, "uncovered": ds.uncovered, "ell": ds.ell,
        "bound": ds.bound, "residue_size": len(ds.uncovered), "holds": ok}


def cmd_sparse_linkage(d, o):
    try:
        pair = sparse_linkage(d, o["k"])
    except SearchIncomplete as e:
        return UNKNOWN, {"note": str(e)}
    return SUCCESS, {"A": pair.A, "B": pair.B, "budget": pair.budget, "ell": pair.ell}


def _indexed(pins, count, what):
    out = [None] * count
    for i, v in pins:
        if not 0 <= i < count:
            raise UsageError(f"{what} index {i} outside [0, {count})")
        if out[i] is not None:
            raise UsageError(f"{what} {i} is pinned twice")
        out[i] = v
    return out


def cmd_factor(d, o):
    lengths = o["lengths"]
    prescribed = _indexed(o.get("pin") or [], len(lengths), "cycle")
    if any(p is not None and sum(q == p for q in prescribed) > 1 for p in prescribed):
        raise UsageError("a vertex can be pinned to one cycle only")
    res = find_factor(d, FactorSpec(tuple(lengths), tuple(prescribed)))
    w = {"nodes": res.nodes}
    if res.found:
        w["cycles"] = [c.vertices for c in res.value.cycles]
    return _STATUS_OUTCOME[res.status], w


def cmd_partition(d, o):
    t = o["t"]
    pinned = [[] for _ in range(t)]
    for i, v in o.get("pin") or []:
        if not 0 <= i < t:
            raise UsageError(f"part index {i} outside [0, {t})")
        pinned[i].append(v)
    res = partition_k_connected(d, t, o["k"], o["sizes"], pinned)
    w = {"nodes": res.nodes, "note": res.note}
    if res.found:
        cert = res.value
        w.update(parts=cert.parts, sizes=cert.sizes, kappas=cert.kappas, pinned=cert.pinned)
    return _STATUS_OUTCOME[res.status], w


def cmd_linkpaths(d, o):
    res = linked_paths_with_lengths(d, PathLinkSpec(tuple(o["pairs"]), tuple(o["lengths"])))
    w = {"nodes": res.nodes}
    if res.found:
        w["paths"] = res.value.paths
    return _STATUS_OUTCOME[res.status], w


def cmd_certify(d, o):
    meta = d.meta
    try:
        s = o.get("s") if o.get("s") is not None else meta["s"]
        m = o.get("m") if o.get("m") is not None else meta["m"]
        sp = o.get("sprime") if o.get("sprime") is not None else meta["sprime"]
    except KeyError:
        raise UsageError("instance metadata lacks s/m/sprime; pass --s --m --sprime")
    spec = ExtremalSpec(int(s), int(m), int(sp))
    cert = certify_extremal(d, spec, o["k"])
    return (SUCCESS if cert.ok else NEGATIVE), {
        "s": spec.s, "m": spec.m, "sprime": spec.s_prime, "n": spec.n, "k": cert.k,
        "kappa": cert.kappa_exact, "kappa_witness": cert.kappa_witness,
        "diameter": cert.diameter_exact, "diameter_bound": cert.diameter_bound,
        "min_k_subtournament": cert.min_k_subtournament, "min_witness": cert.min_witness,
        "size_bound": cert.size_bound,
        "subtournament_scan": "verified" if cert.subtournament_verified else "unverified",
        "layers_separate": cert.layers_separate}


INSTANCE_COMMANDS = {
    "hamilton": cmd_hamilton, "pancyclic": cmd_pancyclic, "twocycles": cmd_twocycles,
    "kappa": cmd_kappa, "pairconn": cmd_pairconn, "linked": cmd_linked,
    "diameter": cmd_diameter, "dominate": cmd_dominate, "sparse-linkage": cmd_sparse_linkage,
    "factor": cmd_factor, "partition": cmd_partition, "linkpaths": cmd_linkpaths,
    "certify": cmd_certify,
}


def run_instance_command(name: str, d: Digraph, opts: dict):
    """Run one instance command; library errors become an ``error`` outcome."""
    try:
        return INSTANCE_COMMANDS[name](d, opts)
    except (TourneyError, ValueError, UsageError) as e:
        return ERROR, {"error": f"{type(e).__name__}: {e}"}


# -- sweeps ------------------------------------------------------------------


EXPECTATIONS = {
    "success": lambda outcome, d: outcome == SUCCESS,
    "negative": lambda outcome, d: outcome == NEGATIVE,
    "decided": lambda outcome, d: outcome in (SUCCESS, NEGATIVE),
    "success_iff_strong": lambda outcome, d: (outcome == SUCCESS) == (d.n >= 3 and unreachable_pair(d) is None)
    and outcome != ERROR,
}


def _instance_source(cfg: dict):
    """``(count, build(i))`` for the ``instances`` section of a sweep config."""
    kind = cfg.get("kind")
    if kind == "enumerate":
        n = int(cfg["n"])
        return core.count_labeled_tournaments(n), ("enumerate", n)
    if kind == "random":
        start, stop = cfg["seeds"]
        return max(0, stop - start), ("random", int(cfg["n"]), int(start), bool(cfg.get("digraph")),
                                      float(cfg.get("p", 0.5)))
    if kind == "paley":
        qs = list(cfg["q"])
        return len(qs), ("paley", tuple(qs))
    if kind == "files":
        paths = list(cfg["paths"])
        return len(paths), ("files", tuple(paths))
    if kind == "compact":
        codes = list(cfg["codes"])
        return len(codes), ("compact", tuple(codes))
    raise UsageError(f"unknown instance kind {kind!r}")


def _build(source, i: int) -> Digraph:
    kind = source[0]
    if kind == "enumerate":
        return core.labeled_tournament(source[1], i)
    if kind == "random":
        _, n, start, digraph, p = source
        if digraph:
            return core.random_digraph(n, start + i, p)
        return core.random_tournament(n, start + i)
    if kind == "paley":
        return core.paley_tournament(source[1][i])
    if kind == "files":
        return core.load(source[1][i])
    return core.from_compact(source[1][i])


def _sweep_one(job):
    source, i, command, arg_sets, expect = job
    d = _build(source, i)
    fails = []
    for args in arg_sets:
        outcome, w = run_instance_command(command, d, args)
        if not EXPECTATIONS[expect](outcome, d):
            fails.append({"args": args, "outcome": outcome, "witnesses": w})
    return i, fails, (core.to_dict(d) if fails else None)


def load_sweep_config(path: str) -> dict:
    try:
        with open(path) as f:
            cfg = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read sweep config: {e}")
    if not isinstance(cfg, dict):
        raise UsageError("sweep config must be a JSON object")
    for key in ("instances", "command", "expect"):
        if key not in cfg:
            raise UsageError(f"sweep config lacks {key!r}")
    if cfg["command"] not in INSTANCE_COMMANDS:
        raise UsageError(f"unknown sweep command {cfg['command']!r}")
    if cfg["expect"] not in EXPECTATIONS:
        raise UsageError(f"unknown expectation {cfg['expect']!r}; choose from {sorted(EXPECTATIONS)}")
    args = cfg.get("args", {})
    cfg["args"] = [args] if isinstance(args, dict) else list(args)
    if not all(isinstance(a, dict) for a in cfg["args"]):
        raise UsageError("args must be an object or a list of objects")
    return cfg


def run_sweep(cfg: dict, jobs: int = 1) -> dict:
    """Run a sweep; counts are per instance, results merged in instance order."""
    try:
        count, source = _instance_source(cfg["instances"])
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed instances section: {e}")
    arg_sets = [_normalise_args(cfg["command"], a) for a in cfg["args"]]
    work = ((source, i, cfg["command"], arg_sets, cfg["expect"]) for i in range(count))
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_one, work, chunksize=max(1, count // (8 * jobs))))
    else:
        results = [_sweep_one(job) for job in work]
    failed = [(i, f, inst) for i, f, inst in results if f]
    first = None
    if failed:
        i, fails, inst = failed[0]
        first = {"index": i, "instance": inst, "failures": fails}
    return {"name": cfg.get("name"), "command": cfg["command"], "expect": cfg["expect"],
            "count": count, "passed": count - len(failed), "failed": len(failed),
            "first_failure": first}


_ARG_TYPES = {"pairs": lambda v: [tuple(p) for p in v], "pin": lambda v: [tuple(p) for p in v]}


def _normalise_args(command: str, args: dict) -> dict:
    return {k: _ARG_TYPES.get(k, lambda v: v)(v) for k, v in args.items()}


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tourneykit", description="Tournament connectivity, cycles and partitions.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help, instance=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--pretty", action="store_true", help="indent the JSON report")
        if instance:
            sp.add_argument("--in", dest="infile", required=True,
                            help="instance file (JSON, report, or compact n:hex); - for stdin")
        return sp

    def gen(name, help):
        sp = verb(name, help, instance=False)
        sp.add_argument("--out", help="also write the instance to this file")
        sp.add_argument("--format", choices=("json", "compact", "dot"), default="json")
        return sp

    sp = gen("gen-random", "random tournament (or digraph)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None, help="default: $TOURNEYKIT_SEED or 0")
    sp.add_argument("--digraph", action="store_true", help="independent arcs instead of a tournament")
    sp.add_argument("--p", type=float, default=0.5, help="arc probability for --digraph")
    sp = gen("gen-paley", "Paley tournament on Z_q")
    sp.add_argument("--q", type=int, required=True)
    sp = gen("gen-extremal", "layered tournament with large strongly k-connected pieces")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--sprime", type=int, required=True)

    sp = verb("enumerate", "count labeled tournaments", instance=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--strong", action="store_true", help="also count strongly connected ones")
    sp.add_argument("--list", action="store_true", help="list compact codes (n <= 5)")

    verb("hamilton", "Hamiltonian cycle")
    sp = verb("pancyclic", "cycles of every length through a vertex")
    sp.add_argument("--v", type=int)
    sp.add_argument("--length", type=int)
    sp = verb("twocycles", "two disjoint cycles covering all vertices")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--length", type=int, required=True)
    verb("kappa", "exact vertex connectivity")
    sp = verb("pairconn", "disjoint paths or a small separator for one ordered pair")
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = verb("linked", "vertex-disjoint paths joining terminal pairs")
    sp.add_argument("--pairs", type=_pair_list, required=True)
    verb("diameter", "diameter")
    sp = verb("dominate", "almost dominating path")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--kind", choices=("A", "B"), default="A")
    sp = verb("sparse-linkage", "small source and sink sets reached k-robustly")
    sp.add_argument("--k", type=int, required=True)
    sp = verb("factor", "cycle factor with prescribed lengths")
    sp.add_argument("--lengths", type=_int_list, required=True)
    sp.add_argument("--pin", type=_pins, action="extend", help="CYCLE:VERTEX[,...], repeatable")
    sp = verb("partition", "partition into strongly k-connected parts")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--sizes", type=_int_list, required=True)
    sp.add_argument("--pin", type=_pins, action="extend", help="PART:VERTEX[,...], repeatable")
    sp = verb("linkpaths", "disjoint paths with prescribed vertex counts")
    sp.add_argument("--pairs", type=_pair_list, required=True)
    sp.add_argument("--lengths", type=_int_list, required=True)
    sp = verb("certify", "certify a layered extremal instance")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--sprime", type=int)

    sp = verb("sweep", "run a declarative sweep config", instance=False)
    sp.add_argument("config")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def _generate(args):
    if args.verb == "gen-random":
        seed = _default_seed() if args.seed is None else args.seed
        if args.digraph:
            return core.random_digraph(args.n, seed, args.p), {"seed": seed}
        return core.random_tournament(args.n, seed), {"seed": seed}
    if args.verb == "gen-paley":
        return core.paley_tournament(args.q), {}
    spec = ExtremalSpec(args.s, args.m, args.sprime)
    return extremal_tournament(spec), {"back_arcs": spec.back_arcs()}


def _dispatch(args):
    """Returns ``(digest, outcome, witnesses)``."""
    if args.verb.startswith("gen-"):
        d, extra = _generate(args)
        if args.out:
            write_instance(d, args.out, args.format)
        return canonical_digest(d), SUCCESS, {"instance": core.to_dict(d), **extra}
    if args.verb == "enumerate":
        if args.list and args.n > 5:
            raise UsageError("--list is limited to n <= 5")
        w = {"n": args.n, "count": core.count_labeled_tournaments(args.n)}
        if args.strong or args.list:
            strong, codes = 0, []
            for t in core.enumerate_labeled_tournaments(args.n):
                strong += t.n >= 1 and unreachable_pair(t) is None
                if args.list:
                    codes.append(core.to_compact(t))
            if args.strong:
                w["strong"] = strong
            if args.list:
                w["codes"] = codes
        return None, SUCCESS, w
    if args.verb == "sweep":
        cfg = load_sweep_config(args.config)
        with open(args.config, "rb") as f:
            digest = hashlib.sha256(f.read()).hexdigest()
        summary = run_sweep(cfg, max(1, args.jobs))
        return digest, (SUCCESS if summary["failed"] == 0 else NEGATIVE), summary
    d = read_instance(args.infile)
    opts = {k: v for k, v in vars(args).items() if k not in ("verb", "infile", "pretty")}
    outcome, w = INSTANCE_COMMANDS[args.verb](d, opts)
    return canonical_digest(d), outcome, w


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    pretty = "--pretty" in argv
    try:
        args = build_parser().parse_args(argv)
        digest, outcome, witnesses = _dispatch(args)
    except (UsageError, TourneyError, ValueError, OSError, KeyError, BadLength) as e:
        digest, outcome = None, ERROR
        witnesses = {"error": f"{type(e).__name__}: {e}"}
        print(f"tourneykit: {e}", file=sys.stderr)
    report = {"command": argv, "digest": digest, "outcome": outcome,
              "witnesses": _jsonable(witnesses), "wall_time": round(time.perf_counter() - start, 6)}
    print(json.dumps(report, sort_keys=True, indent=2 if pretty else None))
    return EXIT_CODES[outcome]


if __name__ == "__main__":
    sys.exit(main())
