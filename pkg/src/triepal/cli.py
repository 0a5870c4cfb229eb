"""``triepal`` command line.

Exit codes: 0 success, 1 bad input or arguments, 2 violated invariant or
failed verification.
"""
from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from multiprocessing import get_context

import numpy as np

from . import checks
from .eertree import build_eertree, eertree_dot, export_eertree
from .engine import analyze, build_indexes, compute_all
from .generators import corpus, random_trie
from .queries import Center, QueryError, QueryIndex
from .trie import CharTable, Trie, TrieInputError, read_edgelist, read_strings, write_edgelist


class InvariantError(RuntimeError):
    pass


# -- helpers -------------------------------------------------------------------

def _load(args):
    if args.format == "edges":
        return read_edgelist(args.input)
    return read_strings(args.input)


def _require_counts(idx) -> None:
    msg = checks.check_counts(idx)
    if msg:
        raise InvariantError(msg)


def _summary(idx) -> str:
    t, r = idx.trie, idx.result
    return f"# mpal={r.mpal_count} dpal={r.dpal_count} n={t.n} l={t.leaf_count}"


class Out:
    """Collects TSV rows or JSON objects (one per line)."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list = []

    def row(self, obj: dict) -> None:
        if self.as_json:
            self.lines.append(json.dumps(obj, ensure_ascii=False))
        else:
            self.lines.append("\t".join(str(x) for x in obj.values()))

    def text(self, s: str) -> None:
        self.lines.extend(s.rstrip("\n").split("\n"))


def _occurrence(obj: dict, trie: Trie, table: CharTable, v: int, k: int, expand: bool) -> dict:
    if expand:
        obj["palindrome"] = table.decode(trie.suffix_ranks(v)[:k])
    return obj


# -- commands --------------------------------------------------------------------

def cmd_build(args, out: Out) -> int:
    trie, table = _load(args)
    t0 = time.perf_counter()
    idx = build_indexes(trie)
    t1 = time.perf_counter()
    idx.result = compute_all(idx.tree, idx.nav)
    t2 = time.perf_counter()
    _require_counts(idx)
    if args.dump:
        out.text(idx.tree.dump(table))
    else:
        stats = {
            "n": trie.n, "leaves": trie.leaf_count, "sigma": table.sigma,
            "height": trie.height, "streeNodes": idx.tree.size,
            "mpal": idx.result.mpal_count, "dpal": idx.result.dpal_count,
            "buildMs": round((t1 - t0) * 1000, 3), "mpalMs": round((t2 - t1) * 1000, 3),
        }
        if args.json:
            out.row(stats)
        else:
            for key, val in stats.items():
                out.row({"key": key, "value": val})
    print(_summary(idx), file=sys.stderr)
    return 0


def cmd_mpal(args, out: Out) -> int:
    trie, table = _load(args)
    idx = analyze(trie)
    _require_counts(idx)
    r = idx.result
    order = np.lexsort((r.mpal_lengths, r.mpal_nodes))
    for v, k in zip(r.mpal_nodes[order].tolist(), r.mpal_lengths[order].tolist()):
        out.row(_occurrence({"node": v, "length": k}, trie, table, v, k, args.expand))
    print(_summary(idx), file=sys.stderr)
    return 0


def cmd_dpal(args, out: Out) -> int:
    trie, table = _load(args)
    idx = analyze(trie)
    _require_counts(idx)
    for v, k in sorted(idx.result.witness, key=lambda w: (w[1], w[0])):
        out.row(_occurrence({"node": v, "length": k}, trie, table, v, k, args.expand))
    print(_summary(idx), file=sys.stderr)
    return 0


def cmd_eertree(args, out: Out) -> int:
    trie, table = _load(args)
    idx = analyze(trie)
    _require_counts(idx)
    e = build_eertree(idx.result, idx.tree)
    if args.dot:
        out.text(eertree_dot(e, table))
    elif args.json:
        for line in export_eertree(e, table, with_witness=args.witness).splitlines():
            f = line.split()
            keys = {"N": ("id", "parity", "length"), "E": ("from", "char", "to"),
                    "L": ("from", "to"), "W": ("id", "node", "length")}[f[0]]
            obj = {"record": f[0]}
            for key, val in zip(keys, f[1:]):
                obj[key] = val if key in ("parity", "char") else int(val)
            out.row(obj)
    else:
        out.text(export_eertree(e, table, with_witness=args.witness))
    return 0


def _node_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise QueryError(f"node id must be an integer, got {text!r}") from None


def cmd_query(args, out: Out) -> int:
    trie, table = _load(args)
    idx = analyze(trie)
    _require_counts(idx)
    q = QueryIndex(idx)
    if args.kind == "mpal":
        start, length = q.query_mpal(_node_arg(args.u), _node_arg(args.v), Center.parse(args.center))
        out.row(_occurrence({"start": start, "length": length}, trie, table, start, length, args.expand))
    else:
        u = _node_arg(args.u)
        for m, k in q.query_dpal_suffix(u):
            out.row(_occurrence({"node": m, "length": k}, trie, table, m, k, args.expand))
        if args.include_epsilon:
            out.row(_occurrence({"node": u, "length": 0}, trie, table, u, 0, args.expand))
    return 0


def cmd_longest(args, out: Out) -> int:
    trie, table = _load(args)
    idx = analyze(trie)
    _require_counts(idx)
    q = QueryIndex(idx)
    for v in range(trie.node_count):
        if v == trie.root:
            continue
        L, (s, k) = q.longest_palindrome(v)
        obj = {"node": v, "longest": L}
        if args.expand:
            obj["start"] = s
            obj["palindrome"] = table.decode(trie.suffix_ranks(s)[:k])
        out.row(obj)
    return 0


# -- verify ---------------------------------------------------------------------

def _remove_leaves(trie: Trie, drop) -> Trie:
    keep = np.ones(trie.node_count, dtype=bool)
    keep[list(drop)] = False
    ids = np.flatnonzero(keep)
    new = np.full(trie.node_count, -1, dtype=np.int64)
    new[ids] = np.arange(len(ids))
    par = trie.parent[ids]
    return Trie(np.where(par < 0, -1, new[np.maximum(par, 0)]), trie.label[ids], root=0)


def _fails(trie: Trie, name: str, seed: int) -> bool:
    return bool(checks.run_checks(trie, [name], random.Random(seed))[name])


def shrink(trie: Trie, name: str, seed: int) -> Trie:
    """Greedily delete leaves (in halving batches, then one at a time)
    while check ``name`` keeps failing."""
    cur = trie
    while True:
        leaves = np.flatnonzero(cur.leaf_flags).tolist()
        if not leaves:
            return cur
        step = max(1, len(leaves) // 2)
        progress = False
        while step >= 1 and not progress:
            for i in range(0, len(leaves), step):
                cand = _remove_leaves(cur, leaves[i:i + step])
                if _fails(cand, name, seed):
                    cur = cand
                    progress = True
                    break
            step //= 2
        if not progress:
            return cur


def _rank_table(trie: Trie) -> CharTable:
    sigma = int(trie.label.max()) if trie.node_count > 1 else 0
    return CharTable(tuple(chr(0x61 + r) if r < 26 else chr(0x100 + r) for r in range(sigma)))


def cmd_verify(args, out: Out) -> int:
    names = args.checks.split(",") if args.checks else list(checks.CHECKS)
    for name in names:
        if name not in checks.CHECKS:
            raise TrieInputError(f"unknown check {name!r}; choose from {', '.join(checks.CHECKS)}")
    if args.input:
        cases = [(args.input, _load(args)[0])]
    else:
        cases = corpus(args.cases, args.max_n, args.seed)
    passed = dict.fromkeys(names, 0)
    first_fail: dict = {}
    total = 0
    for case, trie in cases:
        total += 1
        res = checks.run_checks(trie, names, random.Random(args.seed))
        for name, msg in res.items():
            if msg:
                first_fail.setdefault(name, (case, trie, msg))
            else:
                passed[name] += 1
    for name in names:
        if name in first_fail:
            case, _, msg = first_fail[name]
            out.row({"status": "FAIL", "check": name, "passed": f"{passed[name]}/{total}",
                     "first": f"{case}: {msg}"})
        else:
            out.row({"status": "PASS", "check": name, "passed": f"{passed[name]}/{total}"})
    if not first_fail:
        return 0
    name = next(n for n in names if n in first_fail)
    case, trie, _ = first_fail[name]
    small = shrink(trie, name, args.seed)
    path = args.repro or f"triepal-repro-seed{args.seed}.tsv"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_edgelist(small, _rank_table(small)))
    print(f"# check {name} failed on {case} (seed {args.seed}); "
          f"shrunk to n={small.n}, reproducer: {path} "
          f"(rerun: triepal verify --format edges --seed {args.seed} {path})", file=sys.stderr)
    return 2


# -- bench ----------------------------------------------------------------------

def parse_sizes(text: str) -> list:
    def one(tok: str) -> int:
        tok = tok.strip()
        if "^" in tok:
            b, e = tok.split("^")
            return int(b) ** int(e)
        return int(tok)

    sizes = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = (one(x) for x in part.split(".."))
                n = lo
                while n <= hi:
                    sizes.append(n)
                    n *= 2
            else:
                sizes.append(one(part))
    except ValueError:
        raise TrieInputError(f"bad --sizes {text!r}; use e.g. 2^16..2^21 or 1000,2000") from None
    if not sizes or min(sizes) < 1:
        raise TrieInputError(f"bad --sizes {text!r}")
    return sizes


def bench_once(n: int, sigma: int, seed: int) -> dict:
    """One timed run; meant to execute in a fresh process so that the peak
    resident size belongs to this run alone."""
    import resource

    trie = random_trie(n, sigma, seed)
    t0 = time.perf_counter()
    idx = build_indexes(trie)
    idx.tree.lca_index
    t1 = time.perf_counter()
    idx.result = compute_all(idx.tree, idx.nav)
    t2 = time.perf_counter()
    st = idx.result.stats
    return {
        "n": n,
        "buildMs": (t1 - t0) * 1000,
        "mpalMs": (t2 - t1) * 1000,
        "peakBytes": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024,
        "jumpUses": st.jump_uses,
        "marks": st.marks,
        "error": checks.check_counts(idx),
    }


def run_bench(sizes, reps: int, sigma: int, seed: int, isolate: bool = True) -> list:
    rows = []
    ctx = get_context("spawn")
    for n in sizes:
        runs = []
        for _ in range(reps):
            if isolate:
                with ProcessPoolExecutor(max_workers=1, mp_context=ctx) as pool:
                    runs.append(pool.submit(bench_once, n, sigma, seed).result())
            else:
                runs.append(bench_once(n, sigma, seed))
        errors = [r["error"] for r in runs if r["error"]]
        if errors:
            raise InvariantError(f"n={n}: {errors[0]}")
        runs.sort(key=lambda r: r["buildMs"] + r["mpalMs"])
        med = runs[len(runs) // 2]
        rows.append({
            "n": n,
            "buildMs": statistics.median(r["buildMs"] for r in runs),
            "mpalMs": statistics.median(r["mpalMs"] for r in runs),
            "peakBytes": max(r["peakBytes"] for r in runs),
            "jumpUses": med["jumpUses"],
            "marks": med["marks"],
            "totalMs": med["buildMs"] + med["mpalMs"],
        })
    return rows


def doubling_ratios(rows: list) -> list:
    """``(n, 2n, total(2n) / total(n))`` for consecutive doubled sizes."""
    out = []
    for a, b in zip(rows, rows[1:]):
        if b["n"] == 2 * a["n"]:
            out.append((a["n"], b["n"], b["totalMs"] / a["totalMs"]))
    return out


def cmd_bench(args, out: Out) -> int:
    sizes = parse_sizes(args.sizes)
    rows = run_bench(sizes, args.reps, args.sigma, args.seed, isolate=not args.in_process)
    cols = ("n", "buildMs", "mpalMs", "peakBytes", "jumpUses", "marks")
    if not args.json:
        out.lines.append(",".join(cols))
    for r in rows:
        obj = {c: (round(r[c], 1) if c.endswith("Ms") else r[c]) for c in cols}
        if args.json:
            out.row(obj)
        else:
            out.lines.append(",".join(str(obj[c]) for c in cols))
    for a, b, ratio in doubling_ratios(rows):
        print(f"# ratio n={b}/{a} total={ratio:.3f}", file=sys.stderr)
    if args.plot:
        from .plotting import plot_bench

        plot_bench(rows, args.plot)
        print(f"# figure written to {args.plot}", file=sys.stderr)
    return 0


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("strings", "edges"), default="strings",
                        help="input format (default: strings, one leaf-to-root string per line)")
    common.add_argument("--json", action="store_true", help="one JSON object per output line")
    common.add_argument("-o", "--output", help="write results here instead of standard output")

    p = argparse.ArgumentParser(prog="triepal", description="Palindromes in tries.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common], help="build all indexes and print statistics")
    s.add_argument("input")
    s.add_argument("--dump", action="store_true", help="print the suffix tree instead")
    s.set_defaults(func=cmd_build)

    for name, func, helptext in (("mpal", cmd_mpal, "maximal palindrome occurrences"),
                                 ("dpal", cmd_dpal, "distinct palindromes (one witness each)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("input")
        s.add_argument("--expand", action="store_true", help="append the palindrome itself")
        s.set_defaults(func=func)

    s = sub.add_parser("eertree", parents=[common], help="eertree with suffix links")
    s.add_argument("input")
    s.add_argument("--dot", action="store_true", help="Graphviz output")
    s.add_argument("--witness", action="store_true", help="add one occurrence per node")
    s.set_defaults(func=cmd_eertree)

    s = sub.add_parser("query", parents=[common], help="path queries")
    qsub = s.add_subparsers(dest="kind", required=True)
    qm = qsub.add_parser("mpal", parents=[common],
                         help="maximal palindrome of str(u, v) around a center")
    qm.add_argument("input")
    qm.add_argument("u")
    qm.add_argument("v")
    qm.add_argument("center", help="node:<id> or edge:<childId>")
    qm.add_argument("--expand", action="store_true")
    qm.set_defaults(func=cmd_query)
    qd = qsub.add_parser("dpal", parents=[common], help="distinct palindromes of suf(u)")
    qd.add_argument("input")
    qd.add_argument("u")
    qd.add_argument("--include-epsilon", action="store_true")
    qd.add_argument("--expand", action="store_true")
    qd.set_defaults(func=cmd_query)

    s = sub.add_parser("longest", parents=[common], help="longest palindrome of every suf(v)")
    s.add_argument("input")
    s.add_argument("--expand", action="store_true")
    s.set_defaults(func=cmd_longest)

    s = sub.add_parser("verify", parents=[common], help="engine vs brute-force oracle")
    s.add_argument("input", nargs="?")
    s.add_argument("--cases", type=int, default=1000)
    s.add_argument("--max-n", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--checks", help=f"comma list out of {','.join(checks.CHECKS)}")
    s.add_argument("--repro", help="where to write the shrunk failing trie")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", parents=[common], help="timing on random tries (CSV)")
    s.add_argument("--sizes", default="2^16..2^21")
    s.add_argument("--reps", type=int, default=3)
    s.add_argument("--sigma", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--plot", help="also save a figure (PNG/PDF/SVG by extension)")
    s.add_argument("--in-process", action="store_true",
                   help="run repetitions in this process (peak memory is then cumulative)")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Out(args.json)
    try:
        code = args.func(args, out)
    except (TrieInputError, QueryError, OSError, UnicodeDecodeError) as exc:
        print(f"triepal: error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"triepal: invariant violated: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(out.lines) + "\n" if out.lines else ""
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
