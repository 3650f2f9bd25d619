"""Command line surface: cascades, indices, verdicts, certificates, tables.

Output is a stable line-oriented ``key: value`` text (or JSON with --json);
identical arguments and seed produce byte-identical output. Exit codes:
0 success, 2 usage error, 3 certificate search exhausted.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cascade import kostant_cascade
from .classify import classify_parabolic, enumerate_index_zero, non_qr_subsets
from .rootsys import SimpleType, build_root_system
from .seaweed import BiparabolicSpec, seaweed_index
from .stabilizer import certificate_to_text, certify_quasi_reductive

USAGE_ERROR = 2
EXHAUSTED = 3


@dataclass(frozen=True)
class QuerySpec:
    family: str
    rank: int
    pi1: frozenset[int]
    pi2: frozenset[int]
    seed: int = 0
    trials: int = 20

    @property
    def stype(self) -> SimpleType:
        return SimpleType(self.family, self.rank)


def _parse_subset(txt: str | None, rank: int, default_full: bool) -> frozenset[int]:
    if txt is None:
        return frozenset(range(1, rank + 1)) if default_full else frozenset()
    txt = txt.strip()
    if not txt:
        return frozenset()
    try:
        vals = frozenset(int(p) for p in txt.split(","))
    except ValueError:
        raise SystemExit2(f"cannot parse root list {txt!r}")
    if not all(1 <= v <= rank for v in vals):
        raise SystemExit2(f"root indices in {sorted(vals)} out of range 1..{rank}")
    return vals


class SystemExit2(Exception):
    """Usage-level error, reported on stderr with exit code 2."""


def _subset_text(s) -> str:
    return ",".join(str(i) for i in sorted(s)) if s else "(empty)"


# ---------------------------------------------------------------------------
# commands


def cmd_cascade(q: QuerySpec, as_json: bool) -> tuple[int, str]:
    r = build_root_system(q.stype)
    c = kostant_cascade(r, q.pi1)
    if as_json:
        data = {
            "type": str(q.stype),
            "pi": sorted(q.pi1),
            "k": len(c),
            "nodes": [
                {
                    "support": sorted(n.support),
                    "eps": list(n.eps),
                    "gamma_size": len(n.gamma),
                }
                for n in c.nodes
            ],
        }
        return 0, json.dumps(data, sort_keys=True)
    lines = [f"type: {q.stype}", f"pi: {_subset_text(q.pi1)}", f"k: {len(c)}"]
    for i, n in enumerate(c.nodes, 1):
        lines.append(
            "node {}: support={} eps={} gamma={}".format(
                i,
                ",".join(map(str, sorted(n.support))),
                ",".join(map(str, n.eps)),
                len(n.gamma),
            )
        )
    return 0, "\n".join(lines)


def cmd_index(q: QuerySpec, as_json: bool) -> tuple[int, str]:
    spec = BiparabolicSpec(q.stype, q.pi1, q.pi2)
    idx = seaweed_index(spec)
    if as_json:
        return 0, json.dumps(
            {
                "type": str(q.stype),
                "pi1": sorted(q.pi1),
                "pi2": sorted(q.pi2),
                "index": idx,
            },
            sort_keys=True,
        )
    return 0, "\n".join(
        [
            f"type: {q.stype}",
            f"pi1: {_subset_text(q.pi1)}",
            f"pi2: {_subset_text(q.pi2)}",
            f"index: {idx}",
        ]
    )


def cmd_classify(q: QuerySpec, as_json: bool) -> tuple[int, str]:
    v = classify_parabolic(q.stype, q.pi1)
    if as_json:
        return 0, v.to_json()
    lines = [
        f"type: {q.stype}",
        f"pi: {_subset_text(q.pi1)}",
        f"quasi_reductive: {'yes' if v.quasi_reductive else 'no'}",
        f"index: {v.index}",
    ]
    if v.torus_dim is not None:
        lines.append(f"torus_dim: {v.torus_dim}")
    for t in v.trace:
        lines.append(f"rule: {t}")
    return 0, "\n".join(lines)


def cmd_verify(
    q: QuerySpec, as_json: bool, store: str | None
) -> tuple[int, str]:
    spec = BiparabolicSpec(q.stype, q.pi1, q.pi2)
    cert = certify_quasi_reductive(spec, trials=q.trials, seed=q.seed)
    idx = seaweed_index(spec)
    if cert is None:
        if as_json:
            txt = json.dumps(
                {
                    "type": str(q.stype),
                    "pi1": sorted(q.pi1),
                    "pi2": sorted(q.pi2),
                    "seed": q.seed,
                    "trials": q.trials,
                    "index": idx,
                    "certificate": None,
                },
                sort_keys=True,
            )
        else:
            txt = "\n".join(
                [
                    f"type: {q.stype}",
                    f"pi1: {_subset_text(q.pi1)}",
                    f"pi2: {_subset_text(q.pi2)}",
                    f"seed: {q.seed}",
                    f"index: {idx}",
                    f"certificate: none ({q.trials} trials exhausted)",
                ]
            )
        return EXHAUSTED, txt
    text = certificate_to_text(cert)
    if store:
        Path(store).write_text(text)
    if as_json:
        out = {
            "type": str(q.stype),
            "pi1": sorted(q.pi1),
            "pi2": sorted(q.pi2),
            "seed": q.seed,
            "trial": cert.trial,
            "index": idx,
            "stabilizer_dim": cert.stab.dim,
            "certificate": text,
        }
        return 0, json.dumps(out, sort_keys=True)
    lines = [
        f"type: {q.stype}",
        f"pi1: {_subset_text(q.pi1)}",
        f"pi2: {_subset_text(q.pi2)}",
        f"seed: {q.seed}",
        f"index: {idx}",
        f"certificate: found (trial {cert.trial})",
        f"stabilizer_dim: {cert.stab.dim}",
        "checks: dim-equals-index abelian killing-nondegenerate semisimple",
    ]
    if store:
        lines.append(f"stored: {store}")
    else:
        lines.append(text.rstrip("\n"))
    return 0, "\n".join(lines)


# ---------------------------------------------------------------------------
# table regeneration and golden diffs

_CLASSICAL_RANGE = {"A": range(1, 11), "B": range(2, 11), "C": range(3, 11), "D": range(4, 11)}
_ALL_TYPES = (
    [("A", l) for l in _CLASSICAL_RANGE["A"]]
    + [("B", l) for l in _CLASSICAL_RANGE["B"]]
    + [("C", l) for l in _CLASSICAL_RANGE["C"]]
    + [("D", l) for l in _CLASSICAL_RANGE["D"]]
    + [("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)]
)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _md_text(header: list[str], rows: list[list]) -> str:
    out = ["| " + " | ".join(header) + " |"]
    out.append("|" + "|".join([" --- "] * len(header)) + "|")
    for row in rows:
        out.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(out) + "\n"


def _subset_cell(s) -> str:
    return " ".join(str(i) for i in sorted(s)) if s else "(empty)"


def _classify_worker(args) -> dict:
    fam, rank, subset = args
    return classify_parabolic(SimpleType(fam, rank), frozenset(subset)).to_dict()


def _non_qr_rows(fam: str, rank: int, workers: int = 1) -> list[list]:
    t = SimpleType(fam, rank)
    if workers > 1:
        from .classify import _subsets_sorted

        tasks = [(fam, rank, tuple(sorted(s))) for s in _subsets_sorted(rank)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as ex:
            dicts = list(ex.map(_classify_worker, tasks))
        verdicts = [d for d in dicts if not d["qr"]]
        return [
            [_subset_cell(d["subset"]), d["index"], d.get("torus_dim", "")]
            for d in verdicts
        ]
    return [
        [
            _subset_cell(v.subset),
            v.index,
            v.torus_dim if v.torus_dim is not None else "",
        ]
        for v in non_qr_subsets(t)
    ]


def generate_tables(selection: list[tuple[str, int]] | None, workers: int = 1) -> dict[str, str]:
    """Build the regenerated reference tables as {filename: content}."""
    out: dict[str, str] = {}
    if selection is None:
        rows = []
        for fam, rank in _ALL_TYPES:
            r = build_root_system(SimpleType(fam, rank))
            rows.append([fam, rank, len(kostant_cascade(r, r.full_subset()))])
        out["cascade_sizes.csv"] = _csv_text(["family", "rank", "k"], rows)
        out["cascade_sizes.md"] = _md_text(["family", "rank", "k"], rows)

        from .classify import single_root_test

        rows = []
        for fam, rank in _ALL_TYPES:
            t = SimpleType(fam, rank)
            failing = [i for i in range(1, rank + 1) if not single_root_test(t, i)]
            rows.append([fam, rank, " ".join(map(str, failing))])
        out["failing_single_roots.csv"] = _csv_text(
            ["family", "rank", "failing_roots"], rows
        )
        out["failing_single_roots.md"] = _md_text(
            ["family", "rank", "failing_roots"], rows
        )

        zero = [[_subset_cell(s)] for s in enumerate_index_zero(SimpleType("E", 6))]
        out["index_zero_e6.csv"] = _csv_text(["subset"], zero)
        out["index_zero_e6.md"] = _md_text(["subset"], zero)

        targets = [("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8), ("D", 6)]
    else:
        targets = selection
    header = ["subset", "index", "torus_dim"]
    for fam, rank in targets:
        rows = _non_qr_rows(fam, rank, workers)
        name = f"non_qr_{fam.lower()}{rank}"
        out[f"{name}.csv"] = _csv_text(header, rows)
        out[f"{name}.md"] = _md_text(header, rows)
    return out


def _golden_dir_files() -> dict[str, str]:
    files = {}
    base = resources.files("quasired").joinpath("data/golden")
    if base.is_dir():
        for entry in base.iterdir():
            if entry.is_file():
                files[entry.name] = entry.read_text()
    return files


def cmd_tables(
    selection: list[tuple[str, int]] | None, outdir: str, workers: int
) -> tuple[int, str]:
    tables = generate_tables(selection, workers)
    golden = _golden_dir_files()
    outpath = Path(outdir)
    outpath.mkdir(parents=True, exist_ok=True)
    lines = []
    status = 0
    for name in sorted(tables):
        (outpath / name).write_text(tables[name])
        if name in golden:
            if golden[name] == tables[name]:
                lines.append(f"{name}: MATCH")
            else:
                lines.append(f"{name}: MISMATCH against vendored copy")
                status = 1
        else:
            lines.append(f"{name}: written (no vendored copy)")
    lines.append(f"output directory: {outpath}")
    return status, "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quasired",
        description="Exact computations with cascades, seaweed subalgebras and "
        "quasi-reductivity of parabolic subalgebras of simple Lie algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_type_args(sp):
        sp.add_argument("family", choices=list("ABCDEFG"))
        sp.add_argument("rank", type=int)
        sp.add_argument("--json", action="store_true", help="machine readable output")

    sp = sub.add_parser("cascade", help="print the cascade of a subset")
    add_type_args(sp)
    sp.add_argument("--pi", default=None, help="comma separated root indices; default full")

    sp = sub.add_parser("index", help="index of a standard biparabolic")
    add_type_args(sp)
    sp.add_argument("--pi1", default=None, help="first subset; default empty")
    sp.add_argument("--pi2", default=None, help="second subset; default full")

    sp = sub.add_parser("classify", help="quasi-reductivity verdict for a parabolic")
    add_type_args(sp)
    sp.add_argument("--pi", default=None, help="subset of simple roots; default empty")

    sp = sub.add_parser("verify", help="search for a torus certificate")
    add_type_args(sp)
    sp.add_argument("--pi1", default=None, help="first subset; default empty")
    sp.add_argument("--pi2", default=None, help="second subset; default full")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--store", default=None, help="write the certificate to a file")

    sp = sub.add_parser("tables", help="regenerate reference tables and diff goldens")
    sp.add_argument("family", nargs="?", choices=list("ABCDEFG"))
    sp.add_argument("rank", nargs="?", type=int)
    sp.add_argument(
        "--out",
        default=None,
        help="output directory (default $QUASIRED_TABLES_DIR or ./quasired_tables)",
    )
    sp.add_argument("--workers", type=int, default=1, help="parallel classification")
    return p


def run(argv=None) -> tuple[int, str]:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "tables":
            if (args.family is None) != (args.rank is None):
                raise SystemExit2("tables needs both family and rank, or neither")
            selection = None
            if args.family is not None:
                SimpleType(args.family, args.rank)
                selection = [(args.family, args.rank)]
            outdir = args.out or os.environ.get(
                "QUASIRED_TABLES_DIR", "quasired_tables"
            )
            return cmd_tables(selection, outdir, args.workers)
        stype = SimpleType(args.family, args.rank)
        if args.command == "cascade":
            pi = _parse_subset(args.pi, stype.rank, default_full=True)
            q = QuerySpec(stype.family, stype.rank, pi, frozenset())
            return cmd_cascade(q, args.json)
        if args.command == "index":
            pi1 = _parse_subset(args.pi1, stype.rank, default_full=False)
            pi2 = _parse_subset(args.pi2, stype.rank, default_full=True)
            q = QuerySpec(stype.family, stype.rank, pi1, pi2)
            return cmd_index(q, args.json)
        if args.command == "classify":
            pi = _parse_subset(args.pi, stype.rank, default_full=False)
            q = QuerySpec(stype.family, stype.rank, pi, frozenset())
            return cmd_classify(q, args.json)
        if args.command == "verify":
            pi1 = _parse_subset(args.pi1, stype.rank, default_full=False)
            pi2 = _parse_subset(args.pi2, stype.rank, default_full=True)
            q = QuerySpec(
                stype.family, stype.rank, pi1, pi2, seed=args.seed, trials=args.trials
            )
            return cmd_verify(q, args.json, args.store)
        raise SystemExit2(f"unknown command {args.command}")
    except (SystemExit2, ValueError) as exc:
        return USAGE_ERROR, f"error: {exc}"


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == USAGE_ERROR else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
