"""Command-line interface.

    cozero spectrum N [--method structural|oracle|closed_form|all]
    cozero reduced N [--format text|json|dot]
    cozero graph N [--format text|json|dot]
    cozero verify --from A --to B

Exit codes: 0 ok, 1 usage or compute error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .eigen import EigensolverError
from .families import DegenerateParameterError, UnsupportedFamilyError
from .graph import build_graph, connectivity_report, oracle_spectrum
from .lattice import enumerate_ideals, reduced_graph, table_check
from .multiset import SpectrumMultiset
from .ring import EnumerationCapError, RingContext, default_max_n
from .spectrum import JoinInstance, closed_form_spectrum, compare_any, join_spectrum

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2

METHODS = ("structural", "oracle", "closed_form")
FORMATS = ("text", "json", "csv", "dot")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int
    method: str = "oracle"
    tol: float = 1e-8
    max_n: int = 256
    output_format: str = "text"
    output_path: str | None = None

    def __post_init__(self):
        if self.n < 2:
            raise UsageError(f"n must be at least 2, got {self.n}")
        if self.n > self.max_n:
            raise EnumerationCapError(
                f"n={self.n} exceeds the enumeration cap of {self.max_n} "
                "(raise it with --max-n or COZERO_MAX_N)"
            )
        if not self.tol > 0:
            raise UsageError(f"tol must be positive, got {self.tol}")
        if self.method not in METHODS + ("all",):
            raise UsageError(f"unknown method {self.method!r}")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")


# ---------------------------------------------------------------------------
# spectrum


@dataclass
class _Computed:
    ctx: RingContext
    vertex_count: int
    edge_count: int
    spectra: dict[str, SpectrumMultiset]
    refused: dict[str, str]  # method -> reason


def _compute(cfg: RunConfig) -> _Computed:
    ctx = RingContext(cfg.n)
    methods = METHODS if cfg.method == "all" else (cfg.method,)
    spectra: dict[str, SpectrumMultiset] = {}
    refused: dict[str, str] = {}

    lattice = enumerate_ideals(ctx, cfg.max_n)
    inst = JoinInstance.from_lattice(lattice, cfg.tol)
    # every vertex of class i has degree D_i
    edge_count = int(inst.weights @ inst.D) // 2

    for m in methods:
        if m == "structural":
            spectra[m] = join_spectrum(inst, cfg.tol)
        elif m == "oracle":
            g = build_graph(ctx, cfg.max_n)
            spectra[m] = oracle_spectrum(g, cfg.tol)
        else:
            try:
                spectra[m] = closed_form_spectrum(ctx, cfg.tol)
            except (UnsupportedFamilyError, DegenerateParameterError) as exc:
                if cfg.method != "all":
                    raise
                refused[m] = str(exc)
    return _Computed(ctx, ctx.vertex_count(), edge_count, spectra, refused)


def _comparisons(c: _Computed, tol: float) -> dict[str, dict]:
    """Every other method against the oracle."""
    ref = c.spectra.get("oracle")
    out = {}
    if ref is None:
        return out
    for m, s in c.spectra.items():
        if m == "oracle":
            continue
        rep = compare_any(s, ref, max(s.tol, ref.tol))
        out[m] = {
            "match": rep.match,
            "dimension": list(rep.dimension),
            "max_deviation": rep.max_deviation if np.isfinite(rep.max_deviation) else None,
            "summary": rep.summary(),
        }
    return out


def _spectrum_json(cfg: RunConfig, c: _Computed) -> str:
    primary = "oracle" if cfg.method == "all" else cfg.method
    s = c.spectra[primary]
    doc = {
        "n": cfg.n,
        "method": cfg.method,
        "vertex_count": c.vertex_count,
        "edge_count": c.edge_count,
        "tol": cfg.tol,
        "cluster_tol": s.tol,
        "eigenvalues": s.to_records(),
    }
    if cfg.method == "all":
        doc["spectra"] = {
            m: {"cluster_tol": x.tol, "eigenvalues": x.to_records()} for m, x in c.spectra.items()
        }
        doc["refused"] = c.refused
        doc["comparisons"] = _comparisons(c, cfg.tol)
    return json.dumps(doc, indent=2) + "\n"


def _spectrum_text(cfg: RunConfig, c: _Computed) -> str:
    lines = [f"n={cfg.n} vertices={c.vertex_count} edges={c.edge_count}"]
    for m, s in c.spectra.items():
        lines.append(f"{m}: {s}")
    for m, reason in c.refused.items():
        lines.append(f"{m}: refused ({reason})")
    for m, rep in _comparisons(c, cfg.tol).items():
        lines.append(f"{m} vs oracle: {rep['summary']}")
    return "\n".join(lines) + "\n"


def _spectrum_csv(cfg: RunConfig, c: _Computed) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["method", "value", "rounded", "multiplicity"])
    for m, s in c.spectra.items():
        for r in s.to_records():
            w.writerow([m, repr(r["value"]), "" if r["rounded"] is None else r["rounded"], r["multiplicity"]])
    return buf.getvalue()


def cmd_spectrum(cfg: RunConfig) -> tuple[int, str]:
    if cfg.output_format == "dot":
        raise UsageError("spectrum has no DOT rendering; use text, json or csv")
    c = _compute(cfg)
    render = {"text": _spectrum_text, "json": _spectrum_json, "csv": _spectrum_csv}
    out = render[cfg.output_format](cfg, c)
    comps = _comparisons(c, cfg.tol)
    code = EXIT_OK if all(r["match"] for r in comps.values()) else EXIT_MISMATCH
    return code, out


# ---------------------------------------------------------------------------
# reduced graph and full graph export


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cmd_reduced(cfg: RunConfig) -> tuple[int, str]:
    lattice = enumerate_ideals(RingContext(cfg.n), cfg.max_n)
    rg = reduced_graph(lattice)
    # records are already ordered by canonical generator
    names = [str(g) for g in rg.generators]
    degrees = rg.degrees()
    fmt = cfg.output_format
    if fmt == "dot":
        lines = [f"graph reduced_{cfg.n} {{"]
        for name, label, w in zip(names, rg.labels, rg.weights):
            lines.append(f"  {_dot_quote(name)} [label={_dot_quote(f'{label} ({w})')}, weight={w}];")
        for i, j in rg.edges:
            lines.append(f"  {_dot_quote(names[i])} -- {_dot_quote(names[j])};")
        lines.append("}")
        return EXIT_OK, "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "n": cfg.n,
            "family": None if lattice.family is None else str(lattice.family),
            "vertices": [
                {"label": lab, "generator": name, "weight": int(w), "degree": int(d)}
                for lab, name, w, d in zip(rg.labels, names, rg.weights, degrees)
            ],
            "edges": [[names[i], names[j]] for i, j in rg.edges],
        }
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "generator", "weight", "reduced_degree"])
        for row in zip(rg.labels, names, rg.weights, degrees):
            w.writerow([row[0], row[1], int(row[2]), int(row[3])])
        return EXIT_OK, buf.getvalue()
    lines = [f"n={cfg.n} ideals={len(names)} edges={len(rg.edges)}"]
    for lab, name, w, d in zip(rg.labels, names, rg.weights, degrees):
        lines.append(f"{lab}\t<{name}>\tweight={w}\tdegree={d}")
    for i, j in rg.edges:
        lines.append(f"{rg.labels[i]} -- {rg.labels[j]}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_graph(cfg: RunConfig) -> tuple[int, str]:
    g = build_graph(RingContext(cfg.n), cfg.max_n)
    names = [str(v) for v in g.vertices]
    i_idx, j_idx = np.nonzero(np.triu(g.adjacency, 1))
    conn = connectivity_report(g)
    fmt = cfg.output_format
    if fmt == "dot":
        lines = [f"graph cozero_{cfg.n} {{"]
        lines += [f"  {_dot_quote(v)};" for v in names]
        lines += [f"  {_dot_quote(names[i])} -- {_dot_quote(names[j])};" for i, j in zip(i_idx, j_idx)]
        lines.append("}")
        return EXIT_OK, "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "n": cfg.n,
            "vertex_count": len(names),
            "edge_count": g.edge_count,
            "components": conn.component_count,
            "isolated": [str(v) for v in conn.isolated_vertices],
            "vertices": names,
            "edges": [[names[i], names[j]] for i, j in zip(i_idx, j_idx)],
        }
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v"])
        w.writerows([names[i], names[j]] for i, j in zip(i_idx, j_idx))
        return EXIT_OK, buf.getvalue()
    iso = ", ".join(str(v) for v in conn.isolated_vertices) or "none"
    text = (
        f"n={cfg.n} vertices={len(names)} edges={g.edge_count}\n"
        f"components={conn.component_count} isolated: {iso}\n"
    )
    return EXIT_OK, text


# ---------------------------------------------------------------------------
# verify sweep

VERIFY_COLUMNS = [
    "n",
    "vertex_count",
    "edge_count",
    "match",
    "max_eig_dev",
    "components",
    "connectivity",
    "prime_power",
    "table_check",
    "degree_mismatches",
    "closed_form",
    "pass",
]


def verify_row(n: int, tol: float = 1e-8, max_n: int | None = None) -> dict:
    """Cross-check one modulus: structural vs oracle, connectivity, tables."""
    ctx = RingContext(n)
    lattice = enumerate_ideals(ctx, max_n)
    structural = join_spectrum(JoinInstance.from_lattice(lattice, tol), tol)
    g = build_graph(ctx, max_n)
    oracle = oracle_spectrum(g, tol)
    rep = compare_any(structural, oracle, oracle.tol)
    conn = connectivity_report(g)

    isolated_classes = sorted({lattice.class_index[v.index(n)] for v in conn.isolated_vertices})
    if conn.connected:
        connectivity = "connected"
    else:
        names = ";".join(lattice.ideals[k].name.replace("<", "⟨").replace(">", "⟩") for k in isolated_classes)
        connectivity = f"disconnected, isolated={names or 'none'}"

    conn_ok = conn.connected != ctx.is_prime_power
    if ctx.is_prime_power:
        p, k = ctx.factorization[0]
        target = ctx.element(p ** (k - 1), 0)
        expected = {int(i) for i in lattice.ideals[lattice.class_index[target.index(n)]].generators}
        got = {v.index(n) for v in conn.isolated_vertices}
        conn_ok = conn_ok and got == expected

    if lattice.family is None:
        table, degree_note = "n_a", ""
        closed = "n_a"
    else:
        tc = table_check(lattice)
        table = "pass" if tc.cardinalities_ok else "fail"
        degree_note = ";".join(f"{r.label}:{r.expected_degree}->{r.degree}" for r in tc.degree_mismatches)
        try:
            cf = closed_form_spectrum(ctx, tol)
            closed = "match" if compare_any(cf, oracle, oracle.tol).match else "mismatch"
        except DegenerateParameterError:
            closed = "refused"

    ok = rep.match and conn_ok and table != "fail"
    return {
        "n": n,
        "vertex_count": len(g),
        "edge_count": g.edge_count,
        "match": rep.match,
        "max_eig_dev": "inf" if not np.isfinite(rep.max_deviation) else f"{rep.max_deviation:.3e}",
        "components": conn.component_count,
        "connectivity": connectivity,
        "prime_power": ctx.is_prime_power,
        "table_check": table,
        "degree_mismatches": degree_note,
        "closed_form": closed,
        "pass": ok,
    }


def cmd_verify(lo: int, hi: int, tol: float, max_n: int, output_format: str) -> tuple[int, str]:
    if lo < 2 or hi < lo:
        raise UsageError(f"need 2 <= --from <= --to, got {lo}..{hi}")
    if hi > max_n:
        raise EnumerationCapError(f"--to {hi} exceeds the enumeration cap of {max_n}")
    rows = []
    for n in range(lo, hi + 1):
        try:
            rows.append(verify_row(n, tol, max_n))
        except EigensolverError as exc:  # collected, not fail-fast
            rows.append({"n": n, "connectivity": f"error: {exc}", "pass": False})
    code = EXIT_OK if all(r["pass"] for r in rows) else EXIT_MISMATCH
    if output_format == "json":
        return code, json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, VERIFY_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return code, buf.getvalue()


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8, help="eigenvalue tolerance (default 1e-8)")
    common.add_argument("--max-n", type=int, default=None, help="enumeration cap (default $COZERO_MAX_N or 256)")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")

    parser = _Parser(prog="cozero", description="Cozero-divisor graphs of Z_n[x]/(x^2).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="Laplacian spectrum of the graph")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=METHODS + ("all",), default="oracle")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("reduced", parents=[common], help="reduced ideal graph")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("text", "json", "csv", "dot"), default="text")

    p = sub.add_parser("graph", parents=[common], help="full graph export")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("text", "json", "csv", "dot"), default="text")

    p = sub.add_parser("verify", parents=[common], help="cross-check a range of moduli")
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def run(argv=None) -> tuple[int, str, str]:
    """Parse and execute; returns (exit code, stdout text, stderr text)."""
    args = build_parser().parse_args(argv)
    try:
        max_n = default_max_n() if args.max_n is None else args.max_n
        if args.command == "verify":
            code, out = cmd_verify(args.lo, args.hi, args.tol, max_n, args.format)
        else:
            cfg = RunConfig(
                n=args.n,
                method=getattr(args, "method", "oracle"),
                tol=args.tol,
                max_n=max_n,
                output_format=args.format,
                output_path=args.output,
            )
            handler = {"spectrum": cmd_spectrum, "reduced": cmd_reduced, "graph": cmd_graph}
            code, out = handler[args.command](cfg)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
            out = ""
    # usage, cap, family and parameter errors are all ValueErrors
    except (ValueError, EigensolverError, OSError) as exc:
        return EXIT_ERROR, "", f"cozero: error: {exc}\n"
    return code, out, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
