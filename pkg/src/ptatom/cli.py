"""Command-line front end.

Every command builds a list of rows (dicts of strings) and renders them as an
aligned text table, CSV or JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections.abc import Sequence
from fractions import Fraction

from .hamiltonian import sector_blocks
from .integrals import INTEGRAL_TABLE, exact_value
from .spectra import (
    DataFileError,
    compare_experiment,
    describe_vector,
    gap_curves,
    ground_state_report,
    hund_counterexample_report,
    level_labels,
    level_list,
    load_experiment,
)
from .symmetry import representative_sectors

COMMANDS = ("levels", "ground-state", "sectors", "vee-matrix", "integrals", "gaps", "compare", "hund")
NEUTRAL_ATOMS = tuple(range(3, 11))
ELEMENTS = ("H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne")

EXIT_USAGE = 2
EXIT_DATA = 3

Row = dict[str, str]


def _decimal(value, places: int = 4) -> str:
    return f"{round(value.to_decimal(), places):.{places}f}"


def _levels(args: argparse.Namespace) -> list[Row]:
    levels = level_list(args.n, args.z)
    return [
        {
            "term": label,
            "degeneracy": str(lv.degeneracy),
            "energy": lv.exact_string(),
            "c": "" if lv.mixing is None else str(lv.mixing),
            "c_decimal": "" if lv.mixing is None else _decimal(lv.mixing),
            "energy_decimal": _decimal(lv.energy(args.z)),
        }
        for lv, label in zip(levels, level_labels(levels))
    ]


def _ground_state(args: argparse.Namespace) -> list[Row]:
    report = ground_state_report(args.n)
    c = report.mixing
    return [
        {
            "N": str(args.n),
            "term": str(report.term),
            "dim": str(report.degeneracy),
            "state": report.description(),
            "c": "" if c is None else str(c),
            "c_decimal": "" if c is None else _decimal(c, 7),
        }
    ]


def _sectors(args: argparse.Namespace) -> list[Row]:
    rows = []
    for s in representative_sectors(args.n):
        copies = len(s.l3zero_basis)
        rows.append(
            {
                "term": str(s.term),
                "L2": str(s.L * (s.L + 1)),
                "S2": str(s.S * (s.S + 1)),
                "parity": f"{s.parity:+d}",
                "copies": str(copies),
                "dimension": str(copies * s.term.degeneracy),
                "L3_zero_states": "; ".join(describe_vector(v) for v in s.l3zero_basis),
            }
        )
    return rows


def _vee_matrix(args: argparse.Namespace) -> list[Row]:
    rows = []
    for block in sector_blocks(args.n):
        common = {
            "term": str(block.term),
            "L2": str(block.term.L * (block.term.L + 1)),
            "S2": str(block.term.S * (block.term.S + 1)),
            "parity": f"{block.term.parity:+d}",
        }
        for i, v in enumerate(block.vectors):
            rows.append({**common, "entry": f"{i + 1}{i + 1}", "state": describe_vector(v), "vee": str(block.symbolic[i][i])})
        if block.dimension == 2:
            rows.append({**common, "entry": "cross", "state": "", "vee": str(block.symbolic[0][1])})
    return rows


def _integrals(args: argparse.Namespace) -> list[Row]:
    Z = args.z if args.z_given else Fraction(1)
    return [
        {"symbol": str(s), "value": str(exact_value(s, Z)), "decimal": f"{float(exact_value(s, Z)):.10f}"}
        for s in INTEGRAL_TABLE
    ]


def _gaps(args: argparse.Namespace) -> list[Row]:
    if args.z_values:
        zs = args.z_values
    elif args.z_given:
        zs = [args.z]
    else:
        zs = [Fraction(z) for z in range(max(args.n - 1, 1), 4 * args.n + 1)]
    return [
        {"inv_Z": str(p.inv_Z), "term": p.label, "reduced_gap": f"{p.reduced_gap:.10f}"}
        for p in gap_curves(args.n, zs)
    ]


def _compare(args: argparse.Namespace) -> list[Row]:
    records = load_experiment(args.experiment)
    rows = []
    if args.n is None:
        for n in NEUTRAL_ATOMS:
            cmp = compare_experiment(records, n, n)
            row = cmp.rows[0]
            rows.append(
                {
                    "atom": ELEMENTS[n - 1],
                    "term": str(row.term),
                    "E_PT": _decimal(row.pt_energy),
                    "E_exp": "" if row.exp_energy is None else f"{float(row.exp_energy):.4f}",
                    "error_percent": "" if row.relative_error is None else f"{row.relative_error:.1f}",
                    "inversions": "; ".join(f"{a}/{b}" for a, b in cmp.inversions),
                }
            )
        return rows
    cmp = compare_experiment(records, args.n, args.z)
    inverted = {t for pair in cmp.inversions for t in pair}
    for row in cmp.rows:
        rows.append(
            {
                "term": str(row.term),
                "E_PT": _decimal(row.pt_energy),
                "E_exp": "" if row.exp_energy is None else f"{float(row.exp_energy):.4f}",
                "error_percent": "" if row.relative_error is None else f"{row.relative_error:.1f}",
                "order": "inverted" if row.term in inverted else ("missing" if row.exp_energy is None else "ok"),
            }
        )
    return rows


def _hund(args: argparse.Namespace) -> list[Row]:
    r = hund_counterexample_report(6)
    return [
        {
            "difference": "E(3So) - E(1Do)",
            "symbolic": str(r.symbolic),
            "value": f"{r.coefficient}*Z",
            "from_levels": f"{r.from_levels}*Z",
            "sign": "negative" if r.sign < 0 else ("positive" if r.sign > 0 else "zero"),
        }
    ]


HANDLERS = {
    "levels": _levels,
    "ground-state": _ground_state,
    "sectors": _sectors,
    "vee-matrix": _vee_matrix,
    "integrals": _integrals,
    "gaps": _gaps,
    "compare": _compare,
    "hund": _hund,
}
NEEDS_N = {"levels", "ground-state", "sectors", "vee-matrix", "gaps"}


def render(rows: Sequence[Row], fmt: str) -> str:
    columns = list(rows[0]) if rows else []
    if fmt == "json":
        return json.dumps(list(rows), ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns).rstrip()]
    lines.append("  ".join("-" * widths[c] for c in columns))
    for r in rows:
        lines.append("  ".join(r[c].ljust(widths[c]) for c in columns).rstrip())
    return "\n".join(lines) + "\n"


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("nuclear charge must be positive")
    return value


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptatom",
        description="Exact large-Z energy levels of atoms with 1 to 10 electrons.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, help="number of electrons (1..10)")
    parser.add_argument("--z", type=_rational, help="nuclear charge, e.g. 6 or 13/2 (default: N)")
    parser.add_argument("--z-values", type=_rational_list, help="comma-separated charges for 'gaps'")
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--experiment", help="reference energy CSV for 'compare'")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in NEEDS_N and args.n is None:
        parser.error(f"{args.command} requires --n")
    if args.n is not None and not 1 <= args.n <= 10:
        parser.error("--n must be between 1 and 10")
    args.z_given = args.z is not None
    if args.z is None:
        args.z = Fraction(args.n) if args.n is not None else Fraction(1)
    try:
        rows = HANDLERS[args.command](args)
    except DataFileError as exc:
        print(f"ptatom: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    text = render(rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
