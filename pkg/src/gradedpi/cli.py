"""Command-line workflow: validate, exponent, codim, gsimple, omega, regev,
witness, and the full report pipeline.

All outputs are deterministic: JSON is emitted with sorted keys, CSV rows in
a fixed order, and floating-point display values at fixed precision, so runs
are byte-identical across repetitions and worker counts.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys

from .algebra import ValidationError
from .bsz import basis_partition, verify_basis_partition
from .codim import (
    DEFAULT_N_CEILING,
    CodimTable,
    build_table,
    check_sandwich,
    exponent_trend,
)
from .cyclo import StructureError
from .exponent import chain_witness_report, graded_exponent
from .groups import GroupElement
from .polynomials import CeilingExceeded, regev_polynomial
from .specfile import LoadedAlgebra, SpecError, emit_structure_spec, load_spec


def _spec_sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _fmt_float(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


def _algebra_summary(loaded: LoadedAlgebra) -> dict:
    a = loaded.algebra
    out = {
        "dim": a.dim,
        "group_orders": list(a.group.orders),
        "conductor": a.conductor,
        "labels": list(a.labels),
        "homogeneous_dims": list(a.homogeneous_dims()),
    }
    if loaded.wedderburn is not None:
        w = loaded.wedderburn
        out["wedderburn"] = {
            "blocks": [[a.labels[i] for i in b] for b in w.blocks],
            "radical": [a.labels[i] for i in w.radical],
            "nilpotency": w.nilpotency,
        }
    return out


def _cmd_validate(args) -> int:
    loaded = load_spec(args.spec)
    _emit_json(
        {
            "command": "validate",
            "spec_sha256": _spec_sha256(args.spec),
            "ok": True,
            "algebra": _algebra_summary(loaded),
        }
    )
    return 0


def _exponent_payload(loaded: LoadedAlgebra) -> dict:
    a = loaded.algebra
    if loaded.wedderburn is None:
        raise ValidationError(
            "exponent needs a block/radical decomposition in the spec file"
        )
    d, witness = graded_exponent(a, loaded.wedderburn)
    payload = {"d": d, "witness": None}
    if witness is not None:
        payload["witness"] = {
            "chain": [i + 1 for i in witness.chain],
            "elements": [a.labels[i] for i in witness.element_indices],
            "product": {a.labels[i]: lit for i, lit in witness.product},
            "dimension": witness.dimension,
        }
    return payload


def _cmd_exponent(args) -> int:
    loaded = load_spec(args.spec)
    payload = _exponent_payload(loaded)
    payload.update({"command": "exponent", "spec_sha256": _spec_sha256(args.spec)})
    _emit_json(payload)
    return 0


def _comp_str(comp) -> str:
    return "|".join(str(c) for c in comp)


def _codim_csv(table: CodimTable, d: int | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "n",
            "composition",
            "c_component",
            "multinomial",
            "contribution",
            "c_n_G",
            "c_n_ordinary",
            "nth_root",
        ]
    )
    from .codim import multinomial as multi

    for row in table.rows:
        root = row.graded ** (1.0 / row.n) if row.graded else 0.0
        for comp in sorted(row.components):
            c = row.components[comp]
            m = multi(row.n, comp)
            writer.writerow(
                [
                    row.n,
                    _comp_str(comp),
                    c,
                    m,
                    m * c,
                    row.graded,
                    "" if row.ordinary is None else row.ordinary,
                    _fmt_float(root),
                ]
            )
    return buf.getvalue()


def _table_payload(table: CodimTable) -> list[dict]:
    return [
        {
            "n": row.n,
            "components": {_comp_str(c): v for c, v in sorted(row.components.items())},
            "graded": row.graded,
            "ordinary": row.ordinary,
        }
        for row in table.rows
    ]


def _cmd_codim(args) -> int:
    loaded = load_spec(args.spec)
    table = build_table(
        loaded.algebra,
        args.max_n,
        include_ordinary=args.ordinary,
        workers=args.workers,
        ceiling_n=args.ceiling,
    )
    if args.json:
        _emit_json(
            {
                "command": "codim",
                "spec_sha256": _spec_sha256(args.spec),
                "rows": _table_payload(table),
            }
        )
    else:
        sys.stdout.write(_codim_csv(table, None))
    return 0


def _cmd_gsimple(args) -> int:
    loaded = load_spec(args.spec)
    if loaded.construction is None:
        raise ValidationError("gsimple needs a spec file with a bsz block")
    if args.emit:
        sys.stdout.write(emit_structure_spec(loaded))
        return 0
    c = loaded.construction
    _emit_json(
        {
            "command": "gsimple",
            "spec_sha256": _spec_sha256(args.spec),
            "algebra": _algebra_summary(loaded),
            "matrix_rank": c.matrix_rank,
            "num_slices": c.num_slices,
            "radical_subgroup": [list(n.exponents) for n in c.radical_subgroup.members],
        }
    )
    return 0


def _cmd_omega(args) -> int:
    loaded = load_spec(args.spec)
    if loaded.construction is None:
        raise ValidationError("omega needs a spec file with a bsz block")
    c = loaded.construction
    partition = basis_partition(c)
    verify_basis_partition(c, partition)
    _emit_json(
        {
            "command": "omega",
            "spec_sha256": _spec_sha256(args.spec),
            "num_slices": c.num_slices,
            "slice_size": c.matrix_rank**2 * c.spec.matrix_size**2,
            "slices": [
                [[list(h.exponents), i, j] for (h, i, j) in part] for part in partition
            ],
            "verified": True,
        }
    )
    return 0


def _cmd_regev(args) -> int:
    poly = regev_polynomial(args.d)
    print(poly.canonical_text())
    return 0


def _cmd_witness(args) -> int:
    loaded = load_spec(args.spec)
    if loaded.wedderburn is None:
        raise ValidationError("witness needs a block/radical decomposition")
    chain = tuple(int(x) - 1 for x in args.chain.split(","))
    report = chain_witness_report(
        loaded.algebra,
        loaded.wedderburn,
        chain,
        args.t,
        construction=loaded.construction,
    )
    a = loaded.algebra
    _emit_json(
        {
            "command": "witness",
            "spec_sha256": _spec_sha256(args.spec),
            "chain": [i + 1 for i in report["chain"]],
            "t": report["t"],
            "set_sizes": {
                f"level{level},degree{list(deg)}": size
                for (level, deg), size in sorted(report["set_sizes"].items())
            },
            "witness_elements": [a.labels[i] for i in report["witness_elements"]],
            "factor": report["factor"],
            "value": {a.labels[i]: s.literal() for i, s in sorted(report["value"].items())},
            "nonzero": report["nonzero"],
        }
    )
    return 0


def _cmd_report(args) -> int:
    loaded = load_spec(args.spec)
    a = loaded.algebra
    payload = {
        "command": "report",
        "spec_sha256": _spec_sha256(args.spec),
        "algebra": _algebra_summary(loaded),
        "exponent": None,
        "codim": None,
        "sandwich": None,
        "trend": None,
    }
    d = None
    if loaded.wedderburn is not None:
        payload["exponent"] = _exponent_payload(loaded)
        d = payload["exponent"]["d"]
    table = build_table(
        a,
        args.max_n,
        include_ordinary=True,
        workers=args.workers,
        ceiling_n=args.ceiling,
    )
    payload["codim"] = _table_payload(table)
    payload["csv"] = _codim_csv(table, d)
    payload["sandwich"] = check_sandwich(table)
    if d is not None:
        trend = exponent_trend(table, d)
        payload["trend"] = [
            {
                "n": row["n"],
                "graded": row["graded"],
                "root": _fmt_float(row["root"]),
                "ratio": _fmt_float(row["ratio"]),
                "d": row["d"],
            }
            for row in trend
        ]
    _emit_json(payload)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedpi",
        description="Exact graded codimensions, PI-exponents, and central polynomials "
        "for finite-dimensional algebras graded by finite abelian groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a spec file")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("exponent", help="graded PI-exponent with witness chain")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_exponent)

    p = sub.add_parser("codim", help="codimension table (CSV by default)")
    p.add_argument("spec")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--ordinary", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--ceiling", type=int, default=DEFAULT_N_CEILING)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_codim)

    p = sub.add_parser("gsimple", help="build a matrix-block presentation")
    p.add_argument("spec")
    p.add_argument("--emit", action="store_true", help="emit raw structure constants")
    p.set_defaults(fn=_cmd_gsimple)

    p = sub.add_parser("omega", help="basis partition of a matrix-block algebra")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_omega)

    p = sub.add_parser("regev", help="print the Regev central polynomial")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=_cmd_regev)

    p = sub.add_parser("witness", help="witness polynomial for a block chain")
    p.add_argument("spec")
    p.add_argument("--chain", required=True, help="comma-separated block numbers")
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("report", help="full pipeline: validate, exponent, codim, trend")
    p.add_argument("spec")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--ceiling", type=int, default=DEFAULT_N_CEILING)
    p.set_defaults(fn=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecError, ValidationError, StructureError, CeilingExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run_command(argv) -> int:
    """Programmatic entry point mirroring the installed console script."""
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
