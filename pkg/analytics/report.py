"""
Quantum-Torus Orbifold Calculator – Report Emitter
Builds the run record and renders it as JSON, CSV or text.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from typing import Dict, List, Optional, Sequence

from algebra.groups import FiniteSubgroup
from cohomology.engine import CohomologyReport, OrbifoldTable
from cohomology.poisson import PoissonTable
from config.run_config import RunConfig
from config.settings import OUTPUT_FORMATS, REFERENCE_HH_TABLE, REPORT_RULE

logger = logging.getLogger("report")


def _sector_record(report: CohomologyReport) -> dict:
    certificate = report.certificate.to_json() if report.certificate is not None else None
    fixed = None
    if report.degree == 2 and not report.sector.is_identity():
        fixed = report.sector.fixed_point_count()
    return {
        "power": report.power,
        "degree": report.degree,
        "window_dims": [[n, d] for n, d in report.window_dims],
        "stable": report.stable,
        "raw_dim": report.raw_dim,
        "invariant_dim": report.invariant_dim,
        "representatives": [rep.to_json() for rep in report.representatives],
        "sector": report.sector.to_json(),
        "labels": [list(label) for label in report.labels],
        "fixed_points": fixed,
        "certificate": certificate,
    }


def build_record(
    config: RunConfig,
    group: FiniteSubgroup,
    table: OrbifoldTable,
    poisson: Optional[PoissonTable] = None,
    digests: Sequence[str] = (),
) -> Dict:
    """The run record with a fixed field order."""
    reference = REFERENCE_HH_TABLE[group.label]
    record = {
        "group": group.label,
        "generator": group.generator.to_json(),
        "theta_mode": config.theta_mode,
        "sectors": [_sector_record(r) for r in table.sectors],
        "totals": dict(table.totals),
        "paper_comparison": {
            "expected": {k: reference[k] for k in table.totals if k in reference},
            "computed": dict(table.totals),
            "match": dict(table.match),
            "stable": table.stable,
        },
        "poisson": {},
        "witness_digests": list(digests),
    }
    if poisson is not None:
        record["poisson"] = {
            "structures": list(poisson.structures),
            "table": dict(poisson.rows),
            "expected": dict(poisson.expected),
            "match": dict(poisson.match),
        }
    return record


# ─── renderers ──────────────────────────────

def to_json(record: Dict) -> str:
    return json.dumps(record, indent=2, ensure_ascii=False) + "\n"


def to_csv(record: Dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["group", "power", "degree", "raw_dim", "invariant_dim", "stable", "window_dims"])
    for s in record["sectors"]:
        dims = " ".join(f"{n}:{d}" for n, d in s["window_dims"])
        writer.writerow([record["group"], s["power"], s["degree"], s["raw_dim"], s["invariant_dim"], s["stable"], dims])
    writer.writerow([])
    writer.writerow(["group", "quantity", "computed", "expected", "match"])
    comparison = record["paper_comparison"]
    for key, value in record["totals"].items():
        writer.writerow([record["group"], key, value, comparison["expected"].get(key), comparison["match"].get(key)])
    poisson = record["poisson"]
    for key, value in poisson.get("table", {}).items():
        writer.writerow([record["group"], f"poisson_{key}", value, poisson["expected"].get(key), poisson["match"].get(key)])
    return out.getvalue()


def to_text(record: Dict) -> str:
    comparison = record["paper_comparison"]
    lines = [
        REPORT_RULE,
        f" Orbifold cohomology of A_theta x| {record['group']}",
        REPORT_RULE,
        f"  Generator          : {record['generator']}",
        f"  Mode               : {record['theta_mode']}",
    ]
    for s in record["sectors"]:
        inv = "-" if s["invariant_dim"] is None else s["invariant_dim"]
        flag = "" if s["stable"] else "  (unstable)"
        lines.append(f"  g^{s['power']} HH^{s['degree']:<14}: raw {s['raw_dim']}  invariant {inv}{flag}")
    lines.append(REPORT_RULE)
    for key, value in record["totals"].items():
        expected = comparison["expected"].get(key)
        mark = "✅" if comparison["match"].get(key) else "❌"
        lines.append(f"  {key.upper():<19}: {value} (expected {expected}) {mark}")
    for key, value in record["poisson"].get("table", {}).items():
        expected = record["poisson"]["expected"].get(key)
        mark = "✅" if record["poisson"]["match"].get(key) else "❌"
        lines.append(f"  Poisson {key.upper():<11}: {value} (expected {expected}) {mark}")
    if record["witness_digests"]:
        lines.append(f"  Witnesses          : {len(record['witness_digests'])}")
    lines.append(REPORT_RULE)
    return "\n".join(lines) + "\n"


_RENDERERS = {"json": to_json, "csv": to_csv, "text": to_text}


def emit_report(record: Dict, output_format: str = "json", path: Optional[str] = None) -> str:
    """Render the record; write it to ``path`` when given. OSError propagates."""
    if not record.get("sectors"):
        raise ValueError("report has no sectors")
    if output_format not in OUTPUT_FORMATS:
        raise ValueError(f"format must be one of {OUTPUT_FORMATS}")
    text = _RENDERERS[output_format](record)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        logger.info("wrote %s report to %s", output_format, path)
    return text


def summary_lines(records: List[Dict]) -> List[str]:
    """One line per group: degree totals next to the reference values."""
    lines = []
    for record in records:
        comparison = record["paper_comparison"]
        cells = [f"{k}={v}/{comparison['expected'].get(k)}" for k, v in record["totals"].items()]
        poisson = record["poisson"].get("table")
        if poisson:
            cells.append("poisson " + " ".join(f"{k}={v}" for k, v in poisson.items()))
        lines.append(f"  {record['group']:<4} " + "  ".join(cells))
    return lines
