"""
Report Manager for verification results

This module serializes and writes everything a run produces:
- Bound reports (certification, extremal attainment, discrepancy ledger)
- Sampling statistics per (class, functional)
- Coefficient expansions of a single class member
- JSON with canonical key order, CSV and Markdown renderings
- Rationals always as "p/q" strings
"""

import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config import (OUTPUT_FORMATS, CSV_REPORT_HEADER, TRIAL_CSV_HEADER,
                    EXPANSION_CSV_HEADER, FLOAT_REPORT_DIGITS)
from systems.harness import (BoundReport, TrialStats, STATUS_PASS, STATUS_REFUTED,
                             STATUS_FAIL, STATUS_INFO)
from utils.errors import UsageError
from utils.rationals import format_rational, format_scalar

logger = logging.getLogger(__name__)


def to_json_value(value: Any) -> Any:
    """Lossless JSON form: rationals and complex values become strings"""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, complex):
        return format_scalar(value, FLOAT_REPORT_DIGITS)
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if hasattr(value, "as_tuple"):
        return [to_json_value(v) for v in value.as_tuple()]
    return float(value)


def to_cell(value: Any) -> str:
    """Text form for CSV and Markdown cells"""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(to_cell(v) for v in value) + ")"
    if hasattr(value, "as_tuple"):
        return to_cell(value.as_tuple())
    return format_scalar(value, FLOAT_REPORT_DIGITS)


def _status_counts(statuses: Sequence[str], keys: Sequence[str]) -> Dict[str, int]:
    return {key: sum(1 for s in statuses if s == key) for key in keys}


class ReportManager:
    """Renders run results in one output format and writes them"""

    def __init__(self, output_format: str = "json"):
        if output_format not in OUTPUT_FORMATS:
            raise UsageError(f"unknown output format {output_format!r}",
                             example="--output " + "|".join(OUTPUT_FORMATS))
        self.output_format = output_format
        logger.debug(f"Report Manager initialized: {output_format}")

    # ------------------------------------------------------------------
    # bound reports

    def bound_report_dict(self, reports: Sequence[BoundReport]) -> Dict[str, Any]:
        rows = []
        for report in reports:
            row = {
                "id": report.id,
                "claimed": to_json_value(report.claimed),
                "computed": to_json_value(report.computed),
                "gap": to_json_value(report.gap),
                "status": report.status,
                "group": report.group,
            }
            if report.published_value is not None:
                row["published_value"] = to_json_value(report.published_value)
            if report.witness is not None:
                row["witness"] = to_json_value(report.witness)
            if report.note:
                row["note"] = report.note
            if report.class_id is not None:
                row["class"] = report.class_id.value
            if report.functional:
                row["functional"] = report.functional
            if report.extremal:
                row["extremal"] = report.extremal
            if report.sharp_value is not None:
                row["sharp_value"] = to_json_value(report.sharp_value)
            rows.append(row)
        summary = _status_counts([r.status for r in reports],
                                 [STATUS_PASS, STATUS_REFUTED, STATUS_FAIL])
        return {"reports": rows, "summary": summary}

    def render_bound_reports(self, reports: Sequence[BoundReport]) -> str:
        if self.output_format == "json":
            return self._json(self.bound_report_dict(reports))
        if self.output_format == "csv":
            return self._csv(CSV_REPORT_HEADER,
                             [[r.id, to_cell(r.claimed), to_cell(r.computed), to_cell(r.gap),
                               r.status] for r in reports])

        lines = []
        for group in self._groups(reports):
            lines.append(f"## {group or 'reports'}")
            lines.append("")
            lines.append("| functional | class | sharp value | computed | extremal function "
                         "| gap | status | id | note |")
            lines.append("|---|---|---|---|---|---|---|---|---|")
            for r in reports:
                if r.group != group:
                    continue
                sharp = r.sharp_value if r.sharp_value is not None else r.claimed
                cells = [r.functional or r.id, r.class_id.value if r.class_id else "",
                         to_cell(sharp), to_cell(r.computed), r.extremal, to_cell(r.gap),
                         r.status, r.id, r.note]
                lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
            lines.append("")
        counts = self.bound_report_dict(reports)["summary"]
        lines.append(", ".join(f"{key}: {count}" for key, count in counts.items()))
        return "\n".join(lines) + "\n"

    @staticmethod
    def _groups(reports: Sequence[BoundReport]) -> List[str]:
        groups = []
        for report in reports:
            if report.group not in groups:
                groups.append(report.group)
        return groups

    # ------------------------------------------------------------------
    # trial statistics

    def trial_stats_dict(self, stats: Sequence[TrialStats]) -> Dict[str, Any]:
        rows = []
        for entry in stats:
            row = {
                "class": entry.class_id.value,
                "functional": entry.functional,
                "trials": entry.trials,
                "max_abs": to_json_value(entry.max_abs),
                "argmax_index": entry.argmax_index,
                "argmax_input": to_json_value(entry.argmax_input),
                "bound": to_json_value(entry.bound),
                "violations": entry.violations,
                "gap_to_bound": to_json_value(entry.gap_to_bound),
                "status": entry.status,
            }
            if entry.lower is not None:
                row["lower"] = to_json_value(entry.lower)
                row["min_value"] = to_json_value(entry.min_value)
                row["max_value"] = to_json_value(entry.max_value)
            if entry.published_bound is not None:
                row["published_bound"] = to_json_value(entry.published_bound)
                row["published_exceedances"] = entry.published_exceedances
            if entry.max_residual is not None:
                row["max_residual"] = to_json_value(entry.max_residual)
                row["max_residual_input"] = to_json_value(entry.max_residual_input)
            if entry.extremal:
                row["extremal"] = entry.extremal
            rows.append(row)
        summary = _status_counts([s.status for s in stats],
                                 [STATUS_PASS, STATUS_FAIL, STATUS_INFO])
        return {"stats": rows, "summary": summary}

    def render_trial_stats(self, stats: Sequence[TrialStats]) -> str:
        if self.output_format == "json":
            return self._json(self.trial_stats_dict(stats))
        rows = [[s.class_id.value, s.functional, str(s.trials), to_cell(s.max_abs),
                 self._bound_cell(s), str(s.violations), to_cell(s.gap_to_bound), s.status,
                 s.extremal]
                for s in stats]
        if self.output_format == "csv":
            return self._csv(TRIAL_CSV_HEADER, rows)

        lines = []
        for class_name in dict.fromkeys(s.class_id.value for s in stats):
            lines.append(f"## {class_name}")
            lines.append("")
            lines.append("| functional | class | sharp value | max abs | extremal function "
                         "| trials | violations | status |")
            lines.append("|---|---|---|---|---|---|---|---|")
            for s, row in zip(stats, rows):
                if s.class_id.value == class_name:
                    lines.append(f"| {s.functional} | {class_name} | {row[4]} | {row[3]} | "
                                 f"{s.extremal} | {s.trials} | {s.violations} | {s.status} |")
            lines.append("")
        return "\n".join(lines)

    @staticmethod
    def _bound_cell(stats: TrialStats) -> str:
        if stats.lower is None:
            return format_rational(stats.bound)
        return f"[{format_rational(stats.lower)}, {format_rational(stats.bound)}]"

    # ------------------------------------------------------------------
    # expansions

    def render_expansion(self, header: Dict[str, str],
                         sections: Sequence[Tuple[str, Sequence[Tuple[str, Any]]]]) -> str:
        """header: run identification; sections: (title, [(quantity, value), ...])"""
        if self.output_format == "json":
            document = dict(header)
            for title, rows in sections:
                document[title] = {name: to_json_value(value) for name, value in rows}
            return self._json(document)
        if self.output_format == "csv":
            return self._csv(EXPANSION_CSV_HEADER,
                             [[name, to_cell(value)] for _, rows in sections
                              for name, value in rows])

        lines = [" ".join(f"{k}={v}" for k, v in header.items()), ""]
        for title, rows in sections:
            lines.append(f"## {title}")
            lines.append("")
            lines.append("| quantity | value |")
            lines.append("|---|---|")
            for name, value in rows:
                lines.append(f"| {name} | {to_cell(value)} |")
            lines.append("")
        return "\n".join(lines)

    # ------------------------------------------------------------------
    # formats and output

    @staticmethod
    def _json(document: Dict[str, Any]) -> str:
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    @staticmethod
    def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()

    def write(self, text: str, out_path: Optional[str] = None) -> bool:
        """Write a rendered report to a file, or to stdout when no path is given"""
        try:
            if out_path is None:
                sys.stdout.write(text)
                sys.stdout.flush()
                return True

            path = Path(out_path)
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            logger.info(f"Report written: {path}")
            return True

        except Exception as e:
            logger.error(f"Failed to write report: {e}")
            return False
