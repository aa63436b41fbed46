"""Handlers behind the verify, constants and transform commands."""
import csv
import io
import json
import logging
from pathlib import Path
from typing import List, Optional

from holopw.api.suites import run_verification_suite
from holopw.exceptions import ConfigError, HolopwError
from holopw.fourier.fourier import FourierSeries
from holopw.hilbert.hilbert import Transform, constants_row, transform_apply
from holopw.rootdata.rootdata import build_root_system, enumerate_dominant
from holopw.schemas.schemas import ConstantsRow, ConstantsTable, FourierSeriesFile, Report, RunConfig

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["check_id", "lhs", "rhs", "abs_err", "rel_err", "sigma", "statistical", "passed", "skipped", "detail"]
CONSTANTS_COLUMNS = ["group", "t", "dynkin", "d", "norm2_shift", "C", "D", "C_tilde", "C_tilde_err", "ratio_check"]


def _write(text: str, out: Optional[str]) -> str:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)
    return text


def _csv(rows: List[dict], columns: List[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in columns})
    return buffer.getvalue()


def render_report(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return _csv([r.model_dump() for r in report.checks], REPORT_COLUMNS)
    return report.model_dump_json(indent=2) + "\n"


def verify(config: RunConfig, suite: str, out: Optional[str] = None) -> int:
    report = run_verification_suite(config, suite)
    text = render_report(report, config.format)
    if out:
        _write(text, out)
    else:
        print(text, end="")
    return 0 if report.passed else 1


def emit_constants_table(config: RunConfig, out: Optional[str] = None) -> str:
    rs = build_root_system(config.group)
    rows = [
        ConstantsRow.model_validate(constants_row(rs, weight, config.t, config.quad_order))
        for weight in enumerate_dominant(rs, config.max_level)
    ]
    if config.format == "csv":
        flat = []
        for row in rows:
            record = row.model_dump()
            record["dynkin"] = " ".join(str(v) for v in row.dynkin)
            flat.append(record)
        text = _csv(flat, CONSTANTS_COLUMNS)
    else:
        text = ConstantsTable(rows=rows).model_dump_json(indent=2) + "\n"
    return _write(text, out)


def read_constants_table(path: str) -> ConstantsTable:
    return ConstantsTable.model_validate_json(Path(path).read_text(encoding="utf-8"))


def load_series(path: str) -> FourierSeries:
    try:
        document = FourierSeriesFile.model_validate(json.loads(Path(path).read_text(encoding="utf-8")))
        return document.to_series()
    except (OSError, ValueError, HolopwError) as exc:
        raise ConfigError(f"cannot read series from {path}: {exc}") from exc


def transform(which: str, source: str, out: Optional[str] = None, order: Optional[int] = None) -> str:
    try:
        operator = Transform(which)
    except ValueError as exc:
        raise ConfigError(f"unknown transform {which!r}; expected one of {', '.join(t.value for t in Transform)}") from exc
    series = load_series(source)
    result = transform_apply(series, operator, order)
    text = FourierSeriesFile.from_series(result).model_dump_json(indent=2) + "\n"
    return _write(text, out)
