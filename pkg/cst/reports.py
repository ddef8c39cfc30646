#!/usr/bin/env python
"""
Reports: CSV and XLSX exports of suite results
"""
# ========================================================
# IMPORTS
# ========================================================
import csv
import logging
import os
from collections.abc import Sequence
from datetime import datetime
from datetime import timezone as _timezone

UTC = _timezone.utc

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import REPORT_DIR
from cst.suites import SuiteResult, parse_report_line

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.reports")

CSV_HEADER = ["suite", "space", "seed", "status", "law", "checks", "case"]


# ========================================================
# FUNCTIONS
# ========================================================
def _rows(result: SuiteResult):
    for line in result.lines:
        status, law, seed, case = parse_report_line(line)
        checks = line.rsplit("checks=", 1)[1] if status == "PASS" else ""
        yield [result.suite, result.space_id, seed, status, law, checks,
               line.split(" case=", 1)[1] if case is not None else ""]


def _default_path(ext: str) -> str:
    ts = datetime.now(UTC).strftime("%Y%m%d-%H%M%S")
    return os.path.join(REPORT_DIR, f"suite_report_{ts}.{ext}")


def export_csv_report(results: Sequence[SuiteResult], target_path: str | None = None) -> str:
    """Write one row per report line (semicolon separated, UTF-8 with BOM)."""
    target_path = target_path or _default_path("csv")
    with open(target_path, "w", newline="", encoding="utf-8-sig") as f:
        w = csv.writer(f, delimiter=";")
        w.writerow(CSV_HEADER)
        for result in results:
            for row in _rows(result):
                w.writerow(row)
    _log.info("CSV report written: %s", os.path.basename(target_path))
    return target_path


def export_xlsx_report(results: Sequence[SuiteResult], target_path: str | None = None) -> str:
    """Print-ready workbook with one section per suite run."""
    target_path = target_path or _default_path("xlsx")

    # ── styles ────────────────────────────────────────────────────────
    PASS_FILL = PatternFill("solid", fgColor="C6EFCE")
    FAIL_FILL = PatternFill("solid", fgColor="FFC7CE")
    SECTION_FILL = PatternFill("solid", fgColor="BDD7EE")
    HEADER_FILL = PatternFill("solid", fgColor="2F75B6")
    THIN = Side(style="thin")
    FULL_BORDER = Border(left=THIN, right=THIN, top=THIN, bottom=THIN)

    # ── workbook ──────────────────────────────────────────────────────
    wb = Workbook()
    ws = wb.active
    ws.title = "Suite report"

    col_widths = [5, 10, 28, 10, 80]
    col_headers = ["Nr.", "Status", "Law", "Checks", "Case"]
    num_cols = len(col_headers)
    last_col = get_column_letter(num_cols)
    for i, width in enumerate(col_widths, 1):
        ws.column_dimensions[get_column_letter(i)].width = width

    ws.merge_cells(f"A1:{last_col}1")
    c = ws["A1"]
    c.value = "Convex space law suites"
    c.font = Font(bold=True, size=14)
    c.alignment = Alignment(horizontal="center", vertical="center")
    ws.row_dimensions[1].height = 22

    failed = sum(1 for r in results if r.exit_status)
    ws.merge_cells(f"A2:{last_col}2")
    c = ws["A2"]
    c.value = (f"Created: {datetime.now(UTC).strftime('%Y-%m-%d %H:%M')} UTC"
               f"  –  Runs: {len(results)}, failed: {failed}")
    c.font = Font(italic=True, size=10)
    c.alignment = Alignment(horizontal="center")

    current_row = 3
    for result in results:
        current_row += 1
        ws.merge_cells(f"A{current_row}:{last_col}{current_row}")
        c = ws.cell(row=current_row, column=1,
                    value=(f"  {result.suite} on {result.space_id}  (seed {result.seed}, "
                           f"{result.cases} cases, {result.checked} checks, "
                           f"{len(result.failures)} failures)"))
        c.font = Font(bold=True, size=11)
        c.fill = SECTION_FILL if not result.exit_status else FAIL_FILL
        c.alignment = Alignment(horizontal="left", vertical="center", indent=1)

        current_row += 1
        for col_idx, header in enumerate(col_headers, 1):
            c = ws.cell(row=current_row, column=col_idx, value=header)
            c.font = Font(bold=True, color="FFFFFF")
            c.fill = HEADER_FILL
            c.border = FULL_BORDER
            c.alignment = Alignment(horizontal="center", vertical="center")

        for i, row in enumerate(_rows(result)):
            current_row += 1
            _suite, _space, _seed, status, law, checks, case = row
            values = [i + 1, status, law, int(checks) if checks else "", case]
            for col_idx, val in enumerate(values, 1):
                c = ws.cell(row=current_row, column=col_idx, value=val)
                c.border = FULL_BORDER
                c.alignment = Alignment(vertical="center", wrap_text=col_idx == num_cols)
                if col_idx == 2:
                    c.fill = PASS_FILL if status == "PASS" else FAIL_FILL

    ws.page_setup.orientation = "landscape"
    ws.page_setup.fitToWidth = 1
    ws.page_setup.fitToHeight = 0
    ws.page_setup.fitToPage = True

    wb.save(target_path)
    _log.info("XLSX report written: %s", os.path.basename(target_path))
    return target_path
