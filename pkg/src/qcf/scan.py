"""Grid scans of theoretical verdicts against numerical convergence."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from qcf.cfeval import DEFAULT_N_MAX, DEFAULT_TOL, DEFAULT_WINDOW, ElementStream, run_reports
from qcf.qpoly import FamilySpec
from qcf.verdict import verdict

GUARD = 1e-9
CSV_COLUMNS = ["re_q", "im_q", "conclusion", "theorem", "full_status", "odd_status",
               "even_status", "n_used"]


@dataclass(frozen=True)
class ScanRow:
    q: complex
    conclusion: str
    theorem: str
    full_status: str
    odd_status: str
    even_status: str
    n_used: int

    def csv_fields(self) -> list:
        return [repr(self.q.real), repr(self.q.imag), self.conclusion, self.theorem,
                self.full_status, self.odd_status, self.even_status, str(self.n_used)]


def grid_points(re_range, im_range, grid: int) -> list:
    """Row-major grid (imaginary part outer, ascending) outside ``|q| <= 1 + GUARD``."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    (r0, r1), (i0, i1) = re_range, im_range
    pts = []
    for a in range(grid):
        im = i0 + (i1 - i0) * a / (grid - 1)
        for b in range(grid):
            q = complex(r0 + (r1 - r0) * b / (grid - 1), im)
            if abs(q) > 1 + GUARD:
                pts.append(q)
    return pts


def scan_point(fam: FamilySpec, q: complex, tol: float = DEFAULT_TOL,
               window: int = DEFAULT_WINDOW, n_max: int = DEFAULT_N_MAX) -> ScanRow:
    v = verdict(fam, q)
    reps = run_reports(ElementStream.from_family(fam, q), tol, window, n_max)
    return ScanRow(q, str(v.conclusion), str(v.theorem_used), str(reps["full"].status),
                   str(reps["odd"].status), str(reps["even"].status),
                   max(r.n_used for r in reps.values()))


def _scan_chunk(args) -> list:
    fam, pts, tol, window, n_max = args
    return [scan_point(fam, q, tol, window, n_max) for q in pts]


def scan_region(fam: FamilySpec, re_range, im_range, grid: int, tol: float = DEFAULT_TOL,
                n_max: int = DEFAULT_N_MAX, window: int = DEFAULT_WINDOW,
                workers: int = 1) -> Iterator[ScanRow]:
    """Yield one row per grid point with ``|q| > 1``, in row-major order.

    With ``workers > 1`` chunks are evaluated in worker processes;
    ``Executor.map`` keeps the output order fixed.
    """
    pts = grid_points(re_range, im_range, grid)
    if workers <= 1:
        for q in pts:
            yield scan_point(fam, q, tol, window, n_max)
        return
    size = max(1, len(pts) // (8 * workers))
    chunks = [(fam, pts[i:i + size], tol, window, n_max) for i in range(0, len(pts), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for rows in pool.map(_scan_chunk, chunks):
            yield from rows


def write_csv(rows, fh) -> int:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    count = 0
    for row in rows:
        w.writerow(row.csv_fields())
        count += 1
    return count


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()
