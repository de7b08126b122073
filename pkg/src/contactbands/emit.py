"""Deterministic CSV/JSON emission for scan and sweep results.

Data files carry no timestamps and every float is written with enough digits
for an exact decimal round-trip; run metadata goes to a JSON sidecar next to
the data file (``<name>.meta.json``).
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .boundstates import BoundStateSet, PitchforkPoint
from .errors import DomainError
from .kronig import BandStructure, RegimeSummary
from .scattering import BreakingWindowPoint, ScatteringSolution, SMatrixEigenproblem

Pathish = Union[str, Path]

PITCHFORK_HEADER = ("alpha_i", "re_kappa_plus", "re_kappa_minus",
                    "im_kappa_plus", "im_kappa_minus", "admissible_count")
SCATTER_HEADER = ("k", "re_t", "im_t", "re_r", "im_r",
                  "re_tp", "im_tp", "re_rp", "im_rp")
EIGEN_HEADER = ("k", "re_lambda_plus", "im_lambda_plus",
                "re_lambda_minus", "im_lambda_minus", "broken")
BAND_HEADER = ("band", "k", "re_kappa", "im_kappa", "re_E", "im_E", "residual")
BOUND_HEADER = ("re_kappa", "im_kappa", "re_E", "im_E")
WINDOW_HEADER = ("k", "margin", "broken")
DIRAC_HEADER = ("k", "e_plus", "e_minus", "gap")
FIGBAND_HEADER = ("k", "re_E_plus", "im_E_plus", "re_E_minus", "im_E_minus")


def format_number(x) -> str:
    """Shortest decimal form that parses back to the identical value."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def write_csv(path: Pathish, header: Sequence[str],
              rows: Iterable[Sequence]) -> Path:
    """Comma-separated, LF-terminated, header mandatory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_number(v) for v in row) + "\n")
    return path


def read_csv(path: Pathish) -> Dict[str, List[float]]:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        cols: Dict[str, List[float]] = {name: [] for name in header}
        for row in reader:
            for name, val in zip(header, row):
                cols[name].append(float(val))
    return cols


def write_json_table(path: Pathish, header: Sequence[str],
                     rows: Iterable[Sequence], meta: Optional[dict] = None) -> Path:
    """JSON mirror of a CSV table: columns as arrays plus a meta object."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [list(r) for r in rows]
    columns = {name: [_jsonable(row[i]) for row in rows]
               for i, name in enumerate(header)}
    payload = {"columns": columns, "meta": meta or {}}
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    return path


def _jsonable(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    v = float(v)
    return None if math.isnan(v) else v


def write_record(path: Pathish, record: dict) -> Path:
    """Flat structured-text (JSON) record, e.g. regime summaries and sidecars."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record, indent=1, sort_keys=True) + "\n")
    return path


def sidecar_path(data_path: Pathish) -> Path:
    data_path = Path(data_path)
    return data_path.with_name(data_path.stem + ".meta.json")


def write_table(path: Pathish, header: Sequence[str], rows: Iterable[Sequence],
                meta: Optional[dict] = None, fmt: str = "csv") -> Path:
    """Write a table in the requested format plus its metadata sidecar."""
    rows = [list(r) for r in rows]
    if fmt == "csv":
        out = write_csv(path, header, rows)
        if meta is not None:
            write_record(sidecar_path(out), meta)
        return out
    if fmt == "json":
        return write_json_table(path, header, rows, meta)
    raise DomainError(f"unknown output format: {fmt!r}")


# ---------------------------------------------------------------------------
# row builders
# ---------------------------------------------------------------------------

def bound_state_rows(bs: BoundStateSet) -> List[Tuple]:
    return [(z.real, z.imag, (-0.5 * z * z).real, (-0.5 * z * z).imag)
            for z in bs.roots]


def pitchfork_rows(points: Sequence[PitchforkPoint]) -> List[Tuple]:
    return [(pt.alpha_i, pt.kappa_plus.real, pt.kappa_minus.real,
             pt.kappa_plus.imag, pt.kappa_minus.imag, pt.admissible_count)
            for pt in points]


def scatter_rows(solutions: Sequence[ScatteringSolution]) -> List[Tuple]:
    return [(s.k, s.t.real, s.t.imag, s.r.real, s.r.imag,
             s.t_prime.real, s.t_prime.imag, s.r_prime.real, s.r_prime.imag)
            for s in solutions]


def eigen_rows(problems: Sequence[SMatrixEigenproblem]) -> List[Tuple]:
    return [(e.k, e.lambda_plus.real, e.lambda_plus.imag,
             e.lambda_minus.real, e.lambda_minus.imag, int(e.broken))
            for e in problems]


def band_rows(bands: Sequence[BandStructure]) -> List[Tuple]:
    rows = []
    for band in bands:
        for bp in band.points:
            rows.append((band.band_index, bp.k, bp.kappa.real, bp.kappa.imag,
                         bp.energy.real, bp.energy.imag, bp.residual))
    return rows


def window_rows(points: Sequence[BreakingWindowPoint]) -> List[Tuple]:
    return [(pt.k, pt.margin, int(pt.broken)) for pt in points]


def regime_record(summary: RegimeSummary) -> dict:
    return {
        "regime": summary.regime.value,
        "real_fraction": summary.real_fraction,
        "min_gap": summary.min_gap,
        "k_at_min_gap": summary.k_at_min_gap,
    }
