"""Record schema of the sweep CSVs and strict reading.

The header is the wire contract with the sweep tool: it must match exactly,
otherwise the file is rejected before any rendering starts.
"""

from __future__ import annotations

import csv

#: Exact header emitted by the sweep tool.
EXPECTED_HEADER = ("scenario", "n", "v_a", "v_b", "t_s", "t_i", "rho", "phi",
                   "n_s", "n_plus", "n_minus", "variance", "sigma2", "phi_min",
                   "sigma2_min", "fisher", "fisher_norm", "contrast", "sentinel")

_FLOAT_FIELDS = EXPECTED_HEADER[1:-1]


class SchemaError(ValueError):
    """The input file does not carry the sweep record schema."""


class MissingDataError(ValueError):
    """The file validates but lacks the rows/columns a figure needs."""


def read_records(path: str) -> list[dict]:
    """Read and validate one sweep CSV into typed records.

    Numeric cells parse to float (empty -> None); the sentinel column parses
    to bool.  A wrong or absent header aborts with SchemaError.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected the sweep record header")
        if tuple(header) != EXPECTED_HEADER:
            raise SchemaError(
                f"{path}: header mismatch; expected {','.join(EXPECTED_HEADER)}")
        records = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(EXPECTED_HEADER):
                raise SchemaError(f"{path}:{lineno}: expected {len(EXPECTED_HEADER)} cells")
            rec: dict = {"scenario": row[0]}
            for name, cell in zip(_FLOAT_FIELDS, row[1:-1]):
                if cell == "":
                    rec[name] = None
                else:
                    try:
                        rec[name] = float(cell)
                    except ValueError:
                        raise SchemaError(f"{path}:{lineno}: non-numeric cell in {name!r}")
            rec["sentinel"] = row[-1] == "true"
            records.append(rec)
    if not records:
        raise MissingDataError(f"{path}: no data rows")
    return records
