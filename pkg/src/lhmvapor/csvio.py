"""CSV serialization of response tables."""

from __future__ import annotations

import csv
import io

from .errors import ConfigError
from .response import OpticalResponse
from .sweep import CNAN, ResponseTable

COLUMNS = ("delta_p", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n",
           "absorption_a", "group_index")
HEADER = ",".join(COLUMNS)


def _fmt(x: float) -> str:
    # 17 significant digits round-trip every double
    return format(float(x), ".17g")


def emit_csv(table: ResponseTable) -> str:
    flagged = any(r.flag for r in table)
    out = io.StringIO()
    out.write(HEADER + (",flag" if flagged else "") + "\n")
    for r in table:
        g = float("nan") if r.group_index is None else r.group_index
        fields = [r.delta_p, r.eps_r.real, r.eps_r.imag, r.mu_r.real, r.mu_r.imag,
                  r.n.real, r.n.imag, r.absorption_a, g]
        line = ",".join(_fmt(x) for x in fields)
        if flagged:
            line += "," + (r.flag or "")
        out.write(line + "\n")
    return out.getvalue()


def parse_csv(text: str) -> ResponseTable:
    """Inverse of emit_csv. Polarizabilities are not stored and come back NaN."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ConfigError("empty CSV") from None
    flagged = header == list(COLUMNS) + ["flag"]
    if header != list(COLUMNS) and not flagged:
        raise ConfigError(f"unexpected CSV header {','.join(header)!r}", 1)
    rows = []
    for lineno, fields in enumerate(reader, start=2):
        if not fields:
            continue
        if len(fields) != len(header):
            raise ConfigError(f"expected {len(header)} fields, got {len(fields)}", lineno)
        try:
            v = [float(x) for x in fields[:len(COLUMNS)]]
        except ValueError as exc:
            raise ConfigError(str(exc), lineno) from None
        eps = complex(v[1], v[2])
        rows.append(OpticalResponse(
            delta_p=v[0], gamma_e=CNAN, gamma_m=CNAN, chi_e=eps - 1.0, eps_r=eps,
            mu_r=complex(v[3], v[4]), n=complex(v[5], v[6]), absorption_a=v[7],
            group_index=v[8], flag=(fields[-1] or None) if flagged else None,
        ))
    return ResponseTable(tuple(rows))
