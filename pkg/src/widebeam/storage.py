"""Bit-stable file formats: codebook JSON and evaluation/sweep CSV.

Floats are always written with 17 significant digits, enough to round-trip
IEEE doubles exactly, so write -> read -> write is byte-identical.  The
reader validates structure before constructing anything and reports the
JSON pointer of the first offending field.
"""

from __future__ import annotations

import json
import math
import warnings

import numpy as np

from .array_model import MODULUS_TOL, BeamVector, SystemConfig
from .codebook import Codebook
from .zones import ZonePartition, virtual_interval

SCHEMA_VERSION = 1


class CodebookFormatError(ValueError):
    """Malformed codebook file; `pointer` locates the offending field."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


def _f(x: float) -> str:
    return format(float(x), ".17g")


def codebook_json(cb: Codebook) -> str:
    """Canonical JSON text for a codebook; fixed key order, LF line endings."""
    c = cb.provenance["config"]
    lines = [
        "{",
        f'  "version": {SCHEMA_VERSION},',
        '  "config": {'
        f'"f_c_hz": {_f(c["f_c"])}, "b_hz": {_f(c["B"])}, '
        f'"n": {int(c["N"])}, "l": {int(c["L"])}}},',
        f'  "delta_omega": {_f(cb.partition.delta_omega)},',
        '  "boundaries_rad": [' + ", ".join(_f(b) for b in cb.partition.boundaries) + "],",
        '  "beams": [',
    ]
    beam_rows = []
    for w in cb.beams:
        pairs = ", ".join(f"[{_f(v.real)}, {_f(v.imag)}]" for v in w.weights)
        beam_rows.append(f"    [{pairs}]")
    lines.append(",\n".join(beam_rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_codebook(path, cb: Codebook) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(codebook_json(cb))


def _require(cond: bool, pointer: str, message: str) -> None:
    if not cond:
        raise CodebookFormatError(pointer, message)


def _number(value, pointer: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             pointer, "expected a number")
    _require(math.isfinite(value), pointer, "expected a finite number")
    return float(value)


def parse_codebook(text: str) -> tuple[Codebook, SystemConfig]:
    """Validate and reconstruct a codebook from JSON text.

    Raises CodebookFormatError with a JSON pointer on the first structural
    problem.  The zone intervals are rebuilt from the stored boundaries:
    with the stored bandwidth if that reproduces the stored width, with the
    plain sine mapping otherwise (the narrowband file stores its zero-band
    partition alongside a nonzero operating bandwidth).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodebookFormatError("", f"not valid JSON: {e}") from e
    _require(isinstance(doc, dict), "", "top level must be an object")
    _require(doc.get("version") == SCHEMA_VERSION, "/version",
             f"expected {SCHEMA_VERSION}")

    conf = doc.get("config")
    _require(isinstance(conf, dict), "/config", "expected an object")
    f_c = _number(conf.get("f_c_hz"), "/config/f_c_hz")
    b = _number(conf.get("b_hz"), "/config/b_hz")
    _require(f_c > 0, "/config/f_c_hz", "must be positive")
    _require(0 <= b < 2 * f_c, "/config/b_hz", "must satisfy 0 <= b < 2*f_c")
    n = conf.get("n")
    l = conf.get("l")
    _require(isinstance(n, int) and n >= 1, "/config/n", "expected integer >= 1")
    _require(isinstance(l, int) and l >= 1, "/config/l", "expected integer >= 1")

    delta = _number(doc.get("delta_omega"), "/delta_omega")
    _require(delta > 0, "/delta_omega", "must be positive")

    bounds = doc.get("boundaries_rad")
    _require(isinstance(bounds, list), "/boundaries_rad", "expected a list")
    _require(len(bounds) == l + 1, "/boundaries_rad",
             f"expected {l + 1} boundaries for l={l}")
    bvals = np.array([_number(v, f"/boundaries_rad/{i}") for i, v in enumerate(bounds)])
    _require(bool(np.all(np.diff(bvals) > 0)), "/boundaries_rad",
             "must be strictly increasing")
    _require(abs(bvals[0] + np.pi / 2) <= 1e-9 and abs(bvals[-1] - np.pi / 2) <= 1e-9,
             "/boundaries_rad", "must span [-pi/2, pi/2]")

    beams_doc = doc.get("beams")
    _require(isinstance(beams_doc, list), "/beams", "expected a list")
    _require(len(beams_doc) == l, "/beams", f"expected {l} beams for l={l}")
    beams = []
    for i, row in enumerate(beams_doc):
        _require(isinstance(row, list), f"/beams/{i}", "expected a list")
        _require(len(row) == n, f"/beams/{i}", f"expected {n} weights for n={n}")
        w = np.empty(n, dtype=complex)
        for k, pair in enumerate(row):
            _require(isinstance(pair, list) and len(pair) == 2,
                     f"/beams/{i}/{k}", "expected an [re, im] pair")
            w[k] = complex(_number(pair[0], f"/beams/{i}/{k}/0"),
                           _number(pair[1], f"/beams/{i}/{k}/1"))
        dev = np.abs(np.abs(w) - 1.0 / np.sqrt(n)).max()
        _require(dev <= MODULUS_TOL, f"/beams/{i}",
                 f"constant-modulus violation (max deviation {dev:.3e})")
        beams.append(BeamVector(w))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # a stored L < N file is still readable
        cfg = SystemConfig(f_c=f_c, B=b, N=n, L=l)
    banded = np.array([virtual_interval(cfg, bvals[i], bvals[i + 1])
                       for i in range(l)])
    if np.abs((banded[:, 1] - banded[:, 0]) - delta).max() <= 1e-9:
        intervals = banded
    else:
        s = np.sin(bvals)
        intervals = np.stack([s[:-1], s[1:]], axis=1)
    partition = ZonePartition(boundaries=bvals, delta_omega=delta, intervals=intervals)
    cb = Codebook.assemble(tuple(beams), partition, cfg, solver_cfg=None, kind="loaded")
    return cb, cfg


def read_codebook(path) -> tuple[Codebook, SystemConfig]:
    with open(path, encoding="utf-8") as fh:
        return parse_codebook(fh.read())


def write_eval_csv(path, report) -> None:
    """Rows phi_deg,gain,best_beam; dot decimals, LF endings, header first."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("phi_deg,gain,best_beam\n")
        for phi, g, idx in zip(report.angles, report.gains, report.best_indices):
            fh.write(f"{_f(np.degrees(phi))},{_f(g)},{int(idx)}\n")


def write_sweep_csv(path, rows) -> None:
    """Rows N,B_GHz,worst_case,bound; empty worst_case for bound-only sweeps."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("N,B_GHz,worst_case,bound\n")
        for n, b_ghz, worst, bound in rows:
            worst_s = "" if worst is None else _f(worst)
            fh.write(f"{int(n)},{_f(b_ghz)},{worst_s},{_f(bound)}\n")
