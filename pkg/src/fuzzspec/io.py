"""File formats: membership specs (JSON), arc systems (JSON), coefficient
tables (delimited text with # headers), reconstruction results (JSON).

All numeric output uses 17 significant digits so round-trips through files
are lossless in double precision.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path

import numpy as np

from .crisp import ArcSystem
from .errors import ValidationError
from .membership import MembershipFunction, membership_from_dict
from .nonlinear import NONLINEAR_CONVENTION, NonlinearSpectrum
from .periodize import SchwartzFunction, schwartz_from_dict
from .reconstruct import ReconstructionResult
from .spectra import KERNEL_CONVENTION, HermitianSpectrum

FLOAT_FMT = "%.17g"


def _fmt(x: float) -> str:
    return FLOAT_FMT % float(x)


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def load_membership(source) -> MembershipFunction:
    """Membership function from a JSON file path or an already-parsed dict."""
    data = source if isinstance(source, dict) else _load_json(source)
    return membership_from_dict(data)


def save_membership(f: MembershipFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(f.to_dict(), fh, indent=2)
        fh.write("\n")


def load_schwartz(source) -> SchwartzFunction:
    data = source if isinstance(source, dict) else _load_json(source)
    return schwartz_from_dict(data)


def load_arc_system(source, canonicalize: bool = True
                    ) -> tuple[ArcSystem, float]:
    """Arc system from {"arcs": [[xi, eta], ...]}; returns (arcs, rotation).

    With canonicalize=True (the default) inputs are rotated so the first
    arc starts at 0; the applied rotation is returned and, when non-zero,
    also emitted as a warning.
    """
    data = source if isinstance(source, dict) else _load_json(source)
    if "arcs" not in data:
        raise ValidationError("arc-system file must contain an 'arcs' field")
    pairs = data["arcs"]
    try:
        arcs = ArcSystem([p[0] for p in pairs], [p[1] for p in pairs])
    except (TypeError, IndexError) as exc:
        raise ValidationError(f"malformed arcs field: {exc}") from exc
    rotation = 0.0
    if canonicalize:
        arcs, rotation = arcs.canonicalized()
        if rotation != 0.0:
            warnings.warn(
                f"arc system rotated by {rotation:.6g} rad to canonical form "
                "(first arc anchored at 0)", stacklevel=2)
    return arcs, rotation


def save_arc_system(arcs: ArcSystem, path) -> None:
    data = {"arcs": [[a, b] for a, b in zip(arcs.xi, arcs.eta)]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def _write_table(path, comments: list[str], header: str,
                 rows: list[list[float]]) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(header)
    for row in rows:
        lines.append(",".join(_fmt(x) if isinstance(x, float) else str(x)
                              for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_table(path) -> tuple[dict, list[list[str]]]:
    """Returns (#-header key/values, data rows split on commas)."""
    meta = {}
    rows = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    def parses_as_data(parts):
        try:
            int(parts[0])
            [float(p) for p in parts[1:]]
            return True
        except (ValueError, IndexError):
            return False

    first_row = True
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, val = body.partition("=")
                meta[key.strip()] = val.strip()
            continue
        parts = [p.strip() for p in line.split(",")]
        if first_row:
            first_row = False
            if not parses_as_data(parts):
                continue  # column-name row
        if len(parts) < 3:
            raise ValidationError(
                f"{path}:{ln}: expected 'k,re,im', got {line!r}")
        rows.append(parts)
    if not rows:
        raise ValidationError(f"{path}: no data rows found")
    return meta, rows


def write_spectrum(spec: HermitianSpectrum, path) -> None:
    """Fourier window as delimited text: k, re(c_k), im(c_k)."""
    rows = [[k, float(spec.coeffs[k].real), float(spec.coeffs[k].imag)]
            for k in range(spec.max_k + 1)]
    _write_table(path, [f"convention = {KERNEL_CONVENTION}"],
                 "k,re_ck,im_ck", rows)


def read_spectrum(path) -> HermitianSpectrum:
    _, rows = _read_table(path)
    try:
        items = sorted((int(r[0]), float(r[1]), float(r[2])) for r in rows)
    except ValueError as exc:
        raise ValidationError(f"{path}: bad numeric field: {exc}") from exc
    ks = [it[0] for it in items]
    if ks != list(range(len(ks))):
        raise ValidationError(f"{path}: k column must cover 0..max_k")
    return HermitianSpectrum(np.array([complex(re, im) for _, re, im in items]))


def write_nonlinear(ns: NonlinearSpectrum, path) -> None:
    """Nonlinear window as delimited text with c0 and the frozen convention
    recorded in the header."""
    rows = [[k, float(ns.s[k].real), float(ns.s[k].imag)]
            for k in range(ns.max_k + 1)]
    _write_table(path,
                 [f"convention = {NONLINEAR_CONVENTION}",
                  f"c0 = {_fmt(ns.c0)}"],
                 "k,re_sk,im_sk", rows)


def read_nonlinear(path) -> NonlinearSpectrum:
    meta, rows = _read_table(path)
    if "c0" not in meta:
        raise ValidationError(f"{path}: missing '# c0 = ...' header")
    try:
        c0 = float(meta["c0"])
        items = sorted((int(r[0]), float(r[1]), float(r[2])) for r in rows)
    except ValueError as exc:
        raise ValidationError(f"{path}: bad numeric field: {exc}") from exc
    ks = [it[0] for it in items]
    if ks != list(range(len(ks))):
        raise ValidationError(f"{path}: k column must cover 0..max_k")
    return NonlinearSpectrum(
        c0, np.array([complex(re, im) for _, re, im in items]))


def write_result(result: ReconstructionResult, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(result.to_dict(), fh, indent=2)
        fh.write("\n")


def write_sweep(entries, path) -> None:
    payload = []
    for e in entries:
        if e.ok:
            payload.append(e.result.to_dict())
        else:
            payload.append({"n": e.n, "error": e.error})
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def write_samples_table(path, t, columns: dict) -> None:
    """(t, series...) sample table for external plotting."""
    names = list(columns)
    rows = [[float(ti)] + [float(columns[name][i]) for name in names]
            for i, ti in enumerate(t)]
    _write_table(path, ["sample table"], ",".join(["t"] + names), rows)


def write_residual_table(path, ks, residuals) -> None:
    rows = [[int(k), float(r)] for k, r in zip(ks, residuals)]
    lines = ["# per-coefficient absolute residuals", "k,residual"]
    for row in rows:
        lines.append(f"{row[0]},{_fmt(row[1])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
