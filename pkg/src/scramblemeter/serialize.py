"""JSON (de)serialization of complex matrices, isometries, and cq states.

The on-disk matrix format is an object with "nrows", "ncols" and flat
row-major "re"/"im" arrays; isometry files additionally carry "site_dims".
Readers accept full double precision.
"""

from __future__ import annotations

import json

import numpy as np

from .qstate import Isometry, SiteLayout, ValidationError, validate_isometry


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "nrows": m.shape[0],
        "ncols": m.shape[1],
        "re": m.real.ravel().tolist(),
        "im": m.imag.ravel().tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        nrows, ncols = int(obj["nrows"]), int(obj["ncols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix object: {exc}") from exc
    if re.size != nrows * ncols or im.size != nrows * ncols:
        raise ValidationError(
            f"entry count {re.size}/{im.size} != {nrows}x{ncols}"
        )
    return (re + 1j * im).reshape(nrows, ncols)


def isometry_to_json(v: Isometry) -> dict:
    obj = matrix_to_json(v.mat)
    obj["site_dims"] = list(v.out_layout.dims)
    return obj


def isometry_from_json(obj: dict) -> Isometry:
    mat = matrix_from_json(obj)
    if "site_dims" not in obj:
        raise ValidationError("isometry object is missing 'site_dims'")
    layout = SiteLayout(tuple(int(d) for d in obj["site_dims"]))
    return validate_isometry(mat, layout)


def cq_state_to_json(items) -> list:
    return [{"p": float(p), "matrix": matrix_to_json(rho)} for p, rho in items]


def cq_state_from_json(obj) -> list:
    if not isinstance(obj, list):
        raise ValidationError("cq state file must hold a list of {p, matrix}")
    items = []
    for entry in obj:
        try:
            p = float(entry["p"])
            rho = matrix_from_json(entry["matrix"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed cq entry: {exc}") from exc
        items.append((p, rho))
    return items


def load_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
