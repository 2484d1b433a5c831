"""JSON readers and writers for states and channels.

Complex matrices are nested lists of ``[re, im]`` pairs; plain numbers are
accepted as real entries.  See ``docs/formats.md`` for the full schemas.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import channels as ch
from . import states as st

STATE_KINDS = ("bell", "werner", "x", "separable", "tau", "pure", "raw")


def decode_complex(data, ndim: int) -> np.ndarray:
    """Array of rank ``ndim`` from nested lists.

    Leaves are either ``[re, im]`` pairs (one extra trailing axis of length 2)
    or plain real numbers.
    """
    arr = np.asarray(data, dtype=float)
    if arr.ndim == ndim + 1 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim == ndim:
        return arr.astype(complex)
    raise ValueError(f"expected a rank-{ndim} array of numbers or [re, im] pairs, got shape {arr.shape}")


def encode_complex(m) -> list:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 0:
        return [float(m.real), float(m.imag)]
    return [encode_complex(v) for v in m]


def _read(source):
    if isinstance(source, dict | list):
        return source
    return json.loads(Path(source).read_text())


def parse_state(source) -> np.ndarray:
    """Two-qubit density matrix from a state document, a dict or a path.

    Raises ``NotAState`` for unphysical input and ``ValueError`` for malformed
    documents.
    """
    doc = _read(source)
    if isinstance(doc, list):
        return _raw_matrix(doc)
    kind = doc.get("kind")
    if kind == "bell":
        return st.bell_state(doc.get("which", "phi+"))
    if kind == "werner":
        return st.werner_state(float(doc["p"]), doc.get("bell", "phi+"))
    if kind == "x":
        return st.x_state(doc["s"])
    if kind == "separable":
        spec = st.SeparableSpec(doc["weights"], doc["system_vertices"], doc["ancilla_vertices"])
        return st.separable_from_spec(spec)
    if kind == "tau":
        return st.rho_from_tau(np.asarray(doc["tau"], dtype=float))
    if kind == "pure":
        amps = decode_complex(doc["amplitudes"], 1)
        if amps.shape != (4,):
            raise ValueError("pure state needs four amplitudes")
        return st.pure_state(amps)
    if kind == "raw":
        return _raw_matrix(doc["matrix"])
    raise ValueError(f"unknown state kind {kind!r}; choose from {STATE_KINDS}")


def _raw_matrix(data) -> np.ndarray:
    rho = decode_complex(data, 2)
    if rho.shape != (4, 4):
        raise ValueError(f"raw state must be 4x4, got {rho.shape}")
    return st.validate_density_matrix(rho, dim=4)


def parse_channel(source) -> ch.Channel:
    """Channel from ``{"kind": name, **params}`` or ``{"kraus": [...]}``."""
    doc = _read(source)
    if "kraus" in doc:
        return ch.Channel(tuple(decode_complex(k, 2) for k in doc["kraus"]))
    params = {k: v for k, v in doc.items() if k != "kind"}
    if "kind" not in doc:
        raise ValueError("channel document needs 'kind' or 'kraus'")
    return ch.named_channel(doc["kind"], **params)


def spec_to_json(spec: st.SeparableSpec) -> dict:
    return {
        "kind": "separable",
        "weights": spec.weights.tolist(),
        "system_vertices": spec.system_vertices.tolist(),
        "ancilla_vertices": spec.ancilla_vertices.tolist(),
    }


def raw_to_json(rho) -> dict:
    return {"kind": "raw", "matrix": encode_complex(rho)}


def channel_to_json(channel: ch.Channel) -> dict:
    return {"kraus": [encode_complex(k) for k in channel.kraus]}


def dump(doc, path=None) -> str:
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
