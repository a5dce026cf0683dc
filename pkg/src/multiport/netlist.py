"""Serialization for circuits and experiment results.

Netlists are JSON documents: human-diffable, stable under version
control, and lossless (``parse(serialize(c)) == c``). Phases that are
exact binary-float multiples of pi are written as strings like
``"3/4 pi"`` so fixture files stay readable and round-trip bit-exactly;
anything else falls back to ``repr`` of the float, which Python
guarantees to round-trip.

Experiment results are rendered as CSV: a key,value header block, a
blank line, then the histogram table. Per-trial fidelities go to a
separate single-column file so the summary stays small.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import numpy as np

from .circuit import Circuit, Element, Layer
from .experiments import ExperimentResult, fd_histogram
from .noise import NoiseParams

SCHEMA_VERSION = 1
GENERATOR_VERSION = "0.1.0"

_MAX_PI_DENOMINATOR = 1 << 20


def _encode_angle(theta: float):
    """Render a phase, preferring an exact "k/n pi" form when available."""
    if theta == 0.0:
        return 0
    frac = Fraction(theta / math.pi).limit_denominator(_MAX_PI_DENOMINATOR)
    k, n = frac.numerator, frac.denominator
    if n <= 64 and k * math.pi / n == theta:
        return f"{k}/{n} pi" if n > 1 else f"{k} pi"
    return repr(theta)


def _decode_angle(raw) -> float:
    if isinstance(raw, (int, float)):
        return float(raw)
    text = raw.strip()
    if text.endswith("pi"):
        frac = Fraction(text[:-2].strip() or "1")
        return frac.numerator * math.pi / frac.denominator
    return float(text)


def _element_to_json(e: Element) -> dict:
    doc: dict = {"kind": e.kind, "modes": list(e.modes)}
    if len(e.modes) == 2:
        doc["reflectivity"] = e.reflectivity
    else:
        doc["phase"] = _encode_angle(e.phase)
        if e.loss:
            doc["loss"] = e.loss
    return doc


def _element_from_json(doc: dict) -> Element:
    kind = doc["kind"]
    modes = tuple(int(m) for m in doc["modes"])
    return Element(
        kind,
        modes,
        reflectivity=float(doc.get("reflectivity", 0.0)),
        phase=_decode_angle(doc.get("phase", 0)),
        loss=float(doc.get("loss", 0.0)),
    )


def serialize_circuit(circuit: Circuit, metadata: dict | None = None) -> str:
    """Serialize a circuit to a JSON netlist document string."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "generator_version": GENERATOR_VERSION,
        "modes": circuit.d,
        "metadata": dict(metadata or {}),
        "layers": [
            [_element_to_json(e) for e in layer.elements] for layer in circuit.layers
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Parse a JSON netlist document back into a circuit."""
    doc = json.loads(text)
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported netlist schema version {version!r}")
    layers = tuple(
        Layer(tuple(_element_from_json(e) for e in layer)) for layer in doc["layers"]
    )
    return Circuit(int(doc["modes"]), layers)


def netlist_metadata(text: str) -> dict:
    """Return the metadata block of a netlist document."""
    doc = json.loads(text)
    return dict(doc.get("metadata", {}))


def _noise_rows(noise: NoiseParams) -> list[tuple[str, str]]:
    return [
        ("bs_mean", repr(noise.bs_mean)),
        ("bs_std", repr(noise.bs_std)),
        ("swap_mean", repr(noise.swap_mean)),
        ("swap_std", repr(noise.swap_std)),
        ("loss_mean", repr(noise.loss_mean)),
        ("loss_std", repr(noise.loss_std)),
    ]


def render_results_csv(result: ExperimentResult) -> str:
    """Render an experiment result as the two-block CSV document."""
    spec = result.spec
    stats = result.stats
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = [
        ("kind", spec.kind),
        ("d", str(spec.d)),
        ("trials", str(spec.trials)),
        ("seed", str(spec.seed)),
        ("convention", spec.convention),
    ]
    rows += _noise_rows(spec.noise)
    rows += [
        ("mean", repr(stats.mean)),
        ("std", repr(stats.std)),
        ("median", repr(stats.median)),
    ]
    for key, value in rows:
        writer.writerow([key, value])
    writer.writerow([])
    writer.writerow(["bin_lower", "bin_width", "count"])
    for lower, width, count in stats.histogram:
        writer.writerow([repr(lower), repr(width), str(count)])
    return buf.getvalue()


def parse_results_csv(text: str) -> tuple[dict, list[tuple[float, float, int]]]:
    """Parse a results CSV into (header dict, histogram rows)."""
    header: dict = {}
    bins: list[tuple[float, float, int]] = []
    in_table = False
    for row in csv.reader(io.StringIO(text)):
        if not row or row == [""]:
            in_table = True
            continue
        if not in_table:
            header[row[0]] = row[1]
        elif row[0] != "bin_lower":
            bins.append((float(row[0]), float(row[1]), int(row[2])))
    return header, bins


def render_fidelities(fidelities: np.ndarray) -> str:
    """Render per-trial fidelities as a one-column CSV with header."""
    lines = ["fidelity"]
    lines.extend(repr(float(f)) for f in fidelities)
    return "\n".join(lines) + "\n"


def parse_fidelities(text: str) -> np.ndarray:
    """Parse a per-trial fidelity file back into an array."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != "fidelity":
        raise ValueError("fidelity file must start with a 'fidelity' header")
    return np.array([float(line) for line in lines[1:]], dtype=float)


def histogram_rows(values: np.ndarray) -> list[tuple[float, float, int]]:
    """Freedman-Diaconis histogram rows (lower, width, count) for values."""
    return list(fd_histogram(values))
