"""CSV and PGM writers for temperature fields and probe series."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "SnapshotFrame",
    "format_value",
    "write_snapshot_csv",
    "read_snapshot_csv",
    "probe_header",
    "write_probe_csv_row",
    "write_pgm",
    "read_pgm",
    "snapshot_filename",
    "DirectorySink",
    "MemorySink",
]


@dataclass
class SnapshotFrame:
    t: float
    field: np.ndarray  # (ny, nx), row j=0 first

    def __post_init__(self) -> None:
        if self.field.ndim != 2:
            raise ValueError(f"snapshot field must be 2-D, got shape {self.field.shape}")


def format_value(x: float) -> str:
    """Shortest round-trip decimal; integral values lose the trailing ``.0``."""
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def write_snapshot_csv(frame: SnapshotFrame) -> str:
    lines = [f"# t={format_value(frame.t)}"]
    lines.extend(",".join(format_value(v) for v in row) for row in frame.field.tolist())
    return "\n".join(lines) + "\n"


def read_snapshot_csv(text: str) -> SnapshotFrame:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# t="):
        raise ValueError("snapshot CSV must start with a '# t=<seconds>' line")
    t = float(lines[0][4:])
    rows = [[float(v) for v in line.split(",")] for line in lines[1:] if line]
    return SnapshotFrame(t, np.array(rows, dtype=float))


def probe_header(names: Sequence[str]) -> str:
    return ",".join(["t", *names])


def write_probe_csv_row(t: float, values: Sequence[float]) -> str:
    return ",".join([format_value(t), *(format_value(v) for v in values)])


def write_pgm(frame: SnapshotFrame, t_lo: float, t_hi: float) -> bytes:
    """8-bit binary PGM; ``t_lo`` maps to black, ``t_hi`` to white."""
    if not t_lo < t_hi:
        raise ValueError(f"PGM range needs t_lo < t_hi, got {t_lo!r}:{t_hi!r}")
    ny, nx = frame.field.shape
    with np.errstate(invalid="ignore"):
        scaled = np.clip((frame.field - t_lo) / (t_hi - t_lo), 0.0, 1.0)
    scaled = np.where(np.isnan(scaled), 0.0, scaled)
    pixels = np.floor(255.0 * scaled + 0.5).astype(np.uint8)
    return f"P5\n{nx} {ny}\n255\n".encode("ascii") + pixels.tobytes()


def read_pgm(data: bytes) -> np.ndarray:
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM")
    nx, ny = (int(v) for v in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(ny, nx)


def snapshot_filename(scenario: str, step_index: int, ext: str) -> str:
    return f"{scenario}_step{step_index:08d}.{ext}"


class DirectorySink:
    """Writes snapshots and a probe series under ``directory``."""

    def __init__(
        self,
        directory,
        scenario_name: str,
        probe_names: Sequence[str] = (),
        csv: bool = True,
        pgm: Optional[Tuple[float, float]] = None,
    ):
        if pgm is not None and not pgm[0] < pgm[1]:
            raise ValueError(f"PGM range needs lo < hi, got {pgm[0]!r}:{pgm[1]!r}")
        self.directory = Path(directory)
        self.name = scenario_name
        self.csv = csv
        self.pgm = pgm
        self.probe_names = list(probe_names)
        self.written: list[Path] = []
        self._probe_fh = None
        self.directory.mkdir(parents=True, exist_ok=True)

    def snapshot(self, step_index: int, t: float, field: np.ndarray) -> None:
        frame = SnapshotFrame(t, field)
        if self.csv:
            path = self.directory / snapshot_filename(self.name, step_index, "csv")
            path.write_text(write_snapshot_csv(frame), encoding="utf-8")
            self.written.append(path)
        if self.pgm is not None:
            path = self.directory / snapshot_filename(self.name, step_index, "pgm")
            path.write_bytes(write_pgm(frame, *self.pgm))
            self.written.append(path)

    def probe(self, t: float, values: Sequence[float]) -> None:
        if self._probe_fh is None:
            path = self.directory / f"{self.name}_probes.csv"
            self._probe_fh = open(path, "w", encoding="utf-8", newline="\n")
            self._probe_fh.write(probe_header(self.probe_names) + "\n")
            self.written.append(path)
        self._probe_fh.write(write_probe_csv_row(t, values) + "\n")

    def close(self) -> None:
        if self._probe_fh is not None:
            self._probe_fh.close()
            self._probe_fh = None

    def __enter__(self) -> "DirectorySink":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


class MemorySink:
    """Keeps copies of everything emitted; handy in tests and notebooks."""

    def __init__(self) -> None:
        self.snapshots: list[tuple[int, float, np.ndarray]] = []
        self.probes: list[tuple[float, list[float]]] = []

    def snapshot(self, step_index: int, t: float, field: np.ndarray) -> None:
        self.snapshots.append((step_index, t, field.copy()))

    def probe(self, t: float, values: Sequence[float]) -> None:
        self.probes.append((t, list(values)))
