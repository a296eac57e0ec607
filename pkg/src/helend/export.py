"""Serialization: surface meshes (OBJ), level curves (CSV), descriptors (JSON).

Floating-point text output uses the shortest round-trip decimal (repr), so
descriptor round-trips are field-exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .descriptor import EndDescriptor
from .errors import DomainError
from .geometry import LevelCurve
from .weierstrass import immersion, immersion_along_line


@dataclass(frozen=True)
class SurfaceMesh:
    """Grid-sampled immersion with triangulated connectivity.

    Vertices are row-major by alpha then t; faces are 1-indexed triples,
    counterclockwise as seen from the side the Gauss-map normal points to.
    """

    nt: int
    nalpha: int
    vertices: np.ndarray   # (nt*nalpha, 3)
    faces: np.ndarray      # (m, 3), 1-indexed

    def __post_init__(self):
        if len(self.vertices) != self.nt * self.nalpha:
            raise ValueError("vertex count must equal nt * nalpha")
        if len(self.faces) and (self.faces.min() < 1
                                or self.faces.max() > len(self.vertices)):
            raise ValueError("face indices out of range")


def _rect_min_radius(t0, t1, a0, a1) -> float:
    """Distance from the origin to the rectangle [t0,t1] x [a0,a1]."""
    dx = max(t0, 0.0, -t1)
    dy = max(a0, 0.0, -a1)
    return math.hypot(dx, dy)


def mesh_end(d: EndDescriptor, t_range: tuple[float, float],
             alpha_range: tuple[float, float], nt: int, nalpha: int,
             exclude_disk: float | None = None,
             tol: float = 1e-9) -> SurfaceMesh:
    """Grid mesh of the immersion over a rectangle minus the excluded disk.

    Cells intersecting |z| < exclude_disk are dropped; their unused vertices
    are filled with the axis point (0, 0, Im z) so every vertex stays finite.
    """
    if exclude_disk is None:
        exclude_disk = d.rmin
    if exclude_disk < d.rmin:
        raise DomainError(
            f"exclude_disk {exclude_disk:g} must be at least rmin {d.rmin:g}")
    if nt < 2 or nalpha < 2:
        raise ValueError("grid must be at least 2 x 2")
    ts = np.linspace(t_range[0], t_range[1], nt)
    alphas = np.linspace(alpha_range[0], alpha_range[1], nalpha)

    vertices = np.zeros((nalpha * nt, 3))
    for j, alpha in enumerate(alphas):
        zs = ts + 1j * alpha
        ok = np.abs(zs) >= exclude_disk * (1 - 1e-12)
        row = np.empty((nt, 3))
        row[:, 0] = 0.0
        row[:, 1] = 0.0
        row[:, 2] = alpha  # placeholder for vertices inside the excluded disk
        # integrate over maximal evaluable runs of the row
        i = 0
        while i < nt:
            if not ok[i]:
                i += 1
                continue
            k = i
            while k + 1 < nt and ok[k + 1]:
                k += 1
            start = immersion(d, complex(zs[i]), tol=tol)
            if k > i:
                _, pos = immersion_along_line(d, complex(zs[i]), complex(zs[k]),
                                              k - i + 1, start.position)
                row[i:k + 1] = pos
            else:
                row[i] = start.position
            i = k + 1
        vertices[j * nt:(j + 1) * nt] = row

    faces = []
    for j in range(nalpha - 1):
        a0, a1 = sorted((alphas[j], alphas[j + 1]))
        for i in range(nt - 1):
            t0, t1 = sorted((ts[i], ts[i + 1]))
            if _rect_min_radius(t0, t1, a0, a1) < exclude_disk:
                continue
            v1 = j * nt + i + 1          # 1-indexed
            v2 = v1 + 1
            v3 = v1 + nt
            v4 = v2 + nt
            faces.append((v1, v2, v4))
            faces.append((v1, v4, v3))
    faces = (np.array(faces, dtype=np.intp) if faces
             else np.empty((0, 3), dtype=np.intp))
    if not np.all(np.isfinite(vertices)):
        raise DomainError("mesh produced non-finite vertices")
    return SurfaceMesh(nt=nt, nalpha=nalpha, vertices=vertices, faces=faces)


# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def write_obj(mesh: SurfaceMesh, path) -> None:
    """OBJ: 'v x y z' lines then 'f i j k' lines (1-indexed)."""
    with open(path, "w") as fh:
        for v in mesh.vertices:
            fh.write(f"v {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}\n")
        for f in mesh.faces:
            fh.write(f"f {f[0]} {f[1]} {f[2]}\n")


def write_curve_csv(curve: LevelCurve, path) -> None:
    """CSV with header t,x1,x2,x3,kappa and one row per sample."""
    with open(path, "w") as fh:
        fh.write("t,x1,x2,x3,kappa\n")
        for t, p, x3, k in zip(curve.ts, curve.pts, curve.x3, curve.kappa):
            fh.write(f"{_fmt(t)},{_fmt(p.real)},{_fmt(p.imag)},"
                     f"{_fmt(x3)},{_fmt(k)}\n")


# ---------------------------------------------------------------------------
# descriptor JSON
# ---------------------------------------------------------------------------

_FIELDS = {
    "c0": (int, float),
    "coefficients": list,
    "phase": (int, float),
    "modulus": (int, float),
    "rmin": (int, float),
}


def write_descriptor(d: EndDescriptor, path) -> None:
    payload = {"c0": d.c0, "coefficients": list(d.coefficients),
               "phase": d.phase, "modulus": d.modulus, "rmin": d.rmin}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_descriptor(path) -> EndDescriptor:
    """Read a descriptor JSON file, validating field names and types."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON at line {exc.lineno}, "
                             f"column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: expected a JSON object at top level")
    unknown = set(raw) - set(_FIELDS)
    if unknown:
        raise ValueError(f"{path}: unknown field(s) {sorted(unknown)}")
    missing = set(_FIELDS) - set(raw)
    if missing:
        raise ValueError(f"{path}: missing field(s) {sorted(missing)}")
    for name, types in _FIELDS.items():
        if not isinstance(raw[name], types):
            raise ValueError(f"{path}: field '{name}' has wrong type "
                             f"{type(raw[name]).__name__}")
    coeffs = raw["coefficients"]
    if not all(isinstance(c, (int, float)) for c in coeffs):
        raise ValueError(f"{path}: field 'coefficients' must hold numbers")
    try:
        return EndDescriptor(c0=float(raw["c0"]),
                             coefficients=tuple(float(c) for c in coeffs),
                             phase=float(raw["phase"]),
                             modulus=float(raw["modulus"]),
                             rmin=float(raw["rmin"]))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc
