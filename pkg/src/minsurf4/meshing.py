"""Triangle meshes of immersed surface patches, with a deterministic
ASCII format: Wavefront-style v/f lines carrying the first three coordinates,
the fourth coordinate riding in a trailing comment and again in a `va`
attribute line per vertex.
"""

from __future__ import annotations

import hashlib
import math
import os
import warnings

from .errors import DomainError, IrregularData
from .domains import Annulus, PuncturedPlane
from .scalars import to_complex
from .weierstrass import _singular_locus, check_regularity, immerse

FLOAT_FMT = "%.17g"


class Mesh:
    __slots__ = ("vertices", "faces", "metadata")

    def __init__(self, vertices, faces, metadata=None):
        vertices = [tuple(float(c) for c in v) for v in vertices]
        for v in vertices:
            if len(v) != 4:
                raise DomainError("vertices carry four coordinates")
            if any(math.isnan(c) or math.isinf(c) for c in v):
                raise DomainError("non-finite vertex coordinate")
        faces = [tuple(int(i) for i in f) for f in faces]
        n = len(vertices)
        for f in faces:
            if len(f) != 3:
                raise DomainError("faces are triangles")
            if any(not 0 <= i < n for i in f):
                raise DomainError("face index out of range")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "metadata", dict(metadata or {}))

    def __setattr__(self, name, value):
        raise AttributeError("Mesh is immutable")


def mesh_text(mesh):
    lines = ["# minimal-surface mesh, 4 coordinates per vertex"]
    for key in sorted(mesh.metadata):
        lines.append(f"# {key}: {mesh.metadata[key]}")
    lines.append(f"# vertices: {len(mesh.vertices)}")
    lines.append(f"# faces: {len(mesh.faces)}")
    for v in mesh.vertices:
        x, y, z, w = (FLOAT_FMT % c for c in v)
        lines.append(f"v {x} {y} {z} # w {w}")
    for v in mesh.vertices:
        lines.append("va " + (FLOAT_FMT % v[3]))
    for f in mesh.faces:
        lines.append(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}")
    return "\n".join(lines) + "\n"


def write_mesh(mesh, path):
    """Atomic write; returns the sha256 of the written bytes."""
    text = mesh_text(mesh)
    data = text.encode("ascii")
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)
    return hashlib.sha256(data).hexdigest()


def mesh_hash(mesh):
    return hashlib.sha256(mesh_text(mesh).encode("ascii")).hexdigest()


# -- structured grids ---------------------------------------------------------------


def plane_grid(x_range, y_range, nx, ny):
    """Row-major rectangular grid, two triangles per cell."""
    if nx < 2 or ny < 2:
        raise DomainError("grid needs at least 2 points per side")
    x0, x1 = x_range
    y0, y1 = y_range
    points = []
    for j in range(ny):
        y = y0 + (y1 - y0) * j / (ny - 1)
        for i in range(nx):
            x = x0 + (x1 - x0) * i / (nx - 1)
            points.append(complex(x, y))
    faces = []
    for j in range(ny - 1):
        for i in range(nx - 1):
            a = j * nx + i
            b = a + 1
            c = a + nx
            d = c + 1
            faces.append((a, b, d))
            faces.append((a, d, c))
    return points, faces


def annulus_grid(r_lo, r_hi, n_r, n_theta, center=0j, theta_range=None):
    """Polar grid; the angular seam closes when theta_range is the full turn."""
    if not (0 < r_lo < r_hi):
        raise DomainError("need 0 < r_lo < r_hi")
    if n_r < 2 or n_theta < 3:
        raise DomainError("polar grid needs n_r >= 2, n_theta >= 3")
    closed = theta_range is None
    t0, t1 = (0.0, 2.0 * math.pi) if closed else theta_range
    cols = n_theta if closed else n_theta + 1
    c = to_complex(center)
    points = []
    for j in range(n_r):
        r = r_lo + (r_hi - r_lo) * j / (n_r - 1)
        for i in range(cols):
            th = t0 + (t1 - t0) * i / n_theta
            points.append(c + r * complex(math.cos(th), math.sin(th)))
    faces = []
    for j in range(n_r - 1):
        for i in range(n_theta if closed else n_theta):
            i2 = (i + 1) % cols if closed else i + 1
            a = j * cols + i
            b = j * cols + i2
            cc = (j + 1) * cols + i
            d = (j + 1) * cols + i2
            faces.append((a, b, d))
            faces.append((a, d, cc))
    return points, faces


def polar_patch(center, r_lo, r_hi, n_r, n_theta):
    """Annular patch around a puncture."""
    return annulus_grid(r_lo, r_hi, n_r, n_theta, center=center)


def export_mesh(p, domain, grid, base, tol=1e-9, metadata=None, path=None):
    """Immerse a structured grid and triangulate it.

    grid is (points, faces) from one of the builders. Irregular data is
    refused; grid points hitting a pole are skipped with a warning and their
    faces dropped.
    """
    reg = check_regularity(p, domain)
    if not reg.regular:
        bad = ", ".join(f"{z:.6g}" for z in reg.branch_points)
        raise IrregularData(f"forms share zeros inside the domain at: {bad}")
    points, faces = grid
    singular = _singular_locus(p, domain)
    alive = []
    index_map = {}
    skipped = 0
    for i, z in enumerate(points):
        if any(abs(z - s) <= 1e-8 * (1.0 + abs(s)) for s in singular):
            skipped += 1
            continue
        index_map[i] = len(alive)
        alive.append(z)
    if skipped:
        warnings.warn(f"skipped {skipped} grid points at poles", stacklevel=2)
    xs = immerse(p, domain, base, alive, tol=tol)
    new_faces = []
    for f in faces:
        if all(i in index_map for i in f):
            new_faces.append(tuple(index_map[i] for i in f))
    meta = dict(metadata or {})
    meta.setdefault("skipped-points", skipped)
    mesh = Mesh(xs, new_faces, meta)
    if path is not None:
        digest = write_mesh(mesh, path)
        mesh.metadata["written-sha256"] = digest
    return mesh
