"""Figures for reports: the face lattice and, in rank 2, the cone with its Hilbert basis.

Uses the Agg backend so it works headless; every function writes a PNG and
returns its path.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .faces import enumerate_faces  # noqa: E402
from .monoid import AffineMonoid, saturation_generators  # noqa: E402

# fixed metadata keeps repeated runs byte-identical
_META = {"Software": None}


def face_lattice_figure(Q: AffineMonoid, path: str | Path, title: str = "") -> Path:
    """Hasse diagram of the face lattice, one row per face dimension."""
    faces = enumerate_faces(Q)
    rows: dict[int, list] = {}
    for f in faces:
        rows.setdefault(f.dimension, []).append(f)
    pos = {}
    for d, fs in rows.items():
        for k, f in enumerate(fs):
            pos[f.indices] = ((k + 1) / (len(fs) + 1), d)
    fig, ax = plt.subplots(figsize=(5, 1.4 + 1.1 * len(rows)))
    for f in faces:
        for g in faces:
            # cover relation: g sits directly above f
            if set(f.indices) < set(g.indices) and g.dimension == f.dimension + 1:
                (x0, y0), (x1, y1) = pos[f.indices], pos[g.indices]
                ax.plot([x0, x1], [y0, y1], color="0.6", lw=1, zorder=1)
    for f in faces:
        x, y = pos[f.indices]
        ax.scatter([x], [y], s=60, color="tab:blue", zorder=2)
        label = "{" + ",".join(str(i) for i in f.indices) + "}"
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(6, 4), fontsize=8)
    ax.set_ylabel("face dimension")
    ax.set_yticks(sorted(rows))
    ax.set_xticks([])
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.5, max(rows, default=0) + 0.5)
    ax.set_title(title or f"{len(faces)} faces")
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return path


def cone_figure(Q: AffineMonoid, path: str | Path, title: str = "") -> Path:
    """Generators, Hilbert basis and lattice points of a monoid in Z^2."""
    if Q.ambient_rank != 2:
        raise ValueError("cone figures are drawn only for monoids in Z^2")
    gens, hb, units = saturation_generators(Q)
    span = max([abs(a) for g in Q.generators + gens for a in g] + [1]) + 1
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    pts = [(a, b) for a in range(-span, span + 1) for b in range(-span, span + 1)]
    inside = [p for p in pts if all(n[0] * p[0] + n[1] * p[1] >= 0 for n in Q.cone.normals) and Q.cone.in_span(p)]
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=4, color="0.85")
    ax.scatter([p[0] for p in inside], [p[1] for p in inside], s=10, color="0.55", label="cone points")
    boundary = sorted({i for f in enumerate_faces(Q) if not f.is_whole for i in f.indices})
    for r in (Q.generators[i] for i in boundary):
        ax.plot([0, r[0] * span], [0, r[1] * span], color="tab:green", lw=1)
    ax.scatter([g[0] for g in Q.generators], [g[1] for g in Q.generators], s=70, facecolors="none", edgecolors="tab:blue", label="generators")
    ax.scatter([g[0] for g in gens], [g[1] for g in gens], s=20, color="tab:red", label="saturation")
    ax.set_xlim(-span, span)
    ax.set_ylim(-span, span)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.3", lw=0.5)
    ax.axvline(0, color="0.3", lw=0.5)
    ax.legend(loc="lower left", fontsize=7)
    ax.set_title(title or "cone and Hilbert basis")
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return path


def render_monoid(Q: AffineMonoid, directory: str | Path, stem: str) -> list[str]:
    """Draw every figure that applies to ``Q``; returns the file names written."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = [face_lattice_figure(Q, d / f"{stem}_faces.png", f"{stem}: face lattice").name]
    if Q.ambient_rank == 2:
        out.append(cone_figure(Q, d / f"{stem}_cone.png", f"{stem}: cone").name)
    return out
