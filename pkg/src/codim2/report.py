"""Report rendering: a delimited invariant summary plus polygon figures.

The report directory receives summary.tsv (tab-separated key/value rows), a
matplotlib PNG per polygon, and the matching SVG files.  Rendering uses the
Agg backend so reports work headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .discriminant import a_discriminant
from .errors import Codim2Error
from .lattice import BConfig, compute_stats, is_prime, relevant_lines
from .polygon import (
    LatticePolygon,
    boundary_point_count,
    build_PB,
    build_QB,
    degree_DA,
    dehomog_newton,
    is_centrally_symmetric,
    lattice_point_count,
    polygon_svg,
)


def draw_polygon(p: LatticePolygon, title: str, path: str) -> None:
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    pad = 1
    ax.set_xlim(min(xs) - pad, max(xs) + pad)
    ax.set_ylim(min(ys) - pad, max(ys) + pad)
    ax.set_xticks(range(min(xs) - pad, max(xs) + pad + 1))
    ax.set_yticks(range(min(ys) - pad, max(ys) + pad + 1))
    ax.grid(True, which="both", color="0.85", linewidth=0.6)
    ax.set_aspect("equal")
    if p.is_point:
        ax.plot(xs, ys, "ko")
    else:
        loop_x = xs + [xs[0]]
        loop_y = ys + [ys[0]]
        ax.fill(loop_x, loop_y, alpha=0.25)
        ax.plot(loop_x, loop_y, "k-", linewidth=1.5)
        ax.plot(xs, ys, "ko", markersize=4)
        for k in range(len(p.vertices)):
            a = p.vertices[k]
            b = p.vertices[(k + 1) % len(p.vertices)]
            label = (
                ",".join(str(i + 1) for i in p.edge_rows[k]) if p.edge_rows else ""
            )
            if label:
                ax.annotate(
                    label,
                    ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2),
                    color="firebrick",
                    fontsize=9,
                    ha="center",
                )
        for pt in p.lattice_points():
            ax.plot(pt[0], pt[1], ".", color="0.4", markersize=3)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def write_report(b: BConfig, outdir: str, with_discriminant: bool = True) -> list[str]:
    """Emit summary.tsv and the polygon figures; returns the written paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    st = compute_stats(b)
    lines = relevant_lines(b)
    rows: list[tuple[str, object]] = [
        ("rows", b.n),
        ("variables", " ".join(b.var_names)),
        ("prime", is_prime(b)),
        ("degree", st.degree),
        ("beta1", st.beta[0]),
        ("beta2", st.beta[1]),
        ("pair_multiplicity_sum", st.nu_total),
        ("chow_degree", 2 * st.degree),
        ("relevant_lines", len(lines)),
        ("centrally_symmetric", is_centrally_symmetric(b)),
        ("lattice_points", lattice_point_count(b)),
        ("boundary_points", boundary_point_count(b)),
    ]
    p = build_PB(b)
    figures = [("edge_polygon", p)]
    nonzero = all(r != (0, 0) for r in b.rows)
    if nonzero:
        rows.append(("discriminant_degree", degree_DA(b)))
        figures.append(("collapsed_polygon", build_QB(b)))
        figures.append(("curve_newton_polygon", dehomog_newton(b)))
    if with_discriminant and nonzero and is_prime(b):
        try:
            bundle = a_discriminant(b)
            rows.append(("discriminant_terms", bundle.d_a.num_terms))
            rows.append(("full_discriminant_terms", bundle.e_full.num_terms))
            rows.append(
                ("facet_binomials", " ".join(f"{l.v}^{d}" for l, _, d in bundle.facets))
            )
        except Codim2Error as exc:
            rows.append(("discriminant_error", str(exc)))
    tsv = os.path.join(outdir, "summary.tsv")
    with open(tsv, "w") as f:
        f.write("quantity\tvalue\n")
        for k, v in rows:
            f.write(f"{k}\t{v}\n")
    written.append(tsv)
    for name, poly in figures:
        png = os.path.join(outdir, f"{name}.png")
        draw_polygon(poly, name.replace("_", " "), png)
        written.append(png)
        svg = os.path.join(outdir, f"{name}.svg")
        with open(svg, "w") as f:
            f.write(polygon_svg(poly))
        written.append(svg)
    return written
