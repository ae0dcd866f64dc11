"""Command-line interface.

Commands: validate, chow, bezout, polygons, full-disc, disc, horn, cayley,
report, verify.  Matrix input is JSON ({"B": [[..],..]} or {"A": ..}); all
outputs are deterministic (canonical polynomial text/JSON, sorted keys).
Precondition violations exit 1 with the violated hypothesis named; failures
of theory-guaranteed identities exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import cancel
from .cayley import build_cayley, check_term_bound, mixed_resultant, product_formula_check
from .chow import bezout_chow_form, chow_form
from .discriminant import (
    a_discriminant,
    dual_full_discriminant,
    full_discriminant,
    horn_implicitize,
)
from .errors import (
    Codim2Error,
    ComputationCancelled,
    InternalIdentityError,
    InvalidConfiguration,
    ParseError,
)
from .lattice import (
    compute_stats,
    gale_dual_b,
    is_prime,
    relevant_lines,
    validate_a,
    validate_b,
)
from .poly import Poly, format_poly, poly_to_json
from .polygon import (
    boundary_point_count,
    build_PB,
    build_QB,
    chow_polygon,
    degree_DA,
    dehomog_newton,
    is_centrally_symmetric,
    lattice_point_count,
    mu_vector,
    newton_polygon_DA,
    nu_vector,
    polygon_svg,
    secondary_polygon,
)


@dataclass
class JobSpec:
    """One CLI invocation: a single command plus its options."""

    command: str
    input_path: str | None = None
    vars: list[str] | None = None
    pipeline: str = "both"
    bezout_path: str | None = None
    emit_json: str | None = None
    emit_svg: str | None = None
    outdir: str | None = None
    timeout_sec: float | None = None
    b_vectors: str | None = None
    c_vectors: str | None = None
    extra: dict = field(default_factory=dict)


def _load_matrix(spec: JobSpec):
    if not spec.input_path:
        raise InvalidConfiguration("--input is required for this command")
    try:
        with open(spec.input_path) as f:
            data = json.load(f)
    except OSError as exc:
        raise InvalidConfiguration(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not well-formed JSON: {exc}") from exc
    names = spec.vars or data.get("vars")
    if "B" in data:
        return validate_b(data["B"], names)
    if "A" in data:
        return gale_dual_b(validate_a(data["A"]), names)
    raise InvalidConfiguration('input JSON must contain a "B" or "A" matrix')


def _emit_poly(f: Poly, spec: JobSpec, label: str) -> None:
    if spec.emit_json:
        path = spec.emit_json
        if label:
            stem, dot, ext = path.rpartition(".")
            path = f"{stem}.{label}.{ext}" if dot else f"{path}.{label}"
        with open(path, "w") as out:
            json.dump(poly_to_json(f), out, separators=(",", ":"))
            out.write("\n")
        print(f"{label or 'polynomial'}: {f.num_terms} terms -> {path}")
    else:
        prefix = f"{label} = " if label else ""
        print(prefix + format_poly(f))


def _cmd_validate(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    st = compute_stats(b)
    lines = relevant_lines(b)
    print(f"rows: {b.n}")
    print(f"prime: {is_prime(b)}")
    print(f"degree: {st.degree}")
    print(f"beta: {st.beta[0]} {st.beta[1]}")
    print(f"pair multiplicities: {st.nu_total}")
    print(f"relevant lines: {len(lines)}")
    for line in lines:
        print(
            f"  direction {line.v} members "
            f"{[i + 1 for i in line.member_indices]} alpha {line.alpha} delta {line.delta}"
        )
    return 0


def _cmd_chow(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    cf = chow_form(b)
    print(f"degree: {cf.degree}")
    print(f"terms: {cf.poly.num_terms}")
    if spec.bezout_path:
        with open(spec.bezout_path) as f:
            monos = json.load(f)["monomials"]
        bz = bezout_chow_form(b, monos)
        agree = bz.poly == cf.poly
        print(f"bezout-agrees: {agree}")
        if not agree:
            raise InternalIdentityError("determinantal route disagrees with the resultant route")
    _emit_poly(cf.poly, spec, "chow")
    return 0


def _cmd_bezout(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    if not spec.bezout_path:
        raise InvalidConfiguration("--bezout with the 2x3 monomial presentation is required")
    with open(spec.bezout_path) as f:
        monos = json.load(f)["monomials"]
    bz = bezout_chow_form(b, monos)
    print(f"degree: {bz.degree}")
    print(f"terms: {bz.poly.num_terms}")
    _emit_poly(bz.poly, spec, "chow")
    return 0


def _cmd_polygons(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    p = build_PB(b)
    data = {
        "edge_polygon": [list(v) for v in p.vertices],
        "mu": list(mu_vector(b, p)),
        "chow_polygon": [list(v) for v in chow_polygon(b)],
        "secondary_polygon": [list(v) for v in secondary_polygon(b)],
        "lattice_points": lattice_point_count(p),
        "boundary_points": boundary_point_count(p),
        "centrally_symmetric": is_centrally_symmetric(b),
    }
    polys = {"edge_polygon": p}
    if all(r != (0, 0) for r in b.rows):
        q = build_QB(b)
        polys["collapsed_polygon"] = q
        polys["curve_newton_polygon"] = dehomog_newton(b)
        data["collapsed_polygon"] = [list(v) for v in q.vertices]
        data["nu"] = list(nu_vector(b, q))
        data["discriminant_newton_polygon"] = [
            list(v) for v in newton_polygon_DA(b)
        ]
        data["discriminant_degree"] = degree_DA(b)
        data["curve_newton_polygon"] = [
            list(v) for v in polys["curve_newton_polygon"].vertices
        ]
    text = json.dumps(data, indent=1, sort_keys=True)
    if spec.emit_json:
        with open(spec.emit_json, "w") as f:
            f.write(text + "\n")
        print(f"polygons -> {spec.emit_json}")
    else:
        print(text)
    if spec.emit_svg:
        import os

        os.makedirs(spec.emit_svg, exist_ok=True)
        for name, poly in polys.items():
            path = os.path.join(spec.emit_svg, f"{name}.svg")
            with open(path, "w") as f:
                f.write(polygon_svg(poly))
            print(f"svg -> {path}")
    return 0


def _cmd_full_disc(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    dual = dual_full_discriminant(b)
    _emit_poly(dual, spec, "dual_full_discriminant")
    if is_prime(b):
        full = full_discriminant(b)
        _emit_poly(full, spec, "full_discriminant")
    else:
        print("full_discriminant: skipped (no Gale dual; rows do not span the lattice)")
    return 0


def _cmd_disc(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    bundle = a_discriminant(b)
    if spec.pipeline in ("horn", "both"):
        horn_implicitize(b, bundle)  # raises if the pipelines disagree
        print("pipelines: residual and horn agree")
    print(f"discriminant degree: {bundle.d_a.total_degree()}")
    print(f"discriminant terms: {bundle.d_a.num_terms}")
    if spec.emit_json:
        payload = {
            "vars": list(b.var_names),
            "discriminant": poly_to_json(bundle.d_a),
            "full_discriminant": poly_to_json(bundle.e_full),
            "dual_full_discriminant": poly_to_json(bundle.e_dual),
            "facets": [
                {
                    "v": list(line.v),
                    "delta": delta,
                    "alpha": line.alpha,
                    "members": [i + 1 for i in line.member_indices],
                    "binomial": poly_to_json(dv),
                }
                for line, dv, delta in bundle.facets
            ],
            "nu": str(bundle.nu),
            "u": list(bundle.u),
            "nu_prime": str(bundle.nu_prime),
            "u_prime": list(bundle.u_prime),
        }
        with open(spec.emit_json, "w") as f:
            json.dump(payload, f, indent=1, sort_keys=True)
            f.write("\n")
        print(f"bundle -> {spec.emit_json}")
    else:
        print("discriminant = " + format_poly(bundle.d_a))
    return 0


def _cmd_horn(spec: JobSpec) -> int:
    b = _load_matrix(spec)
    hc = horn_implicitize(b)
    for ell in range(2):
        num = " * ".join(
            f"({v[0]}{v[1]:+d}t)^{e}" for v, e in hc.numerators[ell]
        ) or "1"
        den = " * ".join(
            f"({v[0]}{v[1]:+d}t)^{e}" for v, e in hc.denominators[ell]
        ) or "1"
        print(f"w{ell + 1}(t) = [{num}] / [{den}]")
    print("curve: " + format_poly(hc.implicit))
    if spec.emit_json:
        with open(spec.emit_json, "w") as f:
            json.dump(poly_to_json(hc.implicit), f, separators=(",", ":"))
            f.write("\n")
        print(f"curve -> {spec.emit_json}")
    return 0


def _parse_vectors(text: str) -> list[tuple[int, int]]:
    # accepts "(1,2);(3,4)" or "1,2;3,4"
    out = []
    for chunk in text.replace("(", "").replace(")", "").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InvalidConfiguration(f"bad planar vector {chunk!r}")
        out.append((int(parts[0]), int(parts[1])))
    return out


def _cmd_cayley(spec: JobSpec) -> int:
    if spec.input_path:
        with open(spec.input_path) as f:
            data = json.load(f)
        bs, cs = data["b"], data["c"]
    else:
        if not (spec.b_vectors and spec.c_vectors):
            raise InvalidConfiguration("provide --input or both --b and --c")
        bs = _parse_vectors(spec.b_vectors)
        cs = _parse_vectors(spec.c_vectors)
    cfg = build_cayley(bs, cs)
    print(f"Gamma: {cfg.gamma}")
    for line in cfg.system.describe():
        print("  " + line)
    res = mixed_resultant(cfg)
    bound = check_term_bound(cfg, res)
    print(
        f"resultant: {bound['terms']} terms (bound {bound['bound']}, "
        f"triangle points {bound['triangle_points']})"
    )
    pf = product_formula_check(cfg, resultant=res)
    print(
        f"product formula: max relative deviation "
        f"{pf['max_relative_deviation']:.2e} over {pf['trials']} trials"
    )
    _emit_poly(res, spec, "resultant")
    return 0


def _cmd_report(spec: JobSpec) -> int:
    from .report import write_report

    b = _load_matrix(spec)
    outdir = spec.outdir or "codim2-report"
    for path in write_report(b, outdir):
        print(f"wrote {path}")
    return 0


def _cmd_verify(spec: JobSpec) -> int:
    from .verify import run_all

    results = run_all()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name.ljust(width)}  {r.detail}")
        failed += not r.ok
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if not failed else 2


_COMMANDS = {
    "validate": _cmd_validate,
    "chow": _cmd_chow,
    "bezout": _cmd_bezout,
    "polygons": _cmd_polygons,
    "full-disc": _cmd_full_disc,
    "disc": _cmd_disc,
    "horn": _cmd_horn,
    "cayley": _cmd_cayley,
    "report": _cmd_report,
    "verify": _cmd_verify,
}


def run(spec: JobSpec) -> int:
    """Execute one job; returns the process exit status."""
    handler = _COMMANDS.get(spec.command)
    if handler is None:
        raise InvalidConfiguration(f"unknown command {spec.command!r}")
    with cancel.deadline(spec.timeout_sec):
        return handler(spec)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codim2",
        description="Exact Chow forms, discriminants and sparse resultants "
        "of codimension-2 toric presentations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("validate", "check a matrix and print its invariants"),
        ("chow", "compute the Chow form (optionally cross-check --bezout)"),
        ("bezout", "compute the Chow form from a 2x3 monomial presentation"),
        ("polygons", "emit all lattice polygons and affine images"),
        ("full-disc", "compute the dual full discriminant and full discriminant"),
        ("disc", "compute the discriminant bundle"),
        ("horn", "implicitize the discriminant curve parametrization"),
        ("cayley", "build a Cayley system and its sparse resultant"),
        ("report", "write summary.tsv plus polygon figures to a directory"),
        ("verify", "replay all built-in worked examples"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", dest="input_path", help="matrix JSON file")
        p.add_argument("--vars", nargs="+", help="variable names, one per row")
        p.add_argument(
            "--pipeline",
            choices=("residual", "horn", "both"),
            default="both",
            help="which discriminant pipelines to run",
        )
        p.add_argument("--bezout", dest="bezout_path", help="2x3 presentation JSON")
        p.add_argument("--emit-json", dest="emit_json", help="write polynomial JSON here")
        p.add_argument("--emit-svg", dest="emit_svg", help="directory for SVG output")
        p.add_argument("--outdir", help="report output directory")
        p.add_argument("--timeout-sec", dest="timeout_sec", type=float)
        if name == "cayley":
            p.add_argument("--b", dest="b_vectors", help='binomial vectors, e.g. "(1,1);(2,-1)"')
            p.add_argument("--c", dest="c_vectors", help='trinomial vectors, e.g. "(1,0);(0,1)"')
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = JobSpec(
        command=args.command,
        input_path=args.input_path,
        vars=args.vars,
        pipeline=args.pipeline,
        bezout_path=args.bezout_path,
        emit_json=args.emit_json,
        emit_svg=args.emit_svg,
        outdir=args.outdir,
        timeout_sec=args.timeout_sec,
        b_vectors=getattr(args, "b_vectors", None),
        c_vectors=getattr(args, "c_vectors", None),
    )
    try:
        return run(spec)
    except ComputationCancelled as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvalidConfiguration, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalIdentityError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except Codim2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
