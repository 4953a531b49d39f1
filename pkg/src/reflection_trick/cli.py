"""Command-line front end.

Every command prints (or writes) one JSON report carrying the input hash,
the configuration, the seed and the tool version.  Exit codes: 0 ok,
1 certificate failure, 2 usage or input error, 3 guard exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import __version__
from .complex_core import (
    barycentric_subdivision,
    empty_squares,
    homology,
    is_flag,
    is_flag_no_square,
    make_flag_no_square,
    non_flag_cliques,
)
from .complex_core.io import complex_from_json, complex_to_json, format_label
from .complex_core.standard import builtin
from .coxeter import (
    NerveGraph,
    ball_csv,
    commutator_index,
    enumerate_ball,
    growth_series,
    is_hyperbolic,
    multiply,
    sphere_sizes,
    torsion_scan,
    z2_witness,
)
from .davis import (
    boundary_json,
    build_chamber,
    build_quotient_complex,
    build_truncation,
    h1_injectivity,
    orbifold_euler,
    quotient_euler,
    truncation_report,
)
from .errors import ComplexError, GuardExceeded, SubdivisionFailed, WordError
from .obstruction import (
    STANDARD_B,
    STANDARD_G,
    AdjunctionInput,
    LegendrianData,
    ObstructionError,
    adjunction_genus_bound,
    chern_evaluation,
    distinguishing_report,
    family_claim_report,
)

EXIT_OK, EXIT_CERT, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_input(source: str):
    """``builtin:NAME`` or a path to complex JSON; returns (complex, hash)."""
    if source.startswith("builtin:"):
        K = builtin(source.split(":", 1)[1])
        raw = json.dumps(complex_to_json(K), sort_keys=True).encode()
    else:
        path = Path(source)
        if not path.is_file():
            raise InputError(f"no such input file: {source}")
        raw = path.read_bytes()
        try:
            data = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InputError(f"{source}: invalid JSON ({exc})") from None
        K = complex_from_json(data)
    return K, hashlib.sha256(raw).hexdigest()


def _labels(xs) -> list:
    return [format_label(x) for x in xs]


# -- commands -------------------------------------------------------------

def cmd_check(args, K):
    squares = empty_squares(K)
    flag = is_flag(K)
    result = {
        "f_vector": list(K.f_vector),
        "flag": flag,
        "flag_no_square": flag and not squares,
        "empty_squares": [_labels(s) for s in squares],
        "non_flag_cliques": [_labels(K.label(c)) for c in non_flag_cliques(K)],
        "hyperbolic": is_hyperbolic(K),
    }
    return result, EXIT_OK, {}


def cmd_subdivide(args, K):
    sd = barycentric_subdivision(K)
    result = {
        "input_f_vector": list(K.f_vector),
        "barycentric": {"f_vector": list(sd.f_vector), "flag": is_flag(sd)},
        "max_rounds": args.max_rounds,
    }
    extras = {"barycentric.json": _dump(complex_to_json(sd))}
    try:
        L = make_flag_no_square(K, max_rounds=args.max_rounds, seed=args.seed)
    except SubdivisionFailed as exc:
        result["flag_no_square"] = {"status": "failed", "reason": str(exc)}
        return result, EXIT_CERT, extras
    before, after = homology(K), homology(L)
    result["flag_no_square"] = {
        "status": "ok",
        "f_vector": list(L.f_vector),
        "verified": is_flag_no_square(L),
        "homology_preserved": before == after,
        "homology": after.to_json(),
    }
    extras["flag_no_square.json"] = _dump(complex_to_json(L))
    ok = result["flag_no_square"]["verified"] and result["flag_no_square"]["homology_preserved"]
    return result, EXIT_OK if ok else EXIT_CERT, extras


def cmd_group(args, K):
    G = NerveGraph.from_complex(K)
    ball = enumerate_ball(G, args.radius, max_elements=args.max_elements)
    sizes = sphere_sizes(ball)
    predicted = growth_series(G, len(sizes))
    rng = random.Random(args.seed)
    assoc_ok = True
    for _ in range(min(200, len(ball) ** 3)):
        a, b, c = (rng.choice(ball) for _ in range(3))
        assoc_ok &= multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    tors = torsion_scan(G, max(args.radius, 1), "commutator", max_elements=args.max_elements)
    witness = z2_witness(G)
    result = {
        "generators": _labels(G.generators),
        "radius": args.radius,
        "ball_size": len(ball),
        "sphere_sizes": sizes,
        "growth_series": predicted,
        "growth_matches": sizes == predicted,
        "associativity_sample_ok": assoc_ok,
        "hyperbolic": witness is None,
        "z2_witness": None if witness is None else [str(w) for w in witness],
        "commutator_index": commutator_index(G),
        "torsion_scan": {
            "subgroup": "commutator",
            "radius_certified": max(args.radius, 1),
            "violations": [str(w) for w in tors],
        },
    }
    ok = result["growth_matches"] and assoc_ok and not tors
    return result, EXIT_OK if ok else EXIT_CERT, {"ball.csv": ball_csv(ball)}


def cmd_davis(args, K):
    if args.tiles > args.max_tiles:
        raise GuardExceeded("tile", args.max_tiles, args.tiles)
    chamber = build_chamber(K)
    tc = build_truncation(chamber, args.tiles, max_tiles=args.max_tiles, max_cells=args.max_cells)
    report = truncation_report(tc)
    inj = h1_injectivity(tc)
    eu = orbifold_euler(chamber)
    report.update(
        chamber_cells=list(chamber.cone.f_vector),
        orbifold_euler=str(eu),
        h1_injective=all(inj),
        euler_formula_ok=all(e == k - (k - 1) for k, e in enumerate(report["euler_prefixes"], start=1)),
    )
    ok = (report["adjacency_connected"] and report["signs_alternate"]
          and report["adjacency_matches_cells"] and report["attach_regions_match_descents"]
          and "failed" not in report["disk_certificates"] and report["h1_injective"])
    extras = {
        "tiles.dot": tc.to_dot(),
        "tiles.json": _dump(tc.to_json()),
        "boundary.json": _dump(boundary_json(tc.complex)),
    }
    return report, EXIT_OK if ok else EXIT_CERT, extras


def cmd_quotient(args, K):
    chamber = build_chamber(K)
    q = build_quotient_complex(chamber, max_cells=args.max_cells)
    result = q.to_json()
    result["orbifold_euler"] = str(orbifold_euler(chamber))
    result["index"] = 2 ** K.n_vertices
    ok = q.euler == q.expected_euler == quotient_euler(chamber)
    return result, EXIT_OK if ok else EXIT_CERT, {"quotient_boundary.json": _dump(boundary_json(q.tiles.complex))}


def cmd_homology(args, K):
    prof = homology(K)
    result = {"f_vector": list(K.f_vector), "euler": prof.euler_characteristic,
              "homology": prof.to_json()}
    ok = prof.euler_characteristic == sum((-1) ** k * n for k, n in enumerate(K.f_vector))
    return result, EXIT_OK if ok else EXIT_CERT, {}


def cmd_adjunction(args, _K):
    if args.legendrian:
        try:
            data = json.loads(Path(args.legendrian).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.legendrian}: {exc}") from None
        if not isinstance(data, dict) or "G" not in data or "B" not in data:
            raise InputError('legendrian JSON needs "G" and "B" entries')
        G = LegendrianData.from_json(data["G"], "G")
        B = LegendrianData.from_json(data["B"], "B")
    else:
        G, B = STANDARD_G, STANDARD_B
    c1 = chern_evaluation(G, B)
    bounds = {str(k): adjunction_genus_bound(AdjunctionInput(c1, args.self_int, k)) for k in args.k}
    result = {
        "curves": [G.to_json(), B.to_json()],
        "c1_eval": c1,
        "self_int": args.self_int,
        "genus_bounds": bounds,
        "profiles": distinguishing_report(),
    }
    if args.family_m is not None:
        result["family"] = family_claim_report(args.family_m)
    return result, EXIT_OK, {}


COMMANDS = {
    "check": cmd_check,
    "subdivide": cmd_subdivide,
    "group": cmd_group,
    "davis": cmd_davis,
    "quotient": cmd_quotient,
    "homology": cmd_homology,
    "adjunction": cmd_adjunction,
}


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflection-trick", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=_positive, default=1,
                        help="accepted for interface stability; work is single-threaded")
    common.add_argument("--output-dir", default=None,
                        help="write report.json and side files here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, needs_input=True):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if needs_input:
            sp.add_argument("input", help="complex JSON path or builtin:NAME")
        return sp

    add("check", "flag / flag-no-square / empty squares")
    sp = add("subdivide", "barycentric and flag-no-square subdivision")
    sp.add_argument("--max-rounds", type=_positive, default=8)
    sp = add("group", "ball, growth, hyperbolicity, torsion scan")
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--max-elements", type=_positive, default=200_000)
    sp = add("davis", "truncation build and certificates")
    sp.add_argument("--tiles", type=_positive, default=16)
    sp.add_argument("--max-tiles", type=_positive, default=4096)
    sp.add_argument("--max-cells", type=_positive, default=2_000_000)
    sp = add("quotient", "explicit quotient by the commutator subgroup")
    sp.add_argument("--max-cells", type=_positive, default=200_000)
    add("homology", "integral homology of the input")
    sp = add("adjunction", "Chern evaluation and genus bounds", needs_input=False)
    sp.add_argument("--legendrian", default=None, help='JSON {"G": {"tb", "r"}, "B": {...}}')
    sp.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    sp.add_argument("--self-int", type=int, default=0)
    sp.add_argument("--family-m", type=int, default=None)
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("output_dir",)}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "radius", 0) < 0:
        print("error: radius must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    report = {"command": args.command, "version": __version__, "seed": args.seed, "config": _config(args)}
    try:
        if hasattr(args, "input"):
            K, digest = load_input(args.input)
            report["input"] = {"source": args.input, "sha256": digest}
        else:
            K = None
            src = args.legendrian
            digest = hashlib.sha256(Path(src).read_bytes()).hexdigest() if src and Path(src).is_file() else None
            report["input"] = {"source": src or "builtin", "sha256": digest}
        result, code, extras = COMMANDS[args.command](args, K)
    except GuardExceeded as exc:
        report.update(status="guard_exceeded", error=str(exc))
        _emit(args, report, {}, stdout)
        return EXIT_GUARD
    except (InputError, ComplexError, WordError, ObstructionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report["result"] = result
    report["status"] = "ok" if code == EXIT_OK else "certificate_failure"
    _emit(args, report, extras, stdout)
    return code


def _emit(args, report, extras, stdout):
    text = _dump(report)
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text, encoding="utf-8")
        for name, body in extras.items():
            (out / name).write_text(body, encoding="utf-8")
    else:
        stdout.write(text)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
