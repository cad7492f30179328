"""Command-line interface: ``tpoly <command> [options]``."""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import catalog as cat
from .laurent import (
    LaurentPoly,
    NotTPolygon,
    algebraic_mutation,
    binomial_factor,
    parse_laurent,
    period_coefficients,
    solve_mmlp,
)
from .polygon import (
    FanoPolygon,
    MutationData,
    edge_data,
    is_t_polygon,
    mutate_polygon,
    mutation_graph,
    mutation_path,
    normal_form,
    normal_vector_index,
    singularity_content,
    validate_fano,
)
from .rootlattice import classify_boundary, make_i1n, r7_classes


class NoMatch(LookupError):
    pass


class UsageError(ValueError):
    pass


# -- input parsing -----------------------------------------------------------

_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_points(text: str) -> list[tuple[int, int]]:
    """Accept polygon JSON, a JSON list of pairs, or ``(x,y), (x,y), ...``."""
    text = text.strip()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        pts = [(int(a), int(b)) for a, b in _PAIR.findall(text)]
        if not pts:
            raise UsageError(f"cannot read lattice points from {text!r}")
        return pts
    if isinstance(data, dict):
        data = data.get("vertices")
    if not isinstance(data, list) or not all(isinstance(p, list) and len(p) == 2 for p in data):
        raise UsageError("polygon JSON must be {\"vertices\": [[x, y], ...]}")
    return [(int(p[0]), int(p[1])) for p in data]


def parse_polygon(text: str) -> FanoPolygon:
    return validate_fano(parse_points(text))


def looks_like_laurent(text: str) -> bool:
    text = text.strip()
    if text.startswith("{"):
        return '"terms"' in text
    return bool(re.search(r"[xy]", text))


def parse_poly_input(text: str) -> LaurentPoly:
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return LaurentPoly.from_json(json.loads(text))
    return parse_laurent(text)


def parse_pair(text: str) -> tuple[int, int]:
    parts = text.strip().strip("()").split(",")
    if len(parts) != 2:
        raise UsageError(f"expected a pair like 1,0 but got {text!r}")
    return int(parts[0]), int(parts[1])


# -- commands ----------------------------------------------------------------


@dataclass
class ClassReport:
    id: int
    polygon: FanoPolygon
    normal_form: FanoPolygon
    t_cones: int
    normal_index: int
    boundary_points: int
    mmlp: LaurentPoly
    fingerprint: tuple[Fraction, ...]
    witness: list | None
    witness_searched: bool

    def to_json(self) -> dict:
        return {
            "class": self.id,
            "polygon": self.polygon.to_json()["vertices"],
            "normal_form": self.normal_form.to_json()["vertices"],
            "invariants": {
                "t_cones": self.t_cones,
                "basket": [],
                "normal_index": self.normal_index,
                "boundary_points": self.boundary_points,
            },
            "mmlp": str(self.mmlp),
            "fingerprint": [str(c) for c in self.fingerprint],
            "witness": None if self.witness is None else [
                {"from": P.to_json()["vertices"], **m.to_json()} for P, m in self.witness
            ],
            "witness_status": self.witness_status,
        }

    @property
    def witness_status(self) -> str:
        if not self.witness_searched:
            return "skipped"
        return "not found within bounds" if self.witness is None else f"length {len(self.witness)}"

    def to_text(self) -> str:
        lines = [
            f"class {self.id}",
            f"polygon        {self.polygon}",
            f"normal form    {self.normal_form}",
            f"content        ({self.t_cones}, {{}})",
            f"normal index   {self.normal_index}",
            f"boundary pts   {self.boundary_points}",
            f"mmlp           {self.mmlp}",
            "period         " + ", ".join(str(c) for c in self.fingerprint),
            f"witness        {self.witness_status}",
        ]
        for P, m in self.witness or []:
            lines.append(f"  {P} --[{m.label()}]-->")
        return "\n".join(lines)


def cmd_classify(
    P: FanoPolygon,
    catalog: cat.Catalog | None = None,
    horizon: int = 8,
    depth: int = 3,
    max_nodes: int = 5000,
    witness_depth: int = 6,
) -> ClassReport:
    """Identify the mutation class of a T-polygon.

    The class id comes from the period fingerprint of the MMLP; a mutation
    chain to the catalog representative is searched for as a witness.
    ``max_nodes=0`` skips the witness search.
    """
    if horizon < 2:
        raise UsageError("horizon must be at least 2")
    if not is_t_polygon(P):
        raise NotTPolygon(f"{P} is not a T-polygon: basket {list(singularity_content(P).basket)}")
    catalog = catalog or cat.default_catalog()
    res = solve_mmlp(P, depth)
    fp = period_coefficients(res.poly, horizon, "pruned")
    id = cat.match_period(fp, catalog)
    if id is None:
        raise NoMatch(f"period {fp.as_ints()} matches no catalog entry")
    witness = None
    if max_nodes > 0:
        witness = mutation_path(P, catalog.get(id).polygon, max_nodes=max_nodes, max_depth=witness_depth)
    content = singularity_content(P)
    return ClassReport(
        id, P, normal_form(P), content.t_cones, normal_vector_index(P), len(P.boundary_points()),
        res.poly, fp.coefficients, witness, max_nodes > 0,
    )


def polygon_report(P: FanoPolygon) -> dict:
    content = singularity_content(P)
    return {
        "vertices": P.to_json()["vertices"],
        "t_cones": content.t_cones,
        "basket": [list(b) for b in content.basket],
        "t_polygon": is_t_polygon(P),
        "normal_index": normal_vector_index(P),
        "edges": [
            {"normal": list(e.normal), "height": e.height, "length": e.length,
             "t_count": e.t_count, "residue": e.residue}
            for e in edge_data(P)
        ],
    }


# -- driver ------------------------------------------------------------------


def _read_input(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.input is not None:
        with open(args.input) as fh:
            return fh.read()
    raise UsageError("give --input FILE or --expr TEXT")


def _emit(args, payload, text: str | None = None, dot: str | None = None):
    if args.format == "json":
        out = json.dumps(payload, indent=2)
    elif args.format == "dot":
        if dot is None:
            raise UsageError(f"{args.command} has no DOT output")
        out = dot
    else:
        out = text if text is not None else json.dumps(payload, indent=2)
    sys.stdout.write(out if out.endswith("\n") else out + "\n")


def _catalog(args) -> cat.Catalog:
    return cat.load_catalog(args.catalog) if args.catalog else cat.default_catalog()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE")
    common.add_argument("--expr", metavar="TEXT")
    common.add_argument("--horizon", type=int, default=8)
    common.add_argument("--depth", type=int, default=3)
    common.add_argument("--max-nodes", type=int, default=5000)
    common.add_argument("--format", choices=("json", "text", "dot"), default="text")
    common.add_argument("--catalog", metavar="FILE")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="tpoly", description="Mutations of Fano polygons and Laurent polynomials.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="identify the mutation class of a T-polygon")
    c.add_argument("--witness-depth", type=int, default=6)
    sub.add_parser("info", parents=[common], help="edge data and singularity content")
    sub.add_parser("period", parents=[common], help="period coefficients of a Laurent polynomial")
    m = sub.add_parser("mutate", parents=[common], help="mutate a polygon or a Laurent polynomial")
    m.add_argument("--v", required=True, help="covector, e.g. 0,-1")
    m.add_argument("--w", help="factor direction, e.g. 1,0")
    m.add_argument("--k", type=int, default=1)
    m.add_argument("--factor", help="explicit factor F for Laurent input, e.g. 1+x")
    sub.add_parser("mmlp", parents=[common], help="normalized maximally mutable Laurent polynomial")
    sub.add_parser("lattice-classify", parents=[common], help="classify an anticanonical cycle in I_{1,9}")
    r7 = sub.add_parser("r7-survey", parents=[common], help="sample r=7 cycles and count their classes")
    r7.add_argument("--samples", type=int, default=200)
    sub.add_parser("graph", parents=[common], help="mutation graph")
    sub.add_parser("validate-catalog", parents=[common], help="re-derive and cross-check the catalog")
    return p


def run(args) -> int:
    if args.horizon < 0 or args.max_nodes < 0 or args.depth < 0:
        raise UsageError("bounds must be nonnegative")
    if args.depth == 0 and args.command != "graph":
        raise UsageError("--depth must be positive")
    cmd = args.command
    if cmd == "classify":
        P = parse_polygon(_read_input(args))
        r = cmd_classify(P, _catalog(args), args.horizon, args.depth, args.max_nodes, args.witness_depth)
        _emit(args, r.to_json(), r.to_text())
    elif cmd == "info":
        P = parse_polygon(_read_input(args))
        rep = polygon_report(P)
        text = "\n".join(
            [f"polygon   {P}", f"content   ({rep['t_cones']}, {rep['basket']})",
             f"T-polygon {rep['t_polygon']}", f"index     {rep['normal_index']}"]
            + [f"edge normal={tuple(e['normal'])} h={e['height']} l={e['length']} a={e['t_count']} m={e['residue']}"
               for e in rep["edges"]]
        )
        _emit(args, rep, text)
    elif cmd == "period":
        f = parse_poly_input(_read_input(args))
        fp = period_coefficients(f, args.horizon, "pruned")
        coeffs = [str(c) for c in fp.coefficients]
        _emit(args, {"horizon": fp.horizon, "coefficients": coeffs}, ",".join(coeffs))
    elif cmd == "mutate":
        text = _read_input(args)
        v = parse_pair(args.v)
        if looks_like_laurent(text):
            f = parse_poly_input(text)
            if args.factor:
                F = parse_laurent(args.factor)
            elif args.w:
                F = binomial_factor(parse_pair(args.w), args.k)
            else:
                raise UsageError("give --w or --factor")
            g = algebraic_mutation(f, v, F)
            _emit(args, g.to_json(), str(g))
        else:
            if not args.w:
                raise UsageError("polygon mutation needs --w")
            P = parse_polygon(text)
            Q = mutate_polygon(P, MutationData(v, parse_pair(args.w), args.k))
            _emit(args, Q.to_json(), str(Q))
    elif cmd == "mmlp":
        P = parse_polygon(_read_input(args))
        res = solve_mmlp(P, args.depth)
        payload = {"mmlp": res.poly.to_json(), "text": str(res.poly), "dimension": res.dimension,
                   "unknowns": res.unknowns, "constraints": res.constraints}
        text = f"{res.poly}\ndimension {res.dimension}"
        _emit(args, payload, text)
        if res.dimension:
            print(f"error: solution not unique (dimension {res.dimension})", file=sys.stderr)
            return 1
    elif cmd == "lattice-classify":
        vectors = json.loads(_read_input(args))
        if isinstance(vectors, dict):
            vectors = vectors["components"]
        cls = classify_boundary(vectors, make_i1n(9))
        _emit(args, cls.to_json(), f"rank {cls.rank}\nprimitive {cls.primitive}\nlabel {cls.label}")
    elif cmd == "r7-survey":
        counts = r7_classes(args.samples, args.seed)
        _emit(args, counts, "\n".join(f"{k} {v}" for k, v in sorted(counts.items())))
    elif cmd == "graph":
        P = parse_polygon(_read_input(args))
        g = mutation_graph(P, max_nodes=max(args.max_nodes, 1), max_depth=args.depth)
        text = "\n".join(
            [f"{len(g.nodes)} nodes, {len(g.edges)} edges, truncated={g.truncated}"]
            + [f"{i}: {n}" for i, n in enumerate(g.nodes)]
            + [f"{i} -- {j}  {m.label()}" for i, j, m in g.edges]
        )
        _emit(args, g.to_json(), text, g.to_dot())
    elif cmd == "validate-catalog":
        report = cat.validate_catalog(_catalog(args), depth=args.depth)
        lines = [f"checked {len(report.checked)} entries, ok={report.ok}"]
        lines += [f"[{d.id}] {d.kind}: {d.detail}" + (f" ({d.expected} vs {d.actual})" if d.expected else "")
                  for d in report.discrepancies]
        _emit(args, report.to_json(), "\n".join(lines))
        return 0 if report.ok else 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        return run(args)
    except (ValueError, SyntaxError, LookupError, OSError) as exc:
        height = getattr(exc, "height", None)
        suffix = f" (height {height})" if height is not None else ""
        print(f"error: {type(exc).__name__}: {exc}{suffix}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
