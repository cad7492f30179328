import json

import pytest

from tpoly.cli import NoMatch, UsageError, cmd_classify, main, parse_points
from tpoly.laurent import NotTPolygon, parse_laurent
from tpoly.polygon import mutation_path, validate_fano

QUAD = "(-2,-1),(1,-1),(2,1),(-2,1)"
QUAD_MUTATED = "(-2,-1),(2,-1),(1,1),(-2,1)"
SQUARE = "(1,0),(0,1),(-1,0),(0,-1)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out.strip() else None, err


class TestParsing:
    def test_pairs(self):
        assert parse_points(QUAD) == [(-2, -1), (1, -1), (2, 1), (-2, 1)]

    def test_json(self):
        assert parse_points('{"vertices": [[1, 0], [0, 1], [-1, -1]]}') == [(1, 0), (0, 1), (-1, -1)]

    def test_garbage(self):
        with pytest.raises(UsageError):
            parse_points("hello")


class TestClassify:
    def test_square(self, capsys):
        code, data, _ = run_json(capsys, "classify", "--expr", SQUARE)
        assert code == 0
        assert data["class"] == 9
        assert data["invariants"]["normal_index"] == 2
        assert data["witness_status"] == "length 0"

    def test_mutated_triangle_has_witness(self):
        P = validate_fano([(-1, -1), (1, -3), (0, 1)])
        r = cmd_classify(P)
        assert r.id == 10
        assert r.witness is not None and len(r.witness) >= 1

    def test_skip_witness(self):
        r = cmd_classify(validate_fano([(1, 0), (0, 1), (-1, -1)]), max_nodes=0)
        assert r.witness_status == "skipped"

    def test_quad_polygons_not_t(self, capsys):
        code, _, err = run(capsys, "classify", "--expr", QUAD)
        assert code == 1 and "NotTPolygon" in err
        with pytest.raises(NotTPolygon):
            cmd_classify(validate_fano(parse_points(QUAD_MUTATED)))
        chain = mutation_path(validate_fano(parse_points(QUAD)), validate_fano(parse_points(QUAD_MUTATED)))
        assert chain is not None and len(chain) <= 1

    def test_horizon_too_small(self):
        with pytest.raises(UsageError):
            cmd_classify(validate_fano(parse_points(SQUARE)), horizon=1)

    def test_no_match(self, tmp_path):
        from tpoly.catalog import default_catalog, load_catalog

        data = [e for e in default_catalog().to_json() if e["id"] == 10]
        path = tmp_path / "one.json"
        path.write_text(json.dumps(data))
        with pytest.raises(NoMatch):
            cmd_classify(validate_fano(parse_points(SQUARE)), load_catalog(path))

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "classify", "--expr", SQUARE)
        assert code == 0 and out.startswith("class 9")


class TestInfo:
    def test_quad(self, capsys):
        code, data, _ = run_json(capsys, "info", "--expr", QUAD)
        assert code == 0
        assert (data["t_cones"], data["basket"], data["t_polygon"]) == (8, [[1, 3]], False)

    def test_invalid(self, capsys):
        code, _, err = run(capsys, "info", "--expr", "(2,0),(0,1),(-1,-1)")
        assert code == 1 and "NonPrimitiveVertex" in err

    def test_input_file(self, capsys, tmp_path):
        path = tmp_path / "p.json"
        path.write_text('{"vertices": [[1, 0], [0, 1], [-1, -1]]}')
        code, data, _ = run_json(capsys, "info", "--input", str(path))
        assert code == 0 and data["t_cones"] == 3

    def test_missing_input(self, capsys):
        code, _, err = run(capsys, "info")
        assert code == 1 and "UsageError" in err


class TestPeriod:
    def test_square(self, capsys):
        code, out, _ = run(capsys, "period", "--expr", "x+y+1/x+1/y", "--horizon", "6")
        assert code == 0 and out.strip() == "1,0,4,0,36,0,400"

    def test_json(self, capsys):
        code, data, _ = run_json(capsys, "period", "--expr", "x+y+x^-1*y^-1", "--horizon", "3")
        assert data == {"horizon": 3, "coefficients": ["1", "0", "0", "6"]}

    def test_syntax_error(self, capsys):
        code, _, err = run(capsys, "period", "--expr", "x^1.5")
        assert code == 1 and "LaurentSyntaxError" in err


class TestMutate:
    def test_polygon(self, capsys):
        code, out, _ = run(capsys, "mutate", "--expr", QUAD, "--v", "0,-1", "--w", "1,0")
        assert code == 0
        assert out.strip() == str(validate_fano(parse_points(QUAD_MUTATED)))

    def test_polygon_not_mutable(self, capsys):
        code, _, err = run(capsys, "mutate", "--expr", SQUARE, "--v", "1,0", "--w", "0,1")
        assert code == 1 and "NotMutable" in err and "(height -1)" in err

    def test_laurent(self, capsys):
        code, out, _ = run(capsys, "mutate", "--expr", "y + (1+x)^2*y^-1", "--v", "0,1", "--factor", "1+x")
        assert code == 0 and parse_laurent(out) == parse_laurent("y + x*y + y^-1 + x*y^-1")

    def test_laurent_binomial(self, capsys):
        code, out, _ = run(capsys, "mutate", "--expr", "y + (1+x)^2*y^-1", "--v", "0,1", "--w", "1,0")
        assert code == 0 and parse_laurent(out) == parse_laurent("y + x*y + y^-1 + x*y^-1")

    def test_laurent_needs_factor(self, capsys):
        code, _, err = run(capsys, "mutate", "--expr", "x+y", "--v", "0,1")
        assert code == 1 and "UsageError" in err


class TestMMLP:
    def test_square(self, capsys):
        code, data, _ = run_json(capsys, "mmlp", "--expr", SQUARE)
        assert code == 0 and data["dimension"] == 0
        assert parse_laurent(data["text"]) == parse_laurent("x + y + x^-1 + y^-1")

    def test_not_t(self, capsys):
        code, _, err = run(capsys, "mmlp", "--expr", QUAD)
        assert code == 1 and "NotTPolygon" in err

    def test_bad_depth(self, capsys):
        code, _, err = run(capsys, "mmlp", "--expr", SQUARE, "--depth", "0")
        assert code == 1 and "UsageError" in err


class TestLattice:
    def test_classify(self, capsys):
        cycle = [
            [1, -1, -1, -1, 0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, -1, -1, -1, 0, 0, 0],
            [1, 0, 0, 0, 0, 0, 0, -1, -1, -1],
        ]
        code, data, _ = run_json(capsys, "lattice-classify", "--expr", json.dumps(cycle))
        assert code == 0 and data["rank"] == 2 and data["label"] == "r2"

    def test_not_anticanonical(self, capsys):
        code, _, err = run(capsys, "lattice-classify", "--expr", "[[1,-1,-1,-1,0,0,0,0,0,0]]")
        assert code == 1 and "NotAnticanonical" in err

    def test_r7_survey(self, capsys):
        code, data, _ = run_json(capsys, "r7-survey", "--samples", "60", "--seed", "0")
        assert code == 0 and set(data) == {"r7-primitive", "r7-imprimitive"}
        assert sum(data.values()) == 60


class TestGraph:
    def test_dot(self, capsys):
        code, out, _ = run(capsys, "graph", "--expr", "(1,0),(0,1),(-1,-1)", "--depth", "2", "--format", "dot")
        assert code == 0 and out.startswith("graph mutations {")

    def test_json(self, capsys):
        code, data, _ = run_json(capsys, "graph", "--expr", "(1,0),(0,1),(-1,-1)", "--depth", "1")
        assert code == 0 and len(data["nodes"]) >= 2

    def test_dot_unavailable(self, capsys):
        code, _, err = run(capsys, "info", "--expr", SQUARE, "--format", "dot")
        assert code == 1 and "UsageError" in err


class TestValidateCatalog:
    def test_default(self, capsys):
        code, data, _ = run_json(capsys, "validate-catalog")
        assert code == 0 and data["ok"]
        assert any(d["id"] == 10 and d["kind"] == "printed" for d in data["discrepancies"])

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate-catalog", "--catalog", str(tmp_path / "nope.json"))
        assert code == 1 and "FileNotFoundError" in err


def test_negative_bounds(capsys):
    code, _, err = run(capsys, "period", "--expr", "x+y+1/x", "--horizon", "-1")
    assert code == 1 and "UsageError" in err
