import json

import pytest
from hypothesis import given

from strategies import polygon_with_mutation, polygons, unimodular
from tpoly.polygon import (
    MutationData,
    NonPrimitiveVertex,
    NotConvex,
    NotMutable,
    OriginNotInterior,
    FanoPolygon,
    admissible_mutations,
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

QUAD = [(-2, -1), (1, -1), (2, 1), (-2, 1)]
QUAD_MUTATED = [(-2, -1), (2, -1), (1, 1), (-2, 1)]
SQUARE = [(1, 0), (0, 1), (-1, 0), (0, -1)]
TRIANGLE = [(1, 0), (0, 1), (-1, -1)]


def edge_from(P, start, end):
    return next(e for e in edge_data(P) if e.start == start and e.end == end)


class TestValidation:
    def test_quad_polygon(self):
        P = validate_fano(QUAD)
        assert len(P) == 4
        assert P.vertices[0] == (-2, -1)

    def test_triangle(self):
        assert len(validate_fano(TRIANGLE)) == 3

    def test_non_primitive_vertex(self):
        with pytest.raises(NonPrimitiveVertex) as exc:
            validate_fano([(2, 0), (0, 1), (-1, -1)])
        assert exc.value.point == (2, 0)

    def test_origin_on_boundary(self):
        with pytest.raises(OriginNotInterior):
            validate_fano([(1, 0), (-1, 0), (0, 1)])

    def test_interior_input_point_is_not_convex(self):
        with pytest.raises(NotConvex) as exc:
            validate_fano([(1, 0), (0, 1), (-1, -1), (0, 0)])
        assert exc.value.point == (0, 0)

    def test_collinear(self):
        with pytest.raises(NotConvex):
            validate_fano([(1, 0), (-1, 0), (0, 0)])

    def test_redundant_boundary_point_dropped(self):
        P = validate_fano([(1, 1), (0, 1), (-1, 1), (-1, -1), (1, -1)])
        assert len(P) == 4

    def test_ccw_from_smallest(self):
        P = validate_fano(list(reversed(QUAD)))
        assert P.vertices == ((-2, -1), (1, -1), (2, 1), (-2, 1))

    def test_json_round_trip(self):
        P = validate_fano(QUAD)
        assert FanoPolygon.from_json(json.loads(json.dumps(P.to_json()))) == P


class TestEdgeData:
    def test_quad_r_cone_edge(self):
        e = edge_from(validate_fano(QUAD), (1, -1), (2, 1))
        assert (e.normal, e.height, e.length, e.t_count, e.residue) == ((-2, 1), 3, 1, 0, 1)

    def test_quad_long_edge(self):
        e = edge_from(validate_fano(QUAD), (2, 1), (-2, 1))
        assert (e.height, e.length, e.t_count, e.residue) == (1, 4, 4, 0)

    def test_square_edges(self):
        for e in edge_data(validate_fano(SQUARE)):
            assert (e.height, e.length, e.t_count, e.residue) == (1, 1, 1, 0)

    @given(polygons())
    def test_decomposition_and_normals(self, P):
        for e in edge_data(P):
            assert e.length == e.t_count * e.height + e.residue
            assert 0 <= e.residue < e.height
            for p in (e.start, e.end):
                assert e.normal[0] * p[0] + e.normal[1] * p[1] == -e.height

    @given(polygons())
    def test_lengths_count_boundary_points(self, P):
        edges = edge_data(P)
        assert sum(e.length for e in edges) == len(P.boundary_points())
        if is_t_polygon(P):
            assert sum(e.t_count * e.height for e in edges) == sum(e.length for e in edges)


class TestContent:
    def test_quad_content(self):
        c = singularity_content(validate_fano(QUAD))
        assert (c.t_cones, c.basket) == (8, ((1, 3),))
        assert not is_t_polygon(validate_fano(QUAD))

    def test_square(self):
        c = singularity_content(validate_fano(SQUARE))
        assert (c.t_cones, c.basket) == (4, ())
        assert is_t_polygon(validate_fano(SQUARE))

    def test_triangle(self):
        c = singularity_content(validate_fano(TRIANGLE))
        assert (c.t_cones, c.basket) == (3, ())


class TestNormalForm:
    def test_idempotent(self):
        P = validate_fano(QUAD)
        assert normal_form(normal_form(P)) == normal_form(P)

    def test_swap_and_shear(self):
        P = validate_fano(QUAD)
        assert normal_form(P.transform(((0, 1), (1, 0)))) == normal_form(P)
        assert normal_form(P.transform(((1, 1), (0, 1)))) == normal_form(P)

    def test_distinguishes_orbits(self):
        assert normal_form(validate_fano(SQUARE)) != normal_form(validate_fano([(1, 1), (-1, 1), (-1, -1), (1, -1)]))

    @given(polygons(), unimodular(max_len=10))
    def test_constant_on_orbits(self, P, U):
        assert normal_form(P.transform(U)) == normal_form(P)
        assert normal_form(normal_form(P)) == normal_form(P)


class TestIndex:
    def test_square(self):
        assert normal_vector_index(validate_fano(SQUARE)) == 2

    def test_triangle(self):
        assert normal_vector_index(validate_fano(TRIANGLE)) == 3

    def test_unit_normals(self):
        P = validate_fano([(-1, -1), (1, -1), (1, 0), (0, 1), (-1, 0)])
        assert normal_vector_index(P) == 1

    @given(polygons(), unimodular())
    def test_invariant_under_transform(self, P, U):
        assert normal_vector_index(P.transform(U)) == normal_vector_index(P)


class TestMutation:
    def test_quad_mutation(self):
        Q = mutate_polygon(validate_fano(QUAD), MutationData((0, -1), (1, 0), 1))
        assert Q == validate_fano(QUAD_MUTATED)

    def test_quad_mutation_reverse(self):
        back = mutate_polygon(validate_fano(QUAD_MUTATED), MutationData((0, 1), (1, 0), 1))
        assert normal_form(back) == normal_form(validate_fano(QUAD))

    def test_square_not_mutable(self):
        with pytest.raises(NotMutable) as exc:
            mutate_polygon(validate_fano(SQUARE), MutationData((1, 0), (0, 1), 1))
        assert exc.value.height == -1

    def test_bad_mutation_data(self):
        with pytest.raises(ValueError):
            MutationData((1, 0), (1, 1), 1)
        with pytest.raises(ValueError):
            MutationData((2, 0), (0, 1), 1)
        with pytest.raises(ValueError):
            MutationData((1, 0), (0, 1), 0)

    def test_admissible_quad(self):
        ms = admissible_mutations(validate_fano(QUAD))
        assert MutationData((0, -1), (1, 0), 1) in ms
        assert len(ms) == len(set(ms))

    def test_admissible_square_has_no_vertex_direction(self):
        assert all(m.v != (1, 0) for m in admissible_mutations(validate_fano(SQUARE)))

    def test_admissible_triangle(self):
        ms = admissible_mutations(validate_fano(TRIANGLE))
        assert ms and all(m.k == 1 for m in ms)

    @given(polygon_with_mutation())
    def test_content_invariant(self, Pm):
        P, m = Pm
        Q = mutate_polygon(P, m)
        assert singularity_content(Q).key() == singularity_content(P).key()
        assert is_t_polygon(Q) == is_t_polygon(P)

    @given(polygon_with_mutation())
    def test_reversible(self, Pm):
        P, m = Pm
        assert normal_form(mutate_polygon(mutate_polygon(P, m), m.inverse())) == normal_form(P)

    @given(polygon_with_mutation())
    def test_index_invariant(self, Pm):
        P, m = Pm
        assert normal_vector_index(mutate_polygon(P, m)) == normal_vector_index(P)

    @given(polygon_with_mutation(), unimodular())
    def test_equivariant(self, Pm, U):
        P, m = Pm
        assert mutate_polygon(P.transform(U), m.transform(U)) == mutate_polygon(P, m).transform(U)


class TestGraph:
    def test_triangle_reaches_p114(self):
        g = mutation_graph(validate_fano(TRIANGLE), max_nodes=100, max_depth=5)
        assert normal_form(validate_fano([(-1, -1), (1, -3), (0, 1)])) in g.index
        assert len(g.nodes) > 1

    def test_depth_zero(self):
        g = mutation_graph(validate_fano(TRIANGLE), max_nodes=100, max_depth=0)
        assert len(g.nodes) == 1 and not g.edges

    def test_quad_mutation_in_graph(self):
        g = mutation_graph(validate_fano(QUAD), max_depth=1)
        assert validate_fano(QUAD_MUTATED) in g

    def test_node_cap_truncates(self):
        g = mutation_graph(validate_fano(TRIANGLE), max_nodes=3, max_depth=10)
        assert len(g.nodes) == 3 and g.truncated

    def test_dot_export(self):
        dot = mutation_graph(validate_fano(TRIANGLE), max_depth=2).to_dot()
        assert dot.startswith("graph mutations {")
        assert "v=(" in dot and "k=1" in dot

    def test_deterministic(self):
        a = mutation_graph(validate_fano(QUAD), max_depth=2)
        b = mutation_graph(validate_fano(QUAD), max_depth=2)
        assert a.to_json() == b.to_json()

    def test_path(self):
        chain = mutation_path(validate_fano(QUAD), validate_fano(QUAD_MUTATED))
        assert chain is not None and len(chain) <= 1
        assert mutation_path(validate_fano(SQUARE), validate_fano(SQUARE)) == []
