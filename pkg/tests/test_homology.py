"""Exact integer linear algebra and first homology.

The Smith normal form is checked two independent ways: against the
determinantal-divisor characterization (gcd of k x k minors) on small
matrices, and against the U*A*V = S transformation identity with
unimodular U, V on random ones.
"""

import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from msflow.errors import DimensionMismatch
from msflow.homology import (
    H1Group,
    IntMatrix,
    class_is_admissible,
    class_is_maximal,
    expr_to_vector,
    fiber_vector,
    graph_class_vector,
    graph_h1,
    graph_presentation,
    piece_h1,
    seifert_h1,
    smith_normal_form,
    solve_in_image,
)
from msflow.manifolds import (
    GraphManifold,
    Gluing,
    HomologyClassExpr,
    SeifertClosed,
    SeifertPiece,
    SurgeryCoefficient,
    maximal_class,
)

SWAP = ((0, 1), (1, 0))


def minor_gcd(m: IntMatrix, k: int) -> int:
    """gcd of all k x k minors, the independent oracle for SNF diagonals."""
    rows_idx = range(m.rows)
    cols_idx = range(m.cols)
    g = 0
    for rs in combinations(rows_idx, k):
        for cs in combinations(cols_idx, k):
            sub = IntMatrix.from_rows(
                tuple(tuple(m.entries[r][c] for c in cs) for r in rs), k)
            g = math.gcd(g, sub.det())
    return g


def oracle_diagonal(m: IntMatrix) -> tuple[int, ...]:
    out = []
    previous = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        dk = minor_gcd(m, k)
        if dk == 0:
            out.append(0)
            previous = 0
        else:
            out.append(dk // previous)
            previous = dk
    return tuple(out)


class TestIntMatrix:
    def test_shape_validated(self):
        with pytest.raises(DimensionMismatch):
            IntMatrix(2, 2, ((1, 2), (3,)))

    def test_zero_row_matrix_keeps_width(self):
        m = IntMatrix(0, 3, ())
        assert (m.rows, m.cols) == (0, 3)
        assert (m.transpose().rows, m.transpose().cols) == (3, 0)

    def test_matmul(self):
        a = IntMatrix.from_rows(((1, 2), (3, 4)), 2)
        b = IntMatrix.from_rows(((0, 1), (1, 0)), 2)
        assert (a @ b).entries == ((2, 1), (4, 3))

    def test_det(self):
        assert IntMatrix.from_rows(((2, 1), (7, 4)), 2).det() == 1
        assert IntMatrix.from_rows(((1, 2, 3), (4, 5, 6), (7, 8, 9)), 3).det() == 0


class TestSmithNormalForm:
    @pytest.mark.parametrize("rows,want", [
        (((2, 4), (4, 8)), (2, 0)),
        (((1, 2), (3, 4)), (1, 2)),
        (((2, 0), (0, 3)), (1, 6)),
        (((6, 0), (0, 10)), (2, 30)),
        (((0, 0), (0, 0)), (0, 0)),
    ])
    def test_frozen_examples(self, rows, want):
        assert smith_normal_form(IntMatrix.from_rows(rows, 2)).diagonal() == want

    def test_empty_matrix(self):
        assert smith_normal_form(IntMatrix(0, 3, ())).diagonal() == ()

    @given(
        rows=st.integers(min_value=1, max_value=3),
        cols=st.integers(min_value=1, max_value=3),
        data=st.data(),
    )
    @settings(max_examples=60)
    def test_matches_determinantal_divisors(self, rows, cols, data):
        entries = tuple(
            tuple(data.draw(st.integers(min_value=-9, max_value=9)) for _ in range(cols))
            for _ in range(rows))
        m = IntMatrix.from_rows(entries, cols)
        assert smith_normal_form(m).diagonal() == oracle_diagonal(m)

    @given(
        rows=st.integers(min_value=0, max_value=8),
        cols=st.integers(min_value=0, max_value=8),
        data=st.data(),
    )
    @settings(max_examples=80, deadline=None)
    def test_transformation_identity(self, rows, cols, data):
        entries = tuple(
            tuple(data.draw(st.integers(min_value=-50, max_value=50)) for _ in range(cols))
            for _ in range(rows))
        m = IntMatrix(rows, cols, entries)
        res = smith_normal_form(m)
        assert abs(res.u.det()) == 1
        assert abs(res.v.det()) == 1
        s = res.u @ m @ res.v
        assert s.entries == res.s.entries
        diag = res.diagonal()
        for r in range(rows):
            for c in range(cols):
                if r != c:
                    assert s.entries[r][c] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b >= 0
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0


class TestSolveInImage:
    def test_solvable(self):
        a = IntMatrix.from_rows(((2, 4),), 2)
        x = solve_in_image(a, (6,))
        assert x is not None and 2 * x[0] + 4 * x[1] == 6

    def test_unsolvable(self):
        a = IntMatrix.from_rows(((2, 4),), 2)
        assert solve_in_image(a, (3,)) is None

    def test_zero_target_always_solvable(self):
        a = IntMatrix.from_rows(((3, 0), (0, 5)), 2)
        assert solve_in_image(a, (0, 0)) is not None

    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_solvability_iff_factors_unchanged(self, data):
        """Ax = v is solvable over Z iff stacking v onto the columns of A
        leaves the nonzero invariant factors unchanged."""
        rows = data.draw(st.integers(min_value=1, max_value=4))
        cols = data.draw(st.integers(min_value=1, max_value=4))
        entries = tuple(
            tuple(data.draw(st.integers(min_value=-6, max_value=6)) for _ in range(cols))
            for _ in range(rows))
        v = tuple(data.draw(st.integers(min_value=-6, max_value=6)) for _ in range(rows))
        a = IntMatrix(rows, cols, entries)
        augmented = IntMatrix(
            rows, cols + 1, tuple(row + (v[i],) for i, row in enumerate(entries)))
        same = ([d for d in smith_normal_form(a).diagonal() if d]
                == [d for d in smith_normal_form(augmented).diagonal() if d])
        x = solve_in_image(a, v)
        assert (x is not None) == same
        if x is not None:
            for i, row in enumerate(entries):
                assert sum(e * xi for e, xi in zip(row, x)) == v[i]


def closed(genus, euler, fibers=()):
    return SeifertClosed(genus, euler, tuple(SurgeryCoefficient(p, q) for p, q in fibers))


class TestSeifertHomology:
    def test_poincare_sphere_trivial(self):
        g = seifert_h1(closed(0, -1, ((2, 1), (3, 1), (5, 1))))
        assert g.is_trivial() and g.describe() == "0"

    @pytest.mark.parametrize("e", [-3, -2, -1, 1, 2, 3])
    def test_circle_bundle_over_sphere(self, e):
        g = seifert_h1(closed(0, e))
        assert g.free_rank == 0 and g.torsion_order() == abs(e)

    @pytest.mark.parametrize("genus", [0, 1, 2, 3])
    def test_euler_zero_is_free(self, genus):
        g = seifert_h1(closed(genus, 0))
        assert g.free_rank == 2 * genus + 1 and not g.invariant_factors

    @pytest.mark.parametrize("euler", range(-3, 4))
    @pytest.mark.parametrize("genus", [0, 1, 2])
    def test_fiber_trivial_iff_unit_euler(self, genus, euler):
        m = closed(genus, euler)
        assert seifert_h1(m).is_trivial_class(fiber_vector(m)) == (abs(euler) == 1)

    @pytest.mark.parametrize("e,fibers", [
        (-2, ((2, 1), (3, 1))),
        (0, ((5, 2),)),
        (3, ((3, 2), (4, 3), (5, 1))),
        (1, ((2, 1), (3, 2))),
    ])
    def test_torsion_order_formula(self, e, fibers):
        """|H1| for genus 0 = |e*prod(p) + sum_j q_j*prod_{i != j} p_i|."""
        prod = math.prod(p for p, _ in fibers)
        want = abs(e * prod + sum(q * prod // p for p, q in fibers))
        g = seifert_h1(closed(0, e, fibers))
        if want == 0:
            assert g.free_rank == 1
        else:
            assert g.free_rank == 0 and g.torsion_order() == want

    def test_positive_genus_adds_free_part(self):
        g = seifert_h1(closed(2, 3))
        assert g.free_rank == 4 and g.torsion_order() == 3

    def test_caching_returns_equal_groups(self):
        assert seifert_h1(closed(1, 2)) is seifert_h1(closed(1, 2))


class TestPieceHomology:
    def test_fibered_solid_torus(self):
        assert piece_h1(SeifertPiece(0, 1, ())).describe() == "Z"

    def test_no_closing_relation(self):
        g = piece_h1(SeifertPiece(1, 2, (SurgeryCoefficient(3, 2),)))
        assert g.describe() == "Z^4"

    def test_fiber_never_trivial_in_piece(self):
        p = SeifertPiece(0, 2, ())
        assert not piece_h1(p).is_trivial_class(fiber_vector(p))


class TestGraphHomology:
    def test_two_solid_tori_swap_is_sphere(self):
        g = GraphManifold((SeifertPiece(0, 1, ()), SeifertPiece(0, 1, ())),
                          (Gluing(0, 0, 1, 0, SWAP),))
        group, projection = graph_h1(g)
        assert group.is_trivial()
        assert projection.rows == 0

    def test_torus_bundle_rank_three(self):
        g = GraphManifold((SeifertPiece(0, 2, ()),),
                          (Gluing(0, 0, 0, 1, ((1, 0), (0, -1))),))
        group, projection = graph_h1(g)
        assert group.describe() == "Z^3"
        assert projection.rows == 1

    def test_orientation_flip_gives_torsion(self):
        g = GraphManifold((SeifertPiece(0, 2, ()),),
                          (Gluing(0, 0, 0, 1, ((1, 0), (0, 1))),))
        group, _ = graph_h1(g)
        assert group.free_rank == 2 and group.invariant_factors == (2,)

    def test_generators_carry_piece_prefixes(self):
        g = GraphManifold((SeifertPiece(0, 1, ()), SeifertPiece(0, 1, ())),
                          (Gluing(0, 0, 1, 0, SWAP),))
        names = graph_presentation(g).generator_names
        assert names == ("p0.h", "p1.h")


class TestAdmissibility:
    def build(self, cross=SWAP):
        pieces = (SeifertPiece(0, 2, ()), SeifertPiece(0, 2, ()))
        return GraphManifold(pieces, (Gluing(0, 0, 1, 0, cross), Gluing(0, 1, 1, 1, cross)))

    def test_per_piece_sums_admissible(self):
        g = self.build()
        exprs = maximal_class(g)
        assert class_is_admissible(g, graph_class_vector(g, exprs, (0,)))

    def test_nonzero_cycle_coordinate_rejected(self):
        g = self.build()
        exprs = maximal_class(g)
        assert not class_is_admissible(g, graph_class_vector(g, exprs, (1,)))

    def test_tree_graphs_admit_everything(self):
        g = GraphManifold((SeifertPiece(0, 1, ()), SeifertPiece(0, 1, ())),
                          (Gluing(0, 0, 1, 0, SWAP),))
        exprs = (HomologyClassExpr((), (7,), ()), HomologyClassExpr((), (-4,), ()))
        assert class_is_admissible(g, graph_class_vector(g, exprs, ()))

    @given(seed=st.integers(min_value=0, max_value=2_000))
    @settings(max_examples=40, deadline=None)
    def test_zero_cycle_part_always_admissible(self, seed):
        from msflow.selftest import random_graph_manifold

        rng = random.Random(seed)
        g = random_graph_manifold(rng)
        exprs = tuple(
            HomologyClassExpr(
                tuple(rng.randint(-4, 4) for _ in range(p.genus)),
                tuple(rng.randint(-4, 4) for _ in range(p.n + 1)),
                tuple(rng.randint(-4, 4) for _ in range(p.boundary - 1)))
            for p in g.pieces)
        rank = graph_presentation(g).cycle_projection.rows
        assert class_is_admissible(g, graph_class_vector(g, exprs, (0,) * rank))


class TestClassMaximality:
    def test_closed_maximal(self):
        m = closed(1, 2, ((3, 1),))
        assert class_is_maximal(m, maximal_class(m))
        assert not class_is_maximal(m, HomologyClassExpr((1,), (2, 2), None))

    def test_unit_euler_ignores_alpha0(self):
        m = closed(0, 1, ((2, 1),))
        assert class_is_maximal(m, HomologyClassExpr((), (0, 2), None))

    def test_graph_checks_all_pieces(self):
        g = GraphManifold((SeifertPiece(0, 1, ()), SeifertPiece(0, 1, ())),
                          (Gluing(0, 0, 1, 0, SWAP),))
        exprs = maximal_class(g)
        assert class_is_maximal(g, exprs)
        weak = (exprs[0], HomologyClassExpr((), (1,), ()))
        assert not class_is_maximal(g, weak)


class TestExprToVector:
    def test_beta_maps_to_surface_generator(self):
        m = closed(2, 0)
        vec = expr_to_vector(m, HomologyClassExpr((3, 5), (0,), None))
        # generators a1 b1 a2 b2 h
        assert vec == (3, 0, 5, 0, 0)

    def test_gamma0_is_fiber(self):
        m = closed(0, 2)
        assert expr_to_vector(m, HomologyClassExpr((), (4,), None)) == (4,)

    def test_exceptional_core_satisfies_surgery_relation(self):
        """p*[gamma_j] = p*r*mu_j + p*s*h with ps - qr = 1 must equal
        the relation row's complement q*... : concretely -q*h + p*mu = 0
        forces p*[gamma] - [h]*? ... check via the group instead: p*[gamma_j]
        and q... the class q*[gamma_j] - [fiber]*r vanishes appropriately."""
        m = closed(0, 0, ((5, 3),))
        group = seifert_h1(m)
        gamma1 = expr_to_vector(m, HomologyClassExpr((), (0, 1), None))
        # |H1| = |q| = 3 here and gamma1 generates: 3*gamma1 must die
        assert not group.is_trivial_class(gamma1)
        assert group.is_trivial_class(tuple(3 * x for x in gamma1))
