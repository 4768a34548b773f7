import random
from fractions import Fraction
from itertools import combinations

import pytest

from momentring.complexes import (
    SimplicialComplex,
    cross_polytope_boundary,
    cyclic_polytope_boundary,
    real_projective_plane,
    simplex_boundary,
)
from momentring.errors import (
    DegreeRangeError,
    DimensionMismatchError,
    MalformedScalarError,
)
from momentring.linalg import PointSampler
from momentring.reduction import (
    AlgebraElement,
    build_artinian,
    build_lsop,
    face_monomials,
    moment_minor_det,
    multiply,
)
from momentring.scalars import BaseField, Polynomial, RationalFunction

from oracles import cofactor_det, f_vector, frac_matrix_rank, h_vector, \
    random_rational_function, reduced_betti_numbers

Q = BaseField.rationals()
F2 = BaseField.prime(2)
F3 = BaseField.prime(3)


def theta_matrix(base, n, d, cols):
    """The actual d x |cols| matrix of theta coefficients, for oracle use."""
    out = []
    for i in range(1, d + 1):
        row = []
        for j in cols:
            e = [0] * n
            e[j - 1] = i
            row.append(Polynomial.monomial(base, n, tuple(e)))
        out.append(row)
    return out


class TestLsopConstruction:
    def test_dimension_bounds(self):
        with pytest.raises(DimensionMismatchError):
            build_lsop(3, 0)
        with pytest.raises(DimensionMismatchError):
            build_lsop(3, 4)
        assert build_lsop(1, 1).d == 1

    def test_theta_coefficient_is_power(self):
        lsop = build_lsop(4, 2)
        t3sq = Polynomial.monomial(Q, 4, (0, 0, 2, 0))
        assert lsop.theta_coefficient(2, 3) == t3sq

    def test_realization_column(self):
        lsop = build_lsop(3, 3)
        col = lsop.realization_column(2)
        assert [p.total_degree() for p in col] == [1, 2, 3]
        assert col[2] == Polynomial.monomial(Q, 3, (0, 3, 0))

    def test_theta_index_range(self):
        lsop = build_lsop(3, 2)
        with pytest.raises(DimensionMismatchError):
            lsop.theta_coefficient(3, 1)
        with pytest.raises(DimensionMismatchError):
            lsop.theta_coefficient(1, 4)


class TestMinorDeterminant:
    @pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (5, 3), (6, 3), (7, 4)])
    def test_closed_form_matches_cofactor_expansion(self, n, d):
        lsop = build_lsop(n, d)
        for F in combinations(range(1, n + 1), d):
            det = cofactor_det(theta_matrix(Q, n, d, F))
            assert moment_minor_det(lsop, F) == RationalFunction.from_polynomial(det)

    def test_small_example(self):
        lsop = build_lsop(3, 2)
        # t1 t2 (t2 - t1)
        t1 = Polynomial.variable(Q, 3, 0)
        t2 = Polynomial.variable(Q, 3, 1)
        expect = t1 * t2 * (t2 - t1)
        assert moment_minor_det(lsop, (1, 2)) == RationalFunction.from_polynomial(expect)

    def test_cardinality_and_range_errors(self):
        lsop = build_lsop(4, 2)
        with pytest.raises(DimensionMismatchError):
            moment_minor_det(lsop, (1, 2, 3))
        with pytest.raises(DimensionMismatchError):
            moment_minor_det(lsop, (2, 2))
        with pytest.raises(DimensionMismatchError):
            moment_minor_det(lsop, (0, 1))
        with pytest.raises(DimensionMismatchError):
            moment_minor_det(lsop, (3, 5))

    def test_facet_minors_invertible(self):
        cases = [
            (cross_polytope_boundary(3), 6, 3),
            (cyclic_polytope_boundary(3, 6), 6, 3),
            (real_projective_plane(), 6, 3),
        ]
        for K, n, d in cases:
            lsop = build_lsop(n, d)
            for F in K.facets:
                det = cofactor_det(theta_matrix(Q, n, d, F))
                assert not det.is_zero_poly
                assert moment_minor_det(lsop, F) == RationalFunction.from_polynomial(det)


class TestFaceMonomials:
    def test_triangle_degree_two(self, triangle):
        monos = face_monomials(triangle, (1, 2, 3), 2)
        assert monos == [
            (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
        ]

    def test_degree_zero_and_one(self, triangle):
        assert face_monomials(triangle, (1, 2, 3), 0) == [(0, 0, 0)]
        assert face_monomials(triangle, (1, 2, 3), 1) == [
            (1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_non_face_supports_excluded(self):
        octa = cross_polytope_boundary(3)
        monos = face_monomials(octa, octa.vertices, 2)
        assert (1, 1, 0, 0, 0, 0) not in monos  # {1,2} is a missing edge
        assert (1, 0, 1, 0, 0, 0) in monos

    def test_count_matches_faces(self):
        dd3 = simplex_boundary(3)
        monos = face_monomials(dd3, dd3.vertices, 3)
        # card 1: one way each, card 2: two compositions, card 3: one
        expect = 4 * 1 + 6 * 2 + 4 * 1
        assert len(monos) == expect
        assert len(set(monos)) == expect


class TestDimensions:
    def test_triangle(self, tri_algebra):
        assert tri_algebra.dims() == (1, 1, 1)

    def test_octahedron(self, octa_algebra):
        assert octa_algebra.dims() == (1, 3, 3, 1)

    def test_simplex_boundary_socle_vanishes(self):
        A = build_artinian(simplex_boundary(3), build_lsop(4, 3), 4, seed=3)
        assert A.dims() == (1, 1, 1, 1, 0)

    @pytest.mark.parametrize("K", [
        simplex_boundary(2),
        simplex_boundary(3),
        cross_polytope_boundary(2),
        cross_polytope_boundary(3),
        cyclic_polytope_boundary(3, 6),
    ])
    def test_h_vector_oracle(self, K):
        n = K.vertices[-1]
        d = K.dim + 1
        A = build_artinian(K, build_lsop(n, d), d, seed=7)
        assert list(A.dims()) == h_vector(K.facets)

    def test_h_vector_oracle_cyclic_4_7(self):
        K = cyclic_polytope_boundary(4, 7)
        A = build_artinian(K, build_lsop(7, 4), 4, seed=7)
        assert list(A.dims()) == h_vector(K.facets)

    def test_simplex_boundary_4(self, dd4_algebra):
        assert list(dd4_algebra.dims()) == h_vector(simplex_boundary(4).facets)
        assert dd4_algebra.dims() == (1, 1, 1, 1, 1)

    def test_prime_characteristic_dims(self):
        tri = SimplicialComplex([(1, 2), (2, 3), (1, 3)])
        for base in (F2, F3):
            A = build_artinian(tri, build_lsop(3, 2, base), 2, base=base, seed=5)
            assert A.dims() == (1, 1, 1)
        octa = cross_polytope_boundary(3)
        A = build_artinian(octa, build_lsop(6, 3, F3), 3, base=F3, seed=5)
        assert A.dims() == (1, 3, 3, 1)

    def test_projective_plane_dims_follow_homology_correction(self, rp2_f2_algebra):
        """In low characteristic the top dimension picks up the homology of
        the complex: dim A^3 = h_3 + reduced b_1, and b_1 depends on the
        field."""
        rp2 = real_projective_plane()
        h = h_vector(rp2.facets)
        assert h == [1, 3, 6, 0]
        b1_f2 = reduced_betti_numbers(rp2.facets, p=2).get(1, 0)
        assert rp2_f2_algebra.dims() == (1, 3, 6, h[3] + b1_f2)
        assert rp2_f2_algebra.dims() == (1, 3, 6, 1)
        AQ = build_artinian(rp2, build_lsop(6, 3), 3, seed=5)
        b1_q = reduced_betti_numbers(rp2.facets, p=0).get(1, 0)
        assert AQ.dims() == (1, 3, 6, h[3] + b1_q)
        assert AQ.dims() == (1, 3, 6, 0)

    def test_relabeled_triangle(self):
        tri = SimplicialComplex([(2, 4), (4, 6), (2, 6)])
        A = build_artinian(tri, build_lsop(6, 2), 2, seed=5)
        assert A.dims() == (1, 1, 1)
        assert A.vertices == (2, 4, 6)
        assert A.nvars == 3

    def test_vertices_beyond_ambient_bound(self, triangle):
        with pytest.raises(DimensionMismatchError):
            build_artinian(triangle, build_lsop(2, 2), 2)

    def test_degree_zero_only(self, triangle):
        A = build_artinian(triangle, build_lsop(3, 2), 0)
        assert A.dims() == (1,)
        with pytest.raises(DegreeRangeError):
            A.piece(1)

    def test_unknown_backend(self, triangle):
        with pytest.raises(MalformedScalarError):
            build_artinian(triangle, build_lsop(3, 2), 2, backend="fast")


class TestBasisAndExpansion:
    def test_triangle_basis(self, tri_algebra):
        assert tri_algebra.piece(1).basis == ((1, 0, 0),)
        assert tri_algebra.piece(2).basis == ((2, 0, 0),)

    def test_octahedron_degree_one_basis(self, octa_algebra):
        assert octa_algebra.piece(1).basis == (
            (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0))

    def test_basis_monomials_expand_to_unit_vectors(self, tri_algebra, dd3_algebra):
        for alg in (tri_algebra, dd3_algebra):
            for k in range(alg.max_degree + 1):
                piece = alg.piece(k)
                for i, b in enumerate(piece.basis):
                    col = piece.expand(b)
                    assert all(
                        (c.is_zero if j != i else c == alg.domain.one)
                        for j, c in enumerate(col))

    def test_expansion_residual_lies_in_relation_rowspace(self, tri_algebra, dd3_algebra):
        """Oracle check: m - sum(expand(m)) must be a combination of the
        theta relations.  Verified at a random rational point with plain
        Fraction elimination."""
        rng = random.Random(20240811)
        for alg in (tri_algebra, dd3_algebra):
            point = [Fraction(v) for v in
                     rng.sample(range(10 ** 6, 2 * 10 ** 6), alg.nvars)]
            for k in range(1, alg.max_degree + 1):
                piece = alg.piece(k)
                rel = alg._relation_rows_evaluated(
                    alg.piece(k - 1).monomials, piece.monomials, point, Q)
                dense_rel = [
                    [row.get(j, Fraction(0)) for j in range(len(piece.monomials))]
                    for row in rel]
                base_rank = frac_matrix_rank(dense_rel)
                for m in piece.monomials:
                    coords = piece.expand(m)
                    residual = [Fraction(0)] * len(piece.monomials)
                    residual[piece.index[m]] += Fraction(1)
                    for c, b in zip(coords, piece.basis):
                        residual[piece.index[b]] -= c.evaluate_raw(point, None)
                    assert frac_matrix_rank(dense_rel + [residual]) == base_rank

    def test_octahedron_degree_two_basis_is_greedy(self, octa_algebra):
        """The chosen basis must match a greedy scan over face monomials in
        canonical order, judged by Fraction rank at a seeded point."""
        piece = octa_algebra.piece(2)
        point = PointSampler(Q, 6, 99).next_point()
        rel = octa_algebra._relation_rows_evaluated(
            octa_algebra.piece(1).monomials, piece.monomials, point, Q)
        n = len(piece.monomials)
        dense_rel = [[row.get(j, Fraction(0)) for j in range(n)] for row in rel]
        base_rank = frac_matrix_rank(dense_rel)
        chosen = []
        for pos in range(n):
            extra = []
            for c in chosen + [pos]:
                vec = [Fraction(0)] * n
                vec[c] = Fraction(1)
                extra.append(vec)
            stacked_rank = frac_matrix_rank(dense_rel + extra)
            if stacked_rank == base_rank + len(chosen) + 1:
                chosen.append(pos)
        assert tuple(piece.monomials[i] for i in chosen) == piece.basis


class TestMultiplication:
    def test_edge_product_is_edge_monomial(self, tri_algebra):
        x1 = tri_algebra.variable_element(1)
        x2 = tri_algebra.variable_element(2)
        prod = multiply(tri_algebra, x1, x2)
        assert prod.vec == tri_algebra.face_element((1, 2)).vec

    def test_non_face_product_vanishes(self, octa_algebra):
        x1 = octa_algebra.variable_element(1)
        x2 = octa_algebra.variable_element(2)
        prod = multiply(octa_algebra, x1, x2)
        assert prod.vec == {}

    def test_unit_element(self, dd3_algebra):
        one = dd3_algebra.monomial_element((0, 0, 0, 0))
        u = dd3_algebra.face_element((1, 3))
        assert multiply(dd3_algebra, one, u).vec == u.vec

    def test_commutative(self, octa_algebra):
        rng = random.Random(5)
        u = _random_element(rng, octa_algebra, 1)
        v = _random_element(rng, octa_algebra, 1)
        assert multiply(octa_algebra, u, v).vec == multiply(octa_algebra, v, u).vec

    def test_bilinear(self, tri_algebra):
        rng = random.Random(6)
        u = _random_element(rng, tri_algebra, 1)
        v = _random_element(rng, tri_algebra, 1)
        w = _random_element(rng, tri_algebra, 1)
        c = random_rational_function(rng, Q, 3)
        left = multiply(tri_algebra, u.scale(c) + v, w)
        right = multiply(tri_algebra, u, w).scale(c) + multiply(tri_algebra, v, w)
        assert left.coordinates() == right.coordinates()

    def test_associative_vectors(self, octa_algebra):
        x1 = octa_algebra.variable_element(1)
        x3 = octa_algebra.variable_element(3)
        x5 = octa_algebra.variable_element(5)
        left = multiply(octa_algebra, multiply(octa_algebra, x1, x3), x5)
        right = multiply(octa_algebra, x1, multiply(octa_algebra, x3, x5))
        assert left.vec == right.vec
        assert left.vec != {}

    def test_associative_coordinates(self, dd3_algebra):
        rng = random.Random(7)
        u = _random_element(rng, dd3_algebra, 1)
        v = _random_element(rng, dd3_algebra, 1)
        w = _random_element(rng, dd3_algebra, 1)
        left = multiply(dd3_algebra, multiply(dd3_algebra, u, v), w)
        right = multiply(dd3_algebra, u, multiply(dd3_algebra, v, w))
        assert left.coordinates() == right.coordinates()

    def test_theta_images_vanish(self, tri_algebra, dd3_algebra):
        for alg in (tri_algebra, dd3_algebra):
            for i in range(1, alg.d + 1):
                th = alg.theta_element(i)
                assert th.is_zero_in_algebra()
                prod = multiply(alg, th, alg.variable_element(alg.vertices[0]))
                assert prod.is_zero_in_algebra()

    def test_degree_overflow(self, tri_algebra):
        x1 = tri_algebra.variable_element(1)
        sq = multiply(tri_algebra, x1, x1)
        with pytest.raises(DegreeRangeError):
            multiply(tri_algebra, sq, x1)

    def test_non_face_monomial_element_is_zero(self, octa_algebra):
        z = octa_algebra.monomial_element((1, 1, 0, 0, 0, 0))
        assert z.vec == {}
        assert z.is_zero_in_algebra()

    def test_coordinate_roundtrip(self, octa_algebra):
        rng = random.Random(8)
        piece = octa_algebra.piece(1)
        coords = tuple(random_rational_function(rng, Q, 6) for _ in range(piece.dim))
        elem = octa_algebra.element_from_coordinates(1, coords)
        assert elem.coordinates() == coords

    def test_element_arithmetic(self, tri_algebra):
        u = tri_algebra.variable_element(1)
        v = tri_algebra.variable_element(2)
        assert (u - u).vec == {}
        assert (u + v - v).vec == u.vec
        assert (-u).vec == {e: -c for e, c in u.vec.items()}


class TestBackends:
    @pytest.mark.parametrize("K,n,d", [
        (SimplicialComplex([(1, 2), (2, 3), (1, 3)]), 3, 2),
        (simplex_boundary(3), 4, 3),
        (cyclic_polytope_boundary(2, 5), 5, 2),
    ])
    def test_evaluated_matches_exact(self, K, n, d):
        lsop = build_lsop(n, d)
        ev = build_artinian(K, lsop, d, backend="evaluated", seed=2)
        ex = build_artinian(K, lsop, d, backend="exact", seed=2)
        assert ev.dims() == ex.dims()
        for k in range(d + 1):
            assert ev.piece(k).basis == ex.piece(k).basis
            assert ev.piece(k).expansion() == ex.piece(k).expansion()

    def test_both_backend_consistent(self, triangle):
        A = build_artinian(triangle, build_lsop(3, 2), 2, backend="both", seed=4)
        assert A.dims() == (1, 1, 1)
        B = build_artinian(simplex_boundary(3), build_lsop(4, 3), 3,
                           backend="both", seed=4)
        assert B.dims() == (1, 1, 1, 1)

    def test_seed_determinism(self):
        K = cross_polytope_boundary(3)
        lsop = build_lsop(6, 3)
        a = build_artinian(K, lsop, 3, seed=13)
        b = build_artinian(K, lsop, 3, seed=13)
        c = build_artinian(K, lsop, 3, seed=14)
        for k in range(4):
            assert a.piece(k).basis == b.piece(k).basis
            assert a.piece(k).basis == c.piece(k).basis
        assert a.dims() == c.dims()


def _random_element(rng, alg, k):
    piece = alg.piece(k)
    vec = {}
    for m in piece.monomials:
        if rng.random() < 0.6:
            vec[m] = RationalFunction.const(alg.base, alg.nvars, rng.randint(-5, 5))
    return AlgebraElement(alg, k, vec)
