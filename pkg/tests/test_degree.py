import random
import warnings
from fractions import Fraction

import pytest

from momentring.complexes import (
    SimplicialComplex,
    SimplicialCycle,
    cross_polytope_boundary,
    fundamental_cycle,
    simplex_boundary,
)
from momentring.degree import (
    DegreeFunctional,
    annihilator,
    decompose_relative,
    degree_element,
    gorensteinify,
    pairing_matrix,
)
from momentring.errors import (
    CharacteristicConfigError,
    ConditionStarWarning,
    DegenerateCycleError,
    DegenerateRhoError,
    DegreeRangeError,
    DimensionMismatchError,
    MalformedScalarError,
    MissingFaceError,
    NoDualFaceError,
    NotACycleError,
)
from momentring.reduction import AlgebraElement, build_artinian, build_lsop
from momentring.scalars import BaseField, Polynomial, RationalFunction

from oracles import (
    cofactor_det,
    frac_matrix_rank,
    numeric_degree_map,
    numeric_minor,
)

Q = BaseField.rationals()
F2 = BaseField.prime(2)


def const(c, nv=6):
    return RationalFunction.const(Q, nv, c)


def element(alg, k, entries):
    """AlgebraElement from {exps: rational constant} pairs."""
    nv = alg.nvars
    return AlgebraElement(alg, k, {e: const(c, nv) for e, c in entries.items()})


def seeded_point(labels, seed):
    rng = random.Random(seed)
    vals = rng.sample(range(2, 80), len(labels))
    return {v: Fraction(x) for v, x in zip(labels, vals)}


# --- the degree functional --------------------------------------------------


class TestDegreeFunctional:
    def test_facet_degree_is_coefficient_over_minor(self, octa_gorenstein):
        df = octa_gorenstein.functional
        for F, mu in sorted(octa_gorenstein.cycle.coefficients.items()):
            expected = RationalFunction(
                Polynomial.const(Q, 6, mu), df.minor_poly(F))
            assert df.degree_facet(F) == expected

    def test_non_facet_degree_is_zero(self, octa_gorenstein):
        # three distinct vertices that span no facet (3, 4 are antipodal)
        assert octa_gorenstein.functional.degree_facet((1, 3, 4)).is_zero

    def test_facet_cardinality_checked(self, octa_gorenstein):
        df = octa_gorenstein.functional
        with pytest.raises(DimensionMismatchError):
            df.degree_facet((1, 3))
        with pytest.raises(DimensionMismatchError):
            df.degree_facet((1, 3, 3))

    def test_minor_poly_matches_cofactor_oracle(self, dd3_gorenstein):
        df = dd3_gorenstein.functional
        for F in sorted(dd3_gorenstein.cycle.coefficients):
            mat = [[Polynomial.monomial(Q, 4, tuple(i if k == v - 1 else 0
                                                    for k in range(4)))
                    for v in F] for i in range(1, 4)]
            assert df.minor_poly(F) == cofactor_det(mat)

    def test_volume_element_matches_cofactor_oracle(self, octa_gorenstein):
        df = octa_gorenstein.functional
        F = (1, 3, 5)
        for i in F:
            # symbolic: the general position column lives in a trailing var
            mat = []
            for p in range(1, 4):
                row = []
                for v in F:
                    e = [0] * 7
                    e[6 if v == i else v - 1] = p
                    row.append(Polynomial.monomial(Q, 7, tuple(e)))
                mat.append(row)
            assert df.volume_element(F, i) == \
                RationalFunction.from_polynomial(cofactor_det(mat))

    def test_volume_element_numeric_rho(self, octa_algebra):
        mu = fundamental_cycle(octa_algebra.complex, Q)
        df = DegreeFunctional(mu, octa_algebra.vertices, rho=7)
        F = (2, 4, 6)
        for i in F:
            mat = []
            for p in range(1, 4):
                row = []
                for v in F:
                    if v == i:
                        row.append(Polynomial.const(Q, 6, 7 ** p))
                    else:
                        e = [0] * 6
                        e[v - 1] = p
                        row.append(Polynomial.monomial(Q, 6, tuple(e)))
                mat.append(row)
            assert df.volume_element(F, i) == \
                RationalFunction.from_polynomial(cofactor_det(mat))

    def test_volume_element_vertex_membership(self, octa_gorenstein):
        with pytest.raises(MissingFaceError):
            octa_gorenstein.functional.volume_element((1, 3, 5), 2)

    def test_triangle_hand_value(self, tri_gorenstein):
        # deg(x1^2) = (t2 - t3) / (t1^2 (t2 - t1)(t3 - t1))
        t1, t2, t3 = (Polynomial.variable(Q, 3, i) for i in range(3))
        expected = RationalFunction(t2 - t3, t1 * t1 * (t2 - t1) * (t3 - t1))
        assert tri_gorenstein.functional.degree_monomial((2, 0, 0)) == expected

    def test_symbolic_value_is_general_position_free(self, tri_gorenstein,
                                                     dd3_gorenstein,
                                                     octa_gorenstein):
        # the same value must come out for the symbolic choice and for two
        # distinct numeric general position values
        for ga in (tri_gorenstein, dd3_gorenstein, octa_gorenstein):
            alg = ga.algebra
            df = ga.functional
            df2 = DegreeFunctional(ga.cycle, alg.vertices, rho=2)
            df5 = DegreeFunctional(ga.cycle, alg.vertices, rho=5)
            for alpha in alg.piece(alg.d).monomials:
                v = df.degree_monomial(alpha)
                assert df2.degree_monomial(alpha) == v
                assert df5.degree_monomial(alpha) == v

    def test_degree_kills_every_relation(self, octa_gorenstein):
        # sum_j t_j^i deg(x_j x^m) = 0 for all m of degree d - 1
        df = octa_gorenstein.functional
        alg = octa_gorenstein.algebra
        for m in alg.piece(2).monomials:
            for i in range(1, 4):
                acc = RationalFunction.zero(Q, 6)
                for j in range(6):
                    e = list(m)
                    e[j] += 1
                    tji = RationalFunction.from_polynomial(
                        Polynomial.monomial(Q, 6, tuple(i if k == j else 0
                                                        for k in range(6))))
                    acc = acc + tji * df.degree_monomial(tuple(e))
                assert acc.is_zero

    def test_orientation_flip_negates(self, tri_gorenstein):
        mu = tri_gorenstein.cycle
        flipped = SimplicialCycle(Q, 2, {F: -c for F, c in mu.coefficients.items()})
        doubled = SimplicialCycle(Q, 2, {F: 2 * c for F, c in mu.coefficients.items()})
        df = tri_gorenstein.functional
        dfn = DegreeFunctional(flipped, (1, 2, 3))
        dfd = DegreeFunctional(doubled, (1, 2, 3))
        for alpha in tri_gorenstein.algebra.piece(2).monomials:
            v = df.degree_monomial(alpha)
            assert dfn.degree_monomial(alpha) == -v
            assert dfd.degree_monomial(alpha) == v + v

    def test_degree_element_is_linear(self, octa_gorenstein):
        alg = octa_gorenstein.algebra
        df = octa_gorenstein.functional
        u = element(alg, 3, {(1, 0, 1, 0, 1, 0): 2, (3, 0, 0, 0, 0, 0): -5})
        expected = (df.degree_monomial((1, 0, 1, 0, 1, 0)).scale(2)
                    + df.degree_monomial((3, 0, 0, 0, 0, 0)).scale(-5))
        assert degree_element(octa_gorenstein, u) == expected
        assert df.degree_element(u) == expected

    def test_degree_argument_validation(self, octa_gorenstein):
        df = octa_gorenstein.functional
        with pytest.raises(DimensionMismatchError):
            df.degree_monomial((1, 1, 1))
        with pytest.raises(DegreeRangeError):
            df.degree_monomial((1, 1, 0, 0, 0, 0))
        u = element(octa_gorenstein.algebra, 2, {(1, 0, 1, 0, 0, 0): 1})
        with pytest.raises(DegreeRangeError):
            df.degree_element(u)

    def test_rho_validation(self, octa_gorenstein):
        with pytest.raises(DegenerateRhoError):
            DegreeFunctional(octa_gorenstein.cycle, range(1, 7), rho=0)

    def test_layout_must_cover_cycle(self, tri_gorenstein):
        with pytest.raises(MissingFaceError):
            DegreeFunctional(tri_gorenstein.cycle, (1, 2))


class TestDegreeAgainstNumericOracle:
    """Lee's interpolation formula against a functional rebuilt at concrete
    parameter points from the defining properties alone."""

    @pytest.mark.parametrize("seed", [23, 61])
    def test_triangle(self, tri_gorenstein, seed):
        self._check(tri_gorenstein, seed)

    @pytest.mark.parametrize("seed", [29, 67])
    def test_simplex_boundary(self, dd3_gorenstein, seed):
        self._check(dd3_gorenstein, seed)

    @pytest.mark.parametrize("seed", [31, 71])
    def test_octahedron(self, octa_gorenstein, seed):
        self._check(octa_gorenstein, seed)

    def _check(self, ga, seed):
        alg = ga.algebra
        labels = alg.vertices
        tvals = seeded_point(labels, seed)
        omap = numeric_degree_map(ga.cycle.coefficients, labels, tvals)
        point = [tvals[v] for v in labels]
        checked = 0
        for alpha in alg.piece(alg.d).monomials:
            lee = ga.functional.degree_monomial(alpha).evaluate_raw(point)
            assert lee == omap.get(alpha, Fraction(0))
            checked += 1
        assert checked == len(alg.piece(alg.d).monomials)


# --- the Gorenstein quotient -------------------------------------------------


def numeric_pairing_matrix(omap, rows, cols):
    return [[omap.get(tuple(a + b for a, b in zip(m, c)), Fraction(0))
             for c in cols] for m in rows]


def greedy_independent_columns(mat):
    chosen = []
    for j in range(len(mat[0]) if mat else 0):
        sub = [[row[c] for c in chosen + [j]] for row in mat]
        if frac_matrix_rank(sub) == len(chosen) + 1:
            chosen.append(j)
    return chosen


class TestGorensteinQuotient:
    def test_sphere_quotients_keep_full_dims(self, tri_gorenstein,
                                             dd3_gorenstein, octa_gorenstein,
                                             dd4_gorenstein):
        assert tri_gorenstein.dims == (1, 1, 1) == tri_gorenstein.algebra.dims()
        assert dd3_gorenstein.dims == (1, 1, 1, 1)
        assert octa_gorenstein.dims == (1, 3, 3, 1) == octa_gorenstein.algebra.dims()
        assert dd4_gorenstein.dims == (1, 1, 1, 1, 1)

    def test_projective_plane_quotient_is_proper(self, rp2_f2_gorenstein):
        assert rp2_f2_gorenstein.algebra.dims() == (1, 3, 6, 1)
        assert rp2_f2_gorenstein.dims == (1, 3, 3, 1)

    def test_wedge_dims(self, wedge_gorenstein):
        assert wedge_gorenstein.algebra.dims() == (1, 3, 2)
        assert wedge_gorenstein.dims == (1, 2, 1)

    @pytest.mark.parametrize("fixture,seed", [
        ("tri_gorenstein", 41), ("dd3_gorenstein", 43),
        ("octa_gorenstein", 47), ("wedge_gorenstein", 53)])
    def test_dims_match_numeric_pairing_ranks(self, request, fixture, seed):
        ga = request.getfixturevalue(fixture)
        labels = ga.algebra.vertices
        tvals = seeded_point(labels, seed)
        omap = numeric_degree_map(ga.cycle.coefficients, labels, tvals)
        for k in range(ga.d + 1):
            mat = numeric_pairing_matrix(omap, ga.squarefree[ga.d - k],
                                         ga.squarefree[k])
            assert frac_matrix_rank(mat) == len(ga.bases[k])

    def test_bases_are_greedy_columns(self, octa_gorenstein, wedge_gorenstein):
        for ga, seed in ((octa_gorenstein, 59), (wedge_gorenstein, 73)):
            labels = ga.algebra.vertices
            tvals = seeded_point(labels, seed)
            omap = numeric_degree_map(ga.cycle.coefficients, labels, tvals)
            for k in range(1, ga.d):
                mat = numeric_pairing_matrix(omap, ga.squarefree[ga.d - k],
                                             ga.squarefree[k])
                chosen = greedy_independent_columns(mat)
                expected = tuple(ga.squarefree[k][j] for j in chosen)
                assert ga.bases[k] == expected

    def test_pairing_inverse_is_exact(self, octa_gorenstein):
        ga = octa_gorenstein
        for k in range(ga.d + 1):
            P = ga.pairing[k]
            inv = ga.pairing_inv[k]
            n = len(P)
            for i in range(n):
                for j in range(n):
                    acc = RationalFunction.zero(Q, 6)
                    for l in range(n):
                        acc = acc + P[i][l] * inv[l][j]
                    assert acc == (RationalFunction.one(Q, 6) if i == j
                                   else RationalFunction.zero(Q, 6))

    def test_pairing_matrix_views(self, octa_gorenstein):
        ga = octa_gorenstein
        assert pairing_matrix(ga, 1, on="B") == ga.pairing[1]
        onA = pairing_matrix(ga, 1, on="A")
        assert len(onA) == 3 and len(onA[0]) == 3
        with pytest.raises(DegreeRangeError):
            pairing_matrix(ga, 4)
        with pytest.raises(MalformedScalarError):
            pairing_matrix(ga, 1, on="C")

    def test_coordinates_roundtrip(self, octa_gorenstein):
        ga = octa_gorenstein
        u = element(ga.algebra, 2, {(2, 0, 0, 0, 0, 0): 1, (0, 0, 1, 0, 1, 0): -3})
        coords = ga.coordinates(u)
        rebuilt = ga.element_from_coordinates(2, coords)
        diff = u - rebuilt
        assert ga.is_zero(diff)
        assert ga.coordinates(rebuilt) == coords

    def test_quotient_collapses_pairing_kernel(self, rp2_f2_gorenstein):
        # A^2 is six dimensional, B^2 three dimensional: some class must be
        # nonzero in the reduction yet zero in the quotient
        ga = rp2_f2_gorenstein
        alg = ga.algebra
        found = False
        for e in alg.piece(2).basis:
            u = AlgebraElement(alg, 2, {e: RationalFunction.one(F2, 6)})
            rebuilt = ga.element_from_coordinates(2, ga.coordinates(u))
            diff = u - rebuilt
            assert ga.is_zero(diff)
            if not diff.is_zero_in_algebra():
                found = True
        assert found

    def test_quotient_kernel_is_an_ideal(self, rp2_f2_gorenstein):
        # multiply an element of the kernel by every variable: the products
        # must still pair to zero
        ga = rp2_f2_gorenstein
        alg = ga.algebra
        one = RationalFunction.one(F2, 6)
        for e in alg.piece(1).monomials:
            u = AlgebraElement(alg, 1, {e: one})
            rebuilt = ga.element_from_coordinates(1, ga.coordinates(u))
            diff = u - rebuilt
            assert ga.is_zero(diff)
            for j in range(6):
                xj = AlgebraElement(alg, 1, {tuple(1 if i == j else 0
                                                   for i in range(6)): one})
                assert ga.is_zero(ga.multiply(diff, xj))

    def test_restriction_to_ambient_complex_is_invariant(self, octa_gorenstein):
        # the same cycle inside a larger complex (an extra facet hanging on
        # the edge 13 through a new vertex) must produce the same quotient
        octa = cross_polytope_boundary(3)
        ambient = SimplicialComplex(sorted(octa.facets) + [(1, 3, 7)])
        alg = build_artinian(ambient, build_lsop(7, 3), 3, seed=11)
        mu = octa_gorenstein.cycle
        ga = gorensteinify(alg, mu)
        assert ga.dims == (1, 3, 3, 1)
        for k in range(4):
            small = octa_gorenstein.bases[k]
            assert tuple(e[:6] for e in ga.bases[k]) == small
            assert all(e[6] == 0 for e in ga.bases[k])
            for row7, row6 in zip(ga.pairing[k], octa_gorenstein.pairing[k]):
                assert tuple(v.project(6) for v in row7) == row6
        for F in sorted(mu.coefficients):
            assert ga.functional.degree_facet(F).project(6) == \
                octa_gorenstein.functional.degree_facet(F)
        x7 = alg.variable_element(7)
        assert ga.is_zero(x7)
        assert ga.is_zero(alg.monomial_element((1, 0, 0, 0, 0, 0, 1)))

    def test_condition_star_reports(self, octa_gorenstein, wedge_gorenstein):
        assert bool(octa_gorenstein.condition_star_report())
        rep = wedge_gorenstein.condition_star_report()
        assert not rep.ok
        assert rep.first_failure == (3,)


# --- annihilators ------------------------------------------------------------


class TestAnnihilator:
    def test_octahedron_vertex(self, octa_gorenstein):
        ga = octa_gorenstein
        with warnings.catch_warnings(record=True) as record:
            warnings.simplefilter("always")
            rep = annihilator(ga, (1,), 2)
        assert not record
        assert rep.dim == 2
        assert rep.condition_star_ok
        # every spanning monomial misses the star of vertex 1, so each one
        # carries its antipode 2
        for e in rep.spanning_monomials:
            assert e[1] >= 1
        # the kernel vectors and the spanning monomials all annihilate x_1
        tau_el = element(ga.algebra, 1, {(1, 0, 0, 0, 0, 0): 1})
        for coords in rep.kernel_coordinates:
            v = ga.element_from_coordinates(2, coords)
            prod = ga.multiply(tau_el, v)
            assert degree_element(ga, prod).is_zero
        for e in rep.spanning_monomials:
            prod = ga.multiply(tau_el, element(ga.algebra, 2, {e: 1}))
            assert degree_element(ga, prod).is_zero

    def test_octahedron_edge(self, octa_gorenstein):
        rep = annihilator(octa_gorenstein, (1, 3), 1)
        assert rep.dim == 2
        tau_el = element(octa_gorenstein.algebra, 2, {(1, 0, 1, 0, 0, 0): 1})
        for coords in rep.kernel_coordinates:
            v = octa_gorenstein.element_from_coordinates(1, coords)
            prod = octa_gorenstein.multiply(tau_el, v)
            assert degree_element(octa_gorenstein, prod).is_zero

    def test_simplex_boundary_all_faces(self, dd3_gorenstein):
        ga = dd3_gorenstein
        for m in range(4):
            for tau in ga.cycle.support.faces_of_card(3 - m):
                rep = annihilator(ga, tau, m)
                # every graded piece is one dimensional and pairs
                # nondegenerately, so the annihilator always vanishes
                assert rep.dim == 0
                assert rep.condition_star_ok

    def test_wedge_warns_and_reports_failure(self, wedge_gorenstein):
        with pytest.warns(ConditionStarWarning):
            rep = annihilator(wedge_gorenstein, (3,), 1)
        assert not rep.condition_star_ok
        # the kernel is still correct even though the span description is
        # not guaranteed: kernel vectors annihilate x_3
        tau_el = element(wedge_gorenstein.algebra, 1, {(0, 0, 1, 0, 0): 1})
        for coords in rep.kernel_coordinates:
            v = wedge_gorenstein.element_from_coordinates(1, coords)
            prod = wedge_gorenstein.multiply(tau_el, v)
            assert degree_element(wedge_gorenstein, prod).is_zero

    def test_argument_validation(self, octa_gorenstein):
        with pytest.raises(DimensionMismatchError):
            annihilator(octa_gorenstein, (1,), 1)
        with pytest.raises(MissingFaceError):
            annihilator(octa_gorenstein, (1, 2), 1)


# --- relative decompositions -------------------------------------------------


class TestDecomposeRelative:
    def test_pure_dual_monomial(self, octa_gorenstein):
        ga = octa_gorenstein
        for j, sigma in ((5, (6,)), (4, (5,))):
            u = element(ga.algebra, 1, {tuple(1 if i == j else 0
                                              for i in range(6)): 1})
            rep = decompose_relative(ga, u, (1, 3))
            assert rep.sigma == sigma
            assert rep.coefficient == RationalFunction.one(Q, 6)
            assert rep.remainder == ()

    def test_mixed_element(self, octa_gorenstein):
        ga = octa_gorenstein
        u = element(ga.algebra, 1, {(0, 0, 0, 0, 1, 0): 2, (0, 1, 0, 0, 0, 0): 3})
        rep = decompose_relative(ga, u, (1, 3))
        assert rep.sigma == (5,)
        assert rep.coefficient == const(2)
        assert rep.remainder == (((0, 1, 0, 0, 0, 0), const(3)),)

    def test_split_reassembles_in_quotient(self, octa_gorenstein):
        ga = octa_gorenstein
        u = element(ga.algebra, 1, {(0, 0, 0, 0, 1, 0): 2,
                                    (0, 0, 0, 0, 0, 1): -1,
                                    (0, 1, 0, 0, 0, 0): 4})
        rep = decompose_relative(ga, u, (1, 3))
        sig_exps = [0] * 6
        for v in rep.sigma:
            sig_exps[v - 1] = 1
        vec = {tuple(sig_exps): rep.coefficient}
        for e, c in rep.remainder:
            vec[e] = vec.get(e, RationalFunction.zero(Q, 6)) + c
        rebuilt = AlgebraElement(ga.algebra, 1, vec)
        assert ga.is_zero(u - rebuilt)
        # the remainder genuinely avoids the star of tau
        star = ga.cycle.support.star((1, 3))
        for e, _ in rep.remainder:
            supp = tuple(i + 1 for i, x in enumerate(e) if x)
            assert not star.has_face(supp)

    def test_no_dual_face(self, octa_gorenstein):
        ga = octa_gorenstein
        df = ga.functional
        c5 = df.degree_monomial((1, 0, 1, 0, 1, 0))
        c6 = df.degree_monomial((1, 0, 1, 0, 0, 1))
        u = AlgebraElement(ga.algebra, 1,
                           {(0, 0, 0, 0, 1, 0): c6, (0, 0, 0, 0, 0, 1): -c5})
        with pytest.raises(NoDualFaceError):
            decompose_relative(ga, u, (1, 3))

    def test_size_validation(self, octa_gorenstein):
        u = element(octa_gorenstein.algebra, 1, {(0, 0, 0, 0, 1, 0): 1})
        with pytest.raises(DimensionMismatchError):
            decompose_relative(octa_gorenstein, u, (1,))


# --- construction contracts --------------------------------------------------


class TestGorensteinifyContracts:
    def test_dimension_mismatch(self, dd3_algebra, tri_gorenstein):
        with pytest.raises(DimensionMismatchError):
            gorensteinify(dd3_algebra, tri_gorenstein.cycle)

    def test_base_field_mismatch(self, octa_algebra):
        mu = fundamental_cycle(cross_polytope_boundary(3), F2)
        with pytest.raises(CharacteristicConfigError):
            gorensteinify(octa_algebra, mu)

    def test_algebra_too_shallow(self):
        octa = cross_polytope_boundary(3)
        alg = build_artinian(octa, build_lsop(6, 3), 2, seed=11)
        with pytest.raises(DegreeRangeError):
            gorensteinify(alg, fundamental_cycle(octa, Q))

    def test_cycle_needs_faces_of_complex(self, octa_algebra):
        stray = SimplicialCycle(Q, 3, {(1, 2, 3): 1})
        with pytest.raises(MissingFaceError):
            gorensteinify(octa_algebra, stray)

    def test_chain_must_close(self, octa_algebra):
        chain = SimplicialCycle(Q, 3, {(1, 3, 5): 1})
        with pytest.raises(NotACycleError):
            gorensteinify(octa_algebra, chain)

    def test_zero_chain_rejected(self):
        with pytest.raises(DegenerateCycleError):
            SimplicialCycle(Q, 3, {})

    def test_numeric_rho_quotient_matches_symbolic(self, octa_algebra,
                                                   octa_gorenstein):
        mu = octa_gorenstein.cycle
        ga = gorensteinify(octa_algebra, mu, rho=3)
        assert ga.dims == octa_gorenstein.dims
        assert all(ga.bases[k] == octa_gorenstein.bases[k] for k in range(4))
        assert ga.pairing == octa_gorenstein.pairing
