"""Shared session fixtures.

The expensive objects (algebra builds and their lazily computed exact
expansions) are session scoped so each is paid for once across the whole
suite; graded pieces memoize their expansion, so any test touching the
octahedron degree-3 coordinates reuses the same computation.
"""
import pytest

from momentring.complexes import (
    SimplicialComplex,
    SimplicialCycle,
    cross_polytope_boundary,
    fundamental_cycle,
    real_projective_plane,
    simplex_boundary,
)
from momentring.degree import gorensteinify
from momentring.reduction import build_artinian, build_lsop
from momentring.scalars import BaseField

Q = BaseField.rationals()
F2 = BaseField.prime(2)
F3 = BaseField.prime(3)


@pytest.fixture(scope="session")
def triangle():
    return SimplicialComplex([(1, 2), (2, 3), (1, 3)])


@pytest.fixture(scope="session")
def tri_algebra(triangle):
    return build_artinian(triangle, build_lsop(3, 2), 2, seed=11)


@pytest.fixture(scope="session")
def dd3_algebra():
    return build_artinian(simplex_boundary(3), build_lsop(4, 3), 3, seed=11)


@pytest.fixture(scope="session")
def octa_algebra():
    return build_artinian(cross_polytope_boundary(3), build_lsop(6, 3), 3, seed=11)


@pytest.fixture(scope="session")
def dd4_algebra():
    return build_artinian(simplex_boundary(4), build_lsop(5, 4), 4, seed=11)


@pytest.fixture(scope="session")
def rp2_f2_algebra():
    return build_artinian(real_projective_plane(), build_lsop(6, 3, F2), 3,
                          base=F2, seed=11)


@pytest.fixture(scope="session")
def tri_gorenstein(tri_algebra):
    return gorensteinify(tri_algebra, fundamental_cycle(tri_algebra.complex, Q))


@pytest.fixture(scope="session")
def dd3_gorenstein(dd3_algebra):
    return gorensteinify(dd3_algebra, fundamental_cycle(dd3_algebra.complex, Q))


@pytest.fixture(scope="session")
def octa_gorenstein(octa_algebra):
    return gorensteinify(octa_algebra, fundamental_cycle(octa_algebra.complex, Q))


@pytest.fixture(scope="session")
def dd4_gorenstein(dd4_algebra):
    return gorensteinify(dd4_algebra, fundamental_cycle(dd4_algebra.complex, Q))


@pytest.fixture(scope="session")
def rp2_f2_gorenstein(rp2_f2_algebra):
    return gorensteinify(rp2_f2_algebra,
                         fundamental_cycle(rp2_f2_algebra.complex, F2))


@pytest.fixture(scope="session")
def wedge_complex():
    # two hollow triangles glued at the vertex 3
    return SimplicialComplex([(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])


@pytest.fixture(scope="session")
def wedge_algebra(wedge_complex):
    return build_artinian(wedge_complex, build_lsop(5, 2), 2, seed=11)


@pytest.fixture(scope="session")
def wedge_cycle():
    return SimplicialCycle(Q, 2, {(1, 2): 1, (1, 3): -1, (2, 3): 1,
                                  (3, 4): 1, (3, 5): -1, (4, 5): 1})


@pytest.fixture(scope="session")
def wedge_gorenstein(wedge_algebra, wedge_cycle):
    return gorensteinify(wedge_algebra, wedge_cycle)
