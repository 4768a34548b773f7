"""Artinian reductions of face rings with the moment-curve system of
parameters.

The face ring of a complex K on variables x_v (one per vertex that actually
occurs in K) is cut down by theta_i = sum_j t_j^i x_j for i = 1..d, working
over the field of rational functions in the t_j.  Each graded piece A^k is
the span of degree-k face monomials modulo the rows theta_i * m, with m
running over degree-(k-1) face monomials and non-face products dropped.

Per-degree dimensions and the basis (the lexicographically least independent
set of face monomials) are decided by the two-tier rank engine: the
evaluated backend certifies them at three seeded points, the exact backend
eliminates symbolically, and "both" runs the two and insists they agree.
Coordinate expansions over the basis are always exact; under the evaluated
backend they are computed symbolically on first use, per degree, and checked
against the certified basis.
"""
from __future__ import annotations

from itertools import combinations

from .complexes import SimplicialComplex
from .errors import (
    DegreeRangeError,
    DimensionMismatchError,
    InternalConsistencyError,
    MalformedScalarError,
)
from .factored import FactoredDomain
from .linalg import PointSampler, RFDomain, quotient_data, symbolic_quotient_data
from .scalars import BaseField, Polynomial, RationalFunction, monomial_sort_key


class MomentCurveLSOP:
    """theta_i = sum_j t_j^i x_j for i = 1..d on ambient vertices 1..n; the
    realization matrix V has column j equal to (t_j, t_j^2, ..., t_j^d)."""

    def __init__(self, n: int, d: int, base: BaseField | None = None):
        if not 1 <= d <= n:
            raise DimensionMismatchError(f"need 1 <= d <= n, got d={d}, n={n}")
        self.n = n
        self.d = d
        self.base = base if base is not None else BaseField.rationals()

    def theta_coefficient(self, i: int, j: int) -> Polynomial:
        """Coefficient of x_j in theta_i, namely t_j^i (i, j both 1-based)."""
        if not 1 <= i <= self.d or not 1 <= j <= self.n:
            raise DimensionMismatchError(f"theta index ({i},{j}) out of range")
        exps = [0] * self.n
        exps[j - 1] = i
        return Polynomial.monomial(self.base, self.n, tuple(exps))

    def realization_column(self, j: int):
        """Column j of V: (t_j, t_j^2, ..., t_j^d)."""
        return tuple(self.theta_coefficient(i, j) for i in range(1, self.d + 1))

    def minor_det(self, F) -> RationalFunction:
        F = tuple(sorted(F))
        if len(F) != self.d or len(set(F)) != self.d:
            raise DimensionMismatchError(
                f"minor needs exactly d={self.d} distinct columns, got {F}")
        if F and not 1 <= F[0] <= F[-1] <= self.n:
            raise DimensionMismatchError(f"column labels {F} outside 1..{self.n}")
        poly = moment_vandermonde_poly(self.base, self.n, [j - 1 for j in F])
        return RationalFunction.from_polynomial(poly)


def moment_vandermonde_poly(base: BaseField, nvars: int, var_indices) -> Polynomial:
    """Product formula (prod of the variables) * prod_{c<c'} (v_{c'} - v_c)
    for columns on the moment curve at the given 0-based variable indices,
    taken in the given order."""
    out = Polynomial.one(base, nvars)
    for i in var_indices:
        out = out * Polynomial.variable(base, nvars, i)
    for a in range(len(var_indices)):
        for b in range(a + 1, len(var_indices)):
            va = Polynomial.variable(base, nvars, var_indices[a])
            vb = Polynomial.variable(base, nvars, var_indices[b])
            out = out * (vb - va)
    return out


def build_lsop(n: int, d: int, base: BaseField | None = None) -> MomentCurveLSOP:
    return MomentCurveLSOP(n, d, base)


def moment_minor_det(lsop: MomentCurveLSOP, F) -> RationalFunction:
    return lsop.minor_det(F)


# monomial bookkeeping -------------------------------------------------------


def _compositions(total: int, parts: int):
    """Positive integer vectors of the given length summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def face_monomials(K: SimplicialComplex, vertices, k: int):
    """Degree-k monomials supported on faces, in the canonical order (sorted
    by descending lex on exponents, so ascending vertex words)."""
    nv = len(vertices)
    vidx = {v: i for i, v in enumerate(vertices)}
    if k == 0:
        return [(0,) * nv]
    out = []
    for card in range(1, k + 1):
        for sigma in K.faces_of_card(card):
            for comp in _compositions(k, card):
                exps = [0] * nv
                for v, e in zip(sigma, comp):
                    exps[vidx[v]] = e
                out.append(tuple(exps))
    out.sort(key=monomial_sort_key)
    return out


class GradedPiece:
    """Degree-k slice of the reduction.

    monomials: all face monomials of degree k in canonical order.
    basis: the chosen independent subset (monomial exponent tuples).
    Coordinates of any face monomial over the basis come from expand();
    they are computed symbolically, on first use when the algebra was built
    with the evaluated backend."""

    def __init__(self, algebra, k, monomials, basis_positions):
        self.algebra = algebra
        self.k = k
        self.monomials = tuple(monomials)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.basis_positions = tuple(basis_positions)
        self.basis = tuple(self.monomials[i] for i in basis_positions)
        self.dim = len(self.basis)
        self._expansion = None

    def expand(self, exps):
        """Coordinate vector (tuple of rational functions) of a face
        monomial over the basis."""
        i = self.index.get(tuple(exps))
        if i is None:
            raise MalformedScalarError(f"{exps} is not a face monomial of degree {self.k}")
        return self.expansion()[i]

    def expansion(self):
        if self._expansion is None:
            self._expansion = self.algebra._symbolic_expansion(self.k)
        return self._expansion


class AlgebraElement:
    """Homogeneous element stored as a sparse vector over the degree-k face
    monomials, with rational function coefficients."""

    def __init__(self, algebra, k: int, vec: dict):
        self.algebra = algebra
        self.k = k
        self.vec = {e: c for e, c in vec.items() if not c.is_zero}

    def _fac_coordinates(self):
        # run the accumulation in the factored scalar domain so that large
        # coefficients never force expanded gcd reductions
        piece = self.algebra.piece(self.k)
        fd = self.algebra._factored_domain()
        out = [fd.zero] * piece.dim
        for e, c in self.vec.items():
            col = self.algebra._factored_expand(self.k, e)
            fc = fd.from_rational_function(c)
            for i, v in enumerate(col):
                if not fd.is_zero(v):
                    out[i] = fd.add(out[i], fd.mul(fc, v))
        return out

    def coordinates(self):
        """Coordinates over the basis of A^k."""
        fd = self.algebra._factored_domain()
        return tuple(fd.to_rational(v) for v in self._fac_coordinates())

    def is_zero_in_algebra(self) -> bool:
        fd = self.algebra._factored_domain()
        return all(fd.is_zero(v) for v in self._fac_coordinates())

    def __add__(self, other):
        if self.k != other.k or self.algebra is not other.algebra:
            raise DimensionMismatchError("can only add elements of the same graded piece")
        out = dict(self.vec)
        for e, c in other.vec.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return AlgebraElement(self.algebra, self.k, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, self.k, {e: -c for e, c in self.vec.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RationalFunction):
        return AlgebraElement(self.algebra, self.k, {e: c * v for e, v in self.vec.items()})

    def __mul__(self, other):
        return multiply(self.algebra, self, other)

    def __repr__(self):
        return f"AlgebraElement(k={self.k}, terms={len(self.vec)})"


class ArtinianAlgebra:
    """Immutable bundle of graded pieces A^0..A^max_degree."""

    def __init__(self, K, lsop, base, backend, seed, vertices):
        self.complex = K
        self.lsop = lsop
        self.base = base
        self.backend = backend
        self.seed = seed
        self.vertices = tuple(vertices)
        self.nvars = len(self.vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.d = lsop.d
        self.domain = RFDomain(base, self.nvars)
        self.pieces: dict = {}
        self.max_degree = -1
        self._fd = None
        self._fac_expand = {}

    # construction helpers (called by build_artinian) ----------------------

    def _relation_rows_evaluated(self, monos_prev, monos_k, point, dom):
        """Rows theta_i * m at an evaluation point, built directly from
        powers of the point coordinates."""
        index = {m: i for i, m in enumerate(monos_k)}
        powers = [[None] * (self.d + 1) for _ in range(self.nvars)]
        for j in range(self.nvars):
            powers[j][0] = dom.one
            for i in range(1, self.d + 1):
                powers[j][i] = dom.mul(powers[j][i - 1], point[j])
        rows = []
        for m in monos_prev:
            supp = frozenset(i for i, e in enumerate(m) if e)
            for i in range(1, self.d + 1):
                row = {}
                for j in range(self.nvars):
                    if j not in supp:
                        face = tuple(sorted(self.vertices[x] for x in supp | {j}))
                        if not self.complex.has_face(face):
                            continue
                    e = list(m)
                    e[j] += 1
                    row[index[tuple(e)]] = powers[j][i]
                rows.append(row)
        return rows

    def _relation_rows_symbolic(self, monos_prev, monos_k):
        index = {m: i for i, m in enumerate(monos_k)}
        rows = []
        for m in monos_prev:
            supp = frozenset(i for i, e in enumerate(m) if e)
            for i in range(1, self.d + 1):
                row = {}
                for j in range(self.nvars):
                    if j not in supp:
                        face = tuple(sorted(self.vertices[x] for x in supp | {j}))
                        if not self.complex.has_face(face):
                            continue
                    e = list(m)
                    e[j] += 1
                    exps = [0] * self.nvars
                    exps[j] = i
                    coeff = RationalFunction.from_polynomial(
                        Polynomial.monomial(self.base, self.nvars, tuple(exps)))
                    row[index[tuple(e)]] = coeff
                rows.append(row)
        return rows

    def _symbolic_expansion(self, k):
        """Exact coordinates of every degree-k face monomial over the basis,
        from full symbolic elimination; cross-checked against the basis the
        build committed to."""
        piece = self.pieces[k]
        if k == 0:
            return ((self.domain.one,),)
        rows = self._relation_rows_symbolic(self.pieces[k - 1].monomials, piece.monomials)
        qd = symbolic_quotient_data(rows, len(piece.monomials), self.base, self.nvars,
                                    want_expansion=True)
        if qd.basis_cols != piece.basis_positions:
            raise InternalConsistencyError(
                f"symbolic basis at degree {k} disagrees with certified basis")
        return qd.expansion

    def _factored_domain(self) -> FactoredDomain:
        if self._fd is None:
            self._fd = FactoredDomain(self.base, self.nvars)
        return self._fd

    def _factored_expand(self, k, exps):
        key = (k, tuple(exps))
        col = self._fac_expand.get(key)
        if col is None:
            fd = self._factored_domain()
            col = tuple(fd.from_rational_function(v)
                        for v in self.piece(k).expand(exps))
            self._fac_expand[key] = col
        return col

    # public queries -------------------------------------------------------

    def piece(self, k: int) -> GradedPiece:
        if k not in self.pieces:
            raise DegreeRangeError(f"degree {k} not built (max {self.max_degree})")
        return self.pieces[k]

    def dims(self):
        return tuple(self.pieces[k].dim for k in range(self.max_degree + 1))

    # element constructors -------------------------------------------------

    def zero_element(self, k: int) -> AlgebraElement:
        return AlgebraElement(self, k, {})

    def monomial_element(self, exps) -> AlgebraElement:
        """The image of x^exps; a monomial on a non-face is already zero."""
        exps = tuple(exps)
        k = sum(exps)
        self.piece(k)
        supp = tuple(self.vertices[i] for i, e in enumerate(exps) if e)
        if not self.complex.has_face(supp):
            return self.zero_element(k)
        return AlgebraElement(self, k, {exps: self.domain.one})

    def face_element(self, face) -> AlgebraElement:
        """The squarefree monomial x_F."""
        exps = [0] * self.nvars
        for v in face:
            if v not in self.vindex:
                raise MalformedScalarError(f"vertex {v} has no variable")
            exps[self.vindex[v]] = 1
        return self.monomial_element(exps)

    def variable_element(self, v) -> AlgebraElement:
        return self.face_element((v,))

    def theta_element(self, i: int) -> AlgebraElement:
        """Image of theta_i in degree 1 (it is zero in the algebra)."""
        vec = {}
        for pos, v in enumerate(self.vertices):
            exps = [0] * self.nvars
            exps[pos] = 1
            cexp = [0] * self.nvars
            cexp[pos] = i
            vec[tuple(exps)] = RationalFunction.from_polynomial(
                Polynomial.monomial(self.base, self.nvars, tuple(cexp)))
        return AlgebraElement(self, 1, vec)

    def element_from_coordinates(self, k: int, coords) -> AlgebraElement:
        piece = self.piece(k)
        if len(coords) != piece.dim:
            raise DimensionMismatchError("coordinate length does not match basis")
        vec = {}
        for c, m in zip(coords, piece.basis):
            if not c.is_zero:
                vec[m] = c
        return AlgebraElement(self, k, vec)


def multiply(algebra: ArtinianAlgebra, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Product in the algebra; non-face monomial products vanish."""
    k = u.k + v.k
    if k > algebra.max_degree:
        raise DegreeRangeError(
            f"product degree {k} exceeds built degree {algebra.max_degree}")
    K = algebra.complex
    out = {}
    for e1, c1 in u.vec.items():
        for e2, c2 in v.vec.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            face = tuple(algebra.vertices[i] for i, x in enumerate(e) if x)
            if not K.has_face(face):
                continue
            c = c1 * c2
            s = out.get(e)
            out[e] = c if s is None else s + c
    return AlgebraElement(algebra, k, out)


def build_artinian(K: SimplicialComplex, lsop: MomentCurveLSOP,
                   up_to_degree: int | None = None, *, base: BaseField | None = None,
                   backend: str = "evaluated", seed: int = 0) -> ArtinianAlgebra:
    """Construct A^0..A^up_to_degree (default up to d).

    Vertices of the ambient labeling that appear in no face are dropped:
    they would only contribute trivial x_v = 0 relations."""
    if backend not in ("evaluated", "exact", "both"):
        raise MalformedScalarError(f"unknown backend {backend!r}")
    base = base if base is not None else BaseField.rationals()
    vertices = K.vertices
    if not vertices:
        raise MalformedScalarError("complex has no vertices")
    if vertices[-1] > lsop.n:
        raise DimensionMismatchError("complex vertices exceed the ambient label bound")
    top = lsop.d if up_to_degree is None else up_to_degree
    if top < 0:
        raise DegreeRangeError("up_to_degree must be nonnegative")

    alg = ArtinianAlgebra(K, lsop, base, backend, seed, vertices)
    monos = {k: face_monomials(K, vertices, k) for k in range(top + 1)}

    points = None
    if backend in ("evaluated", "both"):
        sampler = PointSampler(base, alg.nvars, seed)
        points = [(sampler.next_point(), sampler.domain) for _ in range(3)]

    for k in range(top + 1):
        if k == 0:
            alg.pieces[0] = GradedPiece(alg, 0, monos[0], (0,))
            alg.pieces[0]._expansion = ((alg.domain.one,),)
            alg.max_degree = 0
            continue
        ncols = len(monos[k])
        basis_positions = None
        if backend in ("evaluated", "both"):
            runs = []
            for point, dom in points:
                rows = alg._relation_rows_evaluated(monos[k - 1], monos[k], point, dom)
                qd = quotient_data(rows, ncols, dom, want_expansion=False)
                runs.append((qd.rank, qd.basis_cols))
            agreed = all(r == runs[0] for r in runs[1:])
            if agreed:
                basis_positions = runs[0][1]
            elif backend == "both":
                raise InternalConsistencyError(
                    f"evaluation points disagree at degree {k}: {runs}")
        symbolic_qd = None
        if backend in ("exact", "both") or basis_positions is None:
            rows = alg._relation_rows_symbolic(monos[k - 1], monos[k])
            symbolic_qd = symbolic_quotient_data(rows, ncols, base, alg.nvars,
                                                 want_expansion=True)
            if backend == "both" and basis_positions is not None \
                    and symbolic_qd.basis_cols != basis_positions:
                raise InternalConsistencyError(
                    f"backends disagree on the degree-{k} basis")
            basis_positions = symbolic_qd.basis_cols
        piece = GradedPiece(alg, k, monos[k], basis_positions)
        if symbolic_qd is not None:
            piece._expansion = symbolic_qd.expansion
        alg.pieces[k] = piece
        alg.max_degree = k
    return alg
