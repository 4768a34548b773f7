"""Degree functionals, Poincare pairings, and Gorenstein quotients.

The degree of a facet monomial is the cycle coefficient divided by the
moment minor, deg(x_F) = mu_F/|V|_F.  Lee's interpolation formula extends
this to every monomial of top degree,

    deg(x^alpha) = sum over facets F containing supp(alpha) of
                   deg(x_F) * prod_{i in F} [F-i]^(alpha_i - 1),

where [F-i] is the volume element: the minor with the column of i replaced
by a general position vector on the moment curve.  With the symbolic choice
rho = (r, r^2, ..., r^d) the variable r cancels from the normalized result,
which we verify on every call.

All structure of the Gorenstein quotient B = A/L is derived from these
values alone: graded dimensions and bases come from ranks of pairing
matrices between squarefree monomials, and coordinates in B come from
pairing against the dual basis and inverting a small matrix.  No symbolic
elimination on the relation matrices of A is ever needed here.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .complexes import SimplicialCycle, check_condition_star
from .errors import (
    CharacteristicConfigError,
    ConditionStarWarning,
    DegenerateCycleError,
    DegenerateRhoError,
    DegreeRangeError,
    DimensionMismatchError,
    InternalConsistencyError,
    MalformedScalarError,
    MissingFaceError,
    NoDualFaceError,
    NotACycleError,
)
from .factored import FactoredDomain
from .linalg import certified_rank, matrix_inverse, rref
from .reduction import AlgebraElement, ArtinianAlgebra, multiply
from .scalars import Polynomial, RationalFunction


class DegreeFunctional:
    """Degree map of a cycle, over the variable layout of an algebra.

    vertices fixes which label gets which variable; rho is None for the
    symbolic general-position choice and a nonzero base constant for the
    numeric fast path."""

    def __init__(self, cycle: SimplicialCycle, vertices, rho=None):
        self.cycle = cycle
        self.base = cycle.base
        self.d = cycle.d
        self.vertices = tuple(vertices)
        self.nvars = len(self.vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        for F in cycle.coefficients:
            for v in F:
                if v not in self.vindex:
                    raise MissingFaceError(
                        f"cycle vertex {v} has no variable in this layout")
        if rho is not None:
            rho = self.base.coerce(rho)
            if self.base.is_zero(rho):
                raise DegenerateRhoError("numeric general-position value must be nonzero")
        self.rho = rho
        self._facets_by_vertex = {}
        for F in sorted(cycle.coefficients):
            for v in F:
                self._facets_by_vertex.setdefault(v, []).append(F)
        self._mono_cache = {}
        self._fds = {}
        self._fac_cache = {}

    # basic values ---------------------------------------------------------

    def _var(self, nvars, idx):
        return Polynomial.variable(self.base, nvars, idx)

    def minor_poly(self, F) -> Polynomial:
        """|V|_F over this variable layout."""
        out = Polynomial.one(self.base, self.nvars)
        pos = [self.vindex[v] for v in F]
        for i in pos:
            out = out * self._var(self.nvars, i)
        for a in range(len(pos)):
            for b in range(a + 1, len(pos)):
                out = out * (self._var(self.nvars, pos[b]) - self._var(self.nvars, pos[a]))
        return out

    def degree_facet(self, F) -> RationalFunction:
        F = tuple(sorted(F))
        if len(F) != self.d or len(set(F)) != self.d:
            raise DimensionMismatchError(
                f"facet must have exactly d={self.d} distinct vertices, got {F}")
        mu = self.cycle.coefficient(F)
        if self.base.is_zero(mu):
            return RationalFunction.zero(self.base, self.nvars)
        return RationalFunction(
            Polynomial.const(self.base, self.nvars, mu), self.minor_poly(F))

    def volume_element(self, F, i) -> RationalFunction:
        """[F-i]: the minor with the column of i replaced by the general
        position vector.  Symbolic rho lives in an extra trailing variable."""
        F = tuple(sorted(F))
        if len(F) != self.d or len(set(F)) != self.d:
            raise DimensionMismatchError(
                f"face must have exactly d={self.d} distinct vertices, got {F}")
        if i not in F:
            raise MissingFaceError(f"vertex {i} is not in {F}")
        for v in F:
            if v != i and v not in self.vindex:
                raise MissingFaceError(f"vertex {v} has no variable in this layout")
        if self.rho is None:
            nv = self.nvars + 1
            values = [self._var(nv, nv - 1) if v == i else self._var(nv, self.vindex[v])
                      for v in F]
        else:
            nv = self.nvars
            rho = Polynomial.const(self.base, nv, self.rho)
            values = [rho if v == i else self._var(nv, self.vindex[v]) for v in F]
        out = Polynomial.one(self.base, nv)
        for v in values:
            out = out * v
        for a in range(len(values)):
            for b in range(a + 1, len(values)):
                out = out * (values[b] - values[a])
        return RationalFunction.from_polynomial(out)

    # Lee's formula --------------------------------------------------------

    # The interpolation sum is evaluated in a factored scalar domain: facet
    # degrees and volume elements are products of variables and differences
    # of moment values, so keeping them as factor tables makes the
    # multiplications and the final cancellation of r nearly free.

    def _factored_domain(self, nv) -> FactoredDomain:
        fd = self._fds.get(nv)
        if fd is None:
            fd = FactoredDomain(self.base, nv)
            self._fds[nv] = fd
        return fd

    def _value_polys(self, fd, F, replaced):
        """Moment values of the facet columns over fd's layout, with the
        column of `replaced` (if given) set to the general position value."""
        out = []
        for v in F:
            if v == replaced:
                if self.rho is None:
                    out.append(self._var(fd.nvars, fd.nvars - 1))
                else:
                    out.append(Polynomial.const(self.base, fd.nvars, self.rho))
            else:
                out.append(self._var(fd.nvars, self.vindex[v]))
        return out

    def _fac_product(self, fd, values):
        out = fd.one
        for p in values:
            out = fd.mul(out, fd.from_polynomial(p))
        for a in range(len(values)):
            for b in range(a + 1, len(values)):
                out = fd.mul(out, fd.from_polynomial(values[b] - values[a]))
        return out

    def _fac_facet_degree(self, fd, F):
        key = (fd.nvars, F)
        out = self._fac_cache.get(key)
        if out is None:
            mu = self.cycle.coefficient(F)
            if self.base.is_zero(mu):
                out = fd.zero
            else:
                minor = self._fac_product(fd, self._value_polys(fd, F, None))
                out = fd.div(fd.from_base(mu), minor)
            self._fac_cache[key] = out
        return out

    def _fac_volume(self, fd, F, v):
        key = (fd.nvars, F, v)
        out = self._fac_cache.get(key)
        if out is None:
            out = self._fac_product(fd, self._value_polys(fd, F, v))
            self._fac_cache[key] = out
        return out

    def degree_monomial(self, alpha) -> RationalFunction:
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise DimensionMismatchError(
                f"exponent vector has {len(alpha)} entries, layout has {self.nvars}")
        if sum(alpha) != self.d:
            raise DegreeRangeError(
                f"exponent sum {sum(alpha)} differs from d={self.d}")
        cached = self._mono_cache.get(alpha)
        if cached is not None:
            return cached
        supp = [self.vertices[i] for i, e in enumerate(alpha) if e]
        facets = [F for F in self._facets_by_vertex.get(supp[0], [])
                  if all(v in F for v in supp)] if supp else []
        if not facets:
            out = RationalFunction.zero(self.base, self.nvars)
            self._mono_cache[alpha] = out
            return out
        symbolic = self.rho is None
        nv = self.nvars + 1 if symbolic else self.nvars
        fd = self._factored_domain(nv)
        acc = fd.zero
        for F in facets:
            term = self._fac_facet_degree(fd, F)
            for v in F:
                a = alpha[self.vindex[v]]
                if a != 1:
                    term = fd.mul(term, fd.pow(self._fac_volume(fd, F, v), a - 1))
            acc = fd.add(acc, term)
        total = fd.to_rational(acc)
        if symbolic:
            try:
                total = total.project(self.nvars)
            except MalformedScalarError:
                raise InternalConsistencyError(
                    "normalized degree value still depends on the general position vector")
        self._mono_cache[alpha] = total
        return total

    def lee_term(self, F, alpha) -> RationalFunction:
        """Single-facet term of the interpolation sum for x^alpha.

        Unlike degree_monomial, the general position value is not projected
        out, so with rho unset the result lives over nvars + 1 variables and
        the last variable is the general position value."""
        F = tuple(sorted(F))
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise DimensionMismatchError(
                f"exponent vector has {len(alpha)} entries, layout has {self.nvars}")
        if sum(alpha) != self.d:
            raise DegreeRangeError(
                f"exponent sum {sum(alpha)} differs from d={self.d}")
        if self.base.is_zero(self.cycle.coefficient(F)):
            raise MissingFaceError(f"{F} is not a facet of the cycle")
        for i, e in enumerate(alpha):
            if e and self.vertices[i] not in F:
                raise MissingFaceError(
                    f"monomial support includes vertex {self.vertices[i]} outside {F}")
        nv = self.nvars + 1 if self.rho is None else self.nvars
        fd = self._factored_domain(nv)
        term = self._fac_facet_degree(fd, F)
        for v in F:
            a = alpha[self.vindex[v]]
            if a != 1:
                term = fd.mul(term, fd.pow(self._fac_volume(fd, F, v), a - 1))
        return fd.to_rational(term)

    def degree_exponent_pair(self, e1, e2) -> RationalFunction:
        return self.degree_monomial(tuple(a + b for a, b in zip(e1, e2)))

    def degree_element(self, u: AlgebraElement) -> RationalFunction:
        if u.k != self.d:
            raise DegreeRangeError(f"element has degree {u.k}, the degree map needs {self.d}")
        fd = self._factored_domain(self.nvars)
        acc = fd.zero
        for e, c in u.vec.items():
            term = fd.mul(fd.from_rational_function(c),
                          fd.from_rational_function(self.degree_monomial(e)))
            acc = fd.add(acc, term)
        return fd.to_rational(acc)


# Gorenstein quotient --------------------------------------------------------


def _squarefree_monomials(K, vertices, k):
    """Exponent vectors of the squarefree degree-k face monomials, in
    canonical order."""
    vidx = {v: i for i, v in enumerate(vertices)}
    out = []
    for sigma in K.faces_of_card(k):
        e = [0] * len(vertices)
        for v in sigma:
            e[vidx[v]] = 1
        out.append(tuple(e))
    return out


class GorensteinAlgebra:
    """Quotient of an Artinian reduction by the kernel of the degree
    pairing.

    Bases of each B^k are images of squarefree face monomials, chosen as
    the lexicographically least independent set; coordinates are recovered
    by pairing against the dual basis and multiplying by the inverse
    pairing matrix."""

    def __init__(self, algebra: ArtinianAlgebra, cycle: SimplicialCycle,
                 functional: DegreeFunctional):
        self.algebra = algebra
        self.cycle = cycle
        self.functional = functional
        self.base = algebra.base
        self.d = algebra.d
        self.domain = algebra.domain
        self.squarefree = {}
        self.bases = {}
        self.pairing = {}
        self.pairing_inv = {}
        self._condition_star = None
        self._fd = functional._factored_domain(functional.nvars)
        self._fac_val_cache = {}
        self._fac_inv_cache = {}

    @property
    def dims(self):
        return tuple(len(self.bases[k]) for k in range(self.d + 1))

    def basis(self, k: int):
        if k not in self.bases:
            raise DegreeRangeError(f"degree {k} outside 0..{self.d}")
        return self.bases[k]

    def condition_star_report(self):
        if self._condition_star is None:
            self._condition_star = check_condition_star(self.cycle)
        return self._condition_star

    # coordinates ----------------------------------------------------------

    # Pairing and coordinate sums run in the factored scalar domain.  The
    # coefficients of an element can be sizable rational functions, and
    # multiplying those out in expanded form forces expensive gcd reductions,
    # especially over prime base fields.

    def _fac_value(self, alpha):
        v = self._fac_val_cache.get(alpha)
        if v is None:
            v = self._fd.from_rational_function(self.functional.degree_monomial(alpha))
            self._fac_val_cache[alpha] = v
        return v

    def _fac_pair_with_duals(self, u: AlgebraElement):
        fd = self._fd
        duals = self.bases[self.d - u.k]
        fac_coeffs = [(e, fd.from_rational_function(c)) for e, c in u.vec.items()]
        out = []
        for c in duals:
            acc = fd.zero
            for e, coeff in fac_coeffs:
                alpha = tuple(a + b for a, b in zip(e, c))
                acc = fd.add(acc, fd.mul(coeff, self._fac_value(alpha)))
            out.append(acc)
        return out

    def _fac_pairing_inv(self, k):
        inv = self._fac_inv_cache.get(k)
        if inv is None:
            fd = self._fd
            inv = tuple(tuple(fd.from_rational_function(x) for x in row)
                        for row in self.pairing_inv[k])
            self._fac_inv_cache[k] = inv
        return inv

    def pair_with_duals(self, u: AlgebraElement):
        """deg(u * c_j) for the dual basis c_j of B^(d-k)."""
        fd = self._fd
        return [fd.to_rational(v) for v in self._fac_pair_with_duals(u)]

    def coordinates(self, u: AlgebraElement):
        """Coordinates of the class of u over the basis of B^k."""
        if u.k < 0 or u.k > self.d:
            raise DegreeRangeError(f"degree {u.k} outside 0..{self.d}")
        fd = self._fd
        w = self._fac_pair_with_duals(u)
        inv = self._fac_pairing_inv(u.k)
        dim = len(self.bases[u.k])
        out = []
        for i in range(dim):
            acc = fd.zero
            for j in range(len(w)):
                acc = fd.add(acc, fd.mul(w[j], inv[j][i]))
            out.append(fd.to_rational(acc))
        return tuple(out)

    def is_zero(self, u: AlgebraElement) -> bool:
        fd = self._fd
        return all(fd.is_zero(v) for v in self._fac_pair_with_duals(u))

    def element_from_coordinates(self, k: int, coords) -> AlgebraElement:
        if len(coords) != len(self.bases[k]):
            raise DimensionMismatchError("coordinate length does not match basis")
        vec = {}
        for c, m in zip(coords, self.bases[k]):
            if not c.is_zero:
                vec[m] = c
        return AlgebraElement(self.algebra, k, vec)

    def monomial_element(self, exps) -> AlgebraElement:
        return self.algebra.monomial_element(exps)

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        return multiply(self.algebra, u, v)


def gorensteinify(algebra: ArtinianAlgebra, cycle: SimplicialCycle,
                  rho=None) -> GorensteinAlgebra:
    """Build the Gorenstein quotient of the reduction along the cycle."""
    if cycle.d != algebra.d:
        raise DimensionMismatchError(
            f"cycle dimension {cycle.d} differs from algebra dimension {algebra.d}")
    if cycle.base != algebra.base:
        raise CharacteristicConfigError("cycle and algebra live over different fields")
    if algebra.max_degree < algebra.d:
        raise DegreeRangeError("algebra must be built up to degree d")
    for F in cycle.coefficients:
        if not algebra.complex.has_face(F):
            raise MissingFaceError(f"cycle facet {F} is not a face of the complex")
    if not cycle.is_cycle():
        raise NotACycleError("the chain has nonzero boundary")

    df = DegreeFunctional(cycle, algebra.vertices, rho)
    ga = GorensteinAlgebra(algebra, cycle, df)
    K = algebra.complex
    d = algebra.d
    for k in range(d + 1):
        ga.squarefree[k] = _squarefree_monomials(K, algebra.vertices, k)

    for k in range(d + 1):
        rows = []
        for m in ga.squarefree[d - k]:
            row = {}
            for j, c in enumerate(ga.squarefree[k]):
                v = df.degree_exponent_pair(m, c)
                if not v.is_zero:
                    row[j] = v
            rows.append(row)
        report = certified_rank(rows, len(ga.squarefree[k]), algebra.base,
                                df.nvars, algebra.seed, backend=algebra.backend)
        ga.bases[k] = tuple(ga.squarefree[k][j] for j in report.pivots)

    if not ga.bases[d]:
        raise DegenerateCycleError("degree pairing vanishes identically in top degree")
    for k in range(d + 1):
        if len(ga.bases[k]) != len(ga.bases[d - k]):
            raise InternalConsistencyError(
                f"pairing ranks disagree between degrees {k} and {d - k}")

    for k in range(d + 1):
        basis = ga.bases[k]
        duals = ga.bases[d - k]
        P = [[df.degree_exponent_pair(b, c) for c in duals] for b in basis]
        ga.pairing[k] = tuple(tuple(row) for row in P)
        ga.pairing_inv[k] = matrix_inverse(P, ga.domain)
    return ga


# module-level operation wrappers -------------------------------------------


def degree_facet(df: DegreeFunctional, F) -> RationalFunction:
    return df.degree_facet(F)


def volume_element(df: DegreeFunctional, F, i) -> RationalFunction:
    return df.volume_element(F, i)


def degree_monomial(df: DegreeFunctional, alpha) -> RationalFunction:
    return df.degree_monomial(alpha)


def degree_element(obj, u: AlgebraElement) -> RationalFunction:
    df = obj.functional if isinstance(obj, GorensteinAlgebra) else obj
    return df.degree_element(u)


def pairing_matrix(ga: GorensteinAlgebra, k: int, on: str = "B"):
    """Pairing matrix deg(u*v) for degree k against d-k.

    on="B": the stored matrix on the Gorenstein bases (square, invertible).
    on="A": on the reduction's own graded bases."""
    if not 0 <= k <= ga.d:
        raise DegreeRangeError(f"degree {k} outside 0..{ga.d}")
    if on == "B":
        return ga.pairing[k]
    if on != "A":
        raise MalformedScalarError(f"unknown pairing target {on!r}")
    df = ga.functional
    rows = ga.algebra.piece(k).basis
    cols = ga.algebra.piece(ga.d - k).basis
    return tuple(
        tuple(df.degree_exponent_pair(b, c) for c in cols) for b in rows)


@dataclass(frozen=True)
class AnnihilatorReport:
    tau: tuple
    m: int
    dim: int
    kernel_coordinates: tuple   # canonical rows over the basis of B^m
    spanning_monomials: tuple   # non-face monomials of the star, as exponents
    condition_star_ok: bool


def _span_rref(vectors, width, domain):
    rows = []
    for v in vectors:
        row = {j: x for j, x in enumerate(v) if not domain.is_zero(x)}
        if row:
            rows.append(row)
    reduced, pivots = rref(rows, width, domain)
    return reduced, pivots


def annihilator(ga: GorensteinAlgebra, tau, m: int) -> AnnihilatorReport:
    """Kernel of multiplication by x_tau from B^m to the top degree.

    Also verifies the description of that kernel as the span of monomials
    whose support is not a face of the star of tau in the cycle's support."""
    tau = tuple(sorted(tau))
    d = ga.d
    if len(tau) != d - m or not 0 <= m <= d:
        raise DimensionMismatchError(
            f"need |tau| = d - m, got |tau|={len(tau)}, m={m}, d={d}")
    if not ga.cycle.support.has_face(tau):
        raise MissingFaceError(f"{tau} is not a face of the cycle's support")
    star_ok = bool(ga.condition_star_report())
    if not star_ok:
        warnings.warn(
            "the link condition fails on this cycle; the non-face description "
            "of the annihilator is not guaranteed", ConditionStarWarning)

    df = ga.functional
    basis = ga.bases[m]
    dim = len(basis)
    tau_exps = [0] * df.nvars
    for v in tau:
        tau_exps[df.vindex[v]] = 1
    tau_exps = tuple(tau_exps)

    # one linear condition: deg(x_tau * b_i) paired into B^d
    g = [df.degree_exponent_pair(tau_exps, b) for b in basis]
    dom = ga.domain
    grow = {i: v for i, v in enumerate(g) if not v.is_zero}
    kernel_vectors = []
    if grow:
        reduced, pivots = rref([grow], dim, dom)
        pivot = pivots[0]
        for free in range(dim):
            if free == pivot:
                continue
            vec = [dom.zero] * dim
            vec[free] = dom.one
            coef = reduced[0].get(free)
            if coef is not None:
                vec[pivot] = dom.neg(coef)
            kernel_vectors.append(vec)
    else:
        for free in range(dim):
            vec = [dom.zero] * dim
            vec[free] = dom.one
            kernel_vectors.append(vec)
    kernel_r, _ = _span_rref(kernel_vectors, dim, dom)

    star = ga.cycle.support.star(tau)
    span_monos = []
    span_vectors = []
    for e in ga.algebra.piece(m).monomials:
        supp = tuple(df.vertices[i] for i, x in enumerate(e) if x)
        if star.has_face(supp):
            continue
        span_monos.append(e)
        span_vectors.append(ga.coordinates(AlgebraElement(ga.algebra, m, {e: dom.one})))
    span_r, _ = _span_rref(span_vectors, dim, dom)

    if star_ok and span_r != kernel_r:
        raise InternalConsistencyError(
            "annihilator kernel differs from the non-face monomial span")

    kernel_coords = tuple(
        tuple(row.get(j, dom.zero) for j in range(dim)) for row in kernel_r)
    return AnnihilatorReport(tau, m, len(kernel_r), kernel_coords,
                             tuple(span_monos), star_ok)


@dataclass(frozen=True)
class DecompositionReport:
    sigma: tuple
    coefficient: RationalFunction
    remainder: tuple   # pairs (exponent vector, coefficient)


def _solve_combination(vectors, target, domain):
    """Coefficients c with sum c_i * vectors_i = target, or None.

    Solved on the transposed system so the answer touches as few vectors as
    possible; any exact solution is acceptable."""
    width = len(target)
    rows = []
    for i in range(width):
        row = {}
        for j, vec in enumerate(vectors):
            if not domain.is_zero(vec[i]):
                row[j] = vec[i]
        if not domain.is_zero(target[i]):
            row[len(vectors)] = target[i]
        rows.append(row)
    reduced, pivots = rref(rows, len(vectors) + 1, domain)
    if len(vectors) in pivots:
        return None
    coeffs = [domain.zero] * len(vectors)
    for row, p in zip(reduced, pivots):
        v = row.get(len(vectors))
        if v is not None:
            coeffs[p] = v
    # the reduced system reads c_p + sum(free stuff) = rhs; with free
    # coefficients chosen zero the pivot coefficients are the rhs entries
    return coeffs


def decompose_relative(ga: GorensteinAlgebra, u: AlgebraElement, tau) -> DecompositionReport:
    """Split u as lambda * x_sigma plus monomials outside the star of tau,
    with sigma completing tau to a facet of the cycle."""
    tau = tuple(sorted(tau))
    d = ga.d
    if len(tau) != d - u.k:
        raise DimensionMismatchError(
            f"need |tau| = d - deg(u), got |tau|={len(tau)}, deg={u.k}")
    df = ga.functional
    tau_exps = [0] * df.nvars
    for v in tau:
        tau_exps[df.vindex[v]] = 1
    tau_exps = tuple(tau_exps)

    w = RationalFunction.zero(ga.base, df.nvars)
    for e, c in u.vec.items():
        w = w + c * df.degree_exponent_pair(tau_exps, e)
    if w.is_zero:
        raise NoDualFaceError("x_tau * u is zero in top degree")

    candidates = [F for F in sorted(ga.cycle.coefficients)
                  if all(v in F for v in tau)]
    if not candidates:
        raise MissingFaceError(f"{tau} lies in no facet of the cycle")

    def split(F):
        sig = tuple(v for v in F if v not in tau)
        exps = [0] * df.nvars
        for v in sig:
            exps[df.vindex[v]] = 1
        lam_F = w * df.degree_facet(F).inverse()
        rest = u - AlgebraElement(ga.algebra, u.k, {tuple(exps): lam_F})
        return sig, lam_F, rest

    # prefer a facet whose completing face already carries u exactly
    sigma = lam = v_elem = None
    for F in candidates:
        sig, lam_F, rest = split(F)
        if not rest.vec:
            return DecompositionReport(sig, lam_F, ())
        if sigma is None:
            sigma, lam, v_elem = sig, lam_F, rest
    target = ga.coordinates(v_elem)

    star = ga.cycle.support.star(tau)
    monos = []
    vectors = []
    dom = ga.domain
    for e in ga.algebra.piece(u.k).monomials:
        supp = tuple(df.vertices[i] for i, x in enumerate(e) if x)
        if star.has_face(supp):
            continue
        monos.append(e)
        vectors.append(ga.coordinates(AlgebraElement(ga.algebra, u.k, {e: dom.one})))
    coeffs = _solve_combination(vectors, list(target), dom)
    if coeffs is None:
        raise InternalConsistencyError(
            "remainder is not spanned by monomials outside the star; "
            "this contradicts the annihilator description")
    remainder = tuple((m, c) for m, c in zip(monos, coeffs) if not dom.is_zero(c))
    return DecompositionReport(sigma, lam, remainder)
