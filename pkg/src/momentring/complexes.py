"""Simplicial complexes, cycles, and field-coefficient homology.

Vertices are integers 1..n.  Faces are kept as sorted tuples; the empty face
() belongs to every nonempty complex and the complex {()} (just the empty
face) is the valid result of taking the link of a facet.  Orientation is
always the increasing-label order, and boundary signs follow the usual
alternating convention on sorted vertex tuples.

Homology is computed over a coefficient field by exact elimination of the
boundary matrices; the augmentation map is included, so all reported
dimensions are reduced.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import (
    DegenerateCycleError,
    DimensionMismatchError,
    MalformedScalarError,
    MissingFaceError,
    NotACycleError,
)
from .linalg import kernel_basis, rank_and_pivots
from .scalars import BaseField


class SimplicialComplex:
    """Immutable complex determined by its facets."""

    def __init__(self, facets, n: int | None = None):
        cleaned = set()
        for f in facets:
            t = tuple(sorted(set(f)))
            if any(v < 1 or not isinstance(v, int) for v in t):
                raise MalformedScalarError(f"vertices must be positive integers: {f}")
            cleaned.add(t)
        cleaned.discard(())
        # drop non-maximal faces
        maximal = [f for f in cleaned
                   if not any(f != g and set(f) <= set(g) for g in cleaned)]
        self.facets = tuple(sorted(maximal))
        self.vertices = tuple(sorted({v for f in self.facets for v in f}))
        self.n = n if n is not None else (self.vertices[-1] if self.vertices else 0)
        faces = {()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        self._faces = faces
        self.dim = max((len(f) for f in self.facets), default=0) - 1

    # queries --------------------------------------------------------------

    def has_face(self, tau) -> bool:
        return tuple(sorted(tau)) in self._faces

    def faces(self):
        return sorted(self._faces, key=lambda f: (len(f), f))

    def faces_of_card(self, c: int):
        return sorted(f for f in self._faces if len(f) == c)

    def face_count(self) -> int:
        return len(self._faces)

    @property
    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._faces == other._faces

    def __hash__(self):
        return hash(frozenset(self._faces))

    def __repr__(self):
        return f"SimplicialComplex(facets={list(self.facets)})"

    # local structure ------------------------------------------------------

    def link(self, tau) -> "SimplicialComplex":
        t = tuple(sorted(tau))
        if t not in self._faces:
            raise MissingFaceError(f"{t} is not a face")
        ts = set(t)
        lk_facets = []
        for f in self.facets:
            if ts <= set(f):
                lk_facets.append(tuple(v for v in f if v not in ts))
        return SimplicialComplex(lk_facets, n=self.n)

    def star(self, tau) -> "SimplicialComplex":
        t = tuple(sorted(tau))
        if t not in self._faces:
            raise MissingFaceError(f"{t} is not a face")
        ts = set(t)
        st_facets = [f for f in self.facets if ts <= set(f)]
        return SimplicialComplex(st_facets, n=self.n)

    # boundary operators ---------------------------------------------------

    def boundary_matrix(self, c: int):
        """Matrix of the boundary map from card-c faces to card-(c-1) faces.

        Rows are indexed by the codomain (card c-1, sorted), columns by the
        domain (card c, sorted); entries are the signs (-1)^j for dropping
        the j-th vertex.  Includes the augmentation c=1 -> the empty face."""
        dom = self.faces_of_card(c)
        cod = self.faces_of_card(c - 1)
        cod_index = {f: i for i, f in enumerate(cod)}
        rows = [dict() for _ in cod]
        for j, f in enumerate(dom):
            for pos in range(len(f)):
                sub = f[:pos] + f[pos + 1:]
                rows[cod_index[sub]][j] = 1 if pos % 2 == 0 else -1
        return rows, len(dom), dom, cod

    def reduced_homology(self, base: BaseField) -> "HomologyReport":
        """Reduced homology dimensions over the base field."""
        dims = {}
        ranks = {}
        top = self.dim + 1
        for c in range(1, top + 1):
            rows, ncols, _, _ = self.boundary_matrix(c)
            coerced = [{j: base.coerce(v) for j, v in r.items()} for r in rows]
            ranks[c], _ = rank_and_pivots(coerced, ncols, base)
        for i in range(-1, self.dim + 1):
            ni = len(self.faces_of_card(i + 1))
            dims[i] = ni - ranks.get(i + 1, 0) - ranks.get(i + 2, 0)
        return HomologyReport(dims)


@dataclass(frozen=True)
class HomologyReport:
    dims: dict

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def euler_characteristic_reduced(self) -> int:
        return sum((-1) ** i * d for i, d in self.dims.items())


class SimplicialCycle:
    """(d-1)-dimensional cycle with coefficients in a base field.

    Coefficients are stored on sorted facet tuples; zero coefficients are
    dropped, and the support complex is generated by the remaining facets."""

    def __init__(self, base: BaseField, d: int, coefficients: dict):
        if d < 1:
            raise DimensionMismatchError("cycle dimension d must be at least 1")
        self.base = base
        self.d = d
        coeffs = {}
        for face, c in coefficients.items():
            t = tuple(sorted(face))
            if len(t) != d or len(set(t)) != d:
                raise DimensionMismatchError(
                    f"cycle facet {face} must have exactly d={d} distinct vertices")
            c = base.coerce(c)
            if not base.is_zero(c):
                coeffs[t] = c
        if not coeffs:
            raise DegenerateCycleError("cycle has no nonzero coefficients")
        self.coefficients = coeffs
        self.support = SimplicialComplex(coeffs.keys())

    def coefficient(self, face):
        return self.coefficients.get(tuple(sorted(face)), self.base.zero)

    def boundary_defect(self):
        """Signed incidence sums per (d-2)-face; all zero iff this is a cycle."""
        base = self.base
        sums = {}
        for f, c in self.coefficients.items():
            for pos in range(len(f)):
                sub = f[:pos] + f[pos + 1:]
                s = c if pos % 2 == 0 else base.neg(c)
                sums[sub] = base.add(sums.get(sub, base.zero), s)
        return {sub: v for sub, v in sums.items() if not base.is_zero(v)}

    def is_cycle(self) -> bool:
        return not self.boundary_defect()

    def __repr__(self):
        return f"SimplicialCycle(d={self.d}, facets={len(self.coefficients)})"


def check_cycle(mu: SimplicialCycle) -> bool:
    return mu.is_cycle()


@dataclass(frozen=True)
class ConditionStarReport:
    ok: bool
    first_failure: tuple | None
    entries: tuple  # (tau, homology_index, dim_found)

    def __bool__(self):
        return self.ok


def check_condition_star(mu: SimplicialCycle) -> ConditionStarReport:
    """For every face tau of the support with 0 < |tau| < d, the link must
    have (d - 1 - |tau|)-th reduced homology of dimension exactly one over
    the cycle's base field."""
    if not mu.is_cycle():
        raise NotACycleError("condition check requires an actual cycle")
    K = mu.support
    entries = []
    first_failure = None
    ok = True
    for tau in K.faces():
        if not 0 < len(tau) < mu.d:
            continue
        idx = mu.d - 1 - len(tau)
        dim_found = K.link(tau).reduced_homology(mu.base).dim(idx)
        entries.append((tau, idx, dim_found))
        if dim_found != 1 and ok:
            ok = False
            first_failure = tau
    return ConditionStarReport(ok, first_failure, tuple(entries))


def fundamental_cycle(K: SimplicialComplex, base: BaseField) -> SimplicialCycle:
    """The top-dimensional cycle of a complex whose top reduced homology is
    one-dimensional over the base field, normalized deterministically.

    Over Q the coefficients are cleared to a primitive integer vector whose
    first entry (in facet order) is positive; over F_p the first nonzero
    coefficient is scaled to 1."""
    if not K.is_pure:
        raise NotACycleError("fundamental cycle needs a pure complex")
    c = K.dim + 1
    rows, ncols, dom, _ = K.boundary_matrix(c)
    coerced = [{j: base.coerce(v) for j, v in r.items()} for r in rows]
    kern = kernel_basis(coerced, ncols, base)
    if len(kern) != 1:
        raise NotACycleError(
            f"top homology has dimension {len(kern)}, need exactly 1 to derive a cycle")
    vec = kern[0]
    if base.kind == "rationals":
        denom = 1
        for v in vec.values():
            fv = Fraction(v)
            denom = denom * fv.denominator // gcd(denom, fv.denominator)
        ints = {j: int(Fraction(v) * denom) for j, v in vec.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        ints = {j: v // g for j, v in ints.items()}
        lead = ints[min(ints)]
        if lead < 0:
            ints = {j: -v for j, v in ints.items()}
        coeffs = {dom[j]: v for j, v in ints.items()}
    else:
        lead = vec[min(vec)]
        inv = base.inv(lead)
        coeffs = {dom[j]: base.mul(v, inv) for j, v in vec.items()}
    return SimplicialCycle(base, c, coeffs)


@dataclass(frozen=True)
class SphereCheckReport:
    ok: bool
    failures: tuple  # (tau, index, dim_found, dim_expected)


def homology_sphere_check(K: SimplicialComplex, base: BaseField) -> SphereCheckReport:
    """Every link (including the whole complex as the link of the empty
    face) must have the reduced homology of a sphere of its own dimension."""
    failures = []
    for tau in K.faces():
        lk = K.link(tau)
        top = lk.dim
        rep = lk.reduced_homology(base)
        for i in range(-1, top + 1):
            expected = 1 if i == top else 0
            found = rep.dim(i)
            if found != expected:
                failures.append((tau, i, found, expected))
    return SphereCheckReport(not failures, tuple(failures))


# standard families -----------------------------------------------------------


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex on vertices 1..d+1."""
    verts = range(1, d + 2)
    return SimplicialComplex(combinations(verts, d))


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope: vertices 2i-1, 2i are
    antipodal; facets pick one vertex from each pair."""
    pairs = [(2 * i + 1, 2 * i + 2) for i in range(d)]
    facets = []
    for choice in range(1 << d):
        facets.append(tuple(pairs[i][(choice >> i) & 1] for i in range(d)))
    return SimplicialComplex(facets)


def cyclic_polytope_boundary(d: int, n: int) -> SimplicialComplex:
    """Boundary complex of the cyclic d-polytope with n vertices, via the
    Gale evenness condition on 1..n."""
    if n < d + 2:
        raise MalformedScalarError("cyclic polytope needs n >= d + 2")
    facets = []
    for f in combinations(range(1, n + 1), d):
        fs = set(f)
        ok = True
        for x in range(1, n + 1):
            if x in fs:
                continue
            for y in range(x + 1, n + 1):
                if y in fs:
                    continue
                between = sum(1 for v in f if x < v < y)
                if between % 2:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            facets.append(f)
    return SimplicialComplex(facets)


def real_projective_plane() -> SimplicialComplex:
    """The 6-vertex triangulation of the real projective plane."""
    facets = [(1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6),
              (2, 3, 4), (2, 3, 6), (2, 4, 5), (3, 5, 6), (4, 5, 6)]
    return SimplicialComplex(facets)
