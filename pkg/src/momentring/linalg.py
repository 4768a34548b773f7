"""Exact linear algebra over pluggable coefficient domains.

A domain is any object with zero/one/add/sub/mul/neg/inv/is_zero (BaseField,
ExtField, or RFDomain below).  Matrices are lists of sparse rows, each row a
dict mapping column index to a nonzero domain value.

Rank and kernel questions about matrices of rational functions go through a
two-tier strategy: tier 1 evaluates every entry at seeded random points
(distinct nonzero values per point, pool size at least 2^20) and eliminates
over the resulting constant field, accepting the answer when three
independent points agree on rank and pivot columns; tier 2 is full symbolic
elimination over the function field and is both the escalation path and the
ground truth the exact backend uses directly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EvaluationPoleError,
    InternalConsistencyError,
    MalformedScalarError,
    ReductionSingularError,
)
from .extfield import ExtField
from .factored import FactoredDomain
from .scalars import BaseField, RationalFunction

_WINDOW = 1 << 21  # integer pool for rational evaluation points


class RFDomain:
    """Rational functions k(t_1..t_n) as an elimination domain."""

    def __init__(self, base: BaseField, nvars: int):
        self.base = base
        self.nvars = nvars
        self.zero = RationalFunction.zero(base, nvars)
        self.one = RationalFunction.one(base, nvars)

    def from_base(self, c):
        return RationalFunction.const(self.base, self.nvars, c)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inverse()

    @staticmethod
    def is_zero(a):
        return a.is_zero

    def __repr__(self):
        return f"RFDomain({self.base}, {self.nvars})"


# elimination ----------------------------------------------------------------


def rref(rows, ncols: int, domain):
    """Reduced row echelon form of sparse rows.

    Returns (reduced_rows, pivot_columns); reduced_rows[i] has its pivot at
    pivot_columns[i] with value one and zeros in every other pivot column.
    The result is the canonical RREF, independent of pivot strategy."""
    work = [dict(r) for r in rows if r]
    done = []
    pivots = []
    for col in range(ncols):
        best = None
        for idx, row in enumerate(work):
            if col in row and (best is None or len(row) < len(work[best])):
                best = idx
        if best is None:
            continue
        row = work.pop(best)
        c = domain.inv(row[col])
        row = {j: domain.mul(v, c) for j, v in row.items()}
        for others in (work, done):
            for i, other in enumerate(others):
                f = other.get(col)
                if f is None:
                    continue
                new = dict(other)
                for j, v in row.items():
                    acc = domain.sub(new.get(j, domain.zero), domain.mul(f, v))
                    if domain.is_zero(acc):
                        new.pop(j, None)
                    else:
                        new[j] = acc
                others[i] = new
        done.append(row)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return done, pivots


def rank_and_pivots(rows, ncols: int, domain):
    reduced, pivots = rref(rows, ncols, domain)
    return len(pivots), tuple(pivots)


def kernel_basis(rows, ncols: int, domain):
    """Basis of the right kernel, one sparse vector per free column, ordered
    by ascending free column; the free coordinate is set to one."""
    reduced, pivots = rref(rows, ncols, domain)
    pivot_set = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: domain.one}
        for row, pcol in zip(reduced, pivots):
            v = row.get(free)
            if v is not None:
                vec[pcol] = domain.neg(v)
        out.append(vec)
    return out


@dataclass(frozen=True)
class QuotientData:
    """Structure of V/W for V with N ordered basis vectors and W the row
    space of a relation matrix.

    rank: dim W.  basis_cols: indices whose images form the lexicographically
    least basis of the quotient.  expansion: for every column index j, the
    coordinate vector of its image over basis_cols (None when not computed)."""

    rank: int
    rel_pivots: tuple
    basis_cols: tuple
    expansion: tuple | None


def quotient_data(rel_rows, ncols: int, domain, want_expansion: bool = True) -> QuotientData:
    """Quotient of the column space by the row space of rel_rows.

    The dual of the quotient is the right kernel K of the relations; images
    of the ambient basis vectors are the columns of K, so the greedy
    (lexicographically least) basis is the pivot column set of RREF(K), and
    the columns of RREF(K) expand every ambient vector over that basis."""
    reduced, rel_pivots = rref(rel_rows, ncols, domain)
    pivot_set = set(rel_pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: domain.one}
        for row, pcol in zip(reduced, rel_pivots):
            v = row.get(free)
            if v is not None:
                vec[pcol] = domain.neg(v)
        kernel.append(vec)
    kr, kpivots = rref(kernel, ncols, domain)
    if len(kpivots) != len(kernel):
        raise InternalConsistencyError("kernel rows must be independent")
    expansion = None
    if want_expansion:
        expansion = tuple(
            tuple(row.get(j, domain.zero) for row in kr) for j in range(ncols)
        )
    return QuotientData(len(rel_pivots), tuple(rel_pivots), tuple(kpivots), expansion)


def factored_rows(rf_rows, fd: FactoredDomain):
    """Convert sparse rows of rational functions to partially factored form."""
    return [{j: fd.from_rational_function(v) for j, v in row.items()} for row in rf_rows]


def symbolic_quotient_data(rf_rows, ncols: int, base: BaseField, nvars: int,
                           want_expansion: bool = True) -> QuotientData:
    """quotient_data over k(t_1..t_n), eliminating in partially factored form
    and expanding the expansion entries back to rational functions."""
    fd = FactoredDomain(base, nvars)
    qd = quotient_data(factored_rows(rf_rows, fd), ncols, fd, want_expansion=want_expansion)
    if qd.expansion is None:
        return qd
    back = tuple(tuple(fd.to_rational(v) for v in col) for col in qd.expansion)
    return QuotientData(qd.rank, qd.rel_pivots, qd.basis_cols, back)


def symbolic_rank_and_pivots(rf_rows, ncols: int, base: BaseField, nvars: int):
    fd = FactoredDomain(base, nvars)
    return rank_and_pivots(factored_rows(rf_rows, fd), ncols, fd)


def matrix_inverse(dense, domain):
    """Inverse of a small dense square matrix; ReductionSingularError if
    singular."""
    n = len(dense)
    aug = [list(row) + [domain.one if i == j else domain.zero for j in range(n)]
           for i, row in enumerate(dense)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if not domain.is_zero(aug[i][col]):
                piv = i
                break
        if piv is None:
            raise ReductionSingularError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        c = domain.inv(aug[col][col])
        aug[col] = [domain.mul(v, c) for v in aug[col]]
        for i in range(n):
            if i == col:
                continue
            f = aug[i][col]
            if domain.is_zero(f):
                continue
            aug[i] = [domain.sub(a, domain.mul(f, b)) for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def mat_vec(rows, vec, domain):
    """Sparse rows times sparse vector (dict) -> dense list."""
    out = []
    for row in rows:
        acc = domain.zero
        for j, v in row.items():
            w = vec.get(j)
            if w is not None:
                acc = domain.add(acc, domain.mul(v, w))
        out.append(acc)
    return out


# evaluation points ----------------------------------------------------------


class PointSampler:
    """Deterministic stream of evaluation points for a given base field.

    Each point assigns distinct nonzero values to the n variables: integers
    from a window of size 2^21 over the rationals, elements of F_{p^k} with
    p^k >= 2^20 in characteristic p."""

    def __init__(self, base: BaseField, nvars: int, seed: int):
        self.base = base
        self.nvars = nvars
        self.rng = random.Random(seed)
        if base.kind == "prime":
            self.ext = ExtField(base.p)
            if self.ext.size - 1 < nvars:
                raise MalformedScalarError("extension field too small for distinct points")
            self.domain = self.ext
        else:
            self.ext = None
            self.domain = base

    def next_point(self):
        values = []
        seen = set()
        while len(values) < self.nvars:
            if self.ext is None:
                v = self.rng.randrange(1, _WINDOW)
            else:
                v = self.ext.from_index(self.rng.randrange(1, self.ext.size))
            if v in seen:
                continue
            seen.add(v)
            values.append(v)
        if self.ext is None:
            values = [Fraction(v) for v in values]
        return values


def evaluate_matrix(rf_rows, point, domain):
    """Evaluate sparse rows of rational functions at a point; entries that
    evaluate to zero are dropped."""
    out = []
    for row in rf_rows:
        new = {}
        for j, f in row.items():
            v = f.evaluate_raw(point, None if isinstance(domain, BaseField) else domain)
            if not domain.is_zero(v):
                new[j] = v
        out.append(new)
    return out


# certified rank -------------------------------------------------------------


@dataclass(frozen=True)
class RankReport:
    rank: int
    pivots: tuple
    tier: str          # "evaluated", "exact", or "evaluated->exact"
    points_agreed: bool


_POINT_ATTEMPTS = 64


def _evaluated_runs(rf_rows, ncols, base, nvars, seed, count=3, compute=rank_and_pivots):
    sampler = PointSampler(base, nvars, seed)
    results = []
    attempts = 0
    while len(results) < count:
        if attempts >= _POINT_ATTEMPTS:
            raise EvaluationPoleError("could not find pole-free evaluation points")
        attempts += 1
        point = sampler.next_point()
        try:
            rows = evaluate_matrix(rf_rows, point, sampler.domain)
        except EvaluationPoleError:
            continue
        results.append(compute(rows, ncols, sampler.domain))
    return results


def certified_rank(rf_rows, ncols: int, base: BaseField, nvars: int,
                   seed: int, backend: str = "evaluated") -> RankReport:
    """Rank and pivot columns of a matrix over k(t_1..t_n).

    backend "evaluated": three seeded points, agreement certifies, and
    disagreement escalates to symbolic elimination.  backend "exact":
    symbolic elimination only.  backend "both": runs both and insists they
    match."""
    if backend not in ("evaluated", "exact", "both"):
        raise MalformedScalarError(f"unknown backend {backend!r}")
    symbolic = None
    if backend in ("exact", "both"):
        r, piv = symbolic_rank_and_pivots(rf_rows, ncols, base, nvars)
        symbolic = RankReport(r, piv, "exact", True)
        if backend == "exact":
            return symbolic
    runs = _evaluated_runs(rf_rows, ncols, base, nvars, seed)
    agreed = all(r == runs[0] for r in runs[1:])
    if backend == "both":
        if not agreed or runs[0] != (symbolic.rank, symbolic.pivots):
            raise InternalConsistencyError(
                f"evaluated runs {runs} disagree with symbolic {(symbolic.rank, symbolic.pivots)}")
        return RankReport(symbolic.rank, symbolic.pivots, "both", True)
    if agreed:
        rank, pivots = runs[0]
        return RankReport(rank, pivots, "evaluated", True)
    r, piv = symbolic_rank_and_pivots(rf_rows, ncols, base, nvars)
    return RankReport(r, piv, "evaluated->exact", False)
