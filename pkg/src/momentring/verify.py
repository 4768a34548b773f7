"""Power map checks on Gorenstein quotients of Artinian face rings.

Over a base field of characteristic p the map u -> u^p on a graded piece
B^k is semilinear: it is additive, and scalars come out raised to the p-th
power.  Writing u over a basis of B^k therefore turns "some nonzero u has
u^p = 0" into a linear question over the subfield of p-th powers, which row
reduction answers exactly.  This module builds that linear system, runs
composite exponents through a chain of prime stages, certifies single
elements by differentiating degree values, and checks multiplication by
powers of a linear form for full rank.

For rational coefficients the power map question is routed through the
prime characteristic checks: a monomial basis common to both coefficient
fields transfers nonzero elements to the prime side after valuation
normalization, and a compatibility check between the two degree maps
carries nonvanishing back.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import (
    SimplicialComplex,
    SimplicialCycle,
    fundamental_cycle,
    homology_sphere_check,
)
from .degree import DegreeFunctional, GorensteinAlgebra, gorensteinify
from .errors import (
    DegreeRangeError,
    DimensionMismatchError,
    HypothesisFailureError,
    InternalConsistencyError,
    MissingFaceError,
    PartitionError,
    ScalarDomainError,
    TorsionError,
    WrongModeError,
)
from .factored import FactoredDomain, FactoredScalar
from .linalg import certified_rank, kernel_basis
from .reduction import AlgebraElement, ArtinianAlgebra, build_artinian, build_lsop
from .scalars import (
    BaseField,
    Polynomial,
    RationalFunction,
    bracket_reduce,
    is_prime,
    is_pth_power,
    partial_derivative,
    poly_exact_div,
)


# reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class AnisotropyVerdict:
    """Outcome of a power map injectivity check.

    mode is "exact-semilinear", "randomized", or "certificate"; result is
    "anisotropic", "kernel-witness", or "inconclusive".  Witness elements,
    stage records, and seeds sit in payload."""

    mode: str
    k: int
    exponent: int
    result: str
    payload: dict

    @property
    def witness(self):
        return self.payload.get("witness_element")


@dataclass(frozen=True)
class DerivativeCertificate:
    """Witness that u^p is nonzero: a nonvanishing iterated derivative of
    deg(u^p x_iota) by the variables of xi, with tau = xi + iota."""

    conclusive: bool
    k: int
    p: int
    tau: tuple
    xi: tuple
    iota: tuple
    derivative: object


@dataclass(frozen=True)
class LefschetzReport:
    k: int
    power: int
    rank: int
    dimension: int
    codomain_dimension: int
    iso: bool
    coefficients: tuple
    seed: object


@dataclass(frozen=True)
class BracketCheckReport:
    p: int
    checked: int
    disagreements: tuple
    seed: int


@dataclass(frozen=True)
class SamplePowerReport:
    k: int
    exponent: int
    checked: int
    failures: tuple
    seed: int


# shared helpers --------------------------------------------------------------


def _require_prime_char(ga: GorensteinAlgebra) -> int:
    p = ga.base.characteristic
    if p == 0:
        raise WrongModeError(
            "power map checks over the rationals go through check_rational_anisotropy")
    return p


def _power(ga: GorensteinAlgebra, u: AlgebraElement, e: int) -> AlgebraElement:
    out = u
    for _ in range(e - 1):
        out = ga.multiply(out, u)
    return out


def _pth_power_clearing(fd: FactoredDomain, column, p: int) -> FactoredScalar:
    """Smallest factored D with D^p * w free of denominators for every w in
    the column.  Scaling a column by a p-th power does not change which
    columns are dependent over the subfield of p-th powers."""
    need = {}
    for w in column:
        for f, e in w.factors.items():
            if e < 0:
                m = (-e + p - 1) // p
                if m > need.get(f, 0):
                    need[f] = m
    if not need:
        return fd.one
    return FactoredScalar(fd.base.one, need)


def _as_polynomial(fd: FactoredDomain, w: FactoredScalar) -> Polynomial:
    rf = fd.to_rational(w)
    if not rf.is_polynomial():
        raise InternalConsistencyError("denominator clearing left a true denominator")
    return poly_exact_div(rf.num, rf.den)


def _residue_split(poly: Polynomial, p: int):
    """Split a polynomial over the residue monomials t^a, 0 <= a_v < p.

    Returns residue tuple -> polynomial whose exponents are the quotients
    by p.  Over F_p every coefficient is its own p-th root, so the returned
    polynomials are the p-th roots of the residue components."""
    groups = {}
    for e, c in poly.terms.items():
        a = tuple(x % p for x in e)
        q = tuple(x // p for x in e)
        groups.setdefault(a, []).append((q, c))
    return {a: Polynomial.from_terms(poly.base, poly.nvars, pairs)
            for a, pairs in groups.items()}


def _descent_exponents(m: int, p: int):
    """The stage chain m, ceil(m/p), ..., 1."""
    chain = [m]
    while chain[-1] != 1:
        chain.append(-(-chain[-1] // p))
    return chain


def _prime_factors(m: int):
    """Ascending prime factorization with multiplicity."""
    out = []
    q = 2
    while q * q <= m:
        while m % q == 0:
            out.append(q)
            m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


# exact p-anisotropy ----------------------------------------------------------


def check_p_anisotropy(ga: GorensteinAlgebra, k: int) -> AnisotropyVerdict:
    """Decide exactly whether u^p = 0 forces u = 0 on B^k.

    Writing u = sum c_i e_i over the monomial basis gives
    u^p = sum c_i^p e_i^p, so the kernel of the power map is a linear
    subspace over the subfield of p-th powers.  The coordinates of each
    e_i^p over the basis of B^{pk} are cleared of denominators columnwise
    by p-th powers, every polynomial entry is split over the residue
    monomials t^a with exponents below p, and renaming t_v^p to t_v turns
    the dependence question into an ordinary linear system.  Its kernel
    vectors are exactly the p-th roots of power map kernel elements."""
    p = _require_prime_char(ga)
    if k < 0 or p * k > ga.d:
        raise DegreeRangeError(
            f"p-th powers from degree {k} land in degree {p * k}, past top degree {ga.d}")
    basis = ga.bases[k]
    s = len(basis)
    payload = {"p": p, "dimension": s,
               "codomain_dimension": len(ga.bases[p * k])}
    if s == 0:
        return AnisotropyVerdict("exact-semilinear", k, p, "anisotropic", payload)
    fd = ga.functional._factored_domain(ga.functional.nvars)
    columns = []
    for e in basis:
        pe = tuple(p * x for x in e)
        w = ga.coordinates(ga.algebra.monomial_element(pe))
        columns.append([fd.from_rational_function(c) for c in w])
    clearers = [_pth_power_clearing(fd, col, p) for col in columns]
    rows_map = {}
    for i, (col, clear) in enumerate(zip(columns, clearers)):
        scale = fd.pow(clear, p)
        for j, w in enumerate(col):
            if fd.is_zero(w):
                continue
            for a, g in _residue_split(_as_polynomial(fd, fd.mul(w, scale)), p).items():
                rows_map.setdefault((j, a), {})[i] = g
    rows = [{i: fd.from_polynomial(g) for i, g in rows_map[key].items()}
            for key in sorted(rows_map)]
    payload["rows"] = len(rows)
    kern = kernel_basis(rows, s, fd)
    if not kern:
        return AnisotropyVerdict("exact-semilinear", k, p, "anisotropic", payload)

    vec = kern[0]
    coords = []
    for i in range(s):
        if i in vec:
            coords.append(fd.to_rational(fd.mul(vec[i], clearers[i])))
        else:
            coords.append(RationalFunction.zero(ga.base, ga.functional.nvars))
    witness = ga.element_from_coordinates(k, coords)
    if ga.is_zero(witness) or not ga.is_zero(_power(ga, witness, p)):
        raise InternalConsistencyError("semilinear kernel vector fails the witness re-check")
    payload = dict(payload, kernel_dimension=len(kern), witness=tuple(coords),
                   witness_element=witness)
    return AnisotropyVerdict("exact-semilinear", k, p, "kernel-witness", payload)


def check_pm_anisotropy(ga: GorensteinAlgebra, m: int, k: int) -> AnisotropyVerdict:
    """Verify u^(pm) != 0 for every nonzero u in B^k.

    Descent: with n = ceil(M/p) for a target exponent M, u^M != 0 follows
    from u^(pn) != 0 because pn >= M, and u^(pn) = (u^n)^p follows from
    u^n != 0 by p-th power injectivity at degree nk.  Starting from
    M = pm the stage degrees are mk, ceil(m/p)k, ..., k; every stage runs
    the exact semilinear check on the full graded piece."""
    p = _require_prime_char(ga)
    if m < 1:
        raise DegreeRangeError("the exponent multiplier m must be at least 1")
    if k < 0 or p * m * k > ga.d:
        raise DegreeRangeError(
            f"pm-th powers from degree {k} land in degree {p * m * k}, "
            f"past top degree {ga.d}")
    stages = []
    for mm in _descent_exponents(m, p):
        v = check_p_anisotropy(ga, mm * k)
        stages.append((mm * k, v.result))
        if v.result != "anisotropic":
            payload = {"p": p, "m": m, "stages": tuple(stages),
                       "failed_degree": mm * k, "stage_verdict": v}
            return AnisotropyVerdict("exact-semilinear", k, p * m, "inconclusive", payload)
    payload = {"p": p, "m": m, "stages": tuple(stages)}
    return AnisotropyVerdict("exact-semilinear", k, p * m, "anisotropic", payload)


# derivative certificates -----------------------------------------------------


def derivative_certificate(ga: GorensteinAlgebra, u: AlgebraElement) -> DerivativeCertificate:
    """Certify u^p != 0 through a nonvanishing derivative of a degree value.

    Searches faces tau of cardinality d - k with x_tau u != 0, splits tau
    into xi of cardinality (p-1)k and the rest iota, and differentiates the
    symbolic value deg(u^p x_iota) once by each variable of xi.  A nonzero
    result certifies u^p != 0.  Exhausting every split without a nonzero
    derivative is reported as inconclusive, not as a refutation."""
    p = _require_prime_char(ga)
    k = u.k
    if ga.is_zero(u):
        raise ScalarDomainError("the zero class admits no certificate")
    if p * k > ga.d:
        raise DegreeRangeError(
            f"p-th powers from degree {k} land in degree {p * k}, past top degree {ga.d}")
    df = ga.functional
    up = _power(ga, u, p)
    xi_size = (p - 1) * k
    for tau in sorted(ga.algebra.complex.faces_of_card(ga.d - k)):
        if ga.is_zero(ga.multiply(ga.algebra.face_element(tau), u)):
            continue
        for xi in combinations(tau, xi_size):
            iota = tuple(v for v in tau if v not in xi)
            w = ga.multiply(up, ga.algebra.face_element(iota))
            if ga.is_zero(w):
                continue
            val = df.degree_element(w)
            for v in xi:
                val = partial_derivative(val, df.vindex[v] + 1)
            if not val.is_zero:
                return DerivativeCertificate(True, k, p, tuple(tau), tuple(xi),
                                             iota, val)
    return DerivativeCertificate(False, k, p, (), (), (), None)


def tm_closed_form_check(ga: GorensteinAlgebra, F, xi, sigma, iota) -> bool:
    """Check the closed form of a single facet term against the moment curve.

    For a facet F split into xi, sigma, iota with |xi| = (p-1)|sigma|, the
    F-term of the interpolation sum for deg(x_sigma^p x_iota) agrees, up to
    a p-th power factor, with

        mu_F * prod_{i<j in xi+sigma} (t_j - t_i) * prod_{j in xi+sigma} (r - t_j)
             / ( prod_{i<j in iota} (t_j - t_i) * prod_{j in iota} t_j )

    where r is the general position value.  The check computes both sides
    exactly and decides the p-th power property by differentiation."""
    p = _require_prime_char(ga)
    df = ga.functional
    F = tuple(sorted(F))
    xi, sigma, iota = tuple(sorted(xi)), tuple(sorted(sigma)), tuple(sorted(iota))
    if df.base.is_zero(df.cycle.coefficient(F)):
        raise MissingFaceError(f"{F} is not a facet of the cycle")
    parts = xi + sigma + iota
    if len(set(parts)) != len(parts) or set(parts) != set(F):
        raise PartitionError("xi, sigma, iota must partition the facet")
    if len(xi) != (p - 1) * len(sigma):
        raise PartitionError(
            f"xi has {len(xi)} vertices, needs (p-1)|sigma| = {(p - 1) * len(sigma)}")
    alpha = [0] * df.nvars
    for v in sigma:
        alpha[df.vindex[v]] = p
    for v in iota:
        alpha[df.vindex[v]] = 1
    term = df.lee_term(F, alpha)
    closed = _tm_closed_form(df, F, tuple(sorted(xi + sigma)), iota)
    ok, _ = is_pth_power(term * closed.inverse(), p)
    return ok


def _tm_closed_form(df: DegreeFunctional, F, upper, iota) -> RationalFunction:
    base = df.base
    symbolic = df.rho is None
    nv = df.nvars + 1 if symbolic else df.nvars

    def var(v):
        return Polynomial.variable(base, nv, df.vindex[v])

    if symbolic:
        r = Polynomial.variable(base, nv, nv - 1)
    else:
        r = Polynomial.const(base, nv, df.rho)
    num = Polynomial.const(base, nv, df.cycle.coefficient(F))
    for a in range(len(upper)):
        for b in range(a + 1, len(upper)):
            num = num * (var(upper[b]) - var(upper[a]))
    for v in upper:
        num = num * (r - var(v))
    den = Polynomial.one(base, nv)
    for a in range(len(iota)):
        for b in range(a + 1, len(iota)):
            den = den * (var(iota[b]) - var(iota[a]))
    for v in iota:
        den = den * var(v)
    return RationalFunction(num, den)


# hard Lefschetz --------------------------------------------------------------


def check_lefschetz(ga: GorensteinAlgebra, k: int, coefficients=None,
                    seed: int = 0) -> LefschetzReport:
    """Exact rank of multiplication by ell^(d-2k) from B^k to B^(d-k).

    ell is the degree one element with the given vertex coefficients, or a
    seeded random integer combination when none are supplied.  A deficient
    rank for random ell refutes nothing; the report carries the seed so a
    caller can retry with a fresh draw."""
    if k < 0 or 2 * k > ga.d:
        raise DegreeRangeError(f"need 0 <= 2k <= d, got k={k}, d={ga.d}")
    alg = ga.algebra
    used_seed = None
    if coefficients is None:
        rng = random.Random(f"lefschetz:{seed}")
        coefficients = [rng.randrange(1, 1 << 20) for _ in alg.vertices]
        used_seed = seed
    coefficients = list(coefficients)
    if len(coefficients) != len(alg.vertices):
        raise DimensionMismatchError(
            f"{len(coefficients)} coefficients for {len(alg.vertices)} vertices")
    coeffs = tuple(ga.base.coerce(c) for c in coefficients)
    vec = {}
    for v, c in zip(alg.vertices, coeffs):
        if ga.base.is_zero(c):
            continue
        e = [0] * alg.nvars
        e[alg.vindex[v]] = 1
        vec[tuple(e)] = RationalFunction.const(ga.base, alg.nvars, c)
    ell = AlgebraElement(alg, 1, vec)
    power = ga.d - 2 * k
    pw = alg.monomial_element((0,) * alg.nvars)
    for _ in range(power):
        pw = ga.multiply(pw, ell)
    dim = len(ga.bases[k])
    codim = len(ga.bases[ga.d - k])
    rows = []
    for b in ga.bases[k]:
        img = ga.multiply(alg.monomial_element(b), pw)
        coords = ga.coordinates(img)
        rows.append({j: c for j, c in enumerate(coords) if not c.is_zero})
    rank, _ = symbolic_rank_and_pivots(rows, codim, ga.base, alg.nvars)
    return LefschetzReport(k=k, power=power, rank=rank, dimension=dim,
                           codomain_dimension=codim,
                           iso=(rank == dim and dim == codim),
                           coefficients=coeffs, seed=used_seed)


# transfer between coefficient fields -----------------------------------------


def _lift_side(side):
    if isinstance(side, GorensteinAlgebra):
        return side.algebra, side
    if isinstance(side, ArtinianAlgebra):
        return side, None
    raise WrongModeError("lift_basis takes Artinian algebras or Gorenstein quotients")


def lift_basis(side_p, side_q, k: int):
    """Monomial basis at degree k over F_p(t), certified to stay a basis
    over Q(t).

    Both sides may be Gorenstein quotients (the basis of B^k is lifted) or
    Artinian algebras (the certified face monomial basis of A^k is lifted).
    A graded dimension mismatch between the two coefficient fields means no
    common basis exists and raises a torsion error."""
    alg_p, ga_p = _lift_side(side_p)
    alg_q, ga_q = _lift_side(side_q)
    if alg_p.base.characteristic == 0 or alg_q.base.characteristic != 0:
        raise WrongModeError(
            "lift goes from a prime characteristic algebra to a rational one")
    if alg_p.complex != alg_q.complex:
        raise DimensionMismatchError("the two algebras come from different complexes")
    if alg_p.piece(k).dim != alg_q.piece(k).dim:
        raise TorsionError(
            f"A^{k} has dimension {alg_p.piece(k).dim} over F_p "
            f"and {alg_q.piece(k).dim} over Q")
    if ga_p is not None and ga_q is not None:
        if len(ga_p.bases[k]) != len(ga_q.bases[k]):
            raise TorsionError(
                f"B^{k} has dimension {len(ga_p.bases[k])} over F_p "
                f"and {len(ga_q.bases[k])} over Q")
        candidates = tuple(ga_p.bases[k])
        width = len(ga_q.bases[k])
        coords = ga_q.coordinates
    else:
        candidates = tuple(alg_p.piece(k).basis)
        width = alg_q.piece(k).dim
        coords = None
    if not candidates:
        return ()
    rows = []
    for mono in candidates:
        if coords is not None:
            col = coords(alg_q.monomial_element(mono))
        else:
            col = alg_q.piece(k).expand(mono)
        rows.append({j: c for j, c in enumerate(col) if not c.is_zero})
    rank, _ = symbolic_rank_and_pivots(rows, width, alg_q.base, alg_q.nvars)
    if rank != len(candidates):
        raise InternalConsistencyError(
            "prime characteristic basis monomials became dependent over the rationals")
    return candidates


def bracket_degree_check(cycle: SimplicialCycle, p: int, samples: int = 50,
                         seed: int = 0) -> BracketCheckReport:
    """Compare the rational and mod-p degree maps on random top elements.

    Draws integer combinations v = sum lambda_I x_I over the facets of the
    cycle, rescales by a power of p so every coefficient has valuation at
    least zero with equality somewhere, and checks that reducing deg(v)
    coefficientwise agrees with the mod-p degree of the reduced element.
    Disagreements are reported with the sample that produced them."""
    if cycle.base.kind != "rationals":
        raise WrongModeError("the bracket comparison starts from a rational cycle")
    if not is_prime(p):
        raise ScalarDomainError(f"{p} is not prime")
    facets = sorted(cycle.coefficients)
    vertices = sorted({v for F in facets for v in F})
    df_q = DegreeFunctional(cycle, vertices)
    base_p = BaseField.prime(p)
    cycle_p = SimplicialCycle(
        base_p, cycle.d,
        {F: cp for F in facets
         if not base_p.is_zero(cp := base_p.coerce(cycle.coefficient(F)))})
    df_p = DegreeFunctional(cycle_p, vertices)
    fd_q = df_q._factored_domain(df_q.nvars)
    fd_p = df_p._factored_domain(df_p.nvars)

    def mono_exps(F):
        e = [0] * df_q.nvars
        for v in F:
            e[df_q.vindex[v]] = 1
        return tuple(e)

    rng = random.Random(f"bracket:{seed}:{p}")
    disagreements = []
    for idx in range(samples):
        lams = []
        while not any(lams):
            lams = [rng.randrange(-20, 21) * p ** rng.choice((0, 0, 0, 1, 1, 2))
                    for _ in facets]
        shift = min(_int_valuation(l, p) for l in lams if l)
        if shift:
            lams = [l // p ** shift for l in lams]
        if min(_int_valuation(l, p) for l in lams if l) != 0:
            raise InternalConsistencyError("valuation normalization failed")
        acc = fd_q.zero
        for F, lam in zip(facets, lams):
            if lam:
                acc = fd_q.add(acc, fd_q.mul(fd_q.from_base(Fraction(lam)),
                                             fd_q.from_rational_function(
                                                 df_q.degree_monomial(mono_exps(F)))))
        deg_q = fd_q.to_rational(acc)
        acc = fd_p.zero
        for F, lam in zip(facets, lams):
            lp = base_p.coerce(lam)
            if not base_p.is_zero(lp):
                acc = fd_p.add(acc, fd_p.mul(fd_p.from_base(lp),
                                             fd_p.from_rational_function(
                                                 df_p.degree_monomial(mono_exps(F)))))
        deg_p = fd_p.to_rational(acc)
        if deg_q.is_zero:
            agree = deg_p.is_zero
        else:
            agree = bracket_reduce(deg_q, p) == deg_p
        if not agree:
            disagreements.append((idx, tuple(lams)))
    return BracketCheckReport(p=p, checked=samples,
                              disagreements=tuple(disagreements), seed=seed)


def _int_valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


# rational pipeline -----------------------------------------------------------


def check_rational_anisotropy(K: SimplicialComplex, m: int, seed: int = 0,
                              backend: str = "evaluated",
                              bracket_samples: int = 50) -> AnisotropyVerdict:
    """Verify u^m != 0 for every nonzero u in B^k over Q(t), k <= d/m.

    Requires the complex to be a homology sphere over F_p for every prime
    p dividing m; the failing prime and link are reported otherwise.  The
    verification builds the Gorenstein quotients over Q and over each F_p,
    checks that the Artinian reductions are already Gorenstein, lifts a
    common monomial basis at every stage degree, runs the exact semilinear
    check over F_p at each stage, and samples the compatibility of the two
    degree maps under coefficientwise reduction.  Writing m as an ascending
    product of primes p_1 .. p_r, the stage for p_j acts at degree
    (p_1 .. p_{j-1}) k, so a nonzero u transfers to F_{p_j}, gains a p_j-th
    power there, and returns nonzero through the degree compatibility."""
    if m < 2:
        raise DegreeRangeError("rational power checks need m >= 2")
    if not K.is_pure:
        raise HypothesisFailureError("the support is not pure, so it is not "
                                     "a homology sphere", face=())
    d = K.dim + 1
    factors = _prime_factors(m)
    primes = sorted(set(factors))
    for p in primes:
        rep = homology_sphere_check(K, BaseField.prime(p))
        if not rep.ok:
            tau, i, found, expected = rep.failures[0]
            raise HypothesisFailureError(
                f"not a homology sphere over F_{p}: the link of {tau} has "
                f"reduced homology of dimension {found} in degree {i}, expected {expected}",
                p=p, face=tau, homology=(i, found, expected))

    n = len(K.vertices)
    rationals = BaseField.rationals()
    alg_q = build_artinian(K, build_lsop(n, d, rationals), base=rationals,
                           backend=backend, seed=seed)
    ga_q = gorensteinify(alg_q, fundamental_cycle(K, rationals))
    gas = {}
    for p in primes:
        base_p = BaseField.prime(p)
        alg_p = build_artinian(K, build_lsop(n, d, base_p), base=base_p,
                               backend=backend, seed=seed)
        gas[p] = gorensteinify(alg_p, fundamental_cycle(K, base_p))
    for ga in (ga_q, *gas.values()):
        for kk in range(d + 1):
            if ga.algebra.piece(kk).dim != len(ga.bases[kk]):
                raise InternalConsistencyError(
                    f"sphere reduction is not Gorenstein at degree {kk} over "
                    f"characteristic {ga.base.characteristic}")

    kmax = d // m
    stages = []
    lifts = []
    failed = None
    for k in range(1, kmax + 1):
        e = 1
        for p in factors:
            degree = e * k
            lifted = lift_basis(gas[p], ga_q, degree)
            lifts.append((p, degree, len(lifted)))
            v = check_p_anisotropy(gas[p], degree)
            stages.append((k, p, degree, v.result))
            if v.result != "anisotropic":
                failed = (k, p, degree, v)
                break
            e *= p
        if failed:
            break
    brackets = []
    cycle_q = ga_q.cycle
    for p in primes:
        rep = bracket_degree_check(cycle_q, p, samples=bracket_samples, seed=seed)
        if rep.disagreements:
            raise InternalConsistencyError(
                f"degree maps disagree under reduction mod {p}: {rep.disagreements[0]}")
        brackets.append((p, rep.checked))

    payload = {"m": m, "prime_chain": tuple(factors),
               "max_degree_checked": kmax, "stages": tuple(stages),
               "lifts": tuple(lifts), "bracket_checks": tuple(brackets),
               "seed": seed}
    if failed:
        payload["failed_stage"] = failed[:3]
        payload["stage_verdict"] = failed[3]
        return AnisotropyVerdict("exact-semilinear", kmax, m, "inconclusive", payload)
    return AnisotropyVerdict("exact-semilinear", kmax, m, "anisotropic", payload)


# randomized sampling ---------------------------------------------------------


def sample_power_check(ga: GorensteinAlgebra, k: int, exponent: int,
                       samples: int = 200, seed: int = 0) -> SamplePowerReport:
    """Raise seeded random nonzero elements of B^k to the given power and
    record any that vanish.

    Coefficients are random integer linear combinations of 1 and the
    variables.  An empty failure list supports anisotropy without proving
    it; a nonempty one exhibits concrete kernel witnesses."""
    if exponent < 1:
        raise DegreeRangeError("the exponent must be at least 1")
    if k < 0 or exponent * k > ga.d:
        raise DegreeRangeError(
            f"powers from degree {k} land in degree {exponent * k}, "
            f"past top degree {ga.d}")
    basis = ga.bases[k]
    if not basis:
        return SamplePowerReport(k=k, exponent=exponent, checked=0,
                                 failures=(), seed=seed)
    nvars = ga.algebra.nvars
    rng = random.Random(f"sample:{seed}:{k}:{exponent}")
    failures = []
    checked = 0
    for _ in range(samples):
        coords = []
        while all(c.is_zero for c in coords) or not coords:
            coords = [_random_linear(ga.base, nvars, rng) for _ in basis]
        u = ga.element_from_coordinates(k, coords)
        checked += 1
        if ga.is_zero(_power(ga, u, exponent)):
            failures.append(tuple(coords))
    return SamplePowerReport(k=k, exponent=exponent, checked=checked,
                             failures=tuple(failures), seed=seed)


def _random_linear(base: BaseField, nvars: int, rng: random.Random) -> RationalFunction:
    pairs = [((0,) * nvars, rng.randrange(-9, 10))]
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        pairs.append((tuple(e), rng.randrange(-9, 10)))
    return RationalFunction.from_polynomial(Polynomial.from_terms(base, nvars, pairs))
