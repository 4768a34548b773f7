"""Exact scalar arithmetic for the parameter field k(t_1, ..., t_n).

Coefficients live in a prime field F_p or in Q (as `fractions.Fraction`).
Polynomials are sparse dicts keyed by exponent tuples and kept in a canonical
form ordered by graded lexicographic comparison with t_1 > t_2 > ... > t_n.
Rational functions store a coprime numerator/denominator pair; over a prime
field the denominator is monic, over Q it is a primitive integer polynomial
with positive leading coefficient, so structural equality is field equality.

The characteristic-p utilities (p-th power detection, p-adic valuation of the
constant part, coefficientwise reduction mod p) follow the conventions used by
the verification layer and are exposed as module-level functions.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import (
    CharacteristicConfigError,
    EvaluationPoleError,
    ExactDivisionError,
    InternalConsistencyError,
    MalformedScalarError,
    NotPIntegralError,
    ReductionSingularError,
    ScalarDomainError,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class BaseField:
    """F_p or Q, acting on raw coefficient values (ints resp. Fractions)."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int = 0):
        if kind not in ("prime", "rationals"):
            raise MalformedScalarError(f"unknown base field kind {kind!r}")
        if kind == "prime" and not is_prime(p):
            raise MalformedScalarError(f"{p} is not prime")
        self.kind = kind
        self.p = p if kind == "prime" else 0

    @classmethod
    def rationals(cls) -> "BaseField":
        return cls("rationals")

    @classmethod
    def prime(cls, p: int) -> "BaseField":
        return cls("prime", p)

    @property
    def characteristic(self) -> int:
        return self.p

    def coerce(self, x):
        if self.kind == "prime":
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise MalformedScalarError(f"{x} has no image in F_{self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "prime" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "prime" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "prime" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "prime" else -a

    def inv(self, a):
        if self.is_zero(a):
            raise MalformedScalarError("division by zero coefficient")
        return pow(a, -1, self.p) if self.kind == "prime" else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if self.kind == "prime":
            return pow(a, e, self.p) if e >= 0 else pow(self.inv(a), -e, self.p)
        return a ** e if e >= 0 else (1 / a) ** (-e)

    def is_zero(self, a) -> bool:
        return a == 0

    def __eq__(self, other):
        return isinstance(other, BaseField) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"F_{self.p}" if self.kind == "prime" else "Q"


def _grlex_key(exps):
    return (sum(exps), exps)


def monomial_sort_key(exps):
    """Sort key listing face monomials as ascending vertex words: x1 before
    x2, x1^2 before x1*x2 before x2^2.  Equals descending lex on exponents."""
    return tuple(-e for e in exps)


class Polynomial:
    __slots__ = ("base", "nvars", "terms")

    def __init__(self, base: BaseField, nvars: int, terms: dict):
        self.base = base
        self.nvars = nvars
        self.terms = terms  # exponent tuple -> nonzero coefficient

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, base, nvars):
        return cls(base, nvars, {})

    @classmethod
    def const(cls, base, nvars, c):
        c = base.coerce(c)
        if base.is_zero(c):
            return cls.zero(base, nvars)
        return cls(base, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, base, nvars):
        return cls.const(base, nvars, 1)

    @classmethod
    def variable(cls, base, nvars, i: int):
        """The variable with 0-based index i."""
        if not 0 <= i < nvars:
            raise MalformedScalarError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls(base, nvars, {tuple(e): base.one})

    @classmethod
    def monomial(cls, base, nvars, exps, c=1):
        c = base.coerce(c)
        exps = tuple(exps)
        if len(exps) != nvars or any(e < 0 for e in exps):
            raise MalformedScalarError(f"bad exponent vector {exps}")
        if base.is_zero(c):
            return cls.zero(base, nvars)
        return cls(base, nvars, {exps: c})

    @classmethod
    def from_terms(cls, base, nvars, pairs):
        out = {}
        for exps, c in pairs:
            c = base.coerce(c)
            exps = tuple(exps)
            acc = base.add(out.get(exps, base.zero), c)
            if base.is_zero(acc):
                out.pop(exps, None)
            else:
                out[exps] = acc
        return cls(base, nvars, out)

    # queries -----------------------------------------------------------

    @property
    def is_zero_poly(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.base.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables_present(self):
        seen = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    seen.add(i)
        return seen

    def leading(self):
        """(exponents, coefficient) of the graded-lex largest term."""
        k = max(self.terms, key=_grlex_key)
        return k, self.terms[k]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def key(self):
        return tuple(self.sorted_terms())

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.base != other.base or self.nvars != other.nvars:
            raise MalformedScalarError("mixed polynomial rings")

    def __add__(self, other):
        self._check(other)
        base = self.base
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = base.add(out.get(e, base.zero), c)
            if base.is_zero(acc):
                out.pop(e, None)
            else:
                out[e] = acc
        return Polynomial(base, self.nvars, out)

    def __neg__(self):
        base = self.base
        return Polynomial(base, self.nvars, {e: base.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        base = self.base
        if not self.terms or not other.terms:
            return Polynomial.zero(base, self.nvars)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc = base.add(out.get(e, base.zero), base.mul(ca, cb))
                if base.is_zero(acc):
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Polynomial(base, self.nvars, out)

    def scale(self, c):
        c = self.base.coerce(c)
        base = self.base
        if base.is_zero(c):
            return Polynomial.zero(base, self.nvars)
        return Polynomial(base, self.nvars, {e: base.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=1):
        c = self.base.coerce(c)
        base = self.base
        if base.is_zero(c):
            return Polynomial.zero(base, self.nvars)
        return Polynomial(
            base,
            self.nvars,
            {tuple(x + y for x, y in zip(e, exps)): base.mul(v, c) for e, v in self.terms.items()},
        )

    def __pow__(self, e: int):
        if e < 0:
            raise MalformedScalarError("negative polynomial power")
        result = Polynomial.one(self.base, self.nvars)
        square = self
        while e:
            if e & 1:
                result = result * square
            e >>= 1
            if e:
                square = square * square
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.base == other.base
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.base, self.nvars, frozenset(self.terms.items())))

    # calculus and substitution -----------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        base = self.base
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coeff = base.mul(c, base.coerce(e[i]))
            if base.is_zero(coeff):
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = coeff
        return Polynomial(base, self.nvars, out)

    def evaluate(self, values, domain=None):
        """Evaluate at a point.  With `domain` the values are domain elements
        and coefficients are mapped through domain.from_base."""
        if len(values) != self.nvars:
            raise MalformedScalarError("wrong number of evaluation values")
        if domain is None:
            base = self.base
            total = base.zero
            vals = [base.coerce(v) for v in values]
            for e, c in self.terms.items():
                term = c
                for ei, vi in zip(e, vals):
                    if ei:
                        term = base.mul(term, base.pow(vi, ei))
                total = base.add(total, term)
            return total
        total = domain.zero
        for e, c in self.terms.items():
            term = domain.from_base(c)
            for ei, vi in zip(e, values):
                if ei:
                    term = domain.mul(term, domain.pow(vi, ei))
            total = domain.add(total, term)
        return total

    def embed(self, nvars: int) -> "Polynomial":
        if nvars < self.nvars:
            raise MalformedScalarError("embed cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(self.base, nvars, {e + pad: c for e, c in self.terms.items()})

    def project(self, nvars: int) -> "Polynomial":
        """Drop trailing variables, which must not occur."""
        for e in self.terms:
            if any(e[nvars:]):
                raise MalformedScalarError("projection would lose a variable")
        return Polynomial(self.base, nvars, {e[:nvars]: c for e, c in self.terms.items()})

    def substitute_pth_root(self, p: int) -> "Polynomial":
        """Replace t_i^p by t_i; every exponent must be divisible by p.

        Over F_p coefficients are Frobenius-fixed, so this is the inverse of
        the p-th power map on polynomials all of whose exponents are
        multiples of p."""
        out = {}
        for e, c in self.terms.items():
            if any(x % p for x in e):
                raise ScalarDomainError("exponent not divisible by p")
            out[tuple(x // p for x in e)] = c
        return Polynomial(self.base, self.nvars, out)

    def stretch(self, p: int) -> "Polynomial":
        """Replace t_i by t_i^p."""
        return Polynomial(self.base, self.nvars, {tuple(x * p for x in e): c for e, c in self.terms.items()})

    # integer content (rational base) ------------------------------------

    def rational_content(self) -> Fraction:
        """Positive c with self = c * (primitive integer polynomial)."""
        if self.base.kind != "rationals":
            raise ScalarDomainError("rational content needs rational coefficients")
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, c.numerator)
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def min_exponents(self):
        its = iter(self.terms)
        first = next(its)
        mins = list(first)
        for e in its:
            for i, v in enumerate(e):
                if v < mins[i]:
                    mins[i] = v
        return tuple(mins)

    # printing ------------------------------------------------------------

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"t{i+1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, ei in enumerate(e):
                if ei == 1:
                    factors.append(names[i])
                elif ei > 1:
                    factors.append(f"{names[i]}^{ei}")
            neg = False
            if self.base.kind == "rationals" and c < 0:
                neg, c = True, -c
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()})"


# polynomial division and gcd ------------------------------------------------


def poly_exact_div(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g when the division is exact; ExactDivisionError otherwise."""
    f._check(g)
    base = f.base
    if g.is_zero_poly:
        raise MalformedScalarError("division by the zero polynomial")
    if f.is_zero_poly:
        return f
    quot = {}
    rem = dict(f.terms)
    ge, gc = g.leading()
    while rem:
        re = max(rem, key=_grlex_key)
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in qe):
            raise ExactDivisionError("inexact polynomial division")
        qc = base.div(rem[re], gc)
        quot[qe] = qc
        for e, c in g.terms.items():
            te = tuple(a + b for a, b in zip(qe, e))
            acc = base.sub(rem.get(te, base.zero), base.mul(qc, c))
            if base.is_zero(acc):
                rem.pop(te, None)
            else:
                rem[te] = acc
    return Polynomial(base, f.nvars, quot)


def _unit_normalize(f: Polynomial) -> Polynomial:
    """Scale by a constant so the graded-lex leading coefficient is 1."""
    if f.is_zero_poly:
        return f
    _, lc = f.leading()
    if lc == f.base.one:
        return f
    return f.scale(f.base.inv(lc))


# prime-field gcd: primitive pseudo-remainder sequences -----------------------
#
# Over F_p there is no rational coefficient growth, so the classic primitive
# PRS is robust and fast; sympy's dense finite-field gcd path can raise
# PolynomialDivisionFailed on multivariate input, so we never use it here.


def _main_variable(f: Polynomial, g: Polynomial):
    for i in reversed(range(f.nvars)):
        if f.degree_in(i) > 0 or g.degree_in(i) > 0:
            return i
    return None


def _split_by_var(f: Polynomial, v: int):
    """View f as univariate in t_v: exponent -> coefficient polynomial."""
    buckets: dict = {}
    for e, c in f.terms.items():
        ne = e[:v] + (0,) + e[v + 1:]
        buckets.setdefault(e[v], {})[ne] = c
    return {k: Polynomial(f.base, f.nvars, d) for k, d in buckets.items()}


def _join_by_var(coeffs: dict, v: int, base, nvars: int) -> Polynomial:
    terms = {}
    for k, poly in coeffs.items():
        for e, c in poly.terms.items():
            terms[e[:v] + (k,) + e[v + 1:]] = c
    return Polynomial(base, nvars, terms)


def _list_gcd(polys):
    acc = polys[0]
    for c in polys[1:]:
        if acc.is_constant:
            break
        acc = _prime_gcd(acc, c)
    return _unit_normalize(acc)


def _pseudo_rem(fd: dict, gd: dict) -> dict:
    """Pseudo remainder of univariate-in-v coefficient dicts."""
    dg = max(gd)
    lcg = gd[dg]
    r = dict(fd)
    while r:
        dr = max(r)
        if dr < dg:
            break
        lcr = r[dr]
        new = {}
        for k, c in r.items():
            if k != dr:
                new[k] = c * lcg
        for k, c in gd.items():
            if k == dg:
                continue
            kk = k + dr - dg
            prod = c * lcr
            acc = new.get(kk)
            acc = -prod if acc is None else acc - prod
            if acc.is_zero_poly:
                new.pop(kk, None)
            else:
                new[kk] = acc
        r = new
    return r


def _prime_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multivariate gcd over F_p by recursion on the last occurring variable."""
    if f.is_constant or g.is_constant:
        return Polynomial.one(f.base, f.nvars)
    v = _main_variable(f, g)
    fd = _split_by_var(f, v)
    gd = _split_by_var(g, v)
    cont_f = _list_gcd(list(fd.values()))
    cont_g = _list_gcd(list(gd.values()))
    cont = _prime_gcd(cont_f, cont_g) if not (cont_f.is_constant or cont_g.is_constant) \
        else Polynomial.one(f.base, f.nvars)
    fd = {k: poly_exact_div(c, cont_f) for k, c in fd.items()} if not cont_f.is_constant else fd
    gd = {k: poly_exact_div(c, cont_g) for k, c in gd.items()} if not cont_g.is_constant else gd
    if max(fd) < max(gd):
        fd, gd = gd, fd
    while True:
        r = _pseudo_rem(fd, gd)
        if not r:
            break
        if max(r) == 0:
            # a unit times the content: the primitive gcd in t_v is trivial
            return cont
        rc = _list_gcd(list(r.values()))
        if not rc.is_constant:
            r = {k: poly_exact_div(c, rc) for k, c in r.items()}
        fd, gd = gd, r
    return cont * _join_by_var(gd, v, f.base, f.nvars)


_SYMPY_RINGS: dict = {}


def _sympy_ring(base: BaseField, nvars: int):
    """Cached sympy polynomial ring matching (base, nvars)."""
    key = (base.kind, base.p, nvars)
    hit = _SYMPY_RINGS.get(key)
    if hit is not None:
        return hit
    from sympy.polys.domains import GF, QQ
    from sympy.polys.rings import ring

    dom = QQ if base.kind == "rationals" else GF(base.p)
    R = ring(",".join(f"t{i+1}" for i in range(nvars)), dom)[0]
    _SYMPY_RINGS[key] = (R, dom)
    return R, dom


def _core_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd of two nonconstant polynomials.

    Rational coefficients go through sympy's multivariate machinery, which
    handles the classic pseudo-remainder coefficient blowup over Q.  Prime
    fields use our own primitive PRS: coefficients cannot grow there, and
    sympy's dense finite-field path is unreliable on multivariate input."""
    base = f.base
    if base.kind == "prime":
        return _prime_gcd(f, g)
    R, dom = _sympy_ring(base, f.nvars)
    sf = R.from_dict({e: dom(c.numerator, c.denominator) for e, c in f.terms.items()})
    sg = R.from_dict({e: dom(c.numerator, c.denominator) for e, c in g.terms.items()})
    h = sf.gcd(sg)
    terms = {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in h.to_dict().items()}
    return Polynomial(base, f.nvars, {e: c for e, c in terms.items() if c != 0})


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd in k[t_1..t_n], unit-normalized to leading coefficient 1.

    Cheap structural cases (constants, equal term sets, shared monomial
    factors, single terms) are handled directly; everything else goes
    through sympy."""
    f._check(g)
    base = f.base
    if f.is_zero_poly:
        return _unit_normalize(g)
    if g.is_zero_poly:
        return _unit_normalize(f)
    if f.is_constant or g.is_constant:
        return Polynomial.one(base, f.nvars)
    if f.terms == g.terms:
        return _unit_normalize(f)

    mf, mg = f.min_exponents(), g.min_exponents()
    common = tuple(min(a, b) for a, b in zip(mf, mg))
    if any(mf) or any(mg):
        f = f.mul_monomial(tuple(-x for x in mf)) if any(mf) else f
        g = g.mul_monomial(tuple(-x for x in mg)) if any(mg) else g
    mono = Polynomial.monomial(base, f.nvars, common) if any(common) else None

    if len(f.terms) == 1 or len(g.terms) == 1:
        core = Polynomial.one(base, f.nvars)
    else:
        core = _core_gcd(f, g)
    return _unit_normalize(core * mono) if mono is not None else _unit_normalize(core)


def poly_lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero_poly or g.is_zero_poly:
        return Polynomial.zero(f.base, f.nvars)
    return _unit_normalize(poly_exact_div(f * g, poly_gcd(f, g)))


# rational functions ---------------------------------------------------------


class RationalFunction:
    """Element of k(t_1..t_n) in canonical form.

    gcd(num, den) = 1 always; over a prime field den is monic; over Q den is
    a primitive integer polynomial with positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(
        self,
        num: Polynomial,
        den: Polynomial,
        _canonical: bool = False,
        _coprime: bool = False,
    ):
        num._check(den)
        if den.is_zero_poly:
            raise MalformedScalarError("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den, skip_gcd=_coprime)
        self.num = num
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def from_polynomial(cls, f: Polynomial):
        return cls(f, Polynomial.one(f.base, f.nvars))

    @classmethod
    def const(cls, base, nvars, c):
        return cls.from_polynomial(Polynomial.const(base, nvars, c))

    @classmethod
    def zero(cls, base, nvars):
        return cls.from_polynomial(Polynomial.zero(base, nvars))

    @classmethod
    def one(cls, base, nvars):
        return cls.from_polynomial(Polynomial.one(base, nvars))

    @classmethod
    def variable(cls, base, nvars, i):
        return cls.from_polynomial(Polynomial.variable(base, nvars, i))

    # queries ------------------------------------------------------------

    @property
    def base(self):
        return self.num.base

    @property
    def nvars(self):
        return self.num.nvars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero_poly

    def is_polynomial(self) -> bool:
        return self.den.is_constant

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, RationalFunction):
            raise MalformedScalarError(f"cannot combine with {type(other).__name__}")
        if self.base != other.base or self.nvars != other.nvars:
            raise MalformedScalarError("mixed rational function fields")

    def __add__(self, other):
        self._check(other)
        if self.den.terms == other.den.terms:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        self._check(other)
        if self.den.terms == other.den.terms:
            return RationalFunction(self.num - other.num, self.den)
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero or other.is_zero:
            return RationalFunction.zero(self.base, self.nvars)
        # cross-cancel before multiplying to keep the gcds small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_constant else poly_exact_div(self.num, g1)
        d2 = other.den if g1.is_constant else poly_exact_div(other.den, g1)
        n2 = other.num if g2.is_constant else poly_exact_div(other.num, g2)
        d1 = self.den if g2.is_constant else poly_exact_div(self.den, g2)
        return RationalFunction(n1 * n2, d1 * d2, _coprime=True)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero:
            raise MalformedScalarError("division by zero")
        return self * RationalFunction(other.den, other.num)

    def inverse(self):
        if self.is_zero:
            raise MalformedScalarError("inverse of zero")
        return RationalFunction(self.den, self.num, _coprime=True)

    def __pow__(self, e: int):
        if e == 0:
            return RationalFunction.one(self.base, self.nvars)
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, _coprime=True)

    def scale(self, c):
        return self * RationalFunction.const(self.base, self.nvars, c)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.base == other.base
            and self.nvars == other.nvars
            and self.num.terms == other.num.terms
            and self.den.terms == other.den.terms
        )

    def __hash__(self):
        return hash((self.num, self.den))

    # calculus -----------------------------------------------------------

    def derivative(self, i: int) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative(i) * d - n * d.derivative(i), d * d)

    def evaluate_raw(self, values, domain=None):
        if domain is None:
            dv = self.den.evaluate(values)
            if self.base.is_zero(dv):
                raise EvaluationPoleError("denominator vanishes at the point")
            return self.base.div(self.num.evaluate(values), dv)
        dv = self.den.evaluate(values, domain)
        if domain.is_zero(dv):
            raise EvaluationPoleError("denominator vanishes at the point")
        return domain.mul(self.num.evaluate(values, domain), domain.inv(dv))

    def embed(self, nvars: int):
        return RationalFunction(self.num.embed(nvars), self.den.embed(nvars), _canonical=True)

    def project(self, nvars: int):
        return RationalFunction(self.num.project(nvars), self.den.project(nvars), _canonical=True)

    def to_str(self, names=None) -> str:
        if self.den.is_constant and self.den.constant_value() == self.base.one:
            return self.num.to_str(names)
        ns = self.num.to_str(names)
        ds = self.den.to_str(names)
        if len(self.num.terms) > 1:
            ns = "(" + ns + ")"
        if len(self.den.terms) > 1:
            ds = "(" + ds + ")"
        return ns + "/" + ds

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()})"


def _canonicalize(num: Polynomial, den: Polynomial, skip_gcd: bool = False):
    base = num.base
    if num.is_zero_poly:
        return num, Polynomial.one(base, num.nvars)
    if not skip_gcd:
        g = poly_gcd(num, den)
        if not g.is_constant:
            num = poly_exact_div(num, g)
            den = poly_exact_div(den, g)
    if base.kind == "prime":
        _, lc = den.leading()
        if lc != 1:
            c = base.inv(lc)
            num, den = num.scale(c), den.scale(c)
    else:
        c = den.rational_content()
        _, lc = den.leading()
        if lc < 0:
            c = -c
        if c != 1:
            inv = 1 / c
            num, den = num.scale(inv), den.scale(inv)
    return num, den


# public operations ----------------------------------------------------------


def normalize(f: RationalFunction) -> RationalFunction:
    """Return the canonical form (idempotent; constructors already normalize)."""
    return RationalFunction(f.num, f.den)


def partial_derivative(f: RationalFunction, v: int) -> RationalFunction:
    """d/dt_v with 1-based v."""
    if not 1 <= v <= f.nvars:
        raise ScalarDomainError(f"variable index {v} outside 1..{f.nvars}")
    return f.derivative(v - 1)


def is_pth_power(f: RationalFunction, p: int):
    """Decide whether f = h^p in characteristic p; returns (bool, h or None).

    Criterion: all partial derivatives vanish.  The witness is read off the
    canonical form by dividing every exponent by p."""
    if f.base.characteristic != p:
        raise CharacteristicConfigError(f"field characteristic {f.base.characteristic} != {p}")
    if f.is_zero:
        raise ScalarDomainError("0 has no meaningful p-th power decomposition")
    for i in range(f.nvars):
        if not f.derivative(i).is_zero:
            return False, None
    h = RationalFunction(
        f.num.substitute_pth_root(p), f.den.substitute_pth_root(p), _canonical=True
    )
    if h ** p != f:
        raise InternalConsistencyError("p-th root reconstruction failed")
    return True, h


def ord_p(f: RationalFunction, p: int) -> int:
    """p-adic valuation of the constant a when f = a * P/Q with P, Q primitive
    integer polynomials.  Additive: ord_p(fg) = ord_p(f) + ord_p(g)."""
    if f.base.kind != "rationals":
        raise CharacteristicConfigError("ord_p needs rational coefficients")
    if not is_prime(p):
        raise ScalarDomainError(f"{p} is not prime")
    if f.is_zero:
        raise ScalarDomainError("ord_p(0) is undefined")
    a = f.num.rational_content()  # canonical den is primitive already
    val = 0
    x = a.numerator
    while x % p == 0:
        x //= p
        val += 1
    x = a.denominator
    while x % p == 0:
        x //= p
        val -= 1
    return val


def bracket_reduce(f: RationalFunction, p: int) -> RationalFunction:
    """Coefficientwise reduction mod p of a p-integral rational function.

    Requires ord_p(f) >= 0 and a denominator not vanishing mod p."""
    if ord_p(f, p) < 0:
        raise NotPIntegralError(f"ord_{p} < 0, reduction undefined")
    fp = BaseField.prime(p)
    den = Polynomial.from_terms(fp, f.nvars, [(e, c.numerator) for e, c in f.den.terms.items()])
    if den.is_zero_poly:
        raise ReductionSingularError("denominator vanishes mod p")
    num = Polynomial.from_terms(fp, f.nvars, [(e, c) for e, c in f.num.terms.items()])
    return RationalFunction(num, den)


def evaluate(f: RationalFunction, point):
    """Evaluate at base-field values; EvaluationPoleError on a denominator zero."""
    return f.evaluate_raw(point)
