"""Partially factored field elements for symbolic elimination.

Entries met while row reducing moment-curve relation matrices and pairing
matrices are ratios of products of small structured polynomials: single
variables, differences of two variables, and occasional short sums produced
by earlier pivots.  A flat numerator/denominator pair keeps expanding these
products only to cancel them again, and the gcds dominate the running time.

This module keeps every value as a base-field unit times a product of
normalized polynomial factors with integer exponents (negative exponents
form the denominator).  Multiplication, division, inversion, and the zero
test then touch only the unit and the exponent table.  Addition removes the
shared factors, expands the two small cofactors, adds them, and refactors
the sum by trial division against the linear factors t_i and t_a - t_b and
against the factors the operands already carry.

The representation is not canonical (one value may store as a composite
factor what another stores split), but every value is exact, and converting
back to a reduced RationalFunction is a single product per side followed by
one gcd on the already small result.
"""
from __future__ import annotations

from .errors import ExactDivisionError, MalformedScalarError
from .scalars import BaseField, Polynomial, RationalFunction, poly_exact_div


class FactoredScalar:
    """unit * product of factor^exponent.

    factors maps a normalized non-constant Polynomial to a nonzero integer
    exponent; the value is zero exactly when the unit is zero, in which case
    the table is empty."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit, factors):
        self.unit = unit
        self.factors = factors

    def __repr__(self):
        parts = [repr(self.unit)]
        for f, e in self.factors.items():
            parts.append(f"({f})^{e}")
        return " * ".join(parts)


class FactoredDomain:
    """Field operations on FactoredScalar values over a fixed base field."""

    def __init__(self, base: BaseField, nvars: int):
        self.base = base
        self.nvars = nvars
        self.zero = FactoredScalar(base.zero, {})
        self.one = FactoredScalar(base.one, {})
        diffs = []
        for a in range(nvars):
            for b in range(a + 1, nvars):
                diffs.append(Polynomial.from_terms(
                    base, nvars,
                    [(tuple(1 if i == a else 0 for i in range(nvars)), base.one),
                     (tuple(1 if i == b else 0 for i in range(nvars)), base.neg(base.one))]))
        self._diffs = diffs

    # construction ---------------------------------------------------------

    def from_base(self, c):
        c = self.base.coerce(c)
        if self.base.is_zero(c):
            return self.zero
        return FactoredScalar(c, {})

    def from_monomial(self, exps, c):
        """unit c times the monomial t^exps, already in factored form."""
        c = self.base.coerce(c)
        if self.base.is_zero(c):
            return self.zero
        factors = {}
        for j, e in enumerate(exps):
            if e:
                factors[Polynomial.variable(self.base, self.nvars, j)] = e
        return FactoredScalar(c, factors)

    def _normalize(self, f: Polynomial):
        """(unit, canonical) with canonical = f / unit primitive over Q
        (integer coefficients, positive leading coefficient) or monic over a
        prime field."""
        base = self.base
        if base.kind == "rationals":
            c = f.rational_content()
            _, lc = f.leading()
            if lc < 0:
                c = -c
            if c == 1:
                return base.one, f
            return c, f.scale(1 / c)
        _, lc = f.leading()
        if lc == base.one:
            return base.one, f
        return lc, f.scale(base.inv(lc))

    def from_polynomial(self, f: Polynomial, hints=()):
        """Factored form of f, splitting off the monomial part, the linear
        differences, and any of the hint polynomials that divide it."""
        if f.is_zero_poly:
            return self.zero
        base = self.base
        factors = {}
        mins = f.min_exponents()
        if any(mins):
            f = Polynomial(base, self.nvars,
                           {tuple(x - m for x, m in zip(e, mins)): c
                            for e, c in f.terms.items()})
            for j, m in enumerate(mins):
                if m:
                    factors[Polynomial.variable(base, self.nvars, j)] = m
        if f.is_constant:
            return FactoredScalar(f.constant_value(), factors)
        unit, f = self._normalize(f)
        seen = set()
        candidates = []
        for cand in self._diffs:
            candidates.append(cand)
            seen.add(cand)
        for cand in sorted(hints, key=lambda p: p.total_degree()):
            if not cand.is_constant and cand not in seen:
                candidates.append(cand)
                seen.add(cand)
        for cand in candidates:
            if f.is_constant:
                break
            if cand.total_degree() > f.total_degree():
                continue
            if not cand.variables_present() <= f.variables_present():
                continue
            while True:
                try:
                    q = poly_exact_div(f, cand)
                except ExactDivisionError:
                    break
                f = q
                factors[cand] = factors.get(cand, 0) + 1
                if f.is_constant:
                    break
        if f.is_constant:
            unit = base.mul(unit, f.constant_value())
        else:
            u2, f = self._normalize(f)
            unit = base.mul(unit, u2)
            factors[f] = factors.get(f, 0) + 1
        return FactoredScalar(unit, factors)

    def from_rational_function(self, rf: RationalFunction):
        if rf.is_zero:
            return self.zero
        num = self.from_polynomial(rf.num)
        den = self.from_polynomial(rf.den)
        return self.div(num, den)

    def to_rational(self, a: FactoredScalar) -> RationalFunction:
        if self.base.is_zero(a.unit):
            return RationalFunction.zero(self.base, self.nvars)
        num = Polynomial.const(self.base, self.nvars, a.unit)
        den = Polynomial.one(self.base, self.nvars)
        for f, e in a.factors.items():
            if e > 0:
                num = num * f ** e
            else:
                den = den * f ** (-e)
        return RationalFunction(num, den)

    # field operations -----------------------------------------------------

    def is_zero(self, a: FactoredScalar) -> bool:
        return self.base.is_zero(a.unit)

    def neg(self, a: FactoredScalar) -> FactoredScalar:
        if self.base.is_zero(a.unit):
            return self.zero
        return FactoredScalar(self.base.neg(a.unit), a.factors)

    def mul(self, a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
        base = self.base
        if base.is_zero(a.unit) or base.is_zero(b.unit):
            return self.zero
        factors = dict(a.factors)
        for f, e in b.factors.items():
            acc = factors.get(f, 0) + e
            if acc:
                factors[f] = acc
            else:
                del factors[f]
        return FactoredScalar(base.mul(a.unit, b.unit), factors)

    def inv(self, a: FactoredScalar) -> FactoredScalar:
        if self.base.is_zero(a.unit):
            raise MalformedScalarError("inverse of zero")
        return FactoredScalar(self.base.inv(a.unit),
                              {f: -e for f, e in a.factors.items()})

    def div(self, a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
        return self.mul(a, self.inv(b))

    def pow(self, a: FactoredScalar, e: int) -> FactoredScalar:
        if e == 0:
            return self.one
        if self.base.is_zero(a.unit):
            if e < 0:
                raise MalformedScalarError("inverse of zero")
            return self.zero
        return FactoredScalar(self.base.pow(a.unit, e),
                              {f: x * e for f, x in a.factors.items()})

    def add(self, a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
        base = self.base
        if base.is_zero(a.unit):
            return b
        if base.is_zero(b.unit):
            return a
        common = {}
        ca = {}
        cb = {}
        for f in a.factors.keys() | b.factors.keys():
            ea = a.factors.get(f, 0)
            eb = b.factors.get(f, 0)
            m = min(ea, eb)
            if m:
                common[f] = m
            if ea > m:
                ca[f] = ea - m
            if eb > m:
                cb[f] = eb - m
        pa = self._expand(a.unit, ca)
        pb = self._expand(b.unit, cb)
        s = pa + pb
        if s.is_zero_poly:
            return self.zero
        hints = [f for f in a.factors if not f.is_constant]
        hints += [f for f in b.factors if f not in a.factors and not f.is_constant]
        out = self.from_polynomial(s, hints=hints)
        factors = dict(out.factors)
        for f, e in common.items():
            acc = factors.get(f, 0) + e
            if acc:
                factors[f] = acc
            else:
                del factors[f]
        return FactoredScalar(out.unit, factors)

    def sub(self, a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
        return self.add(a, self.neg(b))

    def _expand(self, unit, factors) -> Polynomial:
        out = Polynomial.const(self.base, self.nvars, unit)
        for f, e in factors.items():
            out = out * f ** e
        return out

    def __repr__(self):
        return f"FactoredDomain({self.base}, {self.nvars})"
