"""Exact arithmetic in the field of deformation-parameter rational functions.

Every coefficient in the library is an element of Q(k, p, q, r, s): a ratio of
sparse multivariate polynomials in the five deformation symbols, over
arbitrary-precision rationals.  Values are kept in a unique canonical form
(gcd-reduced, denominator primitive with positive leading coefficient in
graded-lex order with k < p < q < r < s), so that structural equality decides
mathematical equality and ``is_zero`` is exact.  All values are immutable.

The symbol set is fixed globally; each operator family uses a subset ({k} for
the A families, {k, q} for rational B, {k, p, q} for trigonometric BC, the
remaining symbols being eliminated through ``ParamRatio.substitute``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

try:  # gmpy2 is optional but considerably faster on big rationals
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

SYMBOLS = ("k", "p", "q", "r", "s")
NSYM = len(SYMBOLS)
_SYMBOL_INDEX = {name: i for i, name in enumerate(SYMBOLS)}
_ZERO_EXP = (0,) * NSYM

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


class CoeffError(ArithmeticError):
    """Base class for coefficient-arithmetic failures."""


class DivisionByZero(CoeffError):
    """Division by the zero rational function."""


class DenominatorVanishes(CoeffError):
    """A substitution turned a denominator into the zero polynomial."""


class PoleAtPoint(CoeffError):
    """Numeric evaluation hit a zero of the denominator."""


def _grlex_key(exps):
    # graded lexicographic, k < p < q < r < s: compare total degree first,
    # then exponents of the largest symbol (s) down to the smallest (k)
    return (sum(exps), tuple(reversed(exps)))


class ParamPoly:
    """Sparse polynomial in the deformation symbols over Q.

    ``terms`` maps exponent tuples (one entry per symbol in SYMBOLS order) to
    nonzero rational coefficients.  The zero polynomial has no terms.
    """

    __slots__ = ("terms", "_key")

    def __init__(self, terms: dict):
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._key = None

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "ParamPoly":
        return ParamPoly({})

    @staticmethod
    def const(value) -> "ParamPoly":
        value = Rat(value)
        return ParamPoly({_ZERO_EXP: value}) if value != 0 else ParamPoly({})

    @staticmethod
    def symbol(name: str, power: int = 1) -> "ParamPoly":
        e = [0] * NSYM
        e[_SYMBOL_INDEX[name]] = power
        return ParamPoly({tuple(e): RAT_ONE})

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def const_value(self):
        if not self.terms:
            return RAT_ZERO
        return self.terms[_ZERO_EXP]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=0)

    def variables(self):
        used = [False] * NSYM
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used[i] = True
        return [i for i in range(NSYM) if used[i]]

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items(), key=lambda t: _grlex_key(t[0])))
        return self._key

    def __eq__(self, other):
        return isinstance(other, ParamPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return ParamPoly(out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        if not self.terms or not other.terms:
            return ParamPoly({})
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            if not any(e2):
                return self.scale(c2)
            k0, p0, q0, r0, s0 = e2
            return ParamPoly({
                (e1[0] + k0, e1[1] + p0, e1[2] + q0, e1[3] + r0, e1[4] + s0): c1 * c2
                for e1, c1 in self.terms.items()
            })
        if len(self.terms) == 1:
            return other * self
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            a0, a1, a2, a3, a4 = e1
            for e2, c2 in other.terms.items():
                e = (a0 + e2[0], a1 + e2[1], a2 + e2[2], a3 + e2[3], a4 + e2[4])
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return ParamPoly(out)

    def scale(self, c) -> "ParamPoly":
        if c == 0:
            return ParamPoly({})
        return ParamPoly({e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- normalization and gcd --------------------------------------------

    def content_unit(self):
        """Rational c such that self / c is primitive with positive leading
        coefficient (integer coprime coefficients)."""
        if not self.terms:
            return RAT_ONE
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = _int_gcd(num_gcd, abs(int(c.numerator)))
            d = int(c.denominator)
            den_lcm = den_lcm // _int_gcd(den_lcm, d) * d
        c = Rat(num_gcd, den_lcm)
        _, lead = self.leading()
        if lead < 0:
            c = -c
        return c

    def primitive(self) -> "ParamPoly":
        c = self.content_unit()
        if c == RAT_ONE:
            return self
        return ParamPoly({e: v / c for e, v in self.terms.items()})

    def exact_div(self, other: "ParamPoly") -> "ParamPoly":
        """Exact quotient self / other; raises ValueError on a remainder."""
        q = self.div_or_none(other)
        if q is None:
            raise ValueError("inexact polynomial division")
        return q

    def div_or_none(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.is_zero():
            return ParamPoly({})
        if other.is_const():
            return self.scale(RAT_ONE / other.const_value())
        if len(other.terms) == 1:
            (oe, oc), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                d = (e[0] - oe[0], e[1] - oe[1], e[2] - oe[2], e[3] - oe[3], e[4] - oe[4])
                if d[0] < 0 or d[1] < 0 or d[2] < 0 or d[3] < 0 or d[4] < 0:
                    return None
                out[d] = c / oc
            return ParamPoly(out)
        rem = dict(self.terms)
        quo: dict = {}
        le, lc = other.leading()
        while rem:
            re = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(re, le))
            if any(d < 0 for d in diff):
                return None
            c = rem[re] / lc
            quo[diff] = quo.get(diff, RAT_ZERO) + c
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(diff, e2))
                v = rem.get(e, RAT_ZERO) - c * c2
                if v == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return ParamPoly(quo)

    def substitute(self, bindings: dict) -> "ParamRatio":
        """Replace symbols by ParamRatio values; returns a ParamRatio."""
        images = {}
        for name, val in bindings.items():
            images[_SYMBOL_INDEX[name]] = val if isinstance(val, ParamRatio) else ParamRatio.const(val)
        out = ParamRatio.zero()
        for e, c in self.terms.items():
            term = ParamRatio.const(c)
            mono = [0] * NSYM
            for i, pw in enumerate(e):
                if not pw:
                    continue
                if i in images:
                    term = term * images[i] ** pw
                else:
                    mono[i] = pw
            if any(mono):
                term = term * ParamRatio.from_poly(ParamPoly({tuple(mono): RAT_ONE}))
            out = out + term
        return out

    def eval(self, point: dict):
        """Exact rational value at a numeric point {symbol: rational}."""
        vals = [Rat(point.get(name, 0)) for name in SYMBOLS]
        total = RAT_ZERO
        for e, c in self.terms.items():
            term = c
            for i, pw in enumerate(e):
                if pw:
                    term = term * vals[i] ** pw
            total = total + term
        return total

    # -- display -----------------------------------------------------------

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c) if c.denominator == 1 else "(%s)" % c)
            for i, pw in enumerate(e):
                if pw == 1:
                    factors.append(SYMBOLS[i])
                elif pw > 1:
                    factors.append("%s^%d" % (SYMBOLS[i], pw))
            parts.append("*".join(factors))
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return "ParamPoly(%s)" % self.text()


_POLY_ZERO = ParamPoly.zero()
_POLY_ONE = ParamPoly.const(1)


def _to_univ(f: ParamPoly, var: int) -> dict:
    """View f as a univariate polynomial in SYMBOLS[var] with ParamPoly coefficients."""
    out: dict = {}
    for e, c in f.terms.items():
        d = e[var]
        rest = list(e)
        rest[var] = 0
        coeff = out.setdefault(d, {})
        coeff[tuple(rest)] = c
    return {d: ParamPoly(t) for d, t in out.items()}


def _from_univ(coeffs: dict, var: int) -> ParamPoly:
    out: dict = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            ee = list(e)
            ee[var] += d
            out[tuple(ee)] = c
    return ParamPoly(out)


def _univ_mul_poly(coeffs: dict, g: ParamPoly) -> dict:
    return {d: c * g for d, c in coeffs.items() if not (c * g).is_zero()}


def _univ_deg(coeffs: dict) -> int:
    return max(coeffs, default=-1)


def _univ_prem(a: dict, b: dict, var: int) -> dict:
    """Pseudo-remainder of a by b (both univariate views in var)."""
    da, db = _univ_deg(a), _univ_deg(b)
    lb = b[db]
    rem = dict(a)
    while True:
        dr = _univ_deg(rem)
        if dr < db or dr < 0:
            return rem
        lr = rem[dr]
        # rem := lb*rem - lr * x^(dr-db) * b
        new: dict = {}
        for d, c in rem.items():
            v = c * lb
            if not v.is_zero():
                new[d] = v
        for d, c in b.items():
            dd = d + dr - db
            v = new.get(d + dr - db, _POLY_ZERO) - lr * c
            if v.is_zero():
                new.pop(dd, None)
            else:
                new[dd] = v
        rem = new


def _cont_prim(coeffs: dict):
    """(content, primitive part) of a univariate view; content is a ParamPoly gcd."""
    cont = _POLY_ZERO
    for c in coeffs.values():
        cont = poly_gcd(cont, c)
        if cont == _POLY_ONE:
            break
    if cont.is_zero() or cont == _POLY_ONE:
        return _POLY_ONE, coeffs
    prim = {d: c.exact_div(cont) for d, c in coeffs.items()}
    return cont, prim


def _specialize_univ(f: ParamPoly, var: int, point) -> list:
    """Coefficient list of f in powers of SYMBOLS[var], other symbols evaluated
    at integer values (point[i] for symbol i)."""
    out: dict = {}
    for e, c in f.terms.items():
        val = c
        for i, pw in enumerate(e):
            if i == var or not pw:
                continue
            val = val * point[i] ** pw
        out[e[var]] = out.get(e[var], RAT_ZERO) + val
    deg = max(out, default=0)
    return [out.get(d, RAT_ZERO) for d in range(deg + 1)]


def _univ_fraction_gcd_is_const(A: list, B: list) -> bool:
    """Monic Euclid over Q on coefficient lists; True when the gcd is constant."""

    def trim(C):
        while C and C[-1] == 0:
            C.pop()
        return C

    A, B = trim(list(A)), trim(list(B))
    while B:
        if len(B) == 1:
            return True
        lb = B[-1]
        # A mod B
        A = list(A)
        while len(A) >= len(B):
            f = A[-1] / lb
            off = len(A) - len(B)
            for i, c in enumerate(B):
                A[i + off] = A[i + off] - f * c
            trim(A)
        A, B = B, A
    return len(A) <= 1


def _surely_coprime(a: ParamPoly, b: ParamPoly, variables) -> bool:
    """Sound specialization test: certifies gcd(a, b) is constant, or gives up.

    For each shared variable v, the other symbols are evaluated at fixed
    integers; if the specialization preserves deg_v of one operand (so the
    gcd's leading coefficient in v cannot vanish) and the univariate gcd is
    constant, the true gcd is free of v.  Free of every variable means
    constant.  Only certificates are trusted; any doubt falls through to the
    exact pseudo-remainder computation.
    """
    for v in variables:
        dva, dvb = a.degree_in(v), b.degree_in(v)
        if dva == 0 or dvb == 0:
            continue
        certified = False
        for offset in (271, 5477, 104651):
            point = [offset + 13 * i + 1 for i in range(NSYM)]
            A = _specialize_univ(a, v, point)
            B = _specialize_univ(b, v, point)
            if len(A) - 1 != dva and len(B) - 1 != dvb:
                continue  # both leading coefficients vanished; retry
            if _univ_fraction_gcd_is_const(A, B):
                certified = True
                break
            return False  # plausible common factor in v
        if not certified:
            return False
    return True


def _univ_scale(coeffs: dict, c: ParamPoly) -> dict:
    return {d: v * c for d, v in coeffs.items()}


def _gcd_univ_subresultant(A: dict, B: dict, var: int):
    """Subresultant PRS on content-free univariate views; returns the primitive
    gcd view, or None when the inputs are coprime in var."""
    g = _POLY_ONE
    h = _POLY_ONE
    while True:
        da, db = _univ_deg(A), _univ_deg(B)
        delta = da - db
        R = _univ_prem(A, B, var)
        if not R:
            _, prim = _cont_prim(B)
            return prim
        if _univ_deg(R) == 0:
            return None
        divisor = g * h ** delta
        A = B
        B = {d: c.exact_div(divisor) for d, c in R.items()}
        g = A[_univ_deg(A)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exact_div(h ** (delta - 1))


_GCD_CACHE: dict = {}
_GCD_CACHE_MAX = 200_000


def poly_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Canonical gcd in Q[k,p,q,r,s]: primitive, positive leading coefficient.

    Uses a primitive pseudo-remainder sequence, recursing on the coefficient
    ring; monomial inputs take a fast path (the dominant case in practice,
    where denominators are powers of k).  Results are memoized: the same
    small coefficient polynomials recur throughout a computation.
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_const() or b.is_const():
        return _POLY_ONE
    if a.terms == b.terms:
        return a.primitive()
    if a.is_monomial() or b.is_monomial():
        mins = None
        for f in (a, b):
            for e in f.terms:
                if mins is None:
                    mins = list(e)
                else:
                    for i in range(NSYM):
                        if e[i] < mins[i]:
                            mins[i] = e[i]
                if not (mins[0] or mins[1] or mins[2] or mins[3] or mins[4]):
                    return _POLY_ONE
        return ParamPoly({tuple(mins): RAT_ONE})
    cache_key = (a.key(), b.key())
    hit = _GCD_CACHE.get(cache_key)
    if hit is not None:
        return hit
    g = _poly_gcd_prs(a, b)
    if len(_GCD_CACHE) < _GCD_CACHE_MAX:
        _GCD_CACHE[cache_key] = g
    return g


def _poly_gcd_prs(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    variables = sorted(set(a.variables()) | set(b.variables()))
    if _surely_coprime(a, b, variables):
        return _POLY_ONE
    var = variables[-1]
    ua, ub = _to_univ(a, var), _to_univ(b, var)
    ca, ua = _cont_prim(ua)
    cb, ub = _cont_prim(ub)
    c = poly_gcd(ca, cb)
    if _univ_deg(ua) < _univ_deg(ub):
        ua, ub = ub, ua
    prim = _gcd_univ_subresultant(ua, ub, var)
    g = _from_univ(prim, var) if prim is not None else _POLY_ONE
    return (c * g).primitive()


class ParamRatio:
    """Element of Q(k, p, q, r, s) in canonical reduced form."""

    __slots__ = ("num", "den", "_key")

    def __init__(self, num: ParamPoly, den: ParamPoly, reduce: bool = True):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if reduce:
            if num.is_zero():
                den = _POLY_ONE
            else:
                g = poly_gcd(num, den)
                if not g.is_const():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                c = den.content_unit()
                if c != RAT_ONE:
                    den = ParamPoly({e: v / c for e, v in den.terms.items()})
                    num = num.scale(RAT_ONE / c)
        self.num = num
        self.den = den
        self._key = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ParamRatio":
        return _RATIO_ZERO

    @staticmethod
    def one() -> "ParamRatio":
        return _RATIO_ONE

    @staticmethod
    def const(value) -> "ParamRatio":
        return ParamRatio(ParamPoly.const(value), _POLY_ONE, reduce=False)

    @staticmethod
    def from_poly(p: ParamPoly) -> "ParamRatio":
        return ParamRatio(p, _POLY_ONE, reduce=False)

    @staticmethod
    def symbol(name: str, power: int = 1) -> "ParamRatio":
        """Symbol to an integer power; negative powers land in the denominator."""
        if power >= 0:
            return ParamRatio(ParamPoly.symbol(name, power), _POLY_ONE, reduce=False)
        return ParamRatio(_POLY_ONE, ParamPoly.symbol(name, -power), reduce=False)

    @staticmethod
    def fraction(num, den) -> "ParamRatio":
        return ParamRatio(ParamPoly.const(num), ParamPoly.const(den))

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant: %s" % self.text())
        return self.num.const_value() / self.den.const_value()

    def key(self):
        if self._key is None:
            self._key = (self.num.key(), self.den.key())
        return self._key

    def __eq__(self, other):
        if not isinstance(other, ParamRatio):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "ParamRatio") -> "ParamRatio":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.is_const() and other.den.is_const():
            # dens are the canonical constant 1
            return ParamRatio(self.num + other.num, _POLY_ONE, reduce=False)
        if self.den == other.den:
            return ParamRatio(self.num + other.num, self.den)
        g0 = poly_gcd(self.den, other.den)
        if g0.is_const():
            return ParamRatio(
                self.num * other.den + other.num * self.den, self.den * other.den, reduce=False
            )._normalized_unit()
        db = other.den.exact_div(g0)
        da = self.den.exact_div(g0)
        t = self.num * db + other.num * da
        g1 = poly_gcd(t, g0)
        if g1.is_const():
            return ParamRatio(t, da * other.den, reduce=False)._normalized_unit()
        return ParamRatio(t.exact_div(g1), da * other.den.exact_div(g1), reduce=False)._normalized_unit()

    def _normalized_unit(self) -> "ParamRatio":
        """Rescale so the denominator is primitive with positive leading term."""
        den = self.den
        c = den.content_unit()
        if c == RAT_ONE:
            return self
        num = self.num.scale(RAT_ONE / c)
        den = ParamPoly({e: v / c for e, v in den.terms.items()})
        out = ParamRatio(num, den, reduce=False)
        return out

    def __neg__(self) -> "ParamRatio":
        return ParamRatio(-self.num, self.den, reduce=False)

    def __sub__(self, other: "ParamRatio") -> "ParamRatio":
        return self + (-other)

    def __mul__(self, other: "ParamRatio") -> "ParamRatio":
        if self.num.is_zero() or other.num.is_zero():
            return _RATIO_ZERO
        if self.den.is_const() and other.den.is_const():
            return ParamRatio(self.num * other.num, _POLY_ONE, reduce=False)
        # cross-cancel; each operand is already reduced
        n1, d2 = self.num, other.den
        g1 = poly_gcd(n1, d2)
        if not g1.is_const():
            n1 = n1.exact_div(g1)
            d2 = d2.exact_div(g1)
        n2, d1 = other.num, self.den
        g2 = poly_gcd(n2, d1)
        if not g2.is_const():
            n2 = n2.exact_div(g2)
            d1 = d1.exact_div(g2)
        return ParamRatio(n1 * n2, d1 * d2, reduce=False)._normalized_unit()

    def __truediv__(self, other: "ParamRatio") -> "ParamRatio":
        if other.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        inv = ParamRatio(other.den, other.num, reduce=False)._normalized_unit()
        return self * inv

    def inverse(self) -> "ParamRatio":
        return _RATIO_ONE / self

    def __pow__(self, n: int) -> "ParamRatio":
        if n == 0:
            return _RATIO_ONE
        if n < 0:
            return (_RATIO_ONE / self) ** (-n)
        return ParamRatio(self.num ** n, self.den ** n)

    def scale(self, c) -> "ParamRatio":
        return ParamRatio(self.num.scale(Rat(c)), self.den)

    # -- substitution and evaluation ------------------------------------------

    def substitute(self, bindings: dict) -> "ParamRatio":
        """Substitute symbols by ParamRatio values (exact)."""
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        if den.is_zero():
            raise DenominatorVanishes("denominator vanishes under substitution")
        return num / den

    def eval_at(self, point: dict):
        """Exact rational value at {symbol: rational}; raises PoleAtPoint."""
        d = self.den.eval(point)
        if d == 0:
            raise PoleAtPoint("denominator vanishes at %r" % (point,))
        return self.num.eval(point) / d

    # -- display ------------------------------------------------------------------

    def text(self) -> str:
        num = self.num.text()
        if len(self.num.terms) > 1:
            num = "(%s)" % num
        den = self.den.text()
        if len(self.den.terms) > 1:
            den = "(%s)" % den
        return "%s/%s" % (num, den)

    def __repr__(self):
        return "ParamRatio(%s)" % self.text()


_RATIO_ZERO = ParamRatio(_POLY_ZERO, _POLY_ONE, reduce=False)
_RATIO_ONE = ParamRatio(_POLY_ONE, _POLY_ONE, reduce=False)

ZERO = _RATIO_ZERO
ONE = _RATIO_ONE
K = ParamRatio.symbol("k")


def const(value) -> ParamRatio:
    return ParamRatio.const(value)


def symbol(name: str, power: int = 1) -> ParamRatio:
    return ParamRatio.symbol(name, power)


def k_power(n: int) -> ParamRatio:
    """k to an integer power (negative allowed)."""
    return ParamRatio.symbol("k", n)


#: Substitutions eliminating the constrained parameters: the rational B family
#: ties s to q via 2q+1 = k(2s+1), the trigonometric BC family additionally
#: ties r to p via p = kr.
B_CONSTRAINT = {
    "s": ParamRatio(
        ParamPoly.symbol("q").scale(2) + ParamPoly.const(1) - ParamPoly.symbol("k"),
        ParamPoly.symbol("k").scale(2),
    )
}
BC_CONSTRAINT = {
    "s": B_CONSTRAINT["s"],
    "r": ParamRatio(ParamPoly.symbol("p"), ParamPoly.symbol("k")),
}
