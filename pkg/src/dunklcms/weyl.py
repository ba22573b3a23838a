"""Normal-ordered differential operators and the quantum Moser matrices.

``WeylOp`` is a differential operator in finitely many variables with
rational-function coefficients, kept in normal order (coefficients left of all
derivatives); composition re-normalizes through the Leibniz rule.
``RatFun`` keeps its denominator in factored form: every denominator arising
here is a product of the irreducible structural factors x_i, x_i - x_j,
x_i + x_j, x_i x_j - 1, x_i - 1, x_i + 1, so cancellation reduces to
exact-division tests and zero-testing stays decisive (a rational function
vanishes iff its numerator does).

On top of this the module builds, for each family, the quantum Moser matrix L
(block form [[A, B], [-B, -A]] for the B families), the companion matrix M of
the A families, the deformed Hamiltonians in their gauged and ungauged forms,
the quantum Lax check [L, H] = [L, M], and the integrals e* L^r e.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .coeffs import B_CONSTRAINT, BC_CONSTRAINT, ONE, ParamRatio, k_power
from .finite_cms import MultiPoly, ParityData
from .powersums import Family, UnsupportedFamily

_K = ParamRatio.symbol("k")
_P = ParamRatio.symbol("p")
_Q = ParamRatio.symbol("q")
_HALF = ParamRatio.fraction(1, 2)

#: Multiplicity of the one-particle reflection term, per species, after the
#: family constraints eliminate s (and r): rational B uses (q, s) and trig BC
#: uses pairs (p, q) and (r, s).
_S_VALUE = B_CONSTRAINT["s"]
_R_VALUE = BC_CONSTRAINT["r"]


class RatFun:
    """Rational function with factored denominator over the parameter field."""

    __slots__ = ("nvars", "num", "den")

    def __init__(self, num: MultiPoly, den: dict = None, reduce: bool = True):
        self.nvars = num.nvars
        den = dict(den) if den else {}
        # factors are kept monic; units fold into the numerator
        clean: dict = {}
        for f, e in den.items():
            if e == 0:
                continue
            if e < 0:
                raise ValueError("negative denominator exponent")
            if len(f.terms) == 0:
                raise ZeroDivisionError("zero denominator factor")
            _, lc = f.leading()
            if not (lc == ONE):
                f = f.scale(ONE / lc)
                num = num.scale((ONE / lc) ** e)
            if len(f.terms) == 1 and not any(next(iter(f.terms))):
                continue  # constant factor folded away
            clean[f] = clean.get(f, 0) + e
        if num.is_zero():
            clean = {}
        elif reduce and clean:
            for f in list(clean):
                e = clean[f]
                while e > 0:
                    q = num.div_or_none(f)
                    if q is None:
                        break
                    num = q
                    e -= 1
                if e:
                    clean[f] = e
                else:
                    del clean[f]
        self.num = num
        self.den = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "RatFun":
        return RatFun(MultiPoly.zero(nvars))

    @staticmethod
    def const(nvars: int, c) -> "RatFun":
        return RatFun(MultiPoly.const(nvars, c))

    @staticmethod
    def from_poly(p: MultiPoly) -> "RatFun":
        return RatFun(p)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> MultiPoly:
        out = MultiPoly.const(self.nvars, 1)
        for f, e in self.den.items():
            out = out * f ** e
        return out

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("RatFun is not hashable")

    # -- arithmetic ---------------------------------------------------------------

    @staticmethod
    def sum(nvars: int, items, reduce: bool = True) -> "RatFun":
        """Sum many rational functions over a single common denominator.

        One reduction at the end instead of one per pairwise addition; the
        dominant cost saver in operator application and composition.
        """
        items = [f for f in items if not f.num.is_zero()]
        if not items:
            return RatFun.zero(nvars)
        if len(items) == 1:
            return items[0]
        den: dict = {}
        for f in items:
            for fac, e in f.den.items():
                if den.get(fac, 0) < e:
                    den[fac] = e
        total = None
        for f in items:
            num = f.num
            for fac, e in den.items():
                d = e - f.den.get(fac, 0)
                if d:
                    num = num * fac ** d
            total = num if total is None else total + num
        return RatFun(total, den, reduce=reduce)

    def __add__(self, other: "RatFun") -> "RatFun":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun.sum(self.nvars, [self, other])

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def __mul__(self, other: "RatFun") -> "RatFun":
        if self.num.is_zero() or other.num.is_zero():
            return RatFun.zero(self.nvars)
        den = dict(self.den)
        for f, e in other.den.items():
            den[f] = den.get(f, 0) + e
        return RatFun(self.num * other.num, den)

    def mul_poly(self, p: MultiPoly) -> "RatFun":
        return RatFun(self.num * p, self.den)

    def scale(self, c: ParamRatio) -> "RatFun":
        if c.is_zero():
            return RatFun.zero(self.nvars)
        return RatFun(self.num.scale(c), self.den, reduce=False)

    def diff(self, i: int) -> "RatFun":
        parts = [RatFun(self.num.diff(i), self.den, reduce=False)]
        for f, e in self.den.items():
            fd = f.diff(i)
            if fd.is_zero():
                continue
            den = dict(self.den)
            den[f] = e + 1
            parts.append(RatFun((self.num * fd).scale(ParamRatio.const(-e)), den, reduce=False))
        return RatFun.sum(self.nvars, parts)

    def substitute(self, bindings: dict) -> "RatFun":
        den = {}
        for f, e in self.den.items():
            den[f.substitute(bindings)] = e
        return RatFun(self.num.substitute(bindings), den)

    # -- display --------------------------------------------------------------------

    def text(self) -> str:
        if not self.den:
            return self.num.text()
        return "(%s) / (%s)" % (self.num.text(), self.den_poly().text())

    def __repr__(self):
        return "RatFun(%s)" % self.text()


def _iter_sub_indices(exps):
    """All componentwise-dominated multi-indices of exps."""
    if not exps:
        yield ()
        return
    head = exps[0]
    for rest in _iter_sub_indices(exps[1:]):
        for h in range(head + 1):
            yield (h,) + rest


class WeylOp:
    """Normal-ordered differential operator with rational-function coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict):
        self.nvars = nvars
        self.terms = {e: f for e, f in terms.items() if not f.is_zero()}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "WeylOp":
        return WeylOp(nvars, {})

    @staticmethod
    def const(nvars: int, c) -> "WeylOp":
        f = c if isinstance(c, RatFun) else RatFun.const(nvars, c)
        return WeylOp(nvars, {(0,) * nvars: f})

    @staticmethod
    def mul_by(f: RatFun) -> "WeylOp":
        return WeylOp(f.nvars, {(0,) * f.nvars: f})

    @staticmethod
    def partial(nvars: int, i: int, coeff: RatFun = None) -> "WeylOp":
        e = [0] * nvars
        e[i] = 1
        f = coeff if coeff is not None else RatFun.const(nvars, 1)
        return WeylOp(nvars, {tuple(e): f})

    @staticmethod
    def euler(nvars: int, i: int, coeff: ParamRatio = ONE) -> "WeylOp":
        """x_i d/dx_i scaled by a parameter coefficient."""
        e = [0] * nvars
        e[i] = 1
        return WeylOp(nvars, {tuple(e): RatFun(MultiPoly.var(nvars, i).scale(coeff))})

    # -- queries ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("WeylOp is not hashable")

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other: "WeylOp") -> "WeylOp":
        out = dict(self.terms)
        for e, f in other.terms.items():
            v = out.get(e)
            out[e] = f if v is None else v + f
        return WeylOp(self.nvars, out)

    def __neg__(self) -> "WeylOp":
        return WeylOp(self.nvars, {e: -f for e, f in self.terms.items()})

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        return self + (-other)

    def scale(self, c) -> "WeylOp":
        if isinstance(c, RatFun):
            return WeylOp(self.nvars, {e: f * c for e, f in self.terms.items()})
        return WeylOp(self.nvars, {e: f.scale(c) for e, f in self.terms.items()})

    def compose(self, other: "WeylOp") -> "WeylOp":
        """Normal-ordered product self . other."""
        out: dict = {}
        for be, g in other.terms.items():
            derivs = {(0,) * self.nvars: g}

            def deriv_of(idx, _derivs=derivs):
                v = _derivs.get(idx)
                if v is None:
                    for i, e in enumerate(idx):
                        if e:
                            lower = list(idx)
                            lower[i] -= 1
                            v = deriv_of(tuple(lower)).diff(i)
                            break
                    _derivs[idx] = v
                return v

            for ae, f in self.terms.items():
                for ce in _iter_sub_indices(ae):
                    dg = deriv_of(tuple(a - c for a, c in zip(ae, ce)))
                    if dg.is_zero():
                        continue
                    coeff = 1
                    for a, c in zip(ae, ce):
                        coeff *= comb(a, c)
                    key = tuple(c + b for c, b in zip(ce, be))
                    out.setdefault(key, []).append((f * dg).scale(ParamRatio.const(coeff)))
        return WeylOp(
            self.nvars,
            {key: RatFun.sum(self.nvars, parts) for key, parts in out.items()},
        )

    def commutator(self, other: "WeylOp") -> "WeylOp":
        return self.compose(other) - other.compose(self)

    def apply(self, poly: MultiPoly) -> RatFun:
        parts = []
        for dexps, f in self.terms.items():
            g = poly
            for i, e in enumerate(dexps):
                for _ in range(e):
                    g = g.diff(i)
                    if g.is_zero():
                        break
            if g.is_zero():
                continue
            parts.append(f.mul_poly(g))
        return RatFun.sum(self.nvars, parts)

    def substitute(self, bindings: dict) -> "WeylOp":
        return WeylOp(self.nvars, {e: f.substitute(bindings) for e, f in self.terms.items()})

    def constant_part(self) -> RatFun:
        return self.terms.get((0,) * self.nvars, RatFun.zero(self.nvars))

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            factors = ["(%s)" % self.terms[e].text()]
            for i, pw in enumerate(e):
                if pw == 1:
                    factors.append("d%d" % (i + 1))
                elif pw:
                    factors.append("d%d^%d" % (i + 1, pw))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return "WeylOp(%s)" % self.text()


class OpMatrix:
    """Dense matrix of WeylOps."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0

    @staticmethod
    def zero(nvars: int, rows: int, cols: int) -> "OpMatrix":
        return OpMatrix([[WeylOp.zero(nvars) for _ in range(cols)] for _ in range(rows)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        return OpMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return OpMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "OpMatrix":
        return OpMatrix([[-a for a in row] for row in self.entries])

    def matmul(self, other: "OpMatrix") -> "OpMatrix":
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for l in range(self.cols):
                    term = self.entries[i][l].compose(other.entries[l][j])
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return OpMatrix(out)

    def power(self, r: int) -> "OpMatrix":
        result = self
        for _ in range(r - 1):
            result = result.matmul(self)
        return result

    def weighted_total(self, weights) -> WeylOp:
        """Sum of weights[i] * entry[i][j] over all entries (right vector of ones)."""
        acc = None
        for i, row in enumerate(self.entries):
            for op in row:
                term = op.scale(weights[i])
                acc = term if acc is None else acc + term
        return acc

    def is_zero(self) -> bool:
        return all(op.is_zero() for row in self.entries for op in row)

    def texts(self):
        return [[op.text() for op in row] for row in self.entries]

    def to_json(self) -> str:
        """Row-major JSON array of entry strings."""
        import json

        return json.dumps([op.text() for row in self.entries for op in row])


# -- structural denominators -------------------------------------------------


def _fac_diff(nvars, i, j) -> MultiPoly:
    e1 = [0] * nvars
    e1[i] = 1
    e2 = [0] * nvars
    e2[j] = 1
    return MultiPoly(nvars, {tuple(e1): ONE, tuple(e2): ParamRatio.const(-1)})


def _fac_sum(nvars, i, j) -> MultiPoly:
    e1 = [0] * nvars
    e1[i] = 1
    e2 = [0] * nvars
    e2[j] = 1
    return MultiPoly(nvars, {tuple(e1): ONE, tuple(e2): ONE})


def _fac_var(nvars, i, power=1) -> MultiPoly:
    return MultiPoly.var(nvars, i, power)


def _fac_prod_minus_1(nvars, i, j) -> MultiPoly:
    e = [0] * nvars
    e[i] += 1
    e[j] += 1
    return MultiPoly(nvars, {tuple(e): ONE, (0,) * nvars: ParamRatio.const(-1)})


def _fac_shift(nvars, i, c, power=1) -> MultiPoly:
    e = [0] * nvars
    e[i] = power
    return MultiPoly(nvars, {tuple(e): ONE, (0,) * nvars: ParamRatio.const(c)})


def _den_shift2(nvars, i, e: int) -> list:
    """(x_i^2 - 1)^e as irreducible denominator factors."""
    return [(_fac_shift(nvars, i, -1), e), (_fac_shift(nvars, i, 1), e)]


def _rf(num: MultiPoly, *den_pairs) -> RatFun:
    return RatFun(num, {f: e for f, e in den_pairs})


def _species_multiplicity(family: Family, parity: ParityData, i: int):
    """Reflection multiplicities after the constraints: rational B returns
    m(i) in {q, s}; trig BC returns (mu(i), nu(i)) in {(p, q), (r, s)}."""
    if family is Family.RAT_B:
        return _Q if parity.p(i) == 0 else _S_VALUE
    if family is Family.TRIG_BC:
        return (_P, _Q) if parity.p(i) == 0 else (_R_VALUE, _S_VALUE)
    raise UnsupportedFamily(family.value)


# -- Moser matrices ------------------------------------------------------------


def moser_L(family: Family, parity: ParityData) -> OpMatrix:
    """The quantum Moser matrix; block form [[A, B], [-B, -A]] for B/BC."""
    nm = parity.size
    if family in (Family.RAT_A, Family.TRIG_A):
        entries = []
        for i in range(nm):
            row = []
            for j in range(nm):
                if i == j:
                    if family is Family.RAT_A:
                        row.append(WeylOp.partial(nm, i, RatFun.const(nm, parity.k_weight(i))))
                    else:
                        row.append(WeylOp.euler(nm, i, parity.k_weight(i)))
                else:
                    w = parity.cross_weight(i, j)
                    if family is Family.RAT_A:
                        f = _rf(MultiPoly.const(nm, w), (_fac_diff(nm, i, j), 1))
                    else:
                        f = _rf(_fac_sum(nm, i, j).scale(w * _HALF), (_fac_diff(nm, i, j), 1))
                    row.append(WeylOp.mul_by(f))
            entries.append(row)
        return OpMatrix(entries)
    if family is Family.RAT_B:
        A, B = [], []
        for i in range(nm):
            arow, brow = [], []
            for j in range(nm):
                if i == j:
                    arow.append(WeylOp.partial(nm, i, RatFun.const(nm, parity.k_weight(i))))
                    mi = _species_multiplicity(family, parity, i)
                    brow.append(WeylOp.mul_by(
                        _rf(MultiPoly.const(nm, parity.k_weight(i) * mi), (_fac_var(nm, i), 1))
                    ))
                else:
                    w = parity.cross_weight(i, j)
                    arow.append(WeylOp.mul_by(_rf(MultiPoly.const(nm, w), (_fac_diff(nm, i, j), 1))))
                    brow.append(WeylOp.mul_by(_rf(MultiPoly.const(nm, w), (_fac_sum(nm, i, j), 1))))
            A.append(arow)
            B.append(brow)
    elif family is Family.TRIG_BC:
        A, B = [], []
        for i in range(nm):
            arow, brow = [], []
            for j in range(nm):
                if i == j:
                    arow.append(WeylOp.euler(nm, i, parity.k_weight(i)))
                    mu, nu = _species_multiplicity(family, parity, i)
                    kw = parity.k_weight(i)
                    t1 = _rf(_fac_shift(nm, i, 1).scale(kw * mu * _HALF), (_fac_shift(nm, i, -1), 1))
                    t2 = _rf(_fac_shift(nm, i, 1, 2).scale(kw * nu), *_den_shift2(nm, i, 1))
                    brow.append(WeylOp.mul_by(t1 + t2))
                else:
                    w = parity.cross_weight(i, j)
                    arow.append(WeylOp.mul_by(
                        _rf(_fac_sum(nm, i, j).scale(w * _HALF), (_fac_diff(nm, i, j), 1))
                    ))
                    prod1 = _fac_prod_minus_1(nm, i, j) + MultiPoly.const(nm, 2)  # x_i x_j + 1
                    brow.append(WeylOp.mul_by(
                        _rf(prod1.scale(w * _HALF), (_fac_prod_minus_1(nm, i, j), 1))
                    ))
            A.append(arow)
            B.append(brow)
    else:  # pragma: no cover
        raise UnsupportedFamily(family.value)
    top = [arow + brow for arow, brow in zip(A, B)]
    bottom = [[-op for op in brow] + [-op for op in arow] for arow, brow in zip(A, B)]
    return OpMatrix(top + bottom)


def moser_M(family: Family, parity: ParityData) -> OpMatrix:
    """The companion matrix M of the Lax identity; it exists for the A families only."""
    if family not in (Family.RAT_A, Family.TRIG_A):
        raise UnsupportedFamily("no M matrix for family %s" % family.value)
    nm = parity.size
    entries = []
    for i in range(nm):
        row = []
        diag = RatFun.zero(nm)
        for j in range(nm):
            if i == j:
                row.append(None)
                continue
            w = parity.cross_weight(i, j).scale(2)
            if family is Family.RAT_A:
                f = _rf(MultiPoly.const(nm, w), (_fac_diff(nm, i, j), 2))
            else:
                num = _fac_var(nm, i) * _fac_var(nm, j)
                f = _rf(num.scale(w), (_fac_diff(nm, i, j), 2))
            row.append(WeylOp.mul_by(f))
            diag = diag - f
        row[i] = WeylOp.mul_by(diag)
        entries.append(row)
    return OpMatrix(entries)


def moser_L_gauged_trig(parity: ParityData) -> OpMatrix:
    """The gauged trigonometric A matrix: off-diagonal part of L plus the
    divided-difference diagonal."""
    nm = parity.size
    L = moser_L(Family.TRIG_A, parity)
    entries = [row[:] for row in L.entries]
    for i in range(nm):
        diag = entries[i][i]
        for j in range(nm):
            if j == i:
                continue
            w = parity.cross_weight(i, j)
            f = _rf(_fac_sum(nm, i, j).scale(w * _HALF), (_fac_diff(nm, i, j), 1))
            diag = diag - WeylOp.mul_by(f)
        entries[i][i] = diag
    return OpMatrix(entries)


# -- Hamiltonians ------------------------------------------------------------------


def hamiltonian(family: Family, parity: ParityData, gauged: bool = False) -> WeylOp:
    """The deformed Hamiltonian of the family.

    Sign conventions follow the standard forms of each family (the ungauged
    rational B operator has a negative kinetic part).  Gauged forms for the B
    families are defined at m = 0 only.
    """
    nm = parity.size
    H = WeylOp.zero(nm)
    if family is Family.RAT_A:
        if gauged:
            for i in range(nm):
                di = WeylOp.partial(nm, i)
                H = H + di.compose(di).scale(parity.k_weight(i))
            for i in range(nm):
                for j in range(i + 1, nm):
                    pi, pj = parity.p(i), parity.p(j)
                    front = {(0, 0): _K.scale(2), (1, 1): ParamRatio.const(2), (0, 1): ParamRatio.const(2)}[(pi, pj)]
                    wj = _K if (pi, pj) == (0, 1) else ONE
                    cross = WeylOp.partial(nm, i) - WeylOp.partial(nm, j).scale(wj)
                    f = _rf(MultiPoly.const(nm, front), (_fac_diff(nm, i, j), 1))
                    H = H - WeylOp.mul_by(f).compose(cross)
            return H
        for i in range(nm):
            di = WeylOp.partial(nm, i)
            H = H + di.compose(di).scale(parity.k_weight(i))
        for i in range(nm):
            for j in range(i + 1, nm):
                pi, pj = parity.p(i), parity.p(j)
                c = {
                    (0, 0): _K * (_K + ONE),
                    (1, 1): (k_power(-1) + ONE),
                    (0, 1): _K + ONE,
                }[(pi, pj)].scale(2)
                H = H - WeylOp.mul_by(_rf(MultiPoly.const(nm, c), (_fac_diff(nm, i, j), 2)))
        return H
    if family is Family.TRIG_A:
        for i in range(nm):
            ei = WeylOp.euler(nm, i)
            H = H + ei.compose(ei).scale(parity.k_weight(i))
        for i in range(nm):
            for j in range(i + 1, nm):
                pi, pj = parity.p(i), parity.p(j)
                if gauged:
                    front = {(0, 0): _K, (1, 1): ONE, (0, 1): ONE}[(pi, pj)]
                    wj = _K if (pi, pj) == (0, 1) else ONE
                    cross = WeylOp.euler(nm, i) - WeylOp.euler(nm, j, wj)
                    f = _rf(_fac_sum(nm, i, j).scale(front), (_fac_diff(nm, i, j), 1))
                    H = H - WeylOp.mul_by(f).compose(cross)
                else:
                    c = {
                        (0, 0): _K * (_K + ONE),
                        (1, 1): (k_power(-1) + ONE),
                        (0, 1): _K + ONE,
                    }[(pi, pj)].scale(2)
                    num = (_fac_var(nm, i) * _fac_var(nm, j)).scale(c)
                    H = H - WeylOp.mul_by(_rf(num, (_fac_diff(nm, i, j), 2)))
        return H
    if family is Family.RAT_B:
        if gauged:
            if parity.m:
                raise UnsupportedFamily("gauged rational B form is stated at m = 0 only")
            for i in range(nm):
                di = WeylOp.partial(nm, i)
                H = H + di.compose(di)
            for i in range(nm):
                for j in range(i + 1, nm):
                    minus = WeylOp.partial(nm, i) - WeylOp.partial(nm, j)
                    plus = WeylOp.partial(nm, i) + WeylOp.partial(nm, j)
                    H = H - WeylOp.mul_by(_rf(MultiPoly.const(nm, _K.scale(2)), (_fac_diff(nm, i, j), 1))).compose(minus)
                    H = H - WeylOp.mul_by(_rf(MultiPoly.const(nm, _K.scale(2)), (_fac_sum(nm, i, j), 1))).compose(plus)
            for i in range(nm):
                H = H - WeylOp.mul_by(_rf(MultiPoly.const(nm, _Q.scale(2)), (_fac_var(nm, i), 1))).compose(WeylOp.partial(nm, i))
            return H
        # ungauged deformed rational B: negative kinetic part
        for i in range(nm):
            di = WeylOp.partial(nm, i)
            H = H - di.compose(di).scale(parity.k_weight(i))
        for i in range(nm):
            for j in range(i + 1, nm):
                pi, pj = parity.p(i), parity.p(j)
                c = {
                    (0, 0): _K * (_K + ONE),
                    (1, 1): (k_power(-1) + ONE),
                    (0, 1): _K + ONE,
                }[(pi, pj)].scale(2)
                H = H + WeylOp.mul_by(_rf(MultiPoly.const(nm, c), (_fac_diff(nm, i, j), 2)))
                H = H + WeylOp.mul_by(_rf(MultiPoly.const(nm, c), (_fac_sum(nm, i, j), 2)))
        for i in range(nm):
            if parity.p(i) == 0:
                c = _Q * (_Q + ONE)
            else:
                c = _K * _S_VALUE * (_S_VALUE + ONE)
            H = H + WeylOp.mul_by(_rf(MultiPoly.const(nm, c), (_fac_var(nm, i), 2)))
        return H
    # TRIG_BC
    if gauged:
        if parity.m:
            raise UnsupportedFamily("gauged trig BC form is stated at m = 0 only")
        for i in range(nm):
            ei = WeylOp.euler(nm, i)
            H = H + ei.compose(ei)
        for i in range(nm):
            for j in range(i + 1, nm):
                minus = WeylOp.euler(nm, i) - WeylOp.euler(nm, j)
                plus = WeylOp.euler(nm, i) + WeylOp.euler(nm, j)
                H = H - WeylOp.mul_by(_rf(_fac_sum(nm, i, j).scale(_K), (_fac_diff(nm, i, j), 1))).compose(minus)
                prod1 = _fac_prod_minus_1(nm, i, j) + MultiPoly.const(nm, 2)
                H = H - WeylOp.mul_by(_rf(prod1.scale(_K), (_fac_prod_minus_1(nm, i, j), 1))).compose(plus)
        for i in range(nm):
            t1 = _rf(_fac_shift(nm, i, 1).scale(_P), (_fac_shift(nm, i, -1), 1))
            t2 = _rf(_fac_shift(nm, i, 1, 2).scale(_Q.scale(2)), *_den_shift2(nm, i, 1))
            H = H - WeylOp.mul_by(t1 + t2).compose(WeylOp.euler(nm, i))
        return H
    # Ungauged deformed trig BC.  The coefficients are pinned by the Moser
    # matrix: e* L^2 e = 2 H + scalar constant must hold (verified symbolically
    # in the tests).  The commonly quoted 4x-scaled variant, which also lacks
    # the cross term over (x_i y_j - 1)^2, fails that identity.
    for i in range(nm):
        ei = WeylOp.euler(nm, i)
        H = H + ei.compose(ei).scale(parity.k_weight(i))
    for i in range(nm):
        for j in range(i + 1, nm):
            pi, pj = parity.p(i), parity.p(j)
            c = {
                (0, 0): _K * (_K + ONE),
                (1, 1): (k_power(-1) + ONE),
                (0, 1): _K + ONE,
            }[(pi, pj)].scale(2)
            num = (_fac_var(nm, i) * _fac_var(nm, j)).scale(c)
            H = H - WeylOp.mul_by(_rf(num, (_fac_diff(nm, i, j), 2)))
            H = H - WeylOp.mul_by(_rf(num, (_fac_prod_minus_1(nm, i, j), 2)))
    for i in range(nm):
        mu, nu = _species_multiplicity(family, parity, i)
        kw = parity.k_weight(i)
        c1 = kw * mu * (mu + nu.scale(2) + ONE)
        c2 = (kw * nu * (nu + ONE)).scale(4)
        H = H - WeylOp.mul_by(_rf(_fac_var(nm, i).scale(c1), (_fac_shift(nm, i, -1), 2)))
        H = H - WeylOp.mul_by(_rf(_fac_var(nm, i, 2).scale(c2), *_den_shift2(nm, i, 2)))
    return H


# -- verification reports ---------------------------------------------------------


@dataclass
class EntryResult:
    i: int
    j: int
    ok: bool
    residual: str


@dataclass
class LaxReport:
    family: Family
    parity: ParityData
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def counterexamples(self):
        return [r for r in self.results if not r.ok]


def lax_check(family: Family, parity: ParityData) -> LaxReport:
    """Verify [L, H] = [L, M] entrywise (A families)."""
    if family not in (Family.RAT_A, Family.TRIG_A):
        raise UnsupportedFamily("no Lax pair is stated for family %s" % family.value)
    L = moser_L(family, parity)
    M = moser_M(family, parity)
    H = hamiltonian(family, parity, gauged=False)
    LM = L.matmul(M) - M.matmul(L)
    results = []
    for i in range(L.rows):
        for j in range(L.cols):
            lhs = L.entries[i][j].commutator(H)
            res = lhs - LM.entries[i][j]
            results.append(EntryResult(i, j, res.is_zero(), res.text()))
    return LaxReport(family, parity, results)


def estar_weights(family: Family, parity: ParityData):
    """The left covector: k^{-p(i)}, duplicated across blocks for B/BC."""
    w = [parity.k_inv_weight(i) for i in range(parity.size)]
    if family.even_integrals:
        w = w + w
    return w


def moser_integral(family: Family, parity: ParityData, r: int) -> WeylOp:
    """The scalar integral e* L^r e (even power 2r for the B families)."""
    L = moser_L(family, parity)
    power = 2 * r if family.even_integrals else r
    return L.power(power).weighted_total(estar_weights(family, parity))


def integral_hamiltonian_factor(family: Family) -> ParamRatio:
    """Structural factor lam with e* L^2 e = lam * H + constant.

    The A families give lam = 1.  The block form of the B families doubles the
    total (both half-blocks contribute) and the ungauged rational B operator
    carries a global minus sign, hence -2 and +2.
    """
    return {
        Family.RAT_A: ONE,
        Family.TRIG_A: ONE,
        Family.RAT_B: ParamRatio.const(-2),
        Family.TRIG_BC: ParamRatio.const(2),
    }[family]


def integral_vs_hamiltonian(family: Family, parity: ParityData):
    """Compare e* L^2 e with its Hamiltonian: returns (factor, constant, residual).

    The residual is the non-constant part left after subtracting factor * H
    and the constant term; the identity holds exactly when it vanishes.
    """
    I2 = moser_integral(family, parity, 2 if not family.even_integrals else 1)
    H = hamiltonian(family, parity, gauged=False)
    factor = integral_hamiltonian_factor(family)
    diff = I2 - H.scale(factor)
    const = diff.constant_part()
    residual = diff - WeylOp.mul_by(const)
    return factor, const, residual


@dataclass
class CommuteReport:
    mode: str
    ok: bool
    counterexamples: list = field(default_factory=list)


def _commutator_on_x_monomial(A: WeylOp, B: WeylOp, exps) -> tuple:
    mono = MultiPoly(A.nvars, {exps: ONE})
    v1 = _apply_to_ratfun(A, B.apply(mono))
    v2 = _apply_to_ratfun(B, A.apply(mono))
    return exps, v1 - v2


def commute_check(A: WeylOp, B: WeylOp, mode: str = "symbolic", deg: int = 4) -> CommuteReport:
    """Check [A, B] = 0 symbolically or on all monomials of total degree <= deg.

    Basis mode applies both orderings to each monomial independently of the
    normal-ordered commutator; monomials distribute across workers.
    """
    if mode == "symbolic":
        res = A.commutator(B)
        return CommuteReport("symbolic", res.is_zero(), [] if res.is_zero() else [("operator", res.text())])
    from functools import partial

    from ._parallel import ordered_map

    nvars = A.nvars

    def monomials(total):
        def rec(prefix, remaining, pos):
            if pos == nvars - 1:
                yield prefix + (remaining,)
                return
            for d in range(remaining + 1):
                yield from rec(prefix + (d,), remaining - d, pos + 1)

        for t in range(total + 1):
            yield from rec((), t, 0)

    outcomes = ordered_map(partial(_commutator_on_x_monomial, A, B), monomials(deg))
    bad = [(str(exps), res.text()) for exps, res in outcomes if not res.is_zero()]
    return CommuteReport("basis(deg=%d)" % deg, not bad, bad)


def _apply_to_ratfun(op: WeylOp, f: RatFun) -> RatFun:
    parts = []
    for dexps, c in op.terms.items():
        g = f
        for i, e in enumerate(dexps):
            for _ in range(e):
                g = g.diff(i)
        parts.append(c * g)
    return RatFun.sum(op.nvars, parts)


def apply_weyl_to_ratfun(op: WeylOp, f: RatFun) -> RatFun:
    return _apply_to_ratfun(op, f)


# -- gauge transformations ----------------------------------------------------------


def gauge_conjugate(op: WeylOp, logderivs) -> WeylOp:
    """Conjugation by the ground-state factor via the shift d_i -> d_i + w_i.

    ``logderivs[i]`` is the i-th logarithmic derivative of the factor; the
    result is (1/Psi) op Psi as a normal-ordered operator, exactly.
    """
    nvars = op.nvars
    shifted = [
        WeylOp.partial(nvars, i) + WeylOp.mul_by(w) for i, w in enumerate(logderivs)
    ]
    out = WeylOp.zero(nvars)
    for dexps, f in op.terms.items():
        term = WeylOp.const(nvars, RatFun.const(nvars, 1))
        for i, e in enumerate(dexps):
            for _ in range(e):
                term = term.compose(shifted[i])
        out = out + WeylOp.mul_by(f).compose(term)
    return out


def psi0_logderivs(family: Family, parity: ParityData):
    """Logarithmic derivatives of the ground-state factor of the A families.

    Rational A: product of (x_i - x_j)^(k^(1-p(i)-p(j))); trigonometric A:
    product of (x_i x_j / (x_i - x_j)^2)^(k^(1-p(i)-p(j))/2).  The symbolic
    exponents never appear themselves, only their rational log-derivatives.
    """
    nm = parity.size
    out = []
    for i in range(nm):
        w = RatFun.zero(nm)
        for j in range(nm):
            if j == i:
                continue
            c = k_power(1 - parity.p(i) - parity.p(j))
            if family is Family.RAT_A:
                w = w + _rf(MultiPoly.const(nm, c), (_fac_diff(nm, i, j), 1))
            elif family is Family.TRIG_A:
                w = w + _rf(MultiPoly.const(nm, c * _HALF), (_fac_var(nm, i), 1))
                w = w - _rf(MultiPoly.const(nm, c), (_fac_diff(nm, i, j), 1))
            else:
                raise UnsupportedFamily(family.value)
        out.append(w)
    return out
