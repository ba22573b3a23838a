import random

import pytest

from dunklcms.coeffs import ONE, ParamRatio, const, symbol
from dunklcms.finite_cms import Hom, MultiPoly, ParityData, heckman_integral
from dunklcms.powersums import Family, LambdaElem, UnsupportedFamily
from dunklcms.weyl import (
    RatFun,
    WeylOp,
    commute_check,
    estar_weights,
    gauge_conjugate,
    hamiltonian,
    integral_vs_hamiltonian,
    lax_check,
    moser_L,
    moser_L_gauged_trig,
    moser_M,
    moser_integral,
    psi0_logderivs,
)

K = symbol("k")


def V(n, i, p=1):
    return MultiPoly.var(n, i, p)


def is_scalar(f: RatFun) -> bool:
    return (not f.den) and (len(f.num.terms) <= 1) and all(not any(e) for e in f.num.terms)


def rf(num, den_pairs=()):
    return RatFun(num, dict(den_pairs))


class TestCompose:
    def test_leibniz_on_variable(self):
        d1 = WeylOp.partial(2, 0)
        x1 = WeylOp.mul_by(rf(V(2, 0)))
        out = d1.compose(x1)
        assert out == x1.compose(d1) + WeylOp.const(2, 1)

    def test_leibniz_on_rational_coefficient(self):
        d1 = WeylOp.partial(2, 0)
        f = rf(MultiPoly.const(2, 1), [(V(2, 0) - V(2, 1), 1)])
        out = d1.compose(WeylOp.mul_by(f))
        expected = WeylOp.mul_by(f).compose(d1) + WeylOp.mul_by(
            RatFun(MultiPoly.const(2, -1), {V(2, 0) - V(2, 1): 2})
        )
        assert out == expected

    def test_euler_square(self):
        e1 = WeylOp.euler(2, 0)
        sq = e1.compose(e1)
        expected = WeylOp(2, {(2, 0): rf(V(2, 0, 2)), (1, 0): rf(V(2, 0))})
        assert sq == expected

    def test_partials_commute(self):
        a = WeylOp.partial(3, 0)
        b = WeylOp.partial(3, 2)
        assert a.commutator(b).is_zero()

    def test_multiplications_commute(self):
        a = WeylOp.mul_by(rf(V(3, 0)))
        b = WeylOp.mul_by(rf(V(3, 1, 2)))
        assert a.commutator(b).is_zero()

    def test_associativity_on_random_triples(self, rng):
        n = 2
        ops = []
        for _ in range(6):
            terms = {}
            for _ in range(rng.randint(1, 2)):
                de = (rng.randint(0, 1), rng.randint(0, 1))
                num = MultiPoly(n, {(rng.randint(0, 2), rng.randint(0, 2)): const(rng.randint(-3, 3))})
                den = {V(n, 0) - V(n, 1): rng.randint(0, 1)}
                if num.is_zero():
                    continue
                terms[de] = RatFun(num, den)
            ops.append(WeylOp(n, terms))
        for i in range(0, 6, 3):
            a, b, c = ops[i], ops[i + 1], ops[i + 2]
            assert a.compose(b).compose(c) == a.compose(b.compose(c))


class TestMoserMatrices:
    def test_rational_entries(self):
        par = ParityData(1, 1)
        L = moser_L(Family.RAT_A, par)
        assert L.entries[0][1] == WeylOp.mul_by(
            RatFun(MultiPoly.const(2, 1), {V(2, 0) - V(2, 1): 1})
        )
        assert L.entries[1][0] == WeylOp.mul_by(
            RatFun(MultiPoly.const(2, -K), {V(2, 0) - V(2, 1): 1})
        )
        assert L.entries[0][0] == WeylOp.partial(2, 0)

    def test_block_structure(self):
        par = ParityData(1, 1)
        for fam in (Family.RAT_B, Family.TRIG_BC):
            L = moser_L(fam, par)
            nm = par.size
            assert L.rows == L.cols == 2 * nm
            for i in range(nm):
                for j in range(nm):
                    assert L.entries[nm + i][nm + j] == -L.entries[i][j]
                    assert L.entries[nm + i][j] == -L.entries[i][nm + j]

    def test_rational_b_one_particle_entry(self):
        par = ParityData(1, 0)
        L = moser_L(Family.RAT_B, par)
        # B block diagonal is q/x_1
        assert L.entries[0][1] == WeylOp.mul_by(
            RatFun(MultiPoly.const(1, symbol("q")), {V(1, 0): 1})
        )

    def test_m_matrix_kernel_vectors(self):
        for fam in (Family.RAT_A, Family.TRIG_A):
            for (n, m) in ((1, 1), (2, 1)):
                par = ParityData(n, m)
                M = moser_M(fam, par)
                nm = par.size
                for i in range(nm):
                    row = M.entries[i][0]
                    for j in range(1, nm):
                        row = row + M.entries[i][j]
                    assert row.is_zero()
                w = estar_weights(fam, par)
                for j in range(nm):
                    col = M.entries[0][j].scale(w[0])
                    for i in range(1, nm):
                        col = col + M.entries[i][j].scale(w[i])
                    assert col.is_zero()

    def test_trig_m_entry(self):
        par = ParityData(1, 1)
        M = moser_M(Family.TRIG_A, par)
        num = (V(2, 0) * V(2, 1)).scale(const(2))
        assert M.entries[0][1] == WeylOp.mul_by(RatFun(num, {V(2, 0) - V(2, 1): 2}))

    def test_no_m_matrix_for_b_families(self):
        for fam in (Family.RAT_B, Family.TRIG_BC):
            with pytest.raises(UnsupportedFamily):
                moser_M(fam, ParityData(1, 1))


class TestHamiltonians:
    def test_rational_a_ungauged_value(self):
        par = ParityData(1, 1)
        H = hamiltonian(Family.RAT_A, par, gauged=False)
        expected = (
            WeylOp(2, {(2, 0): rf(MultiPoly.const(2, 1)), (0, 2): rf(MultiPoly.const(2, K))})
            - WeylOp.mul_by(RatFun(MultiPoly.const(2, (K + ONE).scale(2)), {V(2, 0) - V(2, 1): 2}))
        )
        assert H == expected

    def test_rational_a_gauged_value(self):
        par = ParityData(1, 1)
        H = hamiltonian(Family.RAT_A, par, gauged=True)
        cross = WeylOp.partial(2, 0) - WeylOp.partial(2, 1).scale(K)
        expected = (
            WeylOp(2, {(2, 0): rf(MultiPoly.const(2, 1)), (0, 2): rf(MultiPoly.const(2, K))})
            - WeylOp.mul_by(RatFun(MultiPoly.const(2, const(2)), {V(2, 0) - V(2, 1): 1})).compose(cross)
        )
        assert H == expected

    def test_k_equals_one_collapses_species(self):
        par = ParityData(1, 1)
        H = hamiltonian(Family.RAT_A, par, gauged=False).substitute({"k": const(1)})
        expected = (
            WeylOp(2, {(2, 0): rf(MultiPoly.const(2, 1)), (0, 2): rf(MultiPoly.const(2, 1))})
            - WeylOp.mul_by(RatFun(MultiPoly.const(2, 4), {V(2, 0) - V(2, 1): 2}))
        )
        assert H == expected

    def test_gauged_b_families_require_m_zero(self):
        for fam in (Family.RAT_B, Family.TRIG_BC):
            with pytest.raises(UnsupportedFamily):
                hamiltonian(fam, ParityData(1, 1), gauged=True)


class TestLax:
    @pytest.mark.parametrize("family", [Family.RAT_A, Family.TRIG_A])
    def test_lax_identity_smallest_case(self, family):
        rep = lax_check(family, ParityData(1, 1))
        assert rep.ok and len(rep.results) == 4

    def test_lax_rejects_b_families(self):
        with pytest.raises(UnsupportedFamily):
            lax_check(Family.RAT_B, ParityData(1, 1))


class TestIntegrals:
    def test_first_integral_is_total_momentum(self):
        par = ParityData(1, 1)
        I1 = moser_integral(Family.RAT_A, par, 1)
        assert I1 == WeylOp.partial(2, 0) + WeylOp.partial(2, 1)

    def test_second_integral_reproduces_hamiltonian(self):
        par = ParityData(1, 1)
        I2 = moser_integral(Family.RAT_A, par, 2)
        assert I2 == hamiltonian(Family.RAT_A, par, gauged=False)

    def test_hamiltonian_factors(self):
        expect = {
            Family.RAT_A: (ONE, True),
            Family.TRIG_A: (ONE, False),
            Family.RAT_B: (const(-2), True),
            Family.TRIG_BC: (const(2), False),
        }
        for fam, (factor, const_zero) in expect.items():
            f, c, res = integral_vs_hamiltonian(fam, ParityData(1, 1))
            assert f == factor
            assert res.is_zero()
            assert is_scalar(c)
            assert c.is_zero() == const_zero

    def test_self_commutator(self):
        H = hamiltonian(Family.RAT_A, ParityData(1, 1), gauged=False)
        assert commute_check(H, H, "symbolic").ok

    def test_integrals_commute_with_hamiltonian(self):
        par = ParityData(1, 1)
        H = hamiltonian(Family.RAT_A, par, gauged=False)
        for r in (1, 2, 3):
            I = moser_integral(Family.RAT_A, par, r)
            assert commute_check(I, H, "symbolic").ok

    def test_commute_check_basis_mode(self):
        par = ParityData(1, 1)
        H = hamiltonian(Family.RAT_B, par, gauged=False)
        I = moser_integral(Family.RAT_B, par, 1)
        rep = commute_check(I, H, "basis", deg=3)
        assert rep.ok

    def test_trig_bc_commutes_on_laurent_monomials(self):
        # the BC operators act on Laurent polynomials; spot-check negative exponents
        from dunklcms.weyl import apply_weyl_to_ratfun

        par = ParityData(1, 1)
        H = hamiltonian(Family.TRIG_BC, par, gauged=False)
        I = moser_integral(Family.TRIG_BC, par, 1)
        for exps in ((-1, 1), (-2, 0), (-1, -1)):
            mono = MultiPoly(2, {exps: ONE})
            v1 = apply_weyl_to_ratfun(I, H.apply(mono))
            v2 = apply_weyl_to_ratfun(H, I.apply(mono))
            assert (v1 - v2).is_zero(), exps

    def test_higher_block_integrals_commute_mutually(self):
        # the fourth-power integrals commute with the second-power ones, fully
        # symbolically, for both block families
        par = ParityData(1, 1)
        for fam in (Family.RAT_B, Family.TRIG_BC):
            I1 = moser_integral(fam, par, 1)
            I2 = moser_integral(fam, par, 2)
            assert commute_check(I1, I2, "symbolic").ok

    def test_commute_check_detects_noncommuting(self):
        x = WeylOp.mul_by(rf(V(1, 0)))
        d = WeylOp.partial(1, 0)
        assert not commute_check(x, d, "symbolic").ok
        assert not commute_check(x, d, "basis", deg=2).ok


class TestGauge:
    def test_shift_definition(self):
        w = RatFun(MultiPoly.const(2, K), {V(2, 0) - V(2, 1): 1})
        out = gauge_conjugate(WeylOp.partial(2, 0), [w, RatFun.zero(2)])
        assert out == WeylOp.partial(2, 0) + WeylOp.mul_by(w)

    def test_shifted_square(self):
        n = 1
        w = RatFun(MultiPoly.const(1, 1), {V(1, 0): 1})  # 1/x
        d = WeylOp.partial(1, 0)
        out = gauge_conjugate(d.compose(d), [w])
        expected = (
            d.compose(d)
            + WeylOp.mul_by(w.scale(const(2))).compose(d)
            + WeylOp.mul_by(w * w + w.diff(0))
        )
        assert out == expected

    def test_ungauged_to_gauged_rational(self):
        par = ParityData(2, 1)
        Hu = hamiltonian(Family.RAT_A, par, gauged=False)
        Hg = hamiltonian(Family.RAT_A, par, gauged=True)
        w = [-x for x in psi0_logderivs(Family.RAT_A, par)]
        assert gauge_conjugate(Hu, w) == Hg

    def test_ungauged_to_gauged_trig_constant(self):
        par = ParityData(1, 1)
        Hu = hamiltonian(Family.TRIG_A, par, gauged=False)
        Hg = hamiltonian(Family.TRIG_A, par, gauged=True)
        w = psi0_logderivs(Family.TRIG_A, par)
        diff = gauge_conjugate(Hu, w) - Hg
        c = diff.constant_part()
        assert (diff - WeylOp.mul_by(c)).is_zero() and is_scalar(c)
        # the ground-state shift (k+1)/4
        assert c == RatFun(MultiPoly.const(2, (K + ONE) * ParamRatio.fraction(1, 4)))

    def test_gauged_trig_matrix_gives_gauged_hamiltonian(self):
        par = ParityData(1, 1)
        Lg = moser_L_gauged_trig(par)
        I2 = Lg.power(2).weighted_total(estar_weights(Family.TRIG_A, par))
        assert I2 == hamiltonian(Family.TRIG_A, par, gauged=True)

    def test_gauge_connects_both_trig_matrices(self):
        par = ParityData(1, 1)
        I2 = moser_integral(Family.TRIG_A, par, 2)
        Lg = moser_L_gauged_trig(par)
        I2g = Lg.power(2).weighted_total(estar_weights(Family.TRIG_A, par))
        w = psi0_logderivs(Family.TRIG_A, par)
        assert gauge_conjugate(I2, w) == I2g


class TestDegenerations:
    def test_k_one_matches_undeformed_integrals(self):
        one = {"k": const(1)}
        par = ParityData(1, 1)
        hom = Hom(Family.RAT_A, "phi_nm", parity=par)
        w = [-x for x in psi0_logderivs(Family.RAT_A, par)]
        for r in (1, 2, 3):
            G = gauge_conjugate(moser_integral(Family.RAT_A, par, r), w).substitute(one)
            for f in (LambdaElem.p(2), LambdaElem.p(1) * LambdaElem.p(2)):
                g1 = hom.apply(f).substitute(one)
                lhs = G.apply(g1)
                rhs = heckman_integral(Family.RAT_A, 2, r, g1).substitute(one)
                assert (lhs - RatFun.from_poly(rhs)).is_zero()

    def test_m_zero_reduces_to_undeformed(self):
        for fam in Family:
            par = ParityData(2, 0)
            Hg = hamiltonian(fam, par, gauged=True)
            hom = Hom(fam, "phi_N", N=2)
            for f in (LambdaElem.p(1), LambdaElem.p(2)):
                g = hom.apply(f)
                lhs = Hg.apply(g)
                rhs = heckman_integral(fam, 2, 1 if fam.even_integrals else 2, g)
                assert (lhs - RatFun.from_poly(rhs)).is_zero()
