import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from slicelog.errors import BranchCutError, ConsistencyError, DomainError, NotInvertibleError
from slicelog.quat import I, J, K, Quaternion, random_quaternions
from slicelog.series import (
    QJet,
    RJet,
    TrustRadiusWarning,
    compose_entire,
    conj_jet,
    eval_jet,
    jet_distance,
    rjet_calculus,
    scale_exact,
    split_jet,
    star_inverse,
    star_mul,
    symmetrize,
)

from strategies import qjet_tuples, qjets, rjets

q = QJet.variable(8)


def poly(*rows, order=8):
    return QJet.from_poly(np.array(rows, dtype=float), order)


class TestStarProduct:
    def test_hand_convolutions(self):
        F = star_mul(q - I, QJet.constant(J, 8))
        assert jet_distance(F, poly([0, 0, 0, -1], [0, 0, 1, 0])) == 0.0  # qj - k
        G = star_mul(F, -F.conj() * -1.0) if False else star_mul(F, conj_jet(F))
        assert jet_distance(G, poly([1, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0])) == 0.0

    def test_identity(self):
        F = poly([1, 2, 3, 4], [0.5, -1, 0, 2])
        assert jet_distance(star_mul(QJet.constant(1.0, 8), F), F) == 0.0

    def test_noncommutative(self):
        A, B = QJet.constant(I, 2), q.truncate(2) * J
        assert jet_distance(star_mul(A, B), star_mul(B, A)) > 1.0

    def test_left_powers_right_coefficients(self):
        # q*a evaluated at p is p a, not a p
        F = QJet.variable(1) * J
        assert eval_jet(F, I) == K

    @given(qjet_tuples(3))
    def test_associative(self, jets):
        A, B, C = jets
        lhs = star_mul(star_mul(A, B), C)
        rhs = star_mul(A, star_mul(B, C))
        assert jet_distance(lhs, rhs) <= 1e-12

    @given(qjet_tuples(3))
    def test_distributive(self, jets):
        A, B, C = jets
        assert jet_distance(star_mul(A, B + C), star_mul(A, B) + star_mul(A, C)) <= 1e-12

    @given(qjet_tuples(2))
    def test_conjugate_of_product(self, jets):
        A, B = jets
        assert jet_distance(conj_jet(star_mul(A, B)), star_mul(conj_jet(B), conj_jet(A))) <= 1e-12

    def test_against_mpmath(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 12))
            A, B = rng.standard_normal((n, 4)), rng.standard_normal((n, 4))
            ref = oracle.to_array(oracle.qjet_mul(oracle.qjet(A), oracle.qjet(B), n - 1))
            assert np.abs(star_mul(QJet(A), QJet(B)).coeffs - ref).max() <= 1e-13 * max(1.0, np.abs(ref).max())

    def test_padding_and_trust_radius(self):
        A = QJet(np.ones((3, 4)), trust_radius=0.5)
        B = QJet(np.ones((6, 4)), trust_radius=2.0)
        C = star_mul(A, B)
        assert C.order == 5 and C.trust_radius == 0.5
        assert (A + B).order == 5


class TestConjugateAndSymmetrize:
    def test_conjugate(self):
        F = poly([0, 0, 0, -1], [0, 0, 1, 0])
        assert jet_distance(conj_jet(F), -F) == 0.0
        R = RJet([1.0, 2.0]).to_qjet()
        assert jet_distance(conj_jet(R), R) == 0.0

    @given(qjets())
    def test_involution(self, F):
        assert np.array_equal(conj_jet(conj_jet(F)).coeffs, F.coeffs)

    def test_examples(self):
        F = poly([0, 0, 0, -1], [0, 0, 1, 0])
        assert np.allclose(symmetrize(F).coeffs[:3], [1, 0, 1])
        fv = QJet.constant(I, 8) + q * J
        assert np.allclose(symmetrize(fv).coeffs[:3], [1, 0, 1])
        assert symmetrize(QJet.constant(Quaternion(1, 2, 3, 4), 0)).coeffs[0] == 30.0

    @given(qjets())
    def test_sum_of_squares_of_components(self, F):
        parts = split_jet(F)
        ref = parts.f0 * parts.f0 + parts.f1 * parts.f1 + parts.f2 * parts.f2 + parts.f3 * parts.f3
        assert jet_distance(symmetrize(F), ref) <= 1e-13
        assert jet_distance(star_mul(conj_jet(F), F).real_part(), ref) <= 1e-13

    def test_non_real_product_is_reported(self, monkeypatch):
        # with a broken conjugation F * F^c stops being real, which must not pass silently
        import slicelog.series as series

        monkeypatch.setattr(series, "conj_jet", lambda F: F)
        with pytest.raises(ConsistencyError, match="imaginary residual"):
            series.symmetrize(QJet.constant(Quaternion(1.0, 1.0), 3))

    def test_zero_jet_is_only_zero_divisor(self):
        for F in (QJet.constant(0.0, 4), poly([0, 1, 0, 0], [1, 0, 0, 0])):
            S = symmetrize(F)
            assert (np.abs(S.coeffs).max() == 0.0) == (np.abs(F.coeffs).max() == 0.0)


class TestSplit:
    def test_example(self):
        parts = split_jet(QJet.constant(I, 8) + q * J)
        assert np.abs(parts.f0.coeffs).max() == 0.0
        assert np.array_equal(parts.f1.coeffs[:2], [1.0, 0.0])
        assert np.array_equal(parts.f2.coeffs[:2], [0.0, 1.0])
        assert np.abs(parts.f3.coeffs).max() == 0.0

    def test_real_and_k(self):
        parts = split_jet(3.0 + 2.0 * q)
        assert np.array_equal(parts.f0.coeffs[:2], [3.0, 2.0])
        parts = split_jet(star_mul(q * q, QJet.constant(K, 8)))
        assert parts.f3.coeffs[2] == 1.0 and np.abs(parts.f0.coeffs).max() == 0.0

    @given(qjets())
    def test_reassemble(self, F):
        parts = split_jet(F)
        assert np.array_equal(parts.reassemble().coeffs, F.coeffs)
        assert jet_distance(parts.f0, (F + conj_jet(F)).real_part() * 0.5) == 0.0


class TestEvaluation:
    def test_examples(self):
        assert abs(eval_jet(poly([0, 0, 0, -1], [0, 0, 1, 0]), I)) <= 1e-16
        unit = Quaternion(0.0, 0.6, 0.0, 0.8)
        assert abs(eval_jet(poly([1, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]), unit)) <= 1e-15
        pass_through = eval_jet(poly([1, 1, 0, 0], [0, 0, 1, 0]), J)
        assert abs(pass_through - I) <= 1e-16

    def test_real_argument_is_weighted_sum(self):
        F = poly([1, 2, 3, 4], [0, -1, 0, 2], [1, 1, 1, 1])
        t = 0.3
        ref = sum((F[n] * t**n for n in range(3)), Quaternion())
        assert abs(eval_jet(F, Quaternion(t)) - ref) <= 1e-15

    def test_against_mpmath(self, rng):
        for _ in range(30):
            A = rng.standard_normal((10, 4))
            p = random_quaternions(rng, 1, 1.0)[0]
            ref = oracle.qjet_eval(oracle.qjet(A), p.to_list())
            assert oracle.qdist(eval_jet(QJet(A), p).to_list(), ref) <= 1e-14 * 10

    def test_warning_only_outside_radius(self):
        F = QJet(np.ones((3, 4)), trust_radius=2.0)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            eval_jet(F, Quaternion(0.0, 2.0))
        with pytest.warns(TrustRadiusWarning):
            eval_jet(F, Quaternion(0.0, 2.1))

    @given(qjet_tuples(2, max_order=5))
    def test_star_product_values(self, jets):
        # pad so the product keeps every term of the two polynomials
        A, B = (F.truncate(2 * F.order) for F in jets)
        # (A*B)(p) = A(p) B(A(p)^-1 p A(p)) where A(p) != 0
        p = Quaternion(0.1, 0.4, -0.3, 0.2)
        a = eval_jet(A, p)
        if abs(a) < 1e-3:
            return
        lhs = eval_jet(star_mul(A, B), p)
        rhs = a * eval_jet(B, a.inverse() * p * a)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


class TestInverse:
    def test_constant(self):
        c = Quaternion(1.0, 2.0, -1.0, 0.5)
        inv = star_inverse(QJet.constant(c, 3))
        assert abs(inv[0] - c.inverse()) <= 1e-15

    def test_unit_symmetrization_gives_conjugate(self):
        F = QJet.constant(Quaternion(0.6, 0.0, 0.8, 0.0), 4)
        assert jet_distance(star_inverse(F), conj_jet(F)) <= 1e-16

    def test_geometric_series(self):
        inv = star_inverse(1.0 + q * I)
        ref = poly([1, 0, 0, 0], [0, -1, 0, 0], [-1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0])
        assert jet_distance(inv.truncate(4), ref.truncate(4)) <= 1e-15

    @given(qjets())
    def test_two_sided(self, F):
        S = symmetrize(F)
        if S.coeffs[0] < 0.05:
            return
        inv = star_inverse(F)
        one = QJet.constant(1.0, F.order)
        tol = 1e-10 * max(1.0, inv.scale())
        assert jet_distance(star_mul(F, inv), one) <= tol
        assert jet_distance(star_mul(inv, F), one) <= tol

    def test_not_invertible(self):
        with pytest.raises(NotInvertibleError):
            star_inverse(q * J)


class TestRealCalculus:
    def test_examples(self):
        assert jet_distance(RJet.constant(0.0, 5).exp(), RJet.constant(1.0, 5)) == 0.0
        t = RJet.variable(10)
        root = (t * t + 2.0 * t + 1.0).sqrt()
        assert jet_distance(root, t + 1.0) <= 1e-16

    @pytest.mark.parametrize("op", ["exp", "log", "sqrt", "recip"])
    def test_against_mpmath(self, op, rng):
        ref_fn = {
            "exp": oracle.rjet_exp,
            "log": oracle.rjet_log,
            "sqrt": oracle.rjet_sqrt,
            "recip": oracle.rjet_recip,
        }[op]
        for _ in range(5):
            N = 16
            c = rng.uniform(-0.5, 0.5, N + 1)
            c[0] = rng.uniform(0.5, 2.0)
            got = rjet_calculus(op, RJet(c)).coeffs
            ref = np.array([float(x) for x in ref_fn(oracle.mpf_array(c), N)])
            assert np.abs(got - ref).max() <= 1e-12 * max(1.0, np.abs(ref).max())

    @pytest.mark.parametrize(
        "op, value", [("log", 0.0), ("log", -1.0), ("sqrt", 0.0), ("sqrt", -2.0), ("recip", 0.0)]
    )
    def test_preconditions(self, op, value):
        with pytest.raises(DomainError, match="constant term"):
            rjet_calculus(op, RJet([value, 1.0]))

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            rjet_calculus("tan", RJet([1.0]))

    @given(rjets())
    def test_log_exp_round_trip(self, F):
        assert jet_distance(F.exp().log(), F) <= 1e-12

    @given(rjets())
    def test_integrate_derive(self, F):
        assert F.integrate().coeffs[0] == 0.0
        # integrating drops the top coefficient, so only orders below N come back
        back = F.integrate().derive()
        n = F.order
        assert np.allclose(back.coeffs[:n], F.coeffs[:n], atol=1e-15)
        assert F.derive().order == max(0, F.order - 1)

    @given(rjets(), rjets())
    def test_commutative(self, A, B):
        assert jet_distance(A * B, B * A) <= 1e-15
        Q = QJet(np.full((3, 4), 0.5))
        assert jet_distance(A * Q, Q * A) <= 1e-15

    def test_cos_sin(self):
        g = RJet([0.3, 1.0, -0.5] + [0.0] * 10)
        c, s = g.cos_sin()
        assert jet_distance(c * c + s * s, RJet.constant(1.0, 12)) <= 1e-15


class TestCompose:
    def test_mu_of_q_squared_plus_one_on_the_sphere(self):
        S = RJet([1.0, 0.0, 1.0] + [0.0] * 30)
        M = compose_entire("mu", S)
        # q^2 + 1 vanishes on the unit imaginary sphere, so mu of it is mu(0) = 1 there
        value = eval_jet(M, Quaternion(0.0, 0.0, 0.6, 0.8))
        assert abs(value - 1.0) <= 1e-12

    def test_phi_of_one(self):
        assert np.abs(compose_entire("phi", RJet.constant(1.0, 8)).coeffs).max() == 0.0

    def test_phi_needs_centre_off_the_cut(self):
        with pytest.raises(BranchCutError):
            compose_entire("phi", RJet([-1.0, 0.5]))
        with pytest.raises(BranchCutError):
            compose_entire("phi", RJet([-3.0]))

    @given(rjets(max_order=12, elements=st.floats(-0.4, 0.4)), st.floats(-0.9, 3.0))
    def test_mu_inverts_phi(self, S, c):
        S = S + (c - S.coeffs[0])
        W = compose_entire("phi", S)
        assert jet_distance(compose_entire("mu", W), S) <= 1e-10

    def test_mu_nu_against_mpmath(self, rng):
        N = 12
        for _ in range(4):
            c = rng.uniform(-0.5, 0.5, N + 1)
            c[0] = rng.uniform(-5.0, 30.0)
            for which, fn in (("mu", oracle.mu), ("nu", oracle.nu)):
                got = compose_entire(which, RJet(c)).coeffs
                ref = oracle.rjet_compose(
                    lambda m, x, fn=fn: mp.re(mp.diff(fn, x, m)) / mp.factorial(m), oracle.mpf_array(c), N
                )
                ref = np.array([float(x) for x in ref])
                assert np.abs(got - ref).max() <= 1e-11 * max(1.0, np.abs(ref).max())

    def test_phi_against_closed_form(self):
        # phi(cos t) = t^2 for t in (0, pi): compose with S = cos(a + b x)
        a, b = 1.1, 0.7
        S, _ = RJet([a, b] + [0.0] * 20).cos_sin()
        W = compose_entire("phi", S)
        ref = RJet([a, b] + [0.0] * 20)
        assert jet_distance(W, ref * ref) <= 1e-12

    def test_unknown(self):
        with pytest.raises(ValueError):
            compose_entire("tan", RJet([0.0]))


class TestScaleExact:
    def test_cancellation_survives(self):
        # lam = 1/(1 - 2x) has coefficients 2^k, all exact; (1 - 2x) * lam = 1
        lam = RJet([1.0, -2.0] + [0.0] * 60).recip()
        V = QJet(np.array([[0.0, 1.0, 1.0, 0.0], [0.0, -2.0, -2.0, 0.0]] + [[0.0] * 4] * 60))
        out = scale_exact(lam, V)
        ref = np.zeros((62, 4))
        ref[0] = [0.0, 1.0, 1.0, 0.0]
        assert np.abs(out.coeffs - ref).max() <= 1e-15

    @given(rjets(), qjets())
    def test_matches_plain_product(self, lam, V):
        assert jet_distance(scale_exact(lam, V), lam * V) <= 1e-14
