import random

import pytest

from blochtower.finite_field import field, field_from_q
from blochtower.laurent import (
    LaurentSquareClass,
    PrecisionExhaustedError,
    TruncatedLaurentSeries as TLS,
    fuzz_specialization,
    laurent_square_class,
    probe_deep_unit_square,
    probe_unit_difference_of_squares,
    proof_identity_probe,
    relation_specialization_check,
    specialization_target,
    sqrt_unit,
)

F5 = field(5)
F7 = field(7)


def rand_series(F, rng, precision, vmin=-3, vmax=3):
    v = rng.randint(vmin, vmax)
    lead = rng.randrange(1, F.q)
    rest = [rng.randrange(F.q) for _ in range(precision - 1)]
    return TLS(F, v, tuple([lead] + rest))


class TestArithmetic:
    def test_inv_of_t(self):
        t = TLS.uniformizer(F5)
        assert t.inv() == TLS.uniformizer(F5, -1)

    def test_inverse_identity(self):
        a = TLS.uniformizer(F5).one_minus().truncate(24)  # 1 - t
        prod = a * a.inv()
        assert prod.valuation == 0 and prod.leading() == 1
        assert all(c == 0 for c in prod.coeffs[1:])

    def test_one_minus_negative_valuation(self):
        w = TLS.uniformizer(F5, -1).one_minus()
        assert w.valuation == -1
        assert w.leading() == F5.neg_code(1)
        # cross-check: w + t^-1 == 1
        back = w + TLS.uniformizer(F5, -1)
        assert back == TLS.one(F5)

    def test_one_minus_mul_oracle(self):
        rng = random.Random(11)
        for _ in range(50):
            a = rand_series(F5, rng, 12)
            try:
                w = a.one_minus()
            except PrecisionExhaustedError:
                continue
            total = w + a  # should be 1 within the window
            assert total.valuation == 0 and total.leading() == 1

    def test_cancellation_raises(self):
        one_unit = TLS(F5, 0, (1, 0, 0, 0))
        with pytest.raises(PrecisionExhaustedError):
            one_unit.one_minus()

    def test_sub_of_self_raises(self):
        a = TLS(F5, 0, (2, 3, 1))
        with pytest.raises(PrecisionExhaustedError):
            a - a

    def test_exact_cancellation_is_zero(self):
        t = TLS.uniformizer(F5)
        assert (t - t).is_zero()

    def test_zero_inverse_rejected(self):
        with pytest.raises(ZeroDivisionError):
            TLS.zero(F5).inv()

    def test_even_q_rejected(self):
        with pytest.raises(ValueError):
            TLS.uniformizer(field(2, 2))

    def test_leading_zero_rejected(self):
        with pytest.raises(ValueError):
            TLS(F5, 0, (0, 1))

    def test_from_coeffs_strips_leading_zeros(self):
        a = TLS.from_coeffs(F5, 2, [0, 0, 3, 1])
        assert a.valuation == 4 and a.coeffs == (3, 1)
        assert a.prec_exp == 6

    def test_mul_associativity_to_precision(self):
        rng = random.Random(5)
        for _ in range(30):
            a, b, c = (rand_series(F5, rng, 10) for _ in range(3))
            assert ((a * b) * c).agrees_with(a * (b * c))

    def test_precision_tracking_through_mul(self):
        a = TLS(F5, 1, (1, 2))  # known to O(t^3)
        b = TLS(F5, -1, (3, 0, 0, 1))  # known to O(t^3)
        prod = a * b
        assert prod.valuation == 0 and prod.prec_exp == 2

    def test_sqrt_unit(self):
        rng = random.Random(3)
        for _ in range(30):
            s = rand_series(F5, rng, 16, vmin=0, vmax=0)
            sq = s * s
            root = sqrt_unit(sq)
            assert (root * root).agrees_with(sq)

    def test_sqrt_requires_square_leading(self):
        with pytest.raises(ValueError):
            sqrt_unit(TLS(F5, 0, (2, 1, 1)))  # 2 is not a square mod 5


class TestSquareClass:
    def test_uniformizer(self):
        assert laurent_square_class(TLS.uniformizer(F5).truncate(4)) == LaurentSquareClass(1, 0)

    def test_nonsquare_unit_times_t_squared(self):
        a = TLS(F7, 2, (3, 0, 0))  # 3 t^2, 3 is not a square mod 7
        assert laurent_square_class(a) == LaurentSquareClass(0, 1)

    def test_one_unit_trivial(self):
        a = TLS(F5, 0, (1, 1, 2, 3))
        assert laurent_square_class(a) == LaurentSquareClass(0, 0)

    def test_multiplicative_seeded(self):
        for q in (5, 7):
            F = field_from_q(q)
            rng = random.Random(0x5EED ^ q)
            for _ in range(1000):
                a = rand_series(F, rng, 6)
                b = rand_series(F, rng, 6)
                lhs = laurent_square_class(a * b)
                rhs = laurent_square_class(a).compose(laurent_square_class(b))
                assert lhs == rhs

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            laurent_square_class(TLS.zero(F5))


class TestSpecialize:
    def test_positive_valuation_gives_constant(self):
        tgt = specialization_target(F5)
        t = TLS.uniformizer(F5).truncate(8)
        assert tgt.specialize(t) == tgt.b_vector(1)

    def test_negative_valuation_gives_minus_constant(self):
        tgt = specialization_target(F5)
        tinv = TLS.uniformizer(F5).inv().truncate(8)
        assert tgt.specialize(tinv) == tgt.b_vector(-1)

    def test_unit_gives_residue_symbol(self):
        tgt = specialization_target(F5)
        u = TLS(F5, 0, (3, 1, 4))
        assert tgt.specialize(u) == tgt.residue_symbol(3)

    def test_one_unit_goes_to_zero(self):
        tgt = specialization_target(F5)
        u = TLS(F5, 0, (1, 2, 3))
        assert tgt.specialize(u) == [0] * tgt.total

    def test_action_respects_unit_twist(self):
        # acting by a unit class equals twisting the residue symbol
        tgt = specialization_target(F5)
        u = TLS(F5, 0, (3, 1, 4))
        cls = LaurentSquareClass(0, 1)
        twisted = tgt.act(cls, tgt.specialize(u))
        direct = [0] * tgt.total
        idx = tgt._index[3] * tgt.group_size
        direct[idx ^ 1] = 1
        assert twisted == direct

    def test_action_is_involution(self):
        tgt = specialization_target(F5)
        vec = tgt.b_vector(1)
        cls = LaurentSquareClass(1, 1)
        assert tgt.act(cls, tgt.act(cls, vec)) == vec

    def test_zero_rejected(self):
        tgt = specialization_target(F5)
        with pytest.raises(ValueError):
            tgt.specialize(TLS.zero(F5))


class TestRelationCheck:
    def test_units_with_distinct_residues(self):
        tgt = specialization_target(F5)
        x = TLS(F5, 0, (2,) + (0,) * 15)
        y = TLS(F5, 0, (3,) + (1,) * 15)
        assert relation_specialization_check(tgt, x, y).status == "pass"

    def test_t_and_t_squared(self):
        tgt = specialization_target(F5)
        x = TLS.uniformizer(F5).truncate(64)
        y = TLS.uniformizer(F5, 2).truncate(64)
        assert relation_specialization_check(tgt, x, y).status == "pass"

    def test_one_unit_input_inconclusive(self):
        tgt = specialization_target(F5)
        x = TLS(F5, 0, (1, 0, 0, 0))  # 1 to precision: 1 - x^-1 dies
        y = TLS(F5, 0, (3, 1, 2, 4))
        assert relation_specialization_check(tgt, x, y).status == "inconclusive"

    def test_mixed_valuations_sample(self):
        tgt = specialization_target(F5)
        rng = random.Random(99)
        passes = 0
        for _ in range(40):
            x = rand_series(F5, rng, 32)
            y = rand_series(F5, rng, 32)
            out = relation_specialization_check(tgt, x, y)
            assert out.status in ("pass", "inconclusive")
            passes += out.status == "pass"
        assert passes > 30


class TestFuzz:
    def test_small_run_clean(self):
        report = fuzz_specialization(F5, 32, 60, seed=7)
        assert not report.failures
        assert report.inconclusive_rate < 0.05
        assert report.samples == 60

    def test_zero_samples_vacuous(self):
        report = fuzz_specialization(F5, 16, 0)
        assert report.samples == 0 and not report.failures and report.attempts == 0

    def test_deterministic(self):
        a = fuzz_specialization(F7, 16, 25, seed=123)
        b = fuzz_specialization(F7, 16, 25, seed=123)
        assert a == b

    def test_f3_supported(self):
        report = fuzz_specialization(field(3), 32, 40, seed=5)
        assert not report.failures


class TestProbes:
    def test_case_i_default(self):
        assert probe_deep_unit_square(F5).status == "pass"

    def test_case_i_rejects_shallow(self):
        with pytest.raises(ValueError):
            probe_deep_unit_square(F5, a=TLS.uniformizer(F5).truncate(8))

    def test_case_ii_f7(self):
        report = probe_unit_difference_of_squares(F7, 3)
        assert report.status == "pass"
        assert report.details["square_identity"]

    def test_case_ii_no_witness(self):
        assert probe_unit_difference_of_squares(F5, 1).status == "no_witness"

    def test_case_ii_f3(self):
        # residue 1 over F_3: the 4-pair search finds nothing
        assert probe_unit_difference_of_squares(field(3), 1).status == "no_witness"

    def test_case_ii_nonconstant_unit(self):
        u = TLS(F7, 0, (3, 1, 2, 5, 0, 1, 4, 2) + (0,) * 24)
        assert probe_unit_difference_of_squares(F7, u).status == "pass"

    def test_dispatch(self):
        assert proof_identity_probe("i", F5).case == "deep_unit_square"
        assert proof_identity_probe("ii", F7, u=3).case == "unit_difference_of_squares"
        with pytest.raises(ValueError):
            proof_identity_probe("iii", F5)
