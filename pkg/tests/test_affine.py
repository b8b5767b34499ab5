import pytest

from qverify.affine import (
    PRESETS,
    GuardViolation,
    a3_commutator_check,
    affine_suite,
    build_bracket_op,
    commutator_coefficient,
    e0_value_formula,
    e0_values_check,
    lweight_checks,
    lweight_series,
    nesting_check,
    orientation,
    parse_bracket,
    quotient_dim,
    right_nested,
    submodule_membership,
)
from qverify.boson import Evaluator
from qverify.cartan import preset
from qverify.qcoeff import ONE, Q, quantum_int
from qverify.uqplus import FreeElement, algebra

q = Q
E = FreeElement.word


def e0(tag):
    p = PRESETS[tag]
    cd = preset(p.finite)
    return build_bracket_op(p.spec(), cd), algebra(cd)


class TestBrackets:
    def test_parse_round_trip(self):
        assert parse_bracket("[2,1]_q") == right_nested([2, 1])

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_bracket("[1,2")


class TestE0Values:
    def test_a2_simple(self):
        op, uq = e0("a2")
        assert uq.equal(Evaluator(uq).apply_word(op, (2, 1)), FreeElement.one().scale(ONE / (ONE - q**2)))

    def test_a2_doubled(self):
        op, uq = e0("a2")
        img = Evaluator(uq).apply_word(op, (2, 2, 1, 1))
        assert uq.equal(img, E(2, 1).scale(q**-1 * quantum_int(2) ** 2 / (ONE - q**2)))

    def test_wrong_order_vanishes(self):
        op, uq = e0("a2")
        assert uq.is_zero(Evaluator(uq).apply_word(op, (1, 2)))

    def test_formula(self):
        assert e0_value_formula((1, 1)) == ONE / (ONE - q**2)
        assert e0_value_formula((2, 2)) == q**-1 * quantum_int(2) ** 2 / (ONE - q**2)

    @pytest.mark.parametrize("n,cutoff", [(2, 6), (3, 6)])
    def test_block_words(self, n, cutoff):
        assert e0_values_check(n, cutoff).passed


class TestAffineSerre:
    @pytest.mark.parametrize("tag", ["sl2", "a2", "a3", "a3-alt", "c2"])
    def test_presets_pass(self, tag):
        results = affine_suite(tag, 5)
        assert all(r.passed for r in results), [r.relation for r in results if not r.passed]

    def test_a3_bad_fails_only_one_relation(self):
        results = affine_suite("a3-bad", 5)
        serre_failed = [r.relation for r in results if not r.passed and r.relation.startswith("S_")]
        assert len(serre_failed) == 1 and "E0,R2" in serre_failed[0]

    def test_a3_bad_commutator(self):
        op, uq = e0("a3-bad")
        expected = (ONE - 2 * q**2 + q**4) / (ONE - q**2)
        assert expected == ONE - q**2
        assert commutator_coefficient(op, uq, 2, (3, 1)) == expected
        assert a3_commutator_check(op, uq, expected).passed

    def test_a3_alt_commutator_vanishes(self):
        op, uq = e0("a3-alt")
        assert commutator_coefficient(op, uq, 2, (3, 1)) == 0

    def test_d4_bad_fails(self):
        results = affine_suite("d4-bad", 5)
        assert any(not r.passed for r in results)

    def test_nesting(self):
        assert nesting_check(3, 4).passed


class TestSubmodule:
    def test_membership(self):
        assert submodule_membership(E(1, 2), 2)
        assert not submodule_membership(E(2, 1), 2)

    def test_quotient_dims(self):
        assert quotient_dim((0, 1), 2) == 1
        assert quotient_dim((1, 0), 2) == 0
        assert quotient_dim((1, 1), 2) == 1


class TestLoopWeights:
    def test_orientation(self):
        assert [orientation(i) for i in range(1, 5)] == [-1, 1, -1, 1]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_series(self, n):
        s = lweight_series(n, kmax=3)
        for i in range(1, n):
            assert s.coeffs[i] == [ONE, 0, 0, 0]
        c = q**-1 * orientation(n)
        assert s.coeffs[n] == [ONE, c, c**2, c**3]

    def test_checks(self):
        assert all(r.passed for r in lweight_checks(2, kmax=3))

    def test_guard(self):
        with pytest.raises(GuardViolation):
            lweight_series(5)
