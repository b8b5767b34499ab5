import random

import pytest

from qverify.boson import (
    Evaluator,
    WeightOp,
    boson_suite,
    estar_apply,
    operator_vanishes,
    random_element,
    rmul,
)
from qverify.cartan import preset
from qverify.qcoeff import ONE, Q, QScalar
from qverify.uqplus import FreeElement, algebra

q = Q
E = FreeElement.word


class TestDerivation:
    def test_estar_on_square(self):
        uq = algebra(preset("A(1)"))
        assert estar_apply(uq, 1, E(1, 1)) == E(1).scale((ONE + q**-2) / (ONE - q**2))

    def test_estar_generator(self):
        uq = algebra(preset("A(2)"))
        assert estar_apply(uq, 1, E(1)) == FreeElement.one().scale(ONE / (ONE - q**2))
        assert estar_apply(uq, 2, E(1)) == FreeElement()

    @pytest.mark.parametrize("tag", ["A(2)", "C2"])
    def test_adjoint_to_right_multiplication(self, tag):
        # independent oracle: the bilinear form evaluated directly on both sides
        uq = algebra(preset(tag))
        rng = random.Random(7)
        for i in uq.cd.labels:
            alpha = [1] * uq.cd.rank
            alpha[uq.cd.idx(i)] += 1
            lower = list(alpha)
            lower[uq.cd.idx(i)] -= 1
            x = random_element(uq, tuple(alpha), rng)
            y = random_element(uq, tuple(lower), rng)
            assert uq.lusztig_form(uq.estar(i, x), y) == uq.lusztig_form(x, uq.rmul(i, y))


class TestOperators:
    def test_rmul_order(self):
        cd = preset("A(2)")
        assert rmul(cd, 1)(E(2)) == E(2, 1)
        assert (rmul(cd, 2) * rmul(cd, 1))(FreeElement.one()) == E(1, 2)

    def test_shift(self):
        cd = preset("A(2)")
        op = WeightOp.D(cd, 1) * WeightOp.R(cd, 2)
        assert op.shift == (-1, 1)


class TestBosonSuite:
    @pytest.mark.parametrize("tag", ["A(1)", "A(2)", "A(3)", "C2", "D4"])
    def test_all_pass(self, tag):
        uq = algebra(preset(tag))
        results = boson_suite(uq, 4, samples=8, descend_cutoff=3)
        failed = [r.relation for r in results if not r.passed]
        assert not failed

    def test_wrong_exponent_fails(self):
        uq = algebra(preset("A(2)"))
        cd = uq.cd
        D, R = WeightOp.D(cd, 1), WeightOp.R(cd, 2)
        wrong = D * R - (R * D).scale(QScalar.qpow(cd.pair(1, 2)))
        res = operator_vanishes(wrong, uq, 3, relation="wrong", anchor="x", all_words=True, evaluator=Evaluator(uq))
        assert not res.passed

    def test_wrong_constant_fails(self):
        uq = algebra(preset("A(1)"))
        cd = uq.cd
        D, R = WeightOp.D(cd, 1), WeightOp.R(cd, 1)
        wrong = D * R - (R * D).scale(q**-2) - WeightOp.identity(cd)
        res = operator_vanishes(wrong, uq, 3, relation="wrong", anchor="x", all_words=True)
        assert not res.passed
