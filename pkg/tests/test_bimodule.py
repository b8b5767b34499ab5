import pytest

from qverify.bimodule import (
    SplitContext,
    beta_vec,
    build_M,
    cokernel_checks,
    e0e0_spec,
    lacing_checks,
    m_alpha_spec,
    misconfigured_spec,
    sl2_checks,
    tneg,
    verify_nat_transformations,
    verify_splitting,
    wrong_gtau_spec,
    xneg,
    zero_h2_checks,
)
from qverify.klr import Quiver
from qverify.report import PASS, SKIPPED_GUARD


def statuses(results):
    return {r.relation: r.status for r in results}


def failed(results):
    return [r.relation for r in results if r.status not in (PASS, SKIPPED_GUARD)]


class TestIndexing:
    def test_negative_indices(self):
        assert xneg(4, 1) == 4 and xneg(4, 4) == 1
        assert tneg(4, 1) == 3

    def test_beta(self):
        assert beta_vec(3) == (3, 2, 1)


class TestSplitting:
    @pytest.mark.parametrize(
        "alpha,n",
        [({1: 1, 2: 1}, 2), ({1: 2, 2: 1}, 2), ({1: 1, 2: 2}, 2), ({1: 1, 2: 1, 3: 1}, 3), ({1: 2, 2: 2}, 2)],
    )
    def test_m_alpha(self, alpha, n):
        assert not failed(verify_splitting(m_alpha_spec(alpha, n), 4))

    def test_e0e0(self):
        assert not failed(verify_splitting(e0e0_spec({1: 2, 2: 2}, 2), 4))

    def test_misconfigured_fails(self):
        bad = failed(verify_splitting(misconfigured_spec({1: 1, 2: 1}, 2), 4))
        assert any(name.startswith("(1)") for name in bad)
        assert any(name.startswith("(7)") for name in bad)
        assert any("direct-sum" in name for name in bad)

    def test_wrong_gtau_fails(self):
        bad = failed(verify_splitting(wrong_gtau_spec({1: 2, 2: 1}, 2), 4))
        assert any(name.startswith("(2)") for name in bad)

    def test_membership_probes(self):
        ctx = SplitContext(m_alpha_spec({1: 1, 2: 1}, 2))
        alg = ctx.alg
        for t in ctx.targets:
            assert not ctx.contains(alg.idem(t))

    def test_slice_is_built(self):
        sl = build_M({1: 1, 2: 1}, 2, 4)
        assert sl is not None


class TestCokernel:
    @pytest.mark.parametrize("alpha,n", [({1: 2, 2: 1}, 2), ({1: 1, 2: 1, 3: 1}, 3)])
    def test_chain(self, alpha, n):
        assert not failed(cokernel_checks(alpha, n, 4))


class TestNaturalTransformations:
    def test_n2(self):
        assert not failed(verify_nat_transformations(2, 4))

    def test_n3_guards(self):
        res = verify_nat_transformations(3, 4)
        assert not failed(res)
        assert any(r.status == SKIPPED_GUARD for r in res)

    def test_zero_h2(self):
        assert not failed(zero_h2_checks(2))

    def test_sl2(self):
        assert not failed(sl2_checks(3))


class TestLacing:
    def test_reflected_quiver(self):
        assert not failed(lacing_checks(Quiver.type_a(2), 1, 2, {1: 2, 2: 1}))

    def test_disconnected(self):
        assert not failed(lacing_checks(Quiver((1, 2), {}), 1, 2, {1: 2, 2: 1}))

    def test_wrong_claim_fails(self):
        q = Quiver.type_a(2)
        assert failed(lacing_checks(q, 1, 2, {1: 2, 2: 1}, claimed=q))
