"""The acceptance gate: one test, and one PASS/FAIL line, per criterion."""

import json
from itertools import product

from qverify.affine import (
    PRESETS,
    affine_suite,
    build_bracket_op,
    commutator_coefficient,
    lweight_checks,
    sl2_chain_checks,
)
from qverify.bimodule import (
    cokernel_checks,
    m_alpha_spec,
    misconfigured_spec,
    sl2_checks,
    verify_nat_transformations,
    verify_splitting,
)
from qverify.boson import Evaluator, boson_relation_check
from qverify.cartan import preset
from qverify.cli import main
from qverify.klr import (
    KlrAlgebra,
    Quiver,
    nil_s_checks,
    omega00_checks,
    oracle_check,
    relation_checks,
)
from qverify.prefund import character_check, intertwiner_checks, relation_suites
from qverify.qcoeff import ONE, Q
from qverify.report import FAIL, PASS, SKIPPED_GUARD
from qverify.uqplus import algebra, surjection_checks

q = Q


def all_pass(results):
    bad = [r.relation for r in results if r.status != PASS]
    assert not bad, bad


def none_fail(results):
    bad = [r.relation for r in results if r.status == FAIL]
    assert not bad, bad


def test_criterion_1_boson_relations(criterion):
    with criterion(1, "q-boson relations exact on all words of height <= 6 for A1-A4, D4, C2"):
        for tag in ["A(1)", "A(2)", "A(3)", "A(4)", "D4", "C2"]:
            uq = algebra(preset(tag))
            ev = Evaluator(uq)
            all_pass([boson_relation_check(uq, i, j, 6, ev) for i in uq.cd.labels for j in uq.cd.labels])


def test_criterion_2_affine_serre(criterion):
    with criterion(2, "affine Serre presets pass at height <= 6; a3-bad and d4-bad fail with the stated residual"):
        for tag in ["a2", "a3", "a3-alt", "a4", "a4-alt", "d4", "c2", "sl2"]:
            all_pass(affine_suite(tag, 6))
        for tag in ["a3-bad", "d4-bad"]:
            serre = [r for r in affine_suite(tag, 6) if r.relation.startswith("S_")]
            assert any(r.status == FAIL for r in serre)
        p = PRESETS["a3-bad"]
        cd = preset(p.finite)
        coeff = commutator_coefficient(build_bracket_op(p.spec(), cd), algebra(cd), 2, (3, 1))
        assert coeff == (ONE - 2 * q**2 + q**4) / (ONE - q**2)


def test_criterion_3_sl2_chain(criterion):
    with criterion(3, "sl2 chain relation and the degree-3 affine sl2 Serre relation at height <= 8"):
        all_pass(sl2_chain_checks(8))


def test_criterion_4_surjection(criterion):
    with criterion(4, "Serre-operator factorization for n <= 8 and the sl2 x sl2 Serre elements"):
        all_pass(surjection_checks(8))


def test_criterion_5_prefundamental(criterion):
    with criterion(5, "prefundamental relation suites, intertwiner, character to height 8, loop-weights"):
        for n in (2, 3):
            all_pass(relation_suites(n, ONE, 6))
            all_pass(intertwiner_checks(n, ONE, 6))
            assert character_check(n, 8).passed
            all_pass(lweight_checks(n, ONE, 3))


def test_criterion_6_klr_engine(criterion):
    with criterion(6, "KLR relations for |alpha| <= 4, 200-product oracle, tau_omega00 identities"):
        for n in (2, 3):
            quiver = Quiver.type_a(n)
            for counts in product(range(5), repeat=n):
                if 0 < sum(counts) <= 4:
                    all_pass(relation_checks(KlrAlgebra(quiver, counts)))
        assert oracle_check(KlrAlgebra(Quiver.type_a(2), (2, 2)), products=200, seed=0).passed
        assert oracle_check(KlrAlgebra(Quiver.type_a(3), (1, 2, 1)), products=200, seed=1).passed
        all_pass(nil_s_checks())
        for n in (2, 3):
            all_pass(omega00_checks(n))


def test_criterion_7_splitting(criterion):
    with criterion(7, "splitting certificates for A2/A3 at degree <= 6; misconfigured fixture fails"):
        for n in (2, 3):
            beta = {i: 1 for i in range(1, n + 1)}
            for extra in (None, 1, n):
                alpha = dict(beta)
                if extra:
                    alpha[extra] += 1
                results = verify_splitting(m_alpha_spec(alpha, n), 6)
                none_fail(results)
                assert all(r.status in (PASS, SKIPPED_GUARD) for r in results)
        bad = verify_splitting(misconfigured_spec({1: 1, 2: 1}, 2), 6)
        assert any(r.status == FAIL for r in bad)


def test_criterion_8_cokernel_chain(criterion):
    with criterion(8, "cokernel chain graded-dimension identity and f_i injectivity for n = 2, 3 at degree <= 6"):
        for n in (2, 3):
            beta = {i: 1 for i in range(1, n + 1)}
            for extra in (None, 1, n):
                alpha = dict(beta)
                if extra:
                    alpha[extra] += 1
                all_pass(cokernel_checks(alpha, n, 6))


def test_criterion_9_natural_transformations(criterion):
    with criterion(9, "natural-transformation relations for n = 2, and n = 3 where guards allow"):
        all_pass(verify_nat_transformations(2, 6))
        res3 = verify_nat_transformations(3, 6)
        none_fail(res3)
        all_pass(sl2_checks(3))


def test_criterion_10_determinism(criterion, tmp_path, capsys):
    with criterion(10, "identical configurations give byte-identical JSON reports"):
        runs = [
            ["verify", "serre", "--type", "a3-bad", "--cutoff", "5"],
            ["verify", "boson", "--type", "A2,C2", "--cutoff", "4", "--samples", "10", "--seed", "5"],
            ["verify", "klr", "--type", "a2", "--alpha", "2,1", "--products", "50", "--seed", "9"],
            ["verify", "splitting", "--type", "a2", "--alpha", "1,1", "--degree", "4"],
        ]
        for k, argv in enumerate(runs):
            outs = []
            for jobs in ("1", "2"):
                path = tmp_path / f"r{k}-{jobs}.json"
                main([*argv, "--format", "json", "--jobs", jobs, "--no-cache", "-o", str(path)])
                outs.append(path.read_bytes())
            again = tmp_path / f"r{k}-again.json"
            main([*argv, "--format", "json", "--no-cache", "-o", str(again)])
            assert outs[0] == outs[1] == again.read_bytes()
            assert json.loads(outs[0])["results"]
        capsys.readouterr()
