import pytest

from qverify.prefund import (
    DescMonomial,
    act,
    char_my,
    char_quotient,
    character_check,
    desc_monomials,
    hitting_chain,
    verify_module_relations,
)
from qverify.qcoeff import ONE, Q, quantum_int

q = Q


class TestAction:
    def test_finite_generator(self):
        assert act(("E", 2), DescMonomial((1, 1))) == {(2, 1): q / (q**2 + 1)}

    def test_killed(self):
        assert act(("E", 1), DescMonomial((1, 1))) == {}

    def test_affine_generator(self):
        assert act(("E", 0), DescMonomial((2, 1))) == {(1, 0): q**-1 * quantum_int(2) / (ONE - q**2)}


class TestBasis:
    def test_desc_monomials_are_descending(self):
        for d in desc_monomials(3, 5):
            assert list(d.ks) == sorted(d.ks, reverse=True)

    def test_count_matches_quotient(self):
        # number of descending monomials of each height equals the quotient dimension in that height
        H = 6
        quot = char_quotient(3, H).coeffs
        for h in range(H + 1):
            n_desc = sum(1 for d in desc_monomials(3, H) if d.height == h)
            assert n_desc == sum(c for w, c in quot.items() if sum(w) == h)


class TestCharacter:
    def test_sl2(self):
        ch = char_my(1, 1, 5).coeffs
        assert all(c == 1 for c in ch.values())

    def test_sl3_closed_form(self):
        # 1 / ((1 - e^{a2}) (1 - e^{a1+a2})): coefficient of (a, b) is 1 exactly when a <= b
        ch = char_my(2, 2, 8).coeffs
        for (a, b), c in ch.items():
            assert c == (1 if a <= b else 0)

    def test_vertex_range(self):
        with pytest.raises(ValueError):
            char_my(2, 3, 4)

    @pytest.mark.parametrize("n,H", [(1, 8), (2, 8), (3, 6)])
    def test_quotient_matches(self, n, H):
        assert character_check(n, H).passed


class TestModule:
    def test_hitting_chain(self):
        seq, final = hitting_chain(DescMonomial((2, 1)))
        assert set(final) == {(0, 0)}
        assert not final[(0, 0)].is_zero()
        assert seq[0] == ("E", 0)

    @pytest.mark.parametrize("n", [1, 2])
    def test_relations(self, n):
        results = verify_module_relations(n, H=5)
        assert all(r.passed for r in results), [r.relation for r in results if not r.passed]
