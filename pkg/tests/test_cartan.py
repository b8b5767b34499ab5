import pytest

from qverify.cartan import from_type_tag, pairing, preset, product_type

FINITE = ["A(1)", "A(2)", "A(3)", "A(4)", "D4", "C2"]


class TestPresets:
    def test_a2_matrix_and_orientation(self):
        cd = preset("A(2)")
        assert cd.matrix == ((2, -1), (-1, 2))
        assert cd.m(1, 2) == 1 and cd.m(2, 1) == 0

    def test_affine_a2_extension(self):
        cd = preset("A_hat(2)")
        assert cd.labels == (0, 1, 2)
        assert cd.C(0, 1) == cd.C(0, 2) == -1
        assert cd.m(0, 1) == 1 and cd.m(0, 2) == 1

    def test_c2_pairing(self):
        cd = preset("C2")
        assert cd.pair(1, 2) == -2
        assert cd.pair(2, 2) == 4
        assert cd.pair(1, 1) == 2

    def test_simply_laced_pairing(self):
        cd = preset("A(2)")
        assert cd.pair(1, 1) == 2 and cd.pair(1, 2) == -1
        assert pairing(cd, (1, 0), (0, 1)) == -1

    @pytest.mark.parametrize("tag", FINITE)
    def test_symmetrized_matrix_is_symmetric(self, tag):
        cd = preset(tag)
        for i in cd.labels:
            for j in cd.labels:
                assert cd.d(i) * cd.C(i, j) == cd.d(j) * cd.C(j, i)

    @pytest.mark.parametrize("tag,count", [("A(1)", 1), ("A(2)", 3), ("A(3)", 6), ("A(4)", 10), ("D4", 12), ("C2", 4)])
    def test_positive_root_count(self, tag, count):
        assert len(preset(tag).positive_roots) == count

    @pytest.mark.parametrize("tag", FINITE)
    def test_affine_null_root(self, tag):
        # delta = alpha_0 + theta spans the kernel of the affine Cartan matrix
        cd = preset(tag)
        aff = cd.affine()
        delta = {0: 1, **{lab: c for lab, c in zip(cd.labels, cd.theta)}}
        for i in aff.labels:
            assert sum(aff.C(i, j) * delta[j] for j in aff.labels) == 0

    def test_tags(self):
        assert from_type_tag("a3").labels == (1, 2, 3)
        assert from_type_tag("sl2").labels == (1,)
        assert from_type_tag("d4").rank == 4
        with pytest.raises(ValueError):
            from_type_tag("e8")

    def test_product_type_is_block_diagonal(self):
        cd = product_type(preset("A(1)"), preset("A(1)"))
        assert cd.matrix == ((2, 0), (0, 2))
