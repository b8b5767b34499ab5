from itertools import permutations

import pytest

from qverify.symgrp import (
    all_permutations,
    apply_to_sequence,
    chosen_word,
    chosen_word_bruteforce,
    compose,
    from_word,
    identity,
    inverse,
    inversion_set,
    is_reduced,
    join,
    length,
    leq_weak,
    leq_weak_prefix,
    lexmax_word,
    lexmin_word,
    reduced_words,
    s,
)


def bfs_reduced_words(p):
    """All reduced words, by extending prefixes one letter at a time."""
    k = len(p)
    target = length(p)
    out = []

    def rec(word, cur):
        if len(word) == target:
            if cur == p:
                out.append(tuple(word))
            return
        for i in range(1, k):
            nxt = compose(cur, s(i, k))
            if length(nxt) == len(word) + 1 and inversion_set(nxt) <= inversion_set(p):
                rec(word + [i], nxt)

    rec([], identity(k))
    return sorted(out)


def syt_count(shape):
    """Hook length formula."""
    from math import factorial

    n = sum(shape)
    hooks = 1
    for r, row in enumerate(shape):
        for c in range(row):
            arm = row - c - 1
            leg = sum(1 for rr in shape[r + 1:] if rr > c)
            hooks *= arm + leg + 1
    return factorial(n) // hooks


class TestInversions:
    def test_examples(self):
        assert inversion_set(s(1, 3)) == {(1, 2)}
        assert inversion_set(identity(3)) == set()
        assert inversion_set(from_word((1, 2, 1), 3)) == {(1, 2), (1, 3), (2, 3)}

    def test_length_is_inversion_count(self):
        for p in all_permutations(4):
            assert length(p) == len(inversion_set(p))
            assert length(p) == sum(1 for a in range(4) for b in range(a + 1, 4) if p[a] > p[b])


class TestWeakOrder:
    def test_examples(self):
        assert leq_weak(s(1, 3), from_word((1, 2), 3))
        assert not leq_weak(s(1, 3), s(2, 3))

    def test_matches_prefix_oracle_on_s4(self):
        perms = all_permutations(4)
        for a in perms:
            for b in perms:
                assert leq_weak(a, b) == leq_weak_prefix(a, b)

    def test_join_examples(self):
        assert join(s(1, 4), s(3, 4)) == from_word((1, 3), 4)
        assert join(s(1, 3), s(2, 3)) == from_word((1, 2, 1), 3)
        a = from_word((2, 1), 3)
        assert join(a, identity(3)) == a

    def test_join_is_least_upper_bound_on_s4(self):
        perms = all_permutations(4)
        for a in perms[::3]:
            for b in perms[::2]:
                j = join(a, b)
                assert leq_weak(a, j) and leq_weak(b, j)
                for c in perms:
                    if leq_weak(a, c) and leq_weak(b, c):
                        assert leq_weak(j, c)


class TestReducedWords:
    def test_long_element_s3(self):
        assert set(reduced_words(from_word((1, 2, 1), 3))) == {(1, 2, 1), (2, 1, 2)}

    def test_identity(self):
        assert reduced_words(identity(3)) == [()]

    def test_long_element_s4_count(self):
        w0 = tuple(range(4, 0, -1))
        assert len(reduced_words(w0)) == 16 == syt_count((3, 2, 1))

    def test_against_bfs(self):
        for p in all_permutations(4):
            assert sorted(reduced_words(p)) == bfs_reduced_words(p)

    def test_lex_extremes(self):
        for p in all_permutations(4):
            words = sorted(reduced_words(p))
            assert lexmin_word(p) == words[0]
            assert lexmax_word(p) == words[-1]

    def test_is_reduced(self):
        assert is_reduced((1, 2, 1), 3)
        assert not is_reduced((1, 1), 3)

    def test_sequence_action(self):
        # the strand starting at x ends at p(x)
        p = from_word((1, 2), 3)
        seq = ("a", "b", "c")
        out = apply_to_sequence((1, 2), seq)
        for x in range(3):
            assert out[p[x] - 1] == seq[x]

    def test_inverse(self):
        for p in all_permutations(4):
            assert compose(p, inverse(p)) == identity(4)


class TestChosenWords:
    def test_word_starting_with_generator(self):
        # s_2 is a prefix of s_2 s_1 only; the policy must start with 2
        p = from_word((2, 1), 3)
        w = chosen_word(p, [s(2, 3)])
        assert w[0] == 2 and from_word(w, 3) == p

    def test_other_composition_reading(self):
        # s_1 s_2 is not above s_2 in the weak order, so no constraint applies
        p = from_word((1, 2), 3)
        assert not leq_weak(s(2, 3), p)
        assert chosen_word(p, [s(2, 3)]) == lexmin_word(p)

    def test_identity(self):
        assert chosen_word(identity(3), [s(1, 3)]) == ()

    @pytest.mark.parametrize("gens", [[(1,)], [(3,)], [(2,), (3,)], [(1, 2)], [(3, 2)], [(1,), (3,)]])
    def test_exhaustive_s4(self, gens):
        S = [from_word(g, 4) for g in gens]
        for p in all_permutations(4):
            w = chosen_word(p, S)
            assert is_reduced(w, 4) and from_word(w, 4) == p
            assert w == chosen_word_bruteforce(p, S)
            if any(leq_weak(g, p) for g in S):
                assert any(w[: length(g)] in [tuple(x) for x in reduced_words(g)] for g in S)


def test_all_permutations_count():
    assert len(all_permutations(4)) == 24
    assert set(all_permutations(3)) == set(permutations(range(1, 4)))
