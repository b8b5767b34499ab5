"""Symmetric-group combinatorics: inversion sets, weak order, joins, reduced words.

Permutations are tuples in one-line notation, ``p[x-1] = p(x)``, and compose
as functions, ``(p*r)(x) = p(r(x))``.  A word ``(i_1, ..., i_l)`` in the simple
transpositions evaluates to ``s_{i_1} * ... * s_{i_l}``; appending a letter
``i`` on the right swaps the entries in positions ``i`` and ``i+1`` of the
one-line notation.  Generator indices are 1-based.

The (left) inversion set of ``p`` is ``{(a, b) : a < b, p^{-1}(a) > p^{-1}(b)}``;
``p <= r`` in the right weak order iff ``r`` has a reduced word beginning with
one of ``p``, iff the inversion set of ``p`` is contained in that of ``r``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import cache
from itertools import permutations

__all__ = [
    "REDUCED_WORD_GUARD",
    "Permutation",
    "ReducedWord",
    "all_permutations",
    "apply_to_sequence",
    "chosen_word",
    "chosen_word_bruteforce",
    "compose",
    "from_word",
    "identity",
    "inverse",
    "inversion_set",
    "is_reduced",
    "join",
    "length",
    "leq_weak",
    "leq_weak_prefix",
    "lexmax_word",
    "lexmin_word",
    "reduced_words",
    "s",
]

Permutation = tuple  # tuple[int, ...], one-line notation
ReducedWord = tuple  # tuple[int, ...], 1-based generator indices

REDUCED_WORD_GUARD = 9


def identity(k: int) -> Permutation:
    return tuple(range(1, k + 1))


def s(i: int, k: int) -> Permutation:
    """The simple transposition ``s_i`` in ``S_k``."""
    if not 1 <= i < k:
        raise ValueError(f"s_{i} is not a generator of S_{k}")
    p = list(range(1, k + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def compose(p: Permutation, r: Permutation) -> Permutation:
    """``(p*r)(x) = p(r(x))``."""
    return tuple(p[r[x] - 1] for x in range(len(p)))


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for x, y in enumerate(p, start=1):
        out[y - 1] = x
    return tuple(out)


def _rmul_s(p: Permutation, i: int) -> Permutation:
    lst = list(p)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def from_word(word: Iterable[int], k: int) -> Permutation:
    p = list(range(1, k + 1))
    for i in word:
        if not 1 <= i < k:
            raise ValueError(f"letter {i} out of range for S_{k}")
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def inversion_set(p: Permutation) -> frozenset[tuple[int, int]]:
    """Pairs of values ``a < b`` appearing in decreasing order in ``p``."""
    out = set()
    k = len(p)
    for x in range(k):
        for y in range(x + 1, k):
            a, b = p[x], p[y]
            if a > b:
                out.add((b, a))
    return frozenset(out)


def length(p: Permutation) -> int:
    k = len(p)
    return sum(1 for x in range(k) for y in range(x + 1, k) if p[x] > p[y])


def is_reduced(word: Sequence[int], k: int) -> bool:
    return length(from_word(word, k)) == len(word)


def leq_weak(a: Permutation, b: Permutation) -> bool:
    """Right weak order via inversion-set containment."""
    if len(a) != len(b):
        raise ValueError("permutations of different sizes")
    return inversion_set(a) <= inversion_set(b)


def leq_weak_prefix(a: Permutation, b: Permutation) -> bool:
    """Right weak order from the prefix definition (search upward from ``a``)."""
    if len(a) != len(b):
        raise ValueError("permutations of different sizes")
    target = length(b)
    frontier = {a}
    for _ in range(length(a), target):
        frontier = set(_upper_covers_iter(frontier))
    return b in frontier


def _upper_covers(p: Permutation) -> list[Permutation]:
    return [_rmul_s(p, i) for i in range(1, len(p)) if p[i - 1] < p[i]]


def _upper_covers_iter(ps: Iterable[Permutation]) -> Iterable[Permutation]:
    for p in ps:
        yield from _upper_covers(p)


def join(a: Permutation, b: Permutation) -> Permutation:
    """Least upper bound in the right weak order.

    Breadth-first search upward from ``a``: the first element (in increasing
    length) lying above ``b`` is the join, because the join is below every
    upper bound and hence has the smallest length among them.
    """
    if len(a) != len(b):
        raise ValueError("permutations of different sizes")
    inv_b = inversion_set(b)
    seen = {a}
    layer = [a]
    while layer:
        hits = [p for p in layer if inv_b <= inversion_set(p)]
        if hits:
            if len(set(hits)) != 1:
                raise AssertionError("weak order join is not unique")
            return hits[0]
        nxt = []
        for p in layer:
            for r in _upper_covers(p):
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        layer = nxt
    raise AssertionError("no upper bound found")  # unreachable: the long element bounds all


@cache
def _reduced_words_cached(p: Permutation) -> tuple[ReducedWord, ...]:
    if all(p[x] == x + 1 for x in range(len(p))):
        return ((),)
    out: list[ReducedWord] = []
    for i in range(1, len(p)):
        if p[i - 1] > p[i]:  # right descent: l(p s_i) < l(p)
            for w in _reduced_words_cached(_rmul_s(p, i)):
                out.append(w + (i,))
    return tuple(sorted(out))


def reduced_words(p: Permutation) -> list[ReducedWord]:
    """All reduced words of ``p``, sorted lexicographically."""
    if len(p) > REDUCED_WORD_GUARD:
        raise ValueError(f"reduced-word enumeration is limited to S_k with k <= {REDUCED_WORD_GUARD}")
    return list(_reduced_words_cached(tuple(p)))


@cache
def lexmin_word(p: Permutation) -> ReducedWord:
    """Lexicographically smallest reduced word, built greedily from the left."""
    word: list[int] = []
    cur = tuple(p)
    while True:
        for i in range(1, len(cur)):
            # s_i is a left descent of cur iff i+1 appears before i
            if cur.index(i + 1) < cur.index(i):
                word.append(i)
                cur = compose(s(i, len(cur)), cur)
                break
        else:
            return tuple(word)


@cache
def lexmax_word(p: Permutation) -> ReducedWord:
    """Lexicographically largest reduced word, built greedily from the left."""
    word: list[int] = []
    cur = tuple(p)
    while True:
        for i in range(len(cur) - 1, 0, -1):
            if cur.index(i + 1) < cur.index(i):
                word.append(i)
                cur = compose(s(i, len(cur)), cur)
                break
        else:
            return tuple(word)


def chosen_word(p: Permutation, S: Iterable[Permutation]) -> ReducedWord:
    """The chosen reduced presentation of ``p`` relative to the generating set ``S``.

    If no element of ``S`` lies below ``p`` the lexicographically minimal
    reduced word is returned; otherwise the lexicographically maximal reduced
    word that begins with a reduced word of some element of ``S`` below ``p``.

    A word beginning with a reduced word of ``g`` is a concatenation
    ``u + w`` with ``u`` reduced for ``g`` and ``w`` reduced for ``g^{-1} p``,
    so the maximum over such words is ``lexmax(g) + lexmax(g^{-1} p)``
    maximized over ``g``.
    """
    p = tuple(p)
    below = [tuple(g) for g in S if leq_weak(g, p)]
    if not below:
        return lexmin_word(p)
    return max(lexmax_word(g) + lexmax_word(compose(inverse(g), p)) for g in below)


def chosen_word_bruteforce(p: Permutation, S: Iterable[Permutation]) -> ReducedWord:
    """The same policy evaluated by enumerating every reduced word of ``p``."""
    p = tuple(p)
    below = [tuple(g) for g in S if leq_weak(g, p)]
    words = reduced_words(p)
    if not below:
        return words[0]
    k = len(p)
    prefixed = [w for w in words if any(from_word(w[: length(g)], k) == g for g in below)]
    return max(prefixed)


def all_permutations(k: int) -> list[Permutation]:
    return [tuple(p) for p in permutations(range(1, k + 1))]


def apply_to_sequence(word: Sequence[int], seq: Sequence) -> tuple:
    """Act on a sequence by the word, letters applied right to left as position swaps.

    ``apply_to_sequence((i_1,...,i_l), v)`` is ``s_{i_1}(...s_{i_l}(v))`` where
    ``s_i`` swaps the entries in positions ``i`` and ``i+1``.
    """
    out = list(seq)
    for i in reversed(word):
        out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)
