"""The positive part ``U_q^+(g)``: free words modulo the radical of the Lusztig form.

Elements are linear combinations of words in the vertex labels (a word
``(i_1, ..., i_k)`` is the monomial ``E_{i_1} ... E_{i_k}``).  Two elements are
equal in ``U_q^+`` iff their difference pairs to zero with every monomial of
the same weight; the Lusztig form is computed through the recursion
``(x, y E_i) = (E_i^*(x), y)``, ``(1, 1) = 1``, where ``E_i^*`` is the
twisted derivation

    E_i^*(A B) = q^{-(alpha_i, wt B)} E_i^*(A) B + A E_i^*(B),
    E_i^*(E_j) = delta_ij / (1 - q_i^2).

For each weight a basis of standard words is selected greedily in
lexicographic order from the words ``b E_i`` with ``b`` standard of lower
weight (standard words of an admissible order are closed under prefixes).
An element is zero iff its pairing vector against the standard words
vanishes.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from functools import cache

from .cartan import CartanData, Weight, preset, product_type
from .linalg import RowEchelon, inverse, nullspace
from .qcoeff import ONE, ZERO, QScalar, quantum_binom
from .report import CheckResult, check

__all__ = [
    "CutoffExceeded",
    "FreeElement",
    "GramTable",
    "UqAlgebra",
    "Word",
    "algebra",
    "bar_involution",
    "kostant_count",
    "serre_element",
    "serre_factorization_check",
    "serre_operator",
    "sl2_times_sl2",
    "surjection_checks",
    "weights_up_to",
    "words_of_weight",
]

Word = tuple  # tuple[int, ...]
Terms = dict  # dict[Word, QScalar]

DEFAULT_CUTOFF = 12


class CutoffExceeded(ValueError):
    """The requested weight is above the configured degree cutoff."""


# --------------------------------------------------------------- free algebra
def _add_into(acc: Terms, word: Word, c: QScalar) -> None:
    v = acc.get(word)
    v = c if v is None else v + c
    if v.is_zero():
        acc.pop(word, None)
    else:
        acc[word] = v


class FreeElement:
    """A finite linear combination of words with :class:`QScalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, QScalar] | None = None) -> None:
        self.terms: Terms = {}
        if terms:
            for w, c in terms.items():
                c = QScalar.coerce(c)
                if not c.is_zero():
                    self.terms[tuple(w)] = c

    @classmethod
    def word(cls, *letters: int) -> FreeElement:
        return cls({tuple(letters): ONE})

    @classmethod
    def one(cls) -> FreeElement:
        return cls({(): ONE})

    @classmethod
    def _wrap(cls, terms: Terms) -> FreeElement:
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def is_free_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: FreeElement) -> FreeElement:
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return FreeElement._wrap(acc)

    def __neg__(self) -> FreeElement:
        return FreeElement._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: FreeElement) -> FreeElement:
        return self + (-other)

    def scale(self, c: QScalar | int) -> FreeElement:
        c = QScalar.coerce(c)
        if c.is_zero():
            return FreeElement()
        return FreeElement._wrap({w: v * c for w, v in self.terms.items()})

    def __rmul__(self, c: QScalar | int) -> FreeElement:
        return self.scale(c)

    def __mul__(self, other: FreeElement | QScalar | int) -> FreeElement:
        if not isinstance(other, FreeElement):
            return self.scale(other)
        acc: Terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(acc, w1 + w2, c1 * c2)
        return FreeElement._wrap(acc)

    def __pow__(self, e: int) -> FreeElement:
        out = FreeElement.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:  # pragma: no cover - elements are not used as keys
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, f: Callable[[QScalar], QScalar]) -> FreeElement:
        return FreeElement({w: f(c) for w, c in self.terms.items()})

    def weights(self, cd: CartanData) -> set[Weight]:
        return {cd.weight_of_word(w) for w in self.terms}

    def homogeneous_parts(self, cd: CartanData) -> dict[Weight, FreeElement]:
        parts: dict[Weight, Terms] = defaultdict(dict)
        for w, c in self.terms.items():
            parts[cd.weight_of_word(w)][w] = c
        return {wt: FreeElement._wrap(t) for wt, t in parts.items()}

    def serialize(self) -> list[list]:
        """Sparse term list ``[[word, coeff], ...]`` sorted by word."""
        return [[list(w), c.serialize()] for w, c in sorted(self.terms.items())]

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            mono = "".join(f"E{i}" for i in w) or "1"
            parts.append(f"({c.pretty()})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FreeElement({self.pretty()})"


def bar_involution(x: FreeElement) -> FreeElement:
    """Apply ``q -> q^{-1}`` to every coefficient; words are fixed."""
    return x.map_coeffs(lambda c: c.bar())


# --------------------------------------------------------------- combinatorics
def words_of_weight(cd: CartanData, alpha: Weight) -> list[Word]:
    """All words of weight ``alpha``, in lexicographic order."""
    labels = cd.labels
    out: list[Word] = []
    counts = list(alpha)

    def rec(prefix: list[int], remaining: int) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for pos, lab in enumerate(labels):
            if counts[pos]:
                counts[pos] -= 1
                prefix.append(lab)
                rec(prefix, remaining - 1)
                prefix.pop()
                counts[pos] += 1

    rec([], sum(alpha))
    return out


def weights_up_to(cd: CartanData, height: int, min_height: int = 0) -> list[Weight]:
    """All weights with ``min_height <= |alpha| <= height``, by height then lexicographically."""
    out = []
    for h in range(min_height, height + 1):
        out.extend(_compositions(h, cd.rank))
    return out


def _compositions(h: int, k: int) -> list[Weight]:
    if k == 0:
        return [()] if h == 0 else []
    out = []
    for first in range(h, -1, -1):
        for rest in _compositions(h - first, k - 1):
            out.append((first,) + rest)
    return sorted(out, reverse=True)


def kostant_count(cd: CartanData, alpha: Weight) -> int:
    """Number of ways to write ``alpha`` as an unordered sum of positive roots."""
    roots = cd.positive_roots

    @cache
    def count(rem: Weight, start: int) -> int:
        if not any(rem):
            return 1
        total = 0
        for r in range(start, len(roots)):
            root = roots[r]
            if all(root[a] <= rem[a] for a in range(len(rem))):
                total += count(tuple(rem[a] - root[a] for a in range(len(rem))), r)
        return total

    return count(tuple(alpha), 0)


# ------------------------------------------------------------------- algebra
@dataclass
class GramTable:
    """Per-weight data: words, standard words, Gram matrix and kernel basis."""

    weight: Weight
    words: list[Word]
    basis: list[Word]
    gram: list[list[QScalar]]  # pairing of basis words among themselves
    kernel: list[dict[Word, QScalar]]  # one relation per non-standard word

    @property
    def kernel_dim(self) -> int:
        return len(self.words) - len(self.basis)


class UqAlgebra:
    """Computational model of ``U_q^+`` for a Cartan datum, with caches.

    All caches are keyed by immutable data and written once per key; the
    object is safe to share read-only after warm-up.
    """

    def __init__(self, cd: CartanData, cutoff: int = DEFAULT_CUTOFF) -> None:
        self.cd = cd
        self.cutoff = cutoff
        self._estar: dict[tuple[int, Word], Terms] = {}
        self._basis: dict[Weight, list[Word]] = {}
        self._basis_index: dict[Weight, dict[Word, int]] = {}
        self._pairvec: dict[Word, tuple[QScalar, ...]] = {}
        self._gram_inv: dict[Weight, list[list[QScalar]]] = {}
        self._unit = {i: ONE / (ONE - QScalar.qpow(2 * cd.d(i))) for i in cd.labels}
        self._twist = {
            (i, j): QScalar.qpow(-cd.pair(i, j)) for i in cd.labels for j in cd.labels
        }

    # ---------------------------------------------------------- derivation
    def estar_word(self, i: int, word: Word) -> Terms:
        """``E_i^*`` of a single word, as a term dictionary (memoized)."""
        key = (i, word)
        hit = self._estar.get(key)
        if hit is not None:
            return hit
        out: Terms = {}
        cd = self.cd
        # walk from the right, accumulating the twist q^{-(alpha_i, wt of suffix)}
        exp = 0
        unit = self._unit[i]
        for p in range(len(word) - 1, -1, -1):
            if word[p] == i:
                _add_into(out, word[:p] + word[p + 1 :], unit * QScalar.qpow(-exp))
            exp += cd.pair(i, word[p])
        self._estar[key] = out
        return out

    def estar(self, i: int, x: FreeElement) -> FreeElement:
        acc: Terms = {}
        for w, c in x.terms.items():
            for w2, c2 in self.estar_word(i, w).items():
                _add_into(acc, w2, c * c2)
        return FreeElement._wrap(acc)

    def rmul(self, i: int, x: FreeElement) -> FreeElement:
        return FreeElement._wrap({w + (i,): c for w, c in x.terms.items()})

    # ----------------------------------------------------------------- form
    def _pair_word(self, x: Terms, y_word: Word) -> QScalar:
        """``(x, y_word)`` by peeling letters off the right of ``y_word``."""
        cur = x
        for i in reversed(y_word):
            nxt: Terms = {}
            for w, c in cur.items():
                for w2, c2 in self.estar_word(i, w).items():
                    _add_into(nxt, w2, c * c2)
            cur = nxt
            if not cur:
                return ZERO
        return cur.get((), ZERO)

    def lusztig_form(self, x: FreeElement, y: FreeElement) -> QScalar:
        """The Lusztig form; unequal weights pair to zero."""
        out = ZERO
        for wy, cy in y.terms.items():
            sub = {w: c for w, c in x.terms.items() if len(w) == len(wy)}
            if sub:
                out = out + cy * self._pair_word(sub, wy)
        return out

    # ------------------------------------------------------ standard words
    def check_cutoff(self, alpha: Weight) -> None:
        if sum(alpha) > self.cutoff:
            raise CutoffExceeded(f"weight {alpha} has height {sum(alpha)} > cutoff {self.cutoff}")

    def basis(self, alpha: Weight) -> list[Word]:
        """Lexicographically first standard words spanning ``U_q^+`` at ``alpha``."""
        alpha = tuple(alpha)
        hit = self._basis.get(alpha)
        if hit is not None:
            return hit
        self.check_cutoff(alpha)
        cd = self.cd
        if not any(alpha):
            self._set_basis(alpha, [()])
            return self._basis[alpha]
        cands: list[Word] = []
        for pos, lab in enumerate(cd.labels):
            if alpha[pos]:
                lower = list(alpha)
                lower[pos] -= 1
                cands.extend(b + (lab,) for b in self.basis(tuple(lower)))
        cands.sort()
        # pairing of each candidate against all candidates b'E_i
        rows = [self._pair_against(c, cands) for c in cands]
        ech = RowEchelon(len(cands))
        chosen = [c for c, row in zip(cands, rows) if ech.add(row)]
        self._set_basis(alpha, chosen)
        return chosen

    def _set_basis(self, alpha: Weight, words: list[Word]) -> None:
        self._basis[alpha] = words
        self._basis_index[alpha] = {w: k for k, w in enumerate(words)}

    def _pair_against(self, word: Word, targets: Sequence[Word]) -> list[QScalar]:
        """Pairings ``(word, t)`` for targets ``t = b E_i`` with ``b`` standard."""
        out = []
        for t in targets:
            i, b = t[-1], t[:-1]
            wt = self.cd.weight_of_word(b)
            idx = self._basis_index[wt][b]
            val = ZERO
            for w2, c2 in self.estar_word(i, word).items():
                val = val + c2 * self.pair_vector(w2)[idx]
            out.append(val)
        return out

    def pair_vector(self, word: Word) -> tuple[QScalar, ...]:
        """Pairings of ``word`` with the standard words of its weight (memoized)."""
        hit = self._pairvec.get(word)
        if hit is not None:
            return hit
        if not word:
            vec: tuple[QScalar, ...] = (ONE,)
        else:
            alpha = self.cd.weight_of_word(word)
            vec = tuple(self._pair_against(word, self.basis(alpha)))
        self._pairvec[word] = vec
        return vec

    def pair_vector_of(self, x: FreeElement, alpha: Weight) -> list[QScalar]:
        basis = self.basis(alpha)
        acc = [ZERO] * len(basis)
        for w, c in x.terms.items():
            pv = self.pair_vector(w)
            for k, v in enumerate(pv):
                if not v.is_zero():
                    acc[k] = acc[k] + c * v
        return acc

    def dim(self, alpha: Weight) -> int:
        return len(self.basis(alpha))

    # --------------------------------------------------------- zero & form
    def is_zero(self, x: FreeElement) -> bool:
        """True iff ``x`` vanishes in ``U_q^+`` (every homogeneous part in the radical)."""
        for alpha, part in x.homogeneous_parts(self.cd).items():
            if any(not v.is_zero() for v in self.pair_vector_of(part, alpha)):
                return False
        return True

    def equal(self, x: FreeElement, y: FreeElement) -> bool:
        return self.is_zero(x - y)

    def gram_matrix(self, alpha: Weight) -> list[list[QScalar]]:
        basis = self.basis(alpha)
        return [list(self.pair_vector(b)) for b in basis]

    def coordinates(self, x: FreeElement, alpha: Weight) -> list[QScalar]:
        """Coordinates of the weight-``alpha`` part of ``x`` in the standard-word basis."""
        alpha = tuple(alpha)
        inv = self._gram_inv.get(alpha)
        if inv is None:
            inv = inverse(self.gram_matrix(alpha))
            self._gram_inv[alpha] = inv
        part = FreeElement._wrap({w: c for w, c in x.terms.items() if self.cd.weight_of_word(w) == alpha})
        pv = self.pair_vector_of(part, alpha)
        n = len(pv)
        out = []
        for r in range(n):
            acc = ZERO
            for c in range(n):
                if not pv[c].is_zero() and not inv[r][c].is_zero():
                    acc = acc + inv[r][c] * pv[c]
            out.append(acc)
        return out

    def normal_form(self, x: FreeElement) -> FreeElement:
        """The unique combination of standard words equal to ``x`` in ``U_q^+``."""
        acc: Terms = {}
        for alpha in sorted(x.homogeneous_parts(self.cd)):
            coords = self.coordinates(x, alpha)
            for b, c in zip(self.basis(alpha), coords):
                if not c.is_zero():
                    acc[b] = c
        return FreeElement._wrap(acc)

    def gram_table(self, alpha: Weight) -> GramTable:
        """Full table at ``alpha``: all words, standard words, Gram matrix, kernel.

        The kernel is computed by fraction-free elimination on the pairing
        matrix of all words against the standard words.
        """
        alpha = tuple(alpha)
        words = words_of_weight(self.cd, alpha)
        basis = self.basis(alpha)
        # columns: words; rows: standard words. Kernel vectors y satisfy sum_w y_w (w, b) = 0.
        rows = [[self.pair_vector(w)[k] for w in words] for k in range(len(basis))]
        ker = nullspace(rows, len(words)) if words else []
        kernel = [{w: c for w, c in zip(words, vec) if not c.is_zero()} for vec in ker]
        return GramTable(alpha, words, basis, self.gram_matrix(alpha), kernel)


@cache
def _algebra_cached(cd: CartanData, cutoff: int) -> UqAlgebra:
    return UqAlgebra(cd, cutoff)


def algebra(cd: CartanData | str, cutoff: int = DEFAULT_CUTOFF) -> UqAlgebra:
    """Shared :class:`UqAlgebra` for a Cartan datum (or preset tag)."""
    if isinstance(cd, str):
        cd = preset(cd)
    return _algebra_cached(cd, cutoff)


# ------------------------------------------------------------ Serre operators
def serre_operator(x, y, m: int, d: int = 1, one=None):
    """``S_{q_i,m}(x, y) = sum_k binom(m,k)_{q_i} (-1)^k x^k y x^{m-k}`` with ``q_i = q^d``.

    ``x`` and ``y`` may be any objects supporting ``+``, ``*`` and scaling by
    :class:`QScalar` (free elements or operators); ``one`` is the unit used
    for ``x**0``.
    """
    def power(z, e):
        out = one
        for _ in range(e):
            out = z if out is None else out * z
        return out

    total = None
    for k in range(m + 1):
        coeff = quantum_binom(m, k, d) * (-1 if k % 2 else 1)
        left = power(x, k)
        right = power(x, m - k)
        term = y
        if left is not None:
            term = left * term
        if right is not None:
            term = term * right
        term = term.scale(coeff) if hasattr(term, "scale") else coeff * term
        total = term if total is None else total + term
    return total


def serre_element(cd: CartanData, i: int, j: int) -> FreeElement:
    """The defining Serre element ``S_{q_i, 1-C_ij}(E_i, E_j)`` in the free algebra."""
    return serre_operator(
        FreeElement.word(i), FreeElement.word(j), 1 - cd.C(i, j), cd.d(i), one=FreeElement.one()
    )


def serre_factorization_check(n: int) -> bool:
    """Quantum binomial theorem in two commuting variables ``L, R``.

    Verifies ``sum_i binom(n,i)_q (-1)^i L^i R^{n-i} = prod_{i<n} (R - q^{2i-(n-1)} L)``
    and that this product divides the degree ``n+2`` product.
    """
    if n > 12:
        raise ValueError("factorization check is limited to n <= 12")

    def poly_mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for (ea, fa), ca in a.items():
            for (eb, fb), cb in b.items():
                key = (ea + eb, fa + fb)  # (power of L, power of R)
                v = out.get(key, ZERO) + ca * cb
                if v.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = v
        return out

    def factors(m: int) -> list[dict]:
        return [{(0, 1): ONE, (1, 0): -QScalar.qpow(2 * i - (m - 1))} for i in range(m)]

    def prod(fs: list[dict]) -> dict:
        out = {(0, 0): ONE}
        for f in fs:
            out = poly_mul(out, f)
        return out

    lhs = {}
    for i in range(n + 1):
        c = quantum_binom(n, i) * (-1 if i % 2 else 1)
        lhs[(i, n - i)] = c
    lhs = {k: v for k, v in lhs.items() if not v.is_zero()}
    if lhs != prod(factors(n)):
        return False
    # the roots q^{2i-(n-1)} of the degree-n product are roots of the degree-(n+2) one
    big = {QScalar.qpow(2 * i - (n + 1)) for i in range(n + 2)}
    small = {QScalar.qpow(2 * i - (n - 1)) for i in range(n)}
    if not small <= big:
        return False
    # explicit cofactor: the two extra roots q^{-(n+1)} and q^{n+1}
    extra = [
        {(0, 1): ONE, (1, 0): -QScalar.qpow(-(n + 1))},
        {(0, 1): ONE, (1, 0): -QScalar.qpow(n + 1)},
    ]
    return poly_mul(prod(factors(n)), prod(extra)) == prod(factors(n + 2))


def sl2_times_sl2() -> CartanData:
    return product_type(preset("A(1)"), preset("A(1)"))


SURJECTION_ANCHOR = "U_q^+(sl_2 x sl_2) surjects: S_{q,3}(E_1,E_2) = 0 while S_{q,2}(E_1,E_2) != 0"
FACTORIZATION_ANCHOR = "quantum binomial theorem: the Serre operator factors as prod (R - q^{2i-(n-1)} L)"


def surjection_checks(max_n: int = 8) -> list[CheckResult]:
    """Serre-operator factorization for ``n <= max_n`` and the two Serre elements in ``U_q^+(sl_2 x sl_2)``."""
    out = [
        check(f"Serre operator factorization, n = {n}", FACTORIZATION_ANCHOR, serre_factorization_check(n), None, n=n)
        for n in range(1, max_n + 1)
    ]
    uq = algebra(sl2_times_sl2())
    e1, e2 = FreeElement.word(1), FreeElement.word(2)
    s3 = serre_operator(e1, e2, 3, one=FreeElement.one())
    out.append(check("S_{q,3}(E1,E2) = 0 in U_q^+(sl2 x sl2)", SURJECTION_ANCHOR, uq.is_zero(s3),
                     uq.normal_form(s3).serialize()))
    s2 = serre_operator(e1, e2, 2, one=FreeElement.one())
    coeff = 2 - QScalar.qpow(1) - QScalar.qpow(-1)
    want = FreeElement.word(1, 1, 2).scale(coeff)
    out.append(check("S_{q,2}(E1,E2) = (2-q-q^-1) E1^2 E2 != 0 in U_q^+(sl2 x sl2)", SURJECTION_ANCHOR,
                     uq.equal(s2, want) and not uq.is_zero(s2),
                     uq.normal_form(s2).serialize(), coefficient=coeff.serialize(),
                     normal_form=uq.normal_form(s2).serialize()))
    return out
