"""KLR (quiver Hecke) algebras: PBW normal forms and the polynomial representation.

An element of ``H_alpha`` is stored in the PBW basis ``x^a tau_w 1_u``: a map
from ``(permutation, source coloring u)`` to the polynomial standing to the
left of ``tau_w``, where ``w`` is the chosen reduced word of the permutation.
Polynomials are integral (``flint.fmpz_mpoly`` in ``x1..xk``); every
structure constant of the defining relations is an integer.

Conventions.

* ``tau_i 1_v = 1_{s_i v} tau_i``; the coloring on the right of a term is its
  *source*, the one on the left its *target*.
* ``Q_ab(u, v) = (v - u)^{m_ab} (u - v)^{m_ba}`` for ``a != b`` and ``0`` for
  ``a == b``, with ``m_ab`` the number of arrows ``a -> b``.
* Grading: ``deg x_i = 2``, ``deg tau_i 1_v = -2`` for equal colors and
  ``m_ab + m_ba`` otherwise.
* Polynomial representation on ``⊕_v K[x]``: ``tau_i 1_v`` acts by
  ``(s_i - 1)/(x_i - x_{i+1})`` for equal colors and by
  ``P_{v_i v_{i+1}}(x_{i+1}, x_i) s_i`` otherwise, with
  ``P_ab(u, v) = (v - u)^{m_ab}`` so that ``Q_ab(u,v) = P_ab(u,v) P_ba(v,u)``.

Multiplication rewrites into normal form by pushing polynomials left with
``tau_i f = s_i(f) tau_i + [v_i = v_{i+1}] d_i(f)``, cancelling ``tau_i^2``
with ``Q``, and converting reduced words to chosen ones by an explicit
sequence of commutation and braid moves; every braid move contributes the
correction term of the cubic relation, computed recursively on shorter words.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from functools import cache
from itertools import permutations

import flint

from .cartan import CartanData
from .report import CheckResult, check
from .symgrp import (
    Permutation,
    ReducedWord,
    all_permutations,
    apply_to_sequence,
    chosen_word,
    from_word,
    identity,
    inverse,
    is_reduced,
    lexmin_word,
    reduced_words,
    s,
)

__all__ = [
    "MAX_STRANDS",
    "OMEGA_ANCHOR",
    "ORACLE_ANCHOR",
    "PBW_ANCHOR",
    "RELATIONS_ANCHOR",
    "ChosenWords",
    "KlrAlgebra",
    "KlrElement",
    "PolyRepElement",
    "Quiver",
    "StrandGuard",
    "associativity_check",
    "demazure_product_formula",
    "graded_dimension_check",
    "klr_mul",
    "klr_suite",
    "nil_s",
    "nil_s_checks",
    "obstruction_checks",
    "obstruction_set",
    "omega00_checks",
    "omega00_perm",
    "omega00_word",
    "oracle_check",
    "pbw_independence_check",
    "poly_rep",
    "polyrep_relation_checks",
    "random_element",
    "relation_checks",
    "tau_omega00",
]

MAX_STRANDS = 6

RELATIONS_ANCHOR = "KLR relations (1)-(8) hold in the PBW normal form"
ORACLE_ANCHOR = "normal-form products agree with the faithful polynomial representation"
PBW_ANCHOR = "x^a tau_w 1_v over chosen reduced words is a basis"
NILS_ANCHOR = "s_i = (x_i - x_{i+1}) tau_i + 1 satisfies the nil-Hecke symmetric-group identities"
OBSTRUCTION_ANCHOR = "empty obstruction set implies the braid relations hold for sigma at 1_v"
OMEGA_ANCHOR = "tau_omega00(1) = 0, tau_omega00(x_1) = -1, tau_omega00^2 = 0"


class StrandGuard(ValueError):
    """The requested algebra exceeds the strand limit."""


# ------------------------------------------------------------------- quivers
class Quiver:
    """A quiver without loops: vertices and arrow multiplicities ``m[(a, b)]``."""

    def __init__(self, vertices: Iterable, arrows: Mapping[tuple, int] = ()):
        self.vertices = tuple(vertices)
        self._m = {}
        for (a, b), c in dict(arrows).items():
            if a == b:
                raise ValueError("quivers here have no loops")
            if a not in self.vertices or b not in self.vertices:
                raise ValueError(f"arrow {a}->{b} leaves the vertex set")
            if c:
                self._m[(a, b)] = int(c)

    def m(self, a, b) -> int:
        return self._m.get((a, b), 0)

    def adjacent(self, a, b) -> bool:
        return a != b and self.m(a, b) + self.m(b, a) > 0

    def crossing_degree(self, a, b) -> int:
        return -2 if a == b else self.m(a, b) + self.m(b, a)

    def with_arrow(self, a, b, count: int = 1) -> Quiver:
        arrows = dict(self._m)
        arrows[(a, b)] = arrows.get((a, b), 0) + count
        return Quiver(self.vertices, arrows)

    def describe(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [[a, b, c] for (a, b), c in sorted(self._m.items())],
            "P": "P_ab(u,v) = (v-u)^m_ab",
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quiver) and self.vertices == other.vertices and self._m == other._m

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(sorted(self._m.items()))))

    @classmethod
    def type_a(cls, n: int) -> Quiver:
        """Vertices ``1..n`` with arrows ``i -> i+1``."""
        return cls(range(1, n + 1), {(i, i + 1): 1 for i in range(1, n)})

    @classmethod
    def from_cartan(cls, cd: CartanData) -> Quiver:
        """Arrows from the smaller to the larger index; symmetric Cartan data only."""
        verts = list(cd.labels)
        arrows = {}
        for x, a in enumerate(verts):
            for b in verts[x + 1:]:
                if cd.C(a, b) != cd.C(b, a):
                    raise ValueError("KLR algebras here need a symmetric Cartan matrix")
                if cd.C(a, b) < 0:
                    arrows[(a, b)] = -cd.C(a, b)
        return cls(verts, arrows)


# ------------------------------------------------------------ chosen words
class ChosenWords:
    """The chosen reduced word of every permutation of ``S_k``.

    With an empty generating set ``S`` this is the lexicographically minimal
    word; otherwise the policy of :func:`qverify.symgrp.chosen_word`.
    """

    def __init__(self, k: int, S: Iterable[Permutation] = ()):
        self.k = k
        self.S = tuple(sorted(tuple(g) for g in S))
        self._cache: dict[Permutation, ReducedWord] = {}

    def word(self, p: Permutation) -> ReducedWord:
        w = self._cache.get(p)
        if w is None:
            w = chosen_word(p, self.S) if self.S else lexmin_word(p)
            self._cache[p] = w
        return w

    def key(self) -> tuple:
        return (self.k, self.S)


@cache
def _to_front(w: ReducedWord, a: int) -> tuple[tuple[int, str], ...]:
    """Moves turning the reduced word ``w`` into one beginning with ``a``.

    ``a`` must be a left descent of the permutation of ``w``.  A move is
    ``(pos, "c")`` (commute letters ``pos, pos+1``) or ``(pos, "b")`` (braid
    the three letters starting at ``pos``).
    """
    if w[0] == a:
        return ()
    b = w[0]
    moves = [(pos + 1, kind) for pos, kind in _to_front(w[1:], a)]
    cur = _apply_moves(w, moves)
    if abs(a - b) > 1:
        moves.append((0, "c"))
        return tuple(moves)
    sub = [(pos + 2, kind) for pos, kind in _to_front(cur[2:], b)]
    moves.extend(sub)
    moves.append((0, "b"))
    return tuple(moves)


def _apply_move(w: list, pos: int, kind: str) -> None:
    if kind == "c":
        if abs(w[pos] - w[pos + 1]) <= 1:
            raise AssertionError("commutation move on adjacent letters")
        w[pos], w[pos + 1] = w[pos + 1], w[pos]
    else:
        a, b, c = w[pos:pos + 3]
        if not (a == c and abs(a - b) == 1):
            raise AssertionError("braid move on a non-braid triple")
        w[pos:pos + 3] = [b, a, b]


def _apply_moves(w: Sequence[int], moves: Iterable[tuple[int, str]]) -> tuple:
    cur = list(w)
    for pos, kind in moves:
        _apply_move(cur, pos, kind)
    return tuple(cur)


@cache
def braid_path(w: ReducedWord, t: ReducedWord) -> tuple[tuple[int, str], ...]:
    """A sequence of moves from the reduced word ``w`` to the reduced word ``t``."""
    cur = list(w)
    moves: list[tuple[int, str]] = []
    for j, letter in enumerate(t):
        if cur[j] != letter:
            for pos, kind in _to_front(tuple(cur[j:]), letter):
                _apply_move(cur, pos + j, kind)
                moves.append((pos + j, kind))
    if tuple(cur) != tuple(t):
        raise AssertionError("words do not represent the same permutation")
    return tuple(moves)


def _target(p: Permutation, u: tuple) -> tuple:
    """Coloring on the left of ``tau_p 1_u``: strand from position x ends at p(x)."""
    out = [None] * len(u)
    for x, c in enumerate(u):
        out[p[x] - 1] = c
    return tuple(out)


def _colorings(counts: Mapping) -> list[tuple]:
    letters = []
    for v, c in counts.items():
        letters.extend([v] * c)
    return sorted(set(permutations(letters)))


# ---------------------------------------------------------------- algebra
class KlrAlgebra:
    """The KLR algebra ``H_alpha`` of a quiver in the PBW normal form."""

    def __init__(self, quiver: Quiver, alpha, chosen: ChosenWords | None = None, *, max_strands: int = MAX_STRANDS):
        self.quiver = quiver
        if isinstance(alpha, Mapping):
            counts = {v: int(c) for v, c in alpha.items() if c}
        else:
            counts = {v: int(c) for v, c in zip(quiver.vertices, alpha) if c}
        for v in counts:
            if v not in quiver.vertices:
                raise ValueError(f"vertex {v} not in quiver")
        self.alpha = {v: counts.get(v, 0) for v in quiver.vertices}
        self.k = sum(counts.values())
        if self.k > max_strands:
            raise StrandGuard(f"|alpha| = {self.k} exceeds the limit of {max_strands} strands")
        if self.k == 0:
            raise ValueError("alpha must be nonzero")
        self.chosen = chosen or ChosenWords(self.k)
        if self.chosen.k != self.k:
            raise ValueError("chosen-word table has the wrong rank")
        self.colorings = _colorings(counts)
        self._coloring_set = set(self.colorings)
        self.ctx = flint.fmpz_mpoly_ctx.get([f"x{i}" for i in range(1, self.k + 1)], "deglex")
        self.gens = self.ctx.gens()
        self._swaps = []
        for i in range(1, self.k):
            g = list(self.gens)
            g[i - 1], g[i] = g[i], g[i - 1]
            self._swaps.append(g)
        self._one_poly = self.ctx.from_dict({(0,) * self.k: 1})
        self._reduced_memo: dict = {}
        self._lmul_memo: dict = {}
        self._braid_err_memo: dict = {}

    # ------------------------------------------------------------ polys
    def var(self, i: int):
        if not 1 <= i <= self.k:
            raise IndexError(f"x_{i} out of range")
        return self.gens[i - 1]

    def const(self, c: int):
        return self.ctx.from_dict({(0,) * self.k: c}) if c else self.ctx.from_dict({})

    def swap(self, f, i: int):
        return f.compose(*self._swaps[i - 1])

    def exchange(self, f, a: int, b: int):
        g = list(self.gens)
        g[a - 1], g[b - 1] = g[b - 1], g[a - 1]
        return f.compose(*g)

    def demazure(self, f, i: int):
        """``(s_i f - f)/(x_i - x_{i+1})``."""
        return self.divided_difference(f, i, i + 1)

    def divided_difference(self, f, a: int, b: int):
        """``(s_ab f - f)/(x_a - x_b)`` with ``s_ab`` exchanging ``x_a`` and ``x_b``."""
        num = self.exchange(f, a, b) - f
        if num.is_zero():
            return num
        quo, rem = divmod(num, self.gens[a - 1] - self.gens[b - 1])
        if not rem.is_zero():
            raise AssertionError("divided difference is not exact")
        return quo

    def Q(self, a, b, u, v):
        if a == b:
            return self.const(0)
        return (v - u) ** self.quiver.m(a, b) * (u - v) ** self.quiver.m(b, a)

    def P(self, a, b, u, v):
        return (v - u) ** self.quiver.m(a, b)

    def braid_error(self, w: tuple, i: int):
        """Right side of the cubic relation at positions ``i, i+1, i+2`` of the coloring ``w``."""
        key = (w[i - 1], w[i], w[i + 1], i)
        got = self._braid_err_memo.get(key)
        if got is not None:
            return got
        a, b, c = w[i - 1], w[i], w[i + 1]
        if a != c:
            val = self.const(0)
        else:
            xi, xj, xk = self.var(i), self.var(i + 1), self.var(i + 2)
            num = self.Q(a, b, xk, xj) - self.Q(a, b, xi, xj)
            quo, rem = divmod(num, xk - xi)
            if not rem.is_zero():
                raise AssertionError("cubic relation correction is not polynomial")
            val = quo
        self._braid_err_memo[key] = val
        return val

    def poly_degree(self, f) -> int:
        return f.total_degree()

    def tau_degree(self, p: Permutation, u: tuple) -> int:
        deg = 0
        k = self.k
        for x in range(k):
            for y in range(x + 1, k):
                if p[x] > p[y]:
                    deg += self.quiver.crossing_degree(u[x], u[y])
        return deg

    def target(self, p: Permutation, u: tuple) -> tuple:
        return _target(p, u)

    def key(self) -> tuple:
        return (self.quiver, tuple(sorted(self.alpha.items())), self.chosen.key())

    # ---------------------------------------------------------- elements
    def _check_coloring(self, v) -> tuple:
        v = tuple(v)
        if v not in self._coloring_set:
            raise ValueError(f"{v} is not a coloring of alpha")
        return v

    def zero(self) -> KlrElement:
        return KlrElement(self, {})

    def idem(self, v) -> KlrElement:
        v = self._check_coloring(v)
        return KlrElement(self, {(identity(self.k), v): self._one_poly})

    def one(self) -> KlrElement:
        return KlrElement(self, {(identity(self.k), v): self._one_poly for v in self.colorings})

    def idem_suffix(self, w: Sequence) -> KlrElement:
        """``1_{*w}``: the sum of ``1_v`` over colorings ending in ``w``."""
        w = tuple(w)
        m = len(w)
        terms = {(identity(self.k), v): self._one_poly for v in self.colorings if v[self.k - m:] == w}
        return KlrElement(self, terms)

    def idem_prefix(self, w: Sequence) -> KlrElement:
        w = tuple(w)
        terms = {(identity(self.k), v): self._one_poly for v in self.colorings if v[: len(w)] == w}
        return KlrElement(self, terms)

    def poly_element(self, f, v=None) -> KlrElement:
        vs = self.colorings if v is None else [self._check_coloring(v)]
        if f.is_zero():
            return self.zero()
        return KlrElement(self, {(identity(self.k), u): f for u in vs})

    def x(self, i: int, v=None) -> KlrElement:
        return self.poly_element(self.var(i), v)

    def tau(self, i: int, v=None) -> KlrElement:
        if not 1 <= i < self.k:
            raise IndexError(f"tau_{i} out of range")
        p = s(i, self.k)
        vs = self.colorings if v is None else [self._check_coloring(v)]
        return KlrElement(self, {(p, u): self._one_poly for u in vs})

    def word(self, w: Sequence[int], v=None) -> KlrElement:
        """``tau_{w_1} ... tau_{w_l} 1_v`` (summed over all ``v`` when omitted)."""
        vs = self.colorings if v is None else [self._check_coloring(v)]
        out: dict = {}
        for u in vs:
            _add_into(out, self._word_nf(tuple(w), u), 1)
        return KlrElement(self, out)

    def basis_element(self, p: Permutation, u, f=None) -> KlrElement:
        u = self._check_coloring(u)
        return KlrElement(self, {(tuple(p), u): self._one_poly if f is None else f})

    # --------------------------------------------------------- rewriting
    def _word_nf(self, w: tuple, u: tuple) -> dict:
        if is_reduced(w, self.k):
            return self._reduced_nf(w, u)
        return self._lmul_word(w, {(identity(self.k), u): self._one_poly})

    def _reduced_nf(self, w: tuple, u: tuple) -> dict:
        """Normal form of ``tau_w 1_u`` for a reduced word ``w``."""
        key = (w, u)
        got = self._reduced_memo.get(key)
        if got is not None:
            return got
        p = from_word(w, self.k)
        t = self.chosen.word(p)
        out = {(p, u): self._one_poly}
        if w != t:
            final, err = self._convert(w, u, braid_path(w, t))
            _add_into(out, err, 1)
        self._reduced_memo[key] = out
        return out

    def _convert(self, w: tuple, u: tuple, moves) -> tuple[tuple, dict]:
        """Apply braid-path moves to ``tau_w 1_u``; return the new word and the error terms.

        ``tau_w 1_u = tau_{new} 1_u + errors``.
        """
        cur = list(w)
        err: dict = {}
        for pos, kind in moves:
            if kind == "b":
                a, b, _ = cur[pos:pos + 3]
                i0 = min(a, b)
                suffix = tuple(cur[pos + 3:])
                right = apply_to_sequence(suffix, u)
                r = self.braid_error(right, i0)
                if not r.is_zero():
                    inner = _scale_poly(self._reduced_nf(suffix, u), r)
                    e = self._lmul_word(tuple(cur[:pos]), inner)
                    # (i+1, i, i+1) = (i, i+1, i) + r
                    _add_into(err, e, 1 if a == i0 + 1 else -1)
            _apply_move(cur, pos, kind)
        return tuple(cur), err

    def _lmul_basis(self, i: int, p: Permutation, u: tuple) -> dict:
        """Normal form of ``tau_i tau_p 1_u``."""
        key = (i, p, u)
        got = self._lmul_memo.get(key)
        if got is not None:
            return got
        w = self.chosen.word(p)
        if p.index(i) < p.index(i + 1):  # s_i p is longer
            out = self._reduced_nf((i,) + w, u)
        else:
            moved, err = self._convert(w, u, _to_front(w, i))
            rest = moved[1:]
            right = apply_to_sequence(rest, u)
            q = self.Q(right[i - 1], right[i], self.var(i), self.var(i + 1))
            out = {}
            if not q.is_zero():
                _add_into(out, _scale_poly(self._reduced_nf(rest, u), q), 1)
            if err:
                _add_into(out, self._lmul_tau(i, err), 1)
        self._lmul_memo[key] = out
        return out

    def _lmul_tau(self, i: int, terms: Mapping) -> dict:
        out: dict = {}
        for (p, u), f in terms.items():
            t = _target(p, u)
            sf = self.swap(f, i)
            _add_into(out, _scale_poly(self._lmul_basis(i, p, u), sf), 1)
            if t[i - 1] == t[i]:
                d = self.demazure(f, i)
                if not d.is_zero():
                    _add_into(out, {(p, u): d}, 1)
        return out

    def _lmul_word(self, w: tuple, terms: Mapping) -> dict:
        cur = dict(terms)
        for i in reversed(w):
            cur = self._lmul_tau(i, cur)
            if not cur:
                break
        return cur

    def multiply(self, a: Mapping, b: Mapping) -> dict:
        by_target: dict = {}
        for (p, u), g in b.items():
            by_target.setdefault(_target(p, u), {})[(p, u)] = g
        out: dict = {}
        for (p, u), f in a.items():
            right = by_target.get(u)
            if not right:
                continue
            prod = self._lmul_word(self.chosen.word(p), right)
            _add_into(out, _scale_poly(prod, f), 1)
        return out


def _add_into(acc: dict, terms: Mapping, sign: int) -> None:
    for key, f in terms.items():
        if key in acc:
            g = acc[key] + f if sign > 0 else acc[key] - f
            if g.is_zero():
                del acc[key]
            else:
                acc[key] = g
        else:
            if f.is_zero():
                continue
            acc[key] = f if sign > 0 else -f


def _scale_poly(terms: Mapping, f) -> dict:
    if f.is_zero():
        return {}
    out = {}
    for key, g in terms.items():
        h = f * g
        if not h.is_zero():
            out[key] = h
    return out


# ---------------------------------------------------------------- elements
class KlrElement:
    """An element of ``H_alpha`` in PBW normal form.  Immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: KlrAlgebra, terms: Mapping):
        self.alg = alg
        self.terms = {key: f for key, f in terms.items() if not f.is_zero()}

    def _same(self, other: KlrElement) -> None:
        if not isinstance(other, KlrElement) or other.alg is not self.alg:
            raise ValueError("elements of different KLR algebras")

    def __add__(self, other: KlrElement) -> KlrElement:
        self._same(other)
        out = dict(self.terms)
        _add_into(out, other.terms, 1)
        return KlrElement(self.alg, out)

    def __sub__(self, other: KlrElement) -> KlrElement:
        self._same(other)
        out = dict(self.terms)
        _add_into(out, other.terms, -1)
        return KlrElement(self.alg, out)

    def __neg__(self) -> KlrElement:
        return KlrElement(self.alg, {k: -f for k, f in self.terms.items()})

    def __mul__(self, other) -> KlrElement:
        if isinstance(other, int):
            return KlrElement(self.alg, {k: f * other for k, f in self.terms.items()}) if other else self.alg.zero()
        self._same(other)
        return KlrElement(self.alg, self.alg.multiply(self.terms, other.terms))

    def __rmul__(self, other) -> KlrElement:
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> KlrElement:
        if n < 1:
            raise ValueError("positive powers only")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def lpoly(self, f) -> KlrElement:
        """Multiply by the polynomial ``f`` on the left."""
        return KlrElement(self.alg, _scale_poly(self.terms, f))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KlrElement) or other.alg is not self.alg:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):  # pragma: no cover - elements are compared, not hashed
        raise TypeError("KlrElement is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    def term_degrees(self) -> list[int]:
        out = []
        for (p, u), f in self.terms.items():
            td = self.alg.tau_degree(p, u)
            for exps in f.to_dict():
                out.append(2 * sum(exps) + td)
        return out

    def is_homogeneous(self) -> bool:
        return len(set(self.term_degrees())) <= 1

    def degree(self) -> int | None:
        degs = set(self.term_degrees())
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None

    def homogeneous_parts(self) -> dict[int, KlrElement]:
        parts: dict[int, dict] = {}
        for (p, u), f in self.terms.items():
            td = self.alg.tau_degree(p, u)
            for exps, c in f.to_dict().items():
                d = 2 * sum(exps) + td
                bucket = parts.setdefault(d, {})
                mono = self.alg.ctx.from_dict({exps: c})
                _add_into(bucket, {(p, u): mono}, 1)
        return {d: KlrElement(self.alg, t) for d, t in sorted(parts.items())}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def serialize(self) -> list:
        out = []
        for (p, u), f in self.sorted_terms():
            out.append({
                "word": list(self.alg.chosen.word(p)),
                "source": list(u),
                "target": list(_target(p, u)),
                "poly": str(f),
            })
        return out

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, u), f in self.sorted_terms():
            w = self.alg.chosen.word(p)
            tau = "".join(f"t{i}" for i in w) or ""
            idem = "1_" + "".join(str(c) for c in u)
            parts.append(f"({f}){('*' + tau) if tau else ''}*{idem}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"KlrElement({self.pretty()})"


def klr_mul(a: KlrElement, b: KlrElement) -> KlrElement:
    """Product in PBW normal form."""
    return a * b


# ------------------------------------------------------ polynomial module
class PolyRepElement:
    """A vector of the polynomial representation: one polynomial per coloring."""

    __slots__ = ("alg", "comps")

    def __init__(self, alg: KlrAlgebra, comps: Mapping):
        self.alg = alg
        self.comps = {tuple(v): f for v, f in comps.items() if not f.is_zero()}

    def __add__(self, other: PolyRepElement) -> PolyRepElement:
        out = dict(self.comps)
        for v, f in other.comps.items():
            out[v] = out[v] + f if v in out else f
        return PolyRepElement(self.alg, out)

    def __sub__(self, other: PolyRepElement) -> PolyRepElement:
        out = dict(self.comps)
        for v, f in other.comps.items():
            out[v] = out[v] - f if v in out else -f
        return PolyRepElement(self.alg, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyRepElement):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.comps

    def serialize(self) -> list:
        return [{"coloring": list(v), "poly": str(f)} for v, f in sorted(self.comps.items())]


def _rep_tau(alg: KlrAlgebra, i: int, v: tuple, f):
    a, b = v[i - 1], v[i]
    if a == b:
        return alg.demazure(f, i)
    return alg.P(a, b, alg.var(i + 1), alg.var(i)) * alg.swap(f, i)


def poly_rep(a: KlrElement, vec: PolyRepElement) -> PolyRepElement:
    """Action of ``a`` on the polynomial representation; ``1_v`` projects."""
    alg = a.alg
    out: dict = {}
    for (p, u), f in a.terms.items():
        h = vec.comps.get(u)
        if h is None:
            continue
        cur = u
        for i in reversed(alg.chosen.word(p)):
            h = _rep_tau(alg, i, cur, h)
            cur = apply_to_sequence((i,), cur)
            if h.is_zero():
                break
        if h.is_zero():
            continue
        assert cur == _target(p, u)
        h = f * h
        out[cur] = out[cur] + h if cur in out else h
    return PolyRepElement(alg, out)


# ------------------------------------------------------------ special elements
def nil_s(alg: KlrAlgebra, i: int, v=None) -> KlrElement:
    """``s_i = (x_i - x_{i+1}) tau_i + 1`` on colorings with equal colors at ``i, i+1``."""
    if v is None:
        vs = [u for u in alg.colorings if u[i - 1] == u[i]]
        if not vs:
            raise ValueError(f"no coloring has equal colors at positions {i}, {i + 1}")
    else:
        v = tuple(v)
        if v[i - 1] != v[i]:
            raise ValueError(f"s_{i} needs equal colors at positions {i}, {i + 1}, got {v}")
        vs = [v]
    out = alg.zero()
    lin = alg.var(i) - alg.var(i + 1)
    for u in vs:
        out = out + alg.tau(i, u).lpoly(lin) + alg.idem(u)
    return out


def obstruction_set(sigma: Permutation, v: Sequence, quiver: Quiver | None = None) -> set[tuple[int, int, int]]:
    """Triple inversions ``(a, b, c)`` of ``sigma`` whose strands are colored (same, adjacent, same).

    ``a < b < c`` are positions on the target side with
    ``sigma^{-1}(a) > sigma^{-1}(b) > sigma^{-1}(c)``: three strands crossing
    pairwise.  The colors are those the strands carry, read from ``v`` at the
    source positions.  Without a quiver, adjacency is ``|v_a - v_b| = 1``.
    """
    sigma = tuple(sigma)
    k = len(sigma)
    inv = inverse(sigma)
    out = set()

    def adj(x, y):
        if quiver is not None:
            return quiver.adjacent(x, y)
        return abs(x - y) == 1

    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            if not inv[a - 1] > inv[b - 1]:
                continue
            for c in range(b + 1, k + 1):
                if not inv[b - 1] > inv[c - 1]:
                    continue
                ca, cb, cc = v[inv[a - 1] - 1], v[inv[b - 1] - 1], v[inv[c - 1] - 1]
                if ca == cc and adj(ca, cb):
                    out.add((a, b, c))
    return out


def omega00_perm(n: int, k: int) -> Permutation:
    """The permutation exchanging the last two blocks of ``n`` positions of ``S_k``."""
    if k < 2 * n:
        raise ValueError("need at least 2n strands")
    p = list(range(1, k + 1))
    base = k - 2 * n
    for j in range(1, n + 1):
        p[base + j - 1] = base + n + j
        p[base + n + j - 1] = base + j
    return tuple(p)


def omega00_word(n: int, k: int, offset: int = 0) -> tuple[int, ...]:
    """Reduced word ``b_n ... b_1`` with ``b_i = s_{-i} ... s_{-(n+i-1)}``.

    Negative generator ``s_{-j}`` is ``s_{k-j}``; ``offset`` shifts the block
    pair ``offset`` positions to the left.
    """
    word: list[int] = []
    for i in range(n, 0, -1):
        word.extend(k - offset - j for j in range(i, n + i))
    return tuple(word)


def tau_omega00(n: int, alg: KlrAlgebra | None = None) -> tuple[KlrAlgebra, KlrElement]:
    """``tau_{omega00} 1_{*(beta, beta)}`` in type ``A_n`` (default ``alpha = 2 beta``)."""
    if alg is None:
        alg = KlrAlgebra(Quiver.type_a(n), {i: 2 for i in range(1, n + 1)})
    beta = tuple(range(n, 0, -1))
    w = omega00_word(n, alg.k)
    if from_word(w, alg.k) != omega00_perm(n, alg.k):
        raise AssertionError("omega00 word does not represent omega00")
    return alg, alg.word(w) * alg.idem_suffix(beta + beta)


def demazure_product_formula(alg: KlrAlgebra, n: int, f):
    """``d_1 d_3 ... d_{2n-1}(f * prod_{i<n}(y_i - x_{i+1}))`` on ``2n`` strands, ``y_i = x_{i+n}``."""
    if alg.k != 2 * n:
        raise ValueError("formula is stated for alpha = 2 beta")
    g = f
    for i in range(1, n):
        g = g * (alg.var(i + n) - alg.var(i + 1))
    for i in range(1, n + 1):
        g = alg.divided_difference(g, i, i + n)
    return g


# ------------------------------------------------------------------ checks
def _monomials(alg: KlrAlgebra, degree: int) -> list:
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, alg.k)
    return [alg.ctx.from_dict({e: 1}) for e in out]


def monomials_up_to(alg: KlrAlgebra, degree: int) -> list:
    out = []
    for d in range(degree + 1):
        out.extend(_monomials(alg, d))
    return out


def random_element(alg: KlrAlgebra, rng: random.Random, terms: int = 3, max_poly_degree: int = 2) -> KlrElement:
    perms = all_permutations(alg.k)
    out: dict = {}
    for _ in range(terms):
        p = rng.choice(perms)
        u = rng.choice(alg.colorings)
        exps = [0] * alg.k
        for _ in range(rng.randint(0, max_poly_degree)):
            exps[rng.randrange(alg.k)] += 1
        c = rng.choice([-2, -1, 1, 2])
        f = alg.ctx.from_dict({tuple(exps): c})
        _add_into(out, {(p, u): f}, 1)
    return KlrElement(alg, out)


def _rel(name: str, ok: bool, residual, anchor: str = RELATIONS_ANCHOR, **details) -> CheckResult:
    return check(name, anchor, ok, residual, **details)


def relation_checks(alg: KlrAlgebra) -> list[CheckResult]:
    """The eight defining relations, on every generator instance, in normal-form arithmetic."""
    k = alg.k
    results = []
    one = alg.one()
    gens = []
    for v in alg.colorings:
        gens.append(alg.idem(v))
        for i in range(1, k + 1):
            gens.append(alg.x(i, v))
        for i in range(1, k):
            gens.append(alg.tau(i, v))
    ctx = {"alpha": {str(a): c for a, c in alg.alpha.items()}}

    # (1)
    bad = None
    count = 0
    for v in alg.colorings:
        for w in alg.colorings:
            count += 1
            got = alg.idem(v) * alg.idem(w)
            want = alg.idem(v) if v == w else alg.zero()
            if got != want:
                bad = bad or {"v": list(v), "w": list(w), "got": got.serialize()}
    for g in gens:
        count += 2
        if one * g != g or g * one != g:
            bad = bad or {"generator": g.serialize()}
    results.append(_rel("(1) 1_v orthogonal idempotents summing to 1", bad is None, bad, instances=count, **ctx))

    # (2), (3)
    bad2 = bad3 = None
    c2 = c3 = 0
    for v in alg.colorings:
        for i in range(1, k + 1):
            c2 += 1
            if alg.idem(v) * alg.x(i) != alg.x(i) * alg.idem(v):
                bad2 = bad2 or {"v": list(v), "i": i}
        for i in range(1, k):
            c3 += 1
            sv = apply_to_sequence((i,), v)
            if alg.idem(v) * alg.tau(i) != alg.tau(i) * alg.idem(sv):
                bad3 = bad3 or {"v": list(v), "i": i}
    results.append(_rel("(2) 1_v x_i = x_i 1_v", bad2 is None, bad2, instances=c2, **ctx))
    results.append(_rel("(3) 1_v tau_i = tau_i 1_{s_i v}", bad3 is None, bad3, instances=c3, **ctx))

    # (4)
    bad = None
    count = 0
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            count += 1
            if alg.x(i) * alg.x(j) != alg.x(j) * alg.x(i):
                bad = bad or {"i": i, "j": j}
    results.append(_rel("(4) x_i x_j = x_j x_i", bad is None, bad, instances=count, **ctx))

    # (5)
    bad = None
    count = 0
    for v in alg.colorings:
        for i in range(1, k):
            for j in range(1, k + 1):
                count += 1
                sj = i + 1 if j == i else i if j == i + 1 else j
                lhs = alg.tau(i) * alg.x(j) * alg.idem(v) - alg.x(sj) * alg.tau(i) * alg.idem(v)
                if v[i - 1] == v[i] and j == i + 1:
                    want = alg.idem(v)
                elif v[i - 1] == v[i] and j == i:
                    want = -alg.idem(v)
                else:
                    want = alg.zero()
                if lhs != want:
                    bad = bad or {"v": list(v), "i": i, "j": j, "got": lhs.serialize()}
    results.append(_rel("(5) (tau_i x_j - x_{s_i(j)} tau_i) 1_v", bad is None, bad, instances=count, **ctx))

    # (6)
    bad = None
    count = 0
    for i in range(1, k):
        for j in range(1, k):
            if abs(i - j) > 1:
                count += 1
                if alg.tau(i) * alg.tau(j) != alg.tau(j) * alg.tau(i):
                    bad = bad or {"i": i, "j": j}
    results.append(_rel("(6) tau_i tau_j = tau_j tau_i for |i-j| > 1", bad is None, bad, instances=count, **ctx))

    # (7)
    bad = None
    count = 0
    for v in alg.colorings:
        for i in range(1, k):
            count += 1
            got = alg.tau(i) * alg.tau(i) * alg.idem(v)
            q = alg.Q(v[i - 1], v[i], alg.var(i), alg.var(i + 1))
            want = alg.poly_element(q, v)
            if got != want:
                bad = bad or {"v": list(v), "i": i, "got": got.serialize()}
    results.append(_rel("(7) tau_i^2 1_v = Q_{v_i v_{i+1}}(x_i, x_{i+1}) 1_v", bad is None, bad, instances=count, **ctx))

    # (8)
    bad = None
    count = 0
    for v in alg.colorings:
        for i in range(1, k - 1):
            count += 1
            t1, t2 = alg.tau(i), alg.tau(i + 1)
            got = (t2 * t1 * t2 - t1 * t2 * t1) * alg.idem(v)
            want = alg.poly_element(alg.braid_error(v, i), v)
            if got != want:
                bad = bad or {"v": list(v), "i": i, "got": got.serialize()}
    results.append(_rel("(8) (tau_{i+1} tau_i tau_{i+1} - tau_i tau_{i+1} tau_i) 1_v", bad is None, bad, instances=count, **ctx))
    return results


def polyrep_relation_checks(alg: KlrAlgebra, degree: int = 3) -> list[CheckResult]:
    """The polynomial representation satisfies relations (5), (7), (8) on test monomials."""
    k = alg.k
    tests = monomials_up_to(alg, degree)
    bad5 = bad7 = bad8 = None
    n5 = n7 = n8 = 0

    def vec(v, f):
        return PolyRepElement(alg, {v: f})

    def act(seq, v, f):
        """Apply a sequence of ('t', i) / ('x', i) right to left starting in component v."""
        cur = vec(v, f)
        for kind, i in reversed(seq):
            if kind == "t":
                cur = poly_rep(alg.tau(i), cur)
            else:
                cur = poly_rep(alg.x(i), cur)
        return cur

    for v in alg.colorings:
        for f in tests:
            for i in range(1, k):
                for j in range(1, k + 1):
                    n5 += 1
                    sj = i + 1 if j == i else i if j == i + 1 else j
                    got = act([("t", i), ("x", j)], v, f) - act([("x", sj), ("t", i)], v, f)
                    sign = 1 if (v[i - 1] == v[i] and j == i + 1) else -1 if (v[i - 1] == v[i] and j == i) else 0
                    want = vec(v, f * sign) if sign else PolyRepElement(alg, {})
                    if got != want:
                        bad5 = bad5 or {"v": list(v), "i": i, "j": j, "p": str(f)}
                n7 += 1
                got = act([("t", i), ("t", i)], v, f)
                want = vec(v, alg.Q(v[i - 1], v[i], alg.var(i), alg.var(i + 1)) * f)
                if got != want:
                    bad7 = bad7 or {"v": list(v), "i": i, "p": str(f)}
            for i in range(1, k - 1):
                n8 += 1
                got = act([("t", i + 1), ("t", i), ("t", i + 1)], v, f) - act([("t", i), ("t", i + 1), ("t", i)], v, f)
                want = vec(v, alg.braid_error(v, i) * f)
                if got != want:
                    bad8 = bad8 or {"v": list(v), "i": i, "p": str(f)}
    anchor = "the polynomial representation satisfies the KLR relations"
    return [
        check("polynomial representation: relation (5)", anchor, bad5 is None, bad5, instances=n5, test_degree=degree),
        check("polynomial representation: relation (7)", anchor, bad7 is None, bad7, instances=n7, test_degree=degree),
        check("polynomial representation: relation (8)", anchor, bad8 is None, bad8, instances=n8, test_degree=degree),
    ]


def oracle_check(alg: KlrAlgebra, products: int = 200, seed: int = 0, test_degree: int = 2) -> CheckResult:
    """``rep(a*b) = rep(a) rep(b)`` for seeded random ``a, b`` on test monomials in every component."""
    rng = random.Random(seed)
    tests = monomials_up_to(alg, test_degree)
    bad = None
    evaluations = 0
    for n in range(products):
        a = random_element(alg, rng)
        b = random_element(alg, rng)
        ab = a * b
        sources = sorted({u for (_, u) in b.terms})
        for u in sources:
            for f in tests:
                vec = PolyRepElement(alg, {u: f})
                evaluations += 1
                lhs = poly_rep(ab, vec)
                rhs = poly_rep(a, poly_rep(b, vec))
                if lhs != rhs:
                    bad = bad or {"product": n, "a": a.serialize(), "b": b.serialize(), "coloring": list(u), "p": str(f)}
    return check(
        "normal-form product vs polynomial representation",
        ORACLE_ANCHOR,
        bad is None,
        bad,
        products=products,
        seed=seed,
        evaluations=evaluations,
        alpha={str(v): c for v, c in alg.alpha.items()},
    )


def associativity_check(alg: KlrAlgebra, samples: int = 30, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    bad = None
    for n in range(samples):
        a, b, c = (random_element(alg, rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad = bad or {"sample": n}
    return check("(ab)c = a(bc) in normal form", RELATIONS_ANCHOR, bad is None, bad, samples=samples, seed=seed)


def _binom(n: int, r: int) -> int:
    if r < 0 or n < 0:
        return 0
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


def pbw_slice(alg: KlrAlgebra, target: tuple, degree: int) -> list[tuple]:
    """PBW basis ``(perm, source, exponent)`` of ``1_target H 1`` in one degree."""
    out = []
    for p in all_permutations(alg.k):
        u = _target(inverse(p), target)
        if _target(p, u) != target:
            raise AssertionError("coloring bookkeeping")
        rem = degree - alg.tau_degree(p, u)
        if rem < 0 or rem % 2:
            continue
        for f in _monomials(alg, rem // 2):
            (exps,) = f.to_dict().keys()
            out.append((p, u, exps))
    return out


def graded_dimension_check(alg: KlrAlgebra, max_degree: int = 6) -> CheckResult:
    """PBW enumeration per target coloring and degree vs the series ``sum_w q^{deg w} / (1-q^2)^k``."""
    k = alg.k
    bad = None
    table = {}
    min_deg = min(alg.tau_degree(p, u) for p in all_permutations(k) for u in alg.colorings)
    for t in alg.colorings:
        # generating function: coefficient of q^d in sum_p q^{deg p} (1 - q^2)^{-k}
        degs = [alg.tau_degree(p, _target(inverse(p), t)) for p in all_permutations(k)]
        row = []
        for d in range(min_deg, max_degree + 1):
            series = sum(_binom((d - e) // 2 + k - 1, k - 1) for e in degs if d >= e and (d - e) % 2 == 0)
            enumerated = len(pbw_slice(alg, t, d))
            row.append(enumerated)
            if series != enumerated:
                bad = bad or {"target": list(t), "degree": d, "series": series, "enumerated": enumerated}
        table["".join(map(str, t))] = row
    return check(
        "graded dimension of 1_v H_alpha from the PBW basis",
        PBW_ANCHOR,
        bad is None,
        bad,
        min_degree=min_deg,
        max_degree=max_degree,
        dims=table,
    )


def pbw_independence_check(alg: KlrAlgebra, max_degree: int = 2, test_degree: int = 3) -> CheckResult:
    """PBW elements of each degree act linearly independently in the polynomial representation."""
    tests = monomials_up_to(alg, test_degree)
    bad = None
    ranks = {}
    for t in alg.colorings:
        for d in range(-2 * alg.k, max_degree + 1):
            basis = pbw_slice(alg, t, d)
            if not basis:
                continue
            rows = []
            columns: dict = {}
            for (p, u, exps) in basis:
                el = alg.basis_element(p, u, alg.ctx.from_dict({exps: 1}))
                row: dict = {}
                for n, f in enumerate(tests):
                    img = poly_rep(el, PolyRepElement(alg, {u: f}))
                    for v, g in img.comps.items():
                        for e, c in g.to_dict().items():
                            col = columns.setdefault((n, v, e), len(columns))
                            row[col] = int(c)
                rows.append(row)
            mat = flint.fmpz_mat(len(rows), max(1, len(columns)), [r.get(c, 0) for r in rows for c in range(max(1, len(columns)))])
            rk = mat.rank()
            ranks[f"{''.join(map(str, t))}@{d}"] = [rk, len(basis)]
            if rk != len(basis):
                bad = bad or {"target": list(t), "degree": d, "rank": rk, "size": len(basis)}
    return check(
        "PBW elements act independently on the polynomial representation",
        PBW_ANCHOR,
        bad is None,
        bad,
        test_degree=test_degree,
        ranks=ranks,
    )


def nil_s_checks(p_vertex=1, q_vertex=2, n: int = 3) -> list[CheckResult]:
    """Identities of ``s_i`` inside the nil-Hecke block ``H_{n p}`` and in ``H_{2p+q}``."""
    results = []
    quiver = Quiver((p_vertex, q_vertex), {(p_vertex, q_vertex): 1})
    alg = KlrAlgebra(quiver, {p_vertex: n})
    k = alg.k
    one = alg.one()
    x, t = alg.x, alg.tau

    def S(i):
        return nil_s(alg, i)

    identities = []
    for i in range(1, k):
        identities.append((f"s_{i} x_{i} = x_{i+1} s_{i}", S(i) * x(i), x(i + 1) * S(i)))
        identities.append((f"s_{i} x_{i+1} = x_{i} s_{i}", S(i) * x(i + 1), x(i) * S(i)))
        identities.append((f"s_{i} = tau_{i} x_{i+1} - x_{i+1} tau_{i}", S(i), t(i) * x(i + 1) - x(i + 1) * t(i)))
        identities.append((f"s_{i} = x_{i} tau_{i} - tau_{i} x_{i}", S(i), x(i) * t(i) - t(i) * x(i)))
        identities.append((f"s_{i}^2 = 1", S(i) * S(i), one))
    for i in range(1, k - 1):
        identities.append((f"s_{i} s_{i+1} tau_{i} = tau_{i+1} s_{i} s_{i+1}", S(i) * S(i + 1) * t(i), t(i + 1) * S(i) * S(i + 1)))
        identities.append((f"tau_{i} s_{i+1} s_{i} = s_{i+1} s_{i} tau_{i+1}", t(i) * S(i + 1) * S(i), S(i + 1) * S(i) * t(i + 1)))
        identities.append((f"s_{i} tau_{i+1} s_{i} = s_{i+1} tau_{i} s_{i+1}", S(i) * t(i + 1) * S(i), S(i + 1) * t(i) * S(i + 1)))
        identities.append((f"s_{i} s_{i+1} s_{i} = s_{i+1} s_{i} s_{i+1}", S(i) * S(i + 1) * S(i), S(i + 1) * S(i) * S(i + 1)))
    for name, lhs, rhs in identities:
        diff = lhs - rhs
        results.append(check(f"nil-Hecke: {name}", NILS_ANCHOR, diff.is_zero(), diff.serialize(), strands=k))

    p, q = p_vertex, q_vertex
    alg2 = KlrAlgebra(quiver, {p: 2, q: 1})
    t2 = alg2.tau
    ppq, qpp, pqp = (p, p, q), (q, p, p), (p, q, p)
    s1_ppq = nil_s(alg2, 1, ppq)
    s2_qpp = nil_s(alg2, 2, qpp)
    s1_all = nil_s(alg2, 1)
    s2_all = nil_s(alg2, 2)
    mixed = [
        ("tau_1 tau_2 s_1 1_ppq = s_2 tau_1 tau_2 1_ppq", t2(1) * t2(2) * s1_ppq, s2_all * t2(1) * t2(2) * alg2.idem(ppq)),
        ("s_1 tau_2 tau_1 1_qpp = tau_2 tau_1 s_2 1_qpp", s1_all * t2(2) * t2(1) * alg2.idem(qpp), t2(2) * t2(1) * s2_qpp),
        ("tau_1 s_2 tau_1 1_pqp = tau_2 s_1 tau_2 1_pqp", t2(1) * s2_all * t2(1) * alg2.idem(pqp), t2(2) * s1_all * t2(2) * alg2.idem(pqp)),
    ]
    for name, lhs, rhs in mixed:
        diff = lhs - rhs
        results.append(check(f"mixed colors: {name}", NILS_ANCHOR, diff.is_zero(), diff.serialize(), strands=3))
    return results


def obstruction_checks(quiver: Quiver, alpha, *, max_words: int = 64) -> CheckResult:
    """Every (sigma, v) with empty obstruction set has all reduced words equal at ``1_v``.

    Also confirms the converse on this instance: a nonempty obstruction set
    produces at least two distinct elements among the reduced words.
    """
    alg = KlrAlgebra(quiver, alpha)
    bad = None
    empty = nonempty = 0
    for p in all_permutations(alg.k):
        words = reduced_words(p)[:max_words]
        for v in alg.colorings:
            obs = obstruction_set(p, v, quiver)
            elems = [KlrElement(alg, alg._reduced_nf(w, v)) for w in words]
            all_equal = all(e == elems[0] for e in elems[1:])
            if not obs:
                empty += 1
                if not all_equal:
                    bad = bad or {"perm": list(p), "coloring": list(v), "kind": "empty obstruction but words differ"}
            else:
                nonempty += 1
                if all_equal and len(words) > 1:
                    bad = bad or {"perm": list(p), "coloring": list(v), "kind": "obstruction but all words agree"}
    return check(
        "obstruction set controls the braid relations",
        OBSTRUCTION_ANCHOR,
        bad is None,
        bad,
        alpha={str(a): c for a, c in alg.alpha.items()},
        empty_cases=empty,
        obstructed_cases=nonempty,
    )


def omega00_checks(n: int, test_degree: int = 3) -> list[CheckResult]:
    """``tau_omega00`` in type ``A_n`` at ``alpha = 2 beta``: values, square, the product formula."""
    alg, T = tau_omega00(n)
    beta = tuple(range(n, 0, -1))
    v = beta + beta
    results = []
    obs = obstruction_set(omega00_perm(n, alg.k), v, alg.quiver)
    results.append(check("omega00 has no triple inversions at (beta, beta)", OMEGA_ANCHOR, not obs, sorted(obs), n=n))
    all_words = all(KlrElement(alg, alg._reduced_nf(w, v)) == T for w in reduced_words(omega00_perm(n, alg.k))[:50])
    results.append(check("tau_omega00 is independent of the reduced word", OMEGA_ANCHOR, all_words, None, n=n))
    one = PolyRepElement(alg, {v: alg.const(1)})
    x1 = PolyRepElement(alg, {v: alg.var(1)})
    img1 = poly_rep(T, one)
    imgx = poly_rep(T, x1)
    results.append(check("tau_omega00(1) = 0", OMEGA_ANCHOR, img1.is_zero(), img1.serialize(), n=n))
    want = PolyRepElement(alg, {v: alg.const(-1)})
    results.append(check("tau_omega00(x_1) = -1", OMEGA_ANCHOR, imgx == want, imgx.serialize(), n=n))
    sq = T * T
    results.append(check("tau_omega00^2 = 0 in normal form", OMEGA_ANCHOR, sq.is_zero(), sq.serialize(), n=n))
    bad = None
    for f in monomials_up_to(alg, test_degree):
        got = poly_rep(T, PolyRepElement(alg, {v: f}))
        want = PolyRepElement(alg, {v: demazure_product_formula(alg, n, f)})
        if got != want:
            bad = bad or {"p": str(f), "got": got.serialize(), "formula": want.serialize()}
    results.append(check(
        "tau_omega00 acts by d_1 d_3 ... d_{2n-1}(p prod (y_i - x_{i+1}))",
        OMEGA_ANCHOR,
        bad is None,
        bad,
        n=n,
        test_degree=test_degree,
    ))
    deg = T.degree()
    results.append(check("tau_omega00 has degree -2", OMEGA_ANCHOR, deg == -2, {"degree": deg}, n=n))
    return results


def klr_suite(quiver: Quiver, alpha, *, products: int = 200, seed: int = 0, max_degree: int = 6) -> list[CheckResult]:
    alg = KlrAlgebra(quiver, alpha)
    results = relation_checks(alg)
    results.extend(polyrep_relation_checks(alg, degree=2))
    results.append(associativity_check(alg, samples=20, seed=seed))
    results.append(oracle_check(alg, products=products, seed=seed))
    results.append(graded_dimension_check(alg, max_degree=max_degree))
    return results
