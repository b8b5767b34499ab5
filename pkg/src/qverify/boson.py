"""q-boson operators on ``U_q^+``: right multiplications and twisted derivations.

An operator is a finite linear combination of *atom sequences*.  The atom
``("R", i)`` is right multiplication by ``E_i`` and ``("D", i)`` is the twisted
derivation ``E_i^*``.  Sequences are written in composition order: the
sequence ``(A_1, ..., A_k)`` is ``A_1 o ... o A_k``, so ``A_k`` is applied
first.  Both kinds of atom are well defined on free words and descend to
``U_q^+``, so operators are evaluated on free words and results are tested
for vanishing in ``U_q^+`` through the Lusztig form.

Because the algebra generated by the ``R_i`` and ``D_i`` has a triangular
decomposition, every operator also has a *normal-ordered form*
``sum c R_w o D_u`` obtained from ``D_i R_j = q^{-(a_i,a_j)} R_j D_i +
delta_ij/(1-q_i^2)``; with ``w`` and ``u`` reduced to standard words this is
the canonical way residual operators are reported.
"""

from __future__ import annotations

import random
import time
from collections.abc import Mapping

from .cartan import CartanData, Weight
from .qcoeff import ONE, QScalar
from .report import CheckResult, check
from .uqplus import (
    FreeElement,
    Terms,
    UqAlgebra,
    _add_into,
    algebra,
    serre_operator,
    weights_up_to,
    words_of_weight,
)

__all__ = [
    "Atom",
    "Evaluator",
    "WeightOp",
    "adjointness_check",
    "boson_relation_check",
    "boson_suite",
    "derivation_serre_check",
    "descends_check",
    "estar_apply",
    "estar_op",
    "operator_normal_form",
    "operator_vanishes",
    "pretty_normal_form",
    "random_element",
    "rmul",
    "serialize_normal_form",
]

Atom = tuple  # ("R" | "D", label)


class WeightOp:
    """A weight-shifting linear operator on ``U_q^+`` as a combination of atom sequences."""

    __slots__ = ("cd", "terms")

    def __init__(self, cd: CartanData, terms: Mapping[tuple, QScalar] | None = None) -> None:
        self.cd = cd
        self.terms: dict[tuple, QScalar] = {}
        for seq, c in (terms or {}).items():
            c = QScalar.coerce(c)
            if c.is_zero():
                continue
            for kind, lab in seq:
                if kind not in ("R", "D"):
                    raise ValueError(f"unknown atom kind {kind!r}")
                cd.idx(lab)
            _add_into(self.terms, tuple(seq), c)
        shifts = {self._seq_shift(s) for s in self.terms}
        if len(shifts) > 1:
            raise ValueError(f"operator is not homogeneous: shifts {sorted(shifts)}")

    # ---------------------------------------------------------- constructors
    @classmethod
    def R(cls, cd: CartanData, i: int) -> WeightOp:
        return cls(cd, {(("R", i),): ONE})

    @classmethod
    def D(cls, cd: CartanData, i: int) -> WeightOp:
        return cls(cd, {(("D", i),): ONE})

    @classmethod
    def identity(cls, cd: CartanData) -> WeightOp:
        return cls(cd, {(): ONE})

    @classmethod
    def zero(cls, cd: CartanData) -> WeightOp:
        return cls(cd)

    @classmethod
    def _wrap(cls, cd: CartanData, terms: dict) -> WeightOp:
        obj = cls.__new__(cls)
        obj.cd = cd
        obj.terms = terms
        return obj

    # ------------------------------------------------------------- algebra
    def _seq_shift(self, seq: tuple) -> Weight:
        out = [0] * self.cd.rank
        for kind, lab in seq:
            out[self.cd.idx(lab)] += 1 if kind == "R" else -1
        return tuple(out)

    @property
    def shift(self) -> Weight:
        """Signed weight increment (zero weight for the zero operator)."""
        for seq in self.terms:
            return self._seq_shift(seq)
        return self.cd.zero()

    def is_free_zero(self) -> bool:
        return not self.terms

    def _same(self, other: WeightOp) -> None:
        if other.cd != self.cd:
            raise ValueError("operators over different Cartan data")

    def __add__(self, other: WeightOp) -> WeightOp:
        self._same(other)
        acc = dict(self.terms)
        for s, c in other.terms.items():
            _add_into(acc, s, c)
        return WeightOp(self.cd, acc)

    def __neg__(self) -> WeightOp:
        return WeightOp._wrap(self.cd, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: WeightOp) -> WeightOp:
        return self + (-other)

    def scale(self, c: QScalar | int) -> WeightOp:
        c = QScalar.coerce(c)
        if c.is_zero():
            return WeightOp.zero(self.cd)
        return WeightOp._wrap(self.cd, {s: v * c for s, v in self.terms.items()})

    def __rmul__(self, c: QScalar | int) -> WeightOp:
        return self.scale(c)

    def __mul__(self, other: WeightOp | QScalar | int) -> WeightOp:
        """Composition: ``(A * B)(x) = A(B(x))``."""
        if not isinstance(other, WeightOp):
            return self.scale(other)
        self._same(other)
        acc: dict = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                _add_into(acc, s1 + s2, c1 * c2)
        return WeightOp._wrap(self.cd, acc)

    def __pow__(self, e: int) -> WeightOp:
        out = WeightOp.identity(self.cd)
        for _ in range(e):
            out = out * self
        return out

    def bracket(self, other: WeightOp, l: int = 1) -> WeightOp:
        """``[A, B]_{q^l} = AB - q^l BA``."""
        return self * other - (other * self).scale(QScalar.qpow(l))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightOp):
            return NotImplemented
        return self.cd == other.cd and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for seq, c in sorted(self.terms.items()):
            mono = "".join(f"E{lab}*" if k == "D" else f"R{lab}" for k, lab in seq) or "id"
            parts.append(f"({c.pretty()})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeightOp({self.pretty()})"

    def __call__(self, x: FreeElement, evaluator: Evaluator | None = None) -> FreeElement:
        ev = evaluator or Evaluator(_algebra_for(self.cd))
        return ev.apply(self, x)


def rmul(cd: CartanData, i: int) -> WeightOp:
    """Right multiplication by ``E_i`` (shift ``+alpha_i``)."""
    return WeightOp.R(cd, i)


def estar_op(cd: CartanData, i: int) -> WeightOp:
    """The twisted derivation ``E_i^*`` as an operator (shift ``-alpha_i``)."""
    return WeightOp.D(cd, i)


def _algebra_for(cd: CartanData) -> UqAlgebra:
    return algebra(cd)


def estar_apply(uq: UqAlgebra, i: int, x: FreeElement) -> FreeElement:
    """``E_i^*(x)`` by the derivation recursion on free words."""
    return uq.estar(i, x)


# --------------------------------------------------------------- evaluation
class Evaluator:
    """Applies operators to free words, memoizing every (sequence suffix, word) image.

    Terms of a bracket expansion share long suffixes, which are computed once.
    """

    def __init__(self, uq: UqAlgebra) -> None:
        self.uq = uq
        self._memo: dict[tuple[tuple, tuple], Terms] = {}

    def _eval(self, seq: tuple, word: tuple) -> Terms:
        if not seq:
            return {word: ONE}
        key = (seq, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        inner = self._eval(seq[1:], word)
        kind, lab = seq[0]
        out: Terms = {}
        if kind == "R":
            for w, c in inner.items():
                out[w + (lab,)] = c
        else:
            for w, c in inner.items():
                for w2, c2 in self.uq.estar_word(lab, w).items():
                    _add_into(out, w2, c * c2)
        self._memo[key] = out
        return out

    def apply_word(self, op: WeightOp, word: tuple) -> FreeElement:
        acc: Terms = {}
        for seq, c in op.terms.items():
            for w, v in self._eval(seq, word).items():
                _add_into(acc, w, c * v)
        return FreeElement._wrap(acc)

    def apply(self, op: WeightOp, x: FreeElement) -> FreeElement:
        acc: Terms = {}
        for word, cx in x.terms.items():
            for w, v in self.apply_word(op, word).terms.items():
                _add_into(acc, w, cx * v)
        return FreeElement._wrap(acc)


def _residual(uq: UqAlgebra, x: FreeElement) -> list:
    return uq.normal_form(x).serialize()


def _input_weights(cd: CartanData, shift: Weight, cutoff: int, min_height: int = 0) -> list[Weight]:
    """Weights of height <= cutoff whose image weight is nonnegative."""
    return [
        a
        for a in weights_up_to(cd, cutoff, min_height)
        if all(x + s >= 0 for x, s in zip(a, shift))
    ]


def operator_vanishes(
    op: WeightOp,
    uq: UqAlgebra,
    cutoff: int,
    *,
    relation: str,
    anchor: str,
    all_words: bool = False,
    evaluator: Evaluator | None = None,
    min_height: int = 0,
) -> CheckResult:
    """Check ``op = 0`` on every input of height ``<= cutoff``.

    Inputs are the standard words of each weight (which span ``U_q^+``) or,
    with ``all_words``, every word.  Images are tested for vanishing in
    ``U_q^+``.  On failure the first failing input and the normal form of its
    image are reported.
    """
    t0 = time.perf_counter()
    ev = evaluator or Evaluator(uq)
    cd = uq.cd
    inputs = 0
    nonvacuous = 0
    for alpha in _input_weights(cd, op.shift, cutoff, min_height):
        words = words_of_weight(cd, alpha) if all_words else uq.basis(alpha)
        for w in words:
            inputs += 1
            img = ev.apply_word(op, w)
            if img.is_free_zero():
                continue
            nonvacuous += 1
            if not uq.is_zero(img):
                res = check(
                    relation,
                    anchor,
                    False,
                    {"input": list(w), "image": _residual(uq, img)},
                    cutoff=cutoff,
                )
                res.runtime_ms = (time.perf_counter() - t0) * 1e3
                return res
    res = check(relation, anchor, True, cutoff=cutoff, inputs=inputs, nonzero_free_images=nonvacuous)
    res.runtime_ms = (time.perf_counter() - t0) * 1e3
    return res


# ------------------------------------------------------------ normal order
def _push_D(cd: CartanData, unit: Mapping[int, QScalar], i: int, rseq: tuple) -> list[tuple[tuple, bool, QScalar]]:
    """``D_i o R_{rseq}`` as ``sum c R_{w'} o D_i^{e}`` (``e`` in {0, 1})."""
    out: list[tuple[tuple, bool, QScalar]] = []
    exp = 0
    for p, j in enumerate(rseq):
        if j == i:
            out.append((rseq[:p] + rseq[p + 1 :], False, unit[i] * QScalar.qpow(-exp)))
        exp += cd.pair(i, j)
    out.append((rseq, True, QScalar.qpow(-exp)))
    return out


def _normal_order_seq(cd: CartanData, unit: Mapping[int, QScalar], seq: tuple, memo: dict) -> dict:
    """Normal order one atom sequence into ``{(R-sequence, D-sequence): coeff}``."""
    hit = memo.get(seq)
    if hit is not None:
        return hit
    if not seq:
        out = {((), ()): ONE}
    else:
        rest = _normal_order_seq(cd, unit, seq[1:], memo)
        kind, lab = seq[0]
        out = {}
        for (rs, ds), c in rest.items():
            if kind == "R":
                _add_into(out, ((lab,) + rs, ds), c)
            else:
                for rs2, keep, c2 in _push_D(cd, unit, lab, rs):
                    _add_into(out, (rs2, ((lab,) + ds) if keep else ds), c * c2)
    memo[seq] = out
    return out


def operator_normal_form(op: WeightOp, uq: UqAlgebra) -> dict[tuple[tuple, tuple], QScalar]:
    """Canonical form ``{(r, u): c}`` meaning ``sum c * (right mult. by r) o E_u^*``.

    ``r`` is a standard word (the element multiplied on the right) and ``u``
    a standard word with ``E_u^* = E_{u_1}^* o ... o E_{u_k}^*``.  The
    derivations satisfy the same Serre relations as the ``E_i``, so ``u`` may
    be reduced in ``U_q^+``.
    """
    cd = op.cd
    unit = {i: ONE / (ONE - QScalar.qpow(2 * cd.d(i))) for i in cd.labels}
    memo: dict = {}
    ordered: dict = {}
    for seq, c in op.terms.items():
        for key, v in _normal_order_seq(cd, unit, seq, memo).items():
            _add_into(ordered, key, c * v)
    # R_{j_1} o ... o R_{j_k} is right multiplication by E_{j_k} ... E_{j_1}
    nf_cache: dict[tuple, FreeElement] = {}

    def nf(word: tuple) -> FreeElement:
        hit = nf_cache.get(word)
        if hit is None:
            hit = uq.normal_form(FreeElement.word(*word))
            nf_cache[word] = hit
        return hit

    out: dict = {}
    for (rs, ds), c in ordered.items():
        r_nf = nf(tuple(reversed(rs)))
        d_nf = nf(ds)
        for rw, rc in r_nf.terms.items():
            for dw, dc in d_nf.terms.items():
                _add_into(out, (rw, dw), c * rc * dc)
    return out


def serialize_normal_form(nf: Mapping[tuple[tuple, tuple], QScalar]) -> list:
    """``[[r_word, u_word, coeff], ...]`` sorted; the operator ``sum c R_r E_u^*``."""
    return [[list(r), list(u), c.serialize()] for (r, u), c in sorted(nf.items())]


def pretty_normal_form(nf: Mapping[tuple[tuple, tuple], QScalar]) -> str:
    if not nf:
        return "0"
    parts = []
    for (r, u), c in sorted(nf.items()):
        mono = (f"R[{''.join(map(str, r))}]" if r else "") + "".join(f"E{i}*" for i in u)
        parts.append(f"({c.pretty()})*{mono or 'id'}")
    return " + ".join(parts)


# ------------------------------------------------------------------ checks
BOSON_ANCHOR = "q-boson relation f_i e_j - q^{-(i,j)} e_j f_i = delta_ij/(1-q_i^2)"
SERRE_D_ANCHOR = "derivations E_i^* satisfy the quantum Serre relations"
ADJOINT_ANCHOR = "E_i^* is adjoint to right multiplication by E_i"
DESCENDS_ANCHOR = "operator preserves the radical of the Lusztig form"


def boson_relation_check(uq: UqAlgebra, i: int, j: int, cutoff: int, evaluator: Evaluator | None = None) -> CheckResult:
    """Verify ``f_i e_j - q^{-(a_i,a_j)} e_j f_i = delta_ij/(1-q_i^2)`` on every word of height <= cutoff."""
    cd = uq.cd
    D, R = WeightOp.D(cd, i), WeightOp.R(cd, j)
    lhs = D * R - (R * D).scale(QScalar.qpow(-cd.pair(i, j)))
    if i == j:
        lhs = lhs - WeightOp.identity(cd).scale(ONE / (ONE - QScalar.qpow(2 * cd.d(i))))
    return operator_vanishes(
        lhs,
        uq,
        cutoff,
        relation=f"boson f{i}e{j} [{cd.name}]",
        anchor=BOSON_ANCHOR,
        all_words=True,
        evaluator=evaluator,
    )


def derivation_serre_check(uq: UqAlgebra, i: int, j: int, cutoff: int, evaluator: Evaluator | None = None) -> CheckResult:
    """``S_{q_i, 1-C_ij}(E_i^*, E_j^*) = 0`` as an operator up to ``cutoff``."""
    cd = uq.cd
    op = serre_operator(WeightOp.D(cd, i), WeightOp.D(cd, j), 1 - cd.C(i, j), cd.d(i), one=None)
    return operator_vanishes(
        op,
        uq,
        cutoff,
        relation=f"Serre(E{i}*,E{j}*) [{cd.name}]",
        anchor=SERRE_D_ANCHOR,
        evaluator=evaluator,
    )


def random_element(uq: UqAlgebra, alpha: Weight, rng: random.Random, terms: int = 3) -> FreeElement:
    """A random combination of words of weight ``alpha`` with small Laurent coefficients."""
    words = words_of_weight(uq.cd, alpha)
    acc: Terms = {}
    for w in rng.sample(words, min(terms, len(words))):
        c = QScalar.from_laurent({rng.randint(-2, 2): rng.choice([-2, -1, 1, 2])})
        _add_into(acc, w, c)
    return FreeElement._wrap(acc)


def adjointness_check(uq: UqAlgebra, cutoff: int, samples: int, seed: int) -> CheckResult:
    """``(E_i^*(x), y) = (x, y E_i)`` on seeded random homogeneous pairs."""
    cd = uq.cd
    rng = random.Random(seed)
    weights = [a for a in weights_up_to(cd, cutoff, 1)]
    for _ in range(samples):
        alpha = rng.choice(weights)
        i = rng.choice([lab for lab, k in zip(cd.labels, alpha) if k])
        lower = list(alpha)
        lower[cd.idx(i)] -= 1
        x = random_element(uq, alpha, rng)
        y = random_element(uq, tuple(lower), rng)
        lhs = uq.lusztig_form(uq.estar(i, x), y)
        rhs = uq.lusztig_form(x, uq.rmul(i, y))
        if lhs != rhs:
            return check(
                f"adjointness [{cd.name}]",
                ADJOINT_ANCHOR,
                False,
                {"i": i, "x": x.serialize(), "y": y.serialize(), "lhs": lhs.serialize(), "rhs": rhs.serialize()},
            )
    return check(f"adjointness [{cd.name}]", ADJOINT_ANCHOR, True, samples=samples, seed=seed)


def descends_check(op: WeightOp, uq: UqAlgebra, cutoff: int, name: str, evaluator: Evaluator | None = None) -> CheckResult:
    """The operator maps every radical relation of height <= cutoff into the radical."""
    ev = evaluator or Evaluator(uq)
    count = 0
    for alpha in _input_weights(uq.cd, op.shift, cutoff, 1):
        for rel in uq.gram_table(alpha).kernel:
            count += 1
            img = ev.apply(op, FreeElement(rel))
            if not uq.is_zero(img):
                return check(
                    f"descends {name} [{uq.cd.name}]",
                    DESCENDS_ANCHOR,
                    False,
                    {"relation": FreeElement(rel).serialize(), "image": _residual(uq, img)},
                )
    return check(f"descends {name} [{uq.cd.name}]", DESCENDS_ANCHOR, True, relations=count, cutoff=cutoff)


def boson_suite(uq: UqAlgebra, cutoff: int, *, samples: int = 20, seed: int = 0, descend_cutoff: int = 4) -> list[CheckResult]:
    """All boson-level checks for one Cartan datum."""
    cd = uq.cd
    ev = Evaluator(uq)
    out = []
    for i in cd.labels:
        for j in cd.labels:
            out.append(boson_relation_check(uq, i, j, cutoff, ev))
    for i in cd.labels:
        for j in cd.labels:
            if i != j:
                out.append(derivation_serre_check(uq, i, j, cutoff, ev))
    out.append(adjointness_check(uq, min(cutoff, 5), samples, seed))
    for i in cd.labels:
        out.append(descends_check(WeightOp.R(cd, i), uq, descend_cutoff, f"R{i}", ev))
        out.append(descends_check(WeightOp.D(cd, i), uq, descend_cutoff, f"E{i}*", ev))
    return out
