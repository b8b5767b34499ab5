"""The prefundamental module on descending monomials.

Basis vectors are nonincreasing sequences ``(k_n, ..., k_1)``; the vector
``(k_n, ..., k_1)`` corresponds to the image of ``E_n^{k_n} ... E_1^{k_1}`` in
``U_q^+(sl_{n+1}) / M``.  Sequences that are not nonincreasing or not
nonnegative denote the zero vector.  The affine Borel generators act by the
closed-form table in :func:`act`; :func:`verify_module_relations` checks the
defining relations and the intertwiner with the quotient.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import product

from .affine import PRESETS_A, build_bracket_op, submodule
from .boson import Evaluator
from .cartan import Weight, preset
from .qcoeff import ONE, ZERO, QScalar, quantum_int
from .report import CheckResult, check
from .uqplus import FreeElement, _add_into, serre_operator

__all__ = [
    "CharacterSeries",
    "DescMonomial",
    "ModuleOp",
    "act",
    "char_my",
    "char_quotient",
    "character_check",
    "desc_monomials",
    "hitting_chain",
    "intertwiner_checks",
    "relation_suites",
    "simplicity_checks",
    "verify_module_relations",
]

RELATIONS_ANCHOR = "U_q^+(sl_{n+1})/M is isomorphic to the prefundamental module R^-_{n,o(n)aq^{-1}}"
CHAR_ANCHOR = "character of U_q^+(sl_{n+1})/M equals chi_MY,n"
SIMPLE_ANCHOR = "U_q^+(sl_{n+1})/M is a simple module"
BASIS_ANCHOR = "images of the descending monomials form a basis of the quotient"


@dataclass(frozen=True)
class DescMonomial:
    """A basis vector ``(k_n, ..., k_1)``; ``valid`` is False for the zero vector."""

    ks: tuple[int, ...]

    @property
    def valid(self) -> bool:
        ks = self.ks
        return all(k >= 0 for k in ks) and all(ks[p] >= ks[p + 1] for p in range(len(ks) - 1))

    @property
    def n(self) -> int:
        return len(self.ks)

    def k(self, i: int) -> int:
        """The exponent of ``E_i`` (vertex ``i`` in 1..n)."""
        return self.ks[self.n - i]

    @property
    def weight(self) -> Weight:
        """``(k_1, ..., k_n)`` in vertex order."""
        return tuple(reversed(self.ks))

    @property
    def height(self) -> int:
        return sum(self.ks)

    def word(self) -> tuple[int, ...]:
        return tuple(lab for lab in range(self.n, 0, -1) for _ in range(self.k(lab)))

    @classmethod
    def from_weight(cls, alpha: Weight) -> DescMonomial:
        return cls(tuple(reversed(tuple(alpha))))


Vector = dict  # dict[tuple[int,...], QScalar]


def _vec(ks: tuple[int, ...], c: QScalar) -> Vector:
    if c.is_zero() or not DescMonomial(ks).valid:
        return {}
    return {ks: c}


def act(gen: tuple, v: DescMonomial, a: QScalar = ONE) -> Vector:
    """One generator on one basis vector.

    ``gen`` is ``("K", i)`` / ``("Kinv", i)`` for ``i`` in ``0..n``, ``("E", i)``
    for ``i`` in ``1..n``, or ``("E", 0)``.  The result is a sparse vector
    ``{ks: coeff}``; invalid input or output sequences give the zero vector.
    """
    if not v.valid:
        return {}
    n = v.n
    kind, i = gen
    ks = v.ks
    if kind in ("K", "Kinv"):
        aff = preset(f"A_hat({n})")
        exp = sum(v.k(j) * aff.C(i, j) for j in range(1, n + 1))
        return _vec(ks, QScalar.qpow(exp if kind == "K" else -exp))
    if kind != "E":
        raise ValueError(f"unknown generator {gen!r}")
    if i == 0:
        c = a * QScalar.qpow(1 - v.k(n)) / (ONE - QScalar.qpow(2))
        for k in ks:
            c = c * quantum_int(k)
        return _vec(tuple(k - 1 for k in ks), c)
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range for n = {n}")
    new = list(ks)
    new[n - i] += 1
    if i == 1:
        return _vec(tuple(new), ONE)
    ki, kprev = v.k(i), v.k(i - 1)
    return _vec(tuple(new), quantum_int(ki + 1 - kprev) / quantum_int(ki + 1))


class ModuleOp:
    """A linear combination of generator words acting on the table module (composition order)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, QScalar] | None = None) -> None:
        self.terms: dict[tuple, QScalar] = {}
        for s, c in (terms or {}).items():
            _add_into(self.terms, tuple(s), QScalar.coerce(c))

    @classmethod
    def gen(cls, kind: str, i: int) -> ModuleOp:
        return cls({((kind, i),): ONE})

    def __add__(self, other: ModuleOp) -> ModuleOp:
        acc = dict(self.terms)
        for s, c in other.terms.items():
            _add_into(acc, s, c)
        return ModuleOp(acc)

    def __neg__(self) -> ModuleOp:
        return ModuleOp({s: -c for s, c in self.terms.items()})

    def __sub__(self, other: ModuleOp) -> ModuleOp:
        return self + (-other)

    def scale(self, c: QScalar | int) -> ModuleOp:
        c = QScalar.coerce(c)
        return ModuleOp({s: v * c for s, v in self.terms.items()})

    def __mul__(self, other: ModuleOp) -> ModuleOp:
        acc: dict = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                _add_into(acc, s1 + s2, c1 * c2)
        return ModuleOp(acc)

    def apply(self, v: DescMonomial, a: QScalar = ONE, memo: dict | None = None) -> Vector:
        memo = {} if memo is None else memo
        out: Vector = {}
        for seq, c in self.terms.items():
            for ks, x in _apply_seq(seq, v.ks, a, memo).items():
                _add_into(out, ks, c * x)
        return out


def _apply_seq(seq: tuple, ks: tuple, a: QScalar, memo: dict) -> Vector:
    if not seq:
        return {ks: ONE}
    key = (seq, ks)
    hit = memo.get(key)
    if hit is not None:
        return hit
    inner = _apply_seq(seq[1:], ks, a, memo)
    out: Vector = {}
    for ks2, c in inner.items():
        for ks3, c2 in act(seq[0], DescMonomial(ks2), a).items():
            _add_into(out, ks3, c * c2)
    memo[key] = out
    return out


def desc_monomials(n: int, H: int) -> list[DescMonomial]:
    """All basis vectors of height ``<= H``, by height then lexicographically."""
    out = []

    def rec(prefix: list[int], remaining: int, cap: int) -> None:
        if len(prefix) == n:
            out.append(DescMonomial(tuple(prefix)))
            return
        for k in range(min(cap, remaining), -1, -1):
            prefix.append(k)
            rec(prefix, remaining - k, k)
            prefix.pop()

    rec([], H, H)
    return sorted(out, key=lambda d: (d.height, d.ks))


# ------------------------------------------------------------- characters
@dataclass
class CharacterSeries:
    """Weight multiplicities truncated at height ``H`` (weights in vertex order)."""

    n: int
    H: int
    coeffs: dict[Weight, int]

    def nonzero(self) -> dict[Weight, int]:
        return {w: c for w, c in self.coeffs.items() if c}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "height": self.H,
            "coefficients": [[list(w), c] for w, c in sorted(self.nonzero().items(), key=lambda t: (sum(t[0]), t[0]))],
        }

    def table(self) -> str:
        lines = ["weight\tcoefficient"]
        for w, c in sorted(self.nonzero().items(), key=lambda t: (sum(t[0]), t[0])):
            lines.append(f"{','.join(map(str, w))}\t{c}")
        return "\n".join(lines) + "\n"


def _all_weights(n: int, H: int) -> list[Weight]:
    return [w for w in product(range(H + 1), repeat=n) if sum(w) <= H]


def char_my(n: int, i: int, H: int) -> CharacterSeries:
    """Expand ``1 / prod_{alpha > 0} (1 - e^alpha)^{[alpha]_i}`` to height ``H``."""
    cd = preset(f"A({n})")
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range")
    factors: list[Weight] = []
    for root in cd.positive_roots:
        factors.extend([root] * root[i - 1])
    series: dict[Weight, int] = {tuple([0] * n): 1}
    for root in factors:
        # multiply by the geometric series 1/(1 - e^root), truncated
        new: dict[Weight, int] = {}
        for w, c in series.items():
            cur = w
            while sum(cur) <= H:
                new[cur] = new.get(cur, 0) + c
                cur = tuple(x + r for x, r in zip(cur, root))
        series = new
    coeffs = {w: series.get(w, 0) for w in _all_weights(n, H)}
    return CharacterSeries(n, H, coeffs)


def char_quotient(n: int, H: int) -> CharacterSeries:
    """Weight-space dimensions of ``U_q^+(sl_{n+1}) / M`` up to height ``H``."""
    sub = submodule(n)
    return CharacterSeries(n, H, {w: sub.quotient_dim(w) for w in _all_weights(n, H)})


# --------------------------------------------------------------- relations
def _aff(n: int):
    return preset(f"A_hat({n})")


def _vanishes_on(op: ModuleOp, basis: Iterable[DescMonomial], a: QScalar, memo: dict) -> tuple[bool, object]:
    count = 0
    for v in basis:
        count += 1
        img = op.apply(v, a, memo)
        if img:
            return False, {"input": list(v.ks), "image": [[list(k), c.serialize()] for k, c in sorted(img.items())]}
    return True, count


def _suite_check(name: str, op: ModuleOp, basis, a, memo) -> CheckResult:
    ok, info = _vanishes_on(op, basis, a, memo)
    if ok:
        return check(name, RELATIONS_ANCHOR, True, vectors=info)
    return check(name, RELATIONS_ANCHOR, False, info)


def relation_suites(n: int, a: QScalar, H: int) -> list[CheckResult]:
    """Suites (1)-(3): finite Serre, affine Serre, and K-conjugation, on all vectors of height <= H."""
    cd = preset(f"A({n})")
    aff = _aff(n)
    basis = desc_monomials(n, H)
    memo: dict = {}
    E = lambda i: ModuleOp.gen("E", i)
    out = []
    for i in cd.labels:
        for j in cd.labels:
            if i != j:
                out.append(_suite_check(f"(1) Serre(E{i},E{j}) on table [n={n}]", serre_operator(E(i), E(j), 1 - cd.C(i, j)), basis, a, memo))
    for i in cd.labels:
        m0, mi = 1 - aff.C(0, i), 1 - aff.C(i, 0)
        out.append(_suite_check(f"(2) Serre(E0,E{i}) on table [n={n}]", serre_operator(E(0), E(i), m0), basis, a, memo))
        if not (m0 == 1 and mi == 1):
            out.append(_suite_check(f"(2) Serre(E{i},E0) on table [n={n}]", serre_operator(E(i), E(0), mi), basis, a, memo))
    for i in aff.labels:
        K, Kinv = ModuleOp.gen("K", i), ModuleOp.gen("Kinv", i)
        for j in aff.labels:
            op = K * E(j) * Kinv - E(j).scale(QScalar.qpow(aff.C(i, j)))
            out.append(_suite_check(f"(3) K{i}E{j}K{i}^-1 = q^C E{j} [n={n}]", op, basis, a, memo))
        out.append(_suite_check(f"(3) K{i}K{i}^-1 = 1 [n={n}]", K * Kinv - ModuleOp({(): ONE}), basis, a, memo))
    return out


def intertwiner_checks(n: int, a: QScalar, H: int) -> list[CheckResult]:
    """Suite (4): the map ``D_alpha mod M -> (k)`` commutes with every generator.

    For each basis vector ``v`` and generator ``g`` the generator is applied
    to the descending word in ``U_q^+`` (right multiplication or ``E_0``),
    projected to the quotient, and compared with the table value.
    """
    sub = submodule(n)
    cd, uq = sub.cd, sub.uq
    ev = Evaluator(uq)
    E0 = build_bracket_op(PRESETS_A(n).spec(a), cd)
    theta = tuple(cd.theta)
    out = []
    # bijectivity per weight: one-dimensional exactly at descending weights
    bad = None
    for alpha in _all_weights(n, H):
        expect = 1 if DescMonomial.from_weight(alpha).valid else 0
        if sub.quotient_dim(alpha) != expect:
            bad = {"weight": list(alpha), "dim": sub.quotient_dim(alpha), "expected": expect}
            break
    out.append(check(f"(4) intertwiner bijective per weight [n={n}]", BASIS_ANCHOR, bad is None, bad, height=H))
    for gen in [("E", i) for i in range(1, n + 1)] + [("E", 0)]:
        failure = None
        count = 0
        for v in desc_monomials(n, H):
            x = FreeElement.word(*v.word())
            if gen[1] == 0:
                img = ev.apply(E0, x)
                target = tuple(w - t for w, t in zip(v.weight, theta))
            else:
                img = uq.rmul(gen[1], x)
                target = tuple(w + (1 if p == gen[1] - 1 else 0) for p, w in enumerate(v.weight))
            table = act(gen, v, a)
            if any(t < 0 for t in target):
                got = ZERO
                want = ZERO if not table else None
            else:
                got = sub.project(img, target)
                tks = DescMonomial.from_weight(target).ks
                want = table.get(tks, ZERO)
                if any(k != tks for k in table):  # the table never leaves the target weight
                    want = None
            count += 1
            if want is None or got != want:
                failure = {
                    "vector": list(v.ks),
                    "quotient": got.serialize(),
                    "table": [[list(k), c.serialize()] for k, c in sorted(table.items())],
                }
                break
        out.append(
            check(f"(4) intertwiner commutes with E{gen[1]} [n={n}]", RELATIONS_ANCHOR, failure is None, failure, vectors=count)
        )
    # K_i acts on the quotient through the weight: q^{(alpha_i, wt)} with alpha_0 pairing as -theta
    aff = _aff(n)
    failure = None
    for v in desc_monomials(n, H):
        for i in aff.labels:
            if i == 0:
                exp = -cd.pair_weights(theta, v.weight)
            else:
                exp = cd.pair_weights(cd.simple(i), v.weight)
            if act(("K", i), v, a) != {v.ks: QScalar.qpow(exp)}:
                failure = {"vector": list(v.ks), "K": i}
                break
    out.append(check(f"(4) intertwiner commutes with K [n={n}]", RELATIONS_ANCHOR, failure is None, failure))
    return out


def hitting_chain(v: DescMonomial, a: QScalar = ONE) -> tuple[list[tuple], Vector]:
    """Generators taking ``v`` to a nonzero multiple of the vacuum.

    Repeatedly let ``i`` be the smallest vertex with ``k_i != 0``; apply
    ``E_{i-1}^{k_i}`` first, then down to ``E_1^{k_i}``, then ``E_0^{k_i}``.
    Returns the applied generators (in application order) and the final vector.
    """
    cur: Vector = {v.ks: ONE}
    seq: list[tuple] = []
    for _ in range(v.height + 1):
        (ks, c), = cur.items()
        d = DescMonomial(ks)
        if not any(ks):
            return seq, cur
        i = next(lab for lab in range(1, d.n + 1) if d.k(lab))
        k = d.k(i)
        step = [("E", j) for j in range(i - 1, 0, -1) for _ in range(k)] + [("E", 0)] * k
        for g in step:
            ((ks2, c2),) = cur.items()
            nxt = act(g, DescMonomial(ks2), a)
            if len(nxt) != 1:
                return seq + [g], nxt
            cur = {k3: c2 * c3 for k3, c3 in nxt.items()}
            seq.append(g)
    return seq, cur


def simplicity_checks(n: int, a: QScalar, H: int) -> list[CheckResult]:
    """Hitting chains reach the vacuum; the vacuum generates every vector (lowest-weight probe)."""
    out = []
    failure = None
    count = 0
    for v in desc_monomials(n, H):
        count += 1
        seq, final = hitting_chain(v, a)
        vac = tuple([0] * n)
        if set(final) != {vac} or final[vac].is_zero():
            failure = {"vector": list(v.ks), "chain": [list(g) for g in seq]}
            break
    out.append(check(f"hitting chain reaches vacuum [n={n}]", SIMPLE_ANCHOR, failure is None, failure, vectors=count))
    # every basis vector is reached from the vacuum by the finite E's
    reached = {tuple([0] * n)}
    frontier = [tuple([0] * n)]
    while frontier:
        nxt = []
        for ks in frontier:
            for i in range(1, n + 1):
                for ks2 in act(("E", i), DescMonomial(ks), a):
                    if sum(ks2) <= H and ks2 not in reached:
                        reached.add(ks2)
                        nxt.append(ks2)
        frontier = nxt
    want = {d.ks for d in desc_monomials(n, H)}
    out.append(
        check(
            f"vacuum generates the module [n={n}]", SIMPLE_ANCHOR, reached == want,
            {"missing": [list(k) for k in sorted(want - reached)]}, vectors=len(want),
        )
    )
    return out


def character_check(n: int, H: int) -> CheckResult:
    got = char_quotient(n, H).coeffs
    want = char_my(n, n, H).coeffs
    diff = [[list(w), got[w], want[w]] for w in sorted(got) if got[w] != want[w]]
    return check(f"char(U/M) = chi_MY,{n} to height {H}", CHAR_ANCHOR, not diff, {"mismatches": diff[:5]}, weights=len(got))


def verify_module_relations(n: int, a: QScalar = ONE, H: int = 6) -> list[CheckResult]:
    """Suites (1)-(4) plus the simplicity and lowest-weight probes."""
    out = relation_suites(n, a, H)
    out.extend(intertwiner_checks(n, a, H))
    out.extend(simplicity_checks(n, a, H))
    return out
