"""Cartan data, the weight lattice ``N[I]``, and quiver orientations.

Conventions
-----------
* ``C[i][j] = <alpha_i^vee, alpha_j>`` (Kac convention) with symmetrizers
  ``d_i`` such that ``d_i C[i][j] = d_j C[j][i]``.
* The symmetric pairing is ``(alpha_i, alpha_j) = d_i C[i][j]`` so that
  ``(alpha_i, alpha_i) = 2 d_i``.
* ``edges[i][j]`` is the number of arrows ``i -> j`` of the chosen orientation.
  Finite type A is oriented ``i -> i+1``; the affine vertex of type A has
  arrows ``0 -> 1`` and ``0 -> n`` (two arrows ``0 -> 1`` for rank one).

Weights are tuples of nonnegative integers aligned with ``labels``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    "CartanData",
    "Weight",
    "from_type_tag",
    "pairing",
    "preset",
    "product_type",
]

Weight = tuple  # tuple[int, ...] aligned with CartanData.labels


@dataclass(frozen=True)
class CartanData:
    """Immutable Cartan datum with symmetrizers and an orientation."""

    name: str
    labels: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    sym: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]
    # highest root (finite types only), as a weight tuple
    theta: tuple[int, ...] | None = None
    _index: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        k = len(self.labels)
        if len(set(self.labels)) != k:
            raise ValueError("labels must be distinct")
        for row in (self.matrix, self.edges):
            if len(row) != k or any(len(r) != k for r in row):
                raise ValueError("matrix and edge table must be square over the labels")
        if len(self.sym) != k or any(d <= 0 for d in self.sym):
            raise ValueError("symmetrizers must be positive, one per label")
        for a in range(k):
            if self.matrix[a][a] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            for b in range(k):
                if a == b:
                    continue
                cab, cba = self.matrix[a][b], self.matrix[b][a]
                if cab > 0 or (cab == 0) != (cba == 0):
                    raise ValueError("off-diagonal entries must be <= 0 and vanish together")
                if self.sym[a] * cab != self.sym[b] * cba:
                    raise ValueError("symmetrizers do not symmetrize the matrix")
        self._index.update({lab: pos for pos, lab in enumerate(self.labels)})

    # -------------------------------------------------------------- lookup
    def idx(self, label: int) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"vertex {label} not in {self.name}") from None

    @property
    def rank(self) -> int:
        return len(self.labels)

    def C(self, i: int, j: int) -> int:
        return self.matrix[self.idx(i)][self.idx(j)]

    def d(self, i: int) -> int:
        return self.sym[self.idx(i)]

    def pair(self, i: int, j: int) -> int:
        """``(alpha_i, alpha_j) = d_i C_ij``."""
        a = self.idx(i)
        return self.sym[a] * self.matrix[a][self.idx(j)]

    def m(self, i: int, j: int) -> int:
        """Number of arrows ``i -> j``."""
        return self.edges[self.idx(i)][self.idx(j)]

    def symmetric(self) -> bool:
        """True when the Cartan matrix itself is symmetric (all ``d_i`` equal)."""
        return all(
            self.matrix[a][b] == self.matrix[b][a] for a in range(self.rank) for b in range(self.rank)
        )

    # ------------------------------------------------------------- weights
    def zero(self) -> Weight:
        return (0,) * self.rank

    def simple(self, i: int) -> Weight:
        w = [0] * self.rank
        w[self.idx(i)] = 1
        return tuple(w)

    def weight(self, coords: Mapping[int, int] | Sequence[int]) -> Weight:
        if isinstance(coords, Mapping):
            w = [0] * self.rank
            for lab, c in coords.items():
                w[self.idx(lab)] = c
            out = tuple(w)
        else:
            out = tuple(coords)
            if len(out) != self.rank:
                raise ValueError(f"weight must have {self.rank} coordinates")
        if any(c < 0 for c in out):
            raise ValueError("weights in N[I] have nonnegative coordinates")
        return out

    def weight_of_word(self, word: Iterable[int]) -> Weight:
        w = [0] * self.rank
        for lab in word:
            w[self.idx(lab)] += 1
        return tuple(w)

    def pair_weights(self, a: Sequence[int], b: Sequence[int]) -> int:
        k = self.rank
        if len(a) != k or len(b) != k:
            raise ValueError("weights over mismatched label sets")
        return sum(
            a[x] * b[y] * self.sym[x] * self.matrix[x][y]
            for x in range(k)
            if a[x]
            for y in range(k)
            if b[y]
        )

    def pair_vertex_weight(self, i: int, b: Sequence[int]) -> int:
        """``(alpha_i, beta)`` for a weight ``beta``."""
        x = self.idx(i)
        row = self.matrix[x]
        return self.sym[x] * sum(row[y] * b[y] for y in range(self.rank) if b[y])

    # --------------------------------------------------------- root system
    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        """Positive roots (finite types only), sorted by height then coordinates."""
        if self.theta is None:
            raise ValueError(f"{self.name} is not of finite type")
        k = self.rank
        seen = {self.simple(lab) for lab in self.labels}
        frontier = list(seen)
        while frontier:
            nxt = []
            for beta in frontier:
                for a in range(k):
                    coroot = sum(self.matrix[a][b] * beta[b] for b in range(k))
                    img = list(beta)
                    img[a] -= coroot
                    img_t = tuple(img)
                    if all(c >= 0 for c in img_t) and img_t not in seen:
                        seen.add(img_t)
                        nxt.append(img_t)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (sum(r), r)))

    def q_exponent(self, i: int) -> int:
        """Exponent ``d_i`` with ``q_i = q**d_i``."""
        return self.d(i)

    def Q_poly_exponents(self, i: int, j: int) -> tuple[int, int]:
        """Exponents ``(m_ij, m_ji)`` in ``Q_ij(u,v) = (v-u)^{m_ij} (u-v)^{m_ji}``."""
        return self.m(i, j), self.m(j, i)

    # ------------------------------------------------------------- affine
    def affine(self) -> CartanData:
        """The untwisted affinization with extending vertex labelled 0."""
        if self.theta is None:
            raise ValueError("affinization requires a finite type with a highest root")
        if 0 in self.labels:
            raise ValueError("label 0 is reserved for the extending vertex")
        k = self.rank
        th = self.theta
        tt = self.pair_weights(th, th)
        d0 = tt // 2
        labels = (0,) + self.labels
        pair0 = [-self.pair_vertex_weight(lab, th) for lab in self.labels]  # (alpha_0, alpha_j)
        mat = [[2] + [0] * k]
        for a in range(k):
            mat[0][a + 1] = 2 * pair0[a] // tt
        for a in range(k):
            row = [2 * pair0[a] // (2 * self.sym[a])] + list(self.matrix[a])
            mat.append(row)
        edges = [[0] * (k + 1)] + [[0] + list(self.edges[a]) for a in range(k)]
        for a in range(k):
            if mat[0][a + 1]:
                # the extending vertex is a source: all new arrows point out of 0
                edges[0][a + 1] = -mat[0][a + 1] if self.symmetric() else 1
        return CartanData(
            name=f"{self.name}_hat" if not self.name.endswith(")") else self.name.replace("(", "_hat(", 1),
            labels=labels,
            matrix=tuple(tuple(r) for r in mat),
            sym=(d0,) + self.sym,
            edges=tuple(tuple(r) for r in edges),
            theta=None,
        )

    def finite_part(self) -> CartanData:
        """Drop vertex 0 from an affine datum."""
        keep = [a for a, lab in enumerate(self.labels) if lab != 0]
        return CartanData(
            name=self.name.replace("_hat", ""),
            labels=tuple(self.labels[a] for a in keep),
            matrix=tuple(tuple(self.matrix[a][b] for b in keep) for a in keep),
            sym=tuple(self.sym[a] for a in keep),
            edges=tuple(tuple(self.edges[a][b] for b in keep) for a in keep),
        )


# ------------------------------------------------------------------ presets
def _type_a(n: int) -> CartanData:
    if n < 1:
        raise ValueError("A(n) requires n >= 1")
    mat = [[0] * n for _ in range(n)]
    edges = [[0] * n for _ in range(n)]
    for a in range(n):
        mat[a][a] = 2
        if a + 1 < n:
            mat[a][a + 1] = mat[a + 1][a] = -1
            edges[a][a + 1] = 1
    return CartanData(
        name=f"A({n})",
        labels=tuple(range(1, n + 1)),
        matrix=tuple(map(tuple, mat)),
        sym=(1,) * n,
        edges=tuple(map(tuple, edges)),
        theta=(1,) * n,
    )


def _type_d4() -> CartanData:
    # 2 is the central vertex; arrows 1 -> 2, 2 -> 3, 2 -> 4
    mat = ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))
    edges = ((0, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 0), (0, 0, 0, 0))
    return CartanData("D4", (1, 2, 3, 4), mat, (1, 1, 1, 1), edges, theta=(1, 2, 1, 1))


def _type_c2() -> CartanData:
    # 1 is the short simple root: (a1,a1) = 2, (a2,a2) = 4, (a1,a2) = -2
    mat = ((2, -2), (-1, 2))
    edges = ((0, 1), (0, 0))
    return CartanData("C2", (1, 2), mat, (1, 2), edges, theta=(2, 1))


def product_type(*parts: CartanData) -> CartanData:
    """Block-diagonal product (e.g. ``sl2 x sl2``), relabelling vertices 1..k."""
    mats: list[list[int]] = []
    edges: list[list[int]] = []
    sym: list[int] = []
    theta_ok = True
    total = sum(p.rank for p in parts)
    off = 0
    for p in parts:
        for a in range(p.rank):
            row = [0] * total
            erow = [0] * total
            for b in range(p.rank):
                row[off + b] = p.matrix[a][b]
                erow[off + b] = p.edges[a][b]
            mats.append(row)
            edges.append(erow)
        sym.extend(p.sym)
        theta_ok = theta_ok and p.theta is not None
        off += p.rank
    return CartanData(
        name=" x ".join(p.name for p in parts),
        labels=tuple(range(1, total + 1)),
        matrix=tuple(map(tuple, mats)),
        sym=tuple(sym),
        edges=tuple(map(tuple, edges)),
        theta=None,
    )


_TAG = re.compile(r"^(A|A_hat)\((\d+)\)$")


def preset(type_tag: str) -> CartanData:
    """Return one of ``A(n)``, ``A_hat(n)``, ``D4``, ``D4_hat``, ``C2``, ``C2_hat``."""
    m = _TAG.match(type_tag)
    if m:
        base = _type_a(int(m.group(2)))
        return base.affine() if m.group(1) == "A_hat" else base
    table = {
        "D4": _type_d4,
        "D4_hat": lambda: _type_d4().affine(),
        "C2": _type_c2,
        "C2_hat": lambda: _type_c2().affine(),
    }
    if type_tag not in table:
        raise ValueError(f"unknown type tag {type_tag!r}")
    return table[type_tag]()


def from_type_tag(tag: str) -> CartanData:
    """CLI-style tags: ``a2``, ``a3``, ``d4``, ``c2``, ``sl2`` (finite types)."""
    t = tag.lower()
    if t == "sl2":
        return preset("A(1)")
    m = re.match(r"^a(\d+)$", t)
    if m:
        return preset(f"A({int(m.group(1))})")
    if t in ("d4", "c2"):
        return preset(t.upper())
    raise ValueError(f"unknown type tag {tag!r}")


def pairing(cd: CartanData, a: Sequence[int], b: Sequence[int]) -> int:
    """Symmetric bilinear pairing on ``N[I]`` with ``(alpha_i, alpha_i) = 2 d_i``."""
    return cd.pair_weights(a, b)
