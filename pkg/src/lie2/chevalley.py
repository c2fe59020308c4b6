"""Finite root systems and Chevalley algebras reduced mod 2.

Cartan matrices use the convention ``C[i][j] = alpha_j(h_i)``, so row i
lists the eigenvalues of the coroot h_i on the simple root vectors.
Simple roots are numbered as in Bourbaki.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import LieAlgebra, Projection, center, quotient_by_ideal
from .exactla import Subspace
from .field import field_make
from .restricted import TwoMap, induced_two_map

#: types that are not simple as classical quotients of the Chevalley algebra
EXCLUDED = ("A1", "B", "C", "F4")
MAX_ROOTS = 4096


class RootSystemError(ValueError):
    pass


def parse_type(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", label)
    if not m:
        raise RootSystemError(f"cannot parse root system type {label!r}")
    letter, rank = m.group(1).upper(), int(m.group(2))
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if not valid[letter]:
        raise RootSystemError(f"no finite root system of type {letter}{rank}")
    return letter, rank


def type_name(letter: str, rank: int) -> str:
    return f"{letter}{rank}"


def is_excluded(label: str) -> bool:
    """Types whose classical quotient is not simple in characteristic 2."""
    letter, rank = parse_type(label)
    return (letter, rank) == ("A", 1) or letter in ("B", "C") or (letter, rank) == ("F", 4)


def cartan_matrix(label: str) -> np.ndarray:
    letter, l = parse_type(label)
    C = 2 * np.eye(l, dtype=np.int64)

    def link(i, j, cij=-1, cji=-1):
        C[i, j], C[j, i] = cij, cji

    if letter in "ABCD":
        chain = l - 1 if letter == "D" else l
        for i in range(chain - 1):
            link(i, i + 1)
        if letter == "B":
            C[l - 1, l - 2] = -2
        elif letter == "C":
            C[l - 2, l - 1] = -2
        elif letter == "D":
            link(l - 3, l - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, l - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -3, -1)
    return C


def symmetrizer(C: np.ndarray) -> list[Fraction]:
    """d_i with d_i C[i][j] symmetric, normalised so min d_i = 1."""
    l = C.shape[0]
    d: list[Fraction | None] = [None] * l
    for start in range(l):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(l):
                if j != i and C[i, j] != 0:
                    if C[j, i] == 0:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
                    val = d[i] * int(C[i, j]) / int(C[j, i])
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
    lo = min(d)
    return [x / lo for x in d]


@dataclass
class RootSystem:
    cartan: np.ndarray
    positive: list[tuple[int, ...]]
    label: str | None = None

    @property
    def rank(self) -> int:
        return self.cartan.shape[0]

    @property
    def negative(self) -> list[tuple[int, ...]]:
        return [tuple(-c for c in r) for r in self.positive]

    @property
    def roots(self) -> list[tuple[int, ...]]:
        return self.positive + self.negative

    def __len__(self):
        return 2 * len(self.positive)

    def pairing(self, beta, i: int) -> int:
        """beta(h_i) = sum_j beta_j C[i][j]."""
        return int(np.dot(self.cartan[i], beta))

    def coroot(self, alpha) -> list[int]:
        """Coefficients of h_alpha in the basis h_1..h_l."""
        d = symmetrizer(self.cartan)
        l = self.rank
        norm = sum(Fraction(alpha[i] * alpha[j]) * d[i] * int(self.cartan[i, j]) for i in range(l) for j in range(l)) / 2
        out = []
        for j in range(l):
            c = alpha[j] * d[j] / norm
            if c.denominator != 1:
                raise RootSystemError(f"non-integral coroot for {alpha}")
            out.append(int(c))
        return out


def roots_from_cartan(spec) -> RootSystem:
    """All roots by root-string closure from the simple roots."""
    if isinstance(spec, str):
        C, label = cartan_matrix(spec), type_name(*parse_type(spec))
    else:
        C, label = np.asarray(spec, dtype=np.int64), None
    l = C.shape[0]
    if C.shape != (l, l) or np.any(np.diag(C) != 2):
        raise RootSystemError("Cartan matrix must be square with 2 on the diagonal")
    symmetrizer(C)
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    found = set(simple)
    layer = list(simple)
    positive = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(l):
                # alpha_i string through beta: p - q = beta(h_i)
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in found:
                        p += 1
                    else:
                        break
                q = p - int(np.dot(C[i], beta))
                if q > 0:
                    new = list(beta)
                    new[i] += 1
                    new = tuple(new)
                    if new not in found:
                        found.add(new)
                        nxt.append(new)
        if len(found) > MAX_ROOTS:
            raise RootSystemError("root closure exceeds bound: Cartan matrix is not of finite type")
        nxt.sort()
        positive.extend(nxt)
        layer = nxt
    positive.sort(key=lambda r: (sum(r), r))
    return RootSystem(C, positive, label)


EXPECTED_ROOT_COUNTS = {"G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240}


def expected_root_count(label: str) -> int:
    letter, l = parse_type(label)
    if letter == "A":
        return l * (l + 1)
    if letter in "BC":
        return 2 * l * l
    if letter == "D":
        return 2 * l * (l - 1)
    return EXPECTED_ROOT_COUNTS[f"{letter}{l}"]


@dataclass
class ChevalleyAlgebra:
    algebra: LieAlgebra
    two_map: TwoMap
    cartan: Subspace
    roots: RootSystem

    def __iter__(self):
        return iter((self.algebra, self.two_map, self.cartan))


def _root_label(r) -> str:
    sign = "+" if sum(r) > 0 else "-"
    return "x" + sign + "".join(str(abs(c)) for c in r)


def chevalley_mod2(spec) -> ChevalleyAlgebra:
    """Chevalley basis h_1..h_l, x_alpha (positive by height, then negative), mod 2."""
    R = spec if isinstance(spec, RootSystem) else roots_from_cartan(spec)
    F = field_make(1)
    l = R.rank
    roots = R.roots
    index = {r: l + t for t, r in enumerate(roots)}
    n = l + len(roots)
    table = np.zeros((n, n, n), dtype=F.dtype)

    def put(a, b, m, c):
        if c % 2:
            table[a, b, m] = 1
            table[b, a, m] = 1

    for t, r in enumerate(roots):
        a = l + t
        for i in range(l):
            put(i, a, a, R.pairing(r, i))
        neg = tuple(-c for c in r)
        if sum(r) > 0:
            for j, c in enumerate(R.coroot(r)):
                put(a, index[neg], j, c)
    for s, alpha in enumerate(roots):
        for beta in roots[s + 1 :]:
            tot = tuple(x + y for x, y in zip(alpha, beta))
            if tot not in index:
                continue
            p = 0
            cur = list(beta)
            while True:
                cur = [c - a for c, a in zip(cur, alpha)]
                if tuple(cur) in index:
                    p += 1
                else:
                    break
            put(index[alpha], index[beta], index[tot], p + 1)
    labels = [f"h{i + 1}" for i in range(l)] + [_root_label(r) for r in roots]
    L = LieAlgebra(F, table, labels)
    images = np.zeros((n, n), dtype=F.dtype)
    images[np.arange(l), np.arange(l)] = 1
    cartan = Subspace.span(F, np.eye(n, dtype=F.dtype)[:l], n)
    return ChevalleyAlgebra(L, TwoMap(images, unique=False), cartan, R)


@dataclass
class QuotientResult:
    algebra: LieAlgebra
    two_map: TwoMap
    cartan: Subspace
    projection: Projection
    parent: ChevalleyAlgebra
    center_dim: int

    def __iter__(self):
        return iter((self.algebra, self.two_map, self.cartan))


def classical_quotient(spec) -> QuotientResult:
    """g(X_l)/z(g(X_l)) with the induced 2-map and projected Cartan subalgebra."""
    ch = spec if isinstance(spec, ChevalleyAlgebra) else chevalley_mod2(spec)
    L = ch.algebra
    z = center(L)
    Q, proj = quotient_by_ideal(L, z)
    tm = induced_two_map(ch.two_map, proj)
    h = Subspace.span(L.field, proj(ch.cartan.basis), Q.dim)
    tm.unique = center(Q).dim == 0
    return QuotientResult(Q, tm, h, proj, ch, z.dim)
