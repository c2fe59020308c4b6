"""Reproduction tables: each builder returns rows and raises on divergence."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .chevalley import classical_quotient, is_excluded
from .classical import build_classical
from .contragredient import kac_veisfeiler, root_decomposition
from .core import LieAlgebra
from .field import field_make
from .restricted import make_torus, toral_rank_of_cartan, two_map_eval
from .simplicity import is_simple


class TableMismatch(AssertionError):
    """A computed cell differs from the expected published value."""


@dataclass
class Table:
    title: str
    header: list[str]
    rows: list[list[str]]
    notes: list[str] = dc_field(default_factory=list)
    data: dict = dc_field(default_factory=dict)

    def render(self) -> str:
        widths = [max(len(str(r[c])) for r in [self.header] + self.rows) for c in range(len(self.header))]
        line = lambda r: " | ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()
        out = [self.title, line(self.header), "-+-".join("-" * w for w in widths)]
        out += [line(r) for r in self.rows]
        out += self.notes
        return "\n".join(out)


# ---------------------------------------------------------------------------
# symplectic bracket table
# ---------------------------------------------------------------------------
SP_SYMBOLS = ["d_i", "a_ij", "b_ij", "c_ij", "b_i", "c_i"]
# expected entries; the diagonal holds 2-map values
SP_EXPECTED = [
    ["d_i", "a_ij", "b_ij", "c_ij", "0", "0"],
    ["a_ij", "0", "0", "0", "0", "a_ij"],
    ["b_ij", "0", "0", "d_i+d_j", "0", "a_ij"],
    ["c_ij", "0", "d_i+d_j", "0", "a_ij", "0"],
    ["0", "0", "0", "a_ij", "0", "d_i"],
    ["0", "c_ij", "a_ij", "0", "d_i", "0"],
]


def _instantiate(sym: str, i: int, j: int) -> str:
    if sym == "0":
        return "0"
    return "+".join(t.replace("_ij", f"{i}{j}").replace("_i", f"{i}").replace("_j", f"{j}") for t in sym.split("+"))


def _expr(L: LieAlgebra, v) -> str:
    nz = np.flatnonzero(v)
    if not nz.size:
        return "0"
    return "+".join(L.labels[t] if v[t] == 1 else f"{L.field.format(int(v[t]))}*{L.labels[t]}" for t in nz)


def _index_free(expr: str) -> tuple:
    return tuple(sorted((re.sub(r"\d", "", t), "".join(sorted(re.sub(r"\D", "", t)))) for t in expr.split("+")))


def symplectic_bracket_table(m: int = 2, i: int = 1, j: int = 2) -> Table:
    """Brackets and 2-map values of d_i, a_ij, b_ij, c_ij, b_i, c_i in sp_2m."""
    res = build_classical("sp", m)
    L, tm = res.algebra, res.two_map
    idx = [L.labels.index(_instantiate(s, i, j)) for s in SP_SYMBOLS]
    E = np.eye(L.dim, dtype=L.field.dtype)
    computed = [[""] * 6 for _ in range(6)]
    for r in range(6):
        for c in range(6):
            x, y = E[idx[r]], E[idx[c]]
            v = two_map_eval(L, tm, x) if r == c else L.bracket(x, y)
            computed[r][c] = _expr(L, v)
    rows, notes, status = [], [], {}
    for r in range(6):
        row = [_instantiate(SP_SYMBOLS[r], i, j)]
        for c in range(6):
            want = _instantiate(SP_EXPECTED[r][c], i, j)
            got = computed[r][c]
            mark = ""
            if got == want:
                status[(r, c)] = "match"
            elif got != "0" and want != "0" and _index_free(got) == _index_free(want):
                status[(r, c)] = "index order"
                mark = "~"
            elif r != c and got == _instantiate(SP_EXPECTED[c][r], i, j):
                # the bracket is symmetric, so the mirrored expected cell decides
                status[(r, c)] = "erratum"
                mark = "*"
            else:
                raise TableMismatch(
                    f"table1 cell ({SP_SYMBOLS[r]}, {SP_SYMBOLS[c]}): expected {want}, computed {got}"
                )
            row.append(got + mark)
        rows.append(row)
    if any(s == "index order" for s in status.values()):
        notes.append("~ agrees with the expected entry up to the order of the two indices")
    for (r, c), s in status.items():
        if s == "erratum":
            notes.append(
                f"* expected {SP_EXPECTED[r][c]} at ({SP_SYMBOLS[r]}, {SP_SYMBOLS[c]}); "
                f"the symmetric cell ({SP_SYMBOLS[c]}, {SP_SYMBOLS[r]}) expects {SP_EXPECTED[c][r]}, as computed"
            )
    header = [f"[.,.] i={i} j={j}"] + [_instantiate(s, i, j) for s in SP_SYMBOLS]
    return Table(f"sp_{2 * m} brackets (diagonal: 2-map)", header, rows, notes, {"status": status})


# ---------------------------------------------------------------------------
# toral ranks of classical quotients
# ---------------------------------------------------------------------------
def expected_toral_rank(letter: str, n: int) -> int:
    if letter == "A":
        return n if (n + 1) % 2 else n - 1
    if letter == "D":
        return n - 1 if n % 2 else n - 2
    return {("G", 2): 2, ("E", 6): 6, ("E", 7): 6, ("E", 8): 8}[(letter, n)]


def classical_types(extended: bool = False) -> list[tuple[str, int]]:
    types = [("A", n) for n in range(2, 8)] + [("D", n) for n in range(3, 7)] + [("G", 2)]
    if extended:
        types += [("E", 6), ("E", 7), ("E", 8)]
    return types


def _survey_row(letter: str, n: int, seed: int = 0) -> dict:
    label = f"{letter}{n}"
    q = classical_quotient(label)
    mt = toral_rank_of_cartan(q.algebra, q.two_map, q.cartan)
    verdict = is_simple(q.algebra, seed=seed)
    return {
        "type": label,
        "dim": q.algebra.dim,
        "center": q.center_dim,
        "cartan": q.cartan.dim,
        "toral_rank": mt,
        "simple": verdict.simple,
        "excluded": is_excluded(label),
    }


def classical_toral_ranks(extended: bool = False, seed: int = 0) -> Table:
    rows, data = [], []
    for letter, n in classical_types(extended):
        info = _survey_row(letter, n, seed)
        want = expected_toral_rank(letter, n)
        if info["toral_rank"] != want:
            raise TableMismatch(f"corollary-ranks {letter}_{n}: expected MT {want}, computed {info['toral_rank']}")
        if info["toral_rank"] != info["cartan"]:
            raise TableMismatch(f"corollary-ranks {letter}_{n}: MT {info['toral_rank']} != dim h {info['cartan']}")
        if not info["simple"]:
            raise TableMismatch(f"corollary-ranks {letter}_{n}: quotient is not simple")
        data.append(info)
        rows.append([f"{letter}_{n}", f"dim {info['dim']}", f"MT {info['toral_rank']}"])
    return Table("toral ranks of classical quotients", ["type", "dim", "toral rank"], rows, data={"rows": data})


def survey_types(max_rank: int, extended: bool = False) -> list[tuple[str, int]]:
    out = []
    for n in range(1, max_rank + 1):
        out.append(("A", n))
    for n in range(2, max_rank + 1):
        out += [("B", n), ("C", n)]
    for n in range(3, max_rank + 1):
        out.append(("D", n))
    if max_rank >= 2:
        out.append(("G", 2))
    if max_rank >= 4:
        out.append(("F", 4))
    if extended:
        out += [("E", n) for n in (6, 7, 8) if n <= max_rank]
    return out


def toral_parity_survey(max_rank: int = 6, extended: bool = False, seed: int = 0) -> Table:
    rows, data, odd = [], [], []
    for letter, n in survey_types(max_rank, extended):
        info = _survey_row(letter, n, seed)
        data.append(info)
        if info["excluded"]:
            if info["simple"]:
                raise TableMismatch(f"theorem1-survey {letter}_{n}: excluded type came out simple")
            status = "excluded"
        elif not info["simple"]:
            raise TableMismatch(f"theorem1-survey {letter}_{n}: quotient is not simple")
        else:
            status = "simple"
            if info["toral_rank"] % 2:
                odd.append(info["type"])
        parity = "odd" if info["toral_rank"] % 2 else "even"
        rows.append([f"{letter}_{n}", str(info["dim"]), status, str(info["toral_rank"]), parity])
    if odd:
        raise TableMismatch(f"theorem1-survey: odd toral rank for simple quotients {', '.join(odd)}")
    return Table(
        f"classical quotients up to rank {max_rank}",
        ["type", "dim", "status", "MT", "parity"],
        rows,
        ["no odd toral rank found"],
        {"rows": data},
    )


# ---------------------------------------------------------------------------
# root spaces of G(F_4,a)
# ---------------------------------------------------------------------------
# expected rows: label of the basis pair and its root in the torus basis
# (h_1, a^-1 (h_2 + h_4), h_3, h_4)
KV_EXPECTED = [
    ("e1", (0, 1, 0, 0)),
    ("e2", (1, 0, 1, 0)),
    ("e3", (0, 0, 0, 1)),
    ("e4", (0, 0, 1, 0)),
    ("p12", (1, 1, 1, 0)),
    ("p13", (0, 1, 0, 1)),
    ("p14", (0, 1, 1, 0)),
    ("p23", (1, 0, 1, 1)),
    ("p24", (1, 0, 0, 0)),
    ("p34", (0, 0, 1, 1)),
    ("p123", (1, 1, 1, 1)),
    ("p124", (1, 1, 0, 0)),
    ("p134", (0, 1, 1, 1)),
    ("p234", (1, 0, 0, 1)),
    ("p1234", (1, 1, 0, 1)),
]


def literal_word(kv, label: str) -> np.ndarray:
    """((e_i e_j) e_k) ... for a label like p123 or e2."""
    L = kv.algebra
    E = np.eye(L.dim, dtype=L.field.dtype)
    digits = [int(c) for c in label[1:]]
    gen = lambda i: E[kv.builder.offset[1] + i - 1]
    v = gen(digits[0])
    for d in digits[1:]:
        v = L.bracket(v, gen(d))
    return v


def kv34_roots(a="w", k: int = 2) -> Table:
    F = field_make(k)
    kv = kac_veisfeiler(a, k, check=False)
    L, tm = kv.algebra, kv.two_map
    T = kv.standard_torus_basis()
    torus = make_torus(L, tm, T)
    dec = root_decomposition(L, tm, torus)
    if dec.zero.dim != 4 or dec.zero != torus.subspace:
        raise TableMismatch(f"kv34-roots: zero-weight space has dim {dec.zero.dim}, expected the 4-dim torus")
    roots = set(dec.spaces)
    want = {r for _, r in KV_EXPECTED}
    if roots != want or len(roots) != 15:
        raise TableMismatch(f"kv34-roots: computed roots {sorted(roots)} differ from the 15 expected roots")
    rows = []
    for label, root in KV_EXPECTED:
        S = dec.spaces[root]
        if S.dim != 2:
            raise TableMismatch(f"kv34-roots: root {root} has dim {S.dim}, expected 2")
        members = [t for t in range(L.dim) if S.contains(np.eye(L.dim, dtype=F.dtype)[t])]
        rep = L.labels[members[0]] if members else "-"
        lit = literal_word(kv, label)
        if not lit.any():
            literal = "zero"
        elif S.contains(lit):
            literal = "ok"
        else:
            raise TableMismatch(f"kv34-roots: literal word {label} is not a root vector for {root}")
        if label.startswith("e") and literal != "ok":
            raise TableMismatch(f"kv34-roots: generator {label} has the wrong root")
        rows.append(["".join(map(str, root)), label, str(S.dim), rep, literal])
    notes = [
        f"a = {F.format(kv.a)}; torus basis h1, (1/a)(h2+h4), h3, h4; zero-weight space = torus (dim 4)",
        "15 nonzero roots, each of dimension 2; literal = the listed word computed in the algebra",
    ]
    return Table(
        "root spaces of G(F_4,a)",
        ["root", "listed", "dim", "representative", "literal"],
        rows,
        notes,
        {"roots": sorted(roots), "dims": {"".join(map(str, r)): dec.spaces[r].dim for r in roots}},
    )
