"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 budget exceeded.
Field elements are written w, w+1, w^2, ... (w is the class of x) or as
plain integers whose bits are the coefficients.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import descriptor as desc_mod
from .chevalley import RootSystemError, chevalley_mod2, classical_quotient
from .classical import FAMILIES, SP_FAMILIES, ClassicalError, build_classical
from .contragredient import ContragredientError, kac_veisfeiler, root_decomposition
from .core import center, derived_dims
from .descriptor import AlgebraDescriptor, DescriptorError
from .field import FieldError, field_make
from .restricted import (
    BudgetExceeded,
    CartanSearchFailed,
    NotRestricted,
    TwoMap,
    cartan_subalgebra,
    make_torus,
    toral_span,
    two_map_derive,
    two_map_verify,
)
from .simplicity import CertificationFailed, centroid, is_simple, verify_verdict
from .tables import (
    TableMismatch,
    classical_toral_ranks,
    kv34_roots,
    symplectic_bracket_table,
    toral_parity_survey,
)

DEFAULT_SEED = 0
EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lie2", description="Construct and analyze Lie 2-algebras over GF(2^k).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build an algebra and write its descriptor")
    c.add_argument("family", choices=list(FAMILIES) + ["chevalley", "kv34"])
    c.add_argument("--n", type=int, help="matrix size (gl, sl, psl, o, o1)")
    c.add_argument("--m", type=int, help="half matrix size (sp, sp1, sp2, psp2)")
    c.add_argument("--field", type=int, default=None, help="extension degree k of GF(2^k)")
    c.add_argument("--type", help="root system type for chevalley, e.g. g2, d4, e6")
    c.add_argument("--quotient", action="store_true", help="chevalley: divide by the center")
    c.add_argument("--a", default="w", help="kv34: parameter a in GF(2^k) minus {0,1}")
    c.add_argument("--out", default="-", help="output path, '-' for standard output")

    a = sub.add_parser("analyze", help="run analyses on a descriptor")
    a.add_argument("--in", dest="infile", required=True)
    for flag in ("derived", "center", "simple", "restricted", "toral-rank", "roots", "centroid"):
        a.add_argument(f"--{flag}", action="store_true")
    a.add_argument("--method", choices=["oracle", "fast", "auto"], default="auto")
    a.add_argument("--seed", type=int, default=DEFAULT_SEED)
    a.add_argument("--json", action="store_true")

    t = sub.add_parser("paper-tables", help="reproduce and check the published tables")
    t.add_argument("table", choices=["table1", "corollary-ranks", "kv34-roots", "theorem1-survey"])
    t.add_argument("--a", default="w")
    t.add_argument("--field", type=int, default=2)
    t.add_argument("--max-rank", type=int, default=6)
    t.add_argument("--extended", action="store_true", help="include the E-series")
    t.add_argument("--seed", type=int, default=DEFAULT_SEED)
    t.add_argument("--json", action="store_true")
    return p


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------
def construct(args) -> AlgebraDescriptor:
    fam = args.family
    if fam == "kv34":
        k = 2 if args.field is None else args.field
        kv = kac_veisfeiler(args.a, k)
        L = kv.algebra
        return AlgebraDescriptor(
            L, kv.two_map, kv.cartan, list(L.grading), kv.standard_torus_basis(),
            desc_mod.provenance("kv34", a=args.a, field=k),
        )
    if fam == "chevalley":
        if not args.type:
            raise UsageError("chevalley needs --type")
        if args.field not in (None, 1):
            raise UsageError("chevalley algebras are built over GF(2) (--field 1)")
        if args.quotient:
            q = classical_quotient(args.type)
            L, tm, h = q
        else:
            L, tm, h = chevalley_mod2(args.type)
        return AlgebraDescriptor(L, tm, h, None, None,
                                 desc_mod.provenance("chevalley", type=args.type, quotient=args.quotient))
    key = "m" if fam in SP_FAMILIES else "n"
    size = getattr(args, key)
    other = "n" if key == "m" else "m"
    if size is None:
        raise UsageError(f"{fam} needs --{key}")
    if getattr(args, other) is not None:
        raise UsageError(f"{fam} takes --{key}, not --{other}")
    k = 1 if args.field is None else args.field
    res = build_classical(fam, size, k)
    tm = res.two_map if isinstance(res.two_map, TwoMap) else None
    return AlgebraDescriptor(res.algebra, tm, res.cartan, None, None,
                             desc_mod.provenance(fam, **{key: size, "field": k}))


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------
def analyze(args, d: AlgebraDescriptor) -> tuple[dict, list[str], int]:
    L = d.algebra
    out: dict = {}
    lines: list[str] = []
    code = 0
    chosen = [f for f in ("derived", "center", "simple", "restricted", "toral_rank", "roots", "centroid")
              if getattr(args, f)]
    if not chosen:
        raise UsageError("choose at least one analysis flag")
    tm_cache: dict = {}

    def two_map():
        if "tm" not in tm_cache:
            tm_cache["tm"] = d.two_map if d.two_map is not None else two_map_derive(L)
        return tm_cache["tm"]

    def need_restricted(flag):
        tm = two_map()
        if not isinstance(tm, TwoMap):
            raise UsageError(f"--{flag} needs a 2-map but the algebra is {tm}")
        return tm

    if args.derived:
        dims = derived_dims(L)
        out["derived"] = dims
        lines.append("derived: " + " ".join(map(str, dims)))
    if args.center:
        z = center(L).dim
        out["center"] = z
        lines.append(f"center: {z}")
    if args.simple:
        try:
            v = is_simple(L, args.method, seed=args.seed)
        except BudgetExceeded as exc:
            raise BudgetExceeded("--simple " + exc.what, exc.needed, exc.budget, exc.flag) from None
        if not verify_verdict(L, v):
            code = EXIT_MISMATCH
        out["simple"] = {"simple": v.simple, "method": v.method, "reason": v.reason,
                         "witness_dim": v.witness.dim if v.witness is not None else None}
        text = "simple" if v.simple else "not simple"
        if v.witness is not None:
            text += f" (witness ideal of dim {v.witness.dim})"
        lines.append(f"simple: {text} [{v.method}; {v.reason}]")
    if args.restricted:
        tm = two_map()
        if isinstance(tm, NotRestricted):
            out["restricted"] = {"restricted": False, "witness": tm.witness}
            lines.append(f"restricted: {tm}")
        else:
            rep = two_map_verify(L, tm, np.random.default_rng(args.seed))
            out["restricted"] = {"restricted": rep.ok, "detail": rep.detail}
            if not rep.ok:
                code = EXIT_MISMATCH
            lines.append("restricted: TwoMap verified" if rep.ok else f"restricted: TwoMap fails ({rep.detail})")
    torus_cache: dict = {}

    def torus():
        if "T" not in torus_cache:
            tm = need_restricted("toral-rank")
            h = d.cartan if d.cartan is not None else cartan_subalgebra(L, seed=args.seed)
            try:
                torus_cache["T"] = toral_span(L, tm, h)
            except BudgetExceeded as exc:
                raise BudgetExceeded("--toral-rank " + exc.what, exc.needed, exc.budget, exc.flag) from None
        return torus_cache["T"]

    if args.toral_rank:
        r = torus().dim
        out["toral_rank"] = r
        lines.append(f"toral rank: {r}")
    if args.roots:
        tm = need_restricted("roots")
        T = make_torus(L, tm, d.torus) if d.torus is not None else torus()
        dec = root_decomposition(L, tm, T)
        rows = []
        E = np.eye(L.dim, dtype=L.field.dtype)
        for xi in dec.roots:
            S = dec.spaces[xi]
            members = [t for t in range(L.dim) if S.contains(E[t])]
            rows.append({"root": "".join(map(str, xi)), "dim": S.dim,
                         "representative": L.labels[members[0]] if members else None})
        out["roots"] = {"zero_dim": dec.zero.dim, "roots": rows}
        lines.append(f"roots: {len(rows)} nonzero, zero-weight space dim {dec.zero.dim}")
        for r in rows:
            lines.append(f"  {r['root']}  {r['dim']}  {r['representative'] or '-'}")
    if args.centroid:
        c = centroid(L, args.seed).dim
        out["centroid"] = c
        lines.append(f"centroid: {c}")
    return out, lines, code


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------
def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "construct":
            d = construct(args)
            _emit(d.dumps(), args.out)
            if args.out != "-":
                print(f"wrote {args.out}: dim {d.algebra.dim}", file=sys.stderr)
            return 0
        if args.command == "analyze":
            try:
                d = desc_mod.load(args.infile)
            except OSError as exc:
                raise UsageError(f"cannot read {args.infile}: {exc.strerror}") from None
            out, lines, code = analyze(args, d)
            if args.json:
                print(json.dumps(out, sort_keys=True))
            else:
                print("\n".join(lines))
            return code
        if args.command == "paper-tables":
            if args.table == "table1":
                tab = symplectic_bracket_table()
            elif args.table == "corollary-ranks":
                tab = classical_toral_ranks(args.extended, args.seed)
            elif args.table == "kv34-roots":
                tab = kv34_roots(args.a, args.field)
            else:
                tab = toral_parity_survey(args.max_rank, args.extended, args.seed)
            if args.json:
                print(json.dumps({"title": tab.title, "header": tab.header, "rows": tab.rows,
                                  "notes": tab.notes}, sort_keys=True))
            else:
                print(tab.render())
            return 0
    except TableMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (BudgetExceeded, CertificationFailed) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ClassicalError, ContragredientError, RootSystemError, DescriptorError, FieldError,
            CartanSearchFailed, ValueError) as exc:
        print(f"lie2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
