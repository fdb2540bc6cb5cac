"""Command-line interface.

Exit codes: 0 success, 1 computation or invariant failure, 2 usage error.
Every JSON document carries an integer "schema" field.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .charring import decompose, ext_power, mul, sym_power
from .hodge import betti, conjecture_check, hodge_deligne, hodge_diamond, nagai_check, salamon_check, salamon_weight
from .weightlab import (
    Algebra,
    Character,
    Decomposition,
    Weight,
    WeightError,
    irreducible_character,
    is_dominant_integral,
    mukai_bracket_check,
    parse_algebra,
    weyl_dim,
)

SCHEMA = 1
SERIES_CAPS = {"k3n": 10, "kumn": 6}
FAMILIES = ("k3n", "kumn", "og6", "og10")
MODULE_TABLE_WEIGHTS = ("5", "4", "3", "2,2", "2,1", "2", "1,1,1,1", "1,1,1", "1,1", "1", "0")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- cache


def cache_dir() -> Path:
    env = os.environ.get("LLV_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "llv"


def cache_key(command: str, params: dict) -> str:
    blob = json.dumps({"command": command, "params": params, "version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_get(key: str) -> Any | None:
    path = cache_dir() / f"{key}.json"
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)["value"]
    except FileNotFoundError:
        return None
    except (OSError, ValueError, KeyError, TypeError):
        print(f"warning: discarding unreadable cache entry {path}", file=sys.stderr)
        try:
            path.unlink()
        except OSError:
            pass
        return None


def cache_put(key: str, value: Any) -> None:
    d = cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"version": __version__, "value": value}, fh)
        os.replace(tmp, d / f"{key}.json")
    except OSError as exc:
        print(f"warning: cache write failed: {exc}", file=sys.stderr)


def cached(command: str, params: dict, compute: Callable[[], Any], use_cache: bool = True) -> Any:
    if not use_cache:
        return compute()
    key = cache_key(command, params)
    hit = cache_get(key)
    if hit is not None:
        return hit
    value = compute()
    cache_put(key, value)
    return value


# -------------------------------------------------------------- helpers


def _algebra(s: str) -> Algebra:
    try:
        return parse_algebra(s)
    except (WeightError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _weight(s: str, a: Algebra | None = None) -> Weight:
    try:
        w = Weight.parse(s)
        if a is not None:
            w = w.padded(a.rank)
    except (WeightError, ValueError) as exc:
        raise UsageError(f"bad weight {s!r}: {exc}") from exc
    return w


def _dominant(a: Algebra, s: str) -> Weight:
    w = _weight(s, a)
    if not is_dominant_integral(a, w):
        raise UsageError(f"{w.short()} is not dominant integral for {a}")
    return w


def _emit(args, doc: dict, text: str) -> None:
    if args.out == "json":
        print(json.dumps({"schema": SCHEMA, **doc}, indent=2))
    else:
        print(text)


def _poly_text(terms: dict, var: str) -> str:
    parts = []
    for e, c in sorted(terms.items()):
        if not c:
            continue
        mono = "" if e == 0 else (f"{var}" if e == 1 else f"{var}^{e}")
        coef = str(c) if (c != 1 or not mono) else ""
        parts.append(coef + mono)
    return " + ".join(parts) if parts else "0"


def _hd_text(terms: dict) -> str:
    parts = []
    for (s, t), c in sorted(terms.items()):
        mono = "".join(v if e == 1 else f"{v}^{e}" for v, e in (("s", s), ("t", t)) if e)
        parts.append((str(c) if c != 1 or not mono else "") + mono)
    return " + ".join(parts) if parts else "0"


# ----------------------------------------------------- family lookups


def family_decomposition(family: str, n: int, use_cache: bool = True) -> Decomposition:
    """The LLV decomposition of H^* for a deformation type and dimension parameter n."""
    from . import series, solver

    if family == "og10":
        if n != 5:
            raise UsageError("og10 has n = 5")
        compute = lambda: solver.solve_named("og10").decompositions()[0].to_json()  # noqa: E731
    elif family == "og6":
        if n != 3:
            raise UsageError("og6 has n = 3")
        compute = lambda: solver.og6_disambiguate(solver.solve_named("og6")).to_json()  # noqa: E731
    elif family in ("k3n", "kumn"):
        if n < 2:
            raise UsageError("families start at n = 2; lower coefficients are formal only")
        if n > SERIES_CAPS[family]:
            raise UsageError(f"n > {SERIES_CAPS[family]} exceeds the default cap for {family}")
        s = series.k3n_series if family == "k3n" else series.kumn_series
        compute = lambda: decompose(s(n)[n]).to_json()  # noqa: E731
    else:
        raise UsageError(f"unknown family {family!r}")
    return Decomposition.from_json(cached("family", {"family": family, "n": n}, compute, use_cache))


# ------------------------------------------------------------ commands


def cmd_dim(args) -> int:
    a = _algebra(args.algebra)
    w = _dominant(a, args.weight)
    d = weyl_dim(a, w)
    _emit(args, {"algebra": str(a), "weight": w.to_json(), "dim": d}, str(d))
    return 0


def cmd_character(args) -> int:
    a = _algebra(args.algebra)
    w = _dominant(a, args.weight)
    ch = irreducible_character(a, w)
    lines = [f"{Weight(mu).short()} {m}" for mu, m in ch.dominant_items()]
    _emit(args, {"algebra": str(a), "weight": w.to_json(), "character": ch.to_json(), "dim": ch.dim()}, "\n".join(lines))
    return 0


def cmd_decompose(args) -> int:
    a = _algebra(args.algebra)
    if args.from_json:
        with open(args.from_json, encoding="utf-8") as fh:
            doc = json.load(fh)
        ch = Character.from_json(a, doc["character"] if isinstance(doc, dict) else doc)
    else:
        if not args.weight:
            raise UsageError("give --weight (repeat it for a tensor product, or add --sym/--wedge) or --from-json")
        ws = [_dominant(a, s) for s in args.weight]
        chars = [irreducible_character(a, w) for w in ws]
        if args.sym is not None:
            ch = sym_power(chars[0], args.sym)
        elif args.wedge is not None:
            ch = ext_power(chars[0], args.wedge)
        else:
            ch = chars[0]
            for c in chars[1:]:
                ch = mul(ch, c)
    d = decompose(ch)
    _emit(args, {"algebra": str(a), "decomposition": d.to_json()}, str(d))
    return 0


def _series_payload(args) -> dict:
    from . import series

    fam = args.family
    order = args.max_n
    s = series.k3n_series(order) if fam == "k3n" else series.kumn_series(order)
    if args.specialize == "euler":
        vals = series.euler_series(fam, order)
        return {"family": fam, "specialize": "euler", "coefficients": [{"n": n, "value": v} for n, v in enumerate(vals)]}
    if args.specialize == "poincare":
        polys = series.poincare_series(fam, order)
        return {
            "family": fam,
            "specialize": "poincare",
            "coefficients": [{"n": n, "polynomial": [[e, c] for e, c in sorted(p.items())]} for n, p in enumerate(polys)],
        }
    if args.specialize == "hd":
        polys = series.hd_series(fam, order)
        return {
            "family": fam,
            "specialize": "hd",
            "coefficients": [
                {"n": n, "polynomial": [[s_, t, c] for (s_, t), c in sorted(p.items())]} for n, p in enumerate(polys)
            ],
        }
    out = []
    for n, c in enumerate(s):
        entry: dict = {"n": n}
        if args.decompose and n >= 2:
            entry["decomposition"] = decompose(c).to_json()
        else:
            entry["character"] = c.to_json()
            if args.decompose:
                entry["formal_only"] = True
        out.append(entry)
    return {"family": fam, "algebra": str(s.algebra), "coefficients": out}


def cmd_series(args) -> int:
    if args.max_n < 0:
        raise UsageError("--max-n must be non-negative")
    cap = SERIES_CAPS[args.family]
    if args.max_n > cap and not args.force:
        raise UsageError(f"--max-n {args.max_n} exceeds the default cap {cap} for {args.family}; pass --force")
    params = {"family": args.family, "max_n": args.max_n, "decompose": args.decompose, "specialize": args.specialize}
    doc = cached("series", params, lambda: _series_payload(args), not args.no_cache)
    _emit(args, doc, _series_text(doc))
    return 0


def _series_text(doc: dict) -> str:
    spec = doc.get("specialize")
    coeffs = doc["coefficients"]
    if spec == "euler":
        return " ".join(str(c["value"]) for c in coeffs)
    if spec == "poincare":
        return "\n".join(f"n={c['n']}: " + _poly_text({e: v for e, v in c["polynomial"]}, "t") for c in coeffs)
    if spec == "hd":
        return "\n".join(f"n={c['n']}: " + _hd_text({(s, t): v for s, t, v in c["polynomial"]}) for c in coeffs)
    a = parse_algebra(doc["algebra"])
    lines = []
    for c in coeffs:
        if "decomposition" in c:
            lines.append(f"n={c['n']}: {Decomposition.from_json(c['decomposition'])}")
        else:
            ch = Character.from_json(a, c["character"])
            tag = " (formal only)" if c.get("formal_only") else ""
            lines.append(f"n={c['n']}: dim {ch.dim()}, {ch.support_size()} weights{tag}")
    return "\n".join(lines)


def module_table_rows() -> list[dict]:
    a = Algebra("D", 13)
    rows = []
    for s in MODULE_TABLE_WEIGHTS:
        w = Weight.parse(s).padded(a.rank)
        b = betti(irreducible_character(a, w), 5)
        rows.append(
            {
                "weight": w.short(),
                "betti": [b[2 * k] for k in range(6)],
                "dim": weyl_dim(a, w),
                "salamon_weight": salamon_weight(b),
            }
        )
    return rows


def _module_table_text(rows: list[dict]) -> str:
    head = ["", "b0", "b2", "b4", "b6", "b8", "b10", "Dimension", "sum (5-i)^2 b_2i"]
    body = []
    for r in rows:
        cells = [f"V{r['weight']}"] + [f"{v:,}" if v else "" for v in r["betti"]]
        body.append(cells + [f"{r['dim']:,}", f"{r['salamon_weight']:,}"])
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    fmt = lambda row: "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths)))  # noqa: E731
    return "\n".join([fmt(head)] + [fmt(r) for r in body])


def cmd_hodge(args) -> int:
    if args.module_table:
        rows = module_table_rows()
        _emit(args, {"table": "og10-modules", "rows": rows}, _module_table_text(rows))
        return 0
    if args.family:
        if args.n is None:
            raise UsageError("--family needs --n")
        d = family_decomposition(args.family, args.n, not args.no_cache)
        ch, n = d.character(), args.n
        label = f"{args.family} n={n}: {d}"
    elif args.algebra and args.weight:
        a = _algebra(args.algebra)
        w = _dominant(a, args.weight)
        if args.n is None:
            raise UsageError("--weight needs --n")
        ch, n = irreducible_character(a, w), args.n
        label = f"V{w.short()} over {a}, n={n}"
    else:
        raise UsageError("give --module-table, --family with --n, or --algebra/--weight with --n")
    h = hodge_diamond(ch, n)
    b = h.betti()
    doc = {
        "diamond": h.to_json(),
        "quadrant_rows": [r for k, r in enumerate(h.quadrant_rows()) if k % 2 == 0],
        "betti": list(b.b),
        "euler": b.euler,
        "salamon": salamon_check(b),
        "hodge_deligne": {"centered": True, "terms": [[p, q, c] for (p, q), c in sorted(hodge_deligne(ch, n).items())]},
    }
    text = "\n".join([label, h.render(), "betti: " + " ".join(map(str, b.b)), f"euler: {b.euler}"])
    _emit(args, doc, text)
    return 0


def cmd_solve(args) -> int:
    from . import solver

    if args.profile_name == "custom":
        if not args.profile:
            raise UsageError("solve custom needs --profile")
        try:
            p = solver.load_profile(args.profile)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read profile: {exc}") from exc
        cs = solver.solve_constraints(p)
    else:
        cs = solver.solve_named(args.profile_name)
    doc = cs.to_json()
    text_lines = [str(d) for d in cs.decompositions()] or ["no candidates"]
    if args.profile_name == "og6" and len(cs):
        chosen = solver.og6_disambiguate(cs)
        doc["selected"] = chosen.to_json()
        doc["selected_text"] = str(chosen)
        text_lines.append(f"selected: {chosen}")
    _emit(args, doc, "\n".join(text_lines))
    return 0


def cmd_nagai(args) -> int:
    from .monodromy import nagai_verdict

    d = family_decomposition(args.family, args.n, not args.no_cache)
    rep = nagai_verdict(d, args.n, args.nu2)
    doc = {
        "family": args.family,
        **rep.to_json(),
        "nagai_check": nagai_check(d, args.n),
        "conjecture_check": conjecture_check(d, args.n),
    }
    text = f"nu_2k: {' '.join(map(str, rep.indices))}\nholds: {str(rep.holds).lower()}"
    _emit(args, doc, text)
    return 0


def cmd_oracle(args) -> int:
    if args.which == "nilpotency":
        from .monodromy import blueprint, index_formula, induced_index, normal_form

        if args.b2 is None or args.nu2 is None or args.weight is None:
            raise UsageError("oracle nilpotency needs --b2, --nu2 and --weight")
        w = _weight(args.weight)
        try:
            m = blueprint(w, args.b2)
            op = normal_form(args.b2, args.nu2)
        except WeightError as exc:
            raise UsageError(str(exc)) from exc
        got, want = induced_index(op, m), index_formula(w, args.nu2, args.b2)
        doc = {"b2": args.b2, "nu2": args.nu2, "weight": w.to_json(), "dim": m.dimension, "induced": got, "formula": want, "agree": got == want}
        _emit(args, doc, f"induced {got}, formula {want}, dim {m.dimension}")
        return 0 if got == want else 1
    if args.which == "euler":
        from .series import euler_series, k3_euler_oracle

        n = args.max_n if args.max_n is not None else 10
        if n > SERIES_CAPS["k3n"] and not args.force:
            raise UsageError("--max-n exceeds the K3 cap; pass --force")
        got, want = euler_series("k3n", n), k3_euler_oracle(n)
        _emit(args, {"computed": got, "oracle": want, "agree": got == want}, " ".join(map(str, got)) + f"\nagree: {str(got == want).lower()}")
        return 0 if got == want else 1
    if args.which == "gs-kum":
        from .series import gs_kum_identity_check

        n = args.n if args.n is not None else 2
        ok = gs_kum_identity_check(n)
        _emit(args, {"n": n, "holds": ok}, str(ok).lower())
        return 0 if ok else 1
    raise UsageError(f"unknown oracle {args.which!r}")


def cmd_bracket_check(args) -> int:
    if args.b2 < 3:
        raise UsageError("--b2 must be at least 3")
    ok = mukai_bracket_check(args.b2)
    _emit(args, {"b2": args.b2, "holds": ok}, str(ok).lower())
    return 0 if ok else 1


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="llv", description="Exact LLV decompositions of hyper-Kahler cohomology.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--out", choices=("text", "json"), default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("dim", cmd_dim, "Weyl dimension of an irreducible module")
    sp.add_argument("--algebra", required=True, help="e.g. D13 or B12")
    sp.add_argument("--weight", required=True, help="comma-separated, e.g. 2,2 or 1/2,1/2,1/2,1/2")

    sp = add("character", cmd_character, "dominant weight multiplicities of an irreducible")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--weight", required=True)

    sp = add("decompose", cmd_decompose, "decompose a tensor, symmetric or exterior power")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--weight", action="append", help="repeat to form a tensor product")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--sym", type=int)
    g.add_argument("--wedge", type=int)
    g.add_argument("--from-json", help="character JSON file")

    sp = add("series", cmd_series, "generating-series coefficients for K3^[n] or Kum_n")
    sp.add_argument("family", choices=("k3n", "kumn"))
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--decompose", action="store_true")
    sp.add_argument("--specialize", choices=("euler", "poincare", "hd"))
    sp.add_argument("--force", action="store_true", help="lift the default cap on --max-n")
    sp.add_argument("--no-cache", action="store_true")

    sp = add("hodge", cmd_hodge, "Hodge diamond and Betti numbers")
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--n", type=int)
    sp.add_argument("--algebra")
    sp.add_argument("--weight")
    sp.add_argument("--module-table", action="store_true", help="the OG10 module table")
    sp.add_argument("--no-cache", action="store_true")

    sp = add("solve", cmd_solve, "recover a decomposition from numerical invariants")
    sp.add_argument("profile_name", choices=("og10", "og6", "custom"))
    sp.add_argument("--profile", help="profile JSON for 'custom'")

    sp = add("nagai", cmd_nagai, "nilpotency indices of log monodromy per degree")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--nu2", type=int, choices=(0, 1, 2), required=True)
    sp.add_argument("--no-cache", action="store_true")

    sp = add("oracle", cmd_oracle, "independent cross-checks")
    sp.add_argument("which", choices=("nilpotency", "euler", "gs-kum"))
    sp.add_argument("--b2", type=int)
    sp.add_argument("--nu2", type=int, choices=(1, 2))
    sp.add_argument("--weight")
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--force", action="store_true")

    sp = add("bracket-check", cmd_bracket_check, "Jacobi identity and faithfulness of the Mukai bracket")
    sp.add_argument("--b2", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"llv: error: {exc}", file=sys.stderr)
        return 2
    except (WeightError, ArithmeticError, ValueError, AssertionError, RuntimeError) as exc:
        print(f"llv: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
