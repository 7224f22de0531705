"""Command-line surface: compute classes, detect vexillarity, enumerate
group elements, and run the verification suites.

Output is deterministic: terms are emitted in a fixed canonical order,
so identical invocations are byte-identical.  JSON keeps big integers as
strings so any parser survives them.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from .polycore import Dyadic, Polynomial, _mono_key
from .gamma import GammaElement, GeneratorSeries, q_pair, specialize_oracle
from .weyl import SignedPermutation, all_elements, length
from .triples import (
    Triple,
    enumerate_triples,
    lambda_of,
    plus_map,
    reduce_redundant,
    triple_of_w,
    validate,
)
from .multischur import multischur_pf, p_family, r_family
from .schubert import (
    expand_coeffs,
    schubert,
    swap_xy,
    top_term,
    vexillary_polynomial,
)
from . import gysin


class ParseError(ValueError):
    pass


class UnknownSuite(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def serialize_element(e) -> list:
    """Canonical term list: one entry per (basis symbol, monomial)."""
    if isinstance(e, Polynomial):
        combo = {(): e}
    else:
        combo = GammaElement.of(e).combo
    rows = []
    for lam in sorted(combo, reverse=True):
        poly = combo[lam]
        for mono in sorted(poly.terms, key=_mono_key, reverse=True):
            coeff = poly.terms[mono]
            rows.append(
                {
                    "q": list(lam),
                    "coeff": {"num": str(coeff.num), "log2den": coeff.log2den},
                    "mono": {f"{v[0]}{v[1]}": exp for v, exp in mono},
                }
            )
    return rows


def parse_element(rows) -> GammaElement:
    """Inverse of serialize_element."""
    combo = {}
    for row in rows:
        lam = tuple(row["q"])
        coeff = Dyadic(int(row["coeff"]["num"]), row["coeff"]["log2den"])
        mono = tuple(
            ((name.rstrip("0123456789"), int(name[len(name.rstrip("0123456789")) :])), e)
            for name, e in row["mono"].items()
        )
        poly = Polynomial({mono: coeff})
        combo[lam] = combo.get(lam, Polynomial()) + poly
    return GammaElement(combo)


def _poly_text(poly: Polynomial, latex: bool) -> str:
    bits = []
    for mono in sorted(poly.terms, key=_mono_key, reverse=True):
        coeff = poly.terms[mono]
        factors = []
        for v, e in mono:
            name = f"{v[0]}_{{{v[1]}}}" if latex else f"{v[0]}{v[1]}"
            if e > 1:
                name += f"^{{{e}}}" if latex else f"^{e}"
            factors.append(name)
        if coeff.log2den:
            c = (
                f"\\frac{{{coeff.num}}}{{{1 << coeff.log2den}}}"
                if latex
                else f"{coeff.num}/{1 << coeff.log2den}"
            )
        else:
            c = str(coeff.num)
        if factors and c == "1":
            body = ("" if latex else "*").join(factors) if latex else "*".join(factors)
        elif factors and c == "-1":
            body = "-" + (" " if latex else "*").join(factors)
        else:
            sep = " " if latex else "*"
            body = c + (sep + sep.join(factors) if factors else "")
        bits.append(body)
    if not bits:
        return "0"
    return " + ".join(bits).replace("+ -", "- ")


def render(e, fmt: str, basis: str = "Q") -> str:
    """Text form of a class; basis P rescales signed-type coefficients."""
    if fmt == "json":
        return json.dumps({"terms": serialize_element(e)}, sort_keys=True)
    if isinstance(e, Polynomial):
        return _poly_text(e, fmt == "latex")
    combo = expand_coeffs(GammaElement.of(e), basis=basis)
    if not combo:
        return "0"
    bits = []
    for lam in sorted(combo, reverse=True):
        coeff = combo[lam]
        body = _poly_text(coeff, fmt == "latex")
        if lam:
            parts = ",".join(str(m) for m in lam)
            sym = f"{basis}_{{({parts})}}" if fmt == "latex" else f"{basis}({parts})"
            if body == "1":
                bits.append(sym)
            elif "+" in body or "- " in body or body.startswith("-"):
                bits.append(f"({body})" + ("" if fmt == "latex" else "*") + sym)
            else:
                bits.append(body + ("" if fmt == "latex" else "*") + sym)
        else:
            bits.append(body if ("+" not in body) else f"({body})")
    return " + ".join(bits)


def _display_basis(wtype: str) -> str:
    return "P" if wtype in ("B", "D") else "Q"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _parse_w(text: str) -> SignedPermutation:
    try:
        return SignedPermutation.parse(text)
    except Exception as exc:
        raise ParseError(f"bad one-line word {text!r}: {exc}") from exc


def cmd_schubert(args) -> int:
    w = _parse_w(args.w)
    e = schubert(w, args.type, n=args.n)
    print(render(e, args.format, _display_basis(args.type)))
    return 0


def _formula_rows(t: Triple):
    """One line per Pfaffian/determinant row: the index and its series."""
    from .schubert import _steps

    lam = lambda_of(t)
    rows = []
    for k, (p, q) in zip(lam, _steps(t)):
        if t.wtype == "A":
            xs = "".join(f"(1+x{j})" for j in range(1, p + 1)) or "1"
            ys = "".join(f"(1+y{j})" for j in range(1, q + 1)) or "1"
            rows.append(f"a_{k} from {xs}/{ys}")
        elif t.wtype == "D":
            fac = "".join(f"(1+x{j})" for j in range(1, p + 1))
            fac += "".join(f"(1+y{j})" for j in range(1, q + 1))
            rows.append(f"index {k}: c = {fac or '1'}, d = Q*c")
        else:
            sym = "P" if t.wtype == "B" else "Q"
            fac = "".join(f"(1+x{j})" for j in range(1, p))
            fac += "".join(f"(1+y{j})" for j in range(1, q))
            rows.append(f"index {k}: {sym}*{fac or '1'}")
    return rows


def cmd_vexillary(args) -> int:
    w = _parse_w(args.w)
    t = triple_of_w(w, args.type)
    if t is None:
        if args.format == "json":
            print(json.dumps({"vexillary": False, "w": str(w)}, sort_keys=True))
        else:
            print("not vexillary")
        return 0
    lam = lambda_of(t) if t.s else ()
    payload = {
        "vexillary": True,
        "w": str(w),
        "triple": str(t),
        "lambda": list(lam),
        "formula": _formula_rows(t) if t.s else [],
    }
    if args.expand:
        e = vexillary_polynomial(t, "B" if args.type == "B" else None)
        payload["polynomial"] = serialize_element(e)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"triple: {t if t.s else '(empty)'}")
        print(f"lambda: {list(lam)}")
        for row in payload["formula"]:
            print(f"  {row}")
        if args.expand:
            e = vexillary_polynomial(t, "B" if args.type == "B" else None)
            print(f"polynomial: {render(e, args.format, _display_basis(args.type))}")
    return 0


def cmd_enumerate(args) -> int:
    if args.n > 4:
        raise BoundExceeded("enumeration is desk-scale: n <= 4")
    rows = []
    for w in all_elements(args.n, args.type):
        t = triple_of_w(w, args.type)
        if args.vexillary_only and t is None:
            continue
        rows.append(
            {
                "w": str(w),
                "length": length(w, args.type),
                "vexillary": t is not None,
                "triple": str(t) if t is not None and t.s else ("" if t is None else "(empty)"),
                "lambda": list(lambda_of(t)) if t is not None and t.s else [],
            }
        )
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True))
    else:
        for row in rows:
            vex = "vex" if row["vexillary"] else "  -"
            print(
                f"{row['w']:<16} len={row['length']:<3} {vex}  "
                f"{row['triple']}  {row['lambda'] if row['lambda'] else ''}".rstrip()
            )
    return 0


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------


def _pmap(fn, items, threads):
    items = list(items)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _vexillary_count(wtype, n):
    elems = list(all_elements(n, wtype))
    vex = sum(1 for w in elems if triple_of_w(w, wtype) is not None)
    return vex, len(elems)


def suite_census(args, report):
    n = args.n or 3
    c_vex, c_all = _vexillary_count("C", n)
    d_vex, d_all = _vexillary_count("D", n)
    report.append(f"C: {c_vex}/{c_all} vexillary, D: {d_vex}/{d_all}")
    if n == 3:
        return (c_vex, c_all, d_vex, d_all) == (33, 48, 18, 24)
    return True


def suite_theorem_equivalence(args, report):
    wtype = args.type or "C"
    n = args.n or 2
    elems = list(all_elements(n, wtype))

    def check(w):
        t = triple_of_w(w, wtype)
        if t is None:
            return None
        formula = vexillary_polynomial(t, "B" if wtype == "B" else None)
        return None if formula == schubert(w, wtype) else str(w)

    bad = [b for b in _pmap(check, elems, args.threads) if b]
    for b in bad:
        report.append(f"mismatch at w = {b}")
    report.append(f"type {wtype}, n = {n}: {len(elems)} elements compared")
    return not bad


def suite_stability(args, report):
    n = args.n or 2
    ok = True
    for wtype in ("A", "B", "C", "D"):
        for w in all_elements(n, wtype):
            if schubert(w, wtype, n=n) != schubert(w.embed(n + 1), wtype, n=n + 1):
                report.append(f"instability: type {wtype}, w = {w}")
                ok = False
    report.append(f"all four types checked at n = {n} vs {n + 1}")
    return ok


def suite_b_scaling(args, report):
    n = args.n or 3
    ok = True
    for w in all_elements(n, "B"):
        scale = Polynomial.const(Dyadic(1, w.num_barred()))
        if schubert(w, "B") != schubert(w, "C") * scale:
            report.append(f"scaling fails at w = {w}")
            ok = False
    report.append(f"2^-r scaling verified on {2 ** n * 6} elements" if n == 3 else "done")
    return ok


def suite_inverse_swap(args, report):
    n = args.n or 3
    ok = True
    for wtype in ("C", "D"):
        for w in all_elements(n, wtype):
            if swap_xy(schubert(w, wtype)) != schubert(w.inverse(), wtype):
                report.append(f"inverse symmetry fails: type {wtype}, w = {w}")
                ok = False
    report.append(f"x<->y inverse symmetry checked for C and D at n = {n}")
    return ok


def _worked_a_det_y0(t: Triple) -> Polynomial:
    # the x-only specialization keeps the series finite, so the big worked
    # example stays desk-scale; the double version is checked on small triples
    from .multischur import multischur_det, rational_series
    from .schubert import lambda_of_extended

    lam = lambda_of_extended(t)
    bound = lam[0] + len(lam)
    series = []
    for k in range(1, t.k[-1] + 1):
        i = next(j for j in range(t.s) if t.k[j] >= k)
        num = [1 + Polynomial.variable("x", jj) for jj in range(1, t.p[i] + 1)]
        series.append(rational_series(num, [], bound))
    return multischur_det(lam, series)


def suite_redundancy(args, report):
    ok = True
    # the worked type-A reduction
    fat = Triple(
        tuple(range(1, 9)), (7, 7, 6, 6, 5, 4, 3, 2), (4, 5, 6, 7, 7, 7, 9, 9), "A"
    )
    slim = reduce_redundant(fat)
    if _worked_a_det_y0(fat) != _worked_a_det_y0(slim):
        report.append("type-A worked example: determinants differ at y = 0")
        ok = False
    report.append(f"type-A example reduces to {slim}")
    small_a = [
        t
        for t in enumerate_triples("A", 3, allow_redundant=True)
        if validate(t) == "redundant"
    ]
    for t in small_a:
        if vexillary_polynomial(t) != vexillary_polynomial(reduce_redundant(t)):
            report.append(f"type-A reduction changed the determinant: {t}")
            ok = False
    report.append(f"{len(small_a)} small type-A reductions checked in full")
    # randomized C/D redundant triples
    rng = random.Random(args.seed or 0)
    from .schubert import lambda_of_extended

    for wtype in ("C", "D"):
        reds = [
            t
            for t in enumerate_triples(wtype, 3, allow_redundant=True)
            if validate(t) == "redundant"
            and sum(lambda_of_extended(t)) <= 10  # keep the Pfaffians desk-scale
        ]
        sample = rng.sample(reds, min(25, len(reds)))
        for t in sample:
            if vexillary_polynomial(t) != vexillary_polynomial(reduce_redundant(t)):
                report.append(f"redundancy not absorbed: {t}")
                ok = False
        report.append(f"type {wtype}: {len(sample)} redundant triples absorbed")
    return ok


def suite_lemma25(args, report):
    def multiplier(k):
        out = Polynomial.const(1)
        for j in range(1, k):
            out = out * (1 + Polynomial.variable("t", j))
        return out

    checked = 0
    ok = True
    for k in range(2, 5):
        for l in range(1, k):
            pair = q_pair(k, l, GeneratorSeries(True, multiplier(k)),
                          GeneratorSeries(True, multiplier(l)))
            for r in range(1, 4):
                for nu in itertools.combinations(range(4, 0, -1), r):
                    nu2 = nu[1] if len(nu) > 1 else 0
                    if not (nu[0] < k or nu2 < l):
                        continue
                    checked += 1
                    if specialize_oracle(pair, ("negt", nu)):
                        report.append(f"nonvanishing at k={k}, l={l}, nu={nu}")
                        ok = False
    report.append(f"{checked} vanishing specializations checked")
    return ok


def _plus_partition(mu, r):
    if len(mu) == r:
        return tuple(m + 1 for m in mu)
    if len(mu) == r - 1:
        return tuple(m + 1 for m in mu) + (1,)
    return None


def suite_identity_2_3(args, report):
    ok = True
    max_part = 5 if args.n is None else args.n
    count = 0
    for size in range(1, max_part + 2):
        for lam in itertools.combinations(range(max_part, -1, -1), size):
            count += 1
            r = len(lam)
            rc = expand_coeffs(r_family(lam), basis="P")
            pc = expand_coeffs(p_family(tuple(m + 1 for m in lam)), basis="P")
            mapped = {}
            for mu, c in rc.items():
                key = _plus_partition(mu, r)
                if key is None:
                    report.append(f"unmappable support {mu} in lambda = {lam}")
                    return False
                mapped[key] = c
            if mapped != pc:
                report.append(f"shift identity fails for lambda = {lam}")
                ok = False
    report.append(f"{count} deformed-family identities checked (max part {max_part})")
    # the same identity on actual type-D triples against the shifted B series
    tri_count = 0
    for t in enumerate_triples("D", 3):
        tri_count += 1
        r = t.k[-1]
        rc = expand_coeffs(vexillary_polynomial(t), basis="P")
        pc = expand_coeffs(vexillary_polynomial(plus_map(t), wtype="B"), basis="P")
        mapped = {}
        for mu, c in rc.items():
            key = _plus_partition(mu, r)
            if key is None:
                report.append(f"unmappable support {mu} for triple {t}")
                return False
            mapped[key] = c
        if mapped != pc:
            report.append(f"triple shift identity fails for {t}")
            ok = False
    report.append(f"{tri_count} type-D triples compared against their shifts")
    return ok


def suite_appendix_a1(args, report):
    ok = True
    for s in range(7):
        for K in itertools.combinations(range(1, 7), s):
            if not gysin.lemma_A1_check(K):
                report.append(f"sign lemma fails for K = {K}")
                ok = False
    report.append("sign lemma exhausted over K within [6]")
    for size in range(1, 5):
        I = tuple(range(1, size + 1))
        if not gysin.f_index_identity(I, 8):
            report.append(f"product identity fails for I = {I}")
            ok = False
    report.append("Pfaffian/product identity checked for |I| <= 4")
    for lam, K in [((3,), (1,)), ((2, 1), (1, 2)), ((4, 2, 1), (1, 3)), ((3, 2, 1), (1, 2, 3))]:
        if not gysin.prop_A1_check(lam, K):
            report.append(f"operator identity fails for lam = {lam}, K = {K}")
            ok = False
    report.append("deformed operator identity checked for |K| <= 3")
    return ok


def suite_appendix_a2(args, report):
    ok = True
    r_max = args.r or 3
    shapes = [s for s in [(1,), (2,), (2, 0), (2, 1), (3, 1), (3, 2, 0), (3, 2, 1)] if len(s) <= r_max]
    for lam in shapes:
        if not gysin.prop_A2_check(lam):
            report.append(f"pushforward Pfaffian fails for lam = {lam}")
            ok = False
    report.append(f"composite pushforward = 2^-r Pfaffian for {len(shapes)} shapes")
    # degenerate single-series case against the type-C pipeline
    from .schubert import _ones_product, _steps

    t = Triple((1, 2), (2, 1), (2, 1), "C")
    lam = lambda_of(t)
    series = [
        GeneratorSeries(True, _ones_product("x", p - 1) * _ones_product("y", q - 1))
        for p, q in _steps(t)
    ]
    for m in [(0, 0), (1, 0), (0, 1), (2, 1)]:
        if not gysin.plain_pushforward_check(lam, series, m):
            report.append(f"degenerate pushforward fails at exponents {m}")
            ok = False
    report.append("degenerate case matches the Pfaffian index shift")
    return ok


def suite_positivity(args, report):
    n = args.n or 3
    findings = []
    for w in all_elements(n, "C"):
        for lam, c in expand_coeffs(schubert(w, "C")).items():
            for mono, coeff in c.terms.items():
                if coeff.num < 0:
                    findings.append((str(w), lam))
    if findings:
        for w, lam in findings[:10]:
            report.append(f"negative coefficient: w = {w}, symbol {lam}")
        report.append(f"{len(findings)} negative terms (interpretation finding)")
        return False
    report.append(f"all basis coefficients nonnegative over W_{n} type C")
    return True


def suite_type_a(args, report):
    ok = True
    n = args.n or 4
    count = 0
    for w in all_elements(n, "A"):
        t = triple_of_w(w, "A")
        if t is None:
            continue
        count += 1
        if vexillary_polynomial(t) != schubert(w, "A"):
            report.append(f"determinant mismatch at w = {w}")
            ok = False
    report.append(f"{count} vexillary permutations matched in S_{n}")
    worked = Triple((2, 6, 8), (7, 4, 2), (5, 7, 9), "A")
    from .triples import w_of_triple

    if str(w_of_triple(worked)) != "1 10 8 9 2 3 6 4 5 7":
        report.append("worked triple produces the wrong permutation")
        ok = False
    fat = Triple(
        tuple(range(1, 9)), (7, 7, 6, 6, 5, 4, 3, 2), (4, 5, 6, 7, 7, 7, 9, 9), "A"
    )
    if reduce_redundant(fat) != worked:
        report.append("redundant example does not reduce to the worked triple")
        ok = False
    report.append("worked examples verified")
    return ok


SUITES = {
    "census": suite_census,
    "theorem-equivalence": suite_theorem_equivalence,
    "stability": suite_stability,
    "b-scaling": suite_b_scaling,
    "inverse-swap": suite_inverse_swap,
    "redundancy": suite_redundancy,
    "lemma25": suite_lemma25,
    "identity-2-3": suite_identity_2_3,
    "appendix-a1": suite_appendix_a1,
    "appendix-a2": suite_appendix_a2,
    "positivity": suite_positivity,
    "type-a": suite_type_a,
}


def cmd_verify(args) -> int:
    suite = args.suite
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    report = []
    ok = SUITES[suite](args, report)
    if args.format == "json":
        print(json.dumps({"suite": suite, "pass": ok, "report": report}, sort_keys=True))
    else:
        for line in report:
            print(line)
        print(f"{suite}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vexpf")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_type=True):
        if need_type:
            p.add_argument("--type", choices=["A", "B", "C", "D"], default="C")
        p.add_argument("--format", choices=["json", "latex", "plain"], default="plain")

    p = sub.add_parser("schubert", help="double Schubert polynomial of a word")
    common(p)
    p.add_argument("--w", required=True, help='one-line word, e.g. "1 -3 2"')
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(fn=cmd_schubert)

    p = sub.add_parser("vexillary", help="triple and Pfaffian formula of a word")
    common(p)
    p.add_argument("--w", required=True)
    p.add_argument("--expand", action="store_true",
                   help="also expand the closed formula (can be large)")
    p.set_defaults(fn=cmd_vexillary)

    p = sub.add_parser("enumerate", help="list group elements with vexillarity data")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--vexillary-only", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", nargs="?", default=None)
    p.add_argument("--suite", dest="suite_flag", default=None)
    p.add_argument("--type", choices=["A", "B", "C", "D"], default=None)
    p.add_argument("--format", choices=["json", "latex", "plain"], default="plain")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        args.suite = args.suite or args.suite_flag
        if not args.suite:
            parser.error("verify needs a suite name")
    try:
        return args.fn(args)
    except (ParseError, UnknownSuite, BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
