"""Command line entry point: ``heckezeta <subcommand> ...``.

Exit codes: 0 success, 1 hard failure (count, duplicate, level or identity
mismatch), 2 usage error, 3 verdict failed under ``--expect-pass``.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from typing import Sequence

from .cosets import (CASE_OPERATORS, case_mixed_tables, gln_mixed_degree, gln_mixed_table,
                     hecke_cells, normalise_operator)
from .errors import HeckeZetaError
from .presets import Preset, get_preset, load_config
from .satake import (TransformTable, hecke_poly_triples, hecke_polynomial, minuscule_satake_poly,
                     orbit_decomposition, satake_poly_from_config, word_label)
from .weyl import diagram_to_dot, weak_order_diagram

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_VERDICT = 3


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(obj, as_json: bool, lines: Sequence[str] = ()) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _preset(args) -> Preset:
    if getattr(args, "config", None):
        return load_config(args.config)
    n = getattr(args, "n", None)
    m = getattr(args, "m", None)
    if n is None and m is not None:
        n = 2 * m
    return get_preset(args.preset, n)


def _lambda(preset: Preset, lam: tuple[int, ...]) -> tuple[int, ...]:
    if len(lam) != preset.datum.rank:
        raise argparse.ArgumentTypeError(
            f"lambda has {len(lam)} entries but {preset.name} has rank {preset.datum.rank}")
    return tuple(int(x) for x in preset.datum.dominant_rep(lam))


def _family(preset: Preset) -> str:
    name = preset.name.lower()
    for fam in ("gsp4", "gu4"):
        if name.startswith(fam):
            return fam
    return "gln"


# subcommands

def cmd_satake(args) -> int:
    preset = _preset(args)
    lam = _lambda(preset, args.lam)
    entry = TransformTable(preset).entry(lam)
    parts = orbit_decomposition(preset.datum, entry)
    out = {"preset": preset.name, "lambda": list(lam), "word": word_label(preset, lam),
           "orbits": [{"orbit": list(mu), "coeff": c.to_json(), "pretty": str(c)}
                      for mu, c in sorted(parts.items())]}
    _emit(out, args.json, [f"S(K varpi^{lam} K) ="] + [f"  ({c}) m_{mu}" for mu, c in sorted(parts.items())])
    return 0


def spinor_or_standard(preset: Preset, c: int):
    """The Hecke polynomial attached to a preset at twist c."""
    table = TransformTable(preset)
    fam = _family(preset)
    if fam == "gu4":
        return hecke_polynomial(satake_poly_from_config(preset), c, table)
    if fam == "gsp4":
        return hecke_polynomial(minuscule_satake_poly(preset, (1, 1, 1)), Fraction(c, 2), table)
    rank = preset.datum.rank
    # the gl2 preset has no similitude coordinate
    lam = (1, 0) if preset.name == "gl2" else (0, 1) + (0,) * (rank - 2)
    return hecke_polynomial(minuscule_satake_poly(preset, lam), Fraction(c, 2), table)


def cmd_heckepoly(args) -> int:
    preset = _preset(args)
    triples = hecke_poly_triples(preset, spinor_or_standard(preset, args.c))
    lines = [f"X^{t['degree']}: ({t['pretty']}) [K {t['word']} K]  lambda={tuple(t['lattice'])}"
             for t in triples]
    _emit({"preset": preset.name, "c": args.c, "terms": triples}, args.json, lines)
    return 0


def cmd_decompose(args) -> int:
    preset = _preset(args)
    lam = _lambda(preset, args.lam)
    dec = hecke_cells(preset, lam)
    lines = [f"{c.word}  q^{c.size_exp}" for c in dec.cells] + [f"total {dec.total}"]
    _emit({"preset": preset.name, "lambda": list(lam), **dec.to_json()}, args.json, lines)
    return 0


def cmd_orbit_diagram(args) -> int:
    preset = _preset(args)
    diagram = weak_order_diagram(preset.datum, args.lam)
    if args.format == "dot":
        sys.stdout.write(diagram_to_dot(diagram))
        return 0
    out = {"nodes": [list(v) for v in diagram["nodes"]],
           "edges": [{"from": list(a), "to": list(b), "label": s} for a, b, s in diagram["edges"]],
           "source": list(diagram["source"]), "sink": list(diagram["sink"])}
    _emit(out, True)
    return 0


def cmd_mixed(args) -> int:
    preset = _preset(args)
    fam = _family(preset)
    if fam == "gln":
        m = preset.extra.get("n", preset.datum.rank - 1) // 2
        if args.k is None:
            raise argparse.ArgumentTypeError("GL_2m mixed tables need --k")
        rows = []
        for cls in gln_mixed_table(m, args.k):
            deg = gln_mixed_degree(m, cls.kappa, cls.tau)
            rows.append({**cls.to_json(), "degree": str(deg.poly), "residue": deg.residue})
        lines = [f"kappa={tuple(r['kappa'])} tau{r['tauIndex']}: {r['degree']}" for r in rows]
        _emit({"preset": preset.name, "k": args.k, "classes": rows}, args.json, lines)
        return 0
    op = normalise_operator(args.word or "1")
    table = case_mixed_tables(fam)
    if op not in table:
        raise argparse.ArgumentTypeError(f"no class table for {args.word!r}; known: {sorted(table)}")
    rows = [cls.to_json() for cls in table[op]]
    lines = [cls.label() for cls in table[op]]
    _emit({"preset": preset.name, "operator": op, "lambda": list(CASE_OPERATORS[fam][op]),
           "classes": rows}, args.json, lines)
    return 0


def cmd_zeta_check(args) -> int:
    preset = _preset(args)
    if _family(preset) == "gsp4":
        from .schwartz import gsp4_zeta_verdict
        verdict = gsp4_zeta_verdict(args.c, args.p)
    else:
        from .zeta import zeta_verdict
        verdict = zeta_verdict(preset, args.c, args.variant)
    out = verdict.to_json()
    lines = [f"{cv['class']}: degree {cv['degree']}  d={cv['dAlpha']}  residue {cv['residue']}  "
             f"{'pass' if cv['pass'] else 'FAIL'}" + (f"  ({cv['note']})" if cv.get("note") else "")
             for cv in out["classes"]] + [f"overall: {'pass' if verdict.overall else 'FAIL'}"]
    _emit(out, args.json, lines)
    if args.expect_pass and not verdict.overall:
        return EXIT_VERDICT
    return 0


def cmd_schwartz(args) -> int:
    from . import schwartz as sw

    p, lo, up = args.p, args.lower, args.upper
    checks = {"hecke", "frakh1", "h0", "trace"} if args.check == "all" else {args.check}
    report: dict = {"p": p, "c": args.c, "lowerLevel": lo, "upperLevel": up, "checks": {}}
    lines = []
    dumps = {}
    phi = sw.box(0, 0, 0, 0, p, lo, up)
    q = p

    def record(name, ok, detail=""):
        report["checks"][name] = {"pass": bool(ok), "detail": detail}
        lines.append(f"{name}: {'pass' if ok else 'FAIL'}" + (f"  {detail}" if detail else ""))

    if "hecke" in checks:
        pb = lambda *e: sw.phi_bar(*e, p=p, lower=lo, upper=up)  # noqa: E731
        expected = {
            (1, 1, 1): pb(1, 1, 1, 1) + q * (pb(1, 1, 0, 0) + pb(0, 0, 1, 1)) + q * q * phi,
            (2, 2, 1): pb(2, 2, 1, 1) + (q - 1) * pb(1, 1, 1, 1) + q * q * pb(0, 0, 1, 1),
            (2, 1, 2): pb(1, 1, 2, 2) + (q - 1) * pb(1, 1, 1, 1) + q * q * pb(1, 1, 0, 0),
        }
        for lam, want in expected.items():
            got = sw.hecke_act(lam, phi)
            dumps[f"hecke{lam}"] = got
            record(f"[U varpi^{lam} U]_* phi", got == want)
    if "frakh1" in checks:
        psi = sw.frakh1(p, lo, up)
        dumps["psi"] = psi
        record("h1'_* phi = psi", True, f"{len(psi.support())} support points")
    if "h0" in checks:
        h0 = sw.h0_action(args.c, phi)
        dumps["h0"] = h0
        mod = max(p - 1, 1)
        record(f"h0_* phi = 0 mod {mod}", not (h0.values % mod).any())
    if "trace" in checks:
        W = sw.h_tau1_action(p)
        psi = sw.psi_direct(p, lo, up)
        rep = sw.trace_check(psi, W)
        record("trace_check(psi)", rep.passed and rep.max_index == 1,
               f"max stabilizer index {rep.max_index}")
        xi, witness = sw.trace_preimage(psi, W)
        record("trace_preimage(psi) round trip", witness is None)
        if xi is not None:
            dumps["xi"] = xi
    verdict = sw.gsp4_zeta_verdict(args.c, p, lo, up)
    report["verdict"] = verdict.to_json()
    lines.append(f"GSp4 verdict (c={args.c}): {'pass' if verdict.overall else 'FAIL'}")
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump({k: f.to_json() for k, f in sorted(dumps.items())}, fh, sort_keys=True)
    _emit(report, args.json, lines)
    failed = not all(c["pass"] for c in report["checks"].values())
    if failed:
        return EXIT_FAILURE
    if args.expect_pass and not verdict.overall:
        return EXIT_VERDICT
    return 0


def cmd_verify(args) -> int:
    from .padic import (enumerate_cells, iwasawa_shape, locate_classes, model_for,
                        u_orbit_partition)

    preset = _preset(args)
    model = model_for(args.preset, args.p, args.n)
    lam = _lambda(preset, args.lam)
    cosets = enumerate_cells(model, lam)
    expected = hecke_cells(preset, lam).total.at(args.p)
    shapes = Counter(iwasawa_shape(model, g) for g in cosets.matrices(args.p))
    out = {"preset": preset.name, "p": args.p, "lambda": list(lam), "count": len(cosets),
           "expected": int(expected),
           "census": [{"shape": list(s), "count": n} for s, n in sorted(shapes.items())]}
    lines = [f"cosets: {len(cosets)} (cells give {expected})"]
    lines += [f"  shape {s}: {n}" for s, n in sorted(shapes.items())]
    if args.orbits:
        orbits = u_orbit_partition(model, cosets)
        out["orbits"] = sorted(len(o) for o in orbits)
        lines.append(f"U-orbits: {len(orbits)} of sizes {out['orbits']}")
        fam = _family(preset)
        ops = CASE_OPERATORS.get(fam, {})
        op = next((k for k, v in ops.items() if v == lam), None)
        if op is not None:
            table = case_mixed_tables(fam)[op]
            where = locate_classes(model, orbits, [(c.lam, c.tau) for c in table])
            out["classes"] = [{"class": c.label(), "orbitSize": len(orbits[i]) if i >= 0 else None}
                              for c, i in zip(table, where)]
            lines += [f"  {c.label()}: orbit of size {len(orbits[i]) if i >= 0 else '?'}"
                      for c, i in zip(table, where)]
    _emit(out, args.json, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckezeta", description="Spherical Hecke algebra computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, lam=False):
        sp.add_argument("--preset", default="gl2")
        sp.add_argument("--config", help="inline root datum (versioned JSON)")
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--json", action="store_true")
        if lam:
            sp.add_argument("--lambda", dest="lam", type=_ints, required=True)

    sp = sub.add_parser("satake", help="Satake transform as orbit sums")
    common(sp, lam=True)
    sp.set_defaults(func=cmd_satake)

    sp = sub.add_parser("heckepoly", help="Hecke polynomial triples")
    common(sp)
    sp.add_argument("--c", type=int, default=1)
    sp.set_defaults(func=cmd_heckepoly)

    sp = sub.add_parser("decompose", help="Schubert cells of K varpi^lambda K / K")
    common(sp, lam=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("orbit-diagram", help="weak-order diagram of W lambda")
    common(sp, lam=True)
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.set_defaults(func=cmd_orbit_diagram)

    sp = sub.add_parser("mixed", help="U-classes in a double coset")
    common(sp)
    sp.add_argument("--word")
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_mixed)

    sp = sub.add_parser("zeta-check", help="zeta-element verdict")
    common(sp)
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--p", type=int, default=3, help="prime for the GSp4 Schwartz route")
    sp.add_argument("--variant", choices=["anticyclotomic", "product"], default="anticyclotomic")
    sp.add_argument("--expect-pass", action="store_true")
    sp.set_defaults(func=cmd_zeta_check)

    sp = sub.add_parser("schwartz", help="GSp4 Schwartz-space checks")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--check", choices=["all", "hecke", "frakh1", "h0", "trace"], default="all")
    sp.add_argument("--lower", type=int, default=2)
    sp.add_argument("--upper", type=int, default=1)
    sp.add_argument("--dump")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--expect-pass", action="store_true")
    sp.set_defaults(func=cmd_schwartz)

    sp = sub.add_parser("verify", help="enumerate cosets in a matrix model")
    common(sp, lam=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--orbits", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except (HeckeZetaError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_USAGE  # unreachable: parser.error exits


if __name__ == "__main__":
    sys.exit(main())
