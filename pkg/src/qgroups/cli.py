"""Command-line surface: parse expressions, dispatch kernel operations, emit
text or JSON, and run the named check suites.

Exit codes: 0 success, 1 check failure, 2 usage or syntax error."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cartan import build_cartan, datum_from_config
from .checks import SUITES, run_suite
from .errors import QGroupsError, SyntaxError_
from .expr import parse, render
from .pbw import AlgebraElement, presentation, serre_oracle_normal_form
from .qcoeff import QScalar, specialize_scalar


def _build_datum(args):
    if args.lattice and args.lattice.endswith(".json"):
        with open(args.lattice) as fh:
            return datum_from_config(json.load(fh))
    phi = None
    if args.phi:
        if args.phi == "standard":
            from .cartan import standard_twist

            phi = standard_twist(args.type)
        else:
            with open(args.phi) as fh:
                cfg = json.load(fh)
            return datum_from_config({"type": args.type, "lattice": args.lattice or "Q", **cfg})
    return build_cartan(args.type, args.lattice or "Q", phi)


def _emit(args, payload, text=None):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text if text is not None else json.dumps(payload, sort_keys=True))


def _scalar_payload(args, value: QScalar):
    payload = {"value": value.to_json()}
    if getattr(args, "at_one", False):
        try:
            payload["at_one"] = str(specialize_scalar(value, "one"))
        except QGroupsError as exc:
            payload["at_one"] = f"pole: {exc}"
    return payload


def cmd_normal_form(args, datum):
    pres = presentation(datum, args.presentation)
    x = parse(args.expr, pres)
    _emit(args, x.to_json(), render(x))
    return 0


def cmd_mul(args, datum):
    pres = presentation(datum, args.presentation)
    x = parse(args.lhs, pres) * parse(args.rhs, pres)
    _emit(args, x.to_json(), render(x))
    return 0


def cmd_oracle(args, datum):
    toks = []
    for piece in args.word.split():
        if piece.startswith("E") or piece.startswith("F"):
            toks.append((piece[0], int(piece[1:]) - 1))
        else:
            raise SyntaxError_(f"oracle words use E<i>/F<i> tokens, got {piece!r}", 0)
    x = serre_oracle_normal_form(toks, args.maxdeg, datum, args.presentation)
    _emit(args, x.to_json(), render(x))
    return 0


def cmd_delta(args, datum):
    from .hopf import coproduct

    pres = presentation(datum, args.presentation)
    t = coproduct(parse(args.expr, pres))
    _emit(args, t.to_json(), repr(t))
    return 0


def cmd_antipode(args, datum):
    from .hopf import antipode

    pres = presentation(datum, args.presentation)
    x = antipode(parse(args.expr, pres))
    _emit(args, x.to_json(), render(x))
    return 0


def cmd_counit(args, datum):
    from .hopf import counit

    pres = presentation(datum, args.presentation)
    _emit(args, _scalar_payload(args, counit(parse(args.expr, pres))))
    return 0


def cmd_pair(args, datum):
    from .pair import drt_pair, quantum_poisson_pair, scaled_poisson_pair

    if args.kind in ("drt", "drt_pi"):
        x = parse(args.lhs, presentation(datum, "borel_minus"))
        y = parse(args.rhs, presentation(datum.dual(), "borel_plus"))
        v = drt_pair("drt_pi", x, y)
    elif args.kind == "drt_pibar":
        x = parse(args.lhs, presentation(datum, "borel_plus"))
        y = parse(args.rhs, presentation(datum.dual(), "borel_minus"))
        v = drt_pair("drt_pibar", x, y)
    elif args.kind == "poisson":
        x = parse(args.lhs, presentation(datum, "dual_h"))
        y = parse(args.rhs, presentation(datum.dual(), "full"))
        v = quantum_poisson_pair(x, y)
    elif args.kind in ("scaled", "scaled_uu"):
        x = parse(args.lhs, presentation(datum, "dual_h"))
        dq = build_cartan(datum.type, "Q", datum.phi, datum.reduced_word)
        y = parse(args.rhs, presentation(dq, "full"))
        v = scaled_poisson_pair("scaled_poisson_UU", x, y)
    elif args.kind == "scaled_ff":
        x = parse(args.lhs, presentation(datum, "dual_h"))
        y = parse(args.rhs, presentation(datum, "full"))
        v = scaled_poisson_pair("scaled_poisson_FF", x, y)
    else:
        raise SyntaxError_(f"unknown pairing kind {args.kind!r}", 0)
    _emit(args, _scalar_payload(args, v))
    return 0


def cmd_membership(args, datum):
    from .forms import membership

    pres = presentation(datum, args.presentation)
    rep = membership(parse(args.expr, pres), args.form)
    _emit(args, rep.to_json(), f"member: {rep.member}" + (
        "" if rep.member else f"  witnesses: {[(str(m), str(c)) for m, c in rep.witnesses[:3]]}"
    ))
    return 0


def cmd_specialize(args, datum):
    from .special import specialize_element

    pres = presentation(datum, args.presentation)
    at = "one" if args.at in ("1", "one") else int(args.at.split(":")[1])
    spec = specialize_element(parse(args.expr, pres), args.form, at)
    payload = {
        "at": str(at),
        "form": args.form,
        "terms": [
            {"e": list(m.e), "t": list(m.t), "f": list(m.f), "coeff": str(c)}
            for m, c in sorted(spec.terms.items())
        ],
    }
    _emit(args, payload, repr(spec))
    return 0


def cmd_frobenius(args, datum):
    from .special import FrobeniusContext, frobenius_apply, specialize_element

    direction = args.dir
    ctx_datum = datum if direction.endswith("_h") else build_cartan(
        datum.type, "Q", datum.phi, datum.reduced_word
    ).dual()
    ctx = FrobeniusContext(ctx_datum, args.l, direction)
    pres = presentation(ctx_datum, ctx.kind)
    source_at = (args.l if direction.startswith("fr") else "one") if args.l > 1 else "one"
    spec = specialize_element(parse(args.expr, pres), ctx.form, source_at)
    image = frobenius_apply(ctx, spec)
    payload = {
        "direction": direction,
        "ell": args.l,
        "terms": [
            {"e": list(m.e), "t": list(m.t), "f": list(m.f), "coeff": str(c)}
            for m, c in sorted(image.terms.items())
        ],
    }
    _emit(args, payload, repr(image))
    return 0


def cmd_dual_delta(args, datum):
    from .dualform import nu_embed, reconstruct_pair_series
    from .pbw import weight_of_element

    pres = presentation(datum, "dual_h")
    gen = _dual_generator(pres, args.generator)
    f = nu_embed(gen)
    coeffs = reconstruct_pair_series(
        datum,
        lambda u, v: f(u * v),
        args.trunc,
        args.window,
        weight=weight_of_element(gen),
    )
    payload = [
        {
            "left": {"f": list(k[0][0]), "mu": list(k[0][1]), "e": list(k[0][2])},
            "right": {"f": list(k[1][0]), "mu": list(k[1][1]), "e": list(k[1][2])},
            "coeff": c.to_json(),
        }
        for k, c in sorted(coeffs.items())
    ]
    _emit(args, payload)
    return 0


def cmd_dual_antipode(args, datum):
    from .dualform import DualFunctional, dual_antipode, nu_embed, reconstruct_series
    from .pair import h_eval_coords

    pres = presentation(datum, "dual_h")
    gen = _dual_generator(pres, args.generator)
    sf = dual_antipode(nu_embed(gen))
    rec = reconstruct_series(DualFunctional(datum, sf), args.trunc, args.window)
    payload = [
        {"f": list(k[0]), "mu": list(k[1]), "e": list(k[2]), "coeff": c.to_json()}
        for k, c in sorted(h_eval_coords(rec).items())
    ]
    _emit(args, payload)
    return 0


def _dual_generator(pres, name: str) -> AlgebraElement:
    datum = pres.datum
    if name.startswith("F") or name.startswith("E"):
        idx = int(name[1:]) - 1 if len(name) > 1 else 0
        ctor = AlgebraElement.generator_f if name[0] == "F" else AlgebraElement.generator_e
        return ctor(pres, idx)
    if name.startswith("L"):
        rest = name[1:] or "1"
        sign = -1 if rest.startswith("-") else 1
        idx = int(rest.lstrip("-")) - 1
        return AlgebraElement.toral(
            pres, tuple(sign if k == idx else 0 for k in range(pres.n))
        )
    if name == "K":
        return AlgebraElement.toral_weight(pres, datum.simple_roots[0])
    raise SyntaxError_(f"unknown dual generator {name!r}", 0)


def cmd_check(args, datum):
    result = run_suite(args.suite)
    if args.json:
        print(json.dumps(result.to_json(), sort_keys=True))
    else:
        print(result.render())
    return 0 if result.passed else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qgroups",
        description="Exact kernel for multiparameter quantum groups at desk scale.",
    )
    p.add_argument("--type", default="A1", choices=["A1", "A2", "B2"])
    p.add_argument("--lattice", default="Q", help="P, Q, or a JSON config file")
    p.add_argument("--phi", default=None, help="'standard' or a JSON file with phi data")
    p.add_argument(
        "--presentation",
        default="full",
        choices=["full", "borel_minus", "borel_plus", "double", "dual_h"],
    )
    p.add_argument("--trunc", type=int, default=2, help="series truncation degree D")
    p.add_argument("--window", type=int, default=2, help="toral window W")
    p.add_argument("--l", type=int, default=3, help="root-of-unity order ell")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normal-form", help="normalize an expression")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_normal_form)

    s = sub.add_parser("mul", help="straightened product of two expressions")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(fn=cmd_mul)

    s = sub.add_parser("oracle", help="letter-level Serre-quotient normal form")
    s.add_argument("word", help="space-separated tokens like 'E1 F2 E1'")
    s.add_argument("--maxdeg", type=int, default=6)
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("delta", help="coproduct")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_delta)

    s = sub.add_parser("antipode", help="antipode")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_antipode)

    s = sub.add_parser("counit", help="counit")
    s.add_argument("expr")
    s.add_argument("--at-one", action="store_true")
    s.set_defaults(fn=cmd_counit)

    s = sub.add_parser("pair", help="pairings")
    s.add_argument("--kind", default="drt", choices=["drt", "drt_pi", "drt_pibar", "poisson", "scaled", "scaled_uu", "scaled_ff"])
    s.add_argument("--at-one", action="store_true", help="also report the q=1 value")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(fn=cmd_pair)

    s = sub.add_parser("membership", help="integer-form membership")
    s.add_argument("--form", default="restricted", choices=["restricted", "dkp"])
    s.add_argument("expr")
    s.set_defaults(fn=cmd_membership)

    s = sub.add_parser("specialize", help="specialize over a form basis")
    s.add_argument("--at", default="1", help="1 or root:<ell>")
    s.add_argument("--form", default="restricted", choices=["restricted", "dkp"])
    s.add_argument("expr")
    s.set_defaults(fn=cmd_specialize)

    s = sub.add_parser("frobenius", help="quantum Frobenius morphisms")
    s.add_argument("--dir", default="fr_g", choices=["fr_g", "cr_g", "fr_h", "cr_h"])
    s.add_argument("expr")
    s.set_defaults(fn=cmd_frobenius)

    s = sub.add_parser("dual-delta", help="truncated dual coproduct series")
    s.add_argument("--generator", default="F")
    s.set_defaults(fn=cmd_dual_delta)

    s = sub.add_parser("dual-antipode", help="truncated dual antipode series")
    s.add_argument("--generator", default="F")
    s.set_defaults(fn=cmd_dual_antipode)

    s = sub.add_parser("check", help="run a named check suite")
    s.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
    s.set_defaults(fn=cmd_check)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        datum = _build_datum(args)
        return args.fn(args, datum)
    except (SyntaxError_, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QGroupsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
