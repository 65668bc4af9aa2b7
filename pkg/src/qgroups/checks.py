"""Named check suites backing the acceptance criteria and the CLI `check`
subcommand.  Every suite is deterministic (fixed seeds, fixed windows) and
reports one line per criterion it covers."""

from __future__ import annotations

import itertools

from .cartan import build_cartan, standard_twist
from .errors import QGroupsError
from .pbw import AlgebraElement, presentation, serre_oracle_normal_form
from .qcoeff import QScalar

SEED = 20240811


class CheckResult:
    def __init__(self, suite: str):
        self.suite = suite
        self.lines = []
        self.passed = True

    def record(self, label: str, ok: bool, detail: str = ""):
        self.lines.append((label, bool(ok), detail))
        self.passed = self.passed and bool(ok)

    def guard(self, label: str, fn):
        try:
            fn()
            self.record(label, True)
        except QGroupsError as exc:
            self.record(label, False, str(exc)[:400])
        except Exception as exc:  # report, never crash the runner
            self.record(label, False, f"{type(exc).__name__}: {exc}"[:400])

    def render(self) -> str:
        out = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for label, ok, detail in self.lines:
            out.append(f"  [{'PASS' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))
        return "\n".join(out)

    def to_json(self):
        return {
            "suite": self.suite,
            "passed": self.passed,
            "lines": [
                {"label": label, "passed": ok, "detail": detail}
                for label, ok, detail in self.lines
            ],
        }


def _acceptance_data():
    return [
        ("A1", build_cartan("A1", "Q")),
        ("A2", build_cartan("A2", "Q")),
        ("A2-twist", build_cartan("A2", "Q", standard_twist("A2"))),
    ]


def suite_hopf() -> CheckResult:
    """Criterion 1: Hopf axioms, exactly, for A1 and A2 (phi = 0 and one valid
    twist for A2) on all degree-<=2 monomials plus a fixed 50-element
    degree-<=3 sample."""
    from .hopf import check_hopf_axioms

    res = CheckResult("hopf")
    for label, datum in _acceptance_data():
        res.guard(
            f"criterion 1: axioms on {label} (full)",
            lambda d=datum: check_hopf_axioms(d, "full", bound=3, samples=50, seed=SEED),
        )
    return res


def suite_pairing() -> CheckResult:
    """Criterion 2: the closed form equals recursive Hopf-pairing evaluation
    in the resolved convention on all monomial pairs of degree <= 3."""
    from .pair import drt_pair, recursive_pair, resolve_pairing_convention

    res = CheckResult("pairing")
    for label, datum in _acceptance_data()[:2]:
        rec = resolve_pairing_convention(datum)
        res.record(f"unique orientation on {label}", rec.unique, str(rec.as_dict()))
        for kind in ("drt_pi", "drt_pibar"):
            ok = True
            detail = ""
            xs, ys = _pair_monomials(datum, kind, 3)
            for x in xs:
                for y in ys:
                    a = drt_pair(kind, x, y)
                    b = recursive_pair(kind, x, y)
                    if a != b:
                        ok = False
                        detail = f"{x!r} vs {y!r}"
                        break
                if not ok:
                    break
            res.record(
                f"criterion 2: closed form == recursive, {kind}, {label} "
                f"({len(xs)}x{len(ys)} pairs)",
                ok,
                detail,
            )
    return res


def _pair_monomials(datum, kind, height):
    """All one-sided PBW monomials of E/F-height <= height with a small toral
    sample, as elements of the relevant Borel presentations."""
    from .dualform import _exps_by_height
    from .pbw import PBWMonomial

    if kind == "drt_pi":
        pm = presentation(datum, "borel_minus")
        pp = presentation(datum.dual(), "borel_plus")
    else:
        pp = presentation(datum, "borel_plus")
        pm = presentation(datum.dual(), "borel_minus")
    n = datum.n
    torals = [(0,) * n, tuple(1 if k == 0 else 0 for k in range(n))]
    xs, ys = [], []
    for exps in _exps_by_height(datum, height):
        for mu in torals:
            zero = (0,) * pm.N
            xs.append(
                AlgebraElement(
                    pm, {PBWMonomial(zero, mu, (0,) * n, tuple(exps)): QScalar.from_int(1)}
                )
            )
            ys.append(
                AlgebraElement(
                    pp, {PBWMonomial(tuple(exps), mu, (0,) * n, zero): QScalar.from_int(1)}
                )
            )
    if kind == "drt_pi":
        return xs, ys
    return ys, xs


def suite_duality() -> CheckResult:
    """Criterion 3: DRT Gram matrices per graded piece invertible at height
    <= 3; restricted x DKP Gram determinants are units."""
    from .forms import duality_gram_check
    from .pair import drt_pair
    from .pbw import PBWMonomial

    res = CheckResult("duality")
    for label, datum in _acceptance_data()[:2]:
        res.guard(
            f"criterion 3: restricted x DKP duality and unit determinants, {label}",
            lambda d=datum: duality_gram_check(d, 3),
        )
        # perfection of the raw pairing per graded piece, height <= 3
        from .dualform import _exps_by_height
        from .forms import _qdet

        pm = presentation(datum, "borel_minus")
        pp = presentation(datum.dual(), "borel_plus")
        roots = datum.root_data.roots_alpha
        by_weight = {}
        for exps in _exps_by_height(datum, 3):
            if sum(exps) == 0:
                continue
            w = tuple(
                sum(e * roots[r][i] for r, e in enumerate(exps)) for i in range(datum.n)
            )
            by_weight.setdefault(w, []).append(exps)
        ok = True
        for w, monos in by_weight.items():
            zero = (0,) * pm.N
            zmu = (0,) * datum.n
            gram = []
            for f_exps in monos:
                x = AlgebraElement(
                    pm, {PBWMonomial(zero, zmu, zmu, tuple(f_exps)): QScalar.from_int(1)}
                )
                gram.append(
                    [
                        drt_pair(
                            "drt_pi",
                            x,
                            AlgebraElement(
                                pp,
                                {PBWMonomial(tuple(e_exps), zmu, zmu, zero): QScalar.from_int(1)},
                            ),
                        )
                        for e_exps in monos
                    ]
                )
            if _qdet(gram).is_zero():
                ok = False
        res.record(f"criterion 3: graded Gram invertible over k(q), {label}", ok)
    return res


def suite_appendix() -> CheckResult:
    """Criteria 4 and 5: the rank-1 golden series (n <= 3) and the function
    algebra embedding (seven relations plus Hopf compatibility at D=4, W=4)."""
    from .sl2 import check_appendix_series, xi_hopf_compatibility, xi_relation_report

    res = CheckResult("appendix")
    rep = check_appendix_series(nmax=3, window=2)
    res.record("criterion 4: golden series coefficients (n <= 3)", rep["passed"], str(rep["failures"][:2]))
    rep = xi_relation_report()
    res.record("criterion 5: embedding satisfies the seven relations", rep["passed"])
    rep = xi_hopf_compatibility(4, 4)
    res.record("criterion 5: embedding Hopf compatibility (D=4, W=4)", rep["passed"])
    return res


def suite_umbral() -> CheckResult:
    """Criterion 6: the displayed congruences mod (q-q^-1)^2 (coproduct rows)
    and mod (q-q^-1) (antipode rows) for A1 and A2."""
    from .dualform import umbral_congruence_check

    res = CheckResult("umbral")
    for label, datum in _acceptance_data()[:2]:
        for tag, power in (("F", 2), ("L", 2), ("E", 2)):
            res.guard(
                f"criterion 6: {tag}-row congruences, {label}",
                lambda d=datum, t=tag, p=power: umbral_congruence_check(d, t, power=p, height=2, window=1),
            )
    return res


def suite_classical() -> CheckResult:
    """Criterion 7: relations (1.2), primitivity/cocommutativity and S = -id
    at q=1; the cobracket against (1.4); the scaled pairing table (1.1)."""
    from .special import (
        classical_limit_check,
        cobracket_against_classical,
        scaled_pairing_table_check,
    )

    res = CheckResult("classical")
    for label, datum in _acceptance_data()[:2]:
        res.guard(
            f"criterion 7: classical relations and Hopf limit, {label}",
            lambda d=datum: classical_limit_check(d),
        )
        res.guard(
            f"criterion 7: cobracket against the classical formulas, {label}",
            lambda d=datum: cobracket_against_classical(d),
        )
        res.guard(
            f"criterion 7: scaled pairing reproduces the classical table, {label}",
            lambda d=datum: scaled_pairing_table_check(d),
        )
    return res


def suite_frobenius() -> CheckResult:
    """Criterion 8: generator images, multiplicativity, adjointness,
    centrality, and the divided-power collapse at ell = 3."""
    from .qcoeff import q_binomial, specialize_at_root
    from .special import (
        FrobeniusContext,
        frobenius_apply,
        frobenius_generator_images,
        frobenius_property_checks,
        specialize_element,
    )

    res = CheckResult("frobenius")
    d1 = build_cartan("A1", "Q")
    imgs = frobenius_generator_images(d1, 3)
    ok = (
        imgs["F^(1)"].is_zero()
        and imgs["F^(2)"].is_zero()
        and not imgs["F^(3)"].is_zero()
        and not imgs["F^(6)"].is_zero()
        and imgs["(M;0,1)"].is_zero()
        and not imgs["(M;0,3)"].is_zero()
    )
    res.record("criterion 8: generator images at ell = 3", ok)
    res.guard(
        "criterion 8: fr/cr properties on A1 (multiplicative, adjoint, central, window basis)",
        lambda: frobenius_property_checks(d1, ell=3, bound=3),
    )
    d2 = build_cartan("A2", "Q")
    res.guard(
        "criterion 8: A2 spot checks",
        lambda: frobenius_property_checks(d2, ell=3, bound=1),
    )
    collapse = all(
        specialize_at_root(QScalar.from_laurent(q_binomial(3, k, 1)), 3).is_zero()
        for k in (1, 2)
    )
    res.record("criterion 8: divided-power collapse [3 choose k] at eps", collapse)
    ctx = FrobeniusContext(d1.dual(), 1, "fr_g")
    from .forms import FormBasisMonomial, materialize

    pres_u = presentation(d1.dual(), "full")
    sample = specialize_element(
        materialize(FormBasisMonomial("restricted", (1,), (1,), (2,)), pres_u), "restricted", "one"
    )
    res.record("criterion 8: ell = 1 degenerates to the identity", frobenius_apply(ctx, sample) == sample)
    res.guard("criterion 8: function-algebra Frobenius (SL(2))", lambda: __import__("qgroups.special", fromlist=["function_frobenius_check"]).function_frobenius_check(3))
    return res


def suite_oracle() -> CheckResult:
    """Criterion 9: the straightening engine matches the letter-level
    Serre-quotient oracle on all generator words of length <= 4 (A1, A2)."""
    res = CheckResult("oracle")
    for label, datum in _acceptance_data()[:2]:
        pres = presentation(datum, "full")
        toks = []
        for i in range(datum.n):
            toks += [("E", i), ("F", i)]
        gens = {
            ("E", i): AlgebraElement.generator_e(pres, i) for i in range(datum.n)
        }
        gens.update({("F", i): AlgebraElement.generator_f(pres, i) for i in range(datum.n)})
        ok = True
        count = 0
        for length in range(1, 5):
            for word in itertools.product(toks, repeat=length):
                engine = AlgebraElement.one(pres)
                for t in word:
                    engine = engine * gens[t]
                if serre_oracle_normal_form(list(word), 6, datum) != engine:
                    ok = False
                    break
                count += 1
            if not ok:
                break
        res.record(f"criterion 9: oracle equivalence, {label} ({count} words)", ok)
    return res


def suite_cli() -> CheckResult:
    """Criterion 10: deterministic JSON round-trip on 100 fixed elements plus
    the expression round-trip property."""
    from .expr import parse, render

    res = CheckResult("cli")
    datum = build_cartan("A2", "Q")
    pres = presentation(datum, "full")
    elems = _fixed_elements(pres, 100)
    ok_json = all(AlgebraElement.from_json(pres, x.to_json()) == x for x in elems)
    res.record("criterion 10: JSON round trip on 100 fixed elements", ok_json)
    ok_expr = all(parse(render(x), pres) == x for x in elems[:40])
    res.record("criterion 10: parse(render(x)) == x on emitted elements", ok_expr)
    dumped = [str(x.to_json()) for x in elems[:10]]
    res.record(
        "criterion 10: deterministic serialization",
        dumped == [str(AlgebraElement.from_json(pres, x.to_json()).to_json()) for x in elems[:10]],
    )
    return res


def _fixed_elements(pres, count):
    import random

    rng = random.Random(SEED)
    gens = []
    for i in range(pres.n):
        gens.append(AlgebraElement.generator_e(pres, i))
        gens.append(AlgebraElement.generator_f(pres, i))
        gens.append(AlgebraElement.toral(pres, tuple(1 if k == i else 0 for k in range(pres.n))))
    out = []
    while len(out) < count:
        x = AlgebraElement.one(pres) * rng.choice((1, 2, 3))
        for _ in range(rng.randint(1, 3)):
            x = x * rng.choice(gens)
        if rng.random() < 0.5:
            x = x + rng.choice(gens) * QScalar.q_power(rng.randint(-2, 2))
        out.append(x)
    return out


SUITES = {
    "hopf": suite_hopf,
    "pairing": suite_pairing,
    "duality": suite_duality,
    "appendix": suite_appendix,
    "umbral": suite_umbral,
    "classical": suite_classical,
    "frobenius": suite_frobenius,
    "oracle": suite_oracle,
    "cli": suite_cli,
}


def run_suite(name: str) -> CheckResult:
    if name == "all":
        merged = CheckResult("all")
        for key in SUITES:
            sub = SUITES[key]()
            for label, ok, detail in sub.lines:
                merged.record(f"{key}: {label}", ok, detail)
        return merged
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)} or all")
    return SUITES[name]()
