"""Integer forms over k[q,q^-1]: the restricted form (divided powers and
toral binomials) and the DKP form (rescaled root vectors and plain torals),
with exact basis conversion, membership reports, the bounded-degree duality
checks, integer-valued-function membership, and the filtration degrees used
by the scaled Poisson pairings."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import DualityFailure, NotInForm, PresentationMismatch
from .pbw import (
    ONE,
    AlgebraElement,
    PBWMonomial,
    Presentation,
    QScalar,
    _add_term,
    presentation,
)
from .qcoeff import LaurentPoly, q_factorial

FORMS = ("restricted", "dkp")


class FormBasisMonomial(NamedTuple):
    """Basis monomial of an integer form.

    restricted: prod E^(n_r) (descending) * prod (M_i;0,t_i) M_i^(-floor(t_i/2))
                * prod F^(m_r) (ascending), t_i >= 0
    dkp:        prod Ebar^(n_r) * prod M_i^(t_i) * prod Fbar^(m_r), t_i in Z
    """

    form: str
    e: tuple
    t: tuple
    f: tuple

    def degree(self) -> int:
        return sum(self.e) + sum(abs(x) for x in self.t) + sum(self.f)


def _q_int(pres: Presentation, i: int) -> int:
    return pres.datum.d[i]


def _root_d(pres: Presentation, r: int) -> int:
    return pres.datum.root_data.d_alpha[r]


def _gen_scalar(pres: Presentation, r: int) -> QScalar:
    d = _root_d(pres, r)
    return QScalar.q_power(d) - QScalar.q_power(-d)


# --- toral binomial polynomials ---------------------------------------------


def toral_binomial_poly(c: int, t: int, d: int) -> dict:
    """(Y; c, t) as {power of Y: Laurent coefficient}, with q_i = q^d."""
    out = {0: QScalar.from_int(1)}
    for s in range(1, t + 1):
        denom = QScalar.from_laurent(LaurentPoly({d * s: Fraction(1), 0: Fraction(-1)}))
        new: dict = {}
        for k, coeff in out.items():
            _add_term(new, k + 1, coeff * QScalar.q_power(d * (c - s + 1)) / denom)
            _add_term(new, k, -coeff / denom)
        out = new
    return out


def restricted_toral_poly(t: int, d: int) -> dict:
    """(Y;0,t) Y^(-floor(t/2)) as {power: coefficient}."""
    shift = t // 2
    return {k - shift: c for k, c in toral_binomial_poly(0, t, d).items()}


def _restricted_toral_basis_cache(pres: Presentation, i: int, tmax: int):
    cache = pres._tables.setdefault("restricted_toral", {})
    key = (i, tmax)
    if key not in cache:
        cache[key] = [restricted_toral_poly(t, _q_int(pres, i)) for t in range(tmax + 1)]
    return cache[key]


def _solve_toral_single(pres: Presentation, i: int, poly: dict) -> dict:
    """Coordinates of a Laurent polynomial in M_i over the restricted toral
    basis {(M_i;0,t) M_i^(-floor(t/2))}; exact, by window elimination."""
    out: dict = {}
    p = {k: c for k, c in poly.items() if not c.is_zero()}
    while p:
        lo, hi = min(p), max(p)
        t = max(2 * hi - 1, -2 * lo, 0)
        basis = restricted_toral_poly(t, _q_int(pres, i))
        edge = hi if t == max(2 * hi - 1, 0) and 2 * hi - 1 >= -2 * lo else lo
        c = p[edge] / basis[edge]
        _add_term(out, t, c)
        for k, b in basis.items():
            _add_term(p, k, -c * b)
    return out


def _expand_toral(pres: Presentation, toral_terms: dict, form: str) -> dict:
    """{mu-exponent tuple: coeff} -> {t-tuple: coeff} over the form's toral
    basis (identity for dkp)."""
    if form == "dkp":
        return dict(toral_terms)
    n = pres.n
    current = {((), mu): c for mu, c in toral_terms.items()}
    for i in range(n):
        new: dict = {}
        for (done, mu), c in current.items():
            poly = {mu[i]: c}
            for t, coeff in _solve_toral_single(pres, i, poly).items():
                key = (done + (t,), mu)
                _add_term(new, key, coeff)
        # merge identical remaining-mu tails
        merged: dict = {}
        for (done, mu), c in new.items():
            _add_term(merged, (done, mu), c)
        current = merged
    out: dict = {}
    for (done, _mu), c in current.items():
        _add_term(out, done, c)
    return out


# --- materialization and coordinates ------------------------------------------


def materialize(m: FormBasisMonomial, pres: Presentation) -> AlgebraElement:
    """The form-basis monomial as an exact k(q)-combination of PBW monomials."""
    if m.form not in FORMS:
        raise NotInForm(f"unknown form {m.form!r}")
    acc = AlgebraElement.one(pres)
    for r in range(pres.N - 1, -1, -1):
        n_r = m.e[r]
        if not n_r:
            continue
        vec = AlgebraElement.root_vector(pres, +1, r) ** n_r
        if m.form == "restricted":
            vec = vec * QScalar.from_laurent(q_factorial(n_r, _root_d(pres, r))).inv()
        else:
            vec = vec * _gen_scalar(pres, r) ** n_r
        acc = acc * vec
    acc = acc * _toral_element(pres, m.t, m.form)
    for r in range(pres.N):
        m_r = m.f[r]
        if not m_r:
            continue
        vec = AlgebraElement.root_vector(pres, -1, r) ** m_r
        if m.form == "restricted":
            vec = vec * QScalar.from_laurent(q_factorial(m_r, _root_d(pres, r))).inv()
        else:
            vec = vec * _gen_scalar(pres, r) ** m_r
        acc = acc * vec
    return acc


def _toral_element(pres: Presentation, t: tuple, form: str) -> AlgebraElement:
    n = pres.n
    if form == "dkp":
        return AlgebraElement.toral(pres, t)
    combo = {(0,) * n: ONE}
    for i in range(n):
        poly = restricted_toral_poly(t[i], _q_int(pres, i))
        new: dict = {}
        for mu, c in combo.items():
            for k, coeff in poly.items():
                key = tuple(mu[s] + (k if s == i else 0) for s in range(n))
                _add_term(new, key, c * coeff)
        combo = new
    return AlgebraElement(pres, {
        PBWMonomial((0,) * pres.N, mu, (0,) * n, (0,) * pres.N): c for mu, c in combo.items()
    })


def form_coordinates(x: AlgebraElement, form: str) -> dict:
    """Exact coordinates of x over the form basis: {FormBasisMonomial: coeff}."""
    if form not in FORMS:
        raise NotInForm(f"unknown form {form!r}")
    pres = x.pres
    if pres.has_kappa:
        raise PresentationMismatch("forms are defined for the quotient presentations")
    grouped: dict = {}
    for m, c in x.terms.items():
        grouped.setdefault((m.e, m.f), {})[m.mu] = c
    out: dict = {}
    for (e, f), toral_terms in grouped.items():
        factor = ONE
        for r in range(pres.N):
            if e[r]:
                if form == "restricted":
                    factor = factor * QScalar.from_laurent(q_factorial(e[r], _root_d(pres, r)))
                else:
                    factor = factor * (_gen_scalar(pres, r) ** e[r]).inv()
            if f[r]:
                if form == "restricted":
                    factor = factor * QScalar.from_laurent(q_factorial(f[r], _root_d(pres, r)))
                else:
                    factor = factor * (_gen_scalar(pres, r) ** f[r]).inv()
        for t, c in _expand_toral(pres, toral_terms, form).items():
            _add_term(out, FormBasisMonomial(form, e, t, f), c * factor)
    return out


class MembershipReport:
    """Expansion over the form basis with per-coefficient Laurent tests."""

    def __init__(self, member: bool, witnesses, coordinates):
        self.member = member
        self.witnesses = witnesses  # [(FormBasisMonomial, QScalar)] non-Laurent
        self.coordinates = coordinates

    def to_json(self):
        return {
            "member": self.member,
            "witnesses": [
                {"monomial": {"form": m.form, "e": list(m.e), "t": list(m.t), "f": list(m.f)},
                 "coeff": c.to_json()}
                for m, c in self.witnesses
            ],
        }

    def __repr__(self):
        return f"MembershipReport(member={self.member}, witnesses={len(self.witnesses)})"


def membership(x: AlgebraElement, form: str) -> MembershipReport:
    coords = form_coordinates(x, form)
    witnesses = [(m, c) for m, c in coords.items() if not c.is_laurent()]
    return MembershipReport(not witnesses, witnesses, coords)


def filtration_degrees(x: AlgebraElement, form: str = "restricted"):
    """Set of per-term filtration degrees over the form basis.

    restricted: sum of divided-power exponents plus toral binomial degrees;
    dkp: rescaled-vector exponents plus (L^+-1 - 1)-adic toral degree, which
    for a basis monomial M^t equals sum |t_i|."""
    coords = form_coordinates(x, form)
    bad = [(m, c) for m, c in coords.items() if not c.is_laurent()]
    if bad:
        raise NotInForm(f"element is not in the {form} form: witness {bad[0]}")
    return {m.degree() for m in coords}


def filtration_degree(x: AlgebraElement, form: str = "restricted") -> int:
    degs = filtration_degrees(x, form)
    return max(degs) if degs else 0


# --- duality at bounded degree ---------------------------------------------------


def _content_monomials(pres: Presentation, height: int, side_vals):
    """Form exponent tuples with total height <= height."""
    roots = pres.datum.root_data.roots_alpha
    out = []

    def rec(r, acc, ht):
        if r == pres.N:
            out.append(tuple(acc))
            return
        max_m = (height - ht) // sum(roots[r]) if sum(roots[r]) else 0
        for m in range(0, max_m + 1):
            rec(r + 1, acc + [m], ht + m * sum(roots[r]))

    rec(0, [], 0)
    return out


def duality_gram_check(datum, bound: int = 2) -> dict:
    """Containment and perfection of the restricted x DKP duality (bounded):
    DKP monomials of the negative Borel over M pair against restricted
    monomials of the positive Borel over M' inside k[q,q^-1], with unit Gram
    determinants per graded piece; the toral block is checked on the
    triangular window of Lemma-5.4 type."""
    from .pair import drt_pair

    pm = presentation(datum, "borel_minus")
    pp = presentation(datum.dual(), "borel_plus")
    failures = []
    dets = {}
    # nilpotent blocks per content height
    contents = {}
    roots = datum.root_data.roots_alpha
    for exps in _content_monomials(pm, bound, None):
        ht = sum(e * sum(roots[r]) for r, e in enumerate(exps))
        if 0 < ht <= bound:
            contents.setdefault(ht, []).append(exps)
    zero_t = (0,) * datum.n
    zero_e = (0,) * pm.N
    for ht, block in sorted(contents.items()):
        by_weight: dict = {}
        for exps in block:
            w = tuple(sum(e * roots[r][i] for r, e in enumerate(exps)) for i in range(datum.n))
            by_weight.setdefault(w, []).append(exps)
        for w, monos in by_weight.items():
            gram = []
            for fm in monos:
                x = materialize(FormBasisMonomial("dkp", zero_e, zero_t, fm), pm)
                row = []
                for em in monos:
                    y = materialize(FormBasisMonomial("restricted", em, zero_t, zero_e), pp)
                    v = drt_pair("drt_pi", x, y)
                    if not v.is_laurent():
                        failures.append(("containment", fm, em, str(v)))
                    row.append(v)
                gram.append(row)
            det = _qdet(gram)
            dets[("nilpotent", w)] = str(det)
            if not det.is_unit_monomial():
                failures.append(("perfection", w, str(det)))
    # toral block: dkp characters L_(-mu) against restricted binomial monomials
    tor_fail, tor_dets = _toral_duality_block(datum, bound)
    failures += tor_fail
    dets.update(tor_dets)
    report = {"passed": not failures, "failures": failures, "determinants": dets}
    if failures:
        raise DualityFailure(str(report))
    return report


def _toral_duality_block(datum, bound: int):
    from .pair import drt_pair

    pm = presentation(datum, "borel_minus")
    pp = presentation(datum.dual(), "borel_plus")
    n = datum.n
    failures = []
    dets = {}
    taus = []

    def rec(i, acc):
        if i == n:
            taus.append(tuple(acc))
            return
        for t in range(bound + 1):
            rec(i + 1, acc + [t])

    rec(0, [])
    taus.sort(key=lambda t: (sum(t), t))
    zero_e = (0,) * pp.N
    gram = []
    for mu in taus:
        x = AlgebraElement.toral(pm, tuple(-m for m in mu))
        row = []
        for t in taus:
            y = materialize(FormBasisMonomial("restricted", zero_e, t, zero_e), pp)
            v = drt_pair("drt_pi", x, y)
            if not v.is_laurent():
                failures.append(("toral-containment", mu, t, str(v)))
            row.append(v)
        gram.append(row)
    det = _qdet(gram)
    dets[("toral", bound)] = str(det)
    if not det.is_unit_monomial():
        failures.append(("toral-perfection", bound, str(det)))
    return failures, dets


def _qdet(rows) -> QScalar:
    rows = [list(r) for r in rows]
    n = len(rows)
    out = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            return QScalar.from_int(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            out = -out
        out = out * rows[col][col]
        inv = rows[col][col].inv()
        for r in range(col + 1, n):
            if not rows[r][col].is_zero():
                fac = rows[r][col] * inv
                rows[r] = [a - fac * b for a, b in zip(rows[r], rows[col])]
    return out


# --- integer-valued-function membership -----------------------------------------


def function_form_membership(f, form: str, bound: int = 2) -> MembershipReport:
    """Membership of a functional in the integer-valued-function form: the
    functional (a dual_h element via the embedding, or a callable on quotient
    elements) is evaluated against every basis monomial of the stated form of
    the quotient algebra over M' up to the degree bound; each value must be a
    Laurent polynomial.

    form "F-restricted" tests against the restricted form (membership in the
    function form dual to it), "F-dkp" against the DKP form.
    """
    from .pair import quantum_poisson_pair

    target_form = {"F-restricted": "restricted", "F-dkp": "dkp"}.get(form)
    if target_form is None:
        raise NotInForm(f"unknown function form {form!r}")
    if isinstance(f, AlgebraElement):
        if f.pres.kind != "dual_h":
            raise PresentationMismatch("functional must be a dual_h element")
        datum = f.pres.datum
        dualp = presentation(datum.dual(), "full")
        evaluate = lambda g: quantum_poisson_pair(f, g)
    else:
        datum, evaluate = f  # (datum, callable) pair for extensional input
        dualp = presentation(datum.dual(), "full")
    witnesses = []
    values = {}
    for mono in _form_basis_monomials(dualp, target_form, bound):
        g = materialize(mono, dualp)
        v = evaluate(g)
        values[mono] = v
        if not v.is_laurent():
            witnesses.append((mono, v))
    return MembershipReport(not witnesses, witnesses, values)


def _form_basis_monomials(pres: Presentation, form: str, bound: int):
    """All form-basis monomials with E/F heights and toral degree <= bound."""
    roots = pres.datum.root_data.roots_alpha
    exps = _content_monomials(pres, bound, None)
    n = pres.n
    trange = range(0, bound + 1) if form == "restricted" else range(-bound, bound + 1)
    tor = []

    def rec(i, acc):
        if i == n:
            tor.append(tuple(acc))
            return
        for t in trange:
            rec(i + 1, acc + [t])

    rec(0, [])
    out = []
    for e in exps:
        he = sum(m * sum(roots[r]) for r, m in enumerate(e))
        if he > bound:
            continue
        for f in exps:
            hf = sum(m * sum(roots[r]) for r, m in enumerate(f))
            if he + hf > bound:
                continue
            for t in tor:
                if sum(abs(x) for x in t) <= bound:
                    out.append(FormBasisMonomial(form, e, t, f))
    return out


def tensor_form_coordinates(t, form: str) -> dict:
    """Exact coordinates of a tensor-square element over the form's tensor
    basis: {(FormBasisMonomial, FormBasisMonomial): coeff}.  Used by the
    coproduct-closure checks."""
    pres = t.pres
    stage1: dict = {}
    for (m1, m2), c in t.terms.items():
        left = AlgebraElement(pres, {m1: c})
        for b1, c1 in form_coordinates(left, form).items():
            _add_term(stage1.setdefault(b1, {}), m2, c1)
    out: dict = {}
    for b1, inner in stage1.items():
        right = AlgebraElement(pres, inner)
        for b2, c2 in form_coordinates(right, form).items():
            _add_term(out, (b1, b2), c2)
    return out
