"""DRT pairings between opposite quantum Borel algebras: the closed form on
PBW monomials, empirical resolution of the Hopf-pairing orientation, a
recursive evaluator used to cross-check the closed form, the quantum Poisson
pairing between the dual-side algebra and the quotient algebra, and the
(q-1)-scaled pairings."""

from __future__ import annotations

from fractions import Fraction

from .cartan import CartanDatum, vec_add, vec_scale, vec_sub
from .errors import NoConsistentConvention, NotInForm, PresentationMismatch
from .hopf import coproduct, counit
from .pbw import (
    ONE,
    AlgebraElement,
    PBWMonomial,
    QScalar,
    _add_term,
    _reorder_pure,
    presentation,
    root_vector_decomposition,
    to_edesc_llast,
    to_fdesc_llast,
)
from .qcoeff import q_factorial

PAIRING_KINDS = ("drt_pi", "drt_pibar", "quantum_poisson", "scaled_poisson_UU", "scaled_poisson_FF")


def _int_exp(x):
    """Exponent coercion; fractional exponents are carried exactly (values in
    k(q^(1/D))) and only the FF-scaled pairing refuses them."""
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _weight(datum: CartanDatum, exps, sign: int):
    out = tuple(Fraction(0) for _ in range(datum.n))
    for r, m in enumerate(exps):
        if m:
            out = vec_add(out, vec_scale(datum.root_data.positive_roots[r], sign * m))
    return out


# --- the closed form (decreasing orders on both sides) -----------------------


def _pair_product_factor(datum: CartanDatum, e_exps, f_exps, bar: bool) -> QScalar:
    if tuple(e_exps) != tuple(f_exps):
        return QScalar.from_int(0)
    out = ONE
    for r, e in enumerate(e_exps):
        if not e:
            continue
        d = datum.root_data.d_alpha[r]
        out = out * QScalar.from_laurent(q_factorial(e, d))
        out = out * QScalar.q_power(d * (e * (e - 1) // 2) * (-1 if bar else 1))
        denom = (
            (QScalar.q_power(d) - QScalar.q_power(-d))
            if bar
            else (QScalar.q_power(-d) - QScalar.q_power(d))
        )
        out = out * (denom**e).inv()
    return out


def _tau_content(datum: CartanDatum, exps):
    """Half the phi-image of the positive content weight of a monomial."""
    out = tuple(Fraction(0) for _ in range(datum.n))
    for r, m in enumerate(exps):
        if m:
            out = vec_add(out, vec_scale(datum.tau_alpha[r], m))
    return out


def closed_pi(datum: CartanDatum, f_exps, mu_w, e_exps, nu_w) -> QScalar:
    """pi_phi( F-desc * L_mu , E-desc * L_nu ), weights as omega vectors.

    The toral exponent is -( r(mu + tau(F)) | nu + tau(E) ) with tau taken of
    the positive content weights; this is the form the section-2.3 generator
    values force through the Hopf-pairing identities (it agrees with the
    printed display at phi = 0).  Coordinates refer to the kernel's
    bracket-normalized root vectors; the empirically resolved per-root
    factors translate to the normalization the closed form assumes."""
    factor = _pair_product_factor(datum, e_exps, f_exps, bar=False)
    if factor.is_zero():
        return factor
    factor = factor * _root_norm(datum, "drt_pi", f_exps)
    exp = -datum.bilinear(
        datum.apply_r(vec_add(mu_w, _tau_content(datum, f_exps))),
        vec_add(nu_w, _tau_content(datum, e_exps)),
    )
    return QScalar.q_power(_int_exp(exp)) * factor


def closed_pibar(datum: CartanDatum, e_exps, mu_w, f_exps, nu_w) -> QScalar:
    """pibar_phi( L_mu * E-asc , L_nu * F-asc ).

    Diagonalizes over ascending orders on both sides (resolved empirically;
    the printed display mixes its index labels).  Toral exponent
    +( rbar(mu + tau(E)) | nu + tau(F) ), mirroring closed_pi."""
    factor = _pair_product_factor(datum, e_exps, f_exps, bar=True)
    if factor.is_zero():
        return factor
    factor = factor * _root_norm(datum, "drt_pibar", f_exps)
    exp = datum.bilinear(
        datum.apply_rbar(vec_add(mu_w, _tau_content(datum, e_exps))),
        vec_add(nu_w, _tau_content(datum, f_exps)),
    )
    return QScalar.q_power(_int_exp(exp)) * factor


def _root_norm(datum: CartanDatum, kind: str, f_exps) -> QScalar:
    norms = datum._cache.get("pairing_root_norms")
    if norms is None:
        if datum._cache.get("pairing_resolving"):
            return ONE  # resolution in progress: samples avoid non-simple roots
        resolve_pairing_convention(datum)
        norms = datum._cache["pairing_root_norms"]
    out = ONE
    for r, m in enumerate(f_exps):
        if m:
            u = norms[kind][r]
            if not u.is_one():
                out = out * u**m
    return out


def _check_drt_operands(kind: str, x: AlgebraElement, y: AlgebraElement) -> None:
    want_x = "borel_minus" if kind == "drt_pi" else "borel_plus"
    want_y = "borel_plus" if kind == "drt_pi" else "borel_minus"
    if x.pres.kind != want_x or y.pres.kind != want_y:
        raise PresentationMismatch(
            f"{kind} pairs {want_x}(M) with {want_y}(M'); got {x.pres.kind}, {y.pres.kind}"
        )
    if y.pres.datum != x.pres.datum.dual():
        raise PresentationMismatch(f"{kind} requires dual lattices M, M'")


def drt_pair(kind: str, x: AlgebraElement, y: AlgebraElement) -> QScalar:
    """Bilinear extension of the closed form; operands are converted to the
    monomial orders the closed form expects."""
    _check_drt_operands(kind, x, y)
    total = QScalar.from_int(0)
    dx = x.pres.datum
    dy = y.pres.datum
    if kind == "drt_pi":
        xs = to_fdesc_llast(x)
        ys = to_edesc_llast(y)
        for (f_exps, mu), cx in xs.items():
            mu_w = dx.weight_of_mu(mu)
            for (e_exps, nu), cy in ys.items():
                val = closed_pi(dx, f_exps, mu_w, e_exps, dy.weight_of_mu(nu))
                if not val.is_zero():
                    total = total + cx * cy * val
        return total
    xs = to_easc_lfirst(x)
    for (e_exps, mu), cx in xs.items():
        mu_w = dx.weight_of_mu(mu)
        for my, cy in y.terms.items():
            # stored minus-side monomial is already L_nu * F-asc
            val = closed_pibar(dx, e_exps, mu_w, my.f, dy.weight_of_mu(my.mu))
            if not val.is_zero():
                total = total + cx * cy * val
    return total


def to_easc_lfirst(x: AlgebraElement) -> dict:
    """Coordinates over L_mu * E-asc for elements of the positive Borel."""
    pres = x.pres
    out: dict = {}
    for m, c in x.terms.items():
        if any(m.f) or any(m.kappa):
            raise PresentationMismatch("expected an element of the positive Borel")
        # stored monomial is E-desc * L_mu = q^(-shift) L_mu * E-desc
        shift = sum(pres.comm_exponent_root(r + 1, m.mu) * m.e[r] for r in range(pres.N))
        word = []
        for r in range(pres.N - 1, -1, -1):
            word += [r + 1] * m.e[r]
        for exps, cc in _reorder_pure(pres, tuple(word), +1, "asc").items():
            _add_term(out, (exps, m.mu), c * cc * QScalar.q_power(-shift))
    return out


# --- convention resolution ----------------------------------------------------


class ConventionRecord:
    """Orientation of the Hopf-pairing identities, resolved empirically.

    flip_second: <x, uv> = sum <x(1),v><x(2),u> (True) or <x(1),u><x(2),v>.
    flip_first:  <xy, u> = sum <x,u(2)><y,u(1)> (True) or <x,u(1)><y,u(2)>.
    """

    def __init__(self, pi_orient, pibar_orient, unique: bool):
        self.pi_flip_first, self.pi_flip_second = pi_orient
        self.pibar_flip_first, self.pibar_flip_second = pibar_orient
        self.unique = unique

    def orientation(self, kind: str):
        if kind == "drt_pi":
            return self.pi_flip_first, self.pi_flip_second
        return self.pibar_flip_first, self.pibar_flip_second

    def as_dict(self):
        return {
            "pi": {"flip_first": self.pi_flip_first, "flip_second": self.pi_flip_second},
            "pibar": {
                "flip_first": self.pibar_flip_first,
                "flip_second": self.pibar_flip_second,
            },
            "unique": self.unique,
        }


def _identity_samples(datum: CartanDatum, kind: str):
    if kind == "drt_pi":
        pm = presentation(datum, "borel_minus")
        pp = presentation(datum.dual(), "borel_plus")
        xs_pres, ys_pres = pm, pp
        gen_x, gen_y = AlgebraElement.generator_f, AlgebraElement.generator_e
    else:
        pp = presentation(datum, "borel_plus")
        pm = presentation(datum.dual(), "borel_minus")
        xs_pres, ys_pres = pp, pm
        gen_x, gen_y = AlgebraElement.generator_e, AlgebraElement.generator_f
    n = datum.n
    xs = [AlgebraElement.one(xs_pres)]
    us = [AlgebraElement.one(ys_pres)]
    for i in range(n):
        xs.append(gen_x(xs_pres, i))
        us.append(gen_y(ys_pres, i))
    for t in range(n):
        mu = tuple(1 if s == t else 0 for s in range(n))
        xs.append(AlgebraElement.toral(xs_pres, mu))
        us.append(AlgebraElement.toral(ys_pres, mu))
    xs.append(gen_x(xs_pres, 0) * xs[1])
    us.append(gen_y(ys_pres, 0) * us[1])
    return xs, us


def resolve_pairing_convention(datum: CartanDatum) -> ConventionRecord:
    """Determine, by exhaustive tests on degree-<=2 monomials, which tensor
    orientations of the Hopf-pairing identities are consistent with the
    closed form, then fix the per-root units relating the kernel's bracket
    normalization of non-simple root vectors to the one the closed form
    assumes.  Results are cached on the datum."""
    if "pairing_convention" in datum._cache:
        return datum._cache["pairing_convention"]
    datum._cache["pairing_resolving"] = True
    orients = {}
    unique = True
    for kind in ("drt_pi", "drt_pibar"):
        fn = lambda a, b, k=kind: drt_pair(k, a, b)
        xs, us = _identity_samples(datum, kind)
        # products involving non-simple root vectors are excluded here: their
        # diagonal units are fixed only after the orientation is known
        second_triples = [
            (x, u, v)
            for x in xs
            for u in us
            for v in us
            if _simple_support(u * v)
        ]
        first_triples = [
            (x, y, u) for x in xs for y in xs for u in us if _simple_support(x * y)
        ]
        ok_second = [
            flip
            for flip in (False, True)
            if all(_second_slot_identity(fn, x, u, v, flip) for x, u, v in second_triples)
        ]
        ok_first = [
            flip
            for flip in (False, True)
            if all(_first_slot_identity(fn, x, y, u, flip) for x, y, u in first_triples)
        ]
        if not ok_second or not ok_first:
            raise NoConsistentConvention(
                f"no orientation of {kind} satisfies the Hopf-pairing identities"
            )
        unique = unique and len(ok_second) == 1 and len(ok_first) == 1
        orients[kind] = (ok_first[0], ok_second[0])
    rec = ConventionRecord(orients["drt_pi"], orients["drt_pibar"], unique)
    datum._cache["pairing_convention"] = rec
    datum._cache["pairing_root_norms"] = _resolve_root_norms(datum, rec)
    rec.root_norms = datum._cache["pairing_root_norms"]
    datum._cache.pop("pairing_resolving", None)
    return rec


def _resolve_root_norms(datum: CartanDatum, rec: ConventionRecord):
    """Per-root diagonal factors: true pairing value of the bracket-built root
    vectors (recursive evaluation from generator values) over the closed-form
    claim.  A unit factor means the brackets differ from the normalization
    the closed form assumes by a harmless rescale; non-unit factors (B2's
    doubly-laced root) are equally consistent because the factor scales as
    rho^(f_r) over monomials."""
    from .errors import ConventionFailure

    dual = datum.dual()
    N = len(datum.root_data.positive_roots)
    zero_w = tuple(Fraction(0) for _ in range(datum.n))
    out = {"drt_pi": [ONE] * N, "drt_pibar": [ONE] * N}
    for r in range(N):
        if root_vector_decomposition(datum, r) is None:
            continue
        one_at = tuple(1 if k == r else 0 for k in range(N))
        x = AlgebraElement.root_vector(presentation(datum, "borel_minus"), -1, r)
        y = AlgebraElement.root_vector(presentation(dual, "borel_plus"), +1, r)
        true = recursive_pair("drt_pi", x, y)
        claimed = closed_pi(datum, one_at, zero_w, one_at, zero_w)
        if true.is_zero():
            raise ConventionFailure(f"pi diagonal vanishes for root {r}")
        out["drt_pi"][r] = true / claimed
        x2 = AlgebraElement.root_vector(presentation(datum, "borel_plus"), +1, r)
        y2 = AlgebraElement.root_vector(presentation(dual, "borel_minus"), -1, r)
        true2 = recursive_pair("drt_pibar", x2, y2)
        claimed2 = closed_pibar(datum, one_at, zero_w, one_at, zero_w)
        if true2.is_zero():
            raise ConventionFailure(f"pibar diagonal vanishes for root {r}")
        out["drt_pibar"][r] = true2 / claimed2
    return out


def _simple_support(el: AlgebraElement) -> bool:
    datum = el.pres.datum
    simple = [r for r, a in enumerate(datum.root_data.roots_alpha) if sum(a) == 1]
    for m in el.terms:
        for r in range(el.pres.N):
            if (m.e[r] or m.f[r]) and r not in simple:
                return False
    return True


def _second_slot_identity(fn, x, u, v, flip: bool) -> bool:
    lhs = fn(x, u * v)
    rhs = QScalar.from_int(0)
    for (m1, m2), c in coproduct(x).terms.items():
        a = AlgebraElement(x.pres, {m1: ONE})
        b = AlgebraElement(x.pres, {m2: ONE})
        rhs = rhs + (c * fn(a, v) * fn(b, u) if flip else c * fn(a, u) * fn(b, v))
    return lhs == rhs


def _first_slot_identity(fn, x, y, u, flip: bool) -> bool:
    lhs = fn(x * y, u)
    rhs = QScalar.from_int(0)
    for (m1, m2), c in coproduct(u).terms.items():
        a = AlgebraElement(u.pres, {m1: ONE})
        b = AlgebraElement(u.pres, {m2: ONE})
        rhs = rhs + (c * fn(x, b) * fn(y, a) if flip else c * fn(x, a) * fn(y, b))
    return lhs == rhs


# --- recursive evaluation (independent of the closed form beyond generators) ---


def recursive_pair(kind: str, x: AlgebraElement, y: AlgebraElement) -> QScalar:
    """Evaluate the pairing by peeling one generator at a time through the
    resolved Hopf-pairing identities; only the section-2.3 generator values
    enter as base cases."""
    _check_drt_operands(kind, x, y)
    rec = resolve_pairing_convention(
        x.pres.datum if kind == "drt_pi" else x.pres.datum
    )
    total = QScalar.from_int(0)
    for m, c in x.terms.items():
        atoms = _monomial_atoms(x.pres, m, kind)
        total = total + c * _rec_atoms(kind, x.pres, atoms, y, rec)
    return total


def _monomial_atoms(pres, m: PBWMonomial, kind: str):
    """Atom list of a one-sided monomial in its stored order."""
    atoms = []
    if kind == "drt_pibar":
        for r in range(pres.N - 1, -1, -1):
            atoms += [("E", r)] * m.e[r]
        if any(m.mu):
            atoms.append(("L", m.mu))
    else:
        if any(m.mu):
            atoms.append(("L", m.mu))
        for r in range(pres.N):
            atoms += [("F", r)] * m.f[r]
    return atoms


def _rec_atoms(kind, pres, atoms, y: AlgebraElement, rec) -> QScalar:
    if not atoms:
        return counit(y)
    if len(atoms) == 1:
        return _atom_value(kind, pres, atoms[0], y, rec)
    flip_first, _ = rec.orientation(kind)
    head, rest = atoms[0], atoms[1:]
    total = QScalar.from_int(0)
    for (u1, u2), c in coproduct(y).terms.items():
        a = AlgebraElement(y.pres, {u1: ONE})
        b = AlgebraElement(y.pres, {u2: ONE})
        first_arg, rest_arg = (b, a) if flip_first else (a, b)
        va = _atom_value(kind, pres, head, first_arg, rec)
        if va.is_zero():
            continue
        total = total + c * va * _rec_atoms(kind, pres, rest, rest_arg, rec)
    return total


def _atom_value(kind, pres, atom, y: AlgebraElement, rec) -> QScalar:
    """Value of a single atom (root-vector letter or toral) against y."""
    datum = pres.datum
    dy = y.pres.datum
    total = QScalar.from_int(0)
    if atom[0] == "L":
        mu_w = datum.weight_of_mu(atom[1])
        for my, cy in y.terms.items():
            if any(my.e) or any(my.f):
                continue  # graded orthogonality: characters kill E/F terms
            nu_w = dy.weight_of_mu(my.mu)
            if kind == "drt_pi":
                val = QScalar.q_power(_int_exp(-datum.bilinear(datum.apply_r(mu_w), nu_w)))
            else:
                val = QScalar.q_power(_int_exp(datum.bilinear(datum.apply_rbar(mu_w), nu_w)))
            total = total + cy * val
        return total
    r = atom[1]
    dec = root_vector_decomposition(datum, r)
    if dec is not None:
        # expand the bracket X_r = X_a X_b - q^((a|b)) X_b X_a on the x side
        a, b = dec
        excl = _int_exp(
            datum.bilinear(datum.root_data.positive_roots[a], datum.root_data.positive_roots[b])
        )
        tag = atom[0]
        return _rec_atoms(kind, pres, [(tag, a), (tag, b)], y, rec) - QScalar.q_power(
            excl
        ) * _rec_atoms(kind, pres, [(tag, b), (tag, a)], y, rec)
    i = datum.root_data.roots_alpha[r].index(1)
    for my, cy in y.terms.items():
        opp_exps = my.e if kind == "drt_pi" else my.f
        own_exps = my.f if kind == "drt_pi" else my.e
        if sum(own_exps) != 0 or sum(opp_exps) != 1:
            continue
        s = next(k for k in range(y.pres.N) if opp_exps[k])
        val = _letter_vs_letter(kind, pres, i, y.pres, s, my.mu, rec)
        total = total + cy * val
    return total


def _generator_value(kind, datum, i) -> QScalar:
    """The section-2.3 generator values <F_i, E_i> resp. <E_i, F_i>."""
    di = datum.d[i]
    tau = datum.tau[i]
    if kind == "drt_pi":
        return QScalar.q_power(_int_exp(-datum.bilinear(datum.apply_r(tau), tau))) * (
            QScalar.q_power(-di) - QScalar.q_power(di)
        ).inv()
    return QScalar.q_power(_int_exp(datum.bilinear(datum.apply_rbar(tau), tau))) * (
        QScalar.q_power(di) - QScalar.q_power(-di)
    ).inv()


def _toral_char(kind, datum, w, nu_w) -> QScalar:
    if kind == "drt_pi":
        return QScalar.q_power(_int_exp(-datum.bilinear(datum.apply_r(w), nu_w)))
    return QScalar.q_power(_int_exp(datum.bilinear(datum.apply_rbar(w), nu_w)))


def _letter_vs_letter(kind, pres, i, ypres, s, nu, rec) -> QScalar:
    """<single letter of simple index i, (opposite root vector s) * toral nu>
    in the stored order of y's presentation."""
    datum = pres.datum
    dy = ypres.datum
    dec = root_vector_decomposition(dy, s)
    if dec is not None:
        # split y's root vector through its bracket; heights strictly drop
        a, b = dec
        excl = _int_exp(
            dy.bilinear(dy.root_data.positive_roots[a], dy.root_data.positive_roots[b])
        )
        side = +1 if kind == "drt_pi" else -1
        va = AlgebraElement.root_vector(ypres, side, a)
        vb = AlgebraElement.root_vector(ypres, side, b)
        lnu = AlgebraElement.toral(ypres, nu)
        first = _letter_vs_product(kind, pres, i, va, vb * lnu, rec)
        second = _letter_vs_product(kind, pres, i, vb, va * lnu, rec)
        return first - QScalar.q_power(excl) * second
    j = dy.root_data.roots_alpha[s].index(1)
    if j != i:
        return QScalar.from_int(0)
    # base case: <F_i, E_i L_nu> resp. <E_i, L_nu F_i> via the second-slot
    # identity, which leaves one generator value times one toral character
    _, flip_second = rec.orientation(kind)
    nu_w = dy.weight_of_mu(nu)
    tau = datum.tau[i]
    alpha = datum.simple_roots[i]
    if kind == "drt_pi":
        w = tau if flip_second else vec_scale(vec_add(alpha, tau), -1)
    else:
        w = tau if flip_second else vec_sub(alpha, tau)
    return _generator_value(kind, datum, i) * _toral_char(kind, datum, w, nu_w)


def _letter_vs_product(kind, pres, i, u: AlgebraElement, v: AlgebraElement, rec) -> QScalar:
    """<x_i, u*v> for the simple letter of index i via the second-slot
    identity; the coproduct components of a simple letter are one generator
    letter and one toral, so each summand is a product of an _atom_value call
    on a strictly smaller argument and a toral character."""
    datum = pres.datum
    _, flip_second = rec.orientation(kind)
    tau = datum.tau[i]
    alpha = datum.simple_roots[i]
    letter_tag = "F" if kind == "drt_pi" else "E"
    letter_atom = (letter_tag, _simple_idx(pres, i))
    if kind == "drt_pi":
        comps = [
            ("gen", vec_scale(vec_add(alpha, tau), -1)),  # F_i (x) L_(-a-t)
            (tau, "gen"),  # L_t (x) F_i
        ]
    else:
        comps = [("gen", tau), (vec_sub(alpha, tau), "gen")]  # E (x) L_t + L_(a-t) (x) E

    def comp_value(comp, arg: AlgebraElement) -> QScalar:
        if comp == "gen":
            return _atom_value(kind, pres, letter_atom, arg, rec)
        total = QScalar.from_int(0)
        dy = arg.pres.datum
        for my, cy in arg.terms.items():
            if any(my.e) or any(my.f):
                continue
            total = total + cy * _toral_char(kind, datum, comp, dy.weight_of_mu(my.mu))
        return total

    total = QScalar.from_int(0)
    for c1, c2 in comps:
        if flip_second:
            v1 = comp_value(c1, v)
            v2 = comp_value(c2, u) if not v1.is_zero() else v1
        else:
            v1 = comp_value(c1, u)
            v2 = comp_value(c2, v) if not v1.is_zero() else v1
        if not v1.is_zero():
            total = total + v1 * v2
    return total


def _simple_idx(pres, i):
    from .pbw import simple_root_index

    return simple_root_index(pres.datum, i)


# --- the quantum Poisson pairing ------------------------------------------------


def _mod_norm_fdesc(datum: CartanDatum, exps) -> int:
    """c with (modified F-monomial, descending) = q^c (plain desc) L_tau."""
    letters = []
    for r in range(len(exps) - 1, -1, -1):
        letters += [r] * exps[r]
    roots = datum.root_data.positive_roots
    taus = datum.tau_alpha
    c = Fraction(0)
    for i in range(len(letters)):
        for j in range(i + 1, len(letters)):
            c -= datum.bilinear(roots[letters[j]], taus[letters[i]])
    return _int_exp(c)


def _mod_norm_easc(datum: CartanDatum, exps) -> int:
    """c with (modified E-monomial, ascending) = q^c L_tau (plain asc)."""
    letters = []
    for r in range(len(exps)):
        letters += [r] * exps[r]
    roots = datum.root_data.positive_roots
    taus = datum.tau_alpha
    c = Fraction(0)
    for i in range(len(letters)):
        for j in range(i + 1, len(letters)):
            c -= datum.bilinear(roots[letters[i]], taus[letters[j]])
    return _int_exp(c)


def _tau_of(datum: CartanDatum, exps):
    out = tuple(Fraction(0) for _ in range(datum.n))
    for r, m in enumerate(exps):
        if m:
            out = vec_add(out, vec_scale(datum.tau_alpha[r], m))
    return out


def _word_of(pres, exps, side, order):
    seq = range(pres.N - 1, -1, -1) if order == "desc" else range(pres.N)
    word = []
    for r in seq:
        word += [side * (r + 1)] * exps[r]
    return tuple(word)


def h_eval_coords(h: AlgebraElement) -> dict:
    """Coordinates of a dual_h element over the evaluation basis
    F^phi-descending * L^phi_mu * E^phi-ascending."""
    pres = h.pres
    if pres.kind != "dual_h":
        raise PresentationMismatch("expected a dual_h element")
    cache = pres._tables.setdefault("h_eval_cache", {})
    key = tuple(sorted(h.terms.items()))
    if key in cache:
        return cache[key]
    out: dict = {}
    for m, c in h.terms.items():
        # stored: E-desc(e) * L_mu * F-asc(f); E and F letters commute in H
        x = sum(m.f[r] * pres.comm_exponent_root(-(r + 1), m.mu) for r in range(pres.N))
        y = sum(m.e[r] * pres.comm_exponent_root(r + 1, m.mu) for r in range(pres.N))
        base = c * QScalar.q_power(x - y)
        fdesc = _reorder_pure(pres, _word_of(pres, m.f, -1, "asc"), -1, "desc")
        easc = _reorder_pure(pres, _word_of(pres, m.e, +1, "desc"), +1, "asc")
        for fe, cf in fdesc.items():
            for ee, ce in easc.items():
                _add_term(out, (fe, m.mu, ee), base * cf * ce)
    cache[key] = out
    return out


def eval_h_monomial(datum: CartanDatum, fdesc, mu_w, easc, g: AlgebraElement) -> QScalar:
    """Value of F^phi(fdesc) L^phi_mu E^phi(easc) (modified vectors, mu given
    as a weight vector) on an element g of the quotient algebra over M':
    the F part and toral pair via pi against g's E*L part, the E part via
    pibar against g's F part (both pibar slots are naturally ascending)."""
    dg = g.pres.datum
    c1 = _mod_norm_fdesc(datum, fdesc)
    c2 = _mod_norm_easc(datum, easc)
    mu1 = vec_sub(_tau_of(datum, fdesc), vec_add(mu_w, datum.apply_phi(mu_w)))
    mu2 = vec_add(vec_sub(mu_w, datum.apply_phi(mu_w)), _tau_of(datum, easc))
    zero_w = tuple(Fraction(0) for _ in range(datum.n))
    total = QScalar.from_int(0)
    for mg, cg in g.terms.items():
        lam_w = dg.weight_of_mu(mg.mu)
        first = closed_pi(datum, fdesc, mu1, mg.e, lam_w)
        if first.is_zero():
            continue
        second = closed_pibar(datum, easc, mu2, mg.f, zero_w)
        if not second.is_zero():
            total = total + cg * first * second * QScalar.q_power(c1 + c2)
    return total


def quantum_poisson_pair(h: AlgebraElement, g: AlgebraElement, extend: bool = False) -> QScalar:
    """Perfect Hopf pairing of the dual-side algebra over M against the
    quotient algebra over M', through the embedding into the double's dual:
    the F part and toral first slot pair via pi, the E part via pibar.

    extend=True admits g over any lattice of the same Cartan data, with toral
    arguments taken verbatim as weights (the section-7.13 extension; values
    may then live in k(q^(1/D)))."""
    if h.pres.kind != "dual_h" or g.pres.kind != "full":
        raise PresentationMismatch("quantum_poisson_pair takes (dual_h over M, full over M')")
    datum = h.pres.datum
    if not extend and g.pres.datum != datum.dual():
        raise PresentationMismatch("operand lattices are not dual")
    if extend and (g.pres.datum.type != datum.type or g.pres.datum.phi != datum.phi):
        raise PresentationMismatch("extension requires matching Cartan data")
    total = QScalar.from_int(0)
    for (fdesc, mu, easc), ch in h_eval_coords(h).items():
        mu_w = datum.weight_of_mu(mu)
        total = total + ch * eval_h_monomial(datum, fdesc, mu_w, easc, g)
    return total


def scaled_poisson_pair(kind: str, h: AlgebraElement, g: AlgebraElement) -> QScalar:
    """The (q-1)-scaled pairings.

    UU: h in the dual-side restricted form over Q, g in the restricted form
    of the quotient algebra over the root lattice (its toral binomials are
    the K_i-based ones); g's filtration degree drives (q-1)^(+deg) and the
    value lies in the (q-1)-localization.  FF: the DKP grading drives
    (q-1)^(-deg), with the toral pairing extended verbatim to the weight
    lattice (fractional q-powers are refused per the stated policy).
    Mixed filtration degrees are rejected: they would change the q -> 1
    limit term by term."""
    from .forms import filtration_degrees

    if kind not in ("scaled_poisson_UU", "scaled_poisson_FF"):
        raise PresentationMismatch(f"unknown scaled pairing {kind}")
    form = "restricted" if kind == "scaled_poisson_UU" else "dkp"
    degs = filtration_degrees(g, form)
    if len(degs) > 1:
        raise NotInForm(f"mixed filtration degrees {sorted(degs)}: scaled pairing undefined")
    deg = degs.pop() if degs else 0
    base = quantum_poisson_pair(h, g, extend=True)
    qm1 = QScalar.q_power(1) - QScalar.from_int(1)
    if kind == "scaled_poisson_UU":
        return base * qm1**deg
    out = base * (qm1.inv()) ** deg
    if any(not isinstance(e, int) for e in list(out.num.terms) + list(out.den.terms)):
        raise NotInForm("FF-scaled pairing value needs q^(1/D): unsupported")
    return out
