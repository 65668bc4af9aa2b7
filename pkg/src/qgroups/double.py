"""The quantum double D(U<=(Q), U>=(M), pi) beyond the shared straightening
kernel: the projection onto the quotient algebra and the independent check
that the abstract cross relation reduces to the implemented one."""

from __future__ import annotations

from .cartan import CartanDatum
from .errors import CrossRelationFailure, PresentationMismatch
from .hopf import coproduct
from .pbw import ONE, AlgebraElement, PBWMonomial, _add_term, presentation
from .pair import drt_pair
from .qcoeff import QScalar


def project_to_quotient(x: AlgebraElement) -> AlgebraElement:
    """pr_M: substitute K_alpha -> L_alpha and renormalize."""
    if x.pres.kind != "double":
        raise PresentationMismatch("project_to_quotient takes a double element")
    datum = x.pres.datum
    full = presentation(datum, "full")
    out: dict = {}
    for m, c in x.terms.items():
        if any(m.kappa):
            weight = datum.from_alpha_coords(m.kappa)
            kappa_mu = datum.mu_coords(weight)
            mu = tuple(a + b for a, b in zip(m.mu, kappa_mu))
        else:
            mu = m.mu
        _add_term(out, PBWMonomial(m.e, mu, (0,) * datum.n, m.f), c)
    return AlgebraElement(full, out)


def embed_positive(x: AlgebraElement, double_pres) -> AlgebraElement:
    """U>=(M) -> D as E_i and L_mu."""
    out: dict = {}
    n = double_pres.n
    for m, c in x.terms.items():
        if any(m.f):
            raise PresentationMismatch("positive Borel element expected")
        out[PBWMonomial(m.e, m.mu, (0,) * n, m.f)] = c
    return AlgebraElement(double_pres, out)


def embed_negative(y: AlgebraElement, double_pres) -> AlgebraElement:
    """U<=(Q) -> D as F_i and K_alpha (the Q-side mu-basis is the alpha basis)."""
    out: dict = {}
    n = double_pres.n
    for m, c in y.terms.items():
        if any(m.e):
            raise PresentationMismatch("negative Borel element expected")
        out[PBWMonomial(m.e, (0,) * n, m.mu, m.f)] = c
    return AlgebraElement(double_pres, out)


def _borel_q(datum: CartanDatum):
    from .cartan import build_cartan

    return build_cartan(datum.type, "Q", datum.phi, datum.reduced_word)


def _to_lattice_p(x: AlgebraElement) -> AlgebraElement:
    """Rewrite a positive-Borel element over M as one over P (M <= P)."""
    from .cartan import build_cartan

    datum = x.pres.datum
    datum_p = build_cartan(datum.type, "P", datum.phi, datum.reduced_word)
    pres_p = presentation(datum_p, "borel_plus")
    out: dict = {}
    for m, c in x.terms.items():
        w = datum.weight_of_mu(m.mu)
        mu_p = datum_p.mu_coords(w)
        out[PBWMonomial(m.e, mu_p, m.kappa, m.f)] = c
    return AlgebraElement(pres_p, out)


def verify_cross_relation(datum: CartanDatum, bound: int = 2) -> dict:
    """Recompute the double's defining cross relation from the abstract form
    sum pi(y(2), x(2)) x(1) y(1) = sum pi(y(1), x(1)) y(2) x(2) on generator
    pairs and degree-<= bound products; every product is straightened by the
    engine, every pairing evaluated by the closed form.  All four coproduct
    orientations are explored and the holding ones reported; failure of the
    adopted plain/plain orientation raises CrossRelationFailure."""
    if bound > 2:
        raise PresentationMismatch("cross-relation check is desk scale: bound <= 2")
    dq = _borel_q(datum)
    pres_plus = presentation(datum, "borel_plus")
    pres_minus = presentation(dq, "borel_minus")
    dpres = presentation(datum, "double")
    n = datum.n
    xs = [AlgebraElement.generator_e(pres_plus, i) for i in range(n)]
    xs.append(AlgebraElement.one(pres_plus))
    xs.append(AlgebraElement.toral(pres_plus, tuple(1 if t == 0 else 0 for t in range(n))))
    ys = [AlgebraElement.generator_f(pres_minus, i) for i in range(n)]
    ys.append(AlgebraElement.one(pres_minus))
    ys.append(AlgebraElement.toral(pres_minus, tuple(1 if t == 0 else 0 for t in range(n))))
    if bound >= 2:
        xs.append(xs[0] * xs[0])
        ys.append(ys[0] * ys[0])
        if n > 1:
            xs.append(xs[0] * xs[1])
            ys.append(ys[1] * ys[0])

    def sides(x, y, op_x, op_y):
        dx = coproduct(x)
        dy = coproduct(y)
        if op_x:
            dx = dx.flip()
        if op_y:
            dy = dy.flip()
        lhs = AlgebraElement.zero(dpres)
        rhs = AlgebraElement.zero(dpres)
        for (x1, x2), cx in dx.terms.items():
            x1e = AlgebraElement(pres_plus, {x1: ONE})
            x2e = AlgebraElement(pres_plus, {x2: ONE})
            for (y1, y2), cy in dy.terms.items():
                y1e = AlgebraElement(pres_minus, {y1: ONE})
                y2e = AlgebraElement(pres_minus, {y2: ONE})
                c = cx * cy
                v2 = drt_pair("drt_pi", y2e, _to_lattice_p(x2e))
                if not v2.is_zero():
                    lhs = lhs + (c * v2) * (
                        embed_positive(x1e, dpres) * embed_negative(y1e, dpres)
                    )
                v1 = drt_pair("drt_pi", y1e, _to_lattice_p(x1e))
                if not v1.is_zero():
                    rhs = rhs + (c * v1) * (
                        embed_negative(y2e, dpres) * embed_positive(x2e, dpres)
                    )
        return lhs, rhs

    holding = []
    witness = None
    for op_x in (False, True):
        for op_y in (False, True):
            ok = True
            for x in xs:
                for y in ys:
                    lhs, rhs = sides(x, y, op_x, op_y)
                    if lhs != rhs:
                        ok = False
                        if not op_x and not op_y and witness is None:
                            witness = (repr(x), repr(y), repr(lhs - rhs))
                        break
                if not ok:
                    break
            if ok:
                holding.append({"op_x": op_x, "op_y": op_y})
    report = {"holding_orientations": holding, "passed": bool(holding), "witness": witness}
    if {"op_x": False, "op_y": False} not in holding:
        raise CrossRelationFailure(str(report))
    return report
