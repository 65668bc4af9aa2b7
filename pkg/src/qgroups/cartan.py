"""Cartan data for the built-in types A1, A2, B2: lattices between Q and P,
dual lattices, the bilinear forms, the antisymmetric twist phi with its
validity conditions, and positive roots in a convex order."""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from .errors import InvalidCartan, InvalidLattice, InvalidPhi, NotReduced

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

CARTAN_TABLE = {
    "A1": (((2,),), (1,), (1,)),
    "A2": (((2, -1), (-1, 2)), (1, 1), (1, 2, 1)),
    "B2": (((2, -1), (-2, 2)), (2, 1), (1, 2, 1, 2)),
}


def _frac_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(Fraction(c) * x for x in row) for row in a)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_inv(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Vector, c) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def zero_vector(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def _is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


class RootSystemData:
    """Positive roots in the convex order induced by the reduced word."""

    __slots__ = ("positive_roots", "roots_alpha", "convex_order", "d_alpha")

    def __init__(self, positive_roots, roots_alpha, d_alpha):
        self.positive_roots = positive_roots  # omega coordinates, convex order
        self.roots_alpha = roots_alpha  # alpha coordinates (integer tuples)
        self.convex_order = tuple(range(len(positive_roots)))
        self.d_alpha = d_alpha


class CartanDatum:
    """Immutable Cartan datum; all weights live in omega coordinates."""

    def __init__(self, type_: str, A, d, lattice_m: Matrix, phi: Matrix, reduced_word):
        self.type = type_
        self.n = len(A)
        self.A = tuple(tuple(int(x) for x in row) for row in A)
        self.d = tuple(int(x) for x in d)
        self.lattice_m = lattice_m  # columns = mu_i in omega coordinates
        self.phi = phi  # omega coordinates
        self.reduced_word = tuple(int(i) for i in reduced_word)
        self._cache: dict = {}

        n = self.n
        a_inv = mat_inv(_frac_matrix(self.A))
        self.a_inv = a_inv
        # Gram of ( | ) in omega coordinates: A^T G = diag(d).
        self.gram = mat_mul(mat_transpose(a_inv), tuple(
            tuple(Fraction(self.d[i] if i == j else 0) for j in range(n)) for i in range(n)
        ))
        self.simple_roots = tuple(
            tuple(Fraction(self.A[i][j]) for i in range(n)) for j in range(n)
        )
        ident = identity(n)
        # antisymmetry first: it guarantees id +- phi are invertible
        lhs = mat_mul(mat_transpose(phi), self.gram)
        if lhs != mat_scale(mat_mul(self.gram, phi), -1):
            raise InvalidPhi("phi is not antisymmetric for ( | )")
        try:
            self.r_mat = mat_inv(mat_add(ident, phi))
            self.rbar_mat = mat_inv(mat_add(ident, mat_scale(phi, -1)))
        except ZeroDivisionError as exc:
            raise InvalidPhi("id +- phi is not invertible") from exc
        self.tau = tuple(vec_scale(mat_vec(phi, alpha), Fraction(1, 2)) for alpha in self.simple_roots)
        self._lattice_m_inv = mat_inv(_frac_matrix(lattice_m))
        self.root_data = self._build_roots()
        self.tau_alpha = tuple(
            vec_scale(mat_vec(phi, beta), Fraction(1, 2)) for beta in self.root_data.positive_roots
        )
        self.dual_basis = self._dual_lattice_basis()
        self._validate()

    # -- forms ------------------------------------------------------------

    def bilinear(self, x: Vector, y: Vector) -> Fraction:
        """The symmetric form ( | ) on QP, omega coordinates."""
        gy = mat_vec(self.gram, y)
        return sum(a * b for a, b in zip(x, gy))

    def bracket(self, x: Vector, y: Vector) -> Fraction:
        """The pairing < | > normalized by <alpha_i | omega_j> = delta_ij."""
        ay = mat_vec(mat_transpose(self.a_inv), y)
        return sum(a * b for a, b in zip(x, ay))

    def apply_phi(self, v: Vector) -> Vector:
        return mat_vec(self.phi, v)

    def apply_r(self, v: Vector) -> Vector:
        return mat_vec(self.r_mat, v)

    def apply_rbar(self, v: Vector) -> Vector:
        return mat_vec(self.rbar_mat, v)

    # -- lattices -----------------------------------------------------------

    def alpha_coords(self, v: Vector) -> Vector:
        return mat_vec(self.a_inv, v)

    def from_alpha_coords(self, c) -> Vector:
        n = self.n
        return tuple(
            sum(Fraction(c[j]) * self.simple_roots[j][i] for j in range(n)) for i in range(n)
        )

    def mu_coords(self, v: Vector) -> tuple[int, ...]:
        """Integer coordinates in the mu-basis of M; InvalidLattice if v is not in M."""
        c = mat_vec(self._lattice_m_inv, v)
        if not _is_integral(c):
            raise InvalidLattice(f"weight {v} not in lattice M")
        return tuple(int(x) for x in c)

    def weight_of_mu(self, coords) -> Vector:
        n = self.n
        return tuple(
            sum(Fraction(int(coords[j])) * self.lattice_m[i][j] for j in range(n)) for i in range(n)
        )

    def in_lattice_m(self, v: Vector) -> bool:
        return _is_integral(mat_vec(self._lattice_m_inv, v))

    def in_root_lattice(self, v: Vector) -> bool:
        return _is_integral(self.alpha_coords(v))

    def dual(self) -> CartanDatum:
        key = "dual_datum"
        if key not in self._cache:
            self._cache[key] = CartanDatum(
                self.type, self.A, self.d, self.dual_basis, self.phi, self.reduced_word
            )
            self._cache[key]._cache[key] = self
        return self._cache[key]

    def _dual_lattice_basis(self) -> Matrix:
        """Columns = nu_j in omega coordinates.

        Simply laced: the ( | )-dual basis of the mu-basis.  For B2 only
        M in {P, Q} is allowed and the dual is the other member of the pair,
        with the alpha/omega bases paired by (alpha_i | omega_j) = d_i delta_ij.
        """
        n = self.n
        if all(di == 1 for di in self.d):
            u_t_b = mat_mul(mat_transpose(self.lattice_m), self.gram)
            return mat_inv(u_t_b)
        ident = identity(n)
        alpha_cols = tuple(tuple(Fraction(self.A[i][j]) for j in range(n)) for i in range(n))
        if self.lattice_m == ident:
            return alpha_cols
        if self.lattice_m == alpha_cols:
            return ident
        raise InvalidLattice("non-simply-laced types support only M in {P, Q}")

    # -- roots -------------------------------------------------------------

    def _build_roots(self) -> RootSystemData:
        n = self.n
        word = self.reduced_word
        num_pos = {"A1": 1, "A2": 3, "B2": 4}[self.type]
        if len(word) != num_pos:
            raise NotReduced(
                f"reduced word must have length {num_pos} for {self.type}, got {len(word)}"
            )

        def reflect(i: int, v: Vector) -> Vector:
            # s_i acts on omega coordinates by subtracting the i-th coordinate
            # times alpha_i (since <alpha_i | omega_j> = delta_ij).
            return vec_sub(v, vec_scale(self.simple_roots[i], v[i]))

        roots = []
        for k, ik in enumerate(word):
            if not 1 <= ik <= n:
                raise NotReduced(f"reflection index {ik} out of range")
            beta = self.simple_roots[ik - 1]
            for j in range(k - 1, -1, -1):
                beta = reflect(word[j] - 1, beta)
            roots.append(beta)
        alpha_list = [self.alpha_coords(b) for b in roots]
        if any(not _is_integral(c) or any(x < 0 for x in c) for c in alpha_list):
            raise NotReduced("word is not reduced: produced a non-positive root")
        if len(set(roots)) != len(roots):
            raise NotReduced("word is not reduced: repeated root")
        d_alpha = tuple(self.bilinear(b, b) / 2 for b in roots)
        if any(x.denominator != 1 for x in d_alpha):
            raise InvalidCartan("non-integral d_alpha")
        data = RootSystemData(
            tuple(roots),
            tuple(tuple(int(x) for x in c) for c in alpha_list),
            tuple(int(x) for x in d_alpha),
        )
        self._check_convexity(data)
        return data

    def _check_convexity(self, data: RootSystemData) -> None:
        roots = data.positive_roots
        index = {r: i for i, r in enumerate(roots)}
        for i, a in enumerate(roots):
            for j, b in enumerate(roots):
                if i >= j:
                    continue
                s = vec_add(a, b)
                if s in index and not (i < index[s] < j):
                    raise NotReduced("ordering from reduced word is not convex")

    # -- validation ----------------------------------------------------------

    def _validate(self) -> None:
        n, A, d = self.n, self.A, self.d
        for i in range(n):
            if A[i][i] != 2:
                raise InvalidCartan("diagonal entries must equal 2")
            for j in range(n):
                if i != j and A[i][j] > 0:
                    raise InvalidCartan("off-diagonal entries must be <= 0")
                if d[i] * A[i][j] != d[j] * A[j][i]:
                    raise InvalidCartan("d does not symmetrize A")
        if gcd(*d) != 1:
            raise InvalidCartan("gcd of symmetrizers must be 1")
        sym = [[Fraction(d[i] * A[i][j]) for j in range(n)] for i in range(n)]
        # positive definiteness via leading principal minors
        for k in range(1, n + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                raise InvalidCartan("symmetrized matrix is not positive definite")

        for row in self.lattice_m:
            if not _is_integral(row):
                raise InvalidLattice("M must lie inside P (integral omega coordinates)")
        for alpha in self.simple_roots:
            if not self.in_lattice_m(alpha):
                raise InvalidLattice("Q must lie inside M")

        phi, gram = self.phi, self.gram
        lhs = mat_mul(mat_transpose(phi), gram)
        rhs = mat_scale(mat_mul(gram, phi), -1)
        if lhs != rhs:
            raise InvalidPhi("phi is not antisymmetric for ( | )")
        for alpha in self.simple_roots:
            if not self.in_root_lattice(self.apply_phi(alpha)):
                raise InvalidPhi("phi(Q) is not contained in Q")
        omegas = identity(self.n)
        for i in range(n):
            for j in range(n):
                val = self.bilinear(self.apply_phi(omegas[i]), omegas[j]) / 2
                if val.denominator != 1:
                    raise InvalidPhi("(1/2)(phi(P) | P) is not integral")
        y = mat_transpose(tuple(self.alpha_coords(t) for t in self.tau))
        a_frac = _frac_matrix(self.A)
        twice_aya = mat_scale(mat_mul(mat_mul(a_frac, y), self.a_inv), 2)
        if not all(_is_integral(row) for row in twice_aya):
            raise InvalidPhi("2 A Y A^-1 is not an integer matrix")
        for i, t in enumerate(self.tau):
            if not self.in_lattice_m(t):
                raise InvalidPhi(f"tau_{i + 1} does not lie in M")
        self.tau_in_root_lattice = all(self.in_root_lattice(t) for t in self.tau)

    # -- misc ---------------------------------------------------------------

    def key(self) -> tuple:
        return (self.type, self.lattice_m, self.phi, self.reduced_word)

    def __eq__(self, other):
        return isinstance(other, CartanDatum) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CartanDatum({self.type}, M={self.lattice_m}, phi={'0' if all(all(x == 0 for x in r) for r in self.phi) else self.phi})"

    def describe_lattice(self) -> str:
        if self.lattice_m == identity(self.n):
            return "P"
        if self.lattice_m == tuple(
            tuple(Fraction(self.A[i][j]) for j in range(self.n)) for i in range(self.n)
        ):
            return "Q"
        return "custom"


def _det(rows) -> Fraction:
    rows = [list(r) for r in rows]
    n = len(rows)
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            out = -out
        out *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return out


_DATUM_REGISTRY: dict = {}


def build_cartan(type_: str, lattice="Q", phi=None, reduced_word=None) -> CartanDatum:
    """Construct and validate a datum for one of the built-in types.

    lattice: "P", "Q", or a matrix whose columns are the basis of M in
    omega coordinates.  phi: matrix in omega coordinates, or None for 0.
    Equal data share one instance (their derived caches are expensive).
    """
    if type_ not in CARTAN_TABLE:
        raise InvalidCartan(f"unknown type {type_!r}; built-ins are A1, A2, B2")
    A, d, default_word = CARTAN_TABLE[type_]
    n = len(A)
    if isinstance(lattice, str):
        if lattice == "P":
            lattice_m = identity(n)
        elif lattice == "Q":
            lattice_m = tuple(tuple(Fraction(A[i][j]) for j in range(n)) for i in range(n))
        else:
            raise InvalidLattice(f"unknown lattice name {lattice!r}")
    else:
        lattice_m = _frac_matrix(lattice)
    if phi is None or phi == 0:
        phi_m = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    else:
        phi_m = _frac_matrix(phi)
    word = tuple(reduced_word) if reduced_word is not None else default_word
    datum = CartanDatum(type_, A, d, lattice_m, phi_m, word)
    return _DATUM_REGISTRY.setdefault(datum.key(), datum)


def standard_twist(type_: str) -> Matrix:
    """A valid nonzero twist (omega coordinates) for the given type."""
    if type_ == "A2":
        return _frac_matrix(((2, 4), (-4, -2)))
    if type_ == "B2":
        return _frac_matrix(((2, 2), (-4, -2)))
    raise InvalidPhi(f"no nonzero twist available for {type_} (rank 1 forces phi = 0)")


def positive_roots_with_convex_order(datum: CartanDatum) -> RootSystemData:
    return datum.root_data


def datum_from_config(config) -> CartanDatum:
    """Build from the JSON config schema {type, lattice, phi, reduced_word}."""
    if isinstance(config, (str, bytes)):
        config = json.loads(config)
    type_ = config["type"]
    lattice = config.get("lattice", "Q")
    if isinstance(lattice, list):
        lattice = [[Fraction(x) for x in row] for row in lattice]
    phi = config.get("phi")
    if isinstance(phi, list):
        n = len(CARTAN_TABLE[type_][0])
        flat = [Fraction(x) for x in phi]
        phi = [flat[i * n : (i + 1) * n] for i in range(n)]
    elif phi in (None, 0, "0"):
        phi = None
    word = config.get("reduced_word")
    return build_cartan(type_, lattice, phi, word)
