"""The algebra A_F(G, T, eta) on basis T, stored as sparse structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import FieldSpec, Subspace, format_scalar, good_characteristic, parse_scalar
from .transposition import TranspositionSystem, dihedral_set, validate_system


class AlgebraError(ValueError):
    pass


class ClosureCapExceeded(RuntimeError):
    def __init__(self, basis, cap):
        super().__init__(f"closure not closed: dimension reached cap {cap}")
        self.basis = basis
        self.cap = cap


@dataclass(frozen=True)
class GMAlgebra:
    sys: TranspositionSystem
    field: FieldSpec
    eta: object
    # products[i][j] = ((k, coeff), ...) expansion of e_i * e_j
    products: tuple
    # per-algebra memo for decompositions and splits; not part of identity
    cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return self.sys.n

    @property
    def p(self) -> int:
        return self.sys.p

    def basis_vector(self, i: int):
        v = [self.field.zero] * self.n
        v[i] = self.field.one
        return v

    def zero(self):
        return [self.field.zero] * self.n

    def to_json(self) -> dict:
        return {"field": str(self.field), "eta": format_scalar(self.eta), "system": self.sys.to_json()}

    def abstract_json(self) -> dict:
        """Group-free form: only dimension and structure constants."""
        prods = [
            [i, j, [[k, format_scalar(c)] for k, c in self.products[i][j]]]
            for i in range(self.n)
            for j in range(self.n)
        ]
        return {
            "field": str(self.field),
            "eta": format_scalar(self.eta),
            "p": self.p,
            "dim": self.n,
            "labels": list(self.sys.labels),
            "products": prods,
        }


def build(sys: TranspositionSystem, field: FieldSpec, eta, force: bool = False) -> GMAlgebra:
    eta = field(eta)
    if eta == 0 or eta == 1:
        raise AlgebraError("eta must avoid 0 and 1")
    if not force and not good_characteristic(sys.p, eta):
        raise AlgebraError(f"{field} is not of good characteristic for p={sys.p}, eta={format_scalar(eta)}")
    one = field.one
    n = sys.n
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(((i, one),))
                continue
            # e_i * e_j = e_j^{e_i} + eta * (rest of I(i, j))
            top = sys.conj[j][i]
            support = sorted(dihedral_set(sys, i, j))
            row.append(tuple((k, one if k == top else eta) for k in support))
        table.append(tuple(row))
    return GMAlgebra(sys, field, eta, tuple(table))


def load_algebra(obj: dict) -> GMAlgebra:
    field = FieldSpec.parse(obj["field"])
    sys = TranspositionSystem.from_json(obj["system"])
    rep = validate_system(sys)
    if not rep.ok:
        raise AlgebraError(f"invalid system: {rep.failures[:3]}")
    return build(sys, field, parse_scalar(obj["eta"], field), force=bool(obj.get("force", False)))


def multiply(A: GMAlgebra, x, y):
    out = A.zero()
    nz_y = [(j, yj) for j, yj in enumerate(y) if yj]
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = A.products[i]
        for j, yj in nz_y:
            c = xi * yj
            for k, s in row[j]:
                out[k] += c * s
    return out


def mult_matrix(A: GMAlgebra, a: int, side: str = "left"):
    """Matrix of L_a or R_a with row i holding the coordinates of the image of e_i.

    This is the layout printed for Mat(L_a) in the canonical basis; the
    operator acting on column vectors is its transpose (see operator_matrix)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    M = []
    for i in range(A.n):
        prod = A.products[a][i] if side == "left" else A.products[i][a]
        row = A.zero()
        for k, c in prod:
            row[k] = c
        M.append(row)
    return M


def operator_matrix(A: GMAlgebra, a: int, side: str = "left"):
    """Column convention: M @ v gives the coordinates of L_a(v) (or R_a(v))."""
    R = mult_matrix(A, a, side)
    return [list(col) for col in zip(*R)]


def apply_perm(v, perm):
    """Coordinates of sum v_b e_{perm[b]}."""
    out = [v[0] * 0] * len(v)
    for b, x in enumerate(v):
        out[perm[b]] = x
    return out


def subalgebra_closure(A: GMAlgebra, seeds, cap: int | None = None):
    """Smallest subalgebra containing ``seeds``.

    Every round multiplies the newly added vectors against the whole current
    basis on both sides, so the result is closed under the full product."""
    cap = A.n if cap is None else cap
    S = Subspace(A.n, A.field)
    new = []
    for s in seeds:
        if not any(s):
            raise AlgebraError("seed vectors must be nonzero")
        if S.add(s):
            new.append(list(s))
    span = list(new)
    while new and S.dim < A.n:
        if S.dim > cap:
            raise ClosureCapExceeded(S.basis(), cap)
        added = []
        for u in new:
            for v in span:
                for w in (multiply(A, u, v), multiply(A, v, u)):
                    if S.add(w):
                        added.append(w)
        span.extend(added)
        new = added
    if S.dim > cap:
        raise ClosureCapExceeded(S.basis(), cap)
    return S.basis()


def right_ideal_closure(A: GMAlgebra, v):
    """Smallest subspace containing v and closed under x -> x * e_j for all j."""
    if not any(v):
        raise AlgebraError("right ideal generator must be nonzero")
    S = Subspace(A.n, A.field)
    S.add(v)
    frontier = [list(v)]
    while frontier and S.dim < A.n:
        nxt = []
        for u in frontier:
            for j in range(A.n):
                w = multiply(A, u, A.basis_vector(j))
                if S.add(w):
                    nxt.append(w)
        frontier = nxt
    return S.basis()


def gamma(A: GMAlgebra, block) -> list:
    """Sum of the basis vectors indexed by ``block``."""
    v = A.zero()
    for k in block:
        v[k] = A.field.one
    return v
