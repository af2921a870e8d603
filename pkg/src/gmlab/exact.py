"""Exact scalars over Q or a prime field, and dense exact linear algebra.

Vectors are plain lists and matrices are lists of rows.  Nothing in here
ever touches a float: eigenvalue coincidences have to be decidable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


class FieldError(ValueError):
    pass


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@total_ordering
class Mod:
    """Residue modulo an odd prime, kept in [0, q)."""

    __slots__ = ("v", "q")

    def __init__(self, v: int, q: int):
        self.v = v % q
        self.q = q

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.q != self.q:
                raise FieldError(f"mixing F_{self.q} and F_{other.q}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.q == 0:
                raise ZeroDivisionError("denominator divisible by characteristic")
            return other.numerator * pow(other.denominator, -1, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.q == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.q}")
        return Mod(self.v * pow(o, -1, self.q), self.q)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.q) / self

    def __neg__(self):
        return Mod(-self.v, self.q)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return Mod(pow(self.v, -1, self.q), self.q) ** (-k)
        return Mod(pow(self.v, k, self.q), self.q)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (Mod, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.q == 0

    def __lt__(self, other):
        # ordering on canonical residues, only used to sort output
        return self.v < (other.v if isinstance(other, Mod) else other % self.q)

    def __hash__(self):
        return hash((self.v, self.q))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.q})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``modulus`` is None, otherwise F_q for an odd prime q."""

    modulus: int | None = None

    def __post_init__(self):
        q = self.modulus
        if q is not None:
            if not is_prime(q):
                raise FieldError(f"modulus {q} is not prime")
            if q == 2:
                raise FieldError("characteristic 2 is not allowed")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text == "Q":
            return cls()
        m = re.fullmatch(r"F:(\d+)", text)
        if not m:
            raise FieldError(f"bad field spec {text!r} (want 'Q' or 'F:<q>')")
        return cls(int(m.group(1)))

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    def __str__(self):
        return "Q" if self.modulus is None else f"F:{self.modulus}"

    def __call__(self, x):
        """Coerce an int, Fraction, string or scalar into this field."""
        if isinstance(x, str):
            return parse_scalar(x, self)
        if self.modulus is None:
            if isinstance(x, Mod):
                raise FieldError("cannot coerce a prime-field residue into Q")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.q != self.modulus:
                raise FieldError(f"residue mod {x.q} is not in {self}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.modulus == 0:
                raise FieldError(f"denominator {x.denominator} vanishes in {self}")
            return Mod(x.numerator, self.modulus) / x.denominator
        return Mod(int(x), self.modulus)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        if self.modulus is None:
            raise FieldError("Q is infinite")
        return [Mod(v, self.modulus) for v in range(self.modulus)]

    def contains(self, x) -> bool:
        if self.modulus is None:
            return isinstance(x, (int, Fraction))
        return isinstance(x, Mod) and x.q == self.modulus


Q = FieldSpec()


def parse_scalar(text: str, field: FieldSpec):
    m = _SCALAR_RE.match(text.replace("−", "-"))
    if not m:
        raise FieldError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if field.modulus is None:
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    q = field.modulus
    if den % q == 0:
        raise FieldError(f"denominator of {text!r} vanishes mod {q}")
    return Mod(num, q) / den


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def good_characteristic(p: int, eta) -> bool:
    """True iff 1, eta(p-2)+1, 1-eta, eta-1 are pairwise distinct."""
    vals = [eta * 0 + 1, eta * (p - 2) + 1, 1 - eta, eta - 1]
    return all(vals[i] != vals[j] for i in range(4) for j in range(i + 1, 4))


def lambda_params(p: int, eta):
    return eta * (p - 2) + 1, 1 - eta


def roots_of_minus_one(field: FieldSpec, k: int) -> list:
    """All d in the field with d**k == -1, sorted.

    Over Q only +-1 can be roots (rational root theorem)."""
    if k < 1:
        raise ValueError("k must be positive")
    cands = [field(-1), field(1)] if field.is_rational else field.elements()
    return sorted({d for d in cands if d ** k == -1})


# ---------------------------------------------------------------- linear algebra


def _zero_like(M):
    for row in M:
        for x in row:
            return x * 0
    raise ValueError("cannot infer the field of an empty matrix")


def identity(n: int, field: FieldSpec):
    z, o = field.zero, field.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    zero = _zero_like(B)
    out = []
    for row in A:
        acc = [zero] * len(B[0])
        for k, a in enumerate(row):
            if a:
                acc = [x + a * y if y else x for x, y in zip(acc, B[k])]
        out.append(acc)
    return out


def matvec(M, v):
    zero = v[0] * 0
    return [sum((a * b for a, b in zip(row, v) if a and b), zero) for row in M]


def rref(M):
    """Reduced row echelon form.  Returns (rows, pivot_columns); zero rows dropped.

    Pivot choice is the first nonzero entry in the column, which keeps the
    output deterministic."""
    rows = [list(r) for r in M]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M) -> int:
    return len(rref(M)[1])


def kernel(M):
    """Basis of {v : M v = 0}, one vector per free column."""
    ncols = len(M[0])
    zero = _zero_like(M)
    R, pivots = rref(M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def eigenspace(M, lam):
    n = len(M)
    shifted = [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(M)]
    return kernel(shifted)


def span_basis(vectors):
    vectors = list(vectors)
    if not vectors:
        return []
    return rref(vectors)[0]


def is_direct_sum(subspaces) -> bool:
    subspaces = [list(s) for s in subspaces]
    dims = [rank(s) if s else 0 for s in subspaces]
    joint = [v for s in subspaces for v in s]
    return sum(dims) == (rank(joint) if joint else 0)


def in_span(basis, v) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == rank(basis)


def solve(M, b):
    """One solution x of M x = b, or None when inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug)
    ncols = len(M[0])
    if pivots and pivots[-1] == ncols:
        return None
    zero = b[0] * 0
    x = [zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return x


def inverse(M):
    n = len(M)
    zero = _zero_like(M)
    one = zero + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(M):
    """Determinant by Gaussian elimination."""
    rows = [list(r) for r in M]
    n = len(rows)
    d = _zero_like(M) + 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return d * 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d = d * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


class Subspace:
    """Incrementally grown subspace kept in reduced echelon form.

    Rows are stored sparsely as {column: value}; ``add`` reduces a vector
    against the current basis and returns True if it enlarged the space."""

    def __init__(self, n: int, field: FieldSpec):
        self.n = n
        self.field = field
        self.rows: dict[int, dict] = {}  # pivot column -> row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v) -> dict:
        w = {i: x for i, x in enumerate(v) if x} if isinstance(v, list) else dict(v)
        for pc in [c for c in w if c in self.rows]:
            f = w.get(pc)
            if not f:
                continue
            for c, y in self.rows[pc].items():
                x = w.get(c, 0) - f * y
                if x:
                    w[c] = x
                else:
                    w.pop(c, None)
        return w

    def reduce(self, v):
        w = self._reduce(v)
        out = [self.field.zero] * self.n
        for c, x in w.items():
            out[c] = x
        return out

    def add(self, v) -> bool:
        w = self._reduce(v)
        if not w:
            return False
        pc = min(w)
        inv = 1 / w[pc]
        w = {c: x * inv for c, x in w.items()}
        for row in self.rows.values():
            f = row.get(pc)
            if f:
                for c, y in w.items():
                    x = row.get(c, 0) - f * y
                    if x:
                        row[c] = x
                    else:
                        row.pop(c, None)
        self.rows[pc] = w
        return True

    def contains(self, v) -> bool:
        return not self._reduce(v)

    def basis(self):
        out = []
        for pc in sorted(self.rows):
            v = [self.field.zero] * self.n
            for c, x in self.rows[pc].items():
                v[c] = x
            out.append(v)
        return out
