"""The symmetric form (a, a) = 1, (a, b) = eta on T: Gram data, Frobenius defect, radical."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GMAlgebra
from .exact import det, format_scalar, kernel


@dataclass
class GramData:
    matrix: list
    radical_basis: list
    determinant: object
    closed_form: object

    @property
    def determinant_matches(self) -> bool:
        return self.determinant == self.closed_form

    def to_json(self) -> dict:
        return {
            "determinant": format_scalar(self.determinant),
            "closed_form": format_scalar(self.closed_form),
            "determinant_matches": self.determinant_matches,
            "radical_dim": len(self.radical_basis),
            "radical_basis": [[format_scalar(x) for x in v] for v in self.radical_basis],
        }


def gram_matrix(A: GMAlgebra):
    one, eta = A.field.one, A.eta
    return [[one if i == j else eta for j in range(A.n)] for i in range(A.n)]


def gram_det_closed_form(n: int, eta):
    # eta*J + (1 - eta)*I
    return (1 - eta) ** (n - 1) * (1 + (n - 1) * eta)


def gram(A: GMAlgebra) -> GramData:
    G = gram_matrix(A)
    return GramData(G, kernel(G), det(G), gram_det_closed_form(A.n, A.eta))


def radical(A: GMAlgebra):
    return kernel(gram_matrix(A))


def form(A: GMAlgebra, x, y):
    """(x, y) = sum_i x_i y_i + eta * sum_{i != j} x_i y_j."""
    sx, sy = sum(x, A.field.zero), sum(y, A.field.zero)
    diag = sum((a * b for a, b in zip(x, y)), A.field.zero)
    return diag + A.eta * (sx * sy - diag)


def _prod_against(A: GMAlgebra, i, j, c):
    # (e_i * e_j, e_c) straight from the sparse structure constants
    eta, one = A.eta, A.field.one
    return sum((s * (one if k == c else eta) for k, s in A.products[i][j]), A.field.zero)


def frobenius_defect(A: GMAlgebra, side: str = "left") -> list:
    """All basis triples breaking (a*b, c) = (b, a*c) (left) or (a*b, c) = (a, c*b) (right).

    Returns tuples (a, b, c, lhs, rhs)."""
    bad = []
    n = A.n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = _prod_against(A, a, b, c)
                rhs = _prod_against(A, a, c, b) if side == "left" else _prod_against(A, c, b, a)
                if lhs != rhs:
                    bad.append((a, b, c, lhs, rhs))
    return bad


def invariance_under_perm(A: GMAlgebra, perm) -> bool:
    """(pi x, pi y) = (x, y) on basis pairs."""
    G = gram_matrix(A)
    return all(G[perm[i]][perm[j]] == G[i][j] for i in range(A.n) for j in range(A.n))
