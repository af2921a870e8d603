"""Eigen-decomposition of L_a / R_a, the dihedral eigenbasis and the A_a^+ / A_a^- split."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GMAlgebra, multiply, operator_matrix
from .exact import (
    eigenspace,
    good_characteristic,
    identity,
    inverse,
    is_direct_sum,
    lambda_params,
    matmul,
    rank,
    roots_of_minus_one,
    transpose,
)
from .transposition import blocks, dihedral_set


class NotSemisimple(ValueError):
    pass


@dataclass
class SpectralDecomposition:
    axis: int
    side: str
    parts: list  # [(eigenvalue, [vectors])]
    n: int

    @property
    def dims(self):
        return [len(b) for _, b in self.parts]

    @property
    def deficit(self) -> int:
        return self.n - sum(self.dims)

    @property
    def semisimple(self) -> bool:
        return self.deficit == 0

    @property
    def primitive(self) -> bool:
        return sum(len(b) for lam, b in self.parts if lam == 1) == 1

    def spectrum(self):
        return [lam for lam, b in self.parts if b]

    def part(self, lam):
        for mu, b in self.parts:
            if mu == lam:
                return b
        return []


@dataclass
class GradedSplit:
    axis: int
    plus: list
    minus: list


def left_candidates(A: GMAlgebra):
    lam1, lam2 = lambda_params(A.p, A.eta)
    out = []
    for c in (A.field.one, lam1, lam2, -lam2):
        if c not in out:
            out.append(c)
    return out


def right_candidates(A: GMAlgebra):
    lam1, _ = lambda_params(A.p, A.eta)
    base = A.eta - 1
    cands = [A.field.one, lam1, base]
    cands += [d * base for d in roots_of_minus_one(A.field, (A.p - 1) // 2)]
    out = []
    for c in cands:
        if c not in out:
            out.append(c)
    return out


def decompose(A: GMAlgebra, a: int, side: str = "left") -> SpectralDecomposition:
    """Eigenspaces at the closed-form candidate eigenvalues.

    Completeness is judged by counting dimensions, so a right operator whose
    remaining eigenvalues are not in the field shows up as a deficit."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    key = ("decompose", a, side)
    if key not in A.cache:
        A.cache[key] = _decompose(A, a, side)
    return A.cache[key]


def _decompose(A: GMAlgebra, a: int, side: str) -> SpectralDecomposition:
    M = operator_matrix(A, a, side)
    if side == "right":
        parts = [(lam, eigenspace(M, lam)) for lam in right_candidates(A)]
        return SpectralDecomposition(a, side, parts, A.n)
    parts = []
    groups = left_eigenbasis(A, a) if good_characteristic(A.p, A.eta) else None
    for k, lam in enumerate(left_candidates(A)):
        exact = eigenspace(M, lam)
        # prefer the block-assembled basis when it spans the whole eigenspace
        if groups is not None and len(groups[k]) == len(exact) and (not exact or rank(groups[k]) == len(exact)):
            parts.append((lam, groups[k]))
        else:
            parts.append((lam, exact))
    return SpectralDecomposition(a, side, parts, A.n)


def canonical_eigenbasis(A: GMAlgebra, a: int, b: int) -> dict:
    """Named eigenvectors of L_a inside the dihedral block of (a, b).

    Coordinates follow the canonical order a_1 = a, a_2 = b, ... and are
    embedded into the full basis of A."""
    if a == b:
        raise ValueError("need two distinct axes")
    p, F = A.p, A.field
    seq = dihedral_set(A.sys, a, b)

    def vec(coords):
        v = A.zero()
        for k, c in enumerate(coords):
            v[seq[k]] = F(c)
        return v

    def coords(entries):
        # entries: {1-based position: coefficient}
        c = [0] * p
        for pos, x in entries.items():
            c[pos - 1] += x
        return c

    out = {"a": vec(coords({1: 1}))}
    z = [F(p - 1) / (p - 2)] + [F(1)] * (p - 1)
    out["z"] = vec(z)
    mid1, mid2 = (p + 1) // 2, (p + 3) // 2
    for i in range(1, (p - 3) // 2 + 1):
        out[f"y{i}"] = vec(coords({i + 1: 1, mid1: -1, mid2: -1, p + 1 - i: 1}))
    for i in range(1, (p - 1) // 2 + 1):
        out[f"x{i}"] = vec(coords({i + 1: -1, p + 1 - i: 1}))
    return out


def eigenbasis_values(A: GMAlgebra) -> dict:
    lam1, lam2 = lambda_params(A.p, A.eta)
    return {"a": A.field.one, "z": lam1, "y": lam2, "x": -lam2}


def left_eigenbasis(A: GMAlgebra, a: int):
    """Eigenbasis of L_a assembled block by block, grouped as [1, lam1, lam2, -lam2].

    Each vector is checked against the operator before it is returned."""
    bp = blocks(A.sys, a)
    groups = [[A.basis_vector(a)], [], [], []]
    for rep in bp.representatives:
        named = canonical_eigenbasis(A, a, rep)
        for name, v in named.items():
            if name == "a":
                continue
            groups[{"z": 1, "y": 2, "x": 3}[name[0]]].append(v)
    values = left_candidates(A)
    ea = A.basis_vector(a)
    for lam, vs in zip(values, groups):
        for v in vs:
            if multiply(A, ea, v) != [lam * x for x in v]:
                raise AssertionError("block eigenvector failed direct check")
    return groups


def plus_minus_split(A: GMAlgebra, a: int) -> GradedSplit:
    dec = decompose(A, a, "left")
    if not dec.semisimple:
        raise NotSemisimple(f"L_{a} is not semisimple (deficit {dec.deficit})")
    parts = [b for _, b in dec.parts]
    return GradedSplit(a, parts[0] + parts[1] + parts[2], parts[3])


def tau_matrix(A: GMAlgebra, a: int, split: GradedSplit | None = None):
    """+1 on A_a^+, -1 on A_a^-, in column convention."""
    split = split or plus_minus_split(A, a)
    P = transpose(split.plus + split.minus)
    D = identity(A.n, A.field)
    for k in range(len(split.plus), A.n):
        D[k][k] = -D[k][k]
    return matmul(matmul(P, D), inverse(P))


def matrix_to_perm(M):
    """The permutation b -> c when column b of M is e_c, else None."""
    n = len(M)
    perm = []
    for b in range(n):
        col = [M[i][b] for i in range(n)]
        nz = [i for i, x in enumerate(col) if x]
        if len(nz) != 1 or col[nz[0]] != 1:
            return None
        perm.append(nz[0])
    if sorted(perm) != list(range(n)):
        return None
    return tuple(perm)


def check_split_direct(A: GMAlgebra, split: GradedSplit) -> bool:
    return is_direct_sum([split.plus, split.minus]) and len(split.plus) + len(split.minus) == A.n
