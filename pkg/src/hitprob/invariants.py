"""Induced Sigma_n and GL_n actions on QP_n and their fixed classes.

``rho_1, ..., rho_{n-1}`` (adjacent transpositions) generate Sigma_n and
adding ``rho_n: x_1 -> x_1 + x_2`` generates GL_n, so a class is invariant
iff it is fixed by each generator.  Fixed classes are computed directly as
the null space of the stacked systems ``(M_j - I) v = 0``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .hitsolver import AdmissibleBasis, kameko_matrix
from .polyalg import Polynomial, rho


def induced_matrix(basis: AdmissibleBasis, j: int) -> np.ndarray:
    """0/1 matrix of ``rho_j`` on the classes of ``basis``; column ``b`` holds the class of ``rho_j(b)``."""
    g = rho(j, basis.n)
    out = np.zeros((len(basis), len(basis)), dtype=np.uint8)
    for c, b in enumerate(basis.monomials):
        out[:, c] = basis.coordinates(g(b))
    return out


def induced_action(basis: AdmissibleBasis, j: int) -> gf2.BitMatrix:
    return gf2.BitMatrix.from_dense(induced_matrix(basis, j))


@dataclass
class InducedAction:
    basis: AdmissibleBasis
    matrices: dict[int, np.ndarray] = field(default_factory=dict)

    def matrix(self, j: int) -> np.ndarray:
        m = self.matrices.get(j)
        if m is None:
            m = self.matrices[j] = induced_matrix(self.basis, j)
        return m

    def bitmatrix(self, j: int) -> gf2.BitMatrix:
        return gf2.BitMatrix.from_dense(self.matrix(j))

    def apply(self, j: int, v: Sequence[int] | np.ndarray) -> np.ndarray:
        return (self.matrix(j).astype(np.int64) @ np.asarray(v, dtype=np.int64) & 1).astype(np.uint8)

    def fixed(self, generators: Sequence[int], constraints: np.ndarray | None = None) -> list[Polynomial]:
        """Classes fixed by every ``rho_j`` listed, optionally also killed by ``constraints``."""
        k = len(self.basis)
        blocks = [self.matrix(j) ^ np.eye(k, dtype=np.uint8) for j in generators]
        if constraints is not None:
            constraints = np.asarray(constraints, dtype=np.uint8)
            if constraints.ndim != 2 or constraints.shape[1] != k:
                raise ValueError(f"constraint matrix must have {k} columns")
            blocks.append(constraints)
        if not blocks or k == 0:
            return [self.basis.element(row) for row in np.eye(k, dtype=np.uint8)]
        system = gf2.BitMatrix.from_dense(np.vstack(blocks))
        return [self.basis.element(v) for v in gf2.null_space(system)]

    def sigma_fixed(self, constraints: np.ndarray | None = None) -> list[Polynomial]:
        return self.fixed(range(1, self.basis.n), constraints)

    def gl_fixed(self, constraints: np.ndarray | None = None) -> list[Polynomial]:
        return self.fixed(range(1, self.basis.n + 1), constraints)


def sigma_fixed(basis: AdmissibleBasis, constraints: np.ndarray | None = None) -> list[Polynomial]:
    """Basis (as representative polynomials) of the Sigma_n-invariant classes."""
    return InducedAction(basis).sigma_fixed(constraints)


def gl_fixed(basis: AdmissibleBasis, constraints: np.ndarray | None = None) -> list[Polynomial]:
    """Basis (as representative polynomials) of the GL_n-invariant classes."""
    return InducedAction(basis).gl_fixed(constraints)


def kameko_kernel_fixed(n: int, d: int, group: str = "sigma") -> list[Polynomial]:
    """Invariant classes inside the kernel of the Kameko map ``(QP_n)_d -> (QP_n)_{(d-n)/2}``.

    The kernel is a GL_n-submodule, so its invariants are the invariants of
    ``(QP_n)_d`` that the Kameko matrix kills.
    """
    if (d - n) % 2 or d < n:
        raise ValueError(f"degree {d} is not of the form 2m + {n}")
    km = kameko_matrix(n, (d - n) // 2)
    action = InducedAction(km.source)
    constraints = km.matrix.to_dense()
    if group == "sigma":
        return action.sigma_fixed(constraints)
    if group == "gl":
        return action.gl_fixed(constraints)
    raise ValueError(f"group must be 'sigma' or 'gl', got {group!r}")


def subbasis(basis: AdmissibleBasis, part: str) -> AdmissibleBasis:
    """The zero part or plus part of a basis; both are Sigma_n-stable."""
    if part == "zero":
        mons = basis.zero_part
    elif part == "plus":
        mons = basis.plus_part
    elif part == "all":
        return basis
    else:
        raise ValueError(f"unknown part {part!r}")
    return AdmissibleBasis.build(basis.n, basis.d, basis.omega, mons)


def orbit(action: InducedAction, start: int, generators: Sequence[int]) -> set[int]:
    """Indices reached from basis element ``start`` when generators map basis elements to basis elements.

    Raises if some generator sends an orbit member to a non-monomial class.
    """
    seen = {start}
    todo = [start]
    while todo:
        i = todo.pop()
        for j in generators:
            col = np.flatnonzero(action.matrix(j)[:, i])
            if len(col) != 1:
                raise ValueError(f"rho_{j} does not permute the basis at {action.basis.monomials[i]}")
            t = int(col[0])
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen
