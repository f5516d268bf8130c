"""Exact integer tensors over H = Z^{2g}: wedge squares and their tensor squares.

``Wedge2`` stores coordinates on the basis ``x_i ^ x_j`` (i < j, lexicographic),
where ``x ^ y = x (x) y - y (x) x`` inside ``H (x) H``.  ``Sym2W`` stores a
matrix ``m`` over that basis standing for ``sum m[p, q] w_p (x) w_q`` in
``wedge^2 H (x) wedge^2 H``.  The symmetric product ``u . v = u (x) v + v (x) u``
has image the symmetric matrices with even diagonal, which is how membership
in ``S^2(wedge^2 H)`` is tested.

Entries are Python integers held in numpy ``object`` arrays: markings can
grow without bound along long flip walks, so fixed-width integers are unsafe.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np


@lru_cache(maxsize=None)
def wedge_basis(n: int) -> tuple[tuple[int, int], ...]:
    """Index pairs ``(i, j)``, ``i < j``, in the frozen lexicographic order."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def _wedge_index(n: int) -> dict[tuple[int, int], int]:
    return {ij: k for k, ij in enumerate(wedge_basis(n))}


_to_int = np.frompyfunc(int, 1, 1)


def _int_array(values) -> np.ndarray:
    """Object array of Python ints (so sums and products never overflow)."""
    return np.asarray(_to_int(np.asarray(values, dtype=object)), dtype=object)


def hvec(values: Sequence[int]) -> np.ndarray:
    """An element of H as an object array of Python ints."""
    return _int_array(list(values))


class Wedge2:
    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        dim = n * (n - 1) // 2
        if coeffs is None:
            self.c = _int_array([0] * dim)
        else:
            self.c = _int_array(list(coeffs))
            if len(self.c) != dim:
                raise ValueError(f"expected {dim} wedge coordinates, got {len(self.c)}")

    @classmethod
    def zero(cls, n: int) -> "Wedge2":
        return cls(n)

    @classmethod
    def from_matrix(cls, a) -> "Wedge2":
        """Read an antisymmetric ``H (x) H`` matrix back as a wedge element."""
        a = np.asarray(a, dtype=object)
        if not np.array_equal(a, -a.T):
            raise ValueError("tensor does not lie in wedge^2 H (not antisymmetric)")
        n = a.shape[0]
        return cls(n, [a[i, j] for i, j in wedge_basis(n)])

    def to_matrix(self) -> np.ndarray:
        """The antisymmetric ``H (x) H`` representative."""
        a = np.zeros((self.n, self.n), dtype=object)
        for k, (i, j) in enumerate(wedge_basis(self.n)):
            a[i, j] = self.c[k]
            a[j, i] = -self.c[k]
        return a

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if i == j:
            return 0
        if i > j:
            return -self[j, i]
        return self.c[_wedge_index(self.n)[i, j]]

    def _check(self, other):
        if not isinstance(other, Wedge2) or other.n != self.n:
            raise TypeError("Wedge2 operands must share the ambient rank")

    def __add__(self, other):
        self._check(other)
        return Wedge2(self.n, self.c + other.c)

    def __sub__(self, other):
        self._check(other)
        return Wedge2(self.n, self.c - other.c)

    def __neg__(self):
        return Wedge2(self.n, -self.c)

    def __mul__(self, k: int):
        return Wedge2(self.n, self.c * int(k))

    __rmul__ = __mul__

    def halve(self) -> "Wedge2":
        if any(x % 2 for x in self.c):
            raise ValueError("wedge element is not divisible by 2")
        return Wedge2(self.n, [x // 2 for x in self.c])

    def __eq__(self, other):
        return isinstance(other, Wedge2) and other.n == self.n and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.n, tuple(self.c)))

    def is_zero(self) -> bool:
        return not any(self.c)

    def dump(self) -> str:
        terms = [f"({i},{j}):{self.c[k]}" for k, (i, j) in enumerate(wedge_basis(self.n)) if self.c[k]]
        return "[" + ", ".join(terms) + "]"

    def __repr__(self):
        return f"Wedge2({self.dump()})"


class Sym2W:
    __slots__ = ("n", "m")

    def __init__(self, n: int, m=None):
        self.n = n
        dim = n * (n - 1) // 2
        if m is None:
            self.m = np.zeros((dim, dim), dtype=object)
        else:
            m = np.asarray(m, dtype=object)
            if m.shape != (dim, dim):
                raise ValueError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
            self.m = _int_array(m)

    @classmethod
    def zero(cls, n: int) -> "Sym2W":
        return cls(n)

    def _check(self, other):
        if not isinstance(other, Sym2W) or other.n != self.n:
            raise TypeError("Sym2W operands must share the ambient rank")

    def __add__(self, other):
        self._check(other)
        return Sym2W(self.n, self.m + other.m)

    def __sub__(self, other):
        self._check(other)
        return Sym2W(self.n, self.m - other.m)

    def __neg__(self):
        return Sym2W(self.n, -self.m)

    def __mul__(self, k: int):
        return Sym2W(self.n, self.m * int(k))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Sym2W) and other.n == self.n and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash((self.n, tuple(self.m.ravel())))

    def is_zero(self) -> bool:
        return not any(self.m.ravel())

    def dump(self) -> str:
        basis = wedge_basis(self.n)
        terms = []
        for p, (i, j) in enumerate(basis):
            for q in range(p, len(basis)):
                if self.m[p, q]:
                    k, l = basis[q]
                    terms.append(f"({i},{j})({k},{l}):{self.m[p, q]}")
        return "[" + ", ".join(terms) + "]"

    def __repr__(self):
        return f"Sym2W({self.dump()})"


def wedge(x, y) -> Wedge2:
    x, y = hvec(x), hvec(y)
    n = len(x)
    if len(y) != n:
        raise ValueError("wedge factors must have the same length")
    return Wedge2(n, [x[i] * y[j] - x[j] * y[i] for i, j in wedge_basis(n)])


def sym(u: Wedge2, v: Wedge2) -> Sym2W:
    u._check(v)
    return Sym2W(u.n, np.outer(u.c, v.c) + np.outer(v.c, u.c))


def outer_square(u: Wedge2) -> Sym2W:
    """``u (x) u``, half of ``u . u``."""
    return Sym2W(u.n, np.outer(u.c, u.c))


def pair(J, x, y) -> int:
    """Intersection number ``x^T J y``."""
    return int(hvec(x) @ _int_array(J) @ hvec(y))


def _J(J, n) -> np.ndarray:
    J = _int_array(J)
    if J.shape != (n, n):
        raise ValueError(f"form matrix must be {n}x{n}")
    return J


def _form_on_basis(J: np.ndarray) -> np.ndarray:
    n = J.shape[0]
    return _int_array([J[i, j] for i, j in wedge_basis(n)])


def eval_form(w: Wedge2, J) -> int:
    """Intersection form on ``wedge^2 H``: ``x ^ y`` goes to ``2 (x . y)``."""
    J = _J(J, w.n)
    return int(2 * (w.c @ _form_on_basis(J)))


def cont12(T: Sym2W, J) -> Wedge2:
    """Contract slots 1 and 2: ``x(x)y(x)z(x)w -> (x.y) z(x)w``.

    Slots 1, 2 are the first wedge factor, on which the contraction is
    ``eval_form``; the second factor passes through unchanged.
    """
    J = _J(J, T.n)
    jv = 2 * _form_on_basis(J)
    return Wedge2(T.n, jv @ T.m)


def cont13(T: Sym2W, J) -> Wedge2:
    """Contract slots 1 and 3: ``x(x)y(x)z(x)w -> (x.z) y(x)w``.

    For ``w_p (x) w_q`` with antisymmetric representatives ``B_p, B_q`` this
    is ``B_p^T J B_q``; summing row by row keeps the work to one small
    product per non-zero row of ``T``.
    """
    J = _J(J, T.n)
    n = T.n
    full = np.zeros((n, n), dtype=object)
    for p, (i, j) in enumerate(wedge_basis(n)):
        row = T.m[p]
        if not any(row):
            continue
        X = J @ Wedge2(n, row).to_matrix()
        full[j, :] += X[i, :]
        full[i, :] -= X[j, :]
    return Wedge2.from_matrix(full)


def is_in_S2(T: Sym2W) -> bool:
    """Membership in ``S^2(wedge^2 H)``: symmetric with even diagonal."""
    m = T.m
    return bool(np.array_equal(m, m.T) and all(x % 2 == 0 for x in np.diagonal(m)))
