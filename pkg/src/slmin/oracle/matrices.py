"""n x n matrices over a small finite field, stored as flat row-major tuples."""

from __future__ import annotations

import itertools

from ..errors import DomainError, ResourceLimitError
from .fq import FqField


class MatrixSpace:
    """Arithmetic for n x n matrices over ``fq``."""

    def __init__(self, fq: FqField, n: int):
        if n < 1:
            raise DomainError(f"matrix dimension must be >= 1, got {n}")
        self.fq = fq
        self.n = n
        self.identity = self.scalar(1)
        self._prime = fq.e == 1

    def scalar(self, lam: int) -> tuple:
        n = self.n
        return tuple(lam if i == j else 0 for i in range(n) for j in range(n))

    def diagonal(self, values) -> tuple:
        n = self.n
        return tuple(values[i] if i == j else 0 for i in range(n) for j in range(n))

    def transvection(self, i: int, j: int, t: int) -> tuple:
        """I + t E_ij."""
        m = list(self.identity)
        m[i * self.n + j] = t
        return tuple(m)

    def mul(self, a, b):
        n = self.n
        out = []
        if self._prime:
            p = self.fq.p
            for i in range(0, n * n, n):
                row = a[i : i + n]
                for j in range(n):
                    out.append(sum(row[k] * b[k * n + j] for k in range(n) if row[k]) % p)
            return tuple(out)
        add, mul = self.fq.add, self.fq.mul
        for i in range(0, n * n, n):
            row = a[i : i + n]
            for j in range(n):
                s = 0
                for k in range(n):
                    x = row[k]
                    if x:
                        s = add[s][mul[x][b[k * n + j]]]
                out.append(s)
        return tuple(out)

    def scale(self, lam, a):
        mul = self.fq.mul
        return tuple(mul[lam][x] for x in a)

    def _rows(self, a):
        n = self.n
        return [list(a[i * n : (i + 1) * n]) for i in range(n)]

    def det(self, a) -> int:
        f = self.fq
        m = self._rows(a)
        n = self.n
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = f.neg[d]
            d = f.mul[d][m[c][c]]
            inv = f.inv[m[c][c]]
            for r in range(c + 1, n):
                factor = f.mul[m[r][c]][inv]
                if factor:
                    m[r] = [f.sub(x, f.mul[factor][y]) for x, y in zip(m[r], m[c])]
        return d

    def inverse(self, a):
        f = self.fq
        n = self.n
        m = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self._rows(a))]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise DomainError("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            inv = f.inv[m[c][c]]
            m[c] = [f.mul[inv][x] for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    factor = m[r][c]
                    m[r] = [f.sub(x, f.mul[factor][y]) for x, y in zip(m[r], m[c])]
        return tuple(x for row in m for x in row[n:])

    def conj(self, g, x, g_inv=None):
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inverse(g) if g_inv is None else g_inv)

    def commutator(self, a, b):
        """a b a^-1 b^-1."""
        return self.mul(self.mul(a, b), self.mul(self.inverse(a), self.inverse(b)))

    def is_upper(self, a) -> bool:
        n = self.n
        return all(a[i * n + j] == 0 for i in range(n) for j in range(i))

    def is_unitriangular(self, a) -> bool:
        n = self.n
        return self.is_upper(a) and all(a[i * n + i] == 1 for i in range(n))

    def is_diagonal(self, a) -> bool:
        n = self.n
        return all(a[i * n + j] == 0 for i in range(n) for j in range(n) if i != j)

    def is_scalar(self, a) -> bool:
        return self.is_diagonal(a) and len({a[i * self.n + i] for i in range(self.n)}) == 1

    def to_lists(self, a):
        return self._rows(a)


# -- linear algebra ---------------------------------------------------------------


def nullspace(fq: FqField, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : rows . v = 0} over fq, via reduced row echelon form."""
    f = fq
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv[m[r][c]]
        m[r] = [f.mul[inv][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [f.sub(x, f.mul[factor][y]) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = f.neg[m[i][fc]]
        basis.append(v)
    return basis


def span_elements(fq: FqField, basis: list[list[int]], ncols: int, limit: int):
    """Yield every vector of the span of ``basis`` (q^dim of them)."""
    count = fq.q ** len(basis)
    if count > limit:
        raise ResourceLimitError(
            f"subspace has {count} elements, above bound subspace_max_elements={limit}",
            "subspace_max_elements",
            limit,
        )
    add, mul = fq.add, fq.mul
    for coeffs in itertools.product(range(fq.q), repeat=len(basis)):
        v = [0] * ncols
        for c, b in zip(coeffs, basis):
            if c:
                v = [add[x][mul[c][y]] for x, y in zip(v, b)]
        yield v


def twisted_commutation_rows(space: MatrixSpace, a, b, support):
    """Linear equations on the unknown Y (entries at ``support``) for Y a - b Y = 0."""
    f = space.fq
    n = space.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = []
            for (r, c) in support:
                coef = 0
                if r == i:
                    coef = f.add[coef][a[c * n + j]]
                if c == j:
                    coef = f.sub(coef, b[i * n + r])
                row.append(coef)
            rows.append(row)
    return rows


def embed(space: MatrixSpace, support, v):
    m = [0] * (space.n * space.n)
    for (r, c), x in zip(support, v):
        m[r * space.n + c] = x
    return tuple(m)
