"""Small exact linear algebra helpers.

Two flavours are needed: elimination over a prime field F_p on plain integer
rows, and elimination over an arbitrary (possibly noncommutative) division
ring whose elements support ``+``, ``-``, ``*``, ``inverse()`` and
``is_zero()``.  Matrices are tiny here, so plain lists are the right tool.
"""

from __future__ import annotations


def row_reduce(rows, p):
    """Return ``(rref, pivots)`` of ``rows`` over F_p.

    ``rows`` is not modified.  ``pivots`` lists the pivot column of each
    nonzero row of the result.
    """
    m = [[v % p for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        if inv != 1:
            m[r] = [(v * inv) % p for v in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p):
    return len(row_reduce(rows, p)[1])


def nullspace(rows, ncols, p):
    """Basis of ``{x : rows @ x = 0}`` over F_p, as a list of vectors."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    rref, pivots = row_reduce(rows, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def solve(rows, rhs, p):
    """Solve ``rows @ x = rhs`` over F_p.

    Returns ``(x, nullity)`` with ``x`` one particular solution, or
    ``(None, nullity)`` when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = row_reduce(aug, p)
    if ncols in pivots:
        return None, ncols - (len(pivots) - 1)
    x = [0] * ncols
    for row, pc in zip(rref, pivots):
        x[pc] = row[ncols]
    return x, ncols - len(pivots)


class SingularSystem(ArithmeticError):
    pass


def solve_left(matrix, rhs):
    """Solve ``sum_j M[k][j] * y[j] = rhs[k]`` over a division ring.

    Row operations multiply equations on the left, so the unknowns stay on
    the right of every coefficient; this is what the skew setting needs.
    Raises :class:`SingularSystem` when no unique solution exists.
    """
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {c}")
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c].inverse()
        m[c] = [inv * v for v in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


class IncrementalBasis:
    """Echelon basis over F_p that grows one vector at a time.

    Each stored row remembers its expression in the inserted vectors, so a
    dependency of a new vector on earlier ones is read off directly.
    """

    def __init__(self, p):
        self.p = p
        self.rows = []  # (pivot, row, combination)
        self.count = 0

    def reduce(self, v):
        """Return ``(residual, combination)`` with ``v = residual + sum comb_i v_i``."""
        p = self.p
        v = [x % p for x in v]
        comb = {}
        for pivot, row, rc in self.rows:
            f = v[pivot]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
                for i, c in rc.items():
                    comb[i] = (comb.get(i, 0) + f * c) % p
        return v, {i: c for i, c in comb.items() if c}

    def add(self, v):
        """Insert ``v``; return False (and store nothing) when it is dependent."""
        p = self.p
        residual, comb = self.reduce(v)
        idx = self.count
        pivot = next((i for i, x in enumerate(residual) if x), None)
        if pivot is None:
            return False
        self.count += 1
        inv = pow(residual[pivot], p - 2, p)
        row = [(x * inv) % p for x in residual]
        # row = inv * (v - sum comb_i v_i)
        rc = {i: (-c * inv) % p for i, c in comb.items()}
        rc[idx] = (rc.get(idx, 0) + inv) % p
        # keep earlier rows reduced at the new pivot
        new_rows = []
        for pv, r, c in self.rows:
            f = r[pivot]
            if f:
                r = [(a - f * b) % p for a, b in zip(r, row)]
                c = dict(c)
                for i, x in rc.items():
                    c[i] = (c.get(i, 0) - f * x) % p
            new_rows.append((pv, r, c))
        new_rows.append((pivot, row, rc))
        self.rows = new_rows
        return True
