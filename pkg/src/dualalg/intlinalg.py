"""Exact integer matrix kernel: Hermite and Smith normal forms, determinants,
image-lattice membership, kernels and lattice comparisons.

Everything runs on arbitrary-precision Python integers; no floating point is
used anywhere.  The normal forms return unimodular transforms so callers can
re-multiply and assert the factor identities (``u*m == h`` and ``u*m*v == d``).

Conventions:

* HNF is row-style upper echelon with positive pivots; entries above a pivot
  are reduced into ``[0, pivot)``.  Zero rows sink to the bottom.  The HNF of
  a generating set of row vectors is therefore a canonical form of the lattice
  they span, so lattice equality is bit-exact comparison of HNFs.
* SNF is ``u*m*v = d`` with ``d`` diagonal, nonnegative, and each diagonal
  entry dividing the next.  Pivoting is on the minimal absolute value, which
  keeps coefficient growth tame at the matrix sizes used here.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NonSquare


class IntMatrix:
    """Immutable dense integer matrix (row-major tuple of tuples)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    @staticmethod
    def identity(n):
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(r, c):
        return IntMatrix([[0] * c for _ in range(r)])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({list(map(list, self.entries))})"

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return IntMatrix([self.col(j) for j in range(self.cols)])

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch("matrix product shape")
            ot = other.transpose().entries
            return IntMatrix(
                [[_dot(r, c) for c in ot] for r in self.entries]
            )
        return NotImplemented

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix sum shape")
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix difference shape")
        return IntMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def scale(self, c):
        return IntMatrix([[c * x for x in row] for row in self.entries])

    def apply(self, vec):
        """Matrix times column vector, returned as a tuple."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length")
        return tuple(_dot(row, vec) for row in self.entries)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def det(m: IntMatrix):
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise NonSquare(f"{m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf(m: IntMatrix):
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular, ``u*m = h``, ``h`` upper echelon
    with positive pivots and reduced entries above each pivot.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]

    def addrow(dst, src, c):
        ar, br = a[dst], a[src]
        for k in range(ncols):
            ar[k] += c * br[k]
        ur, vr = u[dst], u[src]
        for k in range(nrows):
            ur[k] += c * vr[k]

    def swaprows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    pivot_row = 0
    pivots = []
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        # clear below pivot_row in this column by gcd steps
        while True:
            best = None
            for i in range(pivot_row, nrows):
                if a[i][col] != 0 and (best is None or abs(a[i][col]) < abs(a[best][col])):
                    best = i
            if best is None:
                break
            if best != pivot_row:
                swaprows(pivot_row, best)
            done = True
            for i in range(pivot_row + 1, nrows):
                if a[i][col] != 0:
                    addrow(i, pivot_row, -(a[i][col] // a[pivot_row][col]))
                    if a[i][col] != 0:
                        done = False
            if done:
                break
        if pivot_row < nrows and a[pivot_row][col] != 0:
            if a[pivot_row][col] < 0:
                a[pivot_row] = [-x for x in a[pivot_row]]
                u[pivot_row] = [-x for x in u[pivot_row]]
            pivots.append((pivot_row, col))
            pivot_row += 1
    # reduce entries above each pivot into [0, pivot)
    for prow, pcol in pivots:
        p = a[prow][pcol]
        for i in range(prow):
            q = a[i][pcol] // p
            if q:
                addrow(i, prow, -q)
    return IntMatrix(a), IntMatrix(u)


def snf(m: IntMatrix):
    """Smith normal form ``(d, u, v)`` with ``u*m*v = d``.

    ``u`` and ``v`` are unimodular; ``d`` is diagonal with nonnegative entries
    in a divisibility chain d1 | d2 | ...; pivoting picks the minimal absolute
    value in the remaining block (Kannan-Bachem style).
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def addrow(dst, src, c):
        for k in range(ncols):
            a[dst][k] += c * a[src][k]
        for k in range(nrows):
            u[dst][k] += c * u[src][k]

    def addcol(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def swaprows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swapcols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swaprows(t, piv[0])
        swapcols(t, piv[1])
        clean = True
        for i in range(t + 1, nrows):
            q = a[i][t] // a[t][t]
            if q:
                addrow(i, t, -q)
            if a[i][t] != 0:
                clean = False
        for j in range(t + 1, ncols):
            q = a[t][j] // a[t][t]
            if q:
                addcol(j, t, -q)
            if a[t][j] != 0:
                clean = False
        if not clean:
            continue
        t += 1
    # sign normalization
    for i in range(limit):
        if a[i][i] < 0:
            for k in range(ncols):
                a[i][k] = -a[i][k]
            # flip the corresponding row of u to keep u*m*v = d
            u[i] = [-x for x in u[i]]
    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di != 0 and dj % di != 0:
                # fold column i+1 into column i and re-eliminate the 2x2 block
                addcol(i, i + 1, 1)
                g, x, y = _xgcd(di, a[i + 1][i])
                # row_i <- x*row_i + y*row_{i+1}; row_{i+1} adjusted to keep u unimodular
                ri, rj = a[i][:], a[i + 1][:]
                uri, urj = u[i][:], u[i + 1][:]
                p, q = di // g, a[i + 1][i] // g
                a[i] = [x * s + y * t2 for s, t2 in zip(ri, rj)]
                u[i] = [x * s + y * t2 for s, t2 in zip(uri, urj)]
                a[i + 1] = [-q * s + p * t2 for s, t2 in zip(ri, rj)]
                u[i + 1] = [-q * s + p * t2 for s, t2 in zip(uri, urj)]
                # clear the off-diagonal remnants
                qq = a[i][i + 1] // a[i][i]
                if a[i][i + 1] % a[i][i] == 0:
                    addcol(i + 1, i, -qq)
                else:
                    changed = True
                    continue
                qq = a[i + 1][i] // a[i][i] if a[i + 1][i] else 0
                if qq:
                    addrow(i + 1, i, -qq)
                if a[i + 1][i + 1] < 0:
                    for k in range(ncols):
                        a[i + 1][k] = -a[i + 1][k]
                    u[i + 1] = [-x2 for x2 in u[i + 1]]
                changed = True
        # re-sort zero diagonal entries to the end
        for i in range(limit - 1):
            if a[i][i] == 0 and a[i + 1][i + 1] != 0:
                swaprows(i, i + 1)
                swapcols(i, i + 1)
                changed = True
    return IntMatrix(a), IntMatrix(u), IntMatrix(v)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def in_image(m: IntMatrix, b):
    """Decide whether ``b`` lies in the integer column span of ``m``.

    Returns ``(True, x)`` with ``m.apply(x) == b``, or ``(False, None)``.
    """
    if len(b) != m.rows:
        raise DimensionMismatch("b length != rows")
    d, u, v = snf(m)
    y = u.apply(tuple(b))
    r = min(m.rows, m.cols)
    x0 = []
    for i in range(m.rows):
        di = d[i, i] if i < r else 0
        if di == 0:
            if y[i] != 0:
                return False, None
            if i < m.cols:
                x0.append(0)
        else:
            if y[i] % di != 0:
                return False, None
            x0.append(y[i] // di)
    while len(x0) < m.cols:
        x0.append(0)
    x = v.apply(tuple(x0))
    assert m.apply(x) == tuple(b)
    return True, x


def kernel_basis(m: IntMatrix):
    """Z-basis of the integer kernel {x : m*x = 0}, as a list of column vectors.

    The basis is canonicalized by row-HNF so equal kernels give equal output.
    """
    d, u, v = snf(m)
    r = min(m.rows, m.cols)
    cols = []
    for j in range(m.cols):
        dj = d[j, j] if j < r else 0
        if dj == 0:
            cols.append(v.col(j))
    if not cols:
        return []
    h, _ = hnf(IntMatrix(cols))
    return [row for row in h.entries if any(row)]


def lattice_hnf(generators, ncols):
    """Canonical HNF matrix of the lattice spanned by the given row vectors."""
    rows = [list(g) for g in generators]
    if not rows:
        return IntMatrix.zero(0, ncols)
    h, _ = hnf(IntMatrix(rows))
    nonzero = [row for row in h.entries if any(row)]
    if not nonzero:
        return IntMatrix.zero(0, ncols)
    return IntMatrix(nonzero)


def lattices_equal(gens_a, gens_b, ncols):
    return lattice_hnf(gens_a, ncols) == lattice_hnf(gens_b, ncols)


def reduce_mod_lattice(vec, lattice_rows):
    """Canonical representative of ``vec`` modulo the lattice spanned by rows.

    Subtracts multiples of the HNF rows so the coordinate at each pivot column
    lands in ``[0, pivot)``.  With a fixed HNF this is a bit-exact canonical
    form for cosets.
    """
    if not lattice_rows:
        return tuple(vec)
    h = lattice_hnf(lattice_rows, len(vec))
    x = list(vec)
    for row in h.entries:
        pcol = next(j for j, e in enumerate(row) if e)
        q = x[pcol] // row[pcol]
        if q:
            for k in range(len(x)):
                x[k] -= q * row[k]
    return tuple(x)


def saturation_rows(gens, ncols):
    """Row basis of the saturation (Q-span intersect Z^n) of a row lattice."""
    l = lattice_hnf(gens, ncols)
    if l.rows == 0:
        return []
    # saturation = kernel of the kernel:  rows span sat(L) iff they span
    # {x : k*x = 0 for all k in ker(L^T applied ...)}.  Compute via kernel twice.
    k = kernel_basis(l)  # vectors orthogonal in the lattice-theoretic sense: l * x = 0
    if not k:
        return [list(r) for r in IntMatrix.identity(ncols).entries][: ncols]
    kt = IntMatrix(k)  # rows are kernel vectors of length ncols
    sat = kernel_basis(kt)
    return [list(r) for r in sat]


def solve_integer(m: IntMatrix, b):
    """All integer solutions of m*x = b as (particular, kernel_basis) or None."""
    ok, x = in_image(m, b)
    if not ok:
        return None
    return x, kernel_basis(m)
