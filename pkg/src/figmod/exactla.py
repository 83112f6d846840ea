"""Exact linear algebra over Q and prime fields, plus integer Hermite normal form.

Everything here is deterministic: no randomized pivoting, no floating point.
Vectors are columns; a linear map V -> W is a (dim W x dim V) matrix and
composition is ``second @ first``.  Subspaces are matrices whose columns form
a basis.

Over a prime field the hot operations run on int64 numpy arrays.  This stays
exact as long as every dot product fits in an int64 before the final
reduction mod p, which _np_exact checks; otherwise (huge p) the code falls
back to plain Python integers.
"""

import numpy as np

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is a soft dependency
    from fractions import Fraction as _rational


def _np_exact(p, inner):
    """Whether int64 accumulation of `inner` products of residues mod p is safe."""
    return (p - 1) * (p - 1) * max(inner, 1) < 2 ** 62


class FieldError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FieldSpec:
    """The coefficient field: the rationals, or F_p for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None and not _is_prime(p):
            raise FieldError("modulus %r is not prime" % (p,))
        self.p = p

    @property
    def is_rationals(self):
        return self.p is None

    def zero(self):
        return 0 if self.p is not None else _rational(0)

    def one(self):
        return 1 if self.p is not None else _rational(1)

    def of(self, x):
        """Coerce an int, rational or 'p/q' string into the field."""
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/")
                x = _rational(int(num), int(den))
            else:
                x = int(x)
        if self.p is not None:
            num = int(x.numerator)
            den = int(x.denominator)
            if den % self.p == 0:
                raise FieldError("denominator not invertible mod %d" % self.p)
            return num * pow(den, -1, self.p) % self.p
        return _rational(x)

    def inv(self, x):
        if self.p is not None:
            return pow(x, -1, self.p)
        return _rational(1) / x

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "Q" if self.p is None else "F%d" % self.p

    def format(self, x):
        if self.p is not None:
            return str(x)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)


QQ = FieldSpec()


class Matrix:
    """Dense exact matrix.  Treated as immutable after construction."""

    __slots__ = ("field", "m", "n", "rows", "_np")

    def __init__(self, field, rows, shape=None):
        self.field = field
        rows = [list(r) for r in rows]
        if shape is not None:
            m, n = shape
            if len(rows) != m or any(len(r) != n for r in rows):
                raise ValueError("rows do not match shape %r" % (shape,))
        else:
            m = len(rows)
            n = len(rows[0]) if rows else 0
            if any(len(r) != n for r in rows):
                raise ValueError("ragged rows")
        self.m, self.n, self.rows = m, n, rows
        self._np = None

    def _as_np(self):
        """int64 view of a prime-field matrix, cached.  Entries are reduced."""
        a = self._np
        if a is None:
            a = np.array(self.rows, dtype=np.int64).reshape(self.m, self.n)
            self._np = a
        return a

    @staticmethod
    def _from_np(field, arr):
        mat = Matrix(field, arr.tolist(), arr.shape)
        mat._np = arr
        return mat

    @staticmethod
    def zeros(field, m, n):
        z = field.zero()
        return Matrix(field, [[z] * n for _ in range(m)], (m, n))

    @staticmethod
    def identity(field, n):
        z, o = field.zero(), field.one()
        rows = [[z] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = o
        return Matrix(field, rows, (n, n))

    @staticmethod
    def from_cols(field, cols, nrows):
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return Matrix(field, rows, (nrows, len(cols)))

    def col(self, j):
        return [r[j] for r in self.rows]

    def cols(self):
        return [self.col(j) for j in range(self.n)]

    def transpose(self):
        return Matrix(self.field, [self.col(j) for j in range(self.n)],
                      (self.n, self.m))

    def is_zero(self):
        z = self.field.zero()
        return all(x == z for r in self.rows for x in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.m == other.m and self.n == other.n
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.m, self.n,
                     tuple(tuple(r) for r in self.rows)))

    def __matmul__(self, other):
        if self.n != other.m:
            raise ValueError("shape mismatch %dx%d @ %dx%d"
                             % (self.m, self.n, other.m, other.n))
        p = self.field.p
        if p is not None and _np_exact(p, self.n):
            C = (self._as_np() @ other._as_np()) % p
            return Matrix._from_np(self.field, C)
        z = self.field.zero()
        out = [[z] * other.n for _ in range(self.m)]
        orows = other.rows
        for i in range(self.m):
            srow = self.rows[i]
            orow = out[i]
            for k in range(self.n):
                a = srow[k]
                if a == 0:
                    continue
                brow = orows[k]
                for j in range(other.n):
                    b = brow[j]
                    if b != 0:
                        orow[j] += a * b
            if p is not None:
                out[i] = [x % p for x in orow]
        return Matrix(self.field, out, (self.m, other.n))

    def __add__(self, other):
        self._same_shape(other)
        p = self.field.p
        rows = [[a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)]
        if p is not None:
            rows = [[x % p for x in r] for r in rows]
        return Matrix(self.field, rows, (self.m, self.n))

    def __sub__(self, other):
        self._same_shape(other)
        p = self.field.p
        rows = [[a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)]
        if p is not None:
            rows = [[x % p for x in r] for r in rows]
        return Matrix(self.field, rows, (self.m, self.n))

    def __neg__(self):
        return self.scale(-self.field.one())

    def scale(self, c):
        p = self.field.p
        rows = [[c * x for x in r] for r in self.rows]
        if p is not None:
            rows = [[x % p for x in r] for r in rows]
        return Matrix(self.field, rows, (self.m, self.n))

    def apply(self, vec):
        """Matrix times column vector (a plain list)."""
        p = self.field.p
        if p is not None and _np_exact(p, self.n):
            v = np.asarray(vec, dtype=np.int64) % p
            return ((self._as_np() @ v) % p).tolist()
        z = self.field.zero()
        out = []
        for row in self.rows:
            s = z
            for a, b in zip(row, vec):
                if a != 0 and b != 0:
                    s += a * b
            out.append(s % p if p is not None else s)
        return out

    def _same_shape(self, other):
        if self.m != other.m or self.n != other.n:
            raise ValueError("shape mismatch")

    def __repr__(self):
        return "Matrix(%r, %dx%d)" % (self.field, self.m, self.n)


def hstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    m = mats[0].m
    field = mats[0].field
    rows = [[] for _ in range(m)]
    for a in mats:
        if a.m != m:
            raise ValueError("row count mismatch in hstack")
        for i in range(m):
            rows[i].extend(a.rows[i])
    return Matrix(field, rows)


def vstack(mats):
    mats = list(mats)
    n = mats[0].n
    field = mats[0].field
    rows = []
    for a in mats:
        if a.n != n:
            raise ValueError("column count mismatch in vstack")
        rows.extend([list(r) for r in a.rows])
    return Matrix(field, rows, (len(rows), n))


def block_diag(field, mats):
    m = sum(a.m for a in mats)
    n = sum(a.n for a in mats)
    out = Matrix.zeros(field, m, n)
    i = j = 0
    for a in mats:
        for r in range(a.m):
            out.rows[i + r][j:j + a.n] = list(a.rows[r])
        i += a.m
        j += a.n
    return out


def _rref_np(A):
    p = A.field.p
    R = A._as_np() % p
    m, n = A.m, A.n
    pivots = []
    r = 0
    for c in range(n):
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        piv_val = int(R[r, c])
        if piv_val != 1:
            R[r] = (R[r] * pow(piv_val, -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        if np.any(col):
            R -= np.outer(col, R[r])
            R %= p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return Matrix._from_np(A.field, R), pivots


def rref(A):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    p = A.field.p
    if p is not None and _np_exact(p, 1):
        return _rref_np(A)
    rows = [list(r) for r in A.rows]
    m, n = A.m, A.n
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p) if p is not None else _rational(1) / rows[r][c]
        if p is not None:
            rows[r] = [(x * inv) % p for x in rows[r]]
        else:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            row = rows[i]
            if p is not None:
                rows[i] = [(x - f * y) % p for x, y in zip(row, prow)]
            else:
                rows[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return Matrix(A.field, rows, (m, n)), pivots


def rank(A):
    return len(rref(A)[1])


def kernel(A):
    """Basis of {x : Ax = 0}, as columns.  Deterministic."""
    R, pivots = rref(A)
    field = A.field
    pivset = set(pivots)
    free = [j for j in range(A.n) if j not in pivset]
    p = field.p
    if p is not None and R._np is not None:
        K = np.zeros((A.n, len(free)), dtype=np.int64)
        K[free, np.arange(len(free))] = 1
        if pivots and free:
            K[pivots] = (-R._np[:len(pivots)][:, free]) % p
        return Matrix._from_np(field, K)
    cols = []
    z, o = field.zero(), field.one()
    for j in free:
        v = [z] * A.n
        v[j] = o
        for i, pc in enumerate(pivots):
            x = -R.rows[i][j]
            v[pc] = x % field.p if field.p is not None else x
        cols.append(v)
    return Matrix.from_cols(field, cols, A.n)


def image(A):
    """Basis of the column space: the pivot columns of A."""
    _, pivots = rref(A)
    return Matrix.from_cols(A.field, [A.col(j) for j in pivots], A.m)


def solve(A, B):
    """Solve AX = B for X; returns None if inconsistent."""
    aug = hstack([A, B])
    R, pivots = rref(aug)
    pivots_a = [c for c in pivots if c < A.n]
    if len(pivots_a) != len(pivots):
        return None  # pivot in the B block: inconsistent
    field = A.field
    if field.p is not None and R._np is not None:
        X = np.zeros((A.n, B.n), dtype=np.int64)
        if pivots_a:
            X[pivots_a] = R._np[:len(pivots_a), A.n:]
        return Matrix._from_np(field, X)
    z = field.zero()
    X = [[z] * B.n for _ in range(A.n)]
    for i, pc in enumerate(pivots_a):
        for j in range(B.n):
            X[pc][j] = R.rows[i][A.n + j]
    return Matrix(field, X, (A.n, B.n))


def inverse(A):
    if A.m != A.n:
        raise ValueError("not square")
    aug = hstack([A, Matrix.identity(A.field, A.n)])
    R, pivots = rref(aug)
    if pivots != list(range(A.n)):
        raise ValueError("matrix is singular")
    return Matrix(A.field, [row[A.n:] for row in R.rows], (A.n, A.n))


def sum_subspaces(dim, field, mats):
    """Basis of U_1 + ... + U_k inside the ambient space of dimension dim."""
    mats = [a for a in mats if a.n > 0]
    if not mats:
        return Matrix.zeros(field, dim, 0)
    return image(hstack(mats))


def intersect_subspaces(U, W):
    """Basis of U cap W; both are column-span matrices over the same space."""
    if U.n == 0 or W.n == 0:
        return Matrix.zeros(U.field, U.m, 0)
    K = kernel(hstack([U, -W]))
    top = Matrix(U.field, U.rows, (U.m, U.n))
    coeffs = Matrix(U.field, [K.rows[i] for i in range(U.n)], (U.n, K.n))
    return image(top @ coeffs)


def preimage(A, U):
    """Basis of {x : Ax in U}."""
    Q, _ = quotient_map(A.field, A.m, U)
    return kernel(Q @ A)


def quotient_map(field, dim, U):
    """Projection Q and section S for the quotient k^dim / span(U).

    Q is (q x dim), S is (dim x q), with Q @ S = I and Q @ U = 0.
    The quotient coordinates are the non-pivot coordinates of a reduced
    echelon basis of span(U), so no matrix inversion is needed.
    """
    ech = EchelonBasis(field, dim)
    ech.insert_block(U)
    epivots, erows = ech.echelon_data()
    pivset = set(epivots)
    comp = [j for j in range(dim) if j not in pivset]
    z, o = field.zero(), field.one()
    rows = []
    for c in comp:
        row = [z] * dim
        row[c] = o
        for i, p in enumerate(epivots):
            x = -erows[i][c]
            row[p] = x % field.p if field.p is not None else x
        rows.append(row)
    Q = Matrix(field, rows, (len(comp), dim))
    S = Matrix.from_cols(field, [[o if i == j else z for i in range(dim)]
                                 for j in comp], dim)
    return Q, S


def in_subspace(U, vec):
    field = U.field
    B = Matrix.from_cols(field, [vec], U.m)
    if U.n == 0:
        return B.is_zero()
    return solve(U, B) is not None


def subspace_op(kind, *args, **kwargs):
    """Single entry point for the subspace operations; delegates by name."""
    ops = {
        "kernel": kernel,
        "image": image,
        "sum": sum_subspaces,
        "intersection": intersect_subspaces,
        "preimage": preimage,
        "quotient_map": quotient_map,
    }
    if kind not in ops:
        raise ValueError("unknown subspace operation %r" % (kind,))
    return ops[kind](*args, **kwargs)


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of column vectors.

    The reduced echelon basis of a span is canonical, so the resulting basis
    does not depend on insertion order.  Over a prime field the basis rows
    live in a growable int64 numpy array and reduction is vectorized; over Q
    they are plain lists of exact rationals.
    """

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.pivots = []
        self._fast = field.p is not None and _np_exact(field.p, dim)
        if self._fast:
            self._arr = np.zeros((16, dim), dtype=np.int64)
            self._len = 0
        else:
            self.rows = []     # vectors, each with leading 1 at .pivots[i]

    def _reduce_np(self, v):
        if self._len:
            coeff = v[self.pivots]
            if np.any(coeff):
                v = (v - coeff @ self._arr[:self._len]) % self.field.p
        return v

    def _append_np(self, v, piv):
        p = self.field.p
        piv_val = int(v[piv])
        if piv_val != 1:
            v = (v * pow(piv_val, -1, p)) % p
        R = self._arr[:self._len]
        col = R[:, piv].copy()
        if np.any(col):
            R -= np.outer(col, v)
            R %= p
        if self._len == self._arr.shape[0]:
            grown = np.zeros((max(2 * self._len, 16), self.dim), dtype=np.int64)
            grown[:self._len] = self._arr[:self._len]
            self._arr = grown
        self._arr[self._len] = v
        self._len += 1
        self.pivots.append(piv)

    def reduce(self, vec):
        p = self.field.p
        if self._fast:
            v = np.asarray(vec, dtype=np.int64) % p
            return self._reduce_np(v).tolist()
        v = list(vec)
        for pv, bv in zip(self.pivots, self.rows):
            f = v[pv]
            if f != 0:
                if p is not None:
                    v = [(x - f * y) % p for x, y in zip(v, bv)]
                else:
                    v = [x - f * y for x, y in zip(v, bv)]
        return v

    def insert(self, vec):
        """Insert a vector; returns True if it enlarged the span."""
        p = self.field.p
        if self._fast:
            v = self._reduce_np(np.asarray(vec, dtype=np.int64) % p)
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            self._append_np(v, int(nz[0]))
            return True
        v = self.reduce(vec)
        piv = None
        for i, x in enumerate(v):
            if x != 0:
                piv = i
                break
        if piv is None:
            return False
        inv = self.field.inv(v[piv])
        if p is not None:
            v = [(x * inv) % p for x in v]
        else:
            v = [x * inv for x in v]
        # back-reduce existing rows against the new one
        for i, bv in enumerate(self.rows):
            f = bv[piv]
            if f != 0:
                if p is not None:
                    self.rows[i] = [(x - f * y) % p for x, y in zip(bv, v)]
                else:
                    self.rows[i] = [x - f * y for x, y in zip(bv, v)]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.pivots.insert(at, piv)
        self.rows.insert(at, v)
        return True

    def insert_block(self, mat):
        """Insert every column of a Matrix; returns how many enlarged the span.

        Over a prime field the whole block is reduced against the current
        basis with one matrix product before the per-column inserts, which
        is much faster when most columns are already in the span.
        """
        if self._fast and mat.n:
            p = self.field.p
            A = mat._as_np() % p
            if self._len:
                coeff = A[self.pivots, :]
                if np.any(coeff):
                    A = (A - self._arr[:self._len].T @ coeff) % p
            added = 0
            for j in np.nonzero(A.any(axis=0))[0]:
                v = self._reduce_np(A[:, j])
                nz = np.nonzero(v)[0]
                if nz.size == 0:
                    continue
                self._append_np(v, int(nz[0]))
                added += 1
            return added
        added = 0
        for c in mat.cols():
            if self.insert(c):
                added += 1
        return added

    def contains(self, vec):
        if self._fast:
            v = np.asarray(vec, dtype=np.int64) % self.field.p
            return not np.any(self._reduce_np(v))
        return all(x == 0 for x in self.reduce(vec))

    def clone(self):
        other = EchelonBasis(self.field, self.dim)
        other.pivots = list(self.pivots)
        if self._fast:
            other._arr = self._arr[:self._len].copy()
            other._len = self._len
        else:
            other.rows = [list(r) for r in self.rows]
        return other

    def _order(self):
        return sorted(range(self._len), key=lambda i: self.pivots[i])

    def echelon_data(self):
        """(pivot list, row list) of the basis, sorted by pivot column."""
        if self._fast:
            order = self._order()
            return ([self.pivots[i] for i in order],
                    [self._arr[i].tolist() for i in order])
        return list(self.pivots), [list(r) for r in self.rows]

    def basis_matrix(self):
        if self._fast:
            arr = self._arr[self._order()].T if self._len else \
                np.zeros((self.dim, 0), dtype=np.int64)
            return Matrix._from_np(self.field, np.ascontiguousarray(arr))
        return Matrix.from_cols(self.field, self.rows, self.dim)

    @property
    def rank(self):
        return self._len if self._fast else len(self.rows)


def invariant_span(field, dim, operators, seed_vectors, cap=None):
    """Smallest subspace containing the seeds and stable under the operators.

    Worklist saturation: every vector that enlarges the span gets all
    operators applied to it in turn.  With a cap, gives up and returns None
    as soon as the rank exceeds it (used to prune searches for a smallest
    stable subspace).
    """
    ech = EchelonBasis(field, dim)
    work = [list(v) for v in seed_vectors]
    while work:
        v = work.pop()
        if not ech.insert(v):
            continue
        if cap is not None and ech.rank > cap:
            return None
        for op in operators:
            work.append(op.apply(v))
    return ech.basis_matrix()


# ---------------------------------------------------------------------------
# Integer lattices: Hermite normal form (generators given as rows)


def hnf(rows):
    """Canonical Hermite normal form of the lattice spanned by the rows.

    Returns a tuple of nonzero row tuples; pivots positive, entries above a
    pivot reduced into [0, pivot).  Two integer generator lists span the same
    lattice iff their forms are equal.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    n = len(work[0])
    if any(len(r) != n for r in work):
        raise ValueError("ragged integer matrix")
    basis = []  # echelon rows with pivot columns strictly increasing
    r = 0
    cols = n
    work = [list(map(int, row)) for row in work]
    # integer row echelon via repeated gcd elimination, column by column
    rows_left = work
    c = 0
    while c < cols and rows_left:
        nonzero = [row for row in rows_left if row[c] != 0]
        zero = [row for row in rows_left if row[c] == 0]
        if not nonzero:
            c += 1
            continue
        while len(nonzero) > 1:
            nonzero.sort(key=lambda row: abs(row[c]))
            piv = nonzero[0]
            rest = []
            for row in nonzero[1:]:
                q = row[c] // piv[c]
                row = [a - q * b for a, b in zip(row, piv)]
                if row[c] != 0:
                    rest.append(row)
                elif any(row):
                    zero.append(row)
            nonzero = [piv] + rest
        piv = nonzero[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows_left = zero
        c += 1
    # reduce entries above each pivot
    for i in reversed(range(len(basis))):
        pc = next(j for j, x in enumerate(basis[i]) if x != 0)
        pv = basis[i][pc]
        for k in range(i):
            q = basis[k][pc] // pv
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return tuple(tuple(r) for r in basis)


def lattice_rank(rows):
    return len(hnf(rows))


def lattice_equal(rows_a, rows_b):
    return hnf(rows_a) == hnf(rows_b)


def lattice_contains(form, vec):
    """Membership of an integer vector in a lattice given by its HNF rows."""
    v = list(map(int, vec))
    for row in form:
        pc = next(j for j, x in enumerate(row) if x != 0)
        if v[pc] % row[pc] != 0:
            return False
        q = v[pc] // row[pc]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)
