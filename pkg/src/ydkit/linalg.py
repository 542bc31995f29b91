"""Dense exact linear algebra over cyclotomic scalars.

Matrices act on column coordinate vectors (plain Python lists of CycNumber);
the tensor index convention everywhere is e_i (x) f_j  ->  i * dim_f + j.
Echelon forms are fully reduced with pivot 1, which makes Subspace bases
canonical: equal spans have identical basis matrices.
"""

from .cyclo import CycField
from .errors import AmbientMismatch


class Mat:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            ncols = len(self.rows[0])
            for r in self.rows:
                assert len(r) == ncols
        self.ncols = 0 if ncols is None else ncols

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    def copy(self):
        return Mat(self.field, self.rows, ncols=self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols})"

    def transpose(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Mat(self.field, rows, ncols=self.nrows)

    def __add__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Mat(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Mat(
            self.field,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def scale(self, s):
        return Mat(self.field, [[a * s for a in r] for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other):
        assert self.ncols == other.nrows, (self.ncols, other.nrows)
        bt = other.transpose().rows
        zero = self.field.zero
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(self.field, out, ncols=other.ncols)

    def matvec(self, v):
        assert len(v) == self.ncols
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def kron(self, other):
        """Kronecker product in the e_i (x) f_j -> i*dim_f + j ordering."""
        zero = self.field.zero
        out = []
        for ra in self.rows:
            for rb in other.rows:
                row = []
                for a in ra:
                    if a:
                        row.extend(a * b if b else zero for b in rb)
                    else:
                        row.extend([zero] * other.ncols)
                out.append(row)
        return Mat(self.field, out, ncols=self.ncols * other.ncols)

    def rref(self):
        """Canonical reduced row echelon form; returns (Mat, pivot columns).

        Pivot rows are chosen by least coordinate height to keep the
        rationals small.
        """
        rows = [list(r) for r in self.rows]
        nrows, ncols = self.nrows, self.ncols
        piv = 0
        pivots = []
        for col in range(ncols):
            best = None
            best_h = None
            for r in range(piv, nrows):
                x = rows[r][col]
                if x:
                    h = x.height()
                    if best is None or h < best_h:
                        best, best_h = r, h
                        if h == 1:
                            break
            if best is None:
                continue
            rows[piv], rows[best] = rows[best], rows[piv]
            prow = rows[piv]
            inv = prow[col].inverse()
            if not (inv == 1):
                rows[piv] = prow = [x * inv if x else x for x in prow]
            for r in range(nrows):
                if r != piv:
                    f = rows[r][col]
                    if f:
                        rr = rows[r]
                        rows[r] = [a - f * b if b else a for a, b in zip(rr, prow)]
            pivots.append(col)
            piv += 1
        return Mat(self.field, [rows[i] for i in range(piv)], ncols=ncols), pivots

    def rank(self):
        return self.rref()[0].nrows

    def kernel(self):
        """{v : M v = 0} with canonical basis."""
        red, pivots = self.rref()
        ncols = self.ncols
        free = [j for j in range(ncols) if j not in pivots]
        zero, one = self.field.zero, self.field.one
        basis = []
        for j in free:
            v = [zero] * ncols
            v[j] = one
            for r, p in enumerate(pivots):
                c = red.rows[r][j]
                if c:
                    v[p] = -c
            basis.append(v)
        return Subspace.from_spanning(self.field, ncols, basis)

    def solve(self, b):
        """Any exact solution of M x = b, or None when b is not in the image."""
        assert len(b) == self.nrows
        aug = Mat(self.field, [r + [bv] for r, bv in zip(self.rows, b)], ncols=self.ncols + 1)
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [self.field.zero] * self.ncols
        for r, p in enumerate(pivots):
            x[p] = red.rows[r][self.ncols]
        return x

    def solve_many(self, bs):
        """Solve M x = b for several right-hand sides at once; None entries
        mark inconsistent columns."""
        k = len(bs)
        aug_rows = [list(r) + [bv[i] for bv in bs] for i, r in enumerate(self.rows)]
        aug = Mat(self.field, aug_rows, ncols=self.ncols + k)
        red, pivots = aug.rref()
        outs = []
        for t in range(k):
            col = self.ncols + t
            if col in pivots:
                outs.append(None)
                continue
            ok = True
            x = [self.field.zero] * self.ncols
            for r, p in enumerate(pivots):
                if p < self.ncols:
                    x[p] = red.rows[r][col]
                elif red.rows[r][col]:
                    ok = False
                    break
            outs.append(x if ok else None)
        return outs

    def det(self):
        assert self.nrows == self.ncols
        rows = [list(r) for r in self.rows]
        n = self.nrows
        acc = self.field.one
        sign = 1
        for col in range(n):
            sel = None
            for r in range(col, n):
                if rows[r][col]:
                    sel = r
                    break
            if sel is None:
                return self.field.zero
            if sel != col:
                rows[col], rows[sel] = rows[sel], rows[col]
                sign = -sign
            pv = rows[col][col]
            acc = acc * pv
            inv = pv.inverse()
            for r in range(col + 1, n):
                f = rows[r][col]
                if f:
                    f = f * inv
                    rows[r] = [a - f * b if b else a for a, b in zip(rows[r], rows[col])]
        return acc if sign == 1 else -acc

    def inverse(self):
        assert self.nrows == self.ncols
        n = self.nrows
        ident = Mat.identity(self.field, n)
        aug = Mat(self.field, [r + i for r, i in zip(self.rows, ident.rows)], ncols=2 * n)
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            return None
        return Mat(self.field, [r[n:] for r in red.rows], ncols=n)

    def is_invertible(self):
        return bool(self.det())


class Subspace:
    """Subspace of k^ambient_dim with a canonical reduced-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "_pivots")

    def __init__(self, field, ambient_dim, basis_mat, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis_mat
        self._pivots = pivots

    @classmethod
    def from_spanning(cls, field, ambient_dim, vectors):
        m = Mat(field, list(vectors), ncols=ambient_dim)
        red, pivots = m.rref()
        return cls(field, ambient_dim, red, pivots)

    @classmethod
    def full(cls, field, ambient_dim):
        ident = Mat.identity(field, ambient_dim)
        return cls(field, ambient_dim, ident, list(range(ambient_dim)))

    @property
    def dim(self):
        return self.basis.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def sort_key(self):
        return (
            self.dim,
            tuple(tuple(x.sort_key() for x in row) for row in self.basis.rows),
        )

    def express(self, v):
        """Coordinates of v in the canonical basis, or None if v is outside."""
        assert len(v) == self.ambient_dim
        coords = []
        resid = list(v)
        for row, p in zip(self.basis.rows, self._pivots):
            c = resid[p]
            coords.append(c)
            if c:
                resid = [a - c * b if b else a for a, b in zip(resid, row)]
        if any(resid):
            return None
        return coords

    def residual(self, v):
        """v minus its projection onto the pivot-coordinate section."""
        resid = list(v)
        for row, p in zip(self.basis.rows, self._pivots):
            c = resid[p]
            if c:
                resid = [a - c * b if b else a for a, b in zip(resid, row)]
        return resid

    def contains_vector(self, v):
        return self.express(v) is not None

    def contains(self, other):
        if isinstance(other, Subspace):
            if other.ambient_dim != self.ambient_dim:
                raise AmbientMismatch()
            return all(self.contains_vector(r) for r in other.basis.rows)
        return self.contains_vector(other)

    def lift(self, coords):
        """Ambient vector with the given coordinates in the canonical basis."""
        assert len(coords) == self.dim
        out = [self.field.zero] * self.ambient_dim
        for c, row in zip(coords, self.basis.rows):
            if c:
                out = [a + c * b if b else a for a, b in zip(out, row)]
        return out

    def add(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch()
        return Subspace.from_spanning(
            self.field, self.ambient_dim, self.basis.rows + other.basis.rows
        )

    def intersect(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch()
        if self.dim == 0 or other.dim == 0:
            return Subspace.from_spanning(self.field, self.ambient_dim, [])
        # solutions (a, b) of a . U = b . V, read off the U-combination
        u, v = self.basis.rows, other.basis.rows
        cols = len(u) + len(v)
        rows = []
        for d in range(self.ambient_dim):
            rows.append([u[i][d] for i in range(len(u))] + [-v[j][d] for j in range(len(v))])
        ker = Mat(self.field, rows, ncols=cols).kernel()
        vecs = []
        for kv in ker.basis.rows:
            vec = [self.field.zero] * self.ambient_dim
            for i in range(len(u)):
                c = kv[i]
                if c:
                    vec = [a + c * b if b else a for a, b in zip(vec, u[i])]
            vecs.append(vec)
        return Subspace.from_spanning(self.field, self.ambient_dim, vecs)


def subspace_ops(u, v, op):
    if op == "intersect":
        return u.intersect(v)
    if op == "sum":
        return u.add(v)
    if op == "contains":
        if u.ambient_dim != v.ambient_dim:
            raise AmbientMismatch()
        return u.contains(v)
    raise ValueError(f"unknown op {op!r}")


def zero_vector(field, n):
    return [field.zero] * n


def basis_vector(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return v


def stack(mats):
    field = mats[0].field
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        assert m.ncols == ncols
        rows.extend(m.rows)
    return Mat(field, rows, ncols=ncols)
