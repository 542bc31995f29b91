"""Decomposition machinery for finite-dimensional associative algebras and
their modules over an exact cyclotomic field.

The splitting strategy is uniform: to break a module (or any space carried
by a family of operators) into irreducibles, compute the commutant of the
operator family, take commutant elements one at a time, extract the in-field
eigenvalues of their minimal polynomials, and cut along the resulting
kernels.  Complements are produced by solving for an idempotent inside the
commutant, so semisimplicity is used but never assumed silently: when the
field refuses to produce an eigenvalue, FieldNotSplitting is raised and the
caller is expected to move to a larger cyclotomic field.
"""

import random

from .cyclo import DEFAULT_MAX_DEN, certified_roots, poly_trim
from .errors import FieldNotSplitting
from .linalg import Mat, Subspace, basis_vector, stack


class FinAlgebra:
    """Associative unital algebra by structure constants.

    mult[i][j] is the coordinate vector of b_i * b_j.
    """

    def __init__(self, field, mult, unit, names=None, check=True):
        self.field = field
        self.dim = len(mult)
        self.mult = mult
        self.unit = list(unit)
        self.names = names or [f"b{i}" for i in range(self.dim)]
        if check:
            self.check()

    def check(self):
        dim = self.dim
        for i in range(dim):
            ei = basis_vector(self.field, dim, i)
            assert self.mul(self.unit, ei) == ei, f"unit fails on left of b{i}"
            assert self.mul(ei, self.unit) == ei, f"unit fails on right of b{i}"
        for i in range(dim):
            for j in range(dim):
                ij = self.mult[i][j]
                for k in range(dim):
                    left = self.mul(ij, basis_vector(self.field, dim, k))
                    right = self.mul(
                        basis_vector(self.field, dim, i), self.mult[j][k]
                    )
                    assert left == right, f"associativity fails at ({i},{j},{k})"

    def mul(self, u, v):
        zero = self.field.zero
        out = [zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                prod = row[j]
                for k, p in enumerate(prod):
                    if p:
                        out[k] = out[k] + c * p
        return out

    def left_mult(self, v):
        """Matrix of x -> v * x."""
        cols = [self.mul(v, basis_vector(self.field, self.dim, j)) for j in range(self.dim)]
        return Mat(self.field, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def right_mult(self, v):
        """Matrix of x -> x * v."""
        cols = [self.mul(basis_vector(self.field, self.dim, j), v) for j in range(self.dim)]
        return Mat(self.field, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def is_commutative(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.mult[i][j] != self.mult[j][i]:
                    return False
        return True

    def regular_module(self, side="right"):
        if side == "left":
            action = [self.left_mult(basis_vector(self.field, self.dim, i)) for i in range(self.dim)]
        else:
            action = [self.right_mult(basis_vector(self.field, self.dim, i)) for i in range(self.dim)]
        return AlgModule(self, self.dim, action, side=side)

    def opposite(self):
        mult = [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return FinAlgebra(self.field, mult, self.unit, names=self.names, check=False)


class AlgModule:
    """Module over a FinAlgebra; action[i] is the matrix of b_i acting on
    column coordinate vectors (for either side)."""

    def __init__(self, algebra, dim, action, side="left", check=True):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        self.side = side
        if check:
            self.check()

    def act_matrix(self, v):
        """Matrix of the action of the algebra element v."""
        out = Mat.zero(self.algebra.field, self.dim, self.dim)
        for i, c in enumerate(v):
            if c:
                out = out + self.action[i].scale(c)
        return out

    def check(self):
        alg = self.algebra
        field = alg.field
        ident = Mat.identity(field, self.dim)
        assert self.act_matrix(alg.unit) == ident, "unit does not act as identity"
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = alg.mult[i][j] if self.side == "left" else alg.mult[j][i]
                lhs = self.action[i] @ self.action[j]
                assert lhs == self.act_matrix(prod), (
                    f"action not {self.side}-multiplicative at ({i},{j})"
                )

    def restrict(self, subspace):
        """Module structure on an action-stable subspace, in its canonical
        basis coordinates."""
        ops = restrict_operators(self.action, subspace)
        return AlgModule(self.algebra, subspace.dim, ops, side=self.side, check=False)


def restrict_operators(ops, subspace):
    out = []
    for op in ops:
        cols = []
        for row in subspace.basis.rows:
            img = op.matvec(row)
            coords = subspace.express(img)
            assert coords is not None, "subspace is not stable under the operators"
            cols.append(coords)
        out.append(
            Mat(subspace.field, [[cols[j][i] for j in range(subspace.dim)] for i in range(subspace.dim)])
        )
    return out


def radical(algebra):
    """Kernel of the trace form of the regular representation; zero exactly
    when the algebra is semisimple (characteristic zero)."""
    field = algebra.field
    dim = algebra.dim
    lmats = [algebra.left_mult(basis_vector(field, dim, i)) for i in range(dim)]
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            prod = lmats[i] @ lmats[j]
            tr = field.zero
            for t in range(dim):
                tr = tr + prod.rows[t][t]
            row.append(tr)
        rows.append(row)
    return Mat(field, rows).kernel()


def min_poly_of_matrix(mat):
    """Monic minimal polynomial of a square matrix, low degree first."""
    field = mat.field
    n = mat.nrows
    flat_len = n * n
    # incremental echelon with combination tracking
    rows = []  # (reduced residual, combination coeffs)
    power = Mat.identity(field, n)
    combos = []
    k = 0
    while True:
        vec = [power.rows[i][j] for i in range(n) for j in range(n)]
        combo = [field.zero] * (n + 2)
        combo[k] = field.one
        # reduce against current echelon
        for pivcol, rvec, rcombo in rows:
            c = vec[pivcol]
            if c:
                vec = [a - c * b if b else a for a, b in zip(vec, rvec)]
                combo = [a - c * b if b else a for a, b in zip(combo, rcombo)]
        piv = next((t for t, x in enumerate(vec) if x), None)
        if piv is None:
            poly = poly_trim(combo)
            lead = poly[-1]
            if not (lead == 1):
                inv = lead.inverse()
                poly = [c * inv for c in poly]
            return poly
        inv = vec[piv].inverse()
        vec = [x * inv for x in vec]
        combo = [x * inv for x in combo]
        rows.append((piv, vec, combo))
        power = power @ mat
        k += 1
        assert k <= n + 1


def commutant(field, ops, dim):
    """Matrices commuting with every operator: basis list of dim x dim Mats."""
    ident = Mat.identity(field, dim)
    blocks = []
    for op in ops:
        blocks.append(ident.kron(op.transpose()) - op.kron(ident))
    ker = stack(blocks).kernel() if blocks else Subspace.full(field, dim * dim)
    mats = []
    for row in ker.basis.rows:
        mats.append(Mat(field, [row[i * dim : (i + 1) * dim] for i in range(dim)]))
    return mats


def hom_space(m, n):
    """Intertwiners f with f . a = a . f between two modules over the same
    algebra and side; returned as a Subspace of flattened (dim_n x dim_m)
    matrices."""
    assert m.algebra is n.algebra and m.side == n.side
    field = m.algebra.field
    im = Mat.identity(field, n.dim)
    in_ = Mat.identity(field, m.dim)
    blocks = []
    for a, b in zip(m.action, n.action):
        blocks.append(im.kron(a.transpose()) - b.kron(in_))
    return stack(blocks).kernel()


def hom_mats(m, n):
    field = m.algebra.field
    return [
        Mat(field, [row[i * m.dim : (i + 1) * m.dim] for i in range(n.dim)])
        for row in hom_space(m, n).basis.rows
    ]


def modules_isomorphic(m, n):
    """For irreducible modules: nonzero intertwiner iff isomorphic; returns
    an invertible intertwiner matrix or None."""
    if m.dim != n.dim:
        return None
    for f in hom_mats(m, n):
        if f.is_invertible():
            return f
    return None


class _OperatorSplitter:
    def __init__(self, field, ops, seed, max_den):
        self.field = field
        self.ops = ops
        self.rng = random.Random(seed)
        self.max_den = max_den
        self.blocked = False

    def split_all(self, subspace):
        """Irreducible stable subspaces (of the ambient) whose sum is the
        given stable subspace."""
        if subspace.dim == 0:
            return []
        rops = restrict_operators(self.ops, subspace)
        comm = commutant(self.field, rops, subspace.dim)
        if len(comm) == 1:
            return [subspace]
        pieces = self._split_once(subspace, rops, comm)
        out = []
        for piece in pieces:
            out.extend(self.split_all(piece))
        return out

    def _candidates(self, comm, dim):
        for x in comm:
            yield x
        ident = Mat.identity(self.field, dim)
        for _ in range(24 + 4 * dim):
            acc = Mat.zero(self.field, dim, dim)
            for x in comm:
                c = self.rng.randint(-3, 3)
                if c:
                    acc = acc + x.scale(self.field.rat(c))
            yield acc

    def _split_once(self, subspace, rops, comm):
        dim = subspace.dim
        ident = Mat.identity(self.field, dim)
        saw_blocked = False
        for x in self._candidates(comm, dim):
            mp = min_poly_of_matrix(x)
            if len(mp) <= 2:
                continue
            roots, failed = certified_roots(mp, max_den=self.max_den)
            if not roots:
                saw_blocked = saw_blocked or failed
                continue
            local = []
            for r, mult in roots:
                shifted = x - ident.scale(r)
                piece = shifted
                for _ in range(mult - 1):
                    piece = piece @ shifted
                local.append(piece.kernel())
            covered = local[0]
            for sub in local[1:]:
                covered = covered.add(sub)
            if covered.dim < dim:
                comp = self._complement(covered, comm, dim)
                local.append(comp)
            if len(local) == 1:
                continue
            return [self._lift(subspace, piece) for piece in local]
        raise FieldNotSplitting(
            "no commutant element splits over this field"
            if saw_blocked
            else "splitting budget exhausted"
        )

    def _complement(self, sub_local, comm, dim):
        """Stable complement of a stable subspace, via an idempotent in the
        commutant with image exactly the subspace."""
        field = self.field
        cols = []
        rhs = []
        # unknowns: coefficients of commutant basis elements
        kbasis = sub_local.basis.rows
        for x in comm:
            colparts = []
            for kv in kbasis:
                colparts.extend(x.matvec(kv))
            for j in range(dim):
                img = x.matvec(basis_vector(field, dim, j))
                colparts.extend(sub_local.residual(img))
            cols.append(colparts)
        for kv in kbasis:
            rhs.extend(kv)
        rhs.extend([field.zero] * (dim * dim))
        sysmat = Mat(field, [[cols[t][r] for t in range(len(comm))] for r in range(len(rhs))])
        sol = sysmat.solve(rhs)
        assert sol is not None, "no idempotent projector; module not semisimple?"
        proj = Mat.zero(field, dim, dim)
        for c, x in zip(sol, comm):
            if c:
                proj = proj + x.scale(c)
        return proj.kernel()

    @staticmethod
    def _lift(subspace, local):
        vecs = [subspace.lift(coords) for coords in local.basis.rows]
        return Subspace.from_spanning(subspace.field, subspace.ambient_dim, vecs)


def decompose_under_operators(field, ops, seed=0, max_den=DEFAULT_MAX_DEN, within=None):
    """Split the ambient space (or a stable subspace of it) into irreducible
    subspaces under the given operator family; deterministic given seed."""
    dim = ops[0].nrows if ops else 0
    space = within if within is not None else Subspace.full(field, dim)
    splitter = _OperatorSplitter(field, ops, seed, max_den)
    pieces = splitter.split_all(space)
    return sorted(pieces, key=lambda s: s.sort_key())


def decompose_module(module, seed=0, max_den=DEFAULT_MAX_DEN):
    """Irreducible submodules whose direct sum is the module, each tagged
    with an isomorphism-class index."""
    field = module.algebra.field
    pieces = decompose_under_operators(field, module.action, seed=seed, max_den=max_den)
    assert sum(p.dim for p in pieces) == module.dim
    restricted = [module.restrict(p) for p in pieces]
    tags = [-1] * len(pieces)
    reps = []
    for idx, sub in enumerate(restricted):
        for tag, rep in enumerate(reps):
            if sub.dim == rep.dim and modules_isomorphic(rep, sub) is not None:
                tags[idx] = tag
                break
        if tags[idx] < 0:
            tags[idx] = len(reps)
            reps.append(sub)
    return list(zip(pieces, tags))


def central_primitive_idempotents(algebra, max_den=DEFAULT_MAX_DEN):
    """Complete orthogonal set of central primitive idempotents over the
    given field; raises FieldNotSplitting when the center won't split."""
    field = algebra.field
    dim = algebra.dim
    assert radical(algebra).dim == 0, "algebra is not semisimple"
    lmats = [algebra.left_mult(basis_vector(field, dim, i)) for i in range(dim)]
    rmats = [algebra.right_mult(basis_vector(field, dim, i)) for i in range(dim)]
    center = stack([l - r for l, r in zip(lmats, rmats)]).kernel()

    def block_split(unit_vec, basis_rows):
        blockdim = len(basis_rows)
        if blockdim == 1:
            return [unit_vec]
        sub = Subspace.from_spanning(field, dim, basis_rows)
        for bvec in sub.basis.rows:
            action = _mult_on_block(algebra, bvec, sub)
            mp = min_poly_of_matrix(action)
            if len(mp) <= 2:
                continue
            roots, failed = certified_roots(mp, max_den=max_den)
            if not roots:
                if failed:
                    raise FieldNotSplitting(
                        "center element's minimal polynomial has no in-field root"
                    )
                continue
            idems = []
            remainder = unit_vec
            for r, mult in roots:
                assert mult == 1, "center of a semisimple algebra must act semisimply"
                # e_r = q(z)/q(r) with q = minpoly / (x - r)
                q_of_z, q_of_r = _poly_quotient_eval(algebra, mp, bvec, r, unit_vec)
                inv = q_of_r.inverse()
                er = [c * inv for c in q_of_z]
                idems.append(er)
                remainder = [a - b for a, b in zip(remainder, er)]
            parts = []
            for er in idems:
                parts.append((er, _idempotent_block(algebra, er, sub)))
            if any(remainder):
                parts.append((remainder, _idempotent_block(algebra, remainder, sub)))
            out = []
            for er, rows in parts:
                out.extend(block_split(er, rows))
            return out
        raise FieldNotSplitting("center block admits no splitting element")

    result = block_split(algebra.unit, center.basis.rows)
    # exact sanity: orthogonal, sum to unit
    total = [field.zero] * dim
    for e in result:
        total = [a + b for a, b in zip(total, e)]
    assert total == algebra.unit
    for a in result:
        for b in result:
            prod = algebra.mul(a, b)
            assert prod == (a if a == b else [field.zero] * dim)
    return sorted(result, key=lambda v: tuple(x.sort_key() for x in v))


def _mult_on_block(algebra, vec, sub):
    cols = []
    for row in sub.basis.rows:
        img = algebra.mul(vec, row)
        coords = sub.express(img)
        assert coords is not None
        cols.append(coords)
    d = sub.dim
    return Mat(algebra.field, [[cols[j][i] for j in range(d)] for i in range(d)])


def _poly_quotient_eval(algebra, mp, z, r, unit_vec):
    """Evaluate q = mp/(x-r) at the algebra element z (Horner) and at the
    scalar r."""
    field = algebra.field
    # synthetic division by (x - r)
    q = [field.zero] * (len(mp) - 1)
    carry = mp[-1]
    for k in range(len(mp) - 2, -1, -1):
        q[k] = carry
        carry = mp[k] + carry * r
    assert not carry, "r is not a root"
    acc_elt = [field.zero] * algebra.dim
    acc_val = field.zero
    for c in reversed(q):
        acc_elt = algebra.mul(z, acc_elt)
        if c:
            acc_elt = [a + c * u for a, u in zip(acc_elt, unit_vec)]
        acc_val = acc_val * r + c
    return acc_elt, acc_val


def _idempotent_block(algebra, e, sub):
    rows = []
    seen = Subspace.from_spanning(algebra.field, algebra.dim, [])
    for row in sub.basis.rows:
        v = algebra.mul(e, row)
        if any(v) and not seen.contains_vector(v):
            rows.append(v)
            seen = seen.add(Subspace.from_spanning(algebra.field, algebra.dim, [v]))
    return rows
