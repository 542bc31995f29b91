"""Finite-dimensional Hopf algebras as structure-constant bundles.

Conventions, used consistently by every module downstream:

* mult[i][j] is the coordinate vector of e_i * e_j;
* comult[k] is the dense length dim^2 vector of Delta(e_k), with the tensor
  index (i, j) flattened as i * dim + j;
* the antipode matrix acts on column coordinate vectors: S(e_j) has
  coordinates antipode[:, j];
* counit is the list of values eps(e_i).

Axiom sweeps are exhaustive over basis tuples, never sampled.
"""

from .algebra import FinAlgebra, radical
from .cyclo import DEFAULT_MAX_DEN, CycField
from .errors import NonSemisimple
from .linalg import Mat, Subspace, basis_vector, stack, zero_vector


class HopfAlgebra:
    def __init__(self, field, mult, comult, unit, counit, antipode, names=None):
        self.field = field
        self.dim = len(mult)
        self.mult = mult
        self.comult = comult
        self.unit = list(unit)
        self.counit = list(counit)
        self.antipode = antipode
        self.names = names or [f"e{i}" for i in range(self.dim)]
        self._delta_nz = None
        self._mult_nz = None
        self._algebra = None
        self._dual = None

    # -- caches ------------------------------------------------------------

    def delta_nz(self, k):
        if self._delta_nz is None:
            self._delta_nz = [None] * self.dim
        if self._delta_nz[k] is None:
            dim = self.dim
            self._delta_nz[k] = [
                (t // dim, t % dim, c) for t, c in enumerate(self.comult[k]) if c
            ]
        return self._delta_nz[k]

    def as_algebra(self):
        if self._algebra is None:
            self._algebra = FinAlgebra(
                self.field, self.mult, self.unit, names=self.names, check=False
            )
        return self._algebra

    # -- basic operations ---------------------------------------------------

    def mul(self, u, v):
        return self.as_algebra().mul(u, v)

    def mul_tensor(self, legs, x, y):
        """Product in the tensor-power algebra H^(x legs), dense coordinates."""
        dim = self.dim
        zero = self.field.zero
        out = [zero] * (dim**legs)
        xs = [(idx, c) for idx, c in enumerate(x) if c]
        ys = [(idx, c) for idx, c in enumerate(y) if c]
        for ix, cx in xs:
            ixd = []
            r = ix
            for _ in range(legs):
                ixd.append(r % dim)
                r //= dim
            ixd.reverse()
            for iy, cy in ys:
                iyd = []
                r = iy
                for _ in range(legs):
                    iyd.append(r % dim)
                    r //= dim
                iyd.reverse()
                coeff = cx * cy
                # accumulate the kron of per-leg products
                partial = [(0, coeff)]
                for leg in range(legs):
                    prod = self.mult[ixd[leg]][iyd[leg]]
                    nxt = []
                    for base, c in partial:
                        for k, p in enumerate(prod):
                            if p:
                                nxt.append((base * dim + k, c * p))
                    partial = nxt
                    if not partial:
                        break
                for idx, c in partial:
                    out[idx] = out[idx] + c
        return out

    def delta(self, v):
        dim = self.dim
        zero = self.field.zero
        out = [zero] * (dim * dim)
        for k, c in enumerate(v):
            if c:
                for t, d in enumerate(self.comult[k]):
                    if d:
                        out[t] = out[t] + c * d
        return out

    def counit_of(self, v):
        acc = self.field.zero
        for c, e in zip(v, self.counit):
            if c and e:
                acc = acc + c * e
        return acc

    def antipode_of(self, v):
        return self.antipode.matvec(v)

    def left_mult(self, v):
        return self.as_algebra().left_mult(v)

    def right_mult(self, v):
        return self.as_algebra().right_mult(v)

    def tensor_unit(self, legs):
        out = zero_vector(self.field, self.dim**legs)
        units = [(0, self.field.one)]
        for _ in range(legs):
            nxt = []
            for base, c in units:
                for k, u in enumerate(self.unit):
                    if u:
                        nxt.append((base * self.dim + k, c * u))
            units = nxt
        for idx, c in units:
            out[idx] = c
        return out

    def __eq__(self, other):
        return (
            isinstance(other, HopfAlgebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.mult == other.mult
            and self.comult == other.comult
            and self.unit == other.unit
            and self.counit == other.counit
            and self.antipode == other.antipode
        )

    def __repr__(self):
        return f"HopfAlgebra(dim {self.dim} over Q(zeta_{self.field.n}))"

    # -- dual ---------------------------------------------------------------

    def dual(self):
        if self._dual is not None:
            return self._dual
        dim = self.dim
        field = self.field
        mult = [
            [
                [self.comult[k][i * dim + j] for k in range(dim)]
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        comult = []
        for k in range(dim):
            vec = zero_vector(field, dim * dim)
            for i in range(dim):
                for j in range(dim):
                    c = self.mult[i][j][k]
                    if c:
                        vec[i * dim + j] = c
            comult.append(vec)
        dualH = HopfAlgebra(
            field,
            mult,
            comult,
            unit=list(self.counit),
            counit=list(self.unit),
            antipode=self.antipode.transpose(),
            names=[n + "*" for n in self.names],
        )
        self._dual = dualH
        return dualH


def dual(h):
    return h.dual()


# ---------------------------------------------------------------------------
# harpoon actions


def hit_left(h, f, v):
    """f -> v = sum v_(1) <f, v_(2)>, an element of H."""
    dim = h.dim
    out = zero_vector(h.field, dim)
    for k, c in enumerate(v):
        if c:
            for i, j, d in h.delta_nz(k):
                fj = f[j]
                if fj:
                    out[i] = out[i] + c * d * fj
    return out


def hit_right(h, v, f):
    """v <- f = sum <f, v_(1)> v_(2), an element of H."""
    dim = h.dim
    out = zero_vector(h.field, dim)
    for k, c in enumerate(v):
        if c:
            for i, j, d in h.delta_nz(k):
                fi = f[i]
                if fi:
                    out[j] = out[j] + c * d * fi
    return out


def dual_hit_left(h, v, f):
    """v -> f in H*, defined by <v -> f, a> = <f, a v>."""
    out = []
    for t in range(h.dim):
        av = h.mul(basis_vector(h.field, h.dim, t), v)
        acc = h.field.zero
        for c, fv in zip(av, f):
            if c and fv:
                acc = acc + c * fv
        out.append(acc)
    return out


def dual_hit_right(h, f, v):
    """f <- v in H*, defined by <f <- v, a> = <f, v a>."""
    out = []
    for t in range(h.dim):
        va = h.mul(v, basis_vector(h.field, h.dim, t))
        acc = h.field.zero
        for c, fv in zip(va, f):
            if c and fv:
                acc = acc + c * fv
        out.append(acc)
    return out


def adjoint_matrix(h, v):
    """Matrix of a -> sum v_(1) a S(v_(2)) (left adjoint action of v)."""
    out = Mat.zero(h.field, h.dim, h.dim)
    for k, c in enumerate(v):
        if c:
            for i, j, d in h.delta_nz(k):
                li = h.left_mult(basis_vector(h.field, h.dim, i))
                sj = h.antipode_of(basis_vector(h.field, h.dim, j))
                rj = h.right_mult(sj)
                out = out + (li @ rj).scale(c * d)
    return out


def coadjoint(h, f, v):
    """f <-<- v in H*: <f <-<- v, a> = <f, v .ad a>."""
    ad = adjoint_matrix(h, v)
    out = []
    for t in range(h.dim):
        col = [ad.rows[s][t] for s in range(h.dim)]
        acc = h.field.zero
        for c, fv in zip(col, f):
            if c and fv:
                acc = acc + c * fv
        out.append(acc)
    return out


def harpoons(h, f, v, mode):
    """Spec-surface dispatcher for the hit actions."""
    if mode == "left_hit":
        return hit_left(h, f, v)
    if mode == "right_hit":
        return hit_right(h, v, f)
    if mode == "coadjoint":
        return coadjoint(h, f, v)
    raise ValueError(f"unknown harpoon mode {mode!r}")


# ---------------------------------------------------------------------------
# verification report


class Report:
    def __init__(self, title):
        self.title = title
        self.entries = []
        self.flags = {}

    def add(self, name, ok, witness=None):
        self.entries.append((name, bool(ok), witness))

    def skip(self, name, reason):
        self.entries.append((name, None, reason))

    @property
    def ok(self):
        return all(ok is not False for _, ok, _ in self.entries)

    def failing(self):
        return [(n, w) for n, ok, w in self.entries if ok is False]

    def lines(self):
        out = [self.title]
        for name, ok, witness in self.entries:
            if ok is None:
                out.append(f"  [skip] {name}: {witness}")
            elif ok:
                out.append(f"  [ok]   {name}")
            else:
                out.append(f"  [FAIL] {name}  witness={witness}")
        for key, val in self.flags.items():
            out.append(f"  flag   {key} = {val}")
        return out


def verify_hopf(h):
    """Exhaustive bialgebra + antipode axioms, plus structural flags."""
    report = Report(f"Hopf axioms (dim {h.dim})")
    field = h.field
    dim = h.dim

    witness = None
    for i in range(dim):
        ei = basis_vector(field, dim, i)
        if h.mul(h.unit, ei) != ei or h.mul(ei, h.unit) != ei:
            witness = (i,)
            break
    report.add("unit", witness is None, witness)

    witness = None
    for i in range(dim):
        if witness:
            break
        ei = basis_vector(field, dim, i)
        for j in range(dim):
            ij = h.mult[i][j]
            for k in range(dim):
                ek = basis_vector(field, dim, k)
                if h.mul(ij, ek) != h.mul(ei, h.mult[j][k]):
                    witness = (i, j, k)
                    break
            if witness:
                break
    report.add("associativity", witness is None, witness)

    witness = None
    for k in range(dim):
        dk = h.comult[k]
        left = zero_vector(field, dim**3)
        right = zero_vector(field, dim**3)
        for i, j, c in h.delta_nz(k):
            for a, b, d in h.delta_nz(i):
                idx = (a * dim + b) * dim + j
                left[idx] = left[idx] + c * d
            for a, b, d in h.delta_nz(j):
                idx = (i * dim + a) * dim + b
                right[idx] = right[idx] + c * d
        if left != right:
            witness = (k,)
            break
    report.add("coassociativity", witness is None, witness)

    witness = None
    for k in range(dim):
        lhs = zero_vector(field, dim)
        rhs = zero_vector(field, dim)
        for i, j, c in h.delta_nz(k):
            lhs[j] = lhs[j] + c * h.counit[i]
            rhs[i] = rhs[i] + c * h.counit[j]
        ek = basis_vector(field, dim, k)
        if lhs != ek or rhs != ek:
            witness = (k,)
            break
    report.add("counit", witness is None, witness)

    witness = None
    if h.counit_of(h.unit) != field.one:
        witness = ("unit",)
    else:
        for i in range(dim):
            for j in range(dim):
                if h.counit_of(h.mult[i][j]) != h.counit[i] * h.counit[j]:
                    witness = (i, j)
                    break
            if witness:
                break
    report.add("counit is an algebra map", witness is None, witness)

    witness = None
    if h.delta(h.unit) != h.tensor_unit(2):
        witness = ("unit",)
    else:
        for i in range(dim):
            di = h.delta(basis_vector(field, dim, i))
            for j in range(dim):
                dj = h.delta(basis_vector(field, dim, j))
                if h.delta(h.mult[i][j]) != h.mul_tensor(2, di, dj):
                    witness = (i, j)
                    break
            if witness:
                break
    report.add("comultiplication is an algebra map", witness is None, witness)

    witness = None
    for k in range(dim):
        target = [h.counit[k] * u for u in h.unit]
        lhs = zero_vector(field, dim)
        rhs = zero_vector(field, dim)
        for i, j, c in h.delta_nz(k):
            si = h.antipode_of(basis_vector(field, dim, i))
            sj = h.antipode_of(basis_vector(field, dim, j))
            ej = basis_vector(field, dim, j)
            ei = basis_vector(field, dim, i)
            lhs = [a + c * b for a, b in zip(lhs, h.mul(si, ej))]
            rhs = [a + c * b for a, b in zip(rhs, h.mul(ei, sj))]
        if lhs != target or rhs != target:
            witness = (k,)
            break
    report.add("antipode", witness is None, witness)

    s2 = h.antipode @ h.antipode
    report.flags["S^2 = id"] = s2 == Mat.identity(field, dim)
    report.flags["semisimple"] = radical(h.as_algebra()).dim == 0
    report.flags["cosemisimple"] = radical(h.dual().as_algebra()).dim == 0
    left = _integral_space(h, "left")
    right = _integral_space(h, "right")
    report.flags["unimodular"] = left == right
    hd = h.dual()
    report.flags["dual unimodular"] = _integral_space(hd, "left") == _integral_space(hd, "right")
    return report


def _integral_space(h, side):
    field = h.field
    dim = h.dim
    blocks = []
    ident = Mat.identity(field, dim)
    for i in range(dim):
        ei = basis_vector(field, dim, i)
        m = h.left_mult(ei) if side == "left" else h.right_mult(ei)
        blocks.append(m - ident.scale(h.counit[i]))
    return stack(blocks).kernel()


class IntegralData:
    """Two-sided normalized integrals and the distinguished grouplikes.

    Lambda is the left integral of H with eps(Lambda) = 1; lam is the right
    integral of H* with <lam, 1> = 1.  alpha is the covector with
    Lambda * h = <alpha, h> Lambda; dist_element the vector a in H with
    f * lam = <f, a> lam.
    """

    def __init__(self, Lambda, lam, unimodular, dual_unimodular, alpha, dist_element):
        self.Lambda = Lambda
        self.lam = lam
        self.unimodular = unimodular
        self.dual_unimodular = dual_unimodular
        self.alpha = alpha
        self.dist_element = dist_element


def integrals(h):
    field = h.field
    dim = h.dim
    left = _integral_space(h, "left")
    assert left.dim == 1, "left integral space must be one-dimensional"
    Lambda = left.basis.rows[0]
    eps_val = h.counit_of(Lambda)
    if not eps_val:
        raise NonSemisimple("eps(Lambda) = 0: H is not semisimple")
    inv = eps_val.inverse()
    Lambda = [c * inv for c in Lambda]

    hd = h.dual()
    right_dual = _integral_space(hd, "right")
    assert right_dual.dim == 1, "right integral space of H* must be one-dimensional"
    lam = right_dual.basis.rows[0]
    pairing = field.zero
    for c, u in zip(lam, h.unit):
        if c and u:
            pairing = pairing + c * u
    if not pairing:
        raise NonSemisimple("<lambda, 1> = 0: H is not cosemisimple")
    inv = pairing.inverse()
    lam = [c * inv for c in lam]

    unimodular = left == _integral_space(h, "right")
    dual_unimodular = right_dual == _integral_space(hd, "left")

    alpha = []
    lspan = Subspace.from_spanning(field, dim, [Lambda])
    lcoord = lspan.express(Lambda)[0]
    for i in range(dim):
        w = h.mul(Lambda, basis_vector(field, dim, i))
        coords = lspan.express(w)
        assert coords is not None, "Lambda H is not one-dimensional"
        alpha.append(coords[0] / lcoord)

    dist = []
    lamspan = Subspace.from_spanning(field, dim, [lam])
    lamcoord = lamspan.express(lam)[0]
    for t in range(dim):
        ft = basis_vector(field, dim, t)
        prod = hd.mul(ft, lam)
        coords = lamspan.express(prod)
        assert coords is not None
        dist.append(coords[0] / lamcoord)

    return IntegralData(Lambda, lam, unimodular, dual_unimodular, alpha, dist)


# ---------------------------------------------------------------------------
# grouplike elements


class GroupLikeElement:
    def __init__(self, coords, central=None):
        self.coords = coords
        self.central = central

    def __repr__(self):
        return f"GroupLikeElement({self.coords!r}, central={self.central})"


def grouplikes(field, comult, counit, ambient_mult=None, max_den=DEFAULT_MAX_DEN):
    """All g with Delta(g) = g (x) g and eps(g) = 1, found as the
    one-dimensional blocks of the dual algebra's Wedderburn decomposition."""
    from .algebra import central_primitive_idempotents

    dim = len(comult)
    dual_mult = [
        [[comult[k][i * dim + j] for k in range(dim)] for j in range(dim)]
        for i in range(dim)
    ]
    dual_alg = FinAlgebra(field, dual_mult, list(counit), check=False)
    idems = central_primitive_idempotents(dual_alg, max_den=max_den)
    found = []
    for e in idems:
        block = [dual_alg.mul(basis_vector(field, dim, t), e) for t in range(dim)]
        block_space = Subspace.from_spanning(field, dim, block)
        if block_space.dim != 1:
            continue
        espan = Subspace.from_spanning(field, dim, [e])
        g = []
        ok = True
        for t in range(dim):
            coords = espan.express(dual_alg.mul(basis_vector(field, dim, t), e))
            if coords is None:
                ok = False
                break
            g.append(coords[0])
        assert ok
        # certify exactly
        gg = zero_vector(field, dim * dim)
        for i, a in enumerate(g):
            if a:
                for j, b in enumerate(g):
                    if b:
                        gg[i * dim + j] = a * b
        dg = zero_vector(field, dim * dim)
        for k, c in enumerate(g):
            if c:
                for t, d in enumerate(comult[k]):
                    if d:
                        dg[t] = dg[t] + c * d
        assert dg == gg, "grouplike certification failed"
        eps = field.zero
        for c, e2 in zip(g, counit):
            if c and e2:
                eps = eps + c * e2
        assert eps == field.one
        central = None
        if ambient_mult is not None:
            central = _is_central(field, ambient_mult, g)
        found.append(GroupLikeElement(g, central))
    found.sort(key=lambda gl: tuple(x.sort_key() for x in gl.coords))
    return found


def _is_central(field, mult, g):
    dim = len(mult)
    for i in range(dim):
        left = zero_vector(field, dim)
        right = zero_vector(field, dim)
        for k, c in enumerate(g):
            if c:
                for t, d in enumerate(mult[k][i]):
                    if d:
                        left[t] = left[t] + c * d
                for t, d in enumerate(mult[i][k]):
                    if d:
                        right[t] = right[t] + c * d
        if left != right:
            return False
    return True


def grouplikes_of(h, ambient=True, max_den=DEFAULT_MAX_DEN):
    return grouplikes(
        h.field,
        h.comult,
        h.counit,
        ambient_mult=h.mult if ambient else None,
        max_den=max_den,
    )
