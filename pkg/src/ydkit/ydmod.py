"""Classification of irreducible Yetter-Drinfeld modules over a verified
quasi-triangular Hopf algebra.

Pipeline: split H into its minimal adjoint-stable subcoalgebras (the
conjugacy blocks), pick one simple coideal W per block, form the stable
algebra N_W inside W* (x) H (x) W, enumerate its irreducible right modules,
and induce each one back to a Yetter-Drinfeld module.  Every theorem used
along the way is re-verified on the computed objects rather than assumed.

Coaction tensors are stored as matrices of shape (dim_H * dim_V, dim_V)
whose column j holds the coordinates of the coaction of the j-th basis
vector in the e_a (x) v_u -> a * dim_V + u flattening.
"""

from .algebra import (
    AlgModule,
    FinAlgebra,
    decompose_module,
    decompose_under_operators,
    restrict_operators,
)
from .cyclo import DEFAULT_MAX_DEN
from .errors import BlockMismatch, DimensionMismatch, QuotientIllFormed
from .hopf import Report
from .linalg import Mat, Subspace, basis_vector, stack, zero_vector


# ---------------------------------------------------------------------------
# Yetter-Drinfeld modules


class YDModule:
    def __init__(self, qt, dim, action, coaction, coaction_r):
        self.qt = qt
        self.dim = dim
        self.action = action  # one matrix per H basis element
        self.coaction = coaction  # plain coaction matrix
        self.coaction_r = coaction_r  # twisted coaction matrix

    @classmethod
    def from_braided(cls, qt, action, coaction_r):
        coaction = _coaction_from_braided(qt, action, coaction_r)
        return cls(qt, action[0].nrows if action else 0, action, coaction, coaction_r)

    @classmethod
    def from_plain(cls, qt, action, coaction):
        coaction_r = _coaction_to_braided(qt, action, coaction)
        return cls(qt, action[0].nrows if action else 0, action, coaction, coaction_r)

    def act(self, hvec, v):
        out = zero_vector(self.qt.field, self.dim)
        for i, c in enumerate(hvec):
            if c:
                img = self.action[i].matvec(v)
                out = [a + c * b if b else a for a, b in zip(out, img)]
        return out

    def coaction_operators(self, braided=False):
        """The family (f (x) id) o coaction over the dual basis f."""
        mat = self.coaction_r if braided else self.coaction
        dimh = self.qt.dim
        ops = []
        for t in range(dimh):
            rows = [
                [mat.rows[t * self.dim + u][j] for j in range(self.dim)]
                for u in range(self.dim)
            ]
            ops.append(Mat(self.qt.field, rows, ncols=self.dim))
        return ops

    def support(self, braided=True):
        """Span of the H legs of the coaction."""
        mat = self.coaction_r if braided else self.coaction
        field = self.qt.field
        dimh = self.qt.dim
        vecs = []
        for j in range(self.dim):
            for u in range(self.dim):
                vec = [mat.rows[a * self.dim + u][j] for a in range(dimh)]
                if any(vec):
                    vecs.append(vec)
        return Subspace.from_spanning(field, dimh, vecs)

    def verify(self):
        return verify_yd(self)

    def irreducible(self, seed=0, max_den=DEFAULT_MAX_DEN):
        ops = list(self.action) + self.coaction_operators()
        pieces = decompose_under_operators(self.qt.field, ops, seed=seed, max_den=max_den)
        return len(pieces) == 1

    def restricted_ops(self):
        return list(self.action) + self.coaction_operators()


def _coaction_from_braided(qt, action, coaction_r):
    """Plain coaction sum v^(-1) R^2 (x) R^1 v^(0) from the twisted one."""
    hopf = qt.hopf
    field = qt.field
    dimh = qt.dim
    dimv = action[0].nrows if action else 0
    cols = []
    for j in range(dimv):
        out = zero_vector(field, dimh * dimv)
        col = [coaction_r.rows[t][j] for t in range(dimh * dimv)]
        for t, c in enumerate(col):
            if not c:
                continue
            a, u = t // dimv, t % dimv
            for i, l, rc in qt.r_nz():
                left = hopf.mult[a][l]
                right = [action[i].rows[s][u] for s in range(dimv)]
                coeff = c * rc
                for p, lv in enumerate(left):
                    if lv:
                        base = p * dimv
                        clv = coeff * lv
                        for s, rv in enumerate(right):
                            if rv:
                                out[base + s] = out[base + s] + clv * rv
        cols.append(out)
    return Mat(field, [[cols[j][t] for j in range(dimv)] for t in range(dimh * dimv)])


def _coaction_to_braided(qt, action, coaction):
    """Twisted coaction sum v_(-1) S(R^2) (x) R^1 v_(0) from the plain one."""
    hopf = qt.hopf
    field = qt.field
    dimh = qt.dim
    dimv = action[0].nrows if action else 0
    s_cols = [hopf.antipode_of(basis_vector(field, dimh, l)) for l in range(dimh)]
    cols = []
    for j in range(dimv):
        out = zero_vector(field, dimh * dimv)
        col = [coaction.rows[t][j] for t in range(dimh * dimv)]
        for t, c in enumerate(col):
            if not c:
                continue
            a, u = t // dimv, t % dimv
            for i, l, rc in qt.r_nz():
                left = hopf.mul(basis_vector(field, dimh, a), s_cols[l])
                right = [action[i].rows[s][u] for s in range(dimv)]
                coeff = c * rc
                for p, lv in enumerate(left):
                    if lv:
                        base = p * dimv
                        clv = coeff * lv
                        for s, rv in enumerate(right):
                            if rv:
                                out[base + s] = out[base + s] + clv * rv
        cols.append(out)
    return Mat(field, [[cols[j][t] for j in range(dimv)] for t in range(dimh * dimv)])


def verify_yd(mod):
    """Module axiom, comodule axiom, the compatibility identity, and the
    plain/twisted round-trip; all exhaustive."""
    report = Report(f"Yetter-Drinfeld structure (dim {mod.dim})")
    qt = mod.qt
    hopf = qt.hopf
    field = qt.field
    dimh, dimv = qt.dim, mod.dim

    witness = None
    ident = Mat.identity(field, dimv)
    unit_act = Mat.zero(field, dimv, dimv)
    for i, c in enumerate(hopf.unit):
        if c:
            unit_act = unit_act + mod.action[i].scale(c)
    if unit_act != ident:
        witness = ("unit",)
    else:
        for i in range(dimh):
            for j in range(dimh):
                lhs = mod.action[i] @ mod.action[j]
                rhs = Mat.zero(field, dimv, dimv)
                for k, c in enumerate(hopf.mult[i][j]):
                    if c:
                        rhs = rhs + mod.action[k].scale(c)
                if lhs != rhs:
                    witness = (i, j)
                    break
            if witness:
                break
    report.add("module axiom", witness is None, witness)

    witness = None
    for j in range(dimv):
        col = [mod.coaction.rows[t][j] for t in range(dimh * dimv)]
        counit_side = zero_vector(field, dimv)
        for t, c in enumerate(col):
            if c:
                a, u = t // dimv, t % dimv
                e = hopf.counit[a]
                if e:
                    counit_side[u] = counit_side[u] + c * e
        if counit_side != basis_vector(field, dimv, j):
            witness = ("counit", j)
            break
        lhs = zero_vector(field, dimh * dimh * dimv)
        rhs = zero_vector(field, dimh * dimh * dimv)
        for t, c in enumerate(col):
            if not c:
                continue
            a, u = t // dimv, t % dimv
            for p, w, d in hopf.delta_nz(a):
                idx = (p * dimh + w) * dimv + u
                lhs[idx] = lhs[idx] + c * d
            col2 = [mod.coaction.rows[s][u] for s in range(dimh * dimv)]
            for s, c2 in enumerate(col2):
                if c2:
                    b, u2 = s // dimv, s % dimv
                    idx = (a * dimh + b) * dimv + u2
                    rhs[idx] = rhs[idx] + c * c2
        if lhs != rhs:
            witness = ("coassociativity", j)
            break
    report.add("comodule axiom", witness is None, witness)

    # compatibility: coaction(h v) = sum h_(1) v_(-1) S(h_(3)) (x) h_(2) v_(0)
    witness = None
    for i in range(dimh):
        if witness:
            break
        # Delta^2(e_i) triples
        triples = []
        for a, m, c in hopf.delta_nz(i):
            for b, w, d in hopf.delta_nz(m):
                triples.append((a, b, w, c * d))
        for j in range(dimv):
            hv = [mod.action[i].rows[s][j] for s in range(dimv)]
            lhs = zero_vector(field, dimh * dimv)
            for u, c in enumerate(hv):
                if c:
                    col = [mod.coaction.rows[t][u] for t in range(dimh * dimv)]
                    for t, c2 in enumerate(col):
                        if c2:
                            lhs[t] = lhs[t] + c * c2
            rhs = zero_vector(field, dimh * dimv)
            col = [mod.coaction.rows[t][j] for t in range(dimh * dimv)]
            for t, c in enumerate(col):
                if not c:
                    continue
                p, u = t // dimv, t % dimv
                for a, b, w, d in triples:
                    sw = hopf.antipode_of(basis_vector(field, dimh, w))
                    hleg = hopf.mul(hopf.mul(basis_vector(field, dimh, a), basis_vector(field, dimh, p)), sw)
                    vleg = [mod.action[b].rows[s][u] for s in range(dimv)]
                    coeff = c * d
                    for hp, hval in enumerate(hleg):
                        if hval:
                            base = hp * dimv
                            ch = coeff * hval
                            for s, vval in enumerate(vleg):
                                if vval:
                                    rhs[base + s] = rhs[base + s] + ch * vval
            if lhs != rhs:
                witness = ("compatibility", i, j)
                break
    report.add("compatibility identity", witness is None, witness)

    round_trip = _coaction_to_braided(qt, mod.action, mod.coaction)
    report.add("plain -> twisted coaction agrees", round_trip == mod.coaction_r, None)
    back = _coaction_from_braided(qt, mod.action, mod.coaction_r)
    report.add("twisted -> plain coaction agrees", back == mod.coaction, None)

    # twisted coaction of an acted vector: rho_R(h v) = h_(1) .ad v^(-1) (x) h_(2) v^(0)
    witness = None
    for i in range(dimh):
        if witness:
            break
        for j in range(dimv):
            hv = [mod.action[i].rows[s][j] for s in range(dimv)]
            lhs = zero_vector(field, dimh * dimv)
            for u, c in enumerate(hv):
                if c:
                    col = [mod.coaction_r.rows[t][u] for t in range(dimh * dimv)]
                    for t, c2 in enumerate(col):
                        if c2:
                            lhs[t] = lhs[t] + c * c2
            rhs = zero_vector(field, dimh * dimv)
            col = [mod.coaction_r.rows[t][j] for t in range(dimh * dimv)]
            for t, c in enumerate(col):
                if not c:
                    continue
                p, u = t // dimv, t % dimv
                for a, b, d in hopf.delta_nz(i):
                    hleg = [qt.ad[a].rows[s][p] for s in range(dimh)]
                    vleg = [mod.action[b].rows[s][u] for s in range(dimv)]
                    coeff = c * d
                    for hp, hval in enumerate(hleg):
                        if hval:
                            base = hp * dimv
                            ch = coeff * hval
                            for s, vval in enumerate(vleg):
                                if vval:
                                    rhs[base + s] = rhs[base + s] + ch * vval
            if lhs != rhs:
                witness = ("twisted action compatibility", i, j)
                break
    report.add("twisted coaction of acted vectors", witness is None, witness)
    return report


def yd_hom(m1, m2):
    """Intertwiners of both the action and the plain coaction, as matrices."""
    field = m1.qt.field
    dimh = m1.qt.dim
    d1, d2 = m1.dim, m2.dim
    rows = []
    # action: f A_i - A'_i f = 0
    for i in range(dimh):
        a, b = m1.action[i], m2.action[i]
        for p in range(d2):
            for q in range(d1):
                row = [field.zero] * (d1 * d2)
                for s in range(d1):
                    row[p * d1 + s] = row[p * d1 + s] + a.rows[s][q]
                for s in range(d2):
                    row[s * d1 + q] = row[s * d1 + q] - b.rows[p][s]
                rows.append(row)
    # coaction: (id (x) f) rho = rho' f
    for a in range(dimh):
        for p in range(d2):
            for j in range(d1):
                row = [field.zero] * (d1 * d2)
                for u in range(d1):
                    row[p * d1 + u] = row[p * d1 + u] + m1.coaction.rows[a * d1 + u][j]
                for s in range(d2):
                    row[s * d1 + j] = row[s * d1 + j] - m2.coaction.rows[a * d2 + p][s]
                rows.append(row)
    ker = Mat(field, rows, ncols=d1 * d2).kernel()
    return [
        Mat(field, [krow[p * d1 : (p + 1) * d1] for p in range(d2)], ncols=d1)
        for krow in ker.basis.rows
    ]


def yd_isomorphism(m1, m2):
    if m1.dim != m2.dim:
        return None
    for f in yd_hom(m1, m2):
        if f.is_invertible():
            return f
    return None


# ---------------------------------------------------------------------------
# conjugacy blocks (minimal adjoint-stable subcoalgebras)


def ad_closure(qt, vectors):
    """Smallest adjoint-stable subspace containing the given vectors."""
    field = qt.field
    span = Subspace.from_spanning(field, qt.dim, list(vectors))
    while True:
        new = []
        for row in span.basis.rows:
            for ad in qt.ad:
                img = ad.matvec(row)
                if not span.contains_vector(img):
                    new.append(img)
        if not new:
            return span
        span = span.add(Subspace.from_spanning(field, qt.dim, new))


def simple_subcoalgebras(qt, max_den=DEFAULT_MAX_DEN):
    """Canonical simple subcoalgebras of (H, twisted coproduct), via the
    Wedderburn blocks of the dual convolution algebra."""
    from .algebra import central_primitive_idempotents

    field = qt.field
    dim = qt.dim
    mult = [
        [[qt.delta_r[k][i * dim + j] for k in range(dim)] for j in range(dim)]
        for i in range(dim)
    ]
    dual_alg = FinAlgebra(field, mult, list(qt.hopf.counit), check=False)
    idems = central_primitive_idempotents(dual_alg, max_den=max_den)
    comps = []
    for e in idems:
        vecs = []
        for k in range(dim):
            img = zero_vector(field, dim)
            for a, b, c in qt.delta_r_nz(k):
                ev = e[b]
                if ev:
                    img[a] = img[a] + c * ev
            if any(img):
                vecs.append(img)
        comps.append(Subspace.from_spanning(field, dim, vecs))
    total = sum(c.dim for c in comps)
    assert total == dim, "coalgebra components do not fill H"
    return comps


def conjugacy_blocks(qt, max_den=DEFAULT_MAX_DEN):
    """The unique decomposition of H into minimal adjoint-stable
    subcoalgebras of the transmuted coalgebra."""
    comps = simple_subcoalgebras(qt, max_den=max_den)
    closures = []
    for comp in comps:
        closures.append(ad_closure(qt, comp.basis.rows))
    uniq = []
    for cl in closures:
        if cl not in uniq:
            uniq.append(cl)
    total = sum(c.dim for c in uniq)
    assert total == qt.dim, "adjoint closures do not decompose H"
    for a in range(len(uniq)):
        for b in range(a + 1, len(uniq)):
            assert uniq[a].intersect(uniq[b]).dim == 0, "blocks overlap"
    return sorted(uniq, key=lambda s: s.sort_key())


def braided_coaction_operators(qt):
    """(f (x) id) o twisted coproduct for the dual basis f, on all of H."""
    dim = qt.dim
    field = qt.field
    ops = []
    for t in range(dim):
        rows = [[field.zero] * dim for _ in range(dim)]
        for k in range(dim):
            for a, b, c in qt.delta_r_nz(k):
                if a == t:
                    rows[b][k] = rows[b][k] + c
        ops.append(Mat(field, rows))
    return ops


class Coideal:
    """A simple left coideal W of the transmuted coalgebra, with its
    coaction structure constants delta_R(w_i) = sum C[i][(p, m)] e_p (x) w_m."""

    def __init__(self, qt, subspace):
        self.qt = qt
        self.subspace = subspace
        self.dim = subspace.dim
        field = qt.field
        dimh = qt.dim
        coeffs = []
        for row in subspace.basis.rows:
            tensor = qt.braided_coproduct(row)
            percol = []
            for p in range(dimh):
                slice_vec = [tensor[p * dimh + t] for t in range(dimh)]
                coords = subspace.express(slice_vec)
                assert coords is not None, "coaction leaves the coideal"
                percol.append(coords)
            coeffs.append(percol)  # coeffs[i][p][m]
        self.coeffs = coeffs

    def coaction_matrix(self):
        """As a (dim_H * dim_W) x dim_W coaction matrix."""
        field = self.qt.field
        dimh, s = self.qt.dim, self.dim
        rows = [[field.zero] * s for _ in range(dimh * s)]
        for i in range(s):
            for p in range(dimh):
                for m, c in enumerate(self.coeffs[i][p]):
                    if c:
                        rows[p * s + m][i] = c
        return Mat(field, rows, ncols=s)

    def dual_coaction_legs(self):
        """X[j][i] in H with rho(w*_j) = sum_i w*_i (x) X[j][i]."""
        field = self.qt.field
        dimh, s = self.qt.dim, self.dim
        legs = [[zero_vector(field, dimh) for _ in range(s)] for _ in range(s)]
        for i in range(s):
            for p in range(dimh):
                for j, c in enumerate(self.coeffs[i][p]):
                    if c:
                        legs[j][i][p] = legs[j][i][p] + c
        return legs


def simple_coideals(qt, block, seed=0, max_den=DEFAULT_MAX_DEN):
    """One representative simple coideal per isomorphism class inside a
    block, sorted canonically (the classification picks the first)."""
    ops = braided_coaction_operators(qt)
    pieces = decompose_under_operators(
        qt.field, ops, seed=seed, max_den=max_den, within=block
    )
    restricted = [restrict_operators(ops, p) for p in pieces]
    reps = []
    rep_ops = []
    for piece, rops in zip(pieces, restricted):
        is_new = True
        for seen_ops in rep_ops:
            if len(seen_ops) and seen_ops[0].nrows == rops[0].nrows:
                if _operator_hom_nonzero(qt.field, rops, seen_ops):
                    is_new = False
                    break
        if is_new:
            reps.append(piece)
            rep_ops.append(rops)
    reps.sort(key=lambda s: s.sort_key())
    return [Coideal(qt, rep) for rep in reps]


def _operator_hom_nonzero(field, ops_a, ops_b):
    da = ops_a[0].nrows
    db = ops_b[0].nrows
    rows = []
    for a, b in zip(ops_a, ops_b):
        for p in range(db):
            for q in range(da):
                row = [field.zero] * (da * db)
                for s in range(da):
                    row[p * da + s] = row[p * da + s] + a.rows[s][q]
                for s in range(db):
                    row[s * da + q] = row[s * da + q] - b.rows[p][s]
                rows.append(row)
    return Mat(field, rows, ncols=da * db).kernel().dim > 0


def conjugate_test(qt, w1, w2):
    """Two simple coideals are conjugate iff their adjoint closures agree;
    returns (bool, closure of the first)."""
    c1 = ad_closure(qt, w1.subspace.basis.rows)
    c2 = ad_closure(qt, w2.subspace.basis.rows)
    return c1 == c2, c1


# ---------------------------------------------------------------------------
# the stable algebra N_W


def hw_coaction(qt, w):
    """Twisted coaction on H (x) W:
    rho(h (x) w) = sum h_(1) .ad w^(-1) (x) h_(2) (x) w^(0)."""
    hopf = qt.hopf
    field = qt.field
    dimh, s = qt.dim, w.dim
    dimv = dimh * s
    rows = [[field.zero] * dimv for _ in range(dimh * dimv)]
    for p in range(dimh):
        for i in range(s):
            col = p * s + i
            for a, b, c in hopf.delta_nz(p):
                for l in range(dimh):
                    for m, d in enumerate(w.coeffs[i][l]):
                        if not d:
                            continue
                        coeff = c * d
                        hleg = [qt.ad[a].rows[t][l] for t in range(dimh)]
                        for t, hv in enumerate(hleg):
                            if hv:
                                rows[t * dimv + (b * s + m)][col] = (
                                    rows[t * dimv + (b * s + m)][col] + coeff * hv
                                )
    return Mat(field, rows, ncols=dimv)


def hw_action(qt, w):
    """Left multiplication of H on the H tensorand of H (x) W."""
    field = qt.field
    dimh, s = qt.dim, w.dim
    dimv = dimh * s
    mats = []
    for i in range(dimh):
        rows = [[field.zero] * dimv for _ in range(dimv)]
        for p in range(dimh):
            prod = qt.hopf.mult[i][p]
            for m in range(s):
                col = p * s + m
                for t, c in enumerate(prod):
                    if c:
                        rows[t * s + m][col] = c
        mats.append(Mat(field, rows))
    return mats


def cotensor(qt, w, v_coaction, v_dim, block=None):
    """Equalizer subspace W* box_D V inside W* (x) V.

    v_coaction is the (dim_H * v_dim) x v_dim twisted-coaction matrix of V;
    when a block is supplied the V coaction legs are checked to stay inside
    it (BlockMismatch otherwise)."""
    field = qt.field
    dimh, s = qt.dim, w.dim
    if block is not None:
        for j in range(v_dim):
            for u in range(v_dim):
                leg = [v_coaction.rows[a * v_dim + u][j] for a in range(dimh)]
                if any(leg) and not block.contains_vector(leg):
                    raise BlockMismatch("coaction leg leaves the block")
    legs = w.dual_coaction_legs()
    rows = []
    for i in range(s):
        for p in range(dimh):
            for u in range(v_dim):
                row = [field.zero] * (s * v_dim)
                for j in range(s):
                    x = legs[j][i][p]
                    if x:
                        row[j * v_dim + u] = row[j * v_dim + u] + x
                for up in range(v_dim):
                    c = v_coaction.rows[p * v_dim + u][up]
                    if c:
                        row[i * v_dim + up] = row[i * v_dim + up] - c
                rows.append(row)
    return Mat(field, rows, ncols=s * v_dim).kernel()


class StableAlgebra:
    """N_W = W* box_D (H (x) W) with the composition product, its unit, its
    H-comodule structure, and its left action on H (x) W."""

    def __init__(self, qt, block, w, carrier, algebra, unit_coords, coaction, hw_act):
        self.qt = qt
        self.block = block
        self.w = w
        self.carrier = carrier  # Subspace of W* (x) H (x) W
        self.algebra = algebra  # FinAlgebra on the carrier basis
        self.unit_coords = unit_coords
        self.coaction = coaction  # (dim_H * n) x n matrix
        self.hw_act = hw_act  # left action matrices of carrier basis on H (x) W
        self.dim = algebra.dim

    def as_subspace_of_h(self):
        """For one-dimensional W: the carrier viewed inside H."""
        assert self.w.dim == 1
        field = self.qt.field
        return Subspace.from_spanning(
            field, self.qt.dim, [list(r) for r in self.carrier.basis.rows]
        )


def _carrier_index(s, dimh, j, p, m):
    return (j * dimh + p) * s + m


def stable_algebra(qt, block, w, w2=None, max_den=DEFAULT_MAX_DEN):
    """Build N_W (or the bimodule carrier N_{W W2} when W2 is given)."""
    field = qt.field
    dimh = qt.dim
    target = w2 if w2 is not None else w
    vmat = hw_coaction(qt, target)
    carrier = cotensor(qt, w, vmat, dimh * target.dim, block=block)
    if carrier.dim * block.dim != dimh * w.dim * target.dim:
        raise DimensionMismatch(
            f"dim N ({carrier.dim}) * dim D ({block.dim}) != "
            f"dim H ({dimh}) * dim W ({w.dim}) * dim W' ({target.dim})"
        )
    if w2 is not None:
        return carrier

    s = w.dim
    n = carrier.dim
    basis = carrier.basis.rows

    def compose(xc, yc):
        # (x o y)[(a, t, d)] = sum y[(a,p,b)] x[(b,q,d)] mult[p][q][t]
        out = zero_vector(field, s * dimh * s)
        for ia, ca in enumerate(yc):
            if not ca:
                continue
            a, rest = divmod(ia, dimh * s)
            p, b = divmod(rest, s)
            for ib, cb in enumerate(xc):
                if not cb:
                    continue
                b2, rest2 = divmod(ib, dimh * s)
                if b2 != b:
                    continue
                q, d = divmod(rest2, s)
                coeff = ca * cb
                prod = qt.hopf.mult[p][q]
                for t, pv in enumerate(prod):
                    if pv:
                        idx = (a * dimh + t) * s + d
                        out[idx] = out[idx] + coeff * pv
        return out

    mult = []
    for xi in range(n):
        row = []
        for yi in range(n):
            prod = compose(basis[xi], basis[yi])
            coords = carrier.express(prod)
            assert coords is not None, "product leaves the carrier"
            row.append(coords)
        mult.append(row)

    unit_flat = zero_vector(field, s * dimh * s)
    for a in range(s):
        for p, c in enumerate(qt.hopf.unit):
            if c:
                unit_flat[(a * dimh + p) * s + a] = c
    unit_coords = carrier.express(unit_flat)
    assert unit_coords is not None, "unit vector is not inside the carrier"

    algebra = FinAlgebra(field, mult, unit_coords, check=True)

    # H-comodule structure: rho(w*_a (x) e_p (x) w_b)
    #   = sum S(e_t) (x) w*_a (x) e_s (x) w_b  over Delta(e_p) = sum e_s (x) e_t
    co_rows = [[field.zero] * n for _ in range(dimh * n)]
    for col in range(n):
        acc = [zero_vector(field, s * dimh * s) for _ in range(dimh)]
        for idx, c in enumerate(basis[col]):
            if not c:
                continue
            a, rest = divmod(idx, dimh * s)
            p, b = divmod(rest, s)
            for sidx, t, d in qt.hopf.delta_nz(p):
                svec = qt.hopf.antipode_of(basis_vector(field, dimh, t))
                coeff = c * d
                flat = (a * dimh + sidx) * s + b
                for hh, sv in enumerate(svec):
                    if sv:
                        acc[hh][flat] = acc[hh][flat] + coeff * sv
        for hh in range(dimh):
            if any(acc[hh]):
                coords = carrier.express(acc[hh])
                assert coords is not None, "comodule structure leaves the carrier"
                for t, cv in enumerate(coords):
                    if cv:
                        co_rows[hh * n + t][col] = cv
    coaction = Mat(field, co_rows, ncols=n)

    # left action of carrier elements on H (x) W:
    # (w*_m (x) e_p (x) w_b) . (e_q (x) w_m) = e_q e_p (x) w_b
    hw_dim = dimh * s
    act_mats = []
    for t in range(n):
        rows = [[field.zero] * hw_dim for _ in range(hw_dim)]
        for idx, c in enumerate(basis[t]):
            if not c:
                continue
            m, rest = divmod(idx, dimh * s)
            p, b = divmod(rest, s)
            for qq in range(dimh):
                prod = qt.hopf.mult[qq][p]
                col = qq * s + m
                for tt, pv in enumerate(prod):
                    if pv:
                        rows[tt * s + b][col] = rows[tt * s + b][col] + c * pv
        act_mats.append(Mat(field, rows))

    nw = StableAlgebra(qt, block, w, carrier, algebra, unit_coords, coaction, act_mats)

    if s == 1 and _is_grouplike_coideal(qt, w):
        fast = grouplike_stable_subspace(qt, w)
        assert fast == nw.as_subspace_of_h(), (
            "grouplike fast path disagrees with the cotensor carrier"
        )
    return nw


def _is_grouplike_coideal(qt, w):
    if w.dim != 1:
        return False
    g = w.subspace.basis.rows[0]
    tensor = qt.braided_coproduct(g)
    dimh = qt.dim
    for a in range(dimh):
        for b in range(dimh):
            if tensor[a * dimh + b] != g[a] * g[b]:
                return False
    return qt.hopf.counit_of(g) == qt.field.one


def grouplike_stable_subspace(qt, w):
    """For W = k g: the right coideal subalgebra
    { h : sum h_(1) .ad g (x) h_(2) = g (x) h }."""
    field = qt.field
    dimh = qt.dim
    g = w.subspace.basis.rows[0]
    rows = []
    for a in range(dimh):
        for b in range(dimh):
            row = [field.zero] * dimh
            for k in range(dimh):
                acc = field.zero
                for p, t, c in qt.hopf.delta_nz(k):
                    if t == b:
                        adg = field.zero
                        for l, gv in enumerate(g):
                            if gv:
                                adg = adg + gv * qt.ad[p].rows[a][l]
                        if adg:
                            acc = acc + c * adg
                if k == b:
                    acc = acc - g[a]
                row[k] = acc
            rows.append(row)
    return Mat(field, rows, ncols=dimh).kernel()


# ---------------------------------------------------------------------------
# induction


def induce(nw, umod, seed=0, max_den=DEFAULT_MAX_DEN, verify=True):
    """U (x)_N (H (x) W) as a Yetter-Drinfeld module, for a right N-module U."""
    qt = nw.qt
    field = qt.field
    dimh = qt.dim
    s = nw.w.dim
    hw_dim = dimh * s
    du = umod.dim
    full = du * hw_dim  # index (alpha, m) -> alpha * hw_dim + m

    rels = []
    for t in range(nw.dim):
        uact = umod.action[t]
        nact = nw.hw_act[t]
        for alpha in range(du):
            ucol = [uact.rows[g][alpha] for g in range(du)]
            for m in range(hw_dim):
                vec = zero_vector(field, full)
                for g, c in enumerate(ucol):
                    if c:
                        vec[g * hw_dim + m] = vec[g * hw_dim + m] + c
                ncol = [nact.rows[g][m] for g in range(hw_dim)]
                for g, c in enumerate(ncol):
                    if c:
                        vec[alpha * hw_dim + g] = vec[alpha * hw_dim + g] - c
                if any(vec):
                    rels.append(vec)
    relspace = Subspace.from_spanning(field, full, rels)
    qdim = full - relspace.dim
    expected = du * dimh * s
    if expected % nw.dim or qdim != expected // nw.dim:
        raise DimensionMismatch(
            f"quotient dimension {qdim} != dim U * dim H * dim W / dim N"
        )

    # section: non-pivot coordinates parametrize the quotient
    pivots = relspace._pivots
    free = [t for t in range(full) if t not in pivots]
    pos = {t: i for i, t in enumerate(free)}

    def project(vec):
        resid = relspace.residual(vec)
        return [resid[t] for t in free]

    def lift(coords):
        out = zero_vector(field, full)
        for c, t in zip(coords, free):
            out[t] = c
        return out

    # H action: left multiplication on the H tensorand
    action = []
    for i in range(dimh):
        cols = []
        for t in free:
            alpha, m = divmod(t, hw_dim)
            p, b = divmod(m, s)
            img = zero_vector(field, full)
            prod = qt.hopf.mult[i][p]
            for tt, c in enumerate(prod):
                if c:
                    img[alpha * hw_dim + tt * s + b] = c
            cols.append(project(img))
        action.append(Mat(field, [[cols[j][u] for j in range(qdim)] for u in range(qdim)]))

    # well-definedness: relations are stable under the action
    for i in range(dimh):
        for rvec in relspace.basis.rows:
            img = zero_vector(field, full)
            for t, c in enumerate(rvec):
                if c:
                    alpha, m = divmod(t, hw_dim)
                    p, b = divmod(m, s)
                    prod = qt.hopf.mult[i][p]
                    for tt, pv in enumerate(prod):
                        if pv:
                            idx = alpha * hw_dim + tt * s + b
                            img[idx] = img[idx] + c * pv
            if not relspace.contains_vector(img):
                raise QuotientIllFormed(f"action of basis {i} does not preserve relations")

    # twisted coaction descends from H (x) W (U is inert)
    hwco = hw_coaction(qt, nw.w)
    co_rows = [[field.zero] * qdim for _ in range(dimh * qdim)]
    for j, t in enumerate(free):
        alpha, m = divmod(t, hw_dim)
        for a in range(dimh):
            slice_full = zero_vector(field, full)
            for mm in range(hw_dim):
                c = hwco.rows[a * hw_dim + mm][m]
                if c:
                    slice_full[alpha * hw_dim + mm] = c
            if any(slice_full):
                for u, cv in enumerate(project(slice_full)):
                    if cv:
                        co_rows[a * qdim + u][j] = cv
    for rvec in relspace.basis.rows:
        for a in range(dimh):
            img = zero_vector(field, full)
            for t, c in enumerate(rvec):
                if c:
                    alpha, m = divmod(t, hw_dim)
                    for mm in range(hw_dim):
                        d = hwco.rows[a * hw_dim + mm][m]
                        if d:
                            idx = alpha * hw_dim + mm
                            img[idx] = img[idx] + c * d
            if any(img) and not relspace.contains_vector(img):
                raise QuotientIllFormed("coaction does not preserve relations")
    coaction_r = Mat(field, co_rows, ncols=qdim)

    mod = YDModule.from_braided(qt, action, coaction_r)
    if verify:
        rep = mod.verify()
        assert rep.ok, f"induced module fails verification: {rep.failing()}"
    return mod


# ---------------------------------------------------------------------------
# classification


class BlockClassification:
    def __init__(self, block, coideal, nw, modules):
        self.block = block
        self.coideal = coideal
        self.nw = nw
        self.modules = modules  # list of (u_dim, YDModule)

    @property
    def dims(self):
        return [m.dim for _, m in self.modules]


class ClassificationResult:
    def __init__(self, qt, seed, max_den, blocks, checks):
        self.qt = qt
        self.seed = seed
        self.max_den = max_den
        self.blocks = blocks
        self.checks = checks

    @property
    def total_count(self):
        return sum(len(b.modules) for b in self.blocks)

    @property
    def sum_dim_sq(self):
        return sum(m.dim**2 for b in self.blocks for _, m in b.modules)

    def dim_multiset(self):
        return sorted(m.dim for b in self.blocks for _, m in b.modules)

    def block_shapes(self):
        """Multiset-friendly snapshot: (block dim, nw dim, sorted module dims)."""
        return sorted(
            (b.block.dim, b.nw.dim, tuple(sorted(b.dims))) for b in self.blocks
        )


def classify(qt, seed=0, max_den=DEFAULT_MAX_DEN, coideal_choice=None, check_h_simple=True):
    """Complete classification of the irreducible Yetter-Drinfeld modules.

    coideal_choice optionally maps a block index to the index of the simple
    coideal representative to use (the default takes the canonical first);
    the result is the same up to isomorphism either way, which the
    representative-independence tests exercise.
    """
    from .braided import (
        integral_cocommutativity_report,
        qt_checks,
        separable_idempotent_report,
    )

    blocks = conjugacy_blocks(qt, max_den=max_den)
    classified = []
    for bi, block in enumerate(blocks):
        coideals = simple_coideals(qt, block, seed=seed, max_den=max_den)
        pick = 0 if coideal_choice is None else coideal_choice.get(bi, 0)
        w = coideals[pick]
        closure_ok, closure = conjugate_test(qt, w, w)
        assert closure_ok and closure == block, "coideal does not generate its block"
        nw = stable_algebra(qt, block, w, max_den=max_den)
        regular = nw.algebra.regular_module("right")
        pieces = decompose_module(regular, seed=seed, max_den=max_den)
        reps = {}
        for piece, tag in pieces:
            if tag not in reps:
                reps[tag] = piece
        modules = []
        for tag in sorted(reps):
            piece = reps[tag]
            umod = regular.restrict(piece)
            ydm = induce(nw, umod, seed=seed, max_den=max_den)
            assert ydm.irreducible(seed=seed, max_den=max_den), "induced module not irreducible"
            assert block.contains(ydm.support(braided=True)), "support leaves the block"
            modules.append((umod.dim, ydm))
        for a in range(len(modules)):
            for b in range(a + 1, len(modules)):
                assert (
                    yd_isomorphism(modules[a][1], modules[b][1]) is None
                ), "distinct stable-algebra modules induced isomorphic modules"
        classified.append(BlockClassification(block, w, nw, modules))

    checks = {}
    checks["qybe"] = all(ok for name, ok, _ in qt_checks(qt.hopf, qt.rmatrix))
    checks["e_R"] = separable_idempotent_report(qt).ok
    checks["integral_cocomm"] = integral_cocommutativity_report(qt).ok
    if check_h_simple:
        checks["h_simple"] = all(
            h_simple_report(b.nw, seed=seed, max_den=max_den).ok for b in classified
        )
    else:
        checks["h_simple"] = None
    div_ok = True
    dim_ok = True
    for b in classified:
        if b.nw.dim * b.block.dim != qt.dim * b.coideal.dim * b.coideal.dim:
            dim_ok = False
        for udim, ydm in b.modules:
            if b.nw.dim % (udim * b.coideal.dim) or qt.dim % ydm.dim:
                div_ok = False
    checks["divisibility"] = div_ok
    checks["dim_identity"] = dim_ok
    return ClassificationResult(qt, seed, max_den, classified, checks)


def one_dim_modules(qt, max_den=DEFAULT_MAX_DEN):
    """All one-dimensional Yetter-Drinfeld modules: pairs of a central
    grouplike and a one-dimensional character of H."""
    from .hopf import grouplikes, grouplikes_of

    hopf = qt.hopf
    field = qt.field
    gs = grouplikes_of(hopf, ambient=True, max_den=max_den)
    central = [g.coords for g in gs if g.central]
    hd = hopf.dual()
    chars = grouplikes(field, hd.comult, hd.counit, max_den=max_den)
    out = []
    for g in central:
        for chi in chars:
            action = [Mat(field, [[chi.coords[i]]]) for i in range(qt.dim)]
            co_rows = [[g[a]] for a in range(qt.dim)]
            mod = YDModule.from_braided(qt, action, Mat(field, co_rows, ncols=1))
            rep = mod.verify()
            assert rep.ok, "one-dimensional module fails verification"
            out.append((g, chi.coords, mod))
    return out


def h_simple_report(nw, seed=0, max_den=DEFAULT_MAX_DEN):
    """No proper nonzero subspace of N is simultaneously a two-sided ideal
    and coaction-stable: irreducibility under multiplications + coaction."""
    report = Report(f"H-simplicity of the stable algebra (dim {nw.dim})")
    field = nw.qt.field
    n = nw.dim
    ops = []
    for i in range(n):
        e = basis_vector(field, n, i)
        ops.append(nw.algebra.left_mult(e))
        ops.append(nw.algebra.right_mult(e))
    for a in range(nw.qt.dim):
        rows = [[nw.coaction.rows[a * n + u][j] for j in range(n)] for u in range(n)]
        ops.append(Mat(field, rows))
    pieces = decompose_under_operators(field, ops, seed=seed, max_den=max_den)
    report.add("no proper costable ideal", len(pieces) == 1, f"{len(pieces)} pieces")
    return report


def divisibility_report(result):
    report = Report("divisibility identities")
    qt = result.qt
    ok_all = True
    for b in result.blocks:
        for udim, ydm in b.modules:
            ok = b.nw.dim % (udim * b.coideal.dim) == 0
            ok2 = qt.dim % ydm.dim == 0
            ok_all = ok_all and ok and ok2
            if not (ok and ok2):
                report.add(
                    f"block dim {b.block.dim}, U dim {udim}, V dim {ydm.dim}",
                    False,
                    (b.nw.dim, udim, ydm.dim),
                )
    report.add("all (dim U * dim W) | dim N and dim V | dim H", ok_all, None)
    return report


# ---------------------------------------------------------------------------
# group-algebra oracle (centralizer construction)


def group_oracle_modules(qt, group, seed=0, max_den=DEFAULT_MAX_DEN):
    """Irreducible Yetter-Drinfeld modules of a group algebra with trivial
    R, built independently from centralizer representation theory:
    induce each irreducible C(g)-module to the class of g."""
    from .catalog import group_algebra

    field = qt.field
    n = group.order
    out = []
    for cls in group.conjugacy_classes():
        g = cls[0]
        members, cent = group.centralizer(g)
        centH, _ = group_algebra(cent, field_order=field.n)
        cent_alg = centH.as_algebra()
        regular = cent_alg.regular_module("left")
        pieces = decompose_module(regular, seed=seed, max_den=max_den)
        reps = {}
        for piece, tag in pieces:
            if tag not in reps:
                reps[tag] = piece
        # right coset representatives of C(g): orbit map x -> x g x^-1
        cosets = []
        seen = set()
        for x in range(n):
            gx = group.conj(x, g)
            if gx not in seen:
                seen.add(gx)
                cosets.append(x)
        memberset = set(members)
        decomp = {}
        for x in range(n):
            for ci, r in enumerate(cosets):
                c = group.table[group.inverse[r]][x]
                if c in memberset:
                    decomp[x] = (ci, members.index(c))
                    break
        class_span = Subspace.from_spanning(
            field, n, [basis_vector(field, n, t) for t in cls]
        )
        for tag in sorted(reps):
            piece = reps[tag]
            umod = regular.restrict(piece)
            du = umod.dim
            dimv = len(cosets) * du
            action = []
            for f in range(n):
                rows = [[field.zero] * dimv for _ in range(dimv)]
                for ci, r in enumerate(cosets):
                    fr = group.table[f][r]
                    cj, cidx = decomp[fr]
                    uact = umod.action[cidx]
                    for alpha in range(du):
                        col = ci * du + alpha
                        for beta in range(du):
                            c = uact.rows[beta][alpha]
                            if c:
                                rows[cj * du + beta][col] = c
                action.append(Mat(field, rows))
            co_rows = [[field.zero] * dimv for _ in range(n * dimv)]
            for ci, r in enumerate(cosets):
                gr = group.conj(r, g)
                for alpha in range(du):
                    col = ci * du + alpha
                    co_rows[gr * dimv + col][col] = field.one
            mod = YDModule.from_plain(qt, action, Mat(field, co_rows, ncols=dimv))
            rep = mod.verify()
            assert rep.ok, "oracle module fails verification"
            out.append((class_span, du, mod))
    return out


def crosscheck_group(qt, group, seed=0, max_den=DEFAULT_MAX_DEN):
    """Match the pipeline classification against the centralizer oracle:
    same multiset of (block dim, module dim) and an explicit isomorphism
    for every matched pair."""
    result = classify(qt, seed=seed, max_den=max_den, check_h_simple=False)
    oracle = group_oracle_modules(qt, group, seed=seed, max_den=max_den)
    pipeline = []
    for b in result.blocks:
        for _, ydm in b.modules:
            pipeline.append((b.block, ydm))
    matched = 0
    used = set()
    failures = []
    for class_span, du, omod in oracle:
        found = False
        for idx, (block, pmod) in enumerate(pipeline):
            if idx in used or block != class_span or pmod.dim != omod.dim:
                continue
            iso = yd_isomorphism(omod, pmod)
            if iso is not None:
                used.add(idx)
                matched += 1
                found = True
                break
        if not found:
            failures.append((class_span.dim, omod.dim))
    return {
        "total": len(oracle),
        "matched": matched,
        "pipeline_total": len(pipeline),
        "failures": failures,
        "result": result,
    }
