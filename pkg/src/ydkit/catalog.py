"""Built-in exactly-specified algebras with their R-matrices.

Every entry constructs fresh, verifiable structure tensors from first
principles (group tables or generator relations); nothing is hard-coded
beyond the defining relations.
"""

import math
import re

from .cyclo import CycField
from .errors import NotAGroup
from .hopf import HopfAlgebra
from .linalg import Mat, basis_vector, zero_vector


class GroupTable:
    """Finite group as a multiplication table over element names."""

    def __init__(self, names, table):
        self.names = list(names)
        self.table = [list(r) for r in table]
        self.order = len(self.names)
        self._validate()

    def _validate(self):
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise NotAGroup("table is not square")
        ident = None
        for e in range(n):
            if all(self.table[e][j] == j and self.table[j][e] == j for j in range(n)):
                ident = e
                break
        if ident is None:
            raise NotAGroup("no identity element")
        self.identity = ident
        self.inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == ident:
                    self.inverse[i] = j
                    break
            if self.inverse[i] is None or self.table[self.inverse[i]][i] != ident:
                raise NotAGroup(f"element {self.names[i]} has no two-sided inverse")
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        raise NotAGroup(f"associativity fails at ({i},{j},{k})")

    def mul(self, i, j):
        return self.table[i][j]

    def conj(self, g, x):
        return self.table[self.table[g][x]][self.inverse[g]]

    def element_order(self, i):
        k = 1
        cur = i
        while cur != self.identity:
            cur = self.table[cur][i]
            k += 1
        return k

    def exponent(self):
        exp = 1
        for i in range(self.order):
            exp = math.lcm(exp, self.element_order(i))
        return exp

    def conjugacy_classes(self):
        seen = [False] * self.order
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            orbit = sorted({self.conj(g, x) for g in range(self.order)})
            for y in orbit:
                seen[y] = True
            classes.append(orbit)
        classes.sort(key=lambda c: (len(c), c))
        return classes

    def centralizer(self, x):
        """Indices of elements commuting with x, plus their own table."""
        members = [h for h in range(self.order) if self.table[h][x] == self.table[x][h]]
        pos = {g: t for t, g in enumerate(members)}
        sub = [[pos[self.table[a][b]] for b in members] for a in members]
        return members, GroupTable([self.names[g] for g in members], sub)


def cyclic_group(n):
    names = ["e"] + [f"g{'' if k == 1 else k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable(names, table)


def symmetric3():
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    names = ["".join(str(t) for t in p) for p in perms]
    idx = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[t]] for t in range(3))

    table = [[idx[compose(p, q)] for q in perms] for p in perms]
    return GroupTable(names, table)


def dihedral4():
    # elements r^k s^e, k mod 4, e mod 2, with s r = r^-1 s
    elems = [(k, e) for e in range(2) for k in range(4)]
    names = [("e" if (k, e) == (0, 0) else f"r{k}" if e == 0 else (f"s" if k == 0 else f"r{k}s")) for k, e in elems]
    idx = {p: i for i, p in enumerate(elems)}

    def mul(a, b):
        k1, e1 = a
        k2, e2 = b
        k = (k1 + (k2 if e1 == 0 else -k2)) % 4
        return (k, (e1 + e2) % 2)

    table = [[idx[mul(a, b)] for b in elems] for a in elems]
    return GroupTable(names, table)


def quaternion8():
    # (sign, t) with t in {1, i, j, k}; order: 1, -1, i, -i, j, -j, k, -k
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {p: t for t, p in enumerate(elems)}
    eps = {(1, 2): 1, (2, 1): -1, (2, 3): 1, (3, 2): -1, (3, 1): 1, (1, 3): -1}
    third = {frozenset((1, 2)): 3, frozenset((2, 3)): 1, frozenset((3, 1)): 2}

    def mul(a, b):
        sa, ta = a
        sb, tb = b
        if ta == 0:
            return (sa * sb, tb)
        if tb == 0:
            return (sa * sb, ta)
        if ta == tb:
            return (-sa * sb, 0)
        return (sa * sb * eps[(ta, tb)], third[frozenset((ta, tb))])

    table = [[idx[mul(a, b)] for b in elems] for a in elems]
    return GroupTable(names, table)


def group_algebra(table, field_order=None):
    """kG with Delta(g) = g (x) g, S(g) = g^-1, R = 1 (x) 1."""
    if not isinstance(table, GroupTable):
        table = GroupTable([str(t) for t in range(len(table))], table)
    n = table.order
    if field_order is None:
        field_order = 4 * table.exponent()
    field = CycField(field_order)
    one = field.one
    mult = [
        [basis_vector(field, n, table.table[i][j]) for j in range(n)] for i in range(n)
    ]
    comult = []
    for k in range(n):
        vec = zero_vector(field, n * n)
        vec[k * n + k] = one
        comult.append(vec)
    unit = basis_vector(field, n, table.identity)
    counit = [one] * n
    srows = [[field.zero] * n for _ in range(n)]
    for j in range(n):
        srows[table.inverse[j]][j] = one
    h = HopfAlgebra(field, mult, comult, unit, counit, Mat(field, srows), names=table.names)
    r = zero_vector(field, n * n)
    r[table.identity * n + table.identity] = one
    return h, r


_KP_NAMES = ["1", "x", "y", "xy", "z", "xz", "yz", "xyz"]


def kac_paljutkin():
    """The 8-dimensional algebra on generators x, y, z with
    x^2 = y^2 = 1, z^2 = (1+x+y-xy)/2, xy = yx, zx = yz, zy = xz,
    quasi-triangular with R = (1 (x) 1 + 1 (x) x + y (x) 1 - y (x) x)/2."""
    field = CycField(4)
    one, half = field.one, field.rat("1/2")
    dim = 8

    def gidx(a, k):
        return (a & 3) | (k << 2)

    def sigma(a):
        return ((a & 1) << 1) | ((a >> 1) & 1)

    zsq = [(0, half), (1, half), (2, half), (3, -half)]

    mult = []
    for i in range(dim):
        ai, ki = i & 3, i >> 2
        row = []
        for j in range(dim):
            aj, kj = j & 3, j >> 2
            vec = zero_vector(field, dim)
            bj = aj if ki == 0 else sigma(aj)
            a = ai ^ bj
            if ki + kj <= 1:
                vec[gidx(a, ki + kj)] = one
            else:
                for c, coeff in zsq:
                    vec[gidx(a ^ c, 0)] = vec[gidx(a ^ c, 0)] + coeff
            row.append(vec)
        mult.append(row)

    comult = []
    for k in range(dim):
        a, kz = k & 3, k >> 2
        vec = zero_vector(field, dim * dim)
        if kz == 0:
            vec[k * dim + k] = one
        else:
            terms = [
                (gidx(a, 1), gidx(a, 1), half),
                (gidx(a, 1), gidx(a ^ 1, 1), half),
                (gidx(a ^ 2, 1), gidx(a, 1), half),
                (gidx(a ^ 2, 1), gidx(a ^ 1, 1), -half),
            ]
            for p, q, c in terms:
                vec[p * dim + q] = vec[p * dim + q] + c
        comult.append(vec)

    unit = basis_vector(field, dim, 0)
    counit = [one] * dim
    srows = [[field.zero] * dim for _ in range(dim)]
    for j in range(dim):
        a, kz = j & 3, j >> 2
        srows[gidx(sigma(a), kz) if kz else j][j] = one
    antipode = Mat(field, srows)

    h = HopfAlgebra(field, mult, comult, unit, counit, antipode, names=_KP_NAMES)
    r = zero_vector(field, dim * dim)
    for p, q, c in [(0, 0, half), (0, 1, half), (2, 0, half), (2, 1, -half)]:
        r[p * dim + q] = c
    return h, r


def z2_minus():
    """kZ/2 with the nontrivial triangular structure
    R = (1 (x) 1 + 1 (x) x + x (x) 1 - x (x) x)/2."""
    h, _ = group_algebra(cyclic_group(2), field_order=1)
    field = h.field
    half = field.rat("1/2")
    r = zero_vector(field, 4)
    r[0] = half
    r[1] = half
    r[2] = half
    r[3] = -half
    return h, r


class CatalogEntry:
    def __init__(self, name, hopf, rmatrix, group=None):
        self.name = name
        self.hopf = hopf
        self.rmatrix = rmatrix
        self.group = group


_ZN_RE = re.compile(r"^z(\d+)$")


def builtin_names():
    return ["z2", "z3", "z4", "z5", "z6", "s3", "d4", "q8", "z2_minus", "h8"]


def builtin(name):
    name = name.lower()
    m = _ZN_RE.match(name)
    if m:
        n = int(m.group(1))
        if not 2 <= n <= 24:
            raise KeyError(f"cyclic order {n} out of supported range")
        g = cyclic_group(n)
        h, r = group_algebra(g)
        return CatalogEntry(name, h, r, group=g)
    if name == "s3":
        g = symmetric3()
        h, r = group_algebra(g)
        return CatalogEntry(name, h, r, group=g)
    if name == "d4":
        g = dihedral4()
        h, r = group_algebra(g)
        return CatalogEntry(name, h, r, group=g)
    if name == "q8":
        g = quaternion8()
        h, r = group_algebra(g)
        return CatalogEntry(name, h, r, group=g)
    if name == "z2_minus":
        h, r = z2_minus()
        return CatalogEntry(name, h, r, group=None)
    if name == "h8":
        h, r = kac_paljutkin()
        return CatalogEntry(name, h, r, group=None)
    raise KeyError(f"unknown builtin {name!r}")
