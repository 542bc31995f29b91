"""Exact arithmetic in cyclotomic fields Q(zeta_n), plus in-field root extraction.

An element of Q(zeta_n) is stored by its coordinates in the power basis
1, z, ..., z^(phi(n)-1), where z = zeta_n and phi is Euler's totient; all
products are reduced modulo the n-th cyclotomic polynomial.  Coordinates are
exact rationals (gmpy2.mpq when available).  Q itself is Q(zeta_1) and
Q(i) = Q(zeta_4).

Root extraction works in two stages: a numeric stage (Durand-Kerner at high
mpmath precision, one fixed embedding zeta_n -> exp(2*pi*i/n)) proposes
roots, and a reconstruction stage turns each proposal into an exact field
element (small linear solve for phi <= 2, integer lattice reduction
otherwise) which is then certified by exact substitution.  Nothing
downstream ever trusts a float.
"""

from fractions import Fraction
from functools import lru_cache
import math

import mpmath

from .errors import DivisionByZero, ReconstructionFailed

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpq = Fraction

_Q0 = mpq(0)
_Q1 = mpq(1)


def euler_phi(n):
    assert n >= 1
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, low degree first, computed by dividing
    x^n - 1 by the Phi_d for proper divisors d."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            den = cyclotomic_polynomial(d)
            num = _int_poly_div_exact(num, den)
    return tuple(num)


def _int_poly_div_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    dd = len(den) - 1
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[dd + k]
        assert c % lead == 0
        q = c // lead
        out[k] = q
        if q:
            for j, dj in enumerate(den):
                num[k + j] -= q * dj
    assert all(c == 0 for c in num)
    return out


class _Ctx:
    """Shared per-order data: totient, power reduction table, unit elements."""

    __slots__ = ("n", "phi", "red", "zero", "one", "_powers_cache")

    def __init__(self, n):
        self.n = n
        phi = euler_phi(n)
        self.phi = phi
        cyc = cyclotomic_polynomial(n)
        # z^phi = -(cyc[0] + cyc[1] z + ... + cyc[phi-1] z^(phi-1))
        top = tuple(mpq(-c) for c in cyc[:phi])
        limit = max(2 * phi - 1, n) + 1
        red = []
        cur = [_Q0] * phi
        cur[0] = _Q1
        for _ in range(limit):
            red.append(tuple(cur))
            overflow = cur[phi - 1]
            nxt = [_Q0] + cur[: phi - 1]
            if overflow:
                nxt = [a + overflow * b for a, b in zip(nxt, top)]
            cur = nxt
        self.red = red
        self.zero = CycNumber(n, tuple([_Q0] * phi), _ctx=self)
        self.one = CycNumber(n, red[0], _ctx=self)
        self._powers_cache = {}

    def numeric_powers(self, prec):
        powers = self._powers_cache.get(prec)
        if powers is None:
            with mpmath.workprec(prec):
                z = mpmath.expjpi(mpmath.mpf(2) / self.n)
                powers = [mpmath.mpc(1)]
                for _ in range(self.phi - 1):
                    powers.append(powers[-1] * z)
            self._powers_cache[prec] = powers
        return powers


@lru_cache(maxsize=None)
def _ctx_for(n):
    return _Ctx(n)


def _to_mpq(x):
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    return mpq(x)


class CycNumber:
    """Immutable element of Q(zeta_n) in the power basis."""

    __slots__ = ("n", "c", "_ctx")

    def __init__(self, n, coords, _ctx=None):
        self.n = n
        self.c = coords
        self._ctx = _ctx if _ctx is not None else _ctx_for(n)

    @classmethod
    def rational(cls, value, n=1):
        ctx = _ctx_for(n)
        coords = [_Q0] * ctx.phi
        coords[0] = _to_mpq(value)
        return cls(n, tuple(coords), _ctx=ctx)

    @classmethod
    def zeta(cls, n, k=1):
        ctx = _ctx_for(n)
        return cls(n, ctx.red[k % n], _ctx=ctx)

    @classmethod
    def from_coords(cls, n, coords):
        ctx = _ctx_for(n)
        coords = tuple(_to_mpq(c) for c in coords)
        assert len(coords) == ctx.phi
        return cls(n, coords, _ctx=ctx)

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.n != self.n:
                raise ValueError(f"mixed field orders {self.n} and {other.n}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(_Q1):
            return CycNumber.rational(other, self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNumber(self.n, tuple(a + b for a, b in zip(self.c, other.c)), _ctx=self._ctx)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNumber(self.n, tuple(a - b for a, b in zip(self.c, other.c)), _ctx=self._ctx)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycNumber(self.n, tuple(-a for a in self.c), _ctx=self._ctx)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.c, other.c
        phi = self._ctx.phi
        # scalar fast paths: one factor rational
        if not any(b[1:]):
            s = b[0]
            if not s:
                return self._ctx.zero
            return CycNumber(self.n, tuple(x * s for x in a), _ctx=self._ctx)
        if not any(a[1:]):
            s = a[0]
            if not s:
                return self._ctx.zero
            return CycNumber(self.n, tuple(x * s for x in b), _ctx=self._ctx)
        conv = [_Q0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:phi])
        red = self._ctx.red
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = red[k]
                for t in range(phi):
                    if row[t]:
                        out[t] += ck * row[t]
        return CycNumber(self.n, tuple(out), _ctx=self._ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        phi = self._ctx.phi
        if phi == 1:
            return CycNumber(self.n, (1 / self.c[0],), _ctx=self._ctx)
        if not any(self.c[1:]):
            return CycNumber.rational(1 / self.c[0], self.n)
        # columns of the multiplication-by-self matrix: self * z^j
        cols = []
        cur = self
        zeta = CycNumber.zeta(self.n)
        for _ in range(phi):
            cols.append(cur.c)
            cur = cur * zeta
        aug = [[cols[j][i] for j in range(phi)] + [_Q1 if i == 0 else _Q0] for i in range(phi)]
        sol = _solve_rational(aug, phi)
        if sol is None:  # pragma: no cover - impossible in a field
            raise DivisionByZero("singular multiplication matrix")
        return CycNumber(self.n, tuple(sol), _ctx=self._ctx)

    def conj(self):
        """The automorphism zeta -> zeta^(-1) (complex conjugation)."""
        red = self._ctx.red
        phi = self._ctx.phi
        out = [_Q0] * phi
        for e, ce in enumerate(self.c):
            if ce:
                row = red[0] if e == 0 else red[self.n - e]
                for t in range(phi):
                    if row[t]:
                        out[t] += ce * row[t]
        return CycNumber(self.n, tuple(out), _ctx=self._ctx)

    def is_rational(self):
        return not any(self.c[1:])

    def as_rational(self):
        assert self.is_rational()
        return self.c[0]

    def height(self):
        h = 1
        for q in self.c:
            h = max(h, abs(int(q.numerator)), int(q.denominator))
        return h

    def numeric(self, prec=64):
        powers = self._ctx.numeric_powers(prec)
        with mpmath.workprec(prec):
            total = mpmath.mpc(0)
            for q, p in zip(self.c, powers):
                if q:
                    total += mpmath.fraction(int(q.numerator), int(q.denominator)) * p
        return total

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            return self.n == other.n and self.c == other.c
        if isinstance(other, (int, Fraction)) or type(other) is type(_Q1):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.c))

    def sort_key(self):
        return tuple((int(q.numerator), int(q.denominator)) for q in self.c)

    def __repr__(self):
        return f"Cyc({scalar_to_str(self)!r})"


def _solve_rational(aug, ncols):
    """Gauss-Jordan on an augmented rational matrix; returns the solution of
    the square system or None."""
    rows = len(aug)
    piv = 0
    pivots = []
    for col in range(ncols):
        sel = None
        for r in range(piv, rows):
            if aug[r][col]:
                sel = r
                break
        if sel is None:
            continue
        aug[piv], aug[sel] = aug[sel], aug[piv]
        inv = 1 / aug[piv][col]
        aug[piv] = [x * inv for x in aug[piv]]
        for r in range(rows):
            if r != piv and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[piv])]
        pivots.append(col)
        piv += 1
    for r in range(piv, rows):
        if aug[r][-1]:
            return None
    sol = [_Q0] * ncols
    for r, col in enumerate(pivots):
        sol[col] = aug[r][-1]
    return sol


class CycField:
    """Convenience handle for one field order: constructors and parsing."""

    def __init__(self, n):
        self.n = n
        self._ctx = _ctx_for(n)
        self.degree = self._ctx.phi
        self.zero = self._ctx.zero
        self.one = self._ctx.one

    def rat(self, value):
        if isinstance(value, str):
            return self.parse(value)
        return CycNumber.rational(value, self.n)

    def zeta(self, k=1):
        return CycNumber.zeta(self.n, k)

    def parse(self, text):
        return parse_scalar(text, self.n)

    def __eq__(self, other):
        return isinstance(other, CycField) and other.n == self.n

    def __hash__(self):
        return hash(("CycField", self.n))

    def __repr__(self):
        return f"CycField({self.n})"


def field_arith(a, b, op):
    """Dispatch arithmetic by name; precondition: same order."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# text format


def _rat_to_str(q):
    n, d = int(q.numerator), int(q.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def scalar_to_str(x):
    if x.n == 1:
        return _rat_to_str(x.c[0])
    return "[" + ", ".join(_rat_to_str(q) for q in x.c) + "]@" + str(x.n)


def _parse_rat(text):
    text = text.strip()
    if "/" in text:
        a, b = text.split("/")
        return mpq(int(a), int(b))
    return mpq(int(text))


def parse_scalar(text, n):
    """Parse 'a/b' (embedded rational) or '[c0, c1, ...]@m' with m == n."""
    text = text.strip()
    if text.startswith("["):
        body, order = text.rsplit("@", 1)
        m = int(order)
        if m != n:
            raise ValueError(f"scalar of order {m} in field of order {n}")
        inner = body.strip()[1:-1].strip()
        coords = [_parse_rat(p) for p in inner.split(",")] if inner else []
        return CycNumber.from_coords(n, coords)
    return CycNumber.rational(_parse_rat(text), n)


# ---------------------------------------------------------------------------
# polynomials with CycNumber coefficients (dense, low degree first)


def poly_trim(p):
    while p and not p[-1]:
        p = p[:-1]
    return p


def poly_degree(p):
    p = poly_trim(p)
    return len(p) - 1


def poly_eval(p, x):
    field = CycField(x.n)
    acc = field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_scale(p, s):
    return [c * s for c in p]


def poly_sub(p, q):
    out = list(p) + [p[0] * 0] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return out


def poly_mul(p, q):
    if not p or not q:
        return []
    zero = p[0] * 0
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return out


def poly_divmod(p, d):
    p = list(poly_trim(list(p)))
    d = poly_trim(list(d))
    assert d, "division by zero polynomial"
    dd = len(d) - 1
    inv_lead = d[-1].inverse()
    zero = d[-1] * 0
    if len(p) - 1 < dd:
        return [], p
    quot = [zero] * (len(p) - dd)
    while len(p) - 1 >= dd and p:
        k = len(p) - 1 - dd
        coeff = p[-1] * inv_lead
        quot[k] = coeff
        for j in range(dd + 1):
            p[k + j] = p[k + j] - coeff * d[j]
        p = poly_trim(p)
        if not p:
            break
    return quot, list(p)


def poly_monic(p):
    p = poly_trim(list(p))
    assert p
    lead = p[-1]
    if lead == 1:
        return p
    inv = lead.inverse()
    return [c * inv for c in p]


def poly_gcd(p, q):
    p, q = poly_trim(list(p)), poly_trim(list(q))
    while q:
        _, r = poly_divmod(p, q)
        p, q = q, poly_trim(r)
    return poly_monic(p) if p else p


def poly_derivative(p):
    return [c * k for k, c in enumerate(p)][1:]


# ---------------------------------------------------------------------------
# numeric root stage


def _durand_kerner(coeffs_num, prec):
    """All complex roots of a monic squarefree polynomial given numerically."""
    deg = len(coeffs_num) - 1
    with mpmath.workprec(prec):
        start = mpmath.mpc(mpmath.mpf(2) / 5, mpmath.mpf(9) / 10)
        roots = [start ** (k + 1) for k in range(deg)]
        tol = mpmath.mpf(2) ** (-(prec - 24))

        def peval(x):
            acc = mpmath.mpc(coeffs_num[-1])
            for c in reversed(coeffs_num[:-1]):
                acc = acc * x + c
            return acc

        for _ in range(600):
            shift = mpmath.mpf(0)
            new = []
            for k in range(deg):
                zk = roots[k]
                denom = mpmath.mpc(1)
                for j in range(deg):
                    if j != k:
                        denom *= zk - roots[j]
                delta = peval(zk) / denom
                new.append(zk - delta)
                shift = max(shift, abs(delta))
            roots = new
            if shift < tol:
                break
        return roots


def _lll(rows):
    """All-integer LLL (delta = 3/4); avoids rational blow-up entirely.

    One-indexed arrays internally; b[1..n] are the basis rows, d[i] the Gram
    determinants, lam[i][j] = mu_ij * d[j], all exact integers.
    """
    n = len(rows)
    b = [None] + [[int(x) for x in r] for r in rows]
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lmb = lam[k][k - 1]
        bb = (d[k - 2] * d[k] + lmb * lmb) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lmb * t) // d[k - 1]
            lam[i][k - 1] = (bb * t + lmb * lam[i][k]) // d[k]
        d[k - 1] = bb

    k = 2
    kmax = 1
    d[1] = dot(b[1], b[1])
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            assert d[k] != 0, "lattice rows not independent"
        while True:
            redi(k, k - 1)
            if 4 * (d[k] * d[k - 2] + lam[k][k - 1] ** 2) < 3 * d[k - 1] ** 2:
                swapi(k, kmax)
                k = max(2, k - 1)
            else:
                for l in range(k - 2, 0, -1):
                    redi(k, l)
                k += 1
                break
    return b[1:]


def _reconstruct(ctx, approx, max_den, prec):
    """Candidate exact field elements near a numeric root, best first."""
    phi = ctx.phi
    n = ctx.n
    with mpmath.workprec(prec):
        powers = ctx.numeric_powers(prec)
        if phi <= 2:
            # solve the 2x2 (or 1x1) real linear system for the coordinates
            if phi == 1:
                if abs(mpmath.im(approx)) > mpmath.mpf(2) ** (-(prec // 2)):
                    return []
                cand = [_rat_reconstruct(mpmath.re(approx), max_den)]
            else:
                a, b = powers[0], powers[1]
                det = mpmath.re(a) * mpmath.im(b) - mpmath.im(a) * mpmath.re(b)
                if abs(det) < mpmath.mpf(2) ** (-(prec // 2)):
                    return []
                x = (mpmath.re(approx) * mpmath.im(b) - mpmath.im(approx) * mpmath.re(b)) / det
                y = (mpmath.im(approx) * mpmath.re(a) - mpmath.re(approx) * mpmath.im(a)) / det
                cand = [_rat_reconstruct(x, max_den), _rat_reconstruct(y, max_den)]
            if any(c is None for c in cand):
                return []
            return [CycNumber.from_coords(n, cand)]
        # lattice route: integer relation q*approx - sum p_j zeta^j ~ 0
        scale = mpmath.mpf(2) ** (prec - 48)

        def scaled(t):
            return int(mpmath.nint(t * scale))

        rows = []
        rows.append([1] + [0] * phi + [scaled(mpmath.re(approx)), scaled(mpmath.im(approx))])
        for j in range(phi):
            row = [0] * (phi + 1) + [-scaled(mpmath.re(powers[j])), -scaled(mpmath.im(powers[j]))]
            row[1 + j] = 1
            rows.append(row)
        reduced = _lll(rows)
        out = []
        for vec in reduced:
            q = vec[0]
            if q == 0:
                continue
            if abs(q) > max_den:
                continue
            coords = [mpq(pj, q) for pj in vec[1 : 1 + phi]]
            if any(c.denominator > max_den for c in coords):
                continue
            out.append(CycNumber.from_coords(n, coords))
        return out


def _rat_reconstruct(x, max_den):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return mpq(0) if exp == 0 else None
    num = -man if sign else man
    frac = Fraction(num * (1 << exp)) if exp >= 0 else Fraction(num, 1 << (-exp))
    frac = frac.limit_denominator(max_den)
    return mpq(frac.numerator, frac.denominator)


DEFAULT_MAX_DEN = 2**16


def certified_roots(p, max_den=DEFAULT_MAX_DEN, prec=320):
    """In-field roots of p with multiplicity, plus the count of numeric roots
    that resisted certification.  Never raises on a failed reconstruction."""
    p = poly_trim(list(p))
    assert len(p) >= 2, "degree >= 1 required"
    field = CycField(p[0].n)
    ctx = field._ctx
    p = poly_monic(p)
    deg = len(p) - 1

    # pull out roots at zero exactly
    nzero = 0
    while not p[0]:
        nzero += 1
        p = p[1:]
    roots = []
    if nzero:
        roots.append((field.zero, nzero))
    if len(p) == 1:
        return roots, 0

    if len(p) == 2:
        r = -p[0]
        roots.append((r, _exact_multiplicity(p, r)))
        return _sorted_roots(roots), 0

    deriv = poly_derivative(p)
    g = poly_gcd(p, deriv)
    if poly_degree(g) >= 1:
        sqfree, rem = poly_divmod(p, g)
        assert not poly_trim(rem)
        sqfree = poly_monic(sqfree)
    else:
        sqfree = p

    if len(sqfree) == 2:
        r = -sqfree[0]
        roots.append((r, _exact_multiplicity(p, r)))
        return _sorted_roots(roots), 0

    with mpmath.workprec(prec):
        coeffs_num = [c.numeric(prec) for c in sqfree]
        numeric = _durand_kerner(coeffs_num, prec)

    found = {}
    failed = 0
    for approx in numeric:
        hit = None
        for cand in _reconstruct(ctx, approx, max_den, prec):
            if cand in found:
                hit = cand
                break
            if not poly_eval(sqfree, cand):
                hit = cand
                break
        if hit is None:
            failed += 1
        else:
            found[hit] = True
    for r in found:
        roots.append((r, _exact_multiplicity(p, r)))
    total = sum(m for _, m in roots)
    assert total <= deg
    return _sorted_roots(roots), failed


def _exact_multiplicity(p, r):
    one = CycField(r.n).one
    lin = [-r, one]
    mult = 0
    cur = list(p)
    while poly_degree(poly_trim(cur)) >= 1:
        q, rem = poly_divmod(cur, lin)
        if poly_trim(rem):
            break
        mult += 1
        cur = q
    return mult


def _sorted_roots(roots):
    return sorted(roots, key=lambda rm: rm[0].sort_key())


def find_roots_in_field(p, max_den=DEFAULT_MAX_DEN, prec=320):
    """All roots of p lying in its coefficient field, each exactly certified.

    Raises ReconstructionFailed when a numeric root cannot be certified,
    which signals either that the field does not split p or that max_den is
    too small.
    """
    roots, failed = certified_roots(p, max_den=max_den, prec=prec)
    if failed:
        raise ReconstructionFailed(len(roots), f"{failed} numeric root(s) not certified")
    return roots
