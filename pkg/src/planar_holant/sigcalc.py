"""Symmetric-signature calculus.

A symmetric signature of arity n is the list [f_0, ..., f_n] of values by
input Hamming weight.  This module provides the derivative/integral
calculus, holographic transforms T^{tensor n}, second-order recurrence
analysis, vanishing degrees in the Z basis, arity-4 signature matrices,
and exact two-term tensor decompositions.
"""

from fractions import Fraction
from math import comb

from .algebra import AN, AlgebraicNumber, ONE, ZERO, I, sqrt_in_field


class ArityError(ValueError):
    pass


class SymmetricSignature:
    __slots__ = ("entries",)

    def __init__(self, entries):
        es = tuple(AN(e) for e in entries)
        if not es:
            raise ArityError("a signature needs at least one entry")
        self.entries = es

    @property
    def arity(self):
        return len(self.entries) - 1

    def __getitem__(self, k):
        return self.entries[k]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, SymmetricSignature) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Sig[%s]" % ", ".join(str(e) for e in self.entries)

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def scale(self, c):
        c = AN(c)
        return SymmetricSignature([c * e for e in self.entries])

    def __add__(self, other):
        if self.arity != other.arity:
            raise ArityError("arity mismatch")
        return SymmetricSignature([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def reversed(self):
        return SymmetricSignature(self.entries[::-1])

    def proportional_to(self, other):
        """True when self = c * other for some nonzero c (both nonzero)."""
        if self.arity != other.arity or self.is_zero() or other.is_zero():
            return False
        c = None
        for a, b in zip(self.entries, other.entries):
            if b.is_zero() != a.is_zero():
                return False
            if not b.is_zero():
                r = a / b
                if c is None:
                    c = r
                elif r != c:
                    return False
        return True


def sig(entries):
    return SymmetricSignature(entries)


# -- constructors --------------------------------------------------------

def equality(k):
    """=_k = [1,0,...,0,1]."""
    if k < 1:
        raise ArityError("equality needs arity >= 1")
    return gen_eq(1, 1, k)


def diseq2():
    """The binary disequality [0,1,0]."""
    return SymmetricSignature([0, 1, 0])


def exact_one(k):
    if k < 1:
        raise ArityError("exact_one needs arity >= 1")
    return SymmetricSignature([0, 1] + [0] * (k - 1))


def all_but_one(k):
    if k < 1:
        raise ArityError("all_but_one needs arity >= 1")
    return SymmetricSignature([0] * (k - 1) + [1, 0])


def gen_eq(a, b, k):
    """Generalized equality [a,0,...,0,b] of arity k."""
    if k < 2:
        raise ArityError("gen_eq needs arity >= 2")
    return SymmetricSignature([a] + [0] * (k - 1) + [b])


def degenerate(u, k):
    """u^{tensor k} for a unary u = [u0, u1]."""
    if k < 1:
        raise ArityError("degenerate needs arity >= 1")
    u0, u1 = AN(u[0]), AN(u[1])
    return SymmetricSignature([u0 ** (k - j) * u1 ** j for j in range(k + 1)])


def sym_n_n1(u, v, n):
    """Sym_n^{n-1}(u; v): n-1 copies of u and one v, symmetrized."""
    u0, u1, v0, v1 = AN(u[0]), AN(u[1]), AN(v[0]), AN(v[1])
    out = []
    for k in range(n + 1):
        t = ZERO
        if k >= 1:
            t = t + AN(k) * v1 * u1 ** (k - 1) * u0 ** (n - k)
        if k <= n - 1:
            t = t + AN(n - k) * v0 * u0 ** (n - k - 1) * u1 ** k
        out.append(t)
    return SymmetricSignature(out)


# -- 2x2 transforms -------------------------------------------------------

class Transform2x2:
    __slots__ = ("t00", "t01", "t10", "t11")

    def __init__(self, t00, t01, t10, t11):
        self.t00, self.t01 = AN(t00), AN(t01)
        self.t10, self.t11 = AN(t10), AN(t11)

    def det(self):
        return self.t00 * self.t11 - self.t01 * self.t10

    def is_invertible(self):
        return not self.det().is_zero()

    def is_orthogonal(self):
        # T * T^t = identity
        return (
            self.t00 * self.t00 + self.t01 * self.t01 == ONE
            and self.t10 * self.t10 + self.t11 * self.t11 == ONE
            and (self.t00 * self.t10 + self.t01 * self.t11).is_zero()
        )

    def inverse(self):
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular transform")
        return Transform2x2(self.t11 / d, -self.t01 / d, -self.t10 / d, self.t00 / d)

    def transpose(self):
        return Transform2x2(self.t00, self.t10, self.t01, self.t11)

    def __matmul__(self, other):
        return Transform2x2(
            self.t00 * other.t00 + self.t01 * other.t10,
            self.t00 * other.t01 + self.t01 * other.t11,
            self.t10 * other.t00 + self.t11 * other.t10,
            self.t10 * other.t01 + self.t11 * other.t11,
        )

    def apply(self, u):
        return (self.t00 * AN(u[0]) + self.t01 * AN(u[1]),
                self.t10 * AN(u[0]) + self.t11 * AN(u[1]))

    def scale(self, c):
        c = AN(c)
        return Transform2x2(c * self.t00, c * self.t01, c * self.t10, c * self.t11)

    def __eq__(self, other):
        return (isinstance(other, Transform2x2)
                and (self.t00, self.t01, self.t10, self.t11)
                == (other.t00, other.t01, other.t10, other.t11))

    def __repr__(self):
        return "[[%s, %s], [%s, %s]]" % (self.t00, self.t01, self.t10, self.t11)


def identity2():
    return Transform2x2(1, 0, 0, 1)


def diag(a, b):
    return Transform2x2(a, 0, 0, b)


# unnormalized basis changes; induced scalars are tracked at use sites
Z = Transform2x2(1, 1, I, -I)
H2 = Transform2x2(1, 1, 1, -1)
Z_INV = Z.inverse()


def transform(T, f):
    """The symmetric signature of T^{tensor n} f (column action).

    Pinned by transform(T, u^{tensor n}) = (T u)^{tensor n}.  Entry m is
    read off the assignment 1^m 0^{n-m} using binomial sums, O(n^2) field
    products per entry.
    """
    n = f.arity
    out = []
    for m in range(n + 1):
        acc = ZERO
        for j in range(m + 1):
            cj = AN(comb(m, j)) * self_pow(T.t10, m - j) * self_pow(T.t11, j)
            if cj.is_zero():
                continue
            for l in range(n - m + 1):
                cl = AN(comb(n - m, l)) * self_pow(T.t00, n - m - l) * self_pow(T.t01, l)
                if cl.is_zero():
                    continue
                acc = acc + cj * cl * f[j + l]
        out.append(acc)
    return SymmetricSignature(out)


def self_pow(x, e):
    if e == 0:
        return ONE
    return x ** e


def row_transform(f, T):
    """The symmetric signature of the row action f T^{tensor n}."""
    return transform(T.transpose(), f)


# -- calculus -------------------------------------------------------------

def derivative(f, g):
    """Connect all arity(g) inputs of g to f: h_k = sum_j C(m,j) g_j f_{k+j}."""
    n, m = f.arity, g.arity
    if m >= n:
        raise ArityError("derivative needs arity(g) < arity(f)")
    out = []
    for k in range(n - m + 1):
        acc = ZERO
        for j in range(m + 1):
            if g[j].is_zero():
                continue
            acc = acc + AN(comb(m, j)) * g[j] * f[k + j]
        out.append(acc)
    return SymmetricSignature(out)


def partial(f):
    """The shorthand derivative with [1,0,1]: h_k = f_k + f_{k+2}."""
    return derivative(f, SymmetricSignature([1, 0, 1]))


def integral(fp):
    """An F of arity n+2 with partial(F) = fp: F_k = sum_s (-1)^s fp_{k+2s}.

    Antiderivatives are unique only up to x*[1,i]^{tensor} + y*[1,-i]^{tensor}.
    """
    n = fp.arity
    out = []
    for k in range(n + 3):
        acc = ZERO
        s = 0
        while k + 2 * s <= n:
            term = fp[k + 2 * s]
            acc = acc + (term if s % 2 == 0 else -term)
            s += 1
        out.append(acc)
    return SymmetricSignature(out)


# -- recurrence analysis ---------------------------------------------------

def _null_space(rows):
    """Exact null-space basis of a matrix given as a list of rows."""
    cols = len(rows[0]) if rows else 0
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for rr in range(r, len(mat)):
            if not mat[rr][c].is_zero():
                pr = rr
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c].inv()
        mat[r] = [x * inv for x in mat[r]]
        for rr in range(len(mat)):
            if rr != r and not mat[rr][c].is_zero():
                fac = mat[rr][c]
                mat[rr] = [x - fac * y for x, y in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * cols
        vec[fc] = ONE
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fc]
        basis.append(vec)
    return basis


class RecurrenceType:
    """Second-order recurrence structure of a symmetric signature.

    Triples (a, b, c) satisfy a*f_k - b*f_{k+1} + c*f_{k+2} = 0 for all
    0 <= k <= n-2; `basis` spans all such triples.  rank is the rank of
    the (n-1) x 3 array of consecutive entry triples.
    """

    __slots__ = ("rank", "basis")

    def __init__(self, rank, basis):
        self.rank = rank
        self.basis = basis

    @property
    def exists(self):
        return bool(self.basis)

    def triple(self):
        assert self.basis
        return self.basis[0]

    def has_distinct_roots(self):
        """b^2 != 4ac for the (unique up to scale) triple; rank-2 case only."""
        a, b, c = self.triple()
        return b * b != AN(4) * a * c


def recurrence_analysis(f):
    n = f.arity
    if n < 2:
        raise ArityError("recurrence analysis needs arity >= 2")
    rows = [(f[k], f[k + 1], f[k + 2]) for k in range(n - 1)]
    basis = _null_space(rows)
    # spec sign convention: flip the middle coefficient
    basis = [(v[0], -v[1], v[2]) for v in basis]
    return RecurrenceType(3 - len(basis), basis)


# -- vanishing degrees ------------------------------------------------------

def vanishing_degrees(f):
    """(rd+, vd+, rd-, vd-) via the Z basis; rd = -1, vd = n+1 for f = 0."""
    n = f.arity
    fhat = transform(Z_INV, f)
    nz = [k for k in range(n + 1) if not fhat[k].is_zero()]
    if not nz:
        return (-1, n + 1, -1, n + 1)
    rdp = nz[-1]
    rdm = n - nz[0]
    return (rdp, n - rdp, rdm, n - rdm)


def in_vanishing_plus(f):
    rdp, vdp, _, _ = vanishing_degrees(f)
    return 2 * vdp > f.arity


def in_vanishing_minus(f):
    _, _, rdm, vdm = vanishing_degrees(f)
    return 2 * vdm > f.arity


# -- general (asymmetric) signatures and arity-4 matrices -------------------

class GeneralSignature:
    """2^n entries indexed by the integer with input x1 as the top bit."""

    __slots__ = ("arity", "entries")

    def __init__(self, arity, entries):
        if len(entries) != 1 << arity:
            raise ArityError("need 2^arity entries")
        self.arity = arity
        self.entries = tuple(AN(e) for e in entries)

    @classmethod
    def from_symmetric(cls, f):
        n = f.arity
        ents = [f[bin(x).count("1")] for x in range(1 << n)]
        return cls(n, ents)

    def value(self, bits):
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.entries[idx]

    def symmetrize(self):
        """The symmetric form when entries depend only on weight, else None."""
        out = [None] * (self.arity + 1)
        for x in range(1 << self.arity):
            w = bin(x).count("1")
            if out[w] is None:
                out[w] = self.entries[x]
            elif out[w] != self.entries[x]:
                return None
        return SymmetricSignature(out)

    def __eq__(self, other):
        return (isinstance(other, GeneralSignature)
                and self.arity == other.arity and self.entries == other.entries)

    def __repr__(self):
        return "Gen(%d)[%s]" % (self.arity, ", ".join(str(e) for e in self.entries))


def rotate4(g):
    """One counterclockwise rotation of inputs: g'(x1,x2,x3,x4) = g(x2,x3,x4,x1)."""
    if g.arity != 4:
        raise ArityError("rotation is defined for arity 4")
    ents = [None] * 16
    for x in range(16):
        x1, x2, x3, x4 = (x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1
        src = (x2 << 3) | (x3 << 2) | (x4 << 1) | x1
        ents[x] = g.entries[src]
    return GeneralSignature(4, ents)


def signature_matrix(g):
    """4x4 matrix: rows by (x1,x2), columns ordered 00, 10, 01, 11 in (x3,x4)."""
    if isinstance(g, SymmetricSignature):
        g = GeneralSignature.from_symmetric(g)
    if g.arity != 4:
        raise ArityError("signature matrix is defined for arity 4")
    col_bits = [(0, 0), (1, 0), (0, 1), (1, 1)]
    M = []
    for r in range(4):
        x1, x2 = (r >> 1) & 1, r & 1
        M.append([g.value((x1, x2, c3, c4)) for (c3, c4) in col_bits])
    return M


def is_redundant(M):
    return M[1] == M[2] and all(M[r][1] == M[r][2] for r in range(4))


def compress(M):
    """3x3 compressed matrix: averages the middle rows, merges the middle columns."""
    half = AN(Fraction(1, 2))
    rows = [M[0], [half * (a + b) for a, b in zip(M[1], M[2])], M[3]]
    return [[r[0], r[1] + r[2], r[3]] for r in rows]


def det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def signature_matrix_ops(g):
    """(M, redundant?, compressed, det compressed, rotated) for arity 4."""
    if isinstance(g, SymmetricSignature):
        gen = GeneralSignature.from_symmetric(g)
    else:
        gen = g
    M = signature_matrix(gen)
    Mt = compress(M)
    return M, is_redundant(M), Mt, det3(Mt), rotate4(gen)


# -- tensor decomposition ----------------------------------------------------

class TensorDecomposition:
    """kind: zero | degenerate | distinct | double | irrational | none.

    degenerate: f = c * u^{tensor n}
    distinct:   f = x * u^{tensor n} + y * v^{tensor n}, u, v independent
    double:     f = Sym_n^{n-1}(u; v)
    irrational: a recurrence exists but its roots leave Q(zeta_8)
    none:       no second-order recurrence (no two-term decomposition)
    """

    __slots__ = ("kind", "u", "v", "x", "y", "c", "arity")

    def __init__(self, kind, arity, u=None, v=None, x=None, y=None, c=None):
        self.kind = kind
        self.arity = arity
        self.u, self.v, self.x, self.y, self.c = u, v, x, y, c

    def expand(self):
        n = self.arity
        if self.kind == "zero":
            return SymmetricSignature([0] * (n + 1))
        if self.kind == "degenerate":
            return degenerate(self.u, n).scale(self.c)
        if self.kind == "distinct":
            return degenerate(self.u, n).scale(self.x) + degenerate(self.v, n).scale(self.y)
        if self.kind == "double":
            return sym_n_n1(self.u, self.v, n)
        raise ValueError("no expansion for kind %r" % self.kind)


def _solve_distinct_weights(f, u, v):
    """x, y with f = x u^n + y v^n, or None."""
    n = f.arity
    pu = degenerate(u, n)
    pv = degenerate(v, n)
    # find two independent rows
    for k1 in range(n + 1):
        for k2 in range(k1 + 1, n + 1):
            d = pu[k1] * pv[k2] - pu[k2] * pv[k1]
            if d.is_zero():
                continue
            x = (f[k1] * pv[k2] - f[k2] * pv[k1]) / d
            y = (pu[k1] * f[k2] - pu[k2] * f[k1]) / d
            if pu.scale(x) + pv.scale(y) == f:
                return x, y
            return None
    return None


def _solve_double(f, u):
    """v with f = Sym_n^{n-1}(u; v), or None."""
    n = f.arity
    u0, u1 = u
    # coefficients of v0 and v1 in each entry
    a = [AN(n - k) * self_pow(u0, n - k - 1) * self_pow(u1, k) if k <= n - 1 else ZERO
         for k in range(n + 1)]
    b = [AN(k) * self_pow(u1, k - 1) * self_pow(u0, n - k) if k >= 1 else ZERO
         for k in range(n + 1)]
    for k1 in range(n + 1):
        for k2 in range(k1 + 1, n + 1):
            d = a[k1] * b[k2] - a[k2] * b[k1]
            if d.is_zero():
                continue
            v0 = (f[k1] * b[k2] - f[k2] * b[k1]) / d
            v1 = (a[k1] * f[k2] - a[k2] * f[k1]) / d
            if sym_n_n1((u0, u1), (v0, v1), n) == f:
                return (v0, v1)
            return None
    return None


def _roots_of_triple(p, q, r):
    """Projective roots of p X^2 + q XY + r Y^2 as directions [X:Y].

    Returns ("distinct", u, v), ("double", u) or ("irrational",).
    """
    if not r.is_zero():
        disc = q * q - AN(4) * p * r
        if disc.is_zero():
            lam = -q / (AN(2) * r)
            return ("double", (ONE, lam))
        s = sqrt_in_field(disc)
        if s is None:
            return ("irrational",)
        l1 = (-q + s) / (AN(2) * r)
        l2 = (-q - s) / (AN(2) * r)
        return ("distinct", (ONE, l1), (ONE, l2))
    if not q.is_zero():
        # X * (p X + q Y): roots [0:1] and [q:-p]
        return ("distinct", (ZERO, ONE), (ONE, -p / q))
    if not p.is_zero():
        return ("double", (ZERO, ONE))
    return ("irrational",)  # zero triple carries no information


def _try_decompose_with_triple(f, triple):
    p, q, r = triple
    roots = _roots_of_triple(p, q, r)
    if roots[0] == "distinct":
        u, v = roots[1], roots[2]
        w = _solve_distinct_weights(f, u, v)
        if w is not None:
            return TensorDecomposition("distinct", f.arity, u=u, v=v, x=w[0], y=w[1])
    elif roots[0] == "double":
        u = roots[1]
        v = _solve_double(f, u)
        if v is not None:
            return TensorDecomposition("double", f.arity, u=u, v=v)
    return None


def tensor_decompose(f):
    n = f.arity
    if f.is_zero():
        return TensorDecomposition("zero", n)
    # degenerate test
    if not f[0].is_zero():
        lam = f[1] / f[0]
        if all(f[k] == f[0] * lam ** k for k in range(n + 1)):
            return TensorDecomposition("degenerate", n, u=(ONE, lam), c=f[0])
    elif all(f[k].is_zero() for k in range(n)):
        return TensorDecomposition("degenerate", n, u=(ZERO, ONE), c=f[n])
    if n == 1:
        return TensorDecomposition("degenerate", 1, u=(f[0], f[1]), c=ONE)
    rows = [(f[k], f[k + 1], f[k + 2]) for k in range(n - 1)]
    basis = _null_space(rows)
    if not basis:
        return TensorDecomposition("none", n)
    candidates = [tuple(v) for v in basis]
    if len(basis) >= 2:
        b0, b1 = basis[0], basis[1]
        for t in range(-3, 7):
            candidates.append(tuple(x + AN(t) * y for x, y in zip(b0, b1)))
    saw_irrational = False
    for cand in candidates:
        dec = _try_decompose_with_triple(f, cand)
        if dec is not None:
            return dec
        if _roots_of_triple(*cand)[0] == "irrational":
            saw_irrational = True
    return TensorDecomposition("irrational" if saw_irrational else "none", n)
