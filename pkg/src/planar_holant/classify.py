"""Membership tests for the tractable signature classes and the dichotomy
decision procedures built on top of them.

The classes come in three layers:

* base classes closed under simple operations: product-type (``in_P``),
  affine (``in_A``) and its twisted copy (``in_Adagger``), matchgate
  (``in_matchgate``) and its two basis changes (``in_Mhat``,
  ``in_MhatDagger``);
* vanishing-side classes read off in the Z basis: ``in_vanishing_*``,
  ``in_M4``, ``in_P2``, ``in_ZP``;
* one-signature transformable families P1 / A1 / A3 / M1 / M2 / M3,
  decided square-root-free from a tensor decomposition via the bilinear
  pairing <u, v> = u0 v0 + u1 v1 and the squared ratio beta^2.

On top of these sit the framework deciders: ``dichotomy_binary_eq``,
``dichotomy_plcsp`` / ``dichotomy_plcsp2``, ``dichotomy_single``,
``dichotomy_plholant_set`` and ``hypergraph_verdict``.  Each returns a
``SetVerdict`` whose tractable outcomes carry a checkable witness.
"""

from fractions import Fraction
from math import gcd, isqrt

from .algebra import AN, I, ONE, SQRT2, ZERO, ZETA, sqrt_in_field
from .sigcalc import (
    ArityError,
    SymmetricSignature,
    Transform2x2,
    H2,
    Z,
    Z_INV,
    all_but_one,
    diag,
    equality,
    exact_one,
    identity2,
    row_transform,
    tensor_decompose,
    transform,
    vanishing_degrees,
)

ZETA_INV = ZETA.inv()


class BadS(ValueError):
    """The arity set of a binary-with-equalities instance has no r >= 3."""


# -- small helpers ----------------------------------------------------------

def _pair(u, v):
    """Bilinear pairing <u, v> = u0 v0 + u1 v1 (no conjugation)."""
    return AN(u[0]) * AN(v[0]) + AN(u[1]) * AN(v[1])


def _endpoint_form(f):
    """Return (f0, fn) when every interior entry vanishes, else None."""
    if any(not e.is_zero() for e in f.entries[1:-1]):
        return None
    return f[0], f[-1]


def zhat(f):
    """The signature read in the Z basis: (Z^-1)^{tensor n} f."""
    return transform(Z_INV, f)


def is_degenerate(f):
    if f.is_zero():
        return True
    d = tensor_decompose(f)
    return d.kind in ("zero", "degenerate")


def _degenerate_direction(f):
    """The direction u of a nonzero degenerate f = c u^{tensor n}, else None."""
    d = tensor_decompose(f)
    if d.kind != "degenerate":
        return None
    return d.u


# -- base class memberships --------------------------------------------------

def in_P(f):
    """Product type: degenerate, binary disequality, or generalized equality."""
    if is_degenerate(f):
        return True
    if f.arity == 2 and f[0].is_zero() and f[2].is_zero() and not f[1].is_zero():
        return True
    end = _endpoint_form(f)
    return end is not None and not end[0].is_zero() and not end[1].is_zero()


def _fourth_power_one(x):
    return (x ** 4) == ONE


def in_A(f):
    """Affine class, decided by projective pattern matching.

    Nonzero members are degenerate with direction ratio in {0, oo} or a
    fourth root of unity, endpoint-supported with endpoint ratio a fourth
    root of unity, two-periodic with odd/even ratio +-i (or one side zero),
    or period-minus-one (f_{k+2} = -f_k) with f1/f0 in {0, oo, 1, -1}.
    """
    if f.is_zero():
        return True
    u = _degenerate_direction(f)
    if u is not None:
        u0, u1 = AN(u[0]), AN(u[1])
        if u0.is_zero() or u1.is_zero():
            return True
        return _fourth_power_one(u1 / u0)
    end = _endpoint_form(f)
    if end is not None:
        a, b = end
        return not a.is_zero() and not b.is_zero() and _fourth_power_one(b / a)
    evens = {f[k] for k in range(0, f.arity + 1, 2)}
    odds = {f[k] for k in range(1, f.arity + 1, 2)}
    if len(evens) <= 1 and len(odds) <= 1:
        a = next(iter(evens)) if evens else ZERO
        b = next(iter(odds)) if odds else ZERO
        if a.is_zero() or b.is_zero():
            return True
        return (b / a) ** 2 == -ONE
    if all((f[k + 2] + f[k]).is_zero() for k in range(f.arity - 1)):
        a, b = f[0], f[1]
        if a.is_zero() or b.is_zero():
            return True
        return (b / a) ** 2 == ONE
    return False


def in_Adagger(f):
    return in_A(transform(diag(1, ZETA_INV), f))


def in_matchgate(f):
    """Matchgate realizability: a parity condition plus a geometric stride.

    One parity class of entries must vanish; the other, read with stride 2,
    must either be a geometric progression of nonzero terms or have a single
    nonzero term sitting at an end of the stride sequence.
    """
    if f.is_zero():
        return True
    evens = [f[k] for k in range(0, f.arity + 1, 2)]
    odds = [f[k] for k in range(1, f.arity + 1, 2)]
    for live, dead in ((evens, odds), (odds, evens)):
        if any(not e.is_zero() for e in dead):
            continue
        support = [k for k, e in enumerate(live) if not e.is_zero()]
        if not support:
            return True
        if len(support) == 1:
            return support[0] in (0, len(live) - 1)
        if len(support) != support[-1] - support[0] + 1 or support[0] != 0 \
                or support[-1] != len(live) - 1:
            return False
        ratio = live[1] / live[0]
        return all(live[k + 1] == ratio * live[k] for k in range(len(live) - 1))
    return False


def in_Mhat(f):
    return in_matchgate(transform(H2, f))


def in_MhatDagger(f):
    return in_matchgate(zhat(f))


def in_ZP(f):
    return in_P(zhat(f))


def in_ZM(f):
    return in_matchgate(zhat(f))


# -- Z-side classes -----------------------------------------------------------

def in_M4_plus(f):
    return f.arity >= 1 and zhat(f).proportional_to(exact_one(f.arity))


def in_M4_minus(f):
    return f.arity >= 1 and zhat(f).proportional_to(all_but_one(f.arity))


def in_M4(f):
    return in_M4_plus(f) or in_M4_minus(f)


def in_P2(f):
    """Weighted equality in the Z basis, both weights nonzero."""
    if f.arity < 2:
        return False
    end = _endpoint_form(zhat(f))
    return end is not None and not end[0].is_zero() and not end[1].is_zero()


def _unary_in_P2(u):
    """Unary u belongs to F* cap P2 iff both Z-basis coordinates are nonzero."""
    p, q = Z_INV.apply(u)
    return not p.is_zero() and not q.is_zero()


def in_vanishing_plus(f):
    rdp, vdp, _, _ = vanishing_degrees(f)
    return 2 * vdp > f.arity


def in_vanishing_minus(f):
    _, _, rdm, vdm = vanishing_degrees(f)
    return 2 * vdm > f.arity


def in_R2(f, sigma):
    """f lies in R_2^sigma iff its sigma-side recurrence degree is at most 1."""
    rdp, _, rdm, _ = vanishing_degrees(f)
    return (rdp if sigma == "+" else rdm) <= 1


# -- transformable families ----------------------------------------------------

class Witness:
    """A transform T and canonical signature g with transform(T, g) = f."""

    __slots__ = ("transform", "canonical")

    def __init__(self, T, canonical):
        self.transform = T
        self.canonical = canonical

    def verify(self, f):
        return transform(self.transform, self.canonical) == f

    def __repr__(self):
        return "Witness(%r, %r)" % (self.transform, self.canonical)


class FamilyMemberships:
    """Memberships of one signature in the P1/A1/A3/M1/M2/M3 families."""

    __slots__ = ("p1", "a1", "a3", "m1", "m2", "m3", "caveat", "witness")

    def __init__(self, p1=False, a1=False, a3=False, m1=False, m2=False,
                 m3=False, caveat=False, witness=None):
        self.p1, self.a1, self.a3 = p1, a1, a3
        self.m1, self.m2, self.m3 = m1, m2, m3
        self.caveat = caveat
        self.witness = witness or {}

    def any(self):
        return self.p1 or self.a1 or self.a3 or self.m1 or self.m2 or self.m3


def in_transformable_family(f):
    """Decide P1, A1, A3, M1, M2, M3 membership for a non-degenerate f.

    Works from the order-2 tensor decomposition; every criterion is stated
    through the pairing <u, v> and the square beta^2, so no square roots are
    ever extracted.  Irrational decompositions yield all-false with a caveat.
    """
    if f.arity < 3:
        raise ArityError("transformable families need arity >= 3")
    d = tensor_decompose(f)
    if d.kind in ("zero", "degenerate"):
        raise ArityError("transformable families need a non-degenerate input")
    if d.kind == "irrational":
        return FamilyMemberships(caveat=True)
    if d.kind == "none":
        return FamilyMemberships()
    n = f.arity
    if d.kind == "double":
        u, v = d.u, d.v
        res = FamilyMemberships()
        if _pair(u, v).is_zero() and not _pair(u, u).is_zero():
            res.m3 = True
            T = Transform2x2(u[0], v[0], u[1], v[1])
            res.witness["M3"] = Witness(T, exact_one(n))
        return res
    # distinct: f = x u^n + y v^n
    u, v, x, y = d.u, d.v, d.x, d.y
    uu, uv, vv = _pair(u, u), _pair(u, v), _pair(v, v)
    res = FamilyMemberships()
    if uu.is_zero() or vv.is_zero() or x.is_zero() or y.is_zero():
        # isotropic directions: the only family left is the P2 side of M2
        res.m2 = in_P2(f)
        return res
    beta2 = (y * y * vv ** n) / (x * x * uu ** n)
    canonical = SymmetricSignature([x] + [ZERO] * (n - 1) + [y])
    wit = Witness(Transform2x2(u[0], v[0], u[1], v[1]), canonical)
    if uv.is_zero():
        res.p1 = True
        res.witness["P1"] = wit
        if beta2 ** 2 == ONE or (beta2 ** 2 == -ONE and n % 2 == 1):
            res.a1 = True
            res.witness["A1"] = wit
        if beta2 == (-ONE) ** n:
            res.m1 = True
            res.witness["M1"] = wit
    if uv * uv == -(uu * vv) and not uv.is_zero() and beta2 ** 2 == ONE:
        res.a3 = True
        res.witness["A3"] = wit
    if uv * uv != uu * vv and beta2 == ONE:
        res.m2 = True
        res.witness["M2"] = wit
    return res


# -- set-level transformability -------------------------------------------------

def _rational_nth_root(r, n):
    """An exact rational q with q^n = r, or None."""
    if r == 0:
        return Fraction(0)
    neg = r < 0
    if neg and n % 2 == 0:
        return None
    a, b = abs(r.numerator), r.denominator

    def iroot(m):
        if m == 0:
            return 0
        k = max(1, round(m ** (1.0 / n)))
        for c in (k - 1, k, k + 1):
            if c >= 0 and c ** n == m:
                return c
        return None

    p, q = iroot(a), iroot(b)
    if p is None or q is None:
        return None
    out = Fraction(p, q)
    return -out if neg else out


def nth_roots_in_field(w, n):
    """All field elements of the form q * sqrt2^e * zeta^j whose n-th power
    is w.  This covers every case arising from the harvested candidates;
    roots of other shapes are outside the search (best effort)."""
    roots = []
    if w.is_zero():
        return roots
    for e in (0, 1):
        for j in range(8):
            base = (SQRT2 ** e) * (ZETA ** j)
            residual = w * (base ** n).inv()
            if not residual.is_rational():
                continue
            q = _rational_nth_root(residual.rational(), n)
            if q is not None and q != 0:
                cand = AN(q) * base
                if cand ** n == w and cand not in roots:
                    roots.append(cand)
    return roots


def _anchor_decompositions(F):
    """Order-2 decompositions of the non-degenerate arity >= 3 signatures."""
    out = []
    for f in F:
        if f.arity >= 3 and not f.is_zero():
            d = tensor_decompose(f)
            if d.kind in ("distinct", "double"):
                out.append((f, d))
    return out


def p_transformable(F):
    """A transform T with (=_2) T^{tensor 2} in P and F within T P, or None."""
    if all(in_P(f) for f in F):
        return identity2()
    for f, d in _anchor_decompositions(F):
        if d.kind != "distinct" or d.x.is_zero() or d.y.is_zero():
            continue
        u, v = d.u, d.v
        uu, uv, vv = _pair(u, u), _pair(u, v), _pair(v, v)
        legit = (uv.is_zero() and not uu.is_zero() and not vv.is_zero()) or \
            (uu.is_zero() and vv.is_zero() and not uv.is_zero())
        if not legit:
            continue
        T = Transform2x2(u[0], v[0], u[1], v[1])
        S = T.inverse()
        if all(in_P(transform(S, g)) for g in F):
            return T
    return None


def a_transformable(F):
    """A transform T with (=_2) T^{tensor 2} in A and F within T A, or None."""
    if all(in_A(f) for f in F):
        return identity2()
    for f, d in _anchor_decompositions(F):
        if d.kind != "distinct" or d.x.is_zero() or d.y.is_zero():
            continue
        u, v = d.u, d.v
        uu, uv, vv = _pair(u, u), _pair(u, v), _pair(v, v)
        taus = []
        if uu.is_zero() and vv.is_zero() and not uv.is_zero():
            # P2-type anchor: T = Z diag(1, delta); harvest delta from the
            # weighted-equality forms in the set
            deltas = []
            for g in F:
                if g.is_zero() or not in_P2(g):
                    continue
                a, b = _endpoint_form(zhat(g))
                for r in range(4):
                    for target in (b / a * I ** r, a / b * I ** r):
                        deltas.extend(nth_roots_in_field(target, g.arity))
            for delta in deltas:
                T = Z @ diag(1, delta)
                S = T.inverse()
                if all(in_A(transform(S, g)) for g in F):
                    return T
            continue
        if uu.is_zero() or vv.is_zero():
            continue
        if uv.is_zero():
            # A1-type anchor: tau^2 = i^r <u,u>/<v,v>
            for r in range(4):
                s = sqrt_in_field(uu / vv * I ** r)
                if s is not None and not s.is_zero():
                    taus.extend([s, -s])
        if not uv.is_zero() and uv * uv == -(uu * vv):
            # A3-type anchor: tau = i^r <u,u>/<u,v>
            taus.extend(uu / uv * I ** r for r in range(4))
        base = Transform2x2(u[0], v[0], u[1], v[1])
        for tau in taus:
            T = base @ diag(1, tau)
            if not in_A(row_transform(equality(2), T)):
                continue
            S = T.inverse()
            if all(in_A(transform(S, g)) for g in F):
                return T
    return None


def m_transformable(F):
    """A transform T with (=_2) T^{tensor 2} in M and F within T M, or None.

    By the characterization of matchgate transformability it suffices to try
    T = Z and T = H for H in SO_2; the latter diagonalize in the Z basis as
    Z diag(mu, 1/mu) Z^-1, so only kappa = mu^2 matters and the candidates
    are harvested from the anchors' decompositions.
    """
    if all(in_ZM(f) for f in F):
        return Z
    kappas = []
    for f, d in _anchor_decompositions(F):
        if d.kind == "double":
            p, q = Z_INV.apply(d.u)
            if not q.is_zero():
                kappas.extend([p / q, -(p / q)])
            continue
        p, q = Z_INV.apply(d.u)
        pp, qq = Z_INV.apply(d.v)
        if not (p.is_zero() or q.is_zero() or pp.is_zero() or qq.is_zero()):
            s = sqrt_in_field(p * pp / (q * qq))
            if s is not None and not s.is_zero():
                kappas.extend([s, -s])
        elif in_P2(f):
            a, b = _endpoint_form(zhat(f))
            kappas.extend(nth_roots_in_field(a / b, f.arity))
            kappas.extend(nth_roots_in_field(-(a / b), f.arity))
    for kappa in kappas:
        if kappa.is_zero():
            continue
        C = Z @ diag(1, kappa) @ Z_INV
        if all(in_matchgate(transform(C, g)) for g in F):
            return C.inverse()
    return None


# -- verdicts --------------------------------------------------------------------

class SetVerdict:
    """Outcome of a dichotomy decision for a framework."""

    __slots__ = ("framework", "tractable", "case", "obstruction", "witness",
                 "caveat")

    def __init__(self, framework, tractable, case=None, obstruction=None,
                 witness=None, caveat=False):
        self.framework = framework
        self.tractable = tractable
        self.case = case
        self.obstruction = obstruction
        self.witness = witness
        self.caveat = caveat

    def __repr__(self):
        tag = "Tractable(%s)" % self.case if self.tractable \
            else "PHard(%s)" % self.obstruction
        return "SetVerdict(%s, %s)" % (self.framework, tag)


def classify_signature(f):
    """Per-signature table of all class memberships."""
    table = {
        "P": in_P(f), "A": in_A(f), "Adagger": in_Adagger(f),
        "Matchgate": in_matchgate(f), "Mhat": in_Mhat(f),
        "MhatDagger": in_MhatDagger(f), "ZP": in_ZP(f),
        "Vplus": in_vanishing_plus(f), "Vminus": in_vanishing_minus(f),
        "M4plus": in_M4_plus(f), "M4minus": in_M4_minus(f),
        "P2": in_P2(f), "degenerate": is_degenerate(f),
    }
    for name in ("P1", "A1", "A3", "M1", "M2", "M3"):
        table[name] = False
    table["caveat"] = False
    if f.arity >= 3 and not is_degenerate(f):
        fam = in_transformable_family(f)
        table.update({"P1": fam.p1, "A1": fam.a1, "A3": fam.a3,
                      "M1": fam.m1, "M2": fam.m2 or table["P2"],
                      "M3": fam.m3, "caveat": fam.caveat})
    return table


def dichotomy_binary_eq(f, S):
    """Binary signature with a set of equalities =_k for k in S."""
    S = sorted(set(int(k) for k in S))
    if not S or max(S) < 3 or min(S) < 1:
        raise BadS("the arity set must contain some r >= 3")
    d = 0
    for k in S:
        d = gcd(d, k)
    f0, f1, f2 = AN(f[0]), AN(f[1]), AN(f[2])
    conditions = [
        ("condition 1", f0 * f2 == f1 * f1),
        ("condition 2", f0.is_zero() and f2.is_zero()),
        ("condition 3", f1.is_zero()),
        ("condition 4", f0 * f2 == -(f1 * f1)
         and f0 ** d == -(f2 ** d) and not (f0 ** d).is_zero()),
        ("condition 5", f0 ** d == f2 ** d and not (f0 ** d).is_zero()),
    ]
    for name, ok in conditions:
        if ok:
            return SetVerdict("binary-eq", True, case=name)
    return SetVerdict("binary-eq", False,
                      obstruction="all five tractability conditions fail "
                                  "(gcd %d)" % d)


def _containment_verdict(framework, F, classes):
    fails = []
    holds = []
    for name, test in classes:
        bad = next((f for f in F if not test(f)), None)
        if bad is None:
            holds.append(name)
        else:
            fails.append("%r is not in %s" % (bad, name))
    if holds:
        return SetVerdict(framework, True, case=", ".join(holds))
    return SetVerdict(framework, False, obstruction="; ".join(fails))


def dichotomy_plcsp(F):
    return _containment_verdict(
        "plcsp", list(F), [("P", in_P), ("A", in_A), ("Mhat", in_Mhat)])


def dichotomy_plcsp2(F):
    return _containment_verdict(
        "plcsp2", list(F),
        [("P", in_P), ("A", in_A), ("Adagger", in_Adagger),
         ("Mhat", in_Mhat), ("MhatDagger", in_MhatDagger)])


def dichotomy_single(f):
    """One non-degenerate signature of arity >= 3 against all planar grids."""
    if is_degenerate(f):
        return SetVerdict("single", True, case="degenerate")
    if f.arity < 3:
        raise ArityError("the single-signature dichotomy needs arity >= 3")
    fam = in_transformable_family(f)
    cases = [
        ("P1", fam.p1), ("M2", fam.m2 or in_P2(f)), ("A3", fam.a3),
        ("M3", fam.m3),
        ("M4", in_M4(f)),
        ("vanishing", in_vanishing_plus(f) or in_vanishing_minus(f)),
    ]
    for name, ok in cases:
        if ok:
            return SetVerdict("single", True, case=name,
                              witness=fam.witness.get(name))
    return SetVerdict(
        "single", False, caveat=fam.caveat,
        obstruction="not in P1, M2, A3, M3, M4, or a vanishing class")


def _apm_verdict(F, allowed, obstruction):
    """Try the listed set-level transformability routes in order."""
    for case, finder in allowed:
        T = finder(F)
        if T is not None:
            return SetVerdict("plholant", True, case=case, witness=T)
    return SetVerdict("plholant", False, obstruction=obstruction)


ROUTE_A = ("A-transformable (case 2)", a_transformable)
ROUTE_P = ("P-transformable (case 3)", p_transformable)
ROUTE_M = ("M-transformable (case 6)", m_transformable)


def dichotomy_plholant_set(F):
    """The full dichotomy for a finite set of symmetric signatures."""
    sigs = [f for f in F if not f.is_zero()]
    nd3 = [f for f in sigs if f.arity >= 3 and not is_degenerate(f)]
    binaries = [f for f in sigs if f.arity == 2 and not is_degenerate(f)]
    degs = [f for f in sigs if is_degenerate(f)]
    if not nd3:
        return SetVerdict("plholant", True,
                          case="all non-degenerate arity <= 2 (case 1)")

    caveat = False
    fams = []
    for g in nd3:
        fam = in_transformable_family(g)
        caveat = caveat or fam.caveat
        fams.append(fam)

    # an anchor in P1, M2 \ P2, A3 or M3 pins down the possible transforms
    for g, fam in zip(nd3, fams):
        if fam.p1 or (fam.m2 and not in_P2(g)):
            return _apm_verdict(
                F, [ROUTE_A, ROUTE_P, ROUTE_M],
                "anchor %r in P1/M2 but the set is not A-, P-, or "
                "M-transformable" % g)
        if fam.a3:
            return _apm_verdict(
                F, [ROUTE_A, ROUTE_M],
                "anchor %r in A3 but the set is not A- or M-transformable" % g)
        if fam.m3:
            return _apm_verdict(
                F, [ROUTE_M],
                "anchor %r in M3 but the set is not M-transformable" % g)

    # beyond those anchors everything of high arity must be P2, M4 or vanishing
    for g in nd3:
        if not (in_P2(g) or in_M4(g)
                or in_vanishing_plus(g) or in_vanishing_minus(g)):
            return SetVerdict(
                "plholant", False, caveat=caveat,
                obstruction="%r is outside every tractable family" % g)

    strict_v = [g for g in nd3 if not in_M4(g)
                and (in_vanishing_plus(g) or in_vanishing_minus(g))]
    if strict_v:
        sigma = "+" if in_vanishing_plus(strict_v[0]) else "-"
        in_v = in_vanishing_plus if sigma == "+" else in_vanishing_minus
        for g in nd3:
            if not in_v(g):
                return SetVerdict(
                    "plholant", False,
                    obstruction="%r mixes with the vanishing side %s"
                                % (g, sigma))
        for h in binaries:
            if not in_R2(h, sigma):
                return SetVerdict(
                    "plholant", False,
                    obstruction="binary %r is incompatible with vanishing "
                                "side %s" % (h, sigma))
        if all(in_R2(g, sigma) for g in nd3):
            return SetVerdict("plholant", True,
                              case="all non-degenerate in R2^%s (case 5)"
                                   % sigma)
        si = I if sigma == "+" else -I
        for v in degs:
            u = _degenerate_direction(v)
            if u is None:
                continue
            u0, u1 = AN(u[0]), AN(u[1])
            if not (u1 == si * u0 and not u0.is_zero()):
                return SetVerdict(
                    "plholant", False,
                    obstruction="degenerate %r is incompatible with "
                                "vanishing side %s" % (v, sigma))
        return SetVerdict("plholant", True,
                          case="vanishing side %s with compatible binaries "
                               "(case 4)" % sigma)

    # now every arity >= 3 non-degenerate signature is in P2 or M4
    m4s = [g for g in nd3 if in_M4(g)]
    p2s = [g for g in nd3 if in_P2(g) and not in_M4(g)]

    if not p2s:
        sigmas = {"+" if in_M4_plus(g) else "-" for g in m4s}
        if len(sigmas) == 1:
            sigma = next(iter(sigmas))
            offenders = [h for h in binaries if not in_R2(h, sigma)]
            if not offenders:
                return SetVerdict("plholant", True,
                                  case="all non-degenerate in R2^%s (case 5)"
                                       % sigma)
            for h in offenders:
                end = _endpoint_form(zhat(h))
                if end is None or end[0].is_zero() or end[1].is_zero():
                    return SetVerdict(
                        "plholant", False,
                        obstruction="binary %r is incompatible with the "
                                    "matching side" % h)
        else:
            for h in binaries:
                hh = zhat(h)
                end = _endpoint_form(hh)
                geneq = end is not None and not end[0].is_zero() \
                    and not end[1].is_zero()
                diseq = hh.proportional_to(exact_one(2))
                if not (geneq or diseq):
                    return SetVerdict(
                        "plholant", False,
                        obstruction="binary %r is incompatible with mixed "
                                    "matching sides" % h)
            for v in degs:
                u = _degenerate_direction(v)
                if u is None:
                    continue
                u0, u1 = AN(u[0]), AN(u[1])
                if not (not u0.is_zero() and (u1 == I * u0 or u1 == -I * u0)):
                    return SetVerdict(
                        "plholant", False,
                        obstruction="degenerate %r is incompatible with "
                                    "mixed matching sides" % v)
        if all(in_ZM(g) for g in sigs):
            return SetVerdict("plholant", True,
                              case="M-transformable (case 6)", witness=Z)
        return SetVerdict("plholant", False,
                          obstruction="matching-side set is not contained "
                                      "in the Z image of the matchgates")

    if not m4s:
        offenders = [h for h in binaries if not in_ZP(h)]
        if offenders:
            return _apm_verdict(
                F, [ROUTE_A, ROUTE_P, ROUTE_M],
                "binary %r leaves the Z image of the product type and the "
                "set is not A-, P-, or M-transformable" % offenders[0])
        return SetVerdict("plholant", True,
                          case="P-transformable (case 3)", witness=Z)

    # mixed weighted equalities and perfect-matching side
    sigmas = {"+" if in_M4_plus(g) else "-" for g in m4s}
    if len(sigmas) == 2:
        return SetVerdict("plholant", False,
                          obstruction="both matching sides mix with "
                                      "weighted equalities")
    sigma = next(iter(sigmas))
    arities = [g.arity for g in p2s]
    arities += [h.arity for h in binaries if in_P2(h)]
    for v in degs:
        u = _degenerate_direction(v)
        if u is not None and _unary_in_P2(u):
            arities.append(1)
    d = 0
    for a in arities:
        d = gcd(d, a)
    if d <= 4:
        return SetVerdict(
            "plholant", False,
            obstruction="weighted equalities of Z-arity gcd %d <= 4 mix "
                        "with the matching side" % d)
    offenders = [h for h in binaries if not in_ZP(h)]
    if offenders:
        return _apm_verdict(
            F, [ROUTE_A, ROUTE_P, ROUTE_M],
            "binary %r leaves the Z image of the product type" % offenders[0])
    in_m4_sigma = in_M4_plus if sigma == "+" else in_M4_minus
    for g in sigs:
        if not (in_ZP(g) or in_m4_sigma(g)):
            return SetVerdict(
                "plholant", False,
                obstruction="%r is outside the Z product type and the %s "
                            "matching side" % (g, sigma))
    return SetVerdict("plholant", True,
                      case="weighted equalities (gcd %d) with the %s "
                           "matching side (case 7)" % (d, sigma))


def hypergraph_verdict(S):
    """Counting perfect matchings of planar hypergraphs with edge sizes S."""
    sizes = list(S)
    if not sizes:
        raise ValueError("the size multiset must be nonempty")
    t = 0
    for k in sizes:
        t = gcd(t, int(k))
    if t >= 5 or set(sizes) <= {1, 2}:
        return SetVerdict("hpm", True, case="gcd %d" % t)
    return SetVerdict("hpm", False,
                      obstruction="gcd %d <= 4 with a hyperedge of size >= 3"
                                  % t)


# quick self checks on canonical members
assert in_A(SymmetricSignature([2, 0, 2, 0]))
assert in_P(SymmetricSignature([1, 0, 0, 5])) and not in_A(
    SymmetricSignature([1, 0, 0, 5]))
assert in_matchgate(SymmetricSignature([1, 0, 3, 0, 9]))
assert in_M4_plus(transform(Z, exact_one(5)))
assert in_P2(transform(Z, SymmetricSignature([1, 0, 0, 0, 3])))
