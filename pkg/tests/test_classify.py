import random
from fractions import Fraction

import pytest

from planar_holant.algebra import AN, AlgebraicNumber, I, ONE, ZERO, ZETA
from planar_holant.sigcalc import (
    ArityError,
    SymmetricSignature,
    Transform2x2,
    Z,
    all_but_one,
    degenerate,
    diag,
    equality,
    exact_one,
    gen_eq,
    sig,
    transform,
)
from planar_holant.classify import (
    BadS,
    classify_signature,
    dichotomy_binary_eq,
    dichotomy_plcsp,
    dichotomy_plcsp2,
    dichotomy_plholant_set,
    dichotomy_single,
    hypergraph_verdict,
    in_A,
    in_Adagger,
    in_M4,
    in_M4_minus,
    in_M4_plus,
    in_Mhat,
    in_MhatDagger,
    in_P,
    in_P2,
    in_ZP,
    in_matchgate,
    in_transformable_family,
    in_vanishing_minus,
    in_vanishing_plus,
)

ALPHA = ZETA


def orth(t):
    c = AN(Fraction(1 - t * t, 1 + t * t))
    s = AN(Fraction(2 * t, 1 + t * t))
    return Transform2x2(c, -s, s, c)


def rand_orth(rnd):
    t = Fraction(rnd.randint(-9, 9), rnd.randint(1, 9))
    H = orth(t)
    if rnd.random() < 0.5:
        H = H @ diag(1, -1)
    return H


def rand_nonzero(rnd):
    while True:
        x = AlgebraicNumber(rnd.randint(-4, 4), rnd.randint(-2, 2),
                            rnd.randint(-2, 2), 0)
        if not x.is_zero():
            return x


def two_dir(H, u_ratio, v_ratio, x, y, n):
    u = H.apply((1, u_ratio))
    v = H.apply((1, v_ratio))
    return degenerate(u, n).scale(x) + degenerate(v, n).scale(y)


# -- generated members accepted by the membership tests ------------------------

def gen_member(cls, rnd):
    n = rnd.randint(3, 6)
    c = rand_nonzero(rnd)
    H = rand_orth(rnd)
    if cls == "P1":
        return two_dir(H, 1, -1, c, c * rand_nonzero(rnd), n)
    if cls == "A1":
        t, r = rnd.randint(0, 1), rnd.randint(0, 3)
        beta = ALPHA ** (t * n + 2 * r)
        return two_dir(H, 1, -1, c, c * beta, n)
    if cls == "M1":
        return two_dir(H, 1, -1, c, c * I ** n * (-1) ** rnd.randint(0, 1), n)
    if cls == "A3":
        return two_dir(H, ALPHA, -ALPHA, c, c * I ** rnd.randint(0, 3), n)
    if cls == "P2":
        return two_dir(Transform2x2(1, 0, 0, 1), I, -I,
                       c, rand_nonzero(rnd), n)
    if cls == "M2":
        gamma = rand_nonzero(rnd)
        while gamma == I or gamma == -I:
            gamma = rand_nonzero(rnd)
        return two_dir(H, gamma, -gamma, c, c * (-1) ** rnd.randint(0, 1), n)
    if cls == "M3":
        return transform(H, exact_one(n)).scale(c)
    if cls == "M4":
        base = exact_one(n) if rnd.random() < 0.5 else all_but_one(n)
        return transform(Z, base).scale(c)
    if cls == "P":
        kind = rnd.randint(0, 2)
        if kind == 0:
            return gen_eq(rand_nonzero(rnd), rand_nonzero(rnd), n)
        if kind == 1:
            return sig([0, c, 0])
        return degenerate((rand_nonzero(rnd), rand_nonzero(rnd)), n).scale(c)
    if cls == "A":
        r = rnd.randint(0, 3)
        kind = rnd.randint(0, 2)
        dirs = [((1, 0), (0, 1)), ((1, 1), (1, -1)), ((1, I), (1, -I))][kind]
        return (degenerate(dirs[0], n) + degenerate(dirs[1], n).scale(I ** r)
                ).scale(c)
    if cls == "Adagger":
        g = gen_member("A", rnd)
        return transform(diag(1, ZETA), g)
    if cls == "Matchgate":
        r = rand_nonzero(rnd)
        entries = [ZERO] * (n + 1)
        start = rnd.randint(0, 1)
        val = c
        for k in range(start, n + 1, 2):
            entries[k] = val
            val = val * r
        return SymmetricSignature(entries)
    if cls == "Mhat":
        return transform(Transform2x2(1, 1, 1, -1), gen_member("Matchgate", rnd))
    if cls == "MhatDagger":
        return transform(Z, gen_member("Matchgate", rnd))
    if cls == "Vplus":
        hat = [rand_nonzero(rnd) if k <= (n - 1) // 2 else ZERO
               for k in range(n + 1)]
        return transform(Z, SymmetricSignature(hat))
    raise ValueError(cls)


MEMBERSHIP = {
    "P": in_P,
    "A": in_A,
    "Adagger": in_Adagger,
    "Matchgate": in_matchgate,
    "Mhat": in_Mhat,
    "MhatDagger": in_MhatDagger,
    "P2": in_P2,
    "M4": in_M4,
    "Vplus": in_vanishing_plus,
}

FAMILY = {
    "P1": lambda r: r.p1,
    "A1": lambda r: r.a1,
    "A3": lambda r: r.a3,
    "M1": lambda r: r.m1,
    "M2": lambda r: r.m2,
    "M3": lambda r: r.m3,
}


@pytest.mark.parametrize("cls", sorted(MEMBERSHIP))
def test_generated_members_accepted(cls):
    rnd = random.Random(hash(cls) % 100000)
    for _ in range(60):
        f = gen_member(cls, rnd)
        assert MEMBERSHIP[cls](f), (cls, f)


@pytest.mark.parametrize("cls", sorted(FAMILY))
def test_generated_family_members_accepted(cls):
    rnd = random.Random(hash(cls) % 100000 + 1)
    for _ in range(60):
        f = gen_member(cls, rnd)
        res = in_transformable_family(f)
        assert FAMILY[cls](res), (cls, f)
        for wit in res.witness.values():
            assert wit.verify(f)


def test_hierarchy_on_samples():
    rnd = random.Random(7)
    for cls in ("M1", "A1", "P1", "P2", "M2"):
        for _ in range(40):
            f = gen_member(cls, rnd)
            res = in_transformable_family(f)
            if res.m1:
                assert res.a1
            if res.a1:
                assert res.p1
            if in_P2(f):
                assert res.m2 or in_P2(f)  # P2 is the isotropic part of M2
                assert in_transformable_family(f).m2


# -- membership fixtures -------------------------------------------------------

def test_base_class_fixtures():
    assert in_A(sig([2, 0, 2, 0]))
    assert in_P(sig([1, 0, 0, 5])) and not in_A(sig([1, 0, 0, 5]))
    f = sig([1, 3, 1])
    assert in_Mhat(f)
    assert not in_P(f) and not in_A(f) and not in_Adagger(f)
    g = sig([1, 3, -1])
    assert in_MhatDagger(g) and not in_Mhat(g)
    h = sig([1, ALPHA, -(ALPHA * ALPHA)])
    assert in_Adagger(h) and not in_A(h)
    assert in_matchgate(sig([1, 0, 3, 0, 9]))
    assert not in_matchgate(sig([1, 0, 3, 0, 10]))
    assert in_matchgate(sig([0, 1, 0, 0]))
    assert not in_matchgate(sig([0, 0, 1, 0, 0]))


def test_z_side_fixtures():
    assert in_M4_plus(transform(Z, exact_one(5)))
    assert in_M4_minus(transform(Z, all_but_one(4)))
    assert in_P2(transform(Z, sig([1, 0, 0, 0, 3])))
    assert in_ZP(transform(Z, gen_eq(2, 3, 4)))
    # canonical vanishing form that is not a matching signature
    f = transform(Z, sig([5, 1, 0, 0, 0]))
    assert in_vanishing_plus(f) and not in_M4_plus(f)


def test_degenerate_directions_in_A():
    assert in_A(degenerate((1, I), 4))
    assert in_A(degenerate((1, -1), 3).scale(AN(7)))
    assert in_A(degenerate((0, 1), 5))
    assert not in_A(degenerate((1, 2), 3))


def test_family_fixtures():
    f = degenerate((1, 1), 4) + degenerate((1, -1), 4).scale(5)
    res = in_transformable_family(f)
    assert res.p1 and not res.a1  # beta^2 = 25 is not a root of unity
    res = in_transformable_family(exact_one(5))
    assert res.m3 and res.witness["M3"].verify(exact_one(5))
    a3 = degenerate((1, ALPHA), 4) + degenerate((1, -ALPHA), 4).scale(I)
    assert in_transformable_family(a3).a3
    with pytest.raises(ArityError):
        in_transformable_family(sig([1, 0, 1]))
    with pytest.raises(ArityError):
        in_transformable_family(degenerate((1, 2), 4))


def test_irrational_decomposition_caveat():
    res = in_transformable_family(sig([1, 1, 2, 3]))
    assert res.caveat and not res.any()


def test_canonical_vplus_not_m4():
    # hat form [x, 1, 0, ..., 0] with x != 0
    f = transform(Z, sig([3, 1, 0, 0, 0]))
    assert in_vanishing_plus(f) and not in_M4_plus(f)


# -- dichotomies ----------------------------------------------------------------

def test_binary_eq_dichotomy():
    assert dichotomy_binary_eq([1, 2, 4], {3, 6}).tractable
    assert dichotomy_binary_eq([0, 1, 0], {4}).tractable
    assert not dichotomy_binary_eq([3, 1, 0], {3}).tractable
    assert dichotomy_binary_eq([1, 2, -1], {4}).case == "condition 5"
    v = dichotomy_binary_eq([1, 1, -1], {3})  # f0 f2 = -f1^2, odd gcd
    assert v.tractable and v.case == "condition 4"
    with pytest.raises(BadS):
        dichotomy_binary_eq([1, 2, 3], {2})


def test_plcsp_dichotomies():
    b = AN(3)
    f = sig([1, b, 1])
    assert dichotomy_plcsp2([f]).tractable
    assert dichotomy_plcsp2([f]).case == "Mhat"
    g = sig([1, ALPHA, -(ALPHA * ALPHA)])
    assert not dichotomy_plcsp2([f, g]).tractable
    assert dichotomy_plcsp([equality(3)]).tractable
    assert not dichotomy_plcsp([sig([3, 1, 0])]).tractable


def test_single_dichotomy():
    assert dichotomy_single(exact_one(7)).case == "M3"
    assert not dichotomy_single(sig([2, 1, 0, 0, 0])).tractable
    z = transform(Z, sig([3, 1, 0, 0, 5]))
    assert not dichotomy_single(z).tractable
    assert dichotomy_single(degenerate((2, 3), 4)).case == "degenerate"
    v = transform(Z, sig([3, 1, 0, 0, 0]))
    assert dichotomy_single(v).case == "vanishing"
    assert dichotomy_single(transform(Z, exact_one(4))).tractable
    assert dichotomy_single(transform(Z, gen_eq(1, 7, 5))).case == "M2"


def test_plholant_set_fixtures():
    F = [transform(Z, equality(5)), transform(Z, exact_one(3))]
    v = dichotomy_plholant_set(F)
    assert v.tractable and "case 7" in v.case
    F = [transform(Z, equality(4)), transform(Z, exact_one(3))]
    assert not dichotomy_plholant_set(F).tractable
    f = transform(Z, sig([1, 1, 1, 0, 0, 0]))
    g = transform(Z, sig([0, 0, 0, 1, 1, 1]))
    assert in_vanishing_plus(f) and not in_M4(f)
    assert in_vanishing_minus(g) and not in_M4(g)
    assert not dichotomy_plholant_set([f, g]).tractable
    assert dichotomy_plholant_set([f]).tractable
    assert dichotomy_plholant_set([sig([1, 2, 3])]).tractable  # arity <= 2


def test_plholant_set_transform_routes():
    rnd = random.Random(11)
    H = rand_orth(rnd)
    T = H @ diag(2, AN(Fraction(1, 3)))
    F = [transform(T, gen_eq(1, 5, 4)), transform(T, gen_eq(2, 3, 3))]
    v = dichotomy_plholant_set(F)
    assert v.tractable and "case 3" in v.case
    F = [transform(H, exact_one(4)), transform(H, sig([1, 0, 2, 0, 4, 0]))]
    v = dichotomy_plholant_set(F)
    assert v.tractable and "case 6" in v.case
    # an A-route set: shared orthogonal transform of affine canonical forms
    F = [transform(H, degenerate((1, 1), 4) + degenerate((1, -1), 4).scale(I)),
         transform(H, degenerate((1, 1), 3) + degenerate((1, -1), 3).scale(-1))]
    v = dichotomy_plholant_set(F)
    assert v.tractable and ("case 2" in v.case or "case 3" in v.case
                            or "case 6" in v.case)


def test_plholant_set_m4_sides():
    fp = transform(Z, exact_one(4))
    fm = transform(Z, all_but_one(4))
    v = dichotomy_plholant_set([fp, fm])
    assert v.tractable and "case 6" in v.case
    # mixing both matching sides with a weighted equality is hard
    g = transform(Z, gen_eq(1, 1, 5))
    assert not dichotomy_plholant_set([fp, fm, g]).tractable
    # one matching side with a compatible weighted equality of arity 5
    v = dichotomy_plholant_set([fp, g])
    assert v.tractable and "case 7" in v.case


def test_hypergraph_verdict():
    assert hypergraph_verdict([5, 10]).tractable
    assert hypergraph_verdict([1, 2, 2]).tractable
    assert not hypergraph_verdict([3, 6]).tractable
    assert not hypergraph_verdict([2, 3]).tractable
    assert hypergraph_verdict([6, 8]).tractable is False  # gcd 2, size 6 > 2
    with pytest.raises(ValueError):
        hypergraph_verdict([])


def test_classify_signature_table():
    t = classify_signature(transform(Z, exact_one(4)))
    assert t["M4plus"] and t["Vplus"] and not t["P"]
    t = classify_signature(equality(3))
    assert t["P"] and t["A"] and t["Mhat"] and not t["M4plus"]
    t = classify_signature(exact_one(5))
    assert t["M3"] and t["Matchgate"]
