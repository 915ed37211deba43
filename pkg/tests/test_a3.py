"""Two-cycle potential calculus: normal forms, classes, flops, orbits."""

import pytest

from qpcalc.a3 import (
    A3Class,
    NotOnQ,
    a3_quiver,
    apq_orbit,
    apq_relations,
    class_potential,
    classify,
    commute_substitution,
    degrees_of,
    derived_orbit,
    flop,
    gv_set,
    lambda_orbit,
    mu_orbit,
    normalize,
    xy_potential,
    xy_word,
)
from qpcalc.field import QQ
from qpcalc.jacobi import jacobi_relations, jdim_oracle


def xyp(trunc, table):
    return xy_potential(trunc, {k: QQ(*v) if isinstance(v, tuple) else QQ(v)
                                for k, v in table.items()})


def test_normalize_kills_junk_exactly():
    f = xyp(13, {(2, 0): 1, (1, 1): 1, (0, 2): 1,
                 (2, 1): 3, (1, 2): -2, (3, 0): 5, (0, 3): 7,
                 (2, 2): 1, (4, 0): -4})
    g, w = normalize(f)
    assert g == xyp(13, {(2, 0): 1, (1, 1): 1, (0, 2): 1})
    assert w.apply_potential(f) == g


def test_normalize_degenerate_square_keeps_one_power():
    f = xyp(13, {(2, 0): 1, (1, 1): 1, (0, 2): (1, 4), (3, 0): 1, (4, 0): 1})
    g, w = normalize(f)
    mu = g.coeff(xy_word(g.quiver, 3, 0))
    assert mu != 0
    assert g == xyp(13, {(2, 0): 1, (1, 1): 1, (0, 2): (1, 4)}) + \
        xy_potential(13, {(3, 0): mu})
    assert w.apply_potential(f) == g


def test_normalize_fixed_point():
    f = xyp(14, {(3, 0): 1, (1, 1): 1, (0, 5): 1})
    g, w = normalize(f)
    assert g == f
    assert w.depth() is None


def test_classify_examples():
    c = classify(xyp(9, {(2, 0): 3, (1, 1): 1, (0, 2): (1, 12)}))
    assert (c.family, c.parameters) == (4, ())
    # scaling to the unit form would need a square root of 3
    assert c.exact_normalizer is None

    c = classify(xyp(14, {(3, 0): 1, (1, 1): 1, (0, 5): 1}))
    assert (c.family, c.parameters) == (3, (3, 5))

    c = classify(xyp(9, {(1, 1): 1}))
    assert (c.family, c.parameters) == (7, ())
    assert c.exact_normalizer is not None


def test_classify_is_stable_under_normalize():
    inputs = [
        xyp(13, {(2, 0): 2, (1, 1): 1, (0, 2): 3, (2, 1): 1, (0, 3): 2}),
        xyp(13, {(2, 0): 1, (1, 1): 1, (0, 2): (1, 4), (2, 1): 1, (4, 0): 1}),
        xyp(13, {(2, 0): 1, (1, 1): 1, (1, 2): 5}),
        xyp(13, {(1, 1): 1, (0, 3): 2, (2, 1): -1}),
    ]
    for f in inputs:
        c = classify(f)
        again = classify(c.normal_form)
        assert (again.family, again.parameters) == (c.family, c.parameters)


def test_exact_normalizer_witnesses_scaled_canonical():
    cases = [
        xyp(9, {(2, 0): 9, (1, 1): 1, (0, 2): (1, 3)}),            # family 1
        xyp(9, {(2, 0): 4, (1, 1): 1, (0, 2): (1, 16), (3, 0): 1}),  # family 2
        xyp(11, {(2, 0): 8, (1, 1): 1, (0, 3): (1, 4)}),           # family 3
        xyp(9, {(3, 0): 7, (1, 1): 1}),                            # family 5
        xyp(9, {(1, 1): 1, (0, 4): -3}),                           # family 6
    ]
    for f in cases:
        c = classify(f)
        assert c.exact_normalizer is not None
        canon = class_potential(c, f.truncation).scale(c.normalizer_scale)
        assert c.exact_normalizer.apply_potential(f) == canon


def test_normalizer_absent_when_root_irrational():
    c = classify(xyp(9, {(2, 0): 2, (1, 1): 1, (0, 2): 1}))
    assert (c.family, c.parameters) == (1, (QQ(2),))
    assert c.exact_normalizer is None


def test_flop_table_values():
    lam = QQ(1, 3)
    c = A3Class(1, (lam,))
    assert flop(c, 1).parameters == (QQ(1, 4) - lam,)
    assert flop(c, 3).parameters == (QQ(1, 4) - lam,)
    assert flop(c, 2).parameters == (1 / (16 * lam),)

    c2 = A3Class(2, (5,))
    assert flop(c2, 1).key() == (3, (2, 5))
    assert isinstance(flop(c2, 2), NotOnQ)
    assert flop(c2, 3).key() == (3, (5, 2))

    c4 = A3Class(4, ())
    assert flop(c4, 1).key() == (5, (2,))
    assert flop(c4, 2).key() == (4, ())
    assert flop(c4, 3).key() == (6, (2,))

    assert flop(A3Class(5, (2,)), 1).key() == (4, ())
    assert isinstance(flop(A3Class(5, (4,)), 1), NotOnQ)
    assert isinstance(flop(A3Class(3, (3, 5)), 1), NotOnQ)
    assert flop(A3Class(3, (2, 7)), 1).key() == (2, (7,))


def test_flop_is_an_involution_on_q():
    samples = [
        A3Class(1, (QQ(1),)), A3Class(1, (QQ(-2, 7),)), A3Class(2, (3,)),
        A3Class(2, (5,)), A3Class(3, (2, 4)), A3Class(3, (4, 2)),
        A3Class(3, (3, 3)), A3Class(4, ()), A3Class(5, (2,)),
        A3Class(5, (4,)), A3Class(6, (2,)), A3Class(6, (3,)), A3Class(7, ()),
    ]
    for c in samples:
        for curve in (1, 2, 3):
            r = flop(c, curve)
            if isinstance(r, NotOnQ):
                continue
            back = flop(r, curve)
            assert not isinstance(back, NotOnQ)
            assert back.key() == c.key()


def test_lambda_orbit_of_one():
    got = lambda_orbit(QQ(1))
    assert got == {QQ(1), QQ(-3, 4), QQ(-1, 12), QQ(1, 3), QQ(3, 16), QQ(1, 16)}
    # closed under both generators
    for lam in got:
        assert QQ(1, 4) - lam in got
        assert 1 / (16 * lam) in got


def test_derived_orbits():
    members, off = derived_orbit(A3Class(1, (QQ(1),)))
    assert {m.parameters[0] for m in members} == lambda_orbit(QQ(1))
    assert off == 0

    members, off = derived_orbit(A3Class(2, (4,)))
    assert {m.key() for m in members} == {(2, (4,)), (3, (2, 4)), (3, (4, 2))}
    assert off > 0

    members, off = derived_orbit(A3Class(3, (3, 5)))
    assert {m.key() for m in members} == {(3, (3, 5)), (3, (5, 3))}
    assert off > 0

    with pytest.raises(AssertionError):
        derived_orbit(A3Class(5, (3,)))


def test_gv_sets():
    assert gv_set(A3Class(1, (QQ(1),))) == [1, 1, 1, 1, 1, 1]
    assert gv_set(A3Class(2, (4,))) == [1, 1, 1, 1, 1, 3]
    assert gv_set(A3Class(3, (3, 5))) == [1, 1, 1, 1, 2, 4]
    with pytest.raises(ValueError):
        gv_set(A3Class(7, ()))


def test_mu_orbits_and_quaternion_type():
    assert mu_orbit(QQ(2)) == {QQ(2), QQ(-1), QQ(1, 2)}
    assert mu_orbit(QQ(1, 2)) == {QQ(2), QQ(-1), QQ(1, 2)}

    out = apq_orbit(2, 2, QQ(2))
    assert out["kind"] == "mu_orbit"
    assert set(out["mu_values"]) == {QQ(2), QQ(-1), QQ(1, 2)}
    assert out["lambda"] == QQ(1, 2)

    out = apq_orbit(3, 2, QQ(1))
    assert out == {"kind": "pair", "members": [(2, 3), (3, 2)], "off_q": True}

    out = apq_orbit(4, 2, QQ(1))
    assert out["lambda"] == QQ(1, 4)


def test_quaternion_type_dimension_matches_potential_model():
    q = a3_quiver()
    mu = QQ(2)
    rels = apq_relations(2, 2, mu, 12)
    f = xyp(12, {(2, 0): 1, (1, 1): 1}) + xy_potential(12, {(0, 2): mu / 4})
    assert jdim_oracle(q, rels, 12) == 20
    assert jdim_oracle(q, jacobi_relations(f), 12) == 20


def test_commute_substitution_exchanges_leading_pair():
    f = xyp(13, {(1, 1): 1, (2, 2): 3})
    word = xy_word(f.quiver, 2, 2)
    sub = commute_substitution(f, word, QQ(3))
    g = sub.apply_potential(f)
    assert g.coeff(word) == 0
    q = f.quiver
    # the replacement lands on the alternating cycle of the same bidegree
    alternating = [w for w, c in g.terms.items()
                   if degrees_of(q, w) == (2, 2)]
    assert len(alternating) == 1
    assert g.coeff(alternating[0]) == 3
