from qpcalc.field import QQ
from qpcalc.quiver import double_an
from qpcalc.series import NCElement


def el(q, name, coeff=1, D=8):
    return NCElement.arrow(q, D, name, coeff)


def test_addition_cancels():
    q = double_an(1)
    a = el(q, "a1")
    assert (a - a).is_zero()
    assert (a + a).coeff((1, (0,))) == QQ(2)


def test_multiplication_respects_composability():
    q = double_an(2, loopless=[1, 2])
    a1 = el(q, "a1")
    b1 = el(q, "b1")
    assert not (a1 * b1).is_zero()  # 1->2->1
    assert (a1 * a1).is_zero()  # 1->2 then 1->2 vanishes

    x = a1 * b1  # cycle at 1
    assert x.min_weight() == 2
    assert (x * x).max_weight() == 4


def test_truncation_drops_heavy_words():
    q = double_an(1)
    a = NCElement.arrow(q, 4, "a1")
    p = a * a * a  # weight 3 survives at truncation 4
    assert p.min_weight() == 3
    assert (p * a).is_zero()


def test_lazy_paths_are_units_at_their_vertex():
    q = double_an(2, loopless=[1, 2])
    e1 = NCElement.lazy(q, 6, 1)
    e2 = NCElement.lazy(q, 6, 2)
    a1 = el(q, "a1", D=6)
    assert (e1 * a1) == a1
    assert (a1 * e2) == a1
    assert (a1 * e1).is_zero()


def test_weight_component_picks_one_layer():
    q = double_an(1)
    a = NCElement.arrow(q, 8, "a1")
    s = a + (a * a).scale(QQ(1, 2))
    assert s.weight_component(2).coeff((1, (0, 0))) == QQ(1, 2)
    assert s.weight_component(3).is_zero()
