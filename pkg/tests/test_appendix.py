"""Cyclic loop quiver: confluent system, basis counts, exact complex."""

import random

from qpcalc.appendix import (
    appendix_checks,
    appendix_quiver,
    appendix_system,
    euler_count,
    exactness_check,
    expected_count,
    irreducible_words_oracle,
)
from qpcalc.rewrite import check_resolvable, overlaps
from qpcalc.series import NCElement


def test_quiver_shape():
    q = appendix_quiver(2)
    assert len(q.arrows) == 9 + 6
    assert all(q.arrows[q.loop(t, i)].weight == 2 for t in range(3) for i in range(3))
    assert q.arrows[q.a(2)].head == 0 and q.arrows[q.b(2)].tail == 0
    # descending loop ids within a vertex orient the commutators
    assert q.loop(0, 2) < q.loop(0, 1) < q.loop(0, 0)


def test_reduce_loop_past_arrow_pair():
    system = appendix_system(2, 12)
    q = system.quiver
    el = NCElement.from_word(q, 12, (0, (q.loop(0, 1), q.a(0), q.b(0))))
    out = system.reduce(el)
    assert out.terms == {(0, (q.loop(0, 0), q.loop(0, 1))): 1}


def test_reduce_double_wrap_example():
    # b0 bn J an a0 with J a loop run at vertex n lands at l(1,0) J_1 l(1,n)
    system = appendix_system(2, 14)
    q = system.quiver
    word = (1, (q.b(0), q.b(2), q.loop(2, 1), q.a(2), q.a(0)))
    out = system.reduce(NCElement.from_word(q, 14, word))
    assert out.terms == {(1, (q.loop(1, 0), q.loop(1, 1), q.loop(1, 2))): 1}


def test_irreducible_word_stays_put():
    system = appendix_system(2, 12)
    q = system.quiver
    word = (0, (q.a(0), q.a(1), q.loop(2, 0), q.loop(2, 2)))
    el = NCElement.from_word(q, 12, word)
    assert system.reduce(el) == el


def test_loop_loop_arrow_overlap_resolves_to_shared_word():
    system = appendix_system(2, 12)
    q = system.quiver
    target = None
    for o in overlaps(system):
        ids = o.word()[1]
        if ids == (q.loop(0, 2), q.loop(0, 1), q.a(0)):
            target = o
    assert target is not None
    ok, left_nf, right_nf = check_resolvable(target, system)
    assert ok
    expected = {(0, (q.a(0), q.loop(1, 1), q.loop(1, 2))): 1}
    assert left_nf.terms == expected and right_nf.terms == expected


def test_checks_report_small():
    rep = appendix_checks(2, 8)
    assert rep["pass"]
    assert rep["counts"] == [1, 2, 5, 8, 14, 20, 30, 40, 55]
    assert rep["overlaps"]["count"] > 0 and not rep["overlaps"]["witnesses"]
    assert rep["completion_fixpoint"]["pass"]


def test_euler_counts():
    assert [euler_count(2, d) for d in range(6)] == [1, 0, 1, 0, 1, 0]
    assert [euler_count(1, d) for d in range(6)] == [1, 0, 0, 0, 0, 0]
    assert euler_count(3, 4) == 3  # monomials of weight 4 in two variables


def test_expected_count_matches_engine_for_n3():
    system = appendix_system(3, 8)
    counts = system.irreducible_counts(8, head=2)
    assert counts == [expected_count(3, d) for d in range(8)]


def test_exactness_small():
    ex = exactness_check(2, 8)
    assert ex["pass"]
    assert ex["degrees"][0]["dims"] == (1, 4, 16, 14, 1)
    assert ex["degrees"][0]["ranks"] == (1, 3, 13)


def test_corner_loop_multiplication_injective():
    system = appendix_system(2, 12)
    q = system.quiver
    # no rule lead ends with a top-index loop, so appending one keeps
    # irreducibility and distinctness
    top = {q.loop(t, 2) for t in range(3)}
    assert all(r.lead[1][-1] not in top for r in system.rules.values())
    images = set()
    for w in irreducible_words_oracle(q, 0, 4) + irreducible_words_oracle(q, 0, 5):
        prod = q.concat(w, (0, (q.loop(0, 2),)))
        out = system.reduce(NCElement.from_word(q, 12, prod))
        assert out.terms == {prod: 1}
        images.add(prod)
    n4 = len(irreducible_words_oracle(q, 0, 4)) + len(irreducible_words_oracle(q, 0, 5))
    assert len(images) == n4


def test_confluence_under_random_schedules():
    system = appendix_system(2, 12)
    q = system.quiver
    rng = random.Random(20240825)
    words = [
        (0, (q.loop(0, 1), q.a(0), q.b(0), q.a(0), q.a(1))),
        (1, (q.b(0), q.b(2), q.loop(2, 1), q.a(2), q.a(0))),
        (2, (q.loop(2, 2), q.loop(2, 0), q.a(2), q.b(2))),
    ]
    for w in words:
        el = NCElement.from_word(q, 12, w)
        expected = system.reduce(el)
        for _ in range(20):
            assert system.reduce_random(el, rng) == expected
