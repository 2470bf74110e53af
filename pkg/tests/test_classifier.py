import random

import pytest

from conftest import twos
from orient5.classifier import ROW1, ROW2, ROW3_C0, ROW3_C1, check_known_criteria, classify, verdict
from orient5.errors import PreconditionError
from orient5.generators import double_spider, path, random_d5
from orient5.graph import ParentTree, profile_diam5


def test_row1(fig1):
    c = classify(fig1, {**twos(fig1), "v2": 3})
    assert (c.klass, c.orientation_number, c.rule) == ("C0", 5, ROW1)


def test_row2(spider):
    s = {**twos(spider), "c1b1": 4, "c1b2": 5, "c2b1": 4, "c2b2": 4}
    assert classify(spider, s).rule == ROW2


def test_row2_needs_both_sides(spider):
    s = {**twos(spider), "c1b1": 4, "c1b2": 5, "c2b1": 4}
    assert classify(spider, s).rule == ROW3_C1


def test_row3_c0(p6, fig1):
    assert classify(p6, twos(p6)).rule == ROW3_C0
    assert classify(fig1, twos(fig1)).rule == ROW3_C0


def test_row3_c1(spider):
    c = classify(spider, twos(spider))
    assert (c.klass, c.orientation_number, c.rule) == ("C1", 6, ROW3_C1)


def test_leaf_branch_multiplicity_is_irrelevant(fig1):
    # y1 is a leaf branch: it never enters m_k
    c = classify(fig1, {**twos(fig1), "y1": 9})
    assert c.profile.m[2] == 2 and c.rule == ROW3_C0


def test_rejects_small_multiplicity(p6):
    with pytest.raises(PreconditionError, match=">= 2"):
        classify(p6, {**twos(p6), "p1": 1})


@pytest.mark.parametrize("n,d", [(5, 4), (7, 6)])
def test_rejects_other_diameters(n, d):
    t = path(n)
    with pytest.raises(PreconditionError, match=f"diameter {d}"):
        classify(t, twos(t))


def test_star_rejected():
    t = ParentTree([("a", "b"), ("a", "c")])
    with pytest.raises(PreconditionError):
        classify(t, twos(t))


def test_known_criteria_reports(p6, spider, fig1):
    assert check_known_criteria(p6, twos(p6), classify(p6, twos(p6)))["b"] == "checked"
    rep = check_known_criteria(spider, twos(spider), classify(spider, twos(spider)))
    assert rep == {"a_set_size": 4, "b": "vacuous", "c": "checked"}
    rep = check_known_criteria(fig1, twos(fig1), classify(fig1, twos(fig1)))
    assert rep["c"] == "vacuous" and "violated" not in rep.values()


def test_verdict_json(spider):
    v = verdict(spider, twos(spider))
    assert v["class"] == "C1" and v["nl_sizes"] == [2, 2] and v["m"] == [2, 2]
    assert v["thm14"] == {"b": "vacuous", "c": "checked"}


def test_total_on_random_instances():
    rng = random.Random(5)
    for i in range(100):
        t = random_d5(rng.randrange(6, 16), seed=i)
        s = {v: rng.choice([2, 3, 4, 5]) for v in t.vertices}
        c = classify(t, s)
        assert c.klass in ("C0", "C1")
        known = check_known_criteria(t, s, c)
        assert "violated" not in (known["b"], known["c"])


def test_raising_multiplicities_never_leaves_c0():
    rng = random.Random(11)
    for i in range(60):
        t = random_d5(rng.randrange(6, 14), seed=100 + i)
        s = {v: rng.choice([2, 3]) for v in t.vertices}
        if classify(t, s).klass != "C0":
            continue
        bigger = {v: k + rng.randrange(3) for v, k in s.items()}
        assert classify(t, bigger).klass == "C0"


def test_centre_order_does_not_matter():
    a = double_spider(2, 1, 1, 3)
    b = double_spider(1, 3, 2, 1)
    assert classify(a, twos(a)).rule == classify(b, twos(b)).rule == ROW3_C0
    assert profile_diam5(a).c1 == "c1"
