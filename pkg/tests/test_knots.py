"""Tests for knot specs, planar diagrams, and the bundled tables."""

from fractions import Fraction

import pytest

from knotslopes.knots import (INFINITY, AlternatingData, Diagram, Named,
                              Pretzel237, Torus, boundary_slopes_for,
                              braid_pd, bundled_knot_table, bundled_slope_db,
                              is_alternating, load_knot_table, load_slope_db,
                              mirror_pd, parse_knot, pretzel_pd,
                              smoothing_counts, torus_pd, two_bridge_pd,
                              validate_pd)

TREFOIL_PD = ((1, 2, 3, 4), (2, 5, 6, 3), (5, 1, 4, 6))


def test_parse_grammar():
    assert parse_knot("torus:2,3") == Torus(2, 3)
    assert parse_knot("mirror:torus:2,3") == Torus(2, -3)
    assert parse_knot("pretzel:-2,3,7") == Pretzel237(7)
    assert parse_knot("mirror:pretzel:-2,3,7") == Pretzel237(7, mirror=True)
    assert parse_knot("alt:3,0,2,3") == AlternatingData(3, 0, 2, 3)
    assert parse_knot("name:8_19") == Named("8_19")
    spec = parse_knot("pd:[(1,4,2,5),(3,6,4,1),(5,2,6,3)]")
    assert isinstance(spec, Diagram)
    assert len(spec.pd) == 3


def test_parse_render_round_trip():
    for text in ("torus:2,3", "mirror:torus:2,3", "pretzel:-2,3,7",
                 "alt:3,0,2,3", "mirror:alt:3,0,2,3", "name:9_47",
                 "mirror:name:9_47"):
        spec = parse_knot(text)
        assert parse_knot(spec.render()) == spec


def test_parse_rejects():
    for bad in ("torus:2,4", "torus:1,5", "pretzel:-2,3,4", "pretzel:1,2,3",
                "alt:3,0,2,4", "name:nope", "bogus:1", "", "pd:[(1,2,3)]"):
        with pytest.raises(ValueError):
            parse_knot(bad)


def test_torus_validation():
    with pytest.raises(ValueError):
        Torus(2, 4)
    with pytest.raises(ValueError):
        Torus(1, 3)
    assert Torus(2, -3).render() == "torus:2,-3"


def test_alternating_data_circle_count_constraint():
    AlternatingData(4, 4, 5, 5)
    with pytest.raises(ValueError):
        AlternatingData(4, 4, 5, 6)
    with pytest.raises(ValueError):
        AlternatingData(-1, 4, 2, 3)


def test_alternating_data_mirror_swaps_roles():
    data = AlternatingData(7, 5, 10, 4)
    m = data.mirrored()
    assert (m.c_plus, m.c_minus) == (5, 7)
    assert (m.a_circles, m.b_circles) == (4, 10)


def test_validate_pd():
    validate_pd(TREFOIL_PD)
    assert validate_pd([]) == ()  # the 0-crossing unknot
    with pytest.raises(ValueError):
        validate_pd([(1, 2, 3, 4)])  # arcs must appear exactly twice
    with pytest.raises(ValueError):
        validate_pd([(1, 2, 3), (1, 2, 3)])


def test_mirror_pd_involution():
    pd = torus_pd(2, 3)
    st = smoothing_counts(pd)
    mst = smoothing_counts(mirror_pd(pd))
    assert (mst.c_plus, mst.c_minus) == (st.c_minus, st.c_plus)
    assert (mst.a_circles, mst.b_circles) == (st.b_circles, st.a_circles)
    back = smoothing_counts(mirror_pd(mirror_pd(pd)))
    assert (back.c_plus, back.c_minus, back.a_circles, back.b_circles) == \
        (st.c_plus, st.c_minus, st.a_circles, st.b_circles)


def test_smoothing_counts_trefoil():
    st = smoothing_counts(torus_pd(2, 3))
    assert (st.c_plus, st.c_minus) == (3, 0)
    assert st.writhe == 3
    assert (st.a_circles, st.b_circles) == (2, 3)
    # reduced alternating diagram: |A| + |B| = c + 2
    assert st.a_circles + st.b_circles == st.c_plus + st.c_minus + 2


def test_writhe_matches_signed_counts():
    for pd in (torus_pd(2, 5), torus_pd(3, 4), pretzel_pd([-2, 3, 7]),
               two_bridge_pd([2, 1, 1])):
        st = smoothing_counts(pd)
        assert st.writhe == st.c_plus - st.c_minus


def test_is_alternating():
    assert is_alternating(torus_pd(2, 3))
    assert is_alternating(two_bridge_pd([2, 1, 1]))
    assert not is_alternating(torus_pd(3, 4))
    assert not is_alternating(pretzel_pd([-2, 3, 7]))
    assert is_alternating(pretzel_pd([2, 3, 5, 5]))


def test_braid_pd_torus():
    assert braid_pd((1, 1, 1), 2) == torus_pd(2, 3)
    with pytest.raises(ValueError):
        braid_pd((1, 1), 2)  # closure is a link, not a knot


def test_two_bridge_pd():
    # single twist region of 3 gives a trefoil diagram
    assert len(two_bridge_pd([3])) == 3
    assert is_alternating(two_bridge_pd([3]))
    with pytest.raises(ValueError):
        two_bridge_pd([4])  # two components
    with pytest.raises(ValueError):
        two_bridge_pd([])


def test_bundled_tables_load():
    table = bundled_knot_table()
    for key in ("3_1", "8_17", "8_19", "9_49", "12a_669",
                "pretzel_2_3_5_5", "pretzel_2_5_3_5"):
        assert key in table
        validate_pd(table[key])
    db = bundled_slope_db()
    assert db
    for key, slopes in db.items():
        assert slopes, key
        # every key resolves: either a table name or a parseable spec
        if key not in table:
            parse_knot(key)


def test_slope_db_values():
    db = bundled_slope_db()
    assert db["3_1"] == frozenset({Fraction(0), Fraction(6)})
    assert db["8_19"] == frozenset({Fraction(0), Fraction(12)})
    assert INFINITY in db["8_17"]
    assert Fraction(8, 3) in db["8_20"]


def test_load_slope_db_parses_custom_file(tmp_path):
    path = tmp_path / "slopes.tsv"
    path.write_text("# comment\nfoo\t0,-3/2,inf\n")
    db = load_slope_db(str(path))
    assert db["foo"] == frozenset({Fraction(0), Fraction(-3, 2), INFINITY})


def test_load_knot_table_parses_custom_file(tmp_path):
    path = tmp_path / "knots.tsv"
    path.write_text("# comment\ntref\tpd:[(1,2,3,4),(2,5,6,3),(5,1,4,6)]\n")
    table = load_knot_table(str(path))
    assert table["tref"] == TREFOIL_PD


def test_boundary_slopes_dispatch():
    assert boundary_slopes_for(Torus(2, 3)) == frozenset({Fraction(0),
                                                          Fraction(6)})
    # mirror negates every slope
    assert boundary_slopes_for(Torus(2, -3)) == frozenset({Fraction(0),
                                                           Fraction(-6)})
    assert boundary_slopes_for(Named("3_1")) == frozenset({Fraction(0),
                                                           Fraction(6)})
    # pretzel slopes computed from the closed form for p >= 7
    assert boundary_slopes_for(Pretzel237(7)) == frozenset(
        {Fraction(0), Fraction(16), Fraction(37, 2), Fraction(20)})
    # small p comes out of the bundled table
    assert boundary_slopes_for(Pretzel237(5)) == frozenset(
        {Fraction(0), Fraction(15)})
    # no data for a bare alternating spec
    assert boundary_slopes_for(AlternatingData(3, 0, 2, 3)) is None


def test_infinity_slope():
    assert str(INFINITY) == "inf"
    assert INFINITY == INFINITY
    assert INFINITY != Fraction(10**9)
    assert hash(INFINITY) == hash(INFINITY)
