import pytest

from zcverify.groupfile import ParseError, format_cayley, parse_group_text
from zcverify.groups import conjugacy_classes


def test_perm_stanza():
    G = parse_group_text("perm\n(1 2 3)\n(1 2)\n")
    assert G.order == 6
    assert sorted(len(c) for c in conjugacy_classes(G)) == [1, 2, 3]


def test_perm_with_comments_and_product_cycles():
    text = """
    # the quaternion group acting regularly would be big; use a 2x2 example
    perm
    (1 2)(3 4)   # double transposition
    (1 3)(2 4)
    """
    G = parse_group_text(text)
    assert G.order == 4
    assert G.exponent() == 2


def test_cayley_stanza_round_trip(s3):
    text = format_cayley(s3)
    G = parse_group_text(text)
    assert G.order == 6
    assert (G.table == s3.table).all()


def test_error_empty():
    with pytest.raises(ParseError):
        parse_group_text("")


def test_error_reports_line_number():
    with pytest.raises(ParseError) as exc:
        parse_group_text("perm\n(1 2 x)\n")
    assert "line 2" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse_group_text("cayley\n0 1\n1 0 0\n")
    assert "line 3" in str(exc.value)


def test_error_bad_stanza():
    with pytest.raises(ParseError):
        parse_group_text("frobnicate\n1 2\n")


def test_error_non_group_table():
    bad = "cayley\n0 1 2\n1 2 0\n2 1 0\n"
    with pytest.raises(ParseError):
        parse_group_text(bad)


def test_error_overlapping_cycles():
    with pytest.raises(ParseError):
        parse_group_text("perm\n(1 2)(2 3)\n")


def test_points_out_of_range():
    # degree is the max named point; all points must be positive
    with pytest.raises(ParseError):
        parse_group_text("perm\n(0 1)\n")
