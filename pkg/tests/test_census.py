from __future__ import annotations

from fractions import Fraction

import pytest

from weylseries.census import (
    CensusFormatError,
    CharPolyCensus,
    EnumerationLimitError,
    census_for,
    combinatorial_census,
    dump_census,
    enumerate_census,
    load_census,
    molien_series,
    parse_census,
    product_census,
    read_census,
    save_census,
    trivial_census,
    validate_census,
)
from weylseries.exactpoly import IntPoly
from weylseries.groups import GroupDescriptor, parse_descriptor, reflection_rep
from weylseries.oracle import degree_product_series

T = IntPoly((0, 1))
ONE = IntPoly((1,))


def census_of(text):
    return enumerate_census(reflection_rep(parse_descriptor(text)))


def test_a2_census():
    c = census_of("A2")
    assert c.as_dict() == {(T - 1) ** 2: 1, T**2 - 1: 3, T**2 + T + 1: 2}
    assert c.total == 6


def test_b2_census():
    c = census_of("B2")
    assert c.as_dict() == {(T - 1) ** 2: 1, T**2 - 1: 4, T**2 + 1: 2, (T + 1) ** 2: 1}


def test_torus_census():
    assert census_of("T2").as_dict() == {(T - 1) ** 2: 1}
    assert census_of("T0").as_dict() == {ONE: 1}


@pytest.mark.parametrize(
    "family, rank",
    [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("D", 3), ("D", 4)],
)
def test_combinatorial_matches_enumeration(family, rank):
    desc = GroupDescriptor((("B" if family == "C" else family, rank),))
    assert combinatorial_census(family, rank) == enumerate_census(reflection_rep(desc))


def test_d3_is_a3():
    c = combinatorial_census("D", 3)
    assert c.total == 24
    assert c == combinatorial_census("A", 3)


def test_product_census():
    a1 = census_of("A1")
    prod = product_census(a1, a1)
    assert prod.as_dict() == {(T - 1) ** 2: 1, (T - 1) * (T + 1): 2, (T + 1) ** 2: 1}
    g2 = census_of("G2")
    assert product_census(g2, trivial_census(2)).as_dict() == {p * (T - 1) ** 2: n for p, n in g2}
    assert product_census(g2, a1).total == g2.total * a1.total


def test_census_canonical_and_hashable():
    a = CharPolyCensus(1, ((T + 1, 1), (T - 1, 1)))
    b = CharPolyCensus(1, ((T - 1, 1), (T + 1, 1)))
    assert a == b and hash(a) == hash(b)
    with pytest.raises(ValueError):
        CharPolyCensus(2, ((T - 1, 1),))


def test_save_load_round_trip(tmp_path):
    desc = parse_descriptor("G2xT1")
    c = census_for(desc)
    path = tmp_path / "g2.census"
    save_census(c, path, desc)
    assert load_census(path, desc) == c
    again = tmp_path / "again.census"
    save_census(load_census(path), again, desc)
    assert again.read_bytes() == path.read_bytes()


def test_file_with_wrong_total_rejected(tmp_path):
    desc = parse_descriptor("G2")
    text = dump_census(census_for(desc), desc)
    lines = text.splitlines()
    # bump one count and the checksum together; the order check still fails
    lines[2] = lines[2].replace('"count":"1"', '"count":"2"')
    lines[-1] = '{"checksum":"13"}'
    with pytest.raises(CensusFormatError, match="weyl_order"):
        parse_census("\n".join(lines))


def test_file_with_bad_checksum_rejected():
    desc = parse_descriptor("A2")
    text = dump_census(census_for(desc), desc).replace('{"checksum":"6"}', '{"checksum":"7"}')
    with pytest.raises(CensusFormatError, match="checksum"):
        parse_census(text)


def test_file_for_other_group_rejected(tmp_path):
    desc = parse_descriptor("B2")
    path = tmp_path / "b2.census"
    save_census(census_for(desc), path, desc)
    with pytest.raises(CensusFormatError):
        load_census(path, parse_descriptor("A2"))


def test_file_failing_molien_rejected(tmp_path):
    # swap counts between two classes: right order, wrong Molien series
    desc = parse_descriptor("B2")
    fake = CharPolyCensus(2, (((T - 1) ** 2, 1), (T**2 - 1, 2), (T**2 + 1, 4), ((T + 1) ** 2, 1)))
    path = tmp_path / "fake.census"
    save_census(fake, path, desc)
    with pytest.raises(CensusFormatError, match="molien"):
        read_census(path)


def test_validate_g2_to_14():
    desc = parse_descriptor("G2")
    report = validate_census(census_for(desc), desc, D=14)
    assert report.passed, report.first_failure


def test_perturbed_count_fails_at_degree_zero():
    desc = parse_descriptor("G2")
    counts = census_for(desc).as_dict()
    counts[T**2 - 1] += 1
    report = validate_census(CharPolyCensus.from_mapping(2, counts), desc)
    fail = report.first_failure
    assert fail.name == "order"
    molien = next(c for c in report.checks if c.name == "molien")
    assert not molien.passed and molien.degree == 0


def test_u3_molien_series():
    series = molien_series(census_for(parse_descriptor("U(3)")), 12)
    assert series == [Fraction(x) for x in degree_product_series((1, 2, 3), 12)]


def test_small_molien_series():
    assert molien_series(census_for(parse_descriptor("A1")), 6) == [1, 0, 1, 0, 1, 0, 1]
    assert molien_series(census_for(parse_descriptor("B2")), 8) == degree_product_series((2, 4), 8)
    assert molien_series(census_for(parse_descriptor("T2")), 3) == [1, 2, 3, 4]


def test_e8_refused():
    with pytest.raises(EnumerationLimitError, match="census file"):
        census_for(parse_descriptor("E8"))


def test_limit_from_environment(monkeypatch):
    monkeypatch.setenv("WEYLSERIES_ENUM_LIMIT", "10")
    with pytest.raises(EnumerationLimitError):
        enumerate_census(reflection_rep(parse_descriptor("A3")))
    assert enumerate_census(reflection_rep(parse_descriptor("A3")), limit=100).total == 24


def test_e8_file_must_pass_molien(tmp_path):
    # a file with the right order but not the E8 class data is refused on ingestion
    desc = parse_descriptor("E8")
    order = 696729600
    fake = CharPolyCensus(8, (((T - 1) ** 8, 1), ((T + 1) ** 8, order - 1)))
    path = tmp_path / "e8.census"
    save_census(fake, path, desc)
    with pytest.raises(CensusFormatError, match="molien"):
        load_census(path, desc)
