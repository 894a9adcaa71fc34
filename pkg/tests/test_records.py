import pytest

from innersource_honor import records
from innersource_honor.errors import BadChecksum, BadPeriod


def test_canonical_json_is_sorted_and_compact():
    assert records.canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_timestamp_round_trip():
    dt = records.parse_timestamp("2021-07-03T12:00:00Z")
    assert records.format_timestamp(dt) == "2021-07-03T12:00:00Z"
    dt = records.parse_timestamp("2021-07-03T12:00:00.250000+00:00")
    assert records.format_timestamp(dt) == "2021-07-03T12:00:00.250000Z"


def test_timestamp_requires_timezone():
    with pytest.raises(ValueError):
        records.parse_timestamp("2021-07-03T12:00:00")


def test_non_utc_offset_normalizes():
    dt = records.parse_timestamp("2021-07-03T14:00:00+02:00")
    assert records.format_timestamp(dt) == "2021-07-03T12:00:00Z"


def test_periods():
    assert records.is_month_period("2021-07")
    assert not records.is_month_period("2021-13")
    assert records.is_year_period("2021")
    assert records.year_of_period("2021-07") == "2021"
    assert records.period_start("2021-02").isoformat() == "2021-02-01"
    assert records.period_end("2021-02").isoformat() == "2021-02-28"
    assert records.period_end("2021-12").isoformat() == "2021-12-31"
    assert records.period_end("2021").isoformat() == "2021-12-31"
    assert records.period_contains("2021-07", records.parse_timestamp("2021-07-31T23:59:59Z"))
    assert not records.period_contains("2021-07", records.parse_timestamp("2021-08-01T00:00:00Z"))
    with pytest.raises(BadPeriod):
        records.validate_period("July 2021")


def test_seal_and_split_round_trip():
    sealed = records.seal_lines(['{"a":1}\n', '{"b":2}\n'])
    lines, offset = records.split_sealed(sealed)
    assert lines == ['{"a":1}\n', '{"b":2}\n']
    assert offset == len('{"a":1}\n{"b":2}\n'.encode())


def test_split_rejects_tampering():
    sealed = records.seal_lines(['{"a":1}\n'])
    with pytest.raises(BadChecksum):
        records.split_sealed(sealed.replace('"a":1', '"a":2'))
    with pytest.raises(BadChecksum):
        records.split_sealed('{"a":1}\n')
