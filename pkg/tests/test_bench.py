import statistics
from fractions import Fraction

import pytest

from hl7dt.bench import (
    EQ_PROBE,
    KEY_BYTES,
    RANGE_QUERY,
    TID_BYTES,
    BenchConfig,
    Dataset,
    bench_generate,
    bench_run,
    compare_results,
    encode_key,
    eq_query,
    make_query,
    make_store,
    read_csv,
    report_csv,
    run_bench,
)
from hl7dt.ucum import canonicalize

N = 5000


@pytest.fixture(scope="module")
def data():
    return bench_generate(BenchConfig(n=N))


def metres(row):
    """Reference magnitude in metres computed straight from the row text."""
    value, unit, nf = row
    c = canonicalize(unit)
    if nf or c.unit_string() != "m":
        return None
    return Fraction(value) * c.factor


def test_generation_is_deterministic(data):
    again = bench_generate(BenchConfig(n=N))
    assert again.units == data.units and again.rows == data.rows
    other = bench_generate(BenchConfig(n=N, seed=8))
    assert other.rows != data.rows


def test_unit_histogram_has_21_units(data):
    assert len(data.units) == 21 and data.units[-1] == "m"
    assert len(set(data.units)) == 21
    assert {u for _, u, _ in data.rows} <= set(data.units)


def test_value_distribution(data):
    values = [float(v) for v, _, nf in data.rows if not nf]
    assert abs(statistics.fmean(values)) < 3 * 10000 / len(values) ** 0.5
    assert 9000 < statistics.pstdev(values) < 11000
    assert all(len(v.split(".")[1]) == 4 for v in map(str, [r[0] for r in data.rows if not r[2]]))


def test_planted_rows(data):
    assert data.rows[N // 2] == ("1200.0000", "m", "")
    assert data.rows[N // 3] == ("", "m", "trc")


def test_seq_scan_matches_reference(data):
    lo, hi = (Fraction(1000), Fraction(1200))
    expected = [i for i, r in enumerate(data.rows)
                if (m := metres(r)) is not None and lo <= m <= hi]
    q = make_query(*RANGE_QUERY)
    for rep in ("packed", "decomposed"):
        s = make_store(rep)
        s.insert(data.rows)
        got = s.seq_scan(q).tolist()
        assert sorted(got) == expected
        assert sorted(s.build_index().range(q).tolist()) == expected
    assert N // 2 in expected


def test_representations_agree(data):
    cfg = BenchConfig(n=N, runs=1, rep=1, budget_s=None)
    a = bench_run(cfg, "packed", data)
    b = bench_run(cfg, "decomposed", data)
    assert all(compare_results(a, b).values())
    assert N // 2 in a.results["eq_scan"]
    sizes = {r.representation: m.index_bytes for r in (a, b) for m in r.measurements
             if m.operation == "index_size"}
    assert sizes["packed"] == N * (KEY_BYTES + TID_BYTES)
    assert sizes["packed"] < sizes["decomposed"]


def test_index_order_is_sorted_by_key(data):
    s = make_store("packed")
    s.insert(data.rows)
    keys = s.keys()
    idx = s.build_index()
    ordered = [keys[t:t + 1].tobytes() for t in idx.tids]
    assert ordered == sorted(ordered)


def test_trc_returned_by_open_positive_range():
    rows = [("0.0000", "ml", ""), ("", "ml", "trc"), ("1.0000", "ml", ""), ("-1.0000", "ml", ""),
            ("", "ml", "nav"), ("", "ml", "pinf"), ("5.0000", "s", "")]
    q = make_query("0 ml", "pinf ml", lo_closed=False, hi_closed=False)
    for rep in ("packed", "decomposed"):
        s = make_store(rep)
        s.insert(rows)
        assert sorted(s.seq_scan(q).tolist()) == [1, 2]
        assert sorted(s.build_index().range(q).tolist()) == [1, 2]


def test_scalar_and_vector_keys_agree(data):
    s = make_store("packed")
    s.insert(data.rows)
    r, keys = s.rows, s.keys()
    for i in range(0, N, 37):
        dims_id = int(s.unit_dims[r["unit"][i]])
        assert keys[i:i + 1].tobytes() == encode_key(int(r["nf"][i]), dims_id, int(r["mant"][i]), int(r["exp"][i]))


def test_equality_probe():
    q = eq_query(EQ_PROBE)
    s = make_store("packed")
    s.insert([("1200.0000", "m", ""), ("1.2000", "km", ""), ("120000.0000", "cm", ""), ("1200.0001", "m", "")])
    assert sorted(s.build_index().range(q).tolist()) == [0, 1, 2]


def test_run_bench_and_csv_round_trip():
    report = run_bench([400, 800], runs=2, rep=2, budget_s=None)
    assert all(all(v.values()) for v in report.agreement.values())
    text = report_csv(report)
    back = read_csv(text)
    assert len(back) == len(report.measurements) == 2 * 2 * 6
    for a, b in zip(report.measurements, back):
        assert (a.representation, a.operation, a.n, a.index_bytes) == \
            (b.representation, b.operation, b.n, b.index_bytes)
    assert "# units n=400:" in text


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(n=0)
    with pytest.raises(ValueError):
        make_store("columnar")
    with pytest.raises(ValueError):
        make_query("1 m", "1 s")


def test_csv_is_deterministic_apart_from_timings():
    def untimed(text):
        return [[c for i, c in enumerate(line.split(",")) if i not in (3, 4)]
                for line in text.splitlines()]

    a = report_csv(run_bench([300], runs=1, rep=1, budget_s=None))
    b = report_csv(run_bench([300], runs=1, rep=1, budget_s=None))
    assert untimed(a) == untimed(b)
