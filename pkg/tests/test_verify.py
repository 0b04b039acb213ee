import pytest

from matjul.verify import (
    FIXTURE_POLYS,
    SUITES,
    PropertyResult,
    VerifyReport,
    expected_square_class,
    resolve_suites,
    suite_rng,
    verify,
)

CHEAP = ["det-trace", "norm-dominates", "reconstruction", "escape-radius"]


def test_resolve_suites_expands_and_dedupes():
    assert resolve_suites(["all"]) == list(SUITES)
    assert resolve_suites(["det-trace,semigroup", "det-trace"]) == ["det-trace", "semigroup"]
    with pytest.raises(ValueError):
        resolve_suites(["no-such-suite"])


def test_suite_rng_depends_on_seed_and_name():
    a = suite_rng(0, "det-trace").random(3)
    b = suite_rng(0, "det-trace").random(3)
    c = suite_rng(0, "semigroup").random(3)
    d = suite_rng(1, "det-trace").random(3)
    assert list(a) == list(b)
    assert list(a) != list(c)
    assert list(a) != list(d)


def test_cheap_suites_pass():
    report = verify(CHEAP, seed=3, count=20)
    assert [r.name for r in report.rows] == CHEAP
    assert report.passed, report.to_csv()
    assert all(r.samples > 0 for r in report.rows)


def test_report_is_deterministic_for_a_seed():
    first = verify(["det-trace", "escape-radius"], seed=7, count=10).to_csv()
    again = verify(["escape-radius", "det-trace"], seed=7, count=10)
    rows = {r.name: r.csv_row() for r in again.rows}
    assert first.splitlines()[1:] == [rows["det-trace"], rows["escape-radius"]]


def test_parallel_verify_keeps_order_and_values():
    serial = verify(CHEAP, seed=5, count=8, jobs=1)
    parallel = verify(CHEAP, seed=5, count=8, jobs=2)
    assert serial.to_csv() == parallel.to_csv()


def test_verify_rejects_negative_count():
    with pytest.raises(ValueError):
        verify(["det-trace"], count=-1)


def test_polys_override_fixture_set():
    report = verify(["escape-radius"], seed=0, count=4, polys=FIXTURE_POLYS[:1])
    assert report.rows[0].samples == 4


def test_csv_format():
    report = VerifyReport(1, 2, [PropertyResult("x", 3, 0.5, 0.25), PropertyResult("y", 3, 0.0, 0.25)])
    lines = report.to_csv().splitlines()
    assert lines == [
        "property,samples,max_violation,tolerance,pass",
        "x,3,0.5,0.25,fail",
        "y,3,0.0,0.25,pass",
    ]
    assert not report.passed
    assert [r.name for r in report.failures] == ["x"]
    assert report.to_dict()["rows"][1]["passed"] is True


@pytest.mark.parametrize(
    "l1, l2, expected",
    [
        (2, 0.5, "escaping"),
        (0.5, 0.3, "bounded"),
        (1.0, 0.5, "julia"),
        (1.0005, 0.2, "julia"),
        (1.005, 0.2, None),
    ],
)
def test_expected_square_class(l1, l2, expected):
    assert expected_square_class(l1, l2) == expected
