import io
import math

import numpy as np
import pytest

from spectradim import (
    PairedSeries,
    UndefinedCorrelationError,
    correlation_report,
    load_paired_csv,
    mutual_information,
    spearman,
)
from spectradim.errors import ParseError


def series(xs, ys):
    return PairedSeries([str(i) for i in range(len(xs))], xs, ys)


class TestSpearman:
    def test_monotone_agreement(self):
        assert spearman(series([1, 2, 3], [10, 20, 30])) == 1.0

    def test_monotone_reversal(self):
        assert spearman(series([1, 2, 3], [30, 20, 10])) == -1.0

    def test_four_point_hand_case(self):
        # ranks d = (1,1,1,1): rho = 1 - 6*4/(4*15) = 0.6
        assert spearman(series([1, 2, 3, 4], [2, 1, 4, 3])) == 0.6

    def test_constant_series_undefined(self):
        with pytest.raises(UndefinedCorrelationError):
            spearman(series([1, 1, 1], [1, 2, 3]))
        with pytest.raises(UndefinedCorrelationError):
            spearman(series([1, 2, 3], [5, 5, 5]))

    def test_symmetry(self):
        xs, ys = [3, 1, 4, 1, 5], [2, 7, 1, 8, 2]
        assert spearman(series(xs, ys)) == spearman(series(ys, xs))

    def test_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(3)
        xs = rng.uniform(0.1, 10, 50)
        ys = rng.uniform(0.1, 10, 50)
        assert spearman(series(xs, ys)) == spearman(series(xs**3, ys))

    def test_ties_average_ranks(self):
        # x ties: ranks (1.5, 1.5, 3); hand Pearson with y ranks (1,2,3)
        rho = spearman(series([5, 5, 9], [1, 2, 3]))
        assert rho == pytest.approx(math.sqrt(3) / 2, abs=1e-12)


class TestMutualInformation:
    def test_identical_saturates(self):
        xs = np.arange(1.0, 17.0)
        mi, bins = mutual_information(series(xs, xs), bins=4)
        assert bins == 4
        assert mi == pytest.approx(math.log(4), abs=1e-12)

    def test_independent_is_small(self):
        rng = np.random.default_rng(17)
        xs, ys = rng.uniform(size=(2, 10000))
        mi, _ = mutual_information(series(xs, ys), bins=10)
        assert mi <= 0.05

    def test_constant_is_zero(self):
        xs = np.arange(10.0)
        mi, _ = mutual_information(series(xs, np.ones(10)), bins=3)
        assert mi == 0.0

    def test_symmetric(self):
        rng = np.random.default_rng(4)
        xs = rng.uniform(size=100)
        ys = xs + rng.normal(scale=0.2, size=100)
        a, _ = mutual_information(series(xs, ys), bins=8)
        b, _ = mutual_information(series(ys, xs), bins=8)
        assert a == pytest.approx(b, abs=1e-12)

    def test_nonnegative(self):
        rng = np.random.default_rng(5)
        for seed in range(10):
            xs, ys = np.random.default_rng(seed).uniform(size=(2, 64))
            mi, _ = mutual_information(series(xs, ys))
            assert mi >= 0.0

    def test_default_bins(self):
        xs = np.arange(100.0)
        _, bins = mutual_information(series(xs, xs))
        assert bins == 10  # floor(sqrt(100))

    def test_bins_bounds(self):
        xs = np.arange(5.0)
        with pytest.raises(ValueError):
            mutual_information(series(xs, xs), bins=6)
        with pytest.raises(ValueError):
            mutual_information(series(xs, xs), bins=1)


class TestLoadCsv:
    def test_basic_load(self):
        text = "name,complexity,metric\na,1.0,2.0\nb,2.0,3.0\n"
        s = load_paired_csv(io.StringIO(text))
        assert len(s) == 2 and s.dropped == 0
        assert s.names == ["a", "b"]

    def test_extra_columns_ignored(self):
        text = "name,complexity,metric,extra\na,1,2,zzz\nb,2,3,yyy\n"
        s = load_paired_csv(io.StringIO(text))
        assert len(s) == 2

    def test_drops_bad_rows(self):
        text = "name,complexity,metric\na,1,2\nb,nan,3\nc,x,3\nd,4,5\n"
        s = load_paired_csv(io.StringIO(text))
        assert len(s) == 2 and s.dropped == 2

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            load_paired_csv(io.StringIO("a,b\n1,2\n"))

    def test_too_few_rows(self):
        with pytest.raises(ParseError, match="at least 2"):
            load_paired_csv(io.StringIO("name,complexity,metric\na,1,2\n"))


def test_correlation_report_shape():
    rng = np.random.default_rng(8)
    xs = rng.uniform(size=64)
    report = correlation_report(series(xs, xs + rng.normal(scale=0.1, size=64)))
    assert set(report) == {"n", "spearman", "mi", "mi_units", "bins", "dropped"}
    assert report["mi_units"] == "nats"
    assert report["n"] == 64
