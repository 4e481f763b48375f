import math
import shutil
import tempfile
from unittest import TestCase

from typlab.analyzer import (
    ResultAnalyzer,
    aggregate,
    count_decreasing_samples,
    records_frame,
)
from typlab.constants import REPORT_COLUMNS, EmptyResultsError, ExperimentFamily
from typlab.models import ResultRecord
from typlab.results import ResultStore


def goe_record(chain_length, dimension, delta, sample=0, f_deg=0.0, error=None):
    return ResultRecord(
        family=ExperimentFamily.GOE_BASELINE,
        chain_length=chain_length,
        local_dim=2,
        charge=chain_length // 2,
        dimension=None if error else dimension,
        sample=sample,
        delta_rms=None if error else delta,
        f_deg=None if error else f_deg,
        error=error,
    )


class TestAggregate(TestCase):
    def test_single_record(self):
        summary = aggregate([goe_record(8, 70, 0.12, f_deg=0.1)])
        self.assertEqual(list(summary.columns), REPORT_COLUMNS)
        row = summary.iloc[0]
        self.assertEqual(row["delta_mean"], 0.12)
        self.assertTrue(math.isnan(row["delta_std"]))
        self.assertTrue(math.isnan(row["delta_stderr"]))
        self.assertEqual(row["fdeg_mean"], 0.1)
        self.assertEqual(row["samples"], 1)

    def test_identical_records(self):
        summary = aggregate([goe_record(8, 70, 0.12), goe_record(8, 70, 0.12, sample=1)])
        self.assertEqual(summary.iloc[0]["delta_std"], 0.0)
        self.assertEqual(summary.iloc[0]["samples"], 2)

    def test_statistics_and_order(self):
        records = [
            goe_record(10, 252, 0.07, sample=0),
            goe_record(10, 252, 0.05, sample=1),
            goe_record(8, 70, 0.1, sample=0),
            goe_record(8, 70, 0.2, sample=1),
            goe_record(8, 70, None, sample=2, error="failed"),
        ]
        summary = aggregate(records)
        self.assertEqual(summary["D"].tolist(), [70, 252])
        self.assertAlmostEqual(summary.iloc[0]["delta_mean"], 0.15)
        self.assertAlmostEqual(summary.iloc[0]["delta_std"], math.sqrt(0.005))
        self.assertAlmostEqual(summary.iloc[0]["delta_stderr"], math.sqrt(0.005) / math.sqrt(2))
        self.assertEqual(summary.iloc[0]["samples"], 2)

    def test_empty(self):
        with self.assertRaises(EmptyResultsError):
            aggregate([])
        with self.assertRaises(EmptyResultsError):
            aggregate([goe_record(8, 70, None, error="failed")])

    def test_records_frame_skips_failures(self):
        frame = records_frame([goe_record(8, 70, 0.1), goe_record(8, 70, None, 1, error="x")])
        self.assertEqual(len(frame), 1)


class TestCountDecreasingSamples(TestCase):
    def test_count(self):
        records = [
            goe_record(6, 141, 0.3, sample=0),
            goe_record(9, 3139, 0.2, sample=0),
            goe_record(6, 141, 0.3, sample=1),
            goe_record(9, 3139, 0.4, sample=1),
            goe_record(6, 141, 0.3, sample=2),
        ]
        self.assertEqual(count_decreasing_samples(records), (1, 2))


class TestResultAnalyzer(TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        store = ResultStore(self.directory)
        store.init_store()
        store.insert_records(
            [
                goe_record(8, 70, 0.1),
                goe_record(8, 70, 0.2, sample=1),
                goe_record(10, 252, None, error="Decomposing D=252 needs more memory"),
            ]
        )

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_fetch(self):
        analyzer = ResultAnalyzer(self.directory)
        self.assertEqual(len(analyzer.fetch_records_df()), 2)
        report = analyzer.fetch_report_df()
        self.assertEqual(report["samples"].tolist(), [2])
        failed = analyzer.fetch_failed()
        self.assertEqual([record.chain_length for record in failed], [10])
