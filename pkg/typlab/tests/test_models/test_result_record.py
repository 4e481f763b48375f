from unittest import TestCase

from typlab.constants import ExperimentFamily, TyplabValidationError
from typlab.models import ResultRecord


class TestResultRecord(TestCase):
    def test_json_record(self):
        record = ResultRecord(
            family=ExperimentFamily.SPIN_ONE_RANDOM_INTERACTIONS,
            chain_length=6,
            local_dim=3,
            charge=0,
            dimension=141,
            sample=4,
            interaction={"a12": 0.1, "a13": -1.2, "a23": 0.7},
            seed=123,
            delta_rms=0.25,
            f_deg=0.01,
            mean_gap=float("nan"),
        )
        data = record.to_json_record()
        self.assertEqual(data["N"], 6)
        self.assertEqual(data["D"], 141)
        self.assertEqual(data["family"], "spin_one_random_interactions")
        self.assertIsNone(data["mean_gap"])
        self.assertIsNone(data["error"])

        restored = ResultRecord.from_json_record(data)
        self.assertEqual(restored.interaction, record.interaction)
        self.assertEqual(restored.delta_rms, 0.25)
        self.assertIsNone(restored.mean_gap)
        self.assertFalse(restored.failed)

    def test_failed_record(self):
        record = ResultRecord.from_json_record(
            {"family": "goe_baseline", "N": 16, "local_dim": 2, "charge": 8, "error": "oom"}
        )
        self.assertTrue(record.failed)
        self.assertIsNone(record.dimension)
        self.assertEqual(record.sample, 0)

    def test_malformed(self):
        with self.assertRaises(TyplabValidationError):
            ResultRecord.from_json_record({"family": "goe_baseline", "N": 4})
        with self.assertRaises(TyplabValidationError):
            ResultRecord.from_json_record(
                {"family": "unknown", "N": 4, "local_dim": 2, "charge": 2}
            )

    def test_ordering(self):
        def record(family, chain_length, sample):
            return ResultRecord(family, chain_length, 2, chain_length // 2, None, sample=sample)

        records = [
            record(ExperimentFamily.SPIN_HALF_SECTOR_SWEEP, 5, 0),
            record(ExperimentFamily.GOE_BASELINE, 10, 0),
            record(ExperimentFamily.GOE_BASELINE, 8, 1),
            record(ExperimentFamily.GOE_BASELINE, 8, 0),
        ]
        self.assertEqual(
            [(r.family.value, r.chain_length, r.sample) for r in sorted(records)],
            [
                ("goe_baseline", 8, 0),
                ("goe_baseline", 8, 1),
                ("goe_baseline", 10, 0),
                ("spin_half_sector_sweep", 5, 0),
            ],
        )
