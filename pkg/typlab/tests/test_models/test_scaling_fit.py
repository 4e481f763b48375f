import math
from unittest import TestCase

from typlab.models import ScalingFit


class TestScalingFit(TestCase):
    def test_predict(self):
        fit = ScalingFit(exponent=0.5, exponent_stderr=0.01, intercept=math.log(2), points_used=4)
        self.assertAlmostEqual(fit.prefactor, 2.0)
        self.assertAlmostEqual(fit.predict(100.0), 0.2)

    def test_to_dict(self):
        fit = ScalingFit(
            exponent=0.2,
            exponent_stderr=0.003,
            intercept=0.0,
            points_used=3,
            excluded_points=[(141.0, 0.3)],
        )
        self.assertEqual(
            fit.to_dict(),
            {
                "exponent": 0.2,
                "exponent_stderr": 0.003,
                "intercept": 0.0,
                "points_used": 3,
                "excluded_points": [[141.0, 0.3]],
            },
        )
