import time
from unittest import TestCase

from typlab.time import Stopwatch, display_duration, now_sec


class TestTime(TestCase):
    def test_display_duration(self):
        self.assertEqual(display_duration(0), "00:00:00")
        self.assertEqual(display_duration(59.6), "00:01:00")
        self.assertEqual(display_duration(3 * 3600 + 25 * 60 + 7), "03:25:07")

    def test_now_sec(self):
        self.assertAlmostEqual(now_sec(), time.time(), delta=2)

    def test_stopwatch(self):
        with Stopwatch() as stopwatch:
            time.sleep(0.01)
        self.assertGreaterEqual(stopwatch.elapsed, 0.005)
        self.assertEqual(Stopwatch().elapsed, 0.0)
