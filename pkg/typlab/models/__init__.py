from .experiment_plan import ExperimentPlan, GridPoint
from .result_record import ResultRecord
from .scaling_fit import ScalingFit

__all__ = ["ExperimentPlan", "GridPoint", "ResultRecord", "ScalingFit"]
