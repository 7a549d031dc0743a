from .base import Experiment
from .config import AlgorithmSpec
from .config import ExperimentConfig
from .config import parse_schedule
from .config import read_config
from .utils import analyze_trace
from .utils import experiment_describe
from .utils import experiment_summary


__all__ = ['Experiment',
           'AlgorithmSpec',
           'ExperimentConfig',
           'parse_schedule',
           'read_config',
           'analyze_trace',
           'experiment_describe',
           'experiment_summary']
