from .engine import fixed_point_residual
from .engine import ifbs_step
from .engine import lyapunov_energy
from .engine import run
from .engine import sipm_step
from .engine import SolverState
from .engine import SolverTrace
from .engine import TerminationRule

from .prox import check_prox_optimality
from .prox import project_orthant
from .prox import prox_l1
from .prox import sgn
from .prox import SignPattern
from .prox import soft_threshold

from .schedule import AdaptiveRestart
from .schedule import AdOptSwitch
from .schedule import Capped
from .schedule import ChambolleDossal
from .schedule import ConstantMomentum
from .schedule import FistaBT
from .schedule import optimal_momentum
from .schedule import restart_signal
from .schedule import Schedule
from .schedule import SupportMomentumEstimator
from .schedule import validate
from .schedule import ValidityReport


__all__ = ['SolverState',
           'SolverTrace',
           'TerminationRule',
           'ifbs_step',
           'sipm_step',
           'lyapunov_energy',
           'fixed_point_residual',
           'run',
           'sgn',
           'soft_threshold',
           'prox_l1',
           'SignPattern',
           'project_orthant',
           'check_prox_optimality',
           'Schedule',
           'ConstantMomentum',
           'FistaBT',
           'ChambolleDossal',
           'Capped',
           'AdaptiveRestart',
           'AdOptSwitch',
           'SupportMomentumEstimator',
           'ValidityReport',
           'optimal_momentum',
           'restart_signal',
           'validate']
