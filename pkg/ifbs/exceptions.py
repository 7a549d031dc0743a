"""
Exceptions raised by iterative procedures.
"""

# Copyright (C) 2026 ifbs developers


class IFBSError(Exception):
    """Base class for errors raised by ifbs."""


class ConvergenceError(IFBSError):
    """
    An iterative procedure exhausted its iteration budget.

    Parameters
    ----------
    message : str
        Error message.

    best : object (default=None)
        Best estimate available when the procedure stopped.

    value : float or None (default=None)
        Accuracy measure (residual, duality gap) of ``best``.
    """
    def __init__(self, message, best=None, value=None):
        super().__init__(message)
        self.best = best
        self.value = value


class NumericalError(IFBSError, ArithmeticError):
    """
    Non-finite values were produced by an iteration.

    Parameters
    ----------
    message : str
        Error message.

    k : int or None (default=None)
        Iteration index at which the failure was detected.

    trace : SolverTrace or None (default=None)
        Partial trace recorded up to the failure.
    """
    def __init__(self, message, k=None, trace=None):
        super().__init__(message)
        self.k = k
        self.trace = trace
