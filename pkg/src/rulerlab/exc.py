"""Exceptions"""

# Default messages
DOMAIN_MESSAGE        = 'Argument outside the supported domain.'
NUMERIC_MESSAGE       = 'Numeric computation failed.'
PERIOD_MESSAGE        = 'No stationary period found within the allowed maximum.'
STABILIZATION_MESSAGE = 'Visibility degrees changed when the series was extended.  Move the window away from the series end.'
PLACEMENT_MESSAGE     = 'Partition points collided or lost their order.'
MISMATCH_MESSAGE      = 'Two constructions that must agree produced different results.'
USAGE_MESSAGE         = 'Invalid command line usage.'


class RulerLabError(RuntimeError):
    """Parent class for all rulerlab exceptions"""


class RulerDomainError(RulerLabError, ValueError):
    """Precondition or cap violated"""
    def __init__(self, msg=DOMAIN_MESSAGE, *args):
        super().__init__(msg, *args)


class NumericError(RulerLabError):
    """Non-finite value or failed root bracketing"""
    def __init__(self, msg=NUMERIC_MESSAGE, *args, diagnostics=None):
        super().__init__(msg, *args)
        self.diagnostics = diagnostics or {}


class PeriodDetectionError(NumericError):
    """No period found"""
    def __init__(self, msg=PERIOD_MESSAGE, *args, diagnostics=None):
        super().__init__(msg, *args, diagnostics=diagnostics)


class StabilizationError(RulerLabError):
    """Visibility window too close to the end of the series"""
    def __init__(self, msg=STABILIZATION_MESSAGE, *args):
        super().__init__(msg, *args)


class PlacementError(RulerLabError):
    """Automaton positions are no longer strictly increasing"""
    def __init__(self, msg=PLACEMENT_MESSAGE, *args):
        super().__init__(msg, *args)


class OracleMismatchError(RulerLabError):
    """Independent computations disagree"""
    def __init__(self, msg=MISMATCH_MESSAGE, *args):
        super().__init__(msg, *args)


class RulerLabUsageError(RulerLabError):
    """Bad flags, subcommand or config file"""
    def __init__(self, msg=USAGE_MESSAGE, *args):
        super().__init__(msg, *args)
