"""
Exception hierarchy shared across transientscope

Module-specific failures (NonFiniteState, ConvergenceFailure, NotApplicable,
CandidateNotInXv) are defined next to the code that raises them and derive
from TransientScopeError.
"""


class TransientScopeError(Exception):
    """Base class for all transientscope errors"""
    pass


class ConfigError(TransientScopeError):
    """Invalid run configuration (unknown key, bad type or range)"""
    pass


class InvalidParams(ConfigError):
    """Model parameters outside their validity range"""

    def __init__(self, model_id: str, name: str, value, valid: str):
        super().__init__(f"{model_id}: parameter '{name}'={value!r} outside {valid}")
        self.model_id = model_id
        self.name = name
        self.value = value
        self.valid = valid
