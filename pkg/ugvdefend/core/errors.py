class UGVDefendError(RuntimeError):
    pass


class ConfigurationError(UGVDefendError):
    """
    Raised for invalid configuration values and for mismatches between a model, a scenario and an environment.
    """


class ModelFormatError(ConfigurationError):
    """
    Raised when a model file cannot be parsed or carries an unsupported format version.
    """


class DomainError(UGVDefendError):
    """
    Raised when an operation violates the component/action model, e.g. turning on a publishable component.
    """


class NumericError(UGVDefendError):
    pass
