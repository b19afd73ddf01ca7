# General imports
from typing import Generic, Iterable, List, Optional, Dict, Any, Type, TypeVar, Union
from abc import ABC, abstractmethod

# Relative imports
from ..core.errors import ConfigurationError


T = TypeVar('T')
class Parameter(Generic[T], ABC):
    """
    Interface of a single named configuration value.
    """

    _get_type = type  # alias so that "type" can be used as a constructor argument

    def __init__(self, name: str, type: str, description="") -> None:
        if not isinstance(name, str) or len(name) == 0:
            raise ConfigurationError(f"A parameter must have a non-empty name of type \"str\" but got \"{name!r}\"")
        if not isinstance(type, str) or len(type) == 0:
            raise ConfigurationError(f"The parameter {name} must have a non-empty type-specification of type \"str\"")
        if not isinstance(description, str):
            raise ConfigurationError(f"The parameter {name} got an invalid argument \"description\" of type \"{Parameter._get_type(description)}\" but must be of type \"str\"")

        self._name = name
        self._type = type
        self._description = description
        self._error_string = ""

    @property
    def type(self) -> str:
        return self._type

    @property
    def name(self) -> str:
        return self._name

    @property
    def description(self) -> str:
        return self._description

    @property
    def error_string(self) -> str:
        """
        Reason why the last call of set_value failed or the empty string.
        """
        return self._error_string

    @abstractmethod
    def set_value(self, value: T) -> bool:
        """
        Sets the value if it is valid. Returns True if the value was accepted, else False and error_string
        describes the reason.
        """
        ...

    @abstractmethod
    def get_value(self) -> T:
        ...

    def _reject(self, reason: str) -> bool:
        self._error_string = reason
        return False


class _BoundedParameter(Parameter[T]):
    """
    Shared implementation of the numeric parameters. Bounds are inclusive unless exclusive_min is set.
    """

    _accepted_types: tuple = ()
    _type_name = ""

    def __init__(self, default: T, min: Optional[T] = None, max: Optional[T] = None, exclusive_min: bool = False, **args) -> None:
        super().__init__(**args)

        for bound_name, bound in (("min", min), ("max", max)):
            if bound is not None and not self._is_accepted(bound):
                raise ConfigurationError(f"The parameter {self.name} got an invalid argument \"{bound_name}\" of type \"{type(bound)}\" but must be of type \"{self._type_name}\"")

        self._min = min
        self._max = max
        self._exclusive_min = exclusive_min
        self._value = default

        if not self.set_value(default):
            raise ConfigurationError(f"The parameter {self.name} got an invalid argument \"default\" because {self.error_string}")

    def _is_accepted(self, value: Any) -> bool:
        # bool is a subclass of int and never a valid number here
        return isinstance(value, self._accepted_types) and not isinstance(value, bool)

    def _convert(self, value: Any) -> T:
        return value

    def set_value(self, value: T) -> bool:
        self._error_string = ""

        if not self._is_accepted(value):
            return self._reject(f"the value {value!r} is not of type \"{self._type_name}\"")

        value = self._convert(value)

        if self._min is not None:
            if self._exclusive_min and value <= self._min:
                return self._reject(f"the value {value} must be greater than {self._min}")
            if not self._exclusive_min and value < self._min:
                return self._reject(f"the value {value} is smaller than the minimum {self._min}")

        if self._max is not None and value > self._max:
            return self._reject(f"the value {value} is larger than the maximum {self._max}")

        self._value = value
        return True

    def get_value(self) -> T:
        return self._value


class IntParameter(_BoundedParameter[int]):
    """
    An IntParameter holds a single int value with optional limits.
    """
    _accepted_types = (int,)
    _type_name = "int"


class FloatParameter(_BoundedParameter[float]):
    """
    A FloatParameter holds a single float value with optional limits. Integers are accepted and converted,
    since YAML writes 1.0 and 1 interchangeably.
    """
    _accepted_types = (int, float)
    _type_name = "float"

    def _convert(self, value: Any) -> float:
        return float(value)


class OptionsParameter(Parameter[str]):
    """
    Choice among named options, such as an exploration strategy or an experiment name. Accepts the option or its index.
    """

    def __init__(self, options: List[str], default: Optional[Union[str, int]] = None, **args) -> None:
        super().__init__(**args)

        if not isinstance(options, list) or len(options) == 0:
            raise ConfigurationError(f"The parameter {self.name} got an invalid argument \"options\" which must be a non-empty list")
        if not all([isinstance(c, str) for c in options]):
            raise ConfigurationError(f"The parameter {self.name} got an invalid argument \"options\" which must only contain string elements")
        if len(set(options)) < len(options):
            raise ConfigurationError(f"The parameter {self.name} got an invalid argument \"options\" which must not contain duplicate elements")

        self._options = options
        self._choice: int = 0

        if default is not None and not self.set_value(default):
            raise ConfigurationError(
                f"The parameter {self.name} got an invalid argument \"default\" which must either be one of the options "
                f"or the index of an option e.g. i from (0, ..., {len(self._options) - 1})"
                )

    @property
    def options(self) -> List[str]:
        return list(self._options)

    def set_value(self, value: Union[str, int]) -> bool:
        self._error_string = ""

        if isinstance(value, str):
            if value not in self._options:
                return self._reject(f"the value \"{value}\" is not one of {self._options}")
            index = self._options.index(value)
        elif isinstance(value, int) and not isinstance(value, bool):
            index = value
            if not (0 <= index < len(self._options)):
                return self._reject(f"the option index {index} is out of range")
        else:
            return self._reject(f"the value {value!r} is neither an option name nor an option index")

        self._choice = index
        return True

    def get_value(self) -> str:
        return self._options[self._choice]


class BoolParameter(Parameter[bool]):
    """
    A BoolParameter holds exactly one of two values: True and False.
    """

    def __init__(self, default: bool, **args) -> None:
        super().__init__(**args)

        if not isinstance(default, bool):
            raise ConfigurationError(f"The parameter {self.name} got an invalid argument \"default\" of type \"{type(default)}\" but must be of type \"bool\"")

        self._value = default

    def set_value(self, value: bool) -> bool:
        self._error_string = ""
        if not isinstance(value, bool):
            return self._reject(f"the value {value!r} is not of type \"bool\"")

        self._value = value
        return True

    def get_value(self) -> bool:
        return self._value


def get_standard_parameter_types() -> Dict[str, Type[Parameter]]:
    """
    Returns the parameter types understood by :func:`parameters_from_dict`.
    """
    return {
        "int": IntParameter,
        "float": FloatParameter,
        "options": OptionsParameter,
        "bool": BoolParameter,
        }


def parameters_from_dict(
        specification: Dict[str, Dict[str, Any]],
        supported_parameter_types: Optional[Dict[str, Type[Parameter]]] = None
        ) -> Iterable[Parameter]:
    """
    Creates parameters from a specification dict.

    Parameters
    ------------
        - specification:
            Maps unique parameter names to their specification. A specification is a dict which must hold
            "type": <parameter-type-name> (e.g. "type": "int") and the constructor arguments of that type
            (e.g. "default", "min", "max", "options"). "description" is optional.

        - supported_parameter_types:
            Maps type names to parameter classes. Defaults to :func:`get_standard_parameter_types`.
    """
    type_to_parameter_class = supported_parameter_types or get_standard_parameter_types()

    for param_name, spec in specification.items():
        if not isinstance(param_name, str) or len(param_name) == 0:
            raise ConfigurationError(f"The parameter name {param_name!r} is not a non-empty string")

        if not isinstance(spec, dict):
            raise ConfigurationError(f"The parameter {param_name} has a specification which is not of type \"dict\"")

        if "type" not in spec:
            raise ConfigurationError(f"The parameter {param_name} is missing the \"type\" specification")

        param_type = spec["type"]
        if param_type not in type_to_parameter_class:
            raise ConfigurationError(f"The parameter type \"{param_type}\" of parameter {param_name} is not supported")

        yield type_to_parameter_class[param_type](name=param_name, **spec)
