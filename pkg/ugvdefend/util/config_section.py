# General imports
from typing import Any, Dict, List, Mapping, Optional, Type

# Relative imports
from ..core.errors import ConfigurationError
from .parameters import Parameter, get_standard_parameter_types, parameters_from_dict


class ParameterSection:
    """
    Holds the typed parameters of one configuration section (e.g. "rewards") and applies the raw values
    read from a config file to them.
    """

    def __init__(self,
                 section_name: str,
                 specification: Dict[str, Dict[str, Any]],
                 supported_parameter_types: Optional[Dict[str, Type[Parameter[Any]]]] = None,
                 ) -> None:
        self._section_name = section_name
        self._specification = specification
        self._parameters: Dict[str, Parameter[Any]] = {
            param.name: param
            for param in parameters_from_dict(specification, supported_parameter_types or get_standard_parameter_types())
            }

    @property
    def name(self) -> str:
        return self._section_name

    def set_parameter_value(self, parameter_name: str, value: Any) -> None:
        if parameter_name not in self._parameters:
            known = ", ".join(sorted(self._parameters))
            raise ConfigurationError(f"Unknown key \"{parameter_name}\" in section \"{self._section_name}\" (known keys: {known})")

        parameter = self._parameters[parameter_name]
        if not parameter.set_value(value):
            raise ConfigurationError(f"Invalid value for \"{self._section_name}.{parameter_name}\": {parameter.error_string}")

    def apply(self, raw_values: Optional[Mapping[str, Any]]) -> "ParameterSection":
        """
        Sets every value of raw_values. A missing section (None) keeps all defaults.
        """
        if raw_values is None:
            return self
        if not isinstance(raw_values, Mapping):
            raise ConfigurationError(f"The section \"{self._section_name}\" must be a mapping but got {type(raw_values).__name__}")

        for name, value in raw_values.items():
            self.set_parameter_value(name, value)
        return self

    def get_parameter_value(self, parameter_name: str) -> Any:
        return self._parameters[parameter_name].get_value()

    def get_all_parameter_values(self) -> Dict[str, Any]:
        return {name: self.get_parameter_value(name) for name in self.get_all_parameter_names()}

    def get_all_parameter_names(self) -> List[str]:
        return list(self._parameters.keys())
