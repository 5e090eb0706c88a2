from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Optional, Tuple

from ReesLab.client.errors import InvalidJobError

"""Output formats accepted by emit_report"""
FORMATS: Tuple[str, ...] = ("json", "table", "both")


@dataclass(frozen=True)
class CommandSpec:
    """
    What a command reads and which options it takes

    """

    kinds: Tuple[str, ...] = ()
    accepts_model: bool = False
    needs_input: bool = True
    options: FrozenSet[str] = frozenset()
    required: FrozenSet[str] = frozenset()


COMMANDS: Dict[str, CommandSpec] = {
    "split": CommandSpec(("multifiltration",)),
    "rees": CommandSpec(("multifiltration", "graded_module_dump"), options=frozenset({"fiber", "window"})),
    "fiber": CommandSpec(("multifiltration",), options=frozenset({"at"}), required=frozenset({"at"})),
    "strict": CommandSpec(("filtered_map",), options=frozenset({"r"}), required=frozenset({"r"})),
    "coker": CommandSpec(("filtered_map",)),
    "charts": CommandSpec(("multifiltration",)),
    "p1type": CommandSpec(("multifiltration",)),
    "connection": CommandSpec(("connection",), options=frozenset({"flatten"})),
    "specseq": CommandSpec(("bigraded_complex",), accepts_model=True, options=frozenset({"rmax"})),
    "favb": CommandSpec(("bigraded_complex",), True, options=frozenset({"k", "samples"}), required=frozenset({"k"})),
    "favb2": CommandSpec(
        ("bigraded_complex",), True, options=frozenset({"k", "base_change"}), required=frozenset({"k"})
    ),
    "models": CommandSpec(needs_input=False, options=frozenset({"action", "name"}), required=frozenset({"action"})),
    "verify-all": CommandSpec(accepts_model=True, needs_input=False, options=frozenset({"samples"})),
}


@dataclass()
class JobSpec:
    """
    One unit of work for the ReesLabClient: a command, exactly one input source and its options

    """

    command: str
    input: Optional[str] = None
    model: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    format: str = "json"

    @property
    def source(self) -> Optional[str]:
        """The input file or model descriptor, whichever was given"""

        return self.input if self.input is not None else self.model

    @property
    def spec(self) -> CommandSpec:
        return COMMANDS[self.command]

    def option(self, name: str, default: Any = None) -> Any:
        value: Any = self.options.get(name)
        return default if value is None else value

    def validate(self) -> None:
        """
        Check the command, the input source and the options against the command table

        :return: None
        :raises: InvalidJobError

        """

        if self.command not in COMMANDS:
            raise InvalidJobError(f"Unknown command '{self.command}'; expected one of {sorted(COMMANDS)}")

        if self.format not in FORMATS:
            raise InvalidJobError(f"Unknown format '{self.format}'; expected one of {list(FORMATS)}")

        spec: CommandSpec = self.spec

        if self.input is not None and self.model is not None:
            raise InvalidJobError("Give either an input file or a model, not both")

        if self.input is not None and not spec.kinds:
            raise InvalidJobError(f"'{self.command}' does not read an input file")

        if self.model is not None and not spec.accepts_model:
            raise InvalidJobError(f"'{self.command}' does not take a model")

        if spec.needs_input and self.source is None:
            raise InvalidJobError(f"'{self.command}' needs an input " + ("file or model" if spec.accepts_model else "file"))

        given: Dict[str, Any] = {name: value for name, value in self.options.items() if value is not None}
        unknown = sorted(set(given) - spec.options)
        if unknown:
            raise InvalidJobError(f"'{self.command}' does not accept the option(s) {unknown}")

        missing = sorted(spec.required - set(given))
        if missing:
            raise InvalidJobError(f"'{self.command}' needs the option(s) {missing}")


__all__ = [
    "FORMATS",
    "CommandSpec",
    "COMMANDS",
    "JobSpec"
]
