from dataclasses import asdict, is_dataclass
from typing import Any, Dict


class BaseEvent:
    """
    Base of the events a ReesLabClient emits. Listeners subscribe by the class name.

    """

    @property
    def type(self) -> str:
        return self.get_type()

    @classmethod
    def get_type(cls) -> str:
        return cls.__name__

    def as_dict(self) -> Dict[str, Any]:
        """The event's fields, plus its type under "type" """

        fields: Dict[str, Any] = asdict(self) if is_dataclass(self) else {}
        return {"type": self.type, **fields}
