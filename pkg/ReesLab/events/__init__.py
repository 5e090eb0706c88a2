from typing import Awaitable, Callable, Type, TypeVar, Union

from .custom_events import *

Event: Type = Union[CustomEvent]

EventHandler = TypeVar("EventHandler", bound=Callable[[Event], Union[None, Awaitable[None]]])
