from .schema_types import *
from .schema_utils import *
