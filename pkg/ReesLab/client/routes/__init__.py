from .route_base import ClientRoute, RouteResult
from .charts import ChartsRoute
from .coker import CokerRoute
from .connection import ConnectionRoute
from .favb import FAVBRoute
from .favb2 import FAVB2Route
from .fiber import FiberRoute
from .models import ModelsRoute
from .p1type import P1TypeRoute
from .rees import ReesRoute
from .specseq import SpecSeqRoute
from .split import SplitRoute
from .strict import StrictRoute
from .verify_all import VerifyAllRoute
