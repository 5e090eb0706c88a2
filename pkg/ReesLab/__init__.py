from .client.client import ReesLabClient
from .client.job import JobSpec
