from ._pdmqi import *  # noqa: F401,F403
from ._pdmqi import PdmqiError, __doc__  # noqa: F401
