from ._figures import *
from ._params import *
from ._response import *
from ._steady import *
