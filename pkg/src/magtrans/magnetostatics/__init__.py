from ._catalog import *
from ._dispersion import *
from ._geometry import *
