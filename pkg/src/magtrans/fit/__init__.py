from ._crossing import *
from ._resonance import *
from ._simplex import *
from ._trace import *
