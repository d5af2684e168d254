__version__ = "0.1.0"


from . import core
from . import errors
from . import examples
from . import fit
from . import magnetostatics
from . import sweep
from . import units
