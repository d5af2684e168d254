from ._axes import *
from ._lorentz import *
from ._maps import *
from ._optimize import *
from ._peak import *
from ._scans import *
from ._search import *
