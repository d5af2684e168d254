from . import cavity3d
from . import planar
