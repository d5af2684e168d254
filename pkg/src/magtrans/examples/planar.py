"""Split-ring resonator on a circuit board next to a YIG flake.

The ring resonates at 4.6 GHz and the optical cavity is pumped for
Stokes scattering. The optical rates are those of the coated flake in
a Fabry-Perot cavity at 1550 nm; the microwave rates and the couplings
are representative values.

"""

from ..core import Process, TransducerConfig
from ..magnetostatics import MaterialGeometry
from ..units import SPEED_OF_LIGHT

WAVELENGTH = 1550e-9
MICROWAVE = (4.6e9, 10e6, 5e6)
MAGNON_GAMMA = 1e6
OPTICAL = (SPEED_OF_LIGHT / WAVELENGTH, 6.56e6, 25.14e6)
FSR = 5.45e9
G_MA = 30e6
G_MB = 8e3
PROCESS = Process.STOKES


def geometry():
    return MaterialGeometry(d=0.5e-3, l1=3e-3, l2=3e-3)


def config(fsr=FSR, process=PROCESS, magnon_frequency=None):
    """Transducer pumped one `fsr` (Hz) from the sideband.

    The magnon sits on triple resonance unless `magnon_frequency` (Hz)
    is given.

    """
    if magnon_frequency is None:
        magnon_frequency = fsr
    return TransducerConfig.from_hz(
        microwave=MICROWAVE,
        magnon=(magnon_frequency, MAGNON_GAMMA),
        optical=OPTICAL,
        fsr=fsr,
        g_ma=G_MA,
        g_mb=G_MB,
        process=process,
    )
