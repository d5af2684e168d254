"""Copper box cavity with the flake at the magnetic antinode of its
TE101 mode (5.99 GHz), pumped for anti-Stokes scattering."""

from ..core import Process, TransducerConfig
from ..magnetostatics import MaterialGeometry
from ..units import SPEED_OF_LIGHT

WAVELENGTH = 1550e-9
MICROWAVE = (5.99e9, 1.5e6, 1.5e6)
MAGNON_GAMMA = 1e6
OPTICAL = (SPEED_OF_LIGHT / WAVELENGTH, 6.56e6, 25.14e6)
FSR = 5.923e9
G_MA = 15e6
G_MB = 2e3
PROCESS = Process.ANTI_STOKES


def geometry():
    return MaterialGeometry(d=0.5e-3, l1=3e-3, l2=3e-3)


def config(fsr=FSR, process=PROCESS, magnon_frequency=None):
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
