#!/usr/bin/env python3
"""Regenerate src/thzlink/data/mini_catalog.par.

A ~50-line subset of water and oxygen lines covering 0.6-46 cm^-1
(roughly 20 GHz - 1.4 THz), with representative intensities, widths, and
lower-state energies. It exists so the simulator and its tests run out of
the box; it is an illustrative subset, not a substitute for downloading a
full catalog.

Run from the repository root:  python tools/make_mini_catalog.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from thzlink.catalog import SpectralLine, format_line_record, parse_line_record

# (molecule, isotopologue, nu0 cm^-1, S0, gamma_air, gamma_self,
#  E_lower cm^-1, n_air, delta_air)
LINES = [
    # Water vapor, principal isotopologue.
    (1, 1, 0.741680, 1.335e-28, 0.0976, 0.483, 446.5106, 0.76, 0.0),
    (1, 1, 6.114600, 7.740e-24, 0.0980, 0.490, 136.1639, 0.74, -0.000200),
    (1, 1, 10.714940, 6.300e-24, 0.0620, 0.280, 1282.9191, 0.55, -0.000300),
    (1, 1, 10.845872, 1.010e-23, 0.0920, 0.440, 315.7795, 0.70, -0.000400),
    (1, 1, 12.681937, 1.230e-23, 0.0980, 0.460, 212.1564, 0.73, -0.000300),
    (1, 1, 14.588289, 6.000e-25, 0.0700, 0.330, 1059.6470, 0.60, 0.0),
    (1, 1, 14.648468, 9.000e-25, 0.0750, 0.360, 756.7248, 0.64, 0.0),
    (1, 1, 14.777473, 3.000e-25, 0.0680, 0.320, 1088.6310, 0.58, 0.0),
    (1, 1, 14.943683, 1.300e-23, 0.0900, 0.420, 285.4186, 0.70, -0.000500),
    (1, 1, 15.706993, 8.000e-25, 0.0730, 0.350, 742.0730, 0.62, 0.0),
    (1, 1, 15.833749, 3.200e-24, 0.0850, 0.400, 488.1077, 0.67, 0.0),
    (1, 1, 16.294149, 1.400e-24, 0.0800, 0.380, 586.4792, 0.65, 0.0),
    (1, 1, 18.577339, 1.500e-19, 0.1040, 0.490, 23.7944, 0.69, 0.000100),
    (1, 1, 20.704022, 1.100e-22, 0.0850, 0.400, 552.9113, 0.66, 0.0),
    (1, 1, 25.085246, 9.600e-22, 0.1020, 0.480, 70.0908, 0.70, 0.000200),
    (1, 1, 28.685752, 5.000e-24, 0.0660, 0.310, 1255.1670, 0.56, 0.0),
    (1, 1, 30.560233, 8.300e-23, 0.0820, 0.390, 446.5106, 0.66, 0.0),
    (1, 1, 32.366268, 4.800e-22, 0.0890, 0.420, 285.4186, 0.68, 0.0),
    (1, 1, 32.953729, 7.200e-21, 0.1010, 0.470, 37.1371, 0.69, 0.000100),
    (1, 1, 36.604470, 5.400e-21, 0.0960, 0.450, 79.4964, 0.68, 0.0),
    (1, 1, 37.137371, 1.650e-20, 0.1060, 0.500, 0.0000, 0.68, 0.000100),
    (1, 1, 38.790766, 6.000e-21, 0.0940, 0.440, 136.7617, 0.67, 0.0),
    (1, 1, 40.282360, 1.300e-21, 0.0880, 0.410, 222.0527, 0.66, 0.0),
    (1, 1, 40.987907, 8.000e-22, 0.0860, 0.400, 142.2785, 0.66, 0.0),
    (1, 1, 42.637178, 2.000e-21, 0.0900, 0.430, 206.3014, 0.67, 0.0),
    (1, 1, 43.529370, 5.000e-22, 0.0840, 0.400, 300.3621, 0.65, 0.0),
    (1, 1, 44.104620, 3.000e-22, 0.0820, 0.390, 400.4102, 0.64, 0.0),
    (1, 1, 45.987315, 9.000e-22, 0.0870, 0.410, 249.4360, 0.65, 0.0),
    # Heavier water isotopologues.
    (1, 2, 6.039270, 1.400e-26, 0.0980, 0.490, 136.4200, 0.74, -0.000200),
    (1, 2, 18.413386, 2.800e-22, 0.1030, 0.490, 23.7500, 0.69, 0.000100),
    (1, 3, 18.533000, 5.500e-23, 0.1030, 0.490, 23.7700, 0.69, 0.000100),
    (1, 4, 17.000000, 1.000e-25, 0.0990, 0.460, 100.0000, 0.70, 0.0),
    # Molecular oxygen, 50-70 GHz band.
    (7, 1, 1.683900, 1.100e-26, 0.0400, 0.040, 663.1000, 0.72, 0.0),
    (7, 1, 1.770076, 6.000e-26, 0.0420, 0.042, 391.0000, 0.73, 0.0),
    (7, 1, 1.860702, 1.700e-25, 0.0450, 0.045, 195.2000, 0.74, 0.0),
    (7, 1, 1.949510, 2.900e-25, 0.0480, 0.048, 79.5600, 0.75, 0.0),
    (7, 1, 2.011545, 2.500e-25, 0.0510, 0.051, 16.3900, 0.76, 0.0),
    (7, 1, 2.039725, 2.900e-25, 0.0500, 0.050, 42.2000, 0.76, 0.0),
    (7, 1, 2.084257, 2.400e-25, 0.0470, 0.047, 114.9000, 0.75, 0.0),
    (7, 1, 2.157378, 1.400e-25, 0.0440, 0.044, 234.2000, 0.74, 0.0),
    (7, 1, 2.211550, 7.500e-26, 0.0420, 0.042, 327.8000, 0.73, 0.0),
    (7, 1, 2.282564, 3.500e-26, 0.0410, 0.041, 487.2000, 0.72, 0.0),
    # Oxygen 118.75 GHz line and the THz rotational ladder.
    (7, 1, 3.961085, 3.900e-25, 0.0390, 0.039, 0.0000, 0.74, 0.0),
    (7, 1, 12.291617, 1.200e-26, 0.0400, 0.040, 2.0800, 0.73, 0.0),
    (7, 1, 14.168636, 3.500e-26, 0.0400, 0.040, 16.3876, 0.73, 0.0),
    (7, 1, 16.252924, 2.400e-26, 0.0400, 0.040, 42.2001, 0.73, 0.0),
    (7, 1, 23.863128, 9.000e-27, 0.0400, 0.040, 79.5646, 0.72, 0.0),
    (7, 1, 25.812554, 6.000e-27, 0.0400, 0.040, 114.8970, 0.72, 0.0),
    (7, 1, 27.824195, 3.200e-27, 0.0400, 0.040, 178.1000, 0.72, 0.0),
    # A rare oxygen isotopologue line.
    (7, 2, 2.004000, 1.000e-27, 0.0480, 0.048, 20.0000, 0.75, 0.0),
]


def main():
    records = []
    for mol, iso, nu0, s0, g_air, g_self, e_low, n_air, delta in LINES:
        line = SpectralLine(
            molecule_id=mol, isotopologue_id=iso, nu0=nu0, S0_ref=s0,
            alpha_air=g_air, alpha_self=g_self, E_lower=e_low,
            gamma_t=n_air, delta_air=delta, abundance=1.0)
        record = format_line_record(line)
        parsed = parse_line_record(record)  # round-trip sanity check
        assert abs(parsed.nu0 - nu0) < 1e-6, (nu0, parsed.nu0)
        assert abs(parsed.S0_ref - s0) / s0 < 1e-3, (s0, parsed.S0_ref)
        records.append(record)
    records.sort(key=lambda r: float(r[3:15]))
    out = ROOT / "src" / "thzlink" / "data" / "mini_catalog.par"
    out.write_text("\n".join(records) + "\n")
    print(f"{out}: {len(records)} records")


if __name__ == "__main__":
    main()
