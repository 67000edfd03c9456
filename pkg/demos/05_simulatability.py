"""
The simulatability harness
==========================

Signatures must look like they came from the proof's simulator: preimage
coefficients Gaussian with the advertised variance, errors uniform over
Z_p, no cross-coordinate correlation, and the documented restart rate.
This demo runs a reduced-size version of the suite (the acceptance run
uses 10^5 signings; the variance/mean tolerances are calibrated there).
"""

import gadgetforge as gf
from gadgetforge import stattest

params = gf.get_params("eagle-512")
seed = bytes([0]) + b"eagle-512".ljust(31, b"\x00")

report = stattest.run_simulatability("eagle", params, trials=20000, seed=seed)
print(stattest.format_report(report))
print("(the variance bound is a max over all %d coordinates and is sized "
      "for 10^5 trials;\n expect it to wobble at this reduced count)"
      % params.m)

print("\nnegative control (all widths halved):")
bad = stattest.run_simulatability("eagle", params, trials=10000, seed=seed,
                                  width_scale=0.5)
print("  variance check passes:", bad["checks"]["variance"]["pass"],
      " (max deviation %.0f%%)" % (100 * bad["checks"]["variance"]["max_rel_dev"]))
