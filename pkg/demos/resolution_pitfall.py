"""When the wall grid is too coarse, and how the harness catches it.

The fixture under fixtures/underresolved/ pinches the set down to a
channel of width about 1/1500 right where it crosses the diagonal
x_1 = x_2.  The one-dimensional wall slice never lands a grid cell in
the channel, stabilizes on the empty answer, and the engine reports
"not connected"; the full-dimensional reference grid crosses the wall
far from the pinch and reports "connected".

Disagreements like this are exactly what `symconn verify` is for: the
report lists the query, both verdicts, and the engine's certificate, so
the failing wall slice can be read off directly.
"""

import pathlib

from symconn import run_verify

corpus = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

print("main corpus:")
rep = run_verify(corpus)
print(f"  {rep['agreement_rate']} queries agree "
      f"({rep['seconds']:.1f}s, {len(rep['fixtures'])} fixtures)")
print()

print("under-resolved corpus:")
rep = run_verify(corpus / "underresolved")
print(f"  {rep['agreement_rate']} queries agree")
for dis in rep["disagreements"]:
    print(f"  {dis['fixture']}: engine={dis['engine']} "
          f"brute_force={dis['brute_force']} for x={dis['x']} y={dis['y']}")
    cert = dis["engine_certificate"]
    print("    orbit step:", cert["orbit"]["connected"])
    for idx, wall in cert["walls"].items():
        print(f"    wall {idx}: connected={wall['connected']}, "
              f"{len(wall['trials'])} face trials on the slice")
print()
print("the pinch is invisible at every dyadic pitch the stabilization")
print("visits, so refining blindly does not help; the certificate names")
print("the wall whose slice needs a closer look")
