"""Reference values of zeta(1/2 + it) from mpmath at 40 digits.

Emits tests/data/zeta_reference.csv (t, re, im).  The first 50 rows sample
t in [0, 100]; the remaining rows probe the Riemann-Siegel range.
"""
import sys
import mpmath as mp

mp.mp.dps = 40
ts = [mp.mpf(2 * i) + mp.mpf("0.37") for i in range(50)]
ts += [mp.mpf(x) for x in ("150.25", "199.9", "200.1", "250.5", "333.3", "500.75",
                           "1000.125", "2000.5", "4321.75", "5000.5", "9999.25",
                           "31415.9", "50000.5", "99999.5")]
out = open(sys.argv[1], "w") if len(sys.argv) > 1 else sys.stdout
out.write("t,re,im\n")
for t in ts:
    z = mp.zeta(mp.mpf("0.5") + 1j * t)
    out.write(f"{mp.nstr(t, 20)},{mp.nstr(z.real, 20)},{mp.nstr(z.imag, 20)}\n")
