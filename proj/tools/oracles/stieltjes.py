"""Stieltjes constants gamma_0..gamma_11 at 30 significant digits.

Computed with mpmath at 60 digits of working precision.  The output is the
literal table embedded in src/main_term.cpp.
"""
import mpmath as mp

mp.mp.dps = 60
for n in range(12):
    print(f"    {mp.nstr(mp.stieltjes(n), 30, min_fixed=-40, max_fixed=40)}L,")
