#!/usr/bin/env python3
"""Arbitrary-precision reference values for the error-function kernel and a few
closed-form probability constants.

Run from the repository root:

    python3 tools/gen_erf_golden.py

The output is pasted verbatim into the unit tests (frozen golden values). mpmath
is evaluated at 60 significant digits and printed at 25, far beyond f64.
"""

from mpmath import mp, erf, erfc, exp, sqrt

mp.dps = 60


def dump(label, value):
    print(f"    ({label}, {mp.nstr(value, 25)}),")


def main():
    xs = [
        0.0, 1e-12, 1e-6, 0.01, 0.1, 0.25, 0.5, 0.75, 0.84375, 1.0, 1.25,
        1.5, 1.75, 1.9999, 2.0, 2.0001, 2.25, 2.5, 3.0, 3.5, 4.0, 4.5,
        5.0, 5.5, 6.0,
    ]
    print("// erf golden values, mpmath 60-digit, printed to 25 digits")
    print("const ERF_GOLDEN: &[(f64, f64)] = &[")
    for x in xs:
        dump(mp.mpf(x), erf(mp.mpf(x)))
    print("];")
    print()

    print("// assorted closed-form constants")
    # kraus_update on |+><+| with eps = 1, q = 1:
    # M = diag(1, e^-1); rho' = M rho M / tr  =>  rho'_00 = 1/(1+e^-2),
    # rho'_01 = e^-1/(1+e^-2)
    print("kraus |+> eps=1 q=1 rho00 =", mp.nstr(1 / (1 + exp(-2)), 25))
    print("kraus |+> eps=1 q=1 rho01 =", mp.nstr(exp(-1) / (1 + exp(-2)), 25))
    # prob_y(y=0.8, eps1=eps2=0.5): p_plus = (1 + 0.8 e^-0.5)/2
    print("prob_y(0.8,0.5,0.5) p_plus =",
          mp.nstr((1 + mp.mpf("0.8") * exp(mp.mpf("-0.5"))) / 2, 25))
    # nonselective overlap factor at eps = 0.5
    print("exp(-0.25) =", mp.nstr(exp(mp.mpf("-0.25")), 25))
    # calibration_z(1e4, 0) = erf(sqrt(5000)) -> 1
    print("erf(sqrt(5000)) = 1 -", mp.nstr(erfc(sqrt(mp.mpf(5000))), 10))


if __name__ == "__main__":
    main()
