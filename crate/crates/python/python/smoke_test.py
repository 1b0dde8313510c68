"""Smoke test for the pymodsurf extension: python python/smoke_test.py"""

import cmath
import math

import pymodsurf as ms


def main():
    golden = 2 * math.log((3 + math.sqrt(5)) / 2)
    assert abs(ms.geodesic_length(3) - golden) < 1e-12

    spectrum = ms.length_spectrum(12)
    assert [m for _, _, m, _ in spectrum] == [1, 2, 2, 3, 2, 4, 2, 6, 3, 4]
    assert spectrum[0][3] == ["12"]
    assert ms.length_spectrum(2) == []

    s, t = ms.GroupElement.s(), ms.GroupElement.t()
    assert (s @ s) == ms.GroupElement.identity()
    st = s @ t
    assert (st @ st @ st) == ms.GroupElement.identity()
    assert ms.GroupElement(2, 1, 1, 1).trace() == 3
    assert ms.GroupElement(2, 1, 1, 1).is_hyperbolic()
    assert s.mobius(0.0) is None
    try:
        ms.GroupElement(1, 1, 1, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("determinant 0 accepted")

    assert abs(ms.torus_zeta(1) - (1 - math.exp(-1)) ** 2) < 1e-15
    assert abs(ms.hurwitz_zeta(2, 1.0) - math.pi**2 / 6) < 1e-12

    z = ms.selberg_zeta(2.0, 400, 30)
    dp, dm = ms.fredholm_dets(2.0)
    assert abs(z - dp * dm) < 1e-3
    try:
        ms.selberg_zeta(0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("Re s <= 1 accepted")

    dips = ms.scan(9.0, 14.0, 0.01)
    assert [round(r, 2) for r, _, _ in dips] == [9.53, 12.17, 13.78]
    assert ms.scan(1.0, 5.0, 0.01) == []

    found = ms.find_resonances()
    lambdas = [r.lambda_ for r in found]
    for got, want in zip(lambdas, [91.141, 148.432, 190.131]):
        assert abs(got - want) < 0.05, lambdas
    assert all(r.accepted and r.three_term_residual < 1e-6 for r in found)

    first = found[0]
    pf = ms.PeriodFunction(first.r, first.parity)
    assert pf.three_term_residual() < 1e-6
    x = 0.7
    lhs = pf(x)
    rhs = pf(x + 1) + cmath.exp(-2 * pf.s * math.log(x + 1)) * pf(x / (x + 1))
    assert abs(lhs - rhs) < 1e-6 * abs(lhs)
    r1, r2 = pf.cocycle_residuals()
    assert r1 < 1e-10 and r2 < 1e-5

    try:
        ms.refine_resonance(9.6, -1)
    except ms.NonConvergenceError:
        pass
    else:
        raise AssertionError("edge minimum accepted")

    print("pymodsurf smoke test passed:", ", ".join(f"{l:.4f}" for l in lambdas))


if __name__ == "__main__":
    main()
