"""Seeded generators shared by the module tests and the acceptance suite."""

from fractions import Fraction

from nsatop.germs import PeriodicGerm, RationalGerm
from nsatop.hyperreal import Classification, Hyperreal, classify, inv
from nsatop.poly import Poly


def rand_fraction(rng, span=3, max_den=2) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def rand_poly(rng, max_deg=2, zero_ok=True) -> Poly:
    while True:
        coeffs = [rand_fraction(rng) for _ in range(rng.randint(0, max_deg) + 1)]
        p = Poly(coeffs)
        if zero_ok or not p.is_zero():
            return p


def rand_hyperreal(rng, max_deg=2, rams=(1, 1, 1, 2, 3)) -> Hyperreal:
    return Hyperreal(
        rand_poly(rng, max_deg),
        rand_poly(rng, max_deg, zero_ok=False),
        rng.choice(rams),
    )


def rand_finite(rng, max_deg=2) -> Hyperreal:
    a = rand_hyperreal(rng, max_deg)
    if classify(a) is Classification.INFINITE:
        return inv(a)
    return a


def rand_infinitesimal(rng, max_deg=2) -> Hyperreal:
    return Hyperreal(Poly.X) * rand_finite(rng, max_deg)


def rand_rational_germ(rng, max_deg=2) -> RationalGerm:
    return RationalGerm(rand_poly(rng, max_deg), rand_poly(rng, max_deg, zero_ok=False))


def rand_periodic_germ(rng, pool=(0, 1, 2), max_pre=2, max_period=4) -> PeriodicGerm:
    pre = [rng.choice(pool) for _ in range(rng.randint(0, max_pre))]
    period = [rng.choice(pool) for _ in range(rng.randint(1, max_period))]
    return PeriodicGerm(pre, period)
