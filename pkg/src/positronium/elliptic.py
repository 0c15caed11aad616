"""Complete elliptic integrals of the first and second kind.

Both functions take the elliptic MODULUS k, not the parameter m = k**2.
This matters: the ring-ring interaction energy evaluates K and E at
k = 1/sqrt(1 + r**2/(4*R**2)), and feeding that argument to a
parameter-convention routine silently corrupts every ring potential.

    K(k) = integral_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta)
    E(k) = integral_0^{pi/2} sqrt(1 - k^2 sin^2 theta) dtheta

Evaluation uses the arithmetic-geometric mean iteration, which converges
quadratically (a handful of sweeps at double precision):

    a_0 = 1,  b_0 = k' = sqrt(1 - k^2),  c_0 = k
    a_{j+1} = (a_j + b_j)/2,  b_{j+1} = sqrt(a_j b_j),  c_{j+1} = (a_j - b_j)/2

    K(k) = pi / (2 * AGM(1, k'))
    E(k) = K(k) * (1 - sum_j 2^{j-1} c_j^2)

K diverges logarithmically as k -> 1; that endpoint is a signalled domain
error here, never an infinity sentinel, because the ring models reach k = 1
only at r = 0 which callers must exclude.  E(1) = 1 is finite and allowed.
"""

from __future__ import annotations

import math

__all__ = ["ellip_K", "ellip_E", "ellip_KE"]

# AGM contraction is quadratic; 64 sweeps is far beyond what double
# precision can ever use, so hitting the cap indicates a logic error.
_MAX_SWEEPS = 64


def _ellip_KE_pair(k: float, kp: float) -> tuple[float, float]:
    """AGM evaluation of (K(k), E(k)) with BOTH moduli supplied by the caller.

    Internal workhorse.  A caller that knows the complementary modulus to
    full precision -- e.g. k = 1/hypot(1, x) together with
    k' = x/hypot(1, x) -- must pass it directly: reconstructing k' from a
    rounded k loses every digit once k is within a few ulp of 1, and k may
    even round to exactly 1.0 while k' is still a perfectly good 1e-12.
    Requires kp > 0 (K diverges at kp = 0).
    """
    a = 1.0
    b = kp
    csum = 0.5 * k * k  # j = 0 term of sum 2^{j-1} c_j^2, c_0 = k
    weight = 0.5
    for _ in range(_MAX_SWEEPS):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        csum += weight * c * c
        # the iteration stalls with a - b at one or two ulp, i.e. c around
        # half an ulp of a; demanding less than that would never terminate
        if c <= math.ulp(a):
            big_k = math.pi / (a + b)
            return big_k, big_k * (1.0 - csum)
    raise RuntimeError("AGM failed to converge (unreachable for moduli in [0,1))")


def ellip_KE(k: float) -> tuple[float, float]:
    """Return (K(k), E(k)) from a single AGM run.

    The ring potentials need both integrals at the same modulus; sharing the
    iteration halves the work in the innermost loop of every energy scan.
    """
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must satisfy 0 <= k < 1 for K(k); got k={k!r}")
    # k' formed without the 1 - k^2 cancellation
    return _ellip_KE_pair(k, math.sqrt((1.0 - k) * (1.0 + k)))


def ellip_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention."""
    return ellip_KE(k)[0]


def ellip_E(k: float) -> float:
    """Complete elliptic integral of the second kind, modulus convention.

    Defined on all of [0, 1]; E(1) = 1 exactly (the integral of |cos|).
    """
    if k == 1.0:
        return 1.0
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"modulus must satisfy 0 <= k <= 1 for E(k); got k={k!r}")
    return ellip_KE(k)[1]
