"""Modified Bessel function of the second kind, K_nu, for real order nu >= 0.

The evaluation strategy is the classical two-regime scheme for K:

* ``z <= 2``: Temme's ascending series for the order pair ``(K_mu, K_{mu+1})``
  with ``|mu| <= 1/2``.  The series carries the ``log(z/2)`` term explicitly,
  so integer orders (mu = 0) are handled without any limiting process.
* ``z > 2``: the Steed/Thompson-Barnett continued fraction, again producing
  the pair ``(K_mu, K_{mu+1})``.

A general order ``nu = n + mu`` is then reached by the upward three-term
recurrence ``K_{m+1} = K_{m-1} + (2 m / z) K_m``, which is forward stable for
K because the sequence grows with the order.  The derivative uses the exact
identity ``K_nu'(z) = -(K_{nu-1}(z) + K_{nu+1}(z)) / 2`` together with the
evenness ``K_{-a} = K_a``.

Very large arguments underflow to 0 gracefully (K decays like ``e^{-z}``).
Combinations that overflow double precision (tiny ``z`` with large ``nu``)
raise ``OverflowError`` instead of returning silent infinities.
"""

import math

import numpy as np

from ._jit import njit

EULER_GAMMA = 0.57721566490153286061

# Temme series terms: at the regime boundary z = 2 the terms shrink like
# 1/(i!)^2, so 40 terms are far past double precision.
_SERIES_MAX = 40
_CF_MAX = 120


def _temme_gammas(mu):
    """Coefficients Gamma1, Gamma2, 1/Gamma(1+mu), 1/Gamma(1-mu) for |mu| <= 1/2.

    Gamma1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) has a removable
    singularity at mu = 0; close to it the difference is evaluated through the
    sinh form of exp(log(1/Gamma)) so no cancellation occurs.
    """
    gampl = 1.0 / math.gamma(1.0 + mu)
    gammi = 1.0 / math.gamma(1.0 - mu)
    if abs(mu) < 1e-3:
        # log(1/Gamma(1+x)) = gamma*x - zeta(2)x^2/2 + zeta(3)x^3/3 - ...
        zeta2 = math.pi * math.pi / 6.0
        zeta3 = 1.2020569031595942854
        zeta4 = math.pi ** 4 / 90.0
        zeta5 = 1.0369277551433699263
        odd = EULER_GAMMA * mu + zeta3 * mu ** 3 / 3.0 + zeta5 * mu ** 5 / 5.0
        even = -zeta2 * mu * mu / 2.0 - zeta4 * mu ** 4 / 4.0
        if mu == 0.0:
            gam1 = -EULER_GAMMA
        else:
            gam1 = -math.exp(even) * math.sinh(odd) / mu
    else:
        gam1 = (gammi - gampl) / (2.0 * mu)
    gam2 = (gammi + gampl) / 2.0
    return gam1, gam2, gampl, gammi


@njit(cache=True)
def _k_pair(z, mu, gam1, gam2, gampl, gammi):
    """(K_mu(z), K_{mu+1}(z)) for |mu| <= 1/2 and z > 0."""
    if z <= 2.0:
        x2 = 0.5 * z
        pimu = math.pi * mu
        if abs(pimu) > 1e-15:
            fact = pimu / math.sin(pimu)
        else:
            fact = 1.0
        dlog = -math.log(x2)
        e = mu * dlog
        if abs(e) > 1e-15:
            fact2 = math.sinh(e) / e
        else:
            fact2 = 1.0
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * dlog)
        ksum = ff
        ee = math.exp(e)
        p = 0.5 * ee / gampl
        q = 0.5 / (ee * gammi)
        c = 1.0
        d = x2 * x2
        sum1 = p
        for i in range(1, _SERIES_MAX + 1):
            fi = float(i)
            ff = (fi * ff + p + q) / (fi * fi - mu * mu)
            c *= d / fi
            p /= fi - mu
            q /= fi + mu
            dl = c * ff
            ksum += dl
            dl1 = c * (p - fi * ff)
            sum1 += dl1
            if abs(dl) < abs(ksum) * 1e-17:
                break
        return ksum, sum1 * (2.0 / z)

    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu * mu
    q = a1
    c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _CF_MAX + 1):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels) < abs(s) * 1e-16:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / s
    k1 = k0 * (mu + z + 0.5 - h) / z
    return k0, k1


@njit(cache=True)
def _k_chain(z, mu, n, gam1, gam2, gampl, gammi):
    """(K_{nu-2}, K_{nu-1}, K_nu) for nu = n + mu via upward recurrence.

    The two lower slots are only meaningful when the chain is long enough
    (n >= 2 and n >= 1 respectively); callers that asked for a shorter chain
    ignore them.
    """
    ka, kb = _k_pair(z, mu, gam1, gam2, gampl, gammi)
    km2 = 0.0
    for j in range(1, n):
        km2 = ka
        ka, kb = kb, ka + (2.0 * (mu + j) / z) * kb
    if n == 0:
        return 0.0, 0.0, ka
    return km2, ka, kb


@njit(cache=True)
def _bessel_k_array(z, mu, n, gam1, gam2, gampl, gammi, out):
    for i in range(z.size):
        _, _, kv = _k_chain(z[i], mu, n, gam1, gam2, gampl, gammi)
        out[i] = kv


def _split_order(nu):
    """nu = n + mu with integer n >= 0 and |mu| <= 1/2."""
    n = int(math.floor(nu + 0.5))
    return n, nu - n


def _as_positive_array(z):
    arr = np.asarray(z, dtype=np.float64)
    if arr.size and not np.all(arr > 0.0):
        raise ValueError("bessel_k requires z > 0")
    return arr


def bessel_k(order, z):
    """Evaluate K_order(z) for real order >= 0 and z > 0.

    Parameters
    ----------
    order : float
        Order nu >= 0.
    z : float or array_like
        Strictly positive argument(s).

    Returns
    -------
    float or ndarray
        K values, matching the shape of ``z``.  Results that underflow for
        very large ``z`` are returned as 0.0.

    Raises
    ------
    ValueError
        If ``order < 0`` or any ``z <= 0``.
    OverflowError
        If any value exceeds double range (tiny ``z`` with large order).
    """
    nu = float(order)
    if nu < 0.0:
        raise ValueError("bessel_k requires order >= 0")
    arr = _as_positive_array(z)
    n, mu = _split_order(nu)
    consts = _temme_gammas(mu)
    flat = np.ascontiguousarray(arr.ravel())
    out = np.empty_like(flat)
    _bessel_k_array(flat, mu, n, *consts, out)
    if not np.all(np.isfinite(out)):
        bad = flat[~np.isfinite(out)]
        raise OverflowError(
            "bessel_k overflow at order %g, z near %g" % (nu, float(bad.min()))
        )
    if np.isscalar(z) or arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def bessel_k_dz(order, z):
    """d/dz K_order(z) through the identity -(K_{order-1} + K_{order+1})/2.

    ``K_{-a} = K_a`` handles orders below 1.
    """
    nu = float(order)
    if nu < 0.0:
        raise ValueError("bessel_k_dz requires order >= 0")
    km = bessel_k(abs(nu - 1.0), z)
    kp = bessel_k(nu + 1.0, z)
    if np.isscalar(z):
        return -0.5 * (km + kp)
    return -0.5 * (np.asarray(km) + np.asarray(kp))


def bessel_k_triple(order, z):
    """(K_{order-2}, K_{order-1}, K_order) at shared z, for order >= 1.5.

    One series/continued-fraction evaluation feeds all three orders through
    the upward recurrence, which is what kernel derivative evaluation needs.
    """
    nu = float(order)
    if nu < 1.5:
        raise ValueError("bessel_k_triple requires order >= 1.5")
    arr = _as_positive_array(z)
    n, mu = _split_order(nu)
    consts = _temme_gammas(mu)
    flat = np.ascontiguousarray(arr.ravel())
    lo = np.empty_like(flat)
    mid = np.empty_like(flat)
    hi = np.empty_like(flat)
    _triple_array(flat, mu, n, *consts, lo, mid, hi)
    for name, vals in (("K_{nu-2}", lo), ("K_{nu-1}", mid), ("K_nu", hi)):
        if not np.all(np.isfinite(vals)):
            raise OverflowError("bessel_k_triple overflow in %s" % name)
    if np.isscalar(z) or arr.ndim == 0:
        return float(lo[0]), float(mid[0]), float(hi[0])
    shape = arr.shape
    return lo.reshape(shape), mid.reshape(shape), hi.reshape(shape)


@njit(cache=True)
def _triple_array(z, mu, n, gam1, gam2, gampl, gammi, lo, mid, hi):
    for i in range(z.size):
        a, b, c = _k_chain(z[i], mu, n, gam1, gam2, gampl, gammi)
        lo[i] = a
        mid[i] = b
        hi[i] = c
