"""Orthogonal Daubechies filter pairs.

Lowpass taps are hard-coded from the standard tables (extremal-phase
convention, normalized so the taps sum to sqrt(2)); the highpass is derived
through the quadrature-mirror relation.  The test suite re-derives every
order by spectral factorization and checks these digits against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InputError, _as_readonly_f64

_DB_LOWPASS: dict[int, tuple[float, ...]] = {
    1: (
        7.07106781186547573e-01, 7.07106781186547573e-01,
    ),
    2: (
        4.82962913144534156e-01, 8.36516303737807942e-01,
        2.24143868042013389e-01, -1.29409522551260370e-01,
    ),
    3: (
        3.32670552950082632e-01, 8.06891509311092547e-01,
        4.59877502118491543e-01, -1.35011020010254584e-01,
        -8.54412738820266582e-02, 3.52262918857095333e-02,
    ),
    4: (
        2.30377813308896506e-01, 7.14846570552915672e-01,
        6.30880767929858921e-01, -2.79837694168598543e-02,
        -1.87034811719093086e-01, 3.08413818355607640e-02,
        3.28830116668851966e-02, -1.05974017850690317e-02,
    ),
    5: (
        1.60102397974192928e-01, 6.03829269797189649e-01,
        7.24308528437772936e-01, 1.38428145901320743e-01,
        -2.42294887066382025e-01, -3.22448695846383748e-02,
        7.75714938400457188e-02, -6.24149021279827437e-03,
        -1.25807519990819988e-02, 3.33572528547377125e-03,
    ),
    6: (
        1.11540743350109467e-01, 4.94623890398453059e-01,
        7.51133908021095364e-01, 3.15250351709197629e-01,
        -2.26264693965439828e-01, -1.29766867567261940e-01,
        9.75016055873230425e-02, 2.75228655303057269e-02,
        -3.15820393174860298e-02, 5.53842201161496126e-04,
        4.77725751094551076e-03, -1.07730108530847959e-03,
    ),
    7: (
        7.78520540850091841e-02, 3.96539319481917285e-01,
        7.29132090846235092e-01, 4.69782287405193122e-01,
        -1.43906003928564979e-01, -2.24036184993874982e-01,
        7.13092192668302594e-02, 8.06126091510830783e-02,
        -3.80299369350144134e-02, -1.65745416306668815e-02,
        1.25509985560998405e-02, 4.29577972921366515e-04,
        -1.80164070404749085e-03, 3.53713799974520241e-04,
    ),
    8: (
        5.44158422431040081e-02, 3.12871590914299946e-01,
        6.75630736297289758e-01, 5.85354683654206731e-01,
        -1.58291052563493059e-02, -2.84015542961546907e-01,
        4.72484573913282795e-04, 1.28747426620478472e-01,
        -1.73693010018075474e-02, -4.40882539307947546e-02,
        1.39810279173982824e-02, 8.74609404740577662e-03,
        -4.87035299345157414e-03, -3.91740373376947050e-04,
        6.75449406450569331e-04, -1.17476784124769535e-04,
    ),
}

SUPPORTED_ORDERS = tuple(sorted(_DB_LOWPASS))


def quadrature_mirror(lowpass: np.ndarray) -> np.ndarray:
    """Highpass taps g[k] = (-1)^k * h[N-1-k] for an orthogonal pair."""
    n = len(lowpass)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return signs * lowpass[::-1]


@dataclass(frozen=True, eq=False)
class WaveletFilterPair:
    """An orthogonal analysis filter pair (lowpass sums to sqrt(2))."""

    lowpass: np.ndarray
    highpass: np.ndarray
    name: str

    def __post_init__(self) -> None:
        lo = _as_readonly_f64(self.lowpass)
        hi = _as_readonly_f64(self.highpass)
        if len(lo) != len(hi) or len(lo) == 0 or len(lo) % 2 != 0:
            raise InputError("filter pair must have equal, even, nonzero length")
        if abs(lo.sum() - np.sqrt(2.0)) > 1e-12:
            raise InputError("lowpass taps must sum to sqrt(2)")
        if abs(hi.sum()) > 1e-12:
            raise InputError("highpass taps must sum to 0")
        if np.max(np.abs(hi - quadrature_mirror(lo))) > 1e-12:
            raise InputError("pair violates the quadrature-mirror relation")
        object.__setattr__(self, "lowpass", lo)
        object.__setattr__(self, "highpass", hi)

    def __len__(self) -> int:
        return int(len(self.lowpass))


def daubechies_filters(order: int) -> WaveletFilterPair:
    """Standard Daubechies pair with ``2 * order`` taps (db1 is Haar)."""
    if order not in _DB_LOWPASS:
        raise InputError(
            f"unsupported Daubechies order {order}; supported: {SUPPORTED_ORDERS}"
        )
    lo = np.array(_DB_LOWPASS[order])
    return WaveletFilterPair(lowpass=lo, highpass=quadrature_mirror(lo), name=f"db{order}")
