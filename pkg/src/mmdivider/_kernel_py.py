"""Pure-NumPy divider sweep kernel (fallback for the compiled ``_kernel``).

Both implementations share one contract::

    divider_s(zc, gl, arm_ptr, shunt_b, zref) -> complex128[nf, 3, 3]

``zc[k]`` is the (real) characteristic impedance of segment ``k`` and
``gl[i, k]`` its complex propagation exponent gamma*length at frequency ``i``.
Segments ``arm_ptr[j]:arm_ptr[j + 1]`` form arm ``j``, ordered from the
external port towards the junction. ``shunt_b[j]`` is a shunt susceptance
placed where arm ``j`` meets the junction.

Each arm is reduced to a two-port S-matrix and the three arms are joined
through the ideal three-way junction ``Sj = (2/3) * ones - I``.
"""

import numpy as np

JUNCTION = np.full((3, 3), 2.0 / 3.0) - np.eye(3)


def arm_abcd(zc, gl, start, stop, shunt):
    nf = gl.shape[0]
    abcd = np.zeros((nf, 2, 2), dtype=complex)
    abcd[:, 0, 0] = 1.0
    abcd[:, 1, 1] = 1.0
    for k in range(start, stop):
        ch = np.cosh(gl[:, k])
        sh = np.sinh(gl[:, k])
        seg = np.empty((nf, 2, 2), dtype=complex)
        seg[:, 0, 0] = ch
        seg[:, 0, 1] = zc[k] * sh
        seg[:, 1, 0] = sh / zc[k]
        seg[:, 1, 1] = ch
        abcd = abcd @ seg
    if shunt != 0.0:
        abcd[:, :, 0] += abcd[:, :, 1] * (1j * shunt)
    return abcd


def abcd_to_s_batch(abcd, z):
    a, b, c, d = abcd[:, 0, 0], abcd[:, 0, 1], abcd[:, 1, 0], abcd[:, 1, 1]
    delta = a + b / z + c * z + d
    s = np.empty_like(abcd)
    s[:, 0, 0] = (a + b / z - c * z - d) / delta
    s[:, 0, 1] = 2.0 * (a * d - b * c) / delta
    s[:, 1, 0] = 2.0 / delta
    s[:, 1, 1] = (-a + b / z - c * z + d) / delta
    return s


def divider_s(zc, gl, arm_ptr, shunt_b, zref):
    zc = np.asarray(zc, dtype=float)
    gl = np.asarray(gl, dtype=complex)
    nf = gl.shape[0]
    arms = [
        abcd_to_s_batch(arm_abcd(zc, gl, arm_ptr[j], arm_ptr[j + 1], shunt_b[j]), zref) for j in range(3)
    ]
    s11 = np.stack([s[:, 0, 0] for s in arms], axis=1)
    s12 = np.stack([s[:, 0, 1] for s in arms], axis=1)
    s21 = np.stack([s[:, 1, 0] for s in arms], axis=1)
    s22 = np.stack([s[:, 1, 1] for s in arms], axis=1)

    m = np.broadcast_to(np.eye(3), (nf, 3, 3)) - JUNCTION[None, :, :] * s22[:, None, :]
    x = np.linalg.solve(m, np.broadcast_to(JUNCTION, (nf, 3, 3)))
    out = s12[:, :, None] * x * s21[:, None, :]
    idx = np.arange(3)
    out[:, idx, idx] += s11
    return out
