"""Brute-force oracles for the l4-ball counterexample values.

Everything here uses dense scans and numpy least squares only; nothing is
shared with the C++ implementation. Run: python3 lp4_oracles.py
"""
import numpy as np
from scipy.optimize import brentq

P = 4.0


def lp_norm(v):
    return (np.abs(v) ** P).sum(axis=-1) ** (1.0 / P)


def grad(v):
    return np.sign(v) * np.abs(v) ** (P - 1)


def boundary(d):
    return d / lp_norm(d)[..., None]


def plane_fit(pts):
    c = pts.mean(axis=0)
    _, s, vt = np.linalg.svd(pts - c)
    n = vt[-1]
    r = (pts - c) @ n
    diam = max(np.linalg.norm(pts[i] - pts[j]) for i in range(len(pts)) for j in range(i))
    return n, np.sqrt((r ** 2).mean()) / diam


def conic_residual(xy):
    mu = xy.mean(axis=0)
    s = np.sqrt(((xy - mu) ** 2).sum(axis=1).mean())
    q = (xy - mu) / s
    x, y = q[:, 0], q[:, 1]
    d = np.stack([x * x, x * y, y * y, x, y, np.ones_like(x)], axis=1)
    _, _, vt = np.linalg.svd(d)
    c = vt[-1]
    r = d @ c
    return np.sqrt((r ** 2).mean()), c


def graze_dense(apex, m, scan=20000):
    """Contact points of tangent lines from apex, one per half-plane around the apex axis."""
    axis = apex / np.linalg.norm(apex)
    f1 = np.array([0.0, 1.0, 0.0])
    f2 = np.cross(axis, f1)
    out = []
    phis = np.linspace(1e-6, np.pi - 1e-6, scan)
    for th in np.linspace(0, 2 * np.pi, m, endpoint=False):
        w = np.cos(th) * f1 + np.sin(th) * f2
        dirs = np.cos(phis)[:, None] * axis + np.sin(phis)[:, None] * w
        b = boundary(dirs)
        f = ((apex - b) * grad(b)).sum(axis=1)
        k = np.nonzero(np.diff(np.sign(f)))[0][0]
        g = lambda phi: ((apex - boundary(np.cos(phi) * axis + np.sin(phi) * w)) *
                         grad(boundary(np.cos(phi) * axis + np.sin(phi) * w))).sum()
        phi = brentq(g, phis[k], phis[k + 1], xtol=1e-14, maxiter=500)
        out.append(boundary(np.cos(phi) * axis + np.sin(phi) * w))
    return np.array(out)


def chart(normal):
    n = normal / np.linalg.norm(normal)
    a = np.array([1.0, 0, 0]) if abs(n[0]) < 0.9 else np.array([0, 1.0, 0])
    e1 = a - (a @ n) * n
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1)


def section_points(normal, offset, m):
    n = normal / np.linalg.norm(normal)
    o = offset * n
    e1, e2 = chart(n)
    pts = []
    for t in np.linspace(0, 2 * np.pi, m, endpoint=False):
        d = np.cos(t) * e1 + np.sin(t) * e2
        s = brentq(lambda s: lp_norm(o + s * d) - 1.0, 0.0, 10.0, xtol=1e-14, maxiter=500)
        pts.append(o + s * d)
    return np.array(pts), o, e1, e2


if __name__ == "__main__":
    # 1. graze of the l4 ball from (2,0,0): relative plane-fit rms
    g = graze_dense(np.array([2.0, 0, 0]), 200)
    n, rel = plane_fit(g)
    print("graze_l4_plane_rel_rms", rel)

    # 2. section by z = 0.3 + 0.2x  <=>  -0.2x + z = 0.3
    nrm = np.array([-0.2, 0.0, 1.0])
    pts, o, e1, e2 = section_points(nrm, 0.3 / np.linalg.norm(nrm), 100)
    xy = np.stack([(pts - o) @ e1, (pts - o) @ e2], axis=1)
    print("section_l4_conic_rms", conic_residual(xy)[0])

    # 3. cone from (2,0,0): section orthogonal to the mean generator at unit distance
    apex = np.array([2.0, 0, 0])
    gens = g - apex
    gens /= np.linalg.norm(gens, axis=1)[:, None]
    mean = gens.mean(axis=0)
    mean /= np.linalg.norm(mean)
    q = apex + gens / (gens @ mean)[:, None]
    e1, e2 = chart(mean)
    xy = np.stack([(q - apex) @ e1, (q - apex) @ e2], axis=1)
    print("cone_l4_conic_rms", conic_residual(xy)[0])

    # 4. central symmetry of section z = 0.3 + 0.4x, 2-D support by dense sampling
    nrm = np.array([-0.4, 0.0, 1.0])
    pts, o, e1, e2 = section_points(nrm, 0.3 / np.linalg.norm(nrm), 20000)
    xy = np.stack([(pts - o) @ e1, (pts - o) @ e2], axis=1)
    us = np.array([[np.cos(t), np.sin(t)] for t in np.linspace(0, 2 * np.pi, 512, endpoint=False)])
    h = (us @ xy.T).max(axis=1)
    hm = (-us @ xy.T).max(axis=1)
    c, *_ = np.linalg.lstsq(2 * us, h - hm, rcond=None)
    r = h - hm - 2 * us @ c
    diam = (h + hm).max()
    print("central_symmetry_l4_rel_residual", np.abs(r).max() / diam)

    # 5. Birkhoff asymmetry on the l4 plane
    def n2(v):
        return (np.abs(v) ** P).sum() ** (1 / P)
    x = np.array([1.0, 0.5]); x /= n2(x)
    y = np.array([-x[1] ** 3, x[0] ** 3]); y /= n2(y)
    al = np.linspace(-10, 10, 2000001)
    vals = (np.abs(x[None, :] + al[:, None] * y[None, :]) ** P).sum(axis=1) ** (1 / P)
    print("birkhoff_x_perp_y_min", vals.min(), "norm_x", n2(x))
    vals = (np.abs(y[None, :] + al[:, None] * x[None, :]) ** P).sum(axis=1) ** (1 / P)
    print("birkhoff_y_perp_x_min", vals.min(), "at alpha", al[vals.argmin()], "norm_y", n2(y))

    # 6. harmonic conjugates of (2,0,0) w.r.t. l4 chords: plane-fit residual
    o = np.array([2.0, 0, 0])
    rng = np.random.default_rng(1)
    P_list = []
    for _ in range(400):
        target = rng.normal(size=3); target = 0.5 * boundary(target)
        d = target - o; d /= np.linalg.norm(d)
        f = lambda t: lp_norm(o + t * d) - 1.0
        tm = np.linspace(0, 4, 4001); fv = np.array([f(t) for t in tm])
        idx = np.nonzero(np.diff(np.sign(fv)))[0]
        ta = brentq(f, tm[idx[0]], tm[idx[0] + 1], xtol=1e-14, maxiter=500)
        tb = brentq(f, tm[idx[1]], tm[idx[1] + 1], xtol=1e-14, maxiter=500)
        # harmonic conjugate of 0 w.r.t. ta, tb on the line: 2 ta tb / (ta + tb)
        tp = 2 * ta * tb / (ta + tb)
        P_list.append(o + tp * d)
    n, rel = plane_fit(np.array(P_list))
    print("polar_l4_harmonic_plane_rel_rms", rel)

    # 7. graze from an off-axis apex is not planar; the axis apex graze lies in p1 = 2^(-1/3)
    print("graze_l4_axis_plane_offset", np.abs(g[:, 0] - 2 ** (-1 / 3)).max())
    g2 = graze_dense(np.array([1.5, 1.0, 0.5]), 200)
    print("graze_l4_generic_plane_rel_rms", plane_fit(g2)[1])

    # 8. shadow boundary of the l4 ball in direction (1,1,1)/sqrt3: <u, grad p> = 0
    u = np.ones(3) / np.sqrt(3)
    e1, e2 = chart(u)
    sb = []
    phis = np.linspace(1e-6, np.pi - 1e-6, 20000)
    for th in np.linspace(0, 2 * np.pi, 200, endpoint=False):
        w = np.cos(th) * e1 + np.sin(th) * e2
        fn = lambda phi: grad(boundary(np.cos(phi) * u + np.sin(phi) * w)) @ u
        vals = np.array([fn(ph) for ph in phis[::100]])
        k = np.nonzero(np.diff(np.sign(vals)))[0][0]
        phi = brentq(fn, phis[::100][k], phis[::100][k + 1], xtol=1e-14, maxiter=500)
        sb.append(boundary(np.cos(phi) * u + np.sin(phi) * w))
    print("shadow_l4_111_plane_rel_rms", plane_fit(np.array(sb))[1])

    # 8. conjugate-diameter defect on the l4 disk over 128 diameters through the centre
    worst, worst_t = 0.0, 0.0
    for t in np.pi * np.arange(128) / 128:
        d = np.array([np.cos(t), np.sin(t)])
        a = d / n2(d)
        ga = grad(a)
        tang = np.array([-ga[1], ga[0]])
        c = tang / n2(tang)
        nc = grad(c); nc /= np.linalg.norm(nc)
        defect = np.arcsin(abs(nc @ d))
        if defect > worst:
            worst, worst_t = defect, t
    print("radon_l4_worst_defect", worst, "at angle", worst_t)
