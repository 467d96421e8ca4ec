"""Independent scalar oracle for the derived material quantities.

Computes coefficients straight from the constitutive formulas and wave speeds
from the 4x4 plane-wave (Christoffel-type) eigenproblem, a route that shares
no code with the 8x8 flux-Jacobian path used by the library.
"""
import numpy as np

MATERIALS = {
    "sandstone_ortho": dict(Ks=80e9, rhos=2500, c11=71.8e9, c12=3.2e9, c13=1.2e9, c33=53.4e9, c55=26.1e9,
                            phi=0.2, k1=600e-15, k3=100e-15, T1=2, T3=3.6, Kf=2.5e9, rhof=1040, eta=1e-3),
    "glass_epoxy": dict(Ks=40e9, rhos=1815, c11=39.4e9, c12=1.2e9, c13=1.2e9, c33=13.1e9, c55=3.0e9,
                        phi=0.2, k1=600e-15, k3=100e-15, T1=2, T3=3.6, Kf=2.5e9, rhof=1040, eta=1e-3),
    "sandstone_iso": dict(Ks=40e9, rhos=2500, c11=36e9, c12=12e9, c13=12e9, c33=36e9, c55=12e9,
                          phi=0.2, k1=600e-15, k3=600e-15, T1=2, T3=2, Kf=2.5e9, rhof=1040, eta=0.0),
    "shale_iso": dict(Ks=7.6e9, rhos=2210, c11=11.9e9, c12=3.96e9, c13=3.96e9, c33=11.9e9, c55=3.96e9,
                      phi=0.16, k1=100e-15, k3=100e-15, T1=2, T3=2, Kf=2.5e9, rhof=1040, eta=0.0),
}


def coeffs(m):
    a1 = 1 - (m["c11"] + m["c12"] + m["c13"]) / (3 * m["Ks"])
    a3 = 1 - (2 * m["c13"] + m["c33"]) / (3 * m["Ks"])
    den = m["Ks"] * (1 + m["phi"] * (m["Ks"] / m["Kf"] - 1)) - (2 * m["c11"] + m["c33"] + 2 * m["c12"] + 4 * m["c13"]) / 9
    M = m["Ks"] ** 2 / den
    rho = (1 - m["phi"]) * m["rhos"] + m["phi"] * m["rhof"]
    m1 = m["rhof"] * m["T1"] / m["phi"]
    m3 = m["rhof"] * m["T3"] / m["phi"]
    d1 = rho * m1 - m["rhof"] ** 2
    d3 = rho * m3 - m["rhof"] ** 2
    out = dict(a1=a1, a3=a3, M=M, rho=rho, m1=m1, m3=m3, d1=d1, d3=d3,
               cu11=m["c11"] + M * a1 * a1, cu13=m["c13"] + M * a1 * a3, cu33=m["c33"] + M * a3 * a3, cu55=m["c55"])
    if m["eta"] > 0:
        out["td1"] = d1 * m["k1"] / (rho * m["eta"])
        out["td3"] = d3 * m["k3"] / (rho * m["eta"])
    return out


def plane_speeds(m, lx, lz):
    c = coeffs(m)
    F = np.array([[lx * c["cu11"], lz * c["cu13"], c["a1"] * c["M"] * lx, c["a1"] * c["M"] * lz],
                  [lx * c["cu13"], lz * c["cu33"], c["a3"] * c["M"] * lx, c["a3"] * c["M"] * lz],
                  [lz * c["cu55"], lx * c["cu55"], 0, 0],
                  [c["a1"] * c["M"] * lx, c["a3"] * c["M"] * lz, c["M"] * lx, c["M"] * lz]])
    L = np.array([[lx, 0, lz, 0], [0, lz, lx, 0], [0, 0, 0, lx], [0, 0, 0, lz]])
    G = np.array([[c["rho"], 0, m["rhof"], 0], [0, c["rho"], 0, m["rhof"]],
                  [m["rhof"], 0, c["m1"], 0], [0, m["rhof"], 0, c["m3"]]])
    ev = np.linalg.eigvals(np.linalg.solve(G, L @ F))
    ev = np.sort(np.real(ev))[::-1]
    return np.sqrt(np.maximum(ev[:3], 0))


def reduced_speeds(m, lx, lz):
    c = coeffs(m)
    rho = c["rho"]
    # equilibrium system (tau_xx, tau_zz, tau_xz, v_x, v_z): orthotropic undrained elasticity
    Ce = np.array([[c["cu11"] * lx * lx + c["cu55"] * lz * lz, (c["cu13"] + c["cu55"]) * lx * lz],
                   [(c["cu13"] + c["cu55"]) * lx * lz, c["cu33"] * lz * lz + c["cu55"] * lx * lx]])
    ev = np.sort(np.linalg.eigvalsh(Ce / rho))[::-1]
    return np.sqrt(ev)


if __name__ == "__main__":
    for name, m in MATERIALS.items():
        c = coeffs(m)
        print(name, {k: c[k] for k in ("rho", "m1", "m3", "M", "a1", "a3")}, "td", c.get("td1"), c.get("td3"))
        print("  x:", plane_speeds(m, 1, 0), " z:", plane_speeds(m, 0, 1), " 30deg:", plane_speeds(m, np.cos(np.pi/6), np.sin(np.pi/6)))
        print("  reduced x:", reduced_speeds(m, 1, 0), " z:", reduced_speeds(m, 0, 1))
    m = dict(MATERIALS["sandstone_ortho"]); m["rhof"] = 208.9
    print("rhof=208.9 full x:", plane_speeds(m, 1, 0), "reduced x:", reduced_speeds(m, 1, 0))
