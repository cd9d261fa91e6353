#pragma once

// Q1 isoparametric shape functions on the bi/tri-unit parent element
// [-1,1]^dim. Node order: counterclockwise bottom face, then (3D) top face.

namespace contactsplit::q1 {

inline constexpr double kGauss2[2] = {-0.5773502691896257645, 0.5773502691896257645};

inline void shape_2d(double xi, double eta, double n[4], double dn[4][2]) {
    const double xm = 1.0 - xi, xp = 1.0 + xi;
    const double em = 1.0 - eta, ep = 1.0 + eta;
    n[0] = 0.25 * xm * em;
    n[1] = 0.25 * xp * em;
    n[2] = 0.25 * xp * ep;
    n[3] = 0.25 * xm * ep;
    dn[0][0] = -0.25 * em; dn[0][1] = -0.25 * xm;
    dn[1][0] =  0.25 * em; dn[1][1] = -0.25 * xp;
    dn[2][0] =  0.25 * ep; dn[2][1] =  0.25 * xp;
    dn[3][0] = -0.25 * ep; dn[3][1] =  0.25 * xm;
}

inline void shape_3d(double xi, double eta, double zeta, double n[8], double dn[8][3]) {
    const double xs[2] = {1.0 - xi, 1.0 + xi};
    const double es[2] = {1.0 - eta, 1.0 + eta};
    const double zs[2] = {1.0 - zeta, 1.0 + zeta};
    // (xi,eta) corner order per 2D convention, bottom (zeta=-1) then top.
    const int cx[4] = {0, 1, 1, 0};
    const int ce[4] = {0, 0, 1, 1};
    const double sx[4] = {-1.0, 1.0, 1.0, -1.0};
    const double se[4] = {-1.0, -1.0, 1.0, 1.0};
    for (int layer = 0; layer < 2; ++layer) {
        const double sz = layer == 0 ? -1.0 : 1.0;
        for (int c = 0; c < 4; ++c) {
            const int a = layer * 4 + c;
            n[a] = 0.125 * xs[cx[c]] * es[ce[c]] * zs[layer];
            dn[a][0] = 0.125 * sx[c] * es[ce[c]] * zs[layer];
            dn[a][1] = 0.125 * xs[cx[c]] * se[c] * zs[layer];
            dn[a][2] = 0.125 * xs[cx[c]] * es[ce[c]] * sz;
        }
    }
}

} // namespace contactsplit::q1
