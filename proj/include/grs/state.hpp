#pragma once

namespace grs {

/// A point (t, phi, phi', f, f') on the profile curve.
struct SolitonState {
    double t = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
    double f = 0.0;
    double df = 0.0;
};

}  // namespace grs
