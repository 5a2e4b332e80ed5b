#pragma once

#include <map>
#include <vector>

#include "asymlat/chart.hpp"
#include "asymlat/labelling.hpp"
#include "asymlat/projective.hpp"

namespace asymlat {

struct QuantumRotationSample {
    Label2 label;       // (j,k) of the base eigenvalue
    Projective1 value;  // canonical form
    double value_real;  // ratio, +-infinity when the denominator vanishes
    PlanckValue hbar;
};

struct ConvergenceEntry {
    PlanckValue hbar;
    Projective1 quantum;
    Projective1 classical; // oracle value transported into the labelling frame
    double error;          // projective distance
};

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
    bool exact = false;      // all errors below the float-noise floor
    double fitted_order = 0; // log-log slope when not exact
};

// [E_{j+1,k} - E_{j,k} : E_{j,k+1} - E_{j,k}] from second coordinates.
// NeighborMissing names the absent neighbor.
QuantumRotationSample quantum_rotation(const Labelling& labelling, Label2 label);

// quantum_rotation at every label whose two neighbors exist.
std::map<Label2, QuantumRotationSample> rotation_field(const Labelling& labelling);

// value_real reduced mod 1 into [0,1); requires a semitoric labelling.
double semitoric_rotation_mod1(const Labelling& labelling, Label2 label);

// Per-hbar comparison of the quantum rotation number at the nearest point to
// c against the classical value, transported by the oracle transition; the
// fitted order is the least-squares slope of log(error) vs log(hbar) over
// entries with error above 1e-13.
ConvergenceReport compare_convergence(const ChartModel& chart, const SpectrumFamily& family,
                                      const std::vector<Labelling>& labellings,
                                      const std::vector<OracleLabelling>& oracles,
                                      Point2 c);

} // namespace asymlat
