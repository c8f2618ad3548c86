#pragma once

// Reference cavity assemblies used by the `table1` subcommand: measured
// characterization values for the four standard configurations, with their
// quoted uncertainties. All computed columns are rederived from (R, L,
// lambda) at run time and compared against these.

namespace fpcav_cli {

struct ReferenceCavity {
    const char* name;
    int topology; // 0 = PC, 1 = CC
    double lambda_nm;
    double roc_um, roc_unc_um;
    double length_um, length_unc_um; // effective length
    double waist_um, waist_unc_um;
    double volume_lambda3, volume_unc_lambda3;
    double finesse_k, finesse_k_unc; // units of 10^3
    double quality_m, quality_m_unc; // units of 10^6
    const char* upsilon_printed;     // units of 10^5, as originally tabulated
};

inline constexpr ReferenceCavity kReferenceCavities[] = {
    {"PC-f", 0, 1276.0, 69.3, 8.3, 8.7, 0.7, 3.05, 0.16, 30.8, 5.0, 350.0, 30.0, 4.1, 0.6,
     "~1.8"},
    {"PC-f2", 0, 1279.0, 69.3, 8.3, 9.3, 0.8, 3.10, 0.16, 33.7, 5.0, 330.0, 20.0, 4.1, 0.5,
     "~1.6"},
    {"PC-a", 0, 1280.0, 105.6, 17.1, 18.9, 0.1, 4.05, 0.18, 116.7, 10.0, 490.0, 90.0, 12.9,
     2.4, "~1.3"},
    {"CC-a", 1, 1280.0, 105.6, 17.1, 27.4, 0.1, 3.79, 0.17, 148.2, 14.0, 180.0, 10.0, 7.1,
     0.4, "~0.5"},
};

} // namespace fpcav_cli
