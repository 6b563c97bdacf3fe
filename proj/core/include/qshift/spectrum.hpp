#pragma once

#include <string>
#include <vector>

namespace qshift {

enum class SpectrumSource { analytic, numeric };

struct Level {
    int n;
    double E;
    double err; // nonnegative estimate of |E - E_exact|
};

/// Bound-state energies, strictly increasing in n, each below `threshold`.
struct Spectrum {
    std::vector<Level> levels;
    double threshold;
    SpectrumSource source;
};

std::string_view to_string(SpectrumSource source);

/// CSV with header "n,E,err,source".
std::string spectrum_csv(const Spectrum& spectrum);

} // namespace qshift
