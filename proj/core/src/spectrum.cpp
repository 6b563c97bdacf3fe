#include "qshift/spectrum.hpp"

#include <sstream>

#include "qshift/format.hpp"

namespace qshift {

std::string_view to_string(SpectrumSource source) {
    return source == SpectrumSource::analytic ? "analytic" : "numeric";
}

std::string spectrum_csv(const Spectrum& spectrum) {
    std::ostringstream os;
    os << "n,E,err,source\n";
    for (const Level& level : spectrum.levels) {
        os << level.n << ',' << format_real(level.E) << ',' << format_real(level.err) << ','
           << to_string(spectrum.source) << '\n';
    }
    return os.str();
}

} // namespace qshift
