#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vgprod {

/// Command-line entry point. args excludes the program name.
///
///   pdf | logpdf | cdf  --dist vg --r R [--theta T] --sigma S [--mu M] --x X
///                       --dist product|mean --sigma-x SX --sigma-y SY --rho P [--n N] --x X
///   table               (distribution flags) --from A --to B --steps K --out FILE [--fn pdf|logpdf|cdf]
///   sample              (distribution flags) --count C --seed S --stream ID [--out FILE]
///   verify              [--config FILE|default] [--json FILE]
///
/// Returns 0 on success, 1 when verification fails, 2 for invalid arguments
/// or domain errors (one-line diagnostic on err).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vgprod
