#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sptlab/report.hpp"

namespace sptlab {

/// sptlab check <name|all> [--ell L1,L2,...] [--t 5|7|13] [--nmax N] [--prec P]
///                         [--mod exact|M] [--cache-dir PATH] [--jobs K]
///                         [--format text|json]
/// sptlab series <kind> --n N [--mod M] [--out PATH]
///
/// Returns 0 when every report passes, 1 on any failure, 2 on a usage or
/// configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string to_json(const std::vector<CongruenceReport>& reports);

}  // namespace sptlab
