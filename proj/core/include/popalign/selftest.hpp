#ifndef POPALIGN_SELFTEST_HPP
#define POPALIGN_SELFTEST_HPP

#include <iosfwd>

namespace popalign {

/// Runs the built-in oracle checks on small instances (complete bipartite
/// anchors, motif identities, random bracket validity, LP vertex oracle),
/// printing one line per check. Returns the number of failures.
int run_selftest(std::ostream& out);

} // namespace popalign

#endif
