#pragma once

// Command-line front end: subcommand dispatch, JSON/text reporting, corpus
// generation, and configuration (flags > TORALG_* environment > defaults).

#include "toralg/arith.hpp"
#include "toralg/quad.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace toralg {

struct Config {
    long search_bound = 100;             // flag --bound, env TORALG_BOUND
    std::filesystem::path cache_path{};  // flag --cache, env TORALG_CACHE
    bool json = false;                   // flag --json
};

/// All canonical positive quadratic irrationals (u + v sqrt(D))/w with
/// |u| <= U, 1 <= v <= V, 1 <= w <= W, D <= Dmax squarefree, deduplicated by
/// canonical form and sorted by (D, numeric value).
std::vector<QuadraticIrrational> corpus(const Int& U, const Int& V, const Int& W,
                                        const Int& Dmax);

/// Run one invocation. Returns 0 on a definite answer, 2 when a verdict is
/// unknown, 1 on input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toralg
