#pragma once

// Fundamental solutions, solvability, and solution enumeration for the Pell
// equations x^2 - n y^2 = c with c in {1, -1, 4, -4}.

#include "toralg/arith.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

namespace toralg {

/// A nonnegative solution of x^2 - n y^2 = rhs.
struct PellSolution {
    Int x, y;
    Int n;
    int rhs{1};

    bool satisfies_identity() const { return x * x - n * y * y == rhs; }
    bool operator==(const PellSolution&) const = default;
};

/// Persistent memo of fundamental solutions, one record per line of the form
/// "n rhs x y". Entries that fail the defining identity are dropped on load;
/// the cache is an optimization and never a source of truth. Writes go to a
/// temporary file followed by a rename, so concurrent readers never observe a
/// torn file. In-process access is serialized.
class PellCache {
public:
    PellCache() = default;
    explicit PellCache(std::filesystem::path file);

    std::optional<PellSolution> lookup(const Int& n, int rhs) const;
    void store(const PellSolution& solution);
    std::size_t size() const;

private:
    void load();
    void persist() const;
    mutable std::mutex mu_;
    std::map<std::pair<Int, int>, PellSolution> entries_;
    std::filesystem::path path_;
};

/// True iff x^2 - n y^2 = -1 has integer solutions. Decided by the parity of
/// the continued-fraction period of sqrt(n); small residue/prime conditions
/// serve only as a fast pre-filter.
bool negative_solvable(const Int& n);

/// Fundamental solution (smallest positive x among positive solutions), or
/// nullopt when the equation has none (possible only for rhs -1 and -4).
/// Throws DomainError for n < 2, n square, or rhs outside {1,-1,4,-4}.
std::optional<PellSolution> fundamental(const Int& n, int rhs, PellCache* cache = nullptr);

/// k-th positive solution (k >= 1) via the solution recurrences; every
/// returned pair is checked against the defining identity. Throws DomainError
/// when the equation is unsolvable.
PellSolution enumerate_solution(const Int& n, int rhs, const Int& k, PellCache* cache = nullptr);

}  // namespace toralg
